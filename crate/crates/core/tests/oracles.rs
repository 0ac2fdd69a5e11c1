//! Randomized agreement between the fast algorithms and their exhaustive
//! counterparts.

mod common;

use common::gen;
use rand::Rng;
use shexd::matching::{
    brute_match, check_interval_form, interval_matches, unfold_repetitions, CompiledSchema, Sign, Typing,
};
use shexd::rdf::Graph;
use shexd::schema::{parse_schema, ShapeLabel};
use shexd::validation::{Budget, CertainOracle, CertainTyping, Options, ValidateError, Validator};

#[test]
fn interval_agrees_with_brute_force_on_unfolded_expressions() {
    let mut r = gen::rng(7);
    for case in 0..1500 {
        let alphabet = r.gen_range(1..=6);
        let depth = r.gen_range(0..=4);
        let e = gen::expr(&mut r, depth, alphabet, true);
        check_interval_form(&e).unwrap();
        let b = gen::bag(&mut r, alphabet, 10);
        let fast = interval_matches(&e, &b).unwrap();
        let slow = brute_match(&e, &b, 16).unwrap();
        assert_eq!(fast, slow, "case {case}: {e:?} on {b:?}");
    }
}

#[test]
fn unfolding_preserves_the_language() {
    let mut r = gen::rng(11);
    for case in 0..1000 {
        let alphabet = r.gen_range(1..=5);
        let depth = r.gen_range(0..=3);
        let e = gen::expr(&mut r, depth, alphabet, false);
        let u = unfold_repetitions(&e);
        let b = gen::bag(&mut r, alphabet, 8);
        let slow = brute_match(&e, &b, 16).unwrap();
        assert_eq!(brute_match(&u, &b, 16).unwrap(), slow, "case {case}: {e:?} on {b:?}");
        if check_interval_form(&u).is_ok() {
            assert_eq!(interval_matches(&u, &b).unwrap(), slow, "case {case}: {e:?} on {b:?}");
        }
    }
}

struct Instance {
    schema: CompiledSchema,
    graph: Graph,
    typing0: Typing,
}

fn instance(r: &mut rand_chacha::ChaCha8Rng) -> Instance {
    loop {
        let shapes = r.gen_range(1..=4);
        let text = gen::schema_text(r, shapes);
        let schema = parse_schema(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        if schema.check_well_defined().is_err() {
            continue;
        }
        let nodes = r.gen_range(1..=6);
        let graph = Graph::build(&gen::graph_triples(r, nodes));
        let mut typing0 = Typing::new();
        for _ in 0..r.gen_range(1..=2) {
            let n = shexd::rdf::NodeId(r.gen_range(0..graph.node_count()));
            typing0.insert(n, ShapeLabel::new(format!("S{}", r.gen_range(0..shapes))), Sign::Pos);
        }
        return Instance {
            schema: CompiledSchema::new(schema),
            graph,
            typing0,
        };
    }
}

fn verdict(res: &Result<shexd::validation::Outcome, ValidateError>) -> Option<bool> {
    match res {
        Ok(_) => Some(true),
        Err(ValidateError::Invalid(_) | ValidateError::IncompatibleInitialTyping { .. }) => Some(false),
        Err(_) => None,
    }
}

#[test]
fn flooding_agrees_with_reference_on_random_instances() {
    let mut r = gen::rng(2024);
    let budget = Budget {
        max_nodes: 16,
        ..Budget::default()
    };
    let (mut decided, mut accepted, mut skipped, mut backtracked) = (0, 0, 0, 0);
    while decided < 1000 {
        let inst = instance(&mut r);
        let v = Validator::new(&inst.graph, &inst.schema).unwrap();
        let reference = v.reference(&inst.typing0, budget);
        let Some(expected) = verdict(&reference) else {
            skipped += 1;
            continue;
        };
        decided += 1;
        for lookahead in [false, true] {
            let v = Validator::new(&inst.graph, &inst.schema).unwrap().with_options(Options { lookahead });
            let flooding = v.flooding(&inst.typing0);
            assert_eq!(
                verdict(&flooding),
                Some(expected),
                "schema {:?}\ngraph {:?}\ntyping0 {:?}",
                inst.schema.schema,
                inst.graph.triples(),
                inst.typing0
            );
            if let Ok(out) = flooding {
                if out.stats.invalidations > 0 {
                    backtracked += 1;
                }
                v.verify(&out.witness).unwrap();
                assert!(inst.typing0.is_subset(&out.witness.typing));
            }
        }
        if expected {
            accepted += 1;
            v.verify(&reference.unwrap().witness).unwrap();
        }
    }
    eprintln!("decided {decided}, accepted {accepted}, skipped {skipped}, accepted after backtracking {backtracked}");
    assert!(accepted > 100 && accepted < 900, "unbalanced sample: {accepted} accepted");
    assert!(backtracked > 0, "no instance needed backtracking");
}

#[test]
fn on_demand_certain_typing_matches_eager() {
    let mut r = gen::rng(99);
    for _ in 0..200 {
        let inst = instance(&mut r);
        let roots = inst.schema.schema.all_negated_shapes();
        let eager = CertainTyping::compute(&inst.graph, &inst.schema, &roots).unwrap();
        let lazy = CertainOracle::new(&inst.graph, &inst.schema, &roots).unwrap();
        assert_eq!(lazy.materialize().unwrap(), eager);
    }
}
