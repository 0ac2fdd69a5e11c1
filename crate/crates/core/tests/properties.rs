mod common;

use common::gen;
use proptest::prelude::*;
use shexd::matching::{check_compatible, CompiledSchema, Sign, Typing};
use shexd::rdf::{parse_data, to_ntriples, DataFormat, Graph, NodeId};
use shexd::schema::{json_to_schema, parse_schema, schema_to_json, to_shexc, ShapeLabel};

fn random_schema(seed: u64) -> shexd::schema::Schema {
    let mut r = gen::rng(seed);
    let shapes = 1 + (seed % 4) as usize;
    parse_schema(&gen::schema_text(&mut r, shapes)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shexc_writer_round_trips(seed in any::<u64>()) {
        let s = random_schema(seed);
        let back = parse_schema(&to_shexc(&s)).unwrap();
        prop_assert_eq!(back.shapes, s.shapes);
    }

    #[test]
    fn schema_json_round_trips(seed in any::<u64>()) {
        let s = random_schema(seed);
        let back = json_to_schema(&schema_to_json(&s)).unwrap();
        prop_assert_eq!(back.shapes, s.shapes);
    }

    #[test]
    fn ntriples_round_trip(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let triples = gen::graph_triples(&mut r, 6);
        let text = to_ntriples(&triples);
        let back = parse_data(&text, DataFormat::NTriples).unwrap();
        prop_assert_eq!(to_ntriples(&back.triples), text);
    }

    #[test]
    fn graph_edges_pair_up(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let g = Graph::build(&gen::graph_triples(&mut r, 6));
        prop_assert_eq!(g.edge_count(), 2 * g.triples().len());
        for (i, e) in g.edges() {
            let j = g.inverse_of(i);
            prop_assert_eq!(g.inverse_of(j), i);
            let f = g.edge(j);
            prop_assert_eq!(f.source, e.target);
            prop_assert_eq!(f.target, e.source);
            prop_assert_eq!(&f.prop, &e.prop.flipped());
        }
        for n in g.nodes() {
            let ids: Vec<&str> = g.neighbourhood(n).iter().map(|e| g.edge(*e).id.as_str()).collect();
            prop_assert!(ids.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.neighbourhood(n).iter().all(|e| g.edge(*e).source == n));
        }
    }

    #[test]
    fn candidate_count_matches_enumeration(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let s = CompiledSchema::new(random_schema(seed));
        let g = Graph::build(&gen::graph_triples(&mut r, 5));
        for n in g.nodes() {
            for label in s.schema.labels() {
                let c = s.candidates(&g, n, label, false);
                let size = c.size();
                prop_assert_eq!(c.count() as u128, size);
                let pruned = s.candidates(&g, n, label, true).size();
                prop_assert!(pruned <= size);
            }
        }
    }

    #[test]
    fn compatibility_is_symmetric(a in prop::collection::vec((0usize..4, 0u8..3, any::<bool>()), 0..8),
                                  b in prop::collection::vec((0usize..4, 0u8..3, any::<bool>()), 0..8)) {
        let mk = |v: &[(usize, u8, bool)]| -> Typing {
            v.iter()
                .map(|(n, s, pos)| (NodeId(*n), ShapeLabel::new(format!("S{s}")), if *pos { Sign::Pos } else { Sign::Neg }))
                .collect()
        };
        let (ta, tb) = (mk(&a), mk(&b));
        prop_assert_eq!(check_compatible(&ta, &tb), check_compatible(&tb, &ta));
        if ta.is_consistent() {
            prop_assert!(check_compatible(&ta, &ta));
        }
    }
}
