//! Seeded random generators for expressions, bags, schemas and graphs.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use shexd::matching::Bag;
use shexd::rdf::{DirectedProperty, Literal, Term, Triple};
use shexd::schema::{ShapeExpr, TcId, TripleConstraint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn tc(id: u32) -> ShapeExpr {
    ShapeExpr::Tc(TripleConstraint {
        id: TcId(id),
        prop: DirectedProperty::forward(format!("http://example.org/p{id}")),
        value_class: Vec::new(),
    })
}

fn card(r: &mut ChaCha8Rng) -> (u32, Option<u32>) {
    let min = r.gen_range(0..=2);
    let max = if r.gen_bool(0.3) { None } else { Some(min + r.gen_range(0..=2)) };
    (min, max)
}

/// A single-occurrence expression over ids `1..=alphabet`, of depth at most
/// `depth`. With `unfolded`, compound repetitions are only `?`, `*`, `+`.
pub fn expr(r: &mut ChaCha8Rng, depth: u32, alphabet: u32, unfolded: bool) -> ShapeExpr {
    let mut ids: Vec<u32> = (1..=alphabet).collect();
    ids.shuffle(r);
    expr_from(r, depth, &mut ids, unfolded)
}

fn expr_from(r: &mut ChaCha8Rng, depth: u32, ids: &mut Vec<u32>, unfolded: bool) -> ShapeExpr {
    if depth == 0 || ids.is_empty() || r.gen_bool(0.3) {
        let Some(id) = ids.pop() else { return ShapeExpr::Empty };
        if r.gen_bool(0.05) {
            ids.push(id);
            return ShapeExpr::Empty;
        }
        return if r.gen_bool(0.5) {
            let (min, max) = card(r);
            ShapeExpr::repeat(tc(id), min, max)
        } else {
            tc(id)
        };
    }
    match r.gen_range(0..3) {
        0 | 1 => {
            let n = r.gen_range(2..=3);
            let es: Vec<ShapeExpr> = (0..n).map(|_| expr_from(r, depth - 1, ids, unfolded)).collect();
            if r.gen_bool(0.5) {
                ShapeExpr::SomeOf(es)
            } else {
                ShapeExpr::Group(es)
            }
        }
        _ => {
            let inner = expr_from(r, depth - 1, ids, unfolded);
            let (min, max) = if unfolded {
                *[(0, Some(1)), (0, None), (1, None)].choose(r).unwrap()
            } else {
                card(r)
            };
            ShapeExpr::repeat(inner, min, max)
        }
    }
}

/// A bag over ids `1..=alphabet + 1` (the last one foreign) of total at most `max_total`.
pub fn bag(r: &mut ChaCha8Rng, alphabet: u32, max_total: u32) -> Bag {
    let total = r.gen_range(0..=max_total);
    let mut b = Bag::new();
    let foreign = r.gen_bool(0.1);
    for _ in 0..total {
        let id = if foreign { r.gen_range(1..=alphabet + 1) } else { r.gen_range(1..=alphabet) };
        *b.entry(TcId(id)).or_insert(0) += 1;
    }
    b
}

pub const EXG: &str = "http://example.org/";

/// A random well-formed ShExC schema over shapes `S0..S{k-1}` and properties p, q, r.
pub fn schema_text(r: &mut ChaCha8Rng, shapes: usize) -> String {
    let mut out = String::from("PREFIX ex: <http://example.org/>\nPREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n");
    for i in 0..shapes {
        let mut head = format!("<S{i}>");
        if r.gen_bool(0.2) {
            head.push_str(" CLOSED");
        }
        if r.gen_bool(0.2) {
            head.push_str(&format!(" EXTRA ex:{}", ["p", "q", "r"].choose(r).unwrap()));
        }
        let body = if r.gen_bool(0.05) { "EmptyShape".to_string() } else { shex_expr(r, 2, shapes) };
        out.push_str(&format!("{head} {{ {body} }}\n"));
    }
    out
}

fn value_class(r: &mut ChaCha8Rng, shapes: usize) -> String {
    let atom = |r: &mut ChaCha8Rng| -> String {
        match r.gen_range(0..12) {
            0 => ".".into(),
            1 => "IRI".into(),
            2 => "Literal".into(),
            3 => "xsd:integer".into(),
            4 => "(ex:n0 ex:n1 _b)".into(),
            5 => "NonLiteral".into(),
            6..=9 => format!("@<S{}>", r.gen_range(0..shapes)),
            _ => format!("!@<S{}>", r.gen_range(0..shapes)),
        }
    };
    let a = atom(r);
    if a != "." && r.gen_bool(0.2) {
        let b = atom(r);
        if b != "." {
            return format!("{a} AND {b}");
        }
    }
    a
}

fn shex_expr(r: &mut ChaCha8Rng, depth: u32, shapes: usize) -> String {
    if depth == 0 || r.gen_bool(0.4) {
        let inv = if r.gen_bool(0.15) { "^" } else { "" };
        let p = ["p", "p", "q", "r"].choose(r).unwrap();
        let c = ["", "", "?", "*", "+", "[1;2]", "[0;2]"].choose(r).unwrap();
        return format!("{inv}ex:{p} {}{c}", value_class(r, shapes));
    }
    let n = r.gen_range(2..=3);
    let parts: Vec<String> = (0..n).map(|_| shex_expr(r, depth - 1, shapes)).collect();
    let sep = if r.gen_bool(0.5) { " | " } else { " , " };
    let c = ["", "", "?", "*", "+"].choose(r).unwrap();
    format!("({}){c}", parts.join(sep))
}

/// A random graph with at most `nodes` IRI nodes plus a couple of literals.
pub fn graph_triples(r: &mut ChaCha8Rng, nodes: usize) -> Vec<Triple> {
    let iri = |i: usize| Term::iri(format!("{EXG}n{i}"));
    let lits = [Term::Literal(Literal::integer("1")), Term::Literal(Literal::string("a"))];
    let n_edges = r.gen_range(1..=nodes * 2);
    let mut out = Vec::new();
    for _ in 0..n_edges {
        let s = iri(r.gen_range(0..nodes));
        let p = format!("{EXG}{}", ["p", "p", "q", "r"].choose(r).unwrap());
        let o = if r.gen_bool(0.2) { lits.choose(r).unwrap().clone() } else { iri(r.gen_range(0..nodes)) };
        out.push(Triple::new(s, p, o));
    }
    out
}
