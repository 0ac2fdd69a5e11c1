//! Decide bag membership with the interval algorithm and compare with the
//! exhaustive matcher.

use shexd::matching::{brute_match, interval, unfold_repetitions, Bag};
use shexd::rdf::DirectedProperty;
use shexd::schema::{ShapeExpr, TcId, TripleConstraint};

fn tc(id: u32) -> ShapeExpr {
    ShapeExpr::Tc(TripleConstraint {
        id: TcId(id),
        prop: DirectedProperty::forward(format!("http://example.org/p{id}")),
        value_class: Vec::new(),
    })
}

fn main() {
    // (C1[1;2] | C2), C3*
    let expr = ShapeExpr::Group(vec![
        ShapeExpr::SomeOf(vec![ShapeExpr::repeat(tc(1), 1, Some(2)), tc(2)]),
        ShapeExpr::repeat(tc(3), 0, None),
    ]);
    let unfolded = unfold_repetitions(&expr);
    for counts in [[1, 0, 0], [2, 0, 4], [3, 0, 0], [0, 1, 2], [1, 1, 0]] {
        let bag: Bag = counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(i, c)| (TcId(i as u32 + 1), *c))
            .collect();
        let i = interval(&unfolded, &bag).expect("unfolded expression is single-occurrence");
        let brute = brute_match(&expr, &bag, 16).expect("small bag");
        println!("{counts:?}: interval {i}, matches {}, exhaustive {brute}", i.contains(1));
    }
}
