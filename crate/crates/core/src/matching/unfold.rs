use super::interval::allowed_repeat;
use crate::schema::ShapeExpr;

/// Rewrites compound repetitions other than `?`, `*`, `+` into groups:
/// `E[m;n]` becomes m copies of E then n-m copies of `E?`, and `E[m;*]`
/// becomes m copies of E then `E*`. Repetitions on triple constraints stay.
pub fn unfold_repetitions(expr: &ShapeExpr) -> ShapeExpr {
    match expr {
        ShapeExpr::Empty | ShapeExpr::Tc(_) => expr.clone(),
        ShapeExpr::SomeOf(es) => ShapeExpr::SomeOf(es.iter().map(unfold_repetitions).collect()),
        ShapeExpr::Group(es) => ShapeExpr::Group(es.iter().map(unfold_repetitions).collect()),
        ShapeExpr::Repeat { expr: inner, min, max } => {
            let inner = unfold_repetitions(inner);
            if matches!(inner, ShapeExpr::Tc(_)) || allowed_repeat(*min, *max) {
                return ShapeExpr::repeat(inner, *min, *max);
            }
            let mut parts: Vec<ShapeExpr> = (0..*min).map(|_| inner.clone()).collect();
            match max {
                Some(n) => parts.extend((*min..*n).map(|_| ShapeExpr::repeat(inner.clone(), 0, Some(1)))),
                None => parts.push(ShapeExpr::repeat(inner, 0, None)),
            }
            match parts.len() {
                0 => ShapeExpr::Empty,
                1 => parts.pop().unwrap(),
                _ => ShapeExpr::Group(parts),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::DirectedProperty;
    use crate::schema::{TcId, TripleConstraint};

    fn tc(n: u32) -> ShapeExpr {
        ShapeExpr::Tc(TripleConstraint {
            id: TcId(n),
            prop: DirectedProperty::forward("p"),
            value_class: vec![],
        })
    }

    #[test]
    fn two_to_four() {
        let e = ShapeExpr::Group(vec![tc(1), tc(2)]);
        let opt = ShapeExpr::repeat(e.clone(), 0, Some(1));
        assert_eq!(
            unfold_repetitions(&ShapeExpr::repeat(e.clone(), 2, Some(4))),
            ShapeExpr::Group(vec![e.clone(), e, opt.clone(), opt])
        );
    }

    #[test]
    fn unbounded_tail() {
        let e = ShapeExpr::SomeOf(vec![tc(1), tc(2)]);
        assert_eq!(
            unfold_repetitions(&ShapeExpr::repeat(e.clone(), 2, None)),
            ShapeExpr::Group(vec![e.clone(), e.clone(), ShapeExpr::repeat(e, 0, None)])
        );
    }

    #[test]
    fn left_alone() {
        let t = ShapeExpr::repeat(tc(1), 3, Some(7));
        assert_eq!(unfold_repetitions(&t), t);
        let plus = ShapeExpr::repeat(ShapeExpr::Group(vec![tc(1), tc(2)]), 1, None);
        assert_eq!(unfold_repetitions(&plus), plus);
    }

    #[test]
    fn degenerate_counts() {
        let e = ShapeExpr::Group(vec![tc(1), tc(2)]);
        assert_eq!(unfold_repetitions(&ShapeExpr::repeat(e.clone(), 0, Some(0))), ShapeExpr::Empty);
        assert_eq!(unfold_repetitions(&ShapeExpr::repeat(e.clone(), 1, Some(1))), e);
    }
}
