//! Exhaustive decision of `bag ∈ L(expr)` straight from the definition of
//! local witnesses, memoized on (sub-expression, sub-bag).

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::Bag;
use crate::schema::{ShapeExpr, TcId};

pub const DEFAULT_BAG_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bag of {size} edges exceeds the exhaustive matcher bound of {bound}")]
pub struct BagTooLarge {
    pub size: usize,
    pub bound: usize,
}

type Key = Vec<(TcId, u32)>;

pub fn brute_match(expr: &ShapeExpr, bag: &Bag, bound: usize) -> Result<bool, BagTooLarge> {
    let size: usize = bag.values().map(|&c| c as usize).sum();
    if size > bound {
        return Err(BagTooLarge { size, bound });
    }
    let mut m = Matcher::default();
    Ok(m.matches(expr, &normalize(bag)))
}

fn normalize(bag: &Bag) -> Key {
    bag.iter().filter(|(_, &c)| c > 0).map(|(&i, &c)| (i, c)).collect()
}

fn alphabet(expr: &ShapeExpr) -> BTreeSet<TcId> {
    expr.tcs().iter().map(|tc| tc.id).collect()
}

#[derive(Default)]
struct Matcher {
    memo: HashMap<(usize, Key), bool>,
    parts: HashMap<(usize, Key), BTreeSet<usize>>,
}

impl Matcher {
    fn matches(&mut self, expr: &ShapeExpr, bag: &Key) -> bool {
        let key = (expr as *const ShapeExpr as usize, bag.clone());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.compute(expr, bag);
        self.memo.insert(key, r);
        r
    }

    fn compute(&mut self, expr: &ShapeExpr, bag: &Key) -> bool {
        match expr {
            ShapeExpr::Empty => bag.is_empty(),
            ShapeExpr::Tc(tc) => bag.as_slice() == [(tc.id, 1)],
            ShapeExpr::SomeOf(es) => es.iter().any(|e| self.matches(e, bag)),
            ShapeExpr::Group(es) => {
                let alphas: Vec<BTreeSet<TcId>> = es.iter().map(alphabet).collect();
                let mut split = vec![Key::new(); es.len()];
                self.split(es, &alphas, bag, 0, &mut split)
            }
            ShapeExpr::Repeat { expr: inner, min, max } => {
                if bag.is_empty() {
                    return *min == 0 || inner.nullable();
                }
                let nullable = inner.nullable();
                let counts = self.part_counts(inner, bag);
                counts
                    .iter()
                    .any(|&j| max.is_none_or(|u| j <= u as usize) && (j >= *min as usize || nullable))
            }
        }
    }

    /// Distributes the count of every id among the children that own it, then
    /// matches each child on its share. The split is forced when ids are unique.
    fn split(
        &mut self,
        es: &[ShapeExpr],
        alphas: &[BTreeSet<TcId>],
        bag: &Key,
        at: usize,
        split: &mut Vec<Key>,
    ) -> bool {
        if at == bag.len() {
            let shares = split.clone();
            return es.iter().zip(&shares).all(|(e, part)| self.matches(e, part));
        }
        let (id, count) = bag[at];
        let owners: Vec<usize> = (0..es.len()).filter(|&i| alphas[i].contains(&id)).collect();
        if owners.is_empty() {
            return false;
        }
        let mut found = false;
        distribute(count, owners.len(), &mut vec![0; owners.len()], 0, &mut |shares| {
            if found {
                return;
            }
            for (k, &o) in owners.iter().enumerate() {
                if shares[k] > 0 {
                    split[o].push((id, shares[k]));
                }
            }
            found = self.split(es, alphas, bag, at + 1, split);
            for (k, &o) in owners.iter().enumerate() {
                if shares[k] > 0 {
                    split[o].pop();
                }
            }
        });
        found
    }

    /// Numbers j such that the bag splits into j non-empty parts, each in L(expr).
    /// Parts are enumerated canonically: the first part holds an occurrence of
    /// the smallest id.
    fn part_counts(&mut self, expr: &ShapeExpr, bag: &Key) -> BTreeSet<usize> {
        let key = (expr as *const ShapeExpr as usize, bag.clone());
        if let Some(r) = self.parts.get(&key) {
            return r.clone();
        }
        let mut out = BTreeSet::new();
        if bag.is_empty() {
            out.insert(0);
        } else {
            for part in sub_bags(bag) {
                if !self.matches(expr, &part) {
                    continue;
                }
                let rest = minus(bag, &part);
                for j in self.part_counts(expr, &rest) {
                    out.insert(j + 1);
                }
            }
        }
        self.parts.insert(key, out.clone());
        out
    }
}

fn distribute(total: u32, slots: usize, acc: &mut Vec<u32>, at: usize, f: &mut dyn FnMut(&[u32])) {
    if at + 1 == slots {
        acc[at] = total;
        f(acc);
        return;
    }
    for k in 0..=total {
        acc[at] = k;
        distribute(total - k, slots, acc, at + 1, f);
    }
}

/// Sub-bags containing at least one occurrence of the first id.
fn sub_bags(bag: &Key) -> Vec<Key> {
    let mut out = vec![Key::new()];
    for (i, &(id, c)) in bag.iter().enumerate() {
        let from = if i == 0 { 1 } else { 0 };
        let mut next = Vec::new();
        for partial in &out {
            for k in from..=c {
                let mut p = partial.clone();
                if k > 0 {
                    p.push((id, k));
                }
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn minus(bag: &Key, part: &Key) -> Key {
    bag.iter()
        .filter_map(|&(id, c)| {
            let take = part.iter().find(|(p, _)| *p == id).map_or(0, |&(_, k)| k);
            (c > take).then_some((id, c - take))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::DirectedProperty;
    use crate::schema::TripleConstraint;

    fn tc(n: u32) -> ShapeExpr {
        ShapeExpr::Tc(TripleConstraint {
            id: TcId(n),
            prop: DirectedProperty::forward("p"),
            value_class: vec![],
        })
    }

    fn bag(pairs: &[(u32, u32)]) -> Bag {
        pairs.iter().map(|&(i, c)| (TcId(i), c)).collect()
    }

    fn m(e: &ShapeExpr, b: &[(u32, u32)]) -> bool {
        brute_match(e, &bag(b), DEFAULT_BAG_BOUND).unwrap()
    }

    #[test]
    fn basics() {
        assert!(m(&tc(1), &[(1, 1)]));
        assert!(!m(&tc(1), &[(1, 2)]));
        assert!(m(&ShapeExpr::Empty, &[]));
        assert!(!m(&ShapeExpr::SomeOf(vec![tc(1), tc(2)]), &[(1, 1), (2, 1)]));
    }

    #[test]
    fn issue_shape_bag() {
        let e = ShapeExpr::Group(vec![
            tc(1),
            tc(2),
            ShapeExpr::repeat(tc(3), 1, None),
            ShapeExpr::repeat(tc(4), 1, None),
        ]);
        assert!(m(&e, &[(1, 1), (2, 1), (3, 2), (4, 1)]));
        assert!(!m(&e, &[(1, 2), (2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn general_repetition() {
        let g = ShapeExpr::Group(vec![tc(1), ShapeExpr::repeat(tc(2), 0, Some(1))]);
        let e = ShapeExpr::repeat(g, 2, Some(3));
        assert!(m(&e, &[(1, 2)]));
        assert!(m(&e, &[(1, 3), (2, 3)]));
        assert!(!m(&e, &[(1, 1), (2, 1)]));
        assert!(!m(&e, &[(1, 2), (2, 3)]));
        assert!(!m(&e, &[(1, 4)]));
    }

    #[test]
    fn duplicated_ids_distribute_counts() {
        let e = ShapeExpr::Group(vec![tc(1), ShapeExpr::repeat(tc(1), 0, Some(1))]);
        assert!(m(&e, &[(1, 1)]));
        assert!(m(&e, &[(1, 2)]));
        assert!(!m(&e, &[(1, 3)]));
    }

    #[test]
    fn bound() {
        let e = ShapeExpr::repeat(tc(1), 0, None);
        assert_eq!(
            brute_match(&e, &bag(&[(1, 17)]), 16),
            Err(BagTooLarge { size: 17, bound: 16 })
        );
    }
}
