use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{Schema, ShapeLabel};

/// A negated shape from which a dependency cycle is reachable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct WellDefinednessError {
    pub label: ShapeLabel,
    /// The cycle, first label repeated at the end.
    pub cycle: Vec<ShapeLabel>,
}

impl fmt::Display for WellDefinednessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycle: Vec<String> = self.cycle.iter().map(|l| format!("<{l}>")).collect();
        write!(
            f,
            "schema is not well-defined: negated shape <{}> reaches the cycle {}",
            self.label,
            cycle.join(" -> ")
        )
    }
}

/// Non-fatal schema diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lint {
    /// An EXTRA property that no triple constraint of the shape uses.
    UnusedExtra { shape: ShapeLabel, property: String },
    /// A value class conjoining `@<T>` and `!@<T>`; no edge can satisfy it.
    ContradictoryConjunction { shape: ShapeLabel, tc: String, target: ShapeLabel },
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lint::UnusedExtra { shape, property } => write!(
                f,
                "warning: <{shape}> declares EXTRA {property} but no triple constraint uses it"
            ),
            Lint::ContradictoryConjunction { shape, tc, target } => write!(
                f,
                "error: {tc} in <{shape}> requires both @<{target}> and !@<{target}>"
            ),
        }
    }
}

pub type DependencyGraph = BTreeMap<ShapeLabel, BTreeSet<ShapeLabel>>;

impl Schema {
    /// Edge S -> T iff T occurs, negated or not, in a value class of S.
    pub fn dependency_graph(&self) -> DependencyGraph {
        self.shapes
            .iter()
            .map(|(label, def)| {
                let targets = def
                    .tcs()
                    .into_iter()
                    .flat_map(|tc| tc.shape_refs().map(|(t, _)| t.clone()))
                    .collect();
                (label.clone(), targets)
            })
            .collect()
    }

    /// Labels appearing negated in the definition of `label`: under `!`, or in a
    /// triple constraint whose property is extra.
    pub fn negated_shapes(&self, label: &ShapeLabel) -> BTreeSet<ShapeLabel> {
        let Some(def) = self.shapes.get(label) else {
            return BTreeSet::new();
        };
        let mut out = BTreeSet::new();
        for tc in def.tcs() {
            let extra = def.extra.contains(&tc.prop);
            for (t, negated) in tc.shape_refs() {
                if negated || extra {
                    out.insert(t.clone());
                }
            }
        }
        out
    }

    /// Union of `negated_shapes` over all shapes.
    pub fn all_negated_shapes(&self) -> BTreeSet<ShapeLabel> {
        self.shapes
            .keys()
            .flat_map(|l| self.negated_shapes(l))
            .collect()
    }

    /// Labels reachable from `roots` in the dependency graph, roots included.
    pub fn dependency_closure(&self, roots: &BTreeSet<ShapeLabel>) -> BTreeSet<ShapeLabel> {
        let deps = self.dependency_graph();
        let mut seen = BTreeSet::new();
        let mut stack: Vec<ShapeLabel> = roots.iter().cloned().collect();
        while let Some(l) = stack.pop() {
            if seen.insert(l.clone()) {
                if let Some(ts) = deps.get(&l) {
                    stack.extend(ts.iter().cloned());
                }
            }
        }
        seen
    }

    /// Orders an acyclic set of labels so that every label comes after the
    /// labels it depends on. Returns the offending cycle otherwise.
    pub fn leaves_first(&self, labels: &BTreeSet<ShapeLabel>) -> Result<Vec<ShapeLabel>, Vec<ShapeLabel>> {
        let deps = self.dependency_graph();
        let mut state: BTreeMap<ShapeLabel, u8> = BTreeMap::new();
        let mut order = Vec::new();
        let mut path = Vec::new();
        for l in labels {
            visit(l, &deps, &mut state, &mut order, &mut path)?;
        }
        Ok(order)
    }

    /// Def. of well-definedness: the sub-graph reachable from every negated
    /// shape is acyclic.
    pub fn check_well_defined(&self) -> Result<(), WellDefinednessError> {
        for t in self.all_negated_shapes() {
            let reach = self.dependency_closure(&BTreeSet::from([t.clone()]));
            if let Err(cycle) = self.leaves_first(&reach) {
                return Err(WellDefinednessError { label: t, cycle });
            }
        }
        Ok(())
    }

    pub fn lints(&self) -> Vec<Lint> {
        let mut out = Vec::new();
        for (label, def) in &self.shapes {
            let tcs = def.tcs();
            for q in &def.extra {
                if !tcs.iter().any(|tc| &tc.prop == q) {
                    out.push(Lint::UnusedExtra {
                        shape: label.clone(),
                        property: q.to_string(),
                    });
                }
            }
            for tc in &tcs {
                let refs: Vec<_> = tc.shape_refs().collect();
                for (t, neg) in &refs {
                    if !neg && refs.iter().any(|(u, n)| *n && u == t) {
                        out.push(Lint::ContradictoryConjunction {
                            shape: label.clone(),
                            tc: tc.id.to_string(),
                            target: (*t).clone(),
                        });
                    }
                }
            }
        }
        out
    }
}

fn visit(
    l: &ShapeLabel,
    deps: &DependencyGraph,
    state: &mut BTreeMap<ShapeLabel, u8>,
    order: &mut Vec<ShapeLabel>,
    path: &mut Vec<ShapeLabel>,
) -> Result<(), Vec<ShapeLabel>> {
    match state.get(l) {
        Some(2) => return Ok(()),
        Some(1) => {
            let start = path.iter().position(|p| p == l).unwrap_or(0);
            let mut cycle = path[start..].to_vec();
            cycle.push(l.clone());
            return Err(cycle);
        }
        _ => {}
    }
    state.insert(l.clone(), 1);
    path.push(l.clone());
    if let Some(ts) = deps.get(l) {
        for t in ts {
            visit(t, deps, state, order, path)?;
        }
    }
    path.pop();
    state.insert(l.clone(), 2);
    order.push(l.clone());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::parse_schema;

    fn set(ls: &[&str]) -> BTreeSet<ShapeLabel> {
        ls.iter().map(|l| ShapeLabel::new(l)).collect()
    }

    #[test]
    fn self_negation_is_rejected() {
        let s = parse_schema("<S> { <p> !@<S> }").unwrap();
        let err = s.check_well_defined().unwrap_err();
        assert_eq!(err.label, ShapeLabel::new("S"));
        assert_eq!(err.cycle, vec![ShapeLabel::new("S"), ShapeLabel::new("S")]);
    }

    #[test]
    fn cycle_reachable_from_negated_shape_is_rejected() {
        let s = parse_schema("<A> { <p> !@<B> } <B> { <q> @<C> } <C> { <r> @<B> }").unwrap();
        let err = s.check_well_defined().unwrap_err();
        assert_eq!(err.label, ShapeLabel::new("B"));
        assert_eq!(err.cycle, vec![ShapeLabel::new("B"), ShapeLabel::new("C"), ShapeLabel::new("B")]);
    }

    #[test]
    fn positive_recursion_is_fine() {
        let s = parse_schema("<S> { <p> @<S> }").unwrap();
        assert!(s.check_well_defined().is_ok());
        assert_eq!(s.dependency_graph()[&ShapeLabel::new("S")], set(&["S"]));
        assert!(s.all_negated_shapes().is_empty());
    }

    #[test]
    fn extra_makes_references_negated() {
        let s = parse_schema("<S> EXTRA <p> { <p> @<T> , <q> @<U> } <T> { } <U> { }").unwrap();
        assert_eq!(s.negated_shapes(&ShapeLabel::new("S")), set(&["T"]));
    }

    #[test]
    fn leaves_first_orders_dependencies() {
        let s = parse_schema("<A> { <p> @<B> } <B> { <q> @<C> } <C> { }").unwrap();
        let order = s.leaves_first(&set(&["A", "B", "C"])).unwrap();
        assert_eq!(order, vec![ShapeLabel::new("C"), ShapeLabel::new("B"), ShapeLabel::new("A")]);
    }

    #[test]
    fn lints() {
        let s = parse_schema("<S> EXTRA <z> { <p> @<T> AND !@<T> } <T> { }").unwrap();
        let lints = s.lints();
        assert_eq!(lints.len(), 2);
        assert!(matches!(lints[0], Lint::UnusedExtra { .. }));
        assert!(matches!(lints[1], Lint::ContradictoryConjunction { .. }));
    }
}
