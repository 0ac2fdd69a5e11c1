use std::collections::BTreeSet;
use std::fmt;

use crate::rdf::NodeId;
use crate::schema::ShapeLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// A set of signed (node, shape) facts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Typing(BTreeSet<(NodeId, ShapeLabel, Sign)>);

impl Typing {
    pub fn new() -> Self {
        Typing::default()
    }

    pub fn insert(&mut self, node: NodeId, shape: ShapeLabel, sign: Sign) -> bool {
        self.0.insert((node, shape, sign))
    }

    pub fn remove(&mut self, node: NodeId, shape: &ShapeLabel, sign: Sign) -> bool {
        self.0.remove(&(node, shape.clone(), sign))
    }

    pub fn contains(&self, node: NodeId, shape: &ShapeLabel, sign: Sign) -> bool {
        self.0.contains(&(node, shape.clone(), sign))
    }

    pub fn sign_of(&self, node: NodeId, shape: &ShapeLabel) -> Option<Sign> {
        if self.contains(node, shape, Sign::Pos) {
            Some(Sign::Pos)
        } else if self.contains(node, shape, Sign::Neg) {
            Some(Sign::Neg)
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(NodeId, ShapeLabel, Sign)> {
        self.0.iter()
    }

    pub fn positives(&self) -> impl Iterator<Item = (NodeId, &ShapeLabel)> {
        self.0.iter().filter(|e| e.2 == Sign::Pos).map(|e| (e.0, &e.1))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No (n, S) carries both signs.
    pub fn is_consistent(&self) -> bool {
        self.positives().all(|(n, s)| !self.contains(n, s, Sign::Neg))
    }

    pub fn is_subset(&self, other: &Typing) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<(NodeId, ShapeLabel, Sign)> for Typing {
    fn from_iter<I: IntoIterator<Item = (NodeId, ShapeLabel, Sign)>>(iter: I) -> Self {
        Typing(iter.into_iter().collect())
    }
}

impl Extend<(NodeId, ShapeLabel, Sign)> for Typing {
    fn extend<I: IntoIterator<Item = (NodeId, ShapeLabel, Sign)>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// False iff some (n, T) is positive in one typing and negative in the other.
pub fn check_compatible(t1: &Typing, t2: &Typing) -> bool {
    t1.iter()
        .all(|(n, s, sign)| !t2.contains(*n, s, sign.flip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(entries: &[(usize, &str, Sign)]) -> Typing {
        entries
            .iter()
            .map(|&(n, s, g)| (NodeId(n), ShapeLabel::new(s), g))
            .collect()
    }

    #[test]
    fn compatibility() {
        assert!(!check_compatible(&t(&[(0, "S", Sign::Pos)]), &t(&[(0, "S", Sign::Neg)])));
        assert!(!check_compatible(&t(&[(0, "S", Sign::Neg)]), &t(&[(0, "S", Sign::Pos)])));
        assert!(check_compatible(&t(&[(0, "S", Sign::Pos)]), &t(&[(1, "S", Sign::Neg)])));
    }

    #[test]
    fn consistency() {
        assert!(!t(&[(0, "S", Sign::Pos), (0, "S", Sign::Neg)]).is_consistent());
        assert!(t(&[(0, "S", Sign::Pos), (0, "T", Sign::Neg)]).is_consistent());
    }
}
