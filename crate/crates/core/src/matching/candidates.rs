use super::LocalWitness;
use crate::rdf::EdgeIdx;
use crate::schema::TripleConsumer;

/// Lazy Cartesian product of the matching consumer lists of a neighbourhood,
/// in lexicographic order with the last edge varying fastest. The cursor is
/// persistent: `current` stays put until `advance` is called.
#[derive(Clone, Debug)]
pub struct Candidates {
    edges: Vec<EdgeIdx>,
    lists: Vec<Vec<TripleConsumer>>,
    pos: Vec<usize>,
    exhausted: bool,
    advanced: u64,
}

impl Candidates {
    pub fn new(edges: Vec<EdgeIdx>, lists: Vec<Vec<TripleConsumer>>) -> Self {
        debug_assert_eq!(edges.len(), lists.len());
        let exhausted = lists.iter().any(|l| l.is_empty());
        Candidates {
            pos: vec![0; lists.len()],
            edges,
            lists,
            exhausted,
            advanced: 0,
        }
    }

    pub fn lists(&self) -> &[Vec<TripleConsumer>] {
        &self.lists
    }

    /// Product of the list lengths, saturating.
    pub fn size(&self) -> u128 {
        self.lists
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
    }

    /// Number of candidates skipped so far.
    pub fn advanced(&self) -> u64 {
        self.advanced
    }

    pub fn current(&self) -> Option<LocalWitness> {
        if self.exhausted {
            return None;
        }
        Some(LocalWitness(
            self.edges
                .iter()
                .zip(&self.lists)
                .zip(&self.pos)
                .map(|((&e, l), &p)| (e, l[p].clone()))
                .collect(),
        ))
    }

    pub fn advance(&mut self) {
        if self.exhausted {
            return;
        }
        self.advanced += 1;
        for i in (0..self.pos.len()).rev() {
            self.pos[i] += 1;
            if self.pos[i] < self.lists[i].len() {
                return;
            }
            self.pos[i] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for Candidates {
    type Item = LocalWitness;

    fn next(&mut self) -> Option<LocalWitness> {
        let c = self.current()?;
        self.advance();
        Some(c)
    }
}
