//! Exhaustive reference validator: chronological depth-first search over the
//! local witnesses of pending hypotheses, verifying every complete assignment.
//! Only meant for small graphs.

use std::collections::{BTreeMap, VecDeque};

use super::{check_gtw_extra, GlobalTypingWitness, Hyp, Outcome, ValidateError, Validator};
use crate::matching::{check_compatible, LocalWitness, Sign, Typing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest graph (in nodes) the search accepts.
    pub max_nodes: usize,
    /// Largest candidate space per hypothesis.
    pub max_candidates_per_hypothesis: u128,
    /// Candidates examined before giving up.
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 12,
            max_candidates_per_hypothesis: 256,
            max_steps: 1_000_000,
        }
    }
}

struct Search<'v, 'a> {
    v: &'v Validator<'a>,
    typing0: &'v Typing,
    budget: Budget,
    steps: u64,
    assigned: BTreeMap<Hyp, LocalWitness>,
}

impl Validator<'_> {
    /// Decides the same question as [`Validator::flooding`] by exhaustive search.
    pub fn reference(&self, typing0: &Typing, budget: Budget) -> Result<Outcome, ValidateError> {
        if self.graph.node_count() > budget.max_nodes {
            return Err(ValidateError::SearchBudgetExceeded(format!(
                "{} nodes, at most {} allowed",
                self.graph.node_count(),
                budget.max_nodes
            )));
        }
        self.check_initial(typing0)?;
        let mut acc = Typing::new();
        for (n, s, sign) in typing0.iter() {
            if *sign == Sign::Neg {
                acc.insert(*n, s.clone(), Sign::Neg);
            }
        }
        let pending: VecDeque<Hyp> = typing0.positives().map(|(n, s)| (n, s.clone())).collect();
        let mut search = Search {
            v: self,
            typing0,
            budget,
            steps: 0,
            assigned: BTreeMap::new(),
        };
        let found = search.dfs(&acc, pending)?;
        let stats = super::Stats {
            candidates_checked: search.steps,
            ..Default::default()
        };
        match found {
            Some(witness) => Ok(Outcome { witness, stats }),
            None => Err(ValidateError::Invalid(super::FailureReport {
                failed: typing0
                    .positives()
                    .map(|(n, s)| super::FailedHypothesis {
                        node: n,
                        shape: s.clone(),
                        candidates: self.schema.candidates(self.graph, n, s, false).size(),
                        leaves: Vec::new(),
                        certain: self.cert.sign_of(n, s) == Some(Sign::Neg),
                    })
                    .collect(),
            })),
        }
    }
}

impl Search<'_, '_> {
    fn dfs(&mut self, acc: &Typing, mut pending: VecDeque<Hyp>) -> Result<Option<GlobalTypingWitness>, ValidateError> {
        let v = self.v;
        let h = loop {
            let Some(h) = pending.pop_front() else {
                let assigned = &self.assigned;
                let w = v.assemble(self.typing0, |h| assigned.get(h).cloned());
                return Ok(v.verify(&w).is_ok().then_some(w));
            };
            if self.assigned.contains_key(&h) {
                continue;
            }
            match v.cert.sign_of(h.0, &h.1) {
                Some(Sign::Pos) => continue,
                Some(Sign::Neg) => return Ok(None),
                None => break h,
            }
        };
        let candidates = v.schema.candidates(v.graph, h.0, &h.1, v.options.lookahead);
        if candidates.size() > self.budget.max_candidates_per_hypothesis {
            return Err(ValidateError::SearchBudgetExceeded(format!(
                "{} candidate witnesses for one hypothesis, at most {} allowed",
                candidates.size(),
                self.budget.max_candidates_per_hypothesis
            )));
        }
        for w in candidates {
            self.steps += 1;
            if self.steps > self.budget.max_steps {
                return Err(ValidateError::SearchBudgetExceeded(format!(
                    "more than {} search steps",
                    self.budget.max_steps
                )));
            }
            if !v.schema.check_local_witness(v.graph, h.0, &h.1, &w)?
                || !check_gtw_extra(v.graph, v.schema, &h.1, &w, &v.cert)
            {
                continue;
            }
            let prop = v.schema.propagation(v.graph, &h.1, &w);
            if !check_compatible(&prop, &v.cert.typing) || !check_compatible(&prop, acc) {
                continue;
            }
            let mut next_acc = acc.clone();
            next_acc.insert(h.0, h.1.clone(), Sign::Pos);
            next_acc.extend(prop.iter().cloned());
            if !next_acc.is_consistent() {
                continue;
            }
            let mut next = pending.clone();
            next.extend(prop.positives().map(|(n, s)| (n, s.clone())));
            self.assigned.insert(h.clone(), w);
            let found = self.dfs(&next_acc, next)?;
            self.assigned.remove(&h);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}
