//! Flooding validation with backtracking.
//!
//! Hypotheses are checked in FIFO order. Each has a persistent cursor over its
//! candidate witnesses: a candidate is only skipped when it is not a local
//! witness, breaks the extra condition, contradicts the certain typing, or
//! needs a hypothesis that has already failed. All of these are permanent, so
//! failures are final and the search needs no chronological restoration.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{check_gtw_extra, FailedHypothesis, FailureReport, Hyp, Outcome, ValidateError, Validator};
use crate::matching::{check_compatible, Candidates, LocalWitness, Sign, Typing};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Dequeued hypotheses answered by the certain typing without search.
    pub certain_skips: u64,
    /// Candidates examined.
    pub candidates_checked: u64,
    /// Hypotheses whose candidates ran out.
    pub failures: u64,
    /// Witnesses invalidated by a failure.
    pub invalidations: u64,
}

/// Hypotheses to drop when `failed` fails: its direct requirers, plus every
/// non-root hypothesis all of whose requirers are dropped (or are `failed`).
pub fn to_remove(
    failed: &Hyp,
    required_by: &BTreeMap<Hyp, BTreeSet<Hyp>>,
    roots: &BTreeSet<Hyp>,
) -> BTreeSet<Hyp> {
    let direct = required_by.get(failed).cloned().unwrap_or_default();
    let mut gone: BTreeSet<Hyp> = direct.clone();
    gone.insert(failed.clone());
    loop {
        let orphans: Vec<Hyp> = required_by
            .iter()
            .filter(|(h, rs)| {
                !gone.contains(*h) && !roots.contains(*h) && !rs.is_empty() && rs.iter().all(|r| gone.contains(r))
            })
            .map(|(h, _)| h.clone())
            .collect();
        if orphans.is_empty() {
            break;
        }
        gone.extend(orphans);
    }
    gone.remove(failed);
    gone
}

#[derive(Default)]
struct Tuc {
    hyps: BTreeSet<Hyp>,
    lw: HashMap<Hyp, LocalWitness>,
    requires: BTreeMap<Hyp, BTreeSet<Hyp>>,
    required_by: BTreeMap<Hyp, BTreeSet<Hyp>>,
    queue: VecDeque<Hyp>,
    cursors: HashMap<Hyp, Candidates>,
    failed: BTreeMap<Hyp, u128>,
    /// Failed hypotheses that invalidated a witness of the key.
    blame: BTreeMap<Hyp, BTreeSet<Hyp>>,
    roots: BTreeSet<Hyp>,
}

impl Tuc {
    fn add(&mut self, h: Hyp) {
        if self.hyps.insert(h.clone()) {
            self.queue.push_back(h);
        }
    }

    fn drop_requirements(&mut self, h: &Hyp) {
        if let Some(reqs) = self.requires.remove(h) {
            for r in reqs {
                if let Some(set) = self.required_by.get_mut(&r) {
                    set.remove(h);
                    if set.is_empty() {
                        self.required_by.remove(&r);
                    }
                }
            }
        }
    }

    fn remove(&mut self, h: &Hyp) {
        self.hyps.remove(h);
        self.lw.remove(h);
        self.drop_requirements(h);
        if let Some(rs) = self.required_by.remove(h) {
            for r in rs {
                if let Some(set) = self.requires.get_mut(&r) {
                    set.remove(h);
                }
            }
        }
    }
}

impl Validator<'_> {
    /// Builds a global typing witness containing `typing0`, or reports the
    /// hypotheses of `typing0` that cannot hold.
    pub fn flooding(&self, typing0: &Typing) -> Result<Outcome, ValidateError> {
        self.check_initial(typing0)?;
        let mut stats = super::Stats::default();
        let mut tuc = Tuc::default();
        for (n, s) in typing0.positives() {
            let h = (n, s.clone());
            tuc.roots.insert(h.clone());
            tuc.add(h);
        }
        while let Some(h) = tuc.queue.pop_front() {
            if !tuc.hyps.contains(&h) || tuc.lw.contains_key(&h) {
                continue;
            }
            match self.cert.sign_of(h.0, &h.1) {
                Some(Sign::Pos) => {
                    stats.certain_skips += 1;
                    continue;
                }
                Some(Sign::Neg) => {
                    self.fail(&mut tuc, &mut stats, h, 0);
                    continue;
                }
                None => {}
            }
            let cursor = tuc
                .cursors
                .entry(h.clone())
                .or_insert_with(|| self.schema.candidates(self.graph, h.0, &h.1, self.options.lookahead));
            let Some(w) = cursor.current() else {
                let count = cursor.size();
                self.fail(&mut tuc, &mut stats, h, count);
                continue;
            };
            stats.candidates_checked += 1;
            if let Some(prop) = self.acceptable(&tuc, &h, &w)? {
                for (m, t, sign) in prop.iter() {
                    if *sign == Sign::Pos {
                        let req = (*m, t.clone());
                        tuc.requires.entry(h.clone()).or_default().insert(req.clone());
                        tuc.required_by.entry(req.clone()).or_default().insert(h.clone());
                        tuc.add(req);
                    }
                }
                tuc.lw.insert(h, w);
            } else {
                tuc.cursors.get_mut(&h).expect("cursor exists").advance();
                tuc.queue.push_back(h);
            }
        }

        let failed_roots: Vec<&Hyp> = tuc.roots.iter().filter(|h| tuc.failed.contains_key(*h)).collect();
        if !failed_roots.is_empty() {
            let failed = failed_roots
                .into_iter()
                .map(|h| FailedHypothesis {
                    node: h.0,
                    shape: h.1.clone(),
                    candidates: tuc.failed[h],
                    leaves: leaves(h, &tuc.blame),
                    certain: self.cert.sign_of(h.0, &h.1) == Some(Sign::Neg),
                })
                .collect();
            return Err(ValidateError::Invalid(FailureReport { failed }));
        }
        let witness = self.assemble(typing0, |h| tuc.lw.get(h).cloned());
        debug_assert!(
            self.verify(&witness).is_ok(),
            "flooding produced a witness that does not verify: {:?}",
            self.verify(&witness)
        );
        Ok(Outcome { witness, stats })
    }

    /// The propagation of `w` if `w` can be accepted for `h`.
    fn acceptable(&self, tuc: &Tuc, h: &Hyp, w: &LocalWitness) -> Result<Option<Typing>, ValidateError> {
        if !self.schema.check_local_witness(self.graph, h.0, &h.1, w)? {
            return Ok(None);
        }
        if !check_gtw_extra(self.graph, self.schema, &h.1, w, &self.cert) {
            return Ok(None);
        }
        let prop = self.schema.propagation(self.graph, &h.1, w);
        if !check_compatible(&prop, &self.cert.typing) {
            return Ok(None);
        }
        if prop
            .iter()
            .any(|(m, t, s)| *s == Sign::Pos && tuc.failed.contains_key(&(*m, t.clone())))
        {
            return Ok(None);
        }
        Ok(Some(prop))
    }

    /// Marks `h` failed and backtracks: orphaned hypotheses go away, and every
    /// direct requirer loses its witness, moves to its next candidate and is
    /// checked again.
    fn fail(&self, tuc: &mut Tuc, stats: &mut Stats, h: Hyp, candidates: u128) {
        stats.failures += 1;
        tuc.failed.insert(h.clone(), candidates);
        let direct = tuc.required_by.get(&h).cloned().unwrap_or_default();
        let removed = to_remove(&h, &tuc.required_by, &tuc.roots);
        tuc.remove(&h);
        for x in removed.difference(&direct) {
            tuc.remove(x);
        }
        for r in direct {
            stats.invalidations += 1;
            tuc.lw.remove(&r);
            tuc.drop_requirements(&r);
            tuc.blame.entry(r.clone()).or_default().insert(h.clone());
            if let Some(c) = tuc.cursors.get_mut(&r) {
                c.advance();
            }
            tuc.queue.push_back(r);
        }
    }
}

/// Failed hypotheses reachable from `root` through blame that failed without
/// being blamed on anything else.
fn leaves(root: &Hyp, blame: &BTreeMap<Hyp, BTreeSet<Hyp>>) -> Vec<Hyp> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![root.clone()];
    let mut out = BTreeSet::new();
    while let Some(h) = stack.pop() {
        if !seen.insert(h.clone()) {
            continue;
        }
        match blame.get(&h) {
            Some(causes) if !causes.is_empty() => stack.extend(causes.iter().cloned()),
            _ if &h != root => {
                out.insert(h);
            }
            _ => {}
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::NodeId;
    use crate::schema::ShapeLabel;

    fn h(n: usize) -> Hyp {
        (NodeId(n), ShapeLabel::new("S"))
    }

    fn rel(pairs: &[(usize, usize)]) -> BTreeMap<Hyp, BTreeSet<Hyp>> {
        let mut out: BTreeMap<Hyp, BTreeSet<Hyp>> = BTreeMap::new();
        for &(a, b) in pairs {
            out.entry(h(b)).or_default().insert(h(a));
        }
        out
    }

    #[test]
    fn single_requirer_is_removed() {
        let r = to_remove(&h(1), &rel(&[(0, 1)]), &BTreeSet::from([h(0)]));
        assert_eq!(r, BTreeSet::from([h(0)]));
    }

    #[test]
    fn chain_keeps_the_grand_requirer() {
        // A requires B requires C; C fails.
        let r = to_remove(&h(2), &rel(&[(0, 1), (1, 2)]), &BTreeSet::from([h(0)]));
        assert_eq!(r, BTreeSet::from([h(1)]));
    }

    #[test]
    fn nothing_requires_the_failure() {
        let r = to_remove(&h(5), &rel(&[(0, 1)]), &BTreeSet::from([h(0)]));
        assert!(r.is_empty());
    }

    #[test]
    fn orphans_of_removed_requirers_go_too() {
        // A requires B; B requires C and D; C fails: B is dropped, and D, only
        // required by B, is an orphan. E is still required by root A.
        let rs = rel(&[(0, 1), (1, 2), (1, 3), (0, 4), (1, 4)]);
        let r = to_remove(&h(2), &rs, &BTreeSet::from([h(0)]));
        assert_eq!(r, BTreeSet::from([h(1), h(3)]));
    }
}
