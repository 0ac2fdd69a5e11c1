//! The interval algorithm: for a single-occurrence expression E and a bag w,
//! the set { n : w ∈ L(E)^n } is an interval, computed bottom-up.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::Bag;
use crate::schema::{ShapeExpr, TcId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interval {
    Empty,
    /// `hi: None` is unbounded.
    Range { lo: u64, hi: Option<u64> },
}

impl Interval {
    pub const ANY: Interval = Interval::Range { lo: 0, hi: None };

    pub fn new(lo: u64, hi: Option<u64>) -> Self {
        match hi {
            Some(h) if h < lo => Interval::Empty,
            _ => Interval::Range { lo, hi },
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Range { lo, hi } => lo <= n && hi.is_none_or(|h| n <= h),
        }
    }

    pub fn intersect(self, other: Interval) -> Interval {
        match (self, other) {
            (Interval::Range { lo: a, hi: b }, Interval::Range { lo: c, hi: d }) => {
                let hi = match (b, d) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, None) => x,
                    (None, y) => y,
                };
                Interval::new(a.max(c), hi)
            }
            _ => Interval::Empty,
        }
    }

    /// Minkowski sum.
    pub fn plus(self, other: Interval) -> Interval {
        match (self, other) {
            (Interval::Range { lo: a, hi: b }, Interval::Range { lo: c, hi: d }) => Interval::Range {
                lo: a + c,
                hi: b.zip(d).map(|(x, y)| x + y),
            },
            _ => Interval::Empty,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("∅"),
            Interval::Range { lo, hi: Some(h) } => write!(f, "[{lo};{h}]"),
            Interval::Range { lo, hi: None } => write!(f, "[{lo};*]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("triple constraint {0} occurs more than once")]
    NotSingleOccurrence(TcId),
    #[error("repetition [{min};{max}] on a non-triple-constraint expression must be unfolded first")]
    NotUnfolded { min: u32, max: String },
}

/// Whether a repetition interval on a compound expression is one the interval
/// algorithm handles directly: `?`, `*` or `+`.
pub fn allowed_repeat(min: u32, max: Option<u32>) -> bool {
    matches!((min, max), (0, Some(1)) | (0, None) | (1, None))
}

/// Checks the preconditions of [`interval`]: every id occurs once and every
/// compound repetition is `?`, `*` or `+`.
pub fn check_interval_form(expr: &ShapeExpr) -> Result<(), IntervalError> {
    let mut seen = BTreeSet::new();
    form(expr, &mut seen)
}

fn form(expr: &ShapeExpr, seen: &mut BTreeSet<TcId>) -> Result<(), IntervalError> {
    match expr {
        ShapeExpr::Empty => Ok(()),
        ShapeExpr::Tc(tc) => {
            if seen.insert(tc.id) {
                Ok(())
            } else {
                Err(IntervalError::NotSingleOccurrence(tc.id))
            }
        }
        ShapeExpr::SomeOf(es) | ShapeExpr::Group(es) => es.iter().try_for_each(|e| form(e, seen)),
        ShapeExpr::Repeat { expr, min, max } => {
            if let ShapeExpr::Tc(_) = **expr {
                return form(expr, seen);
            }
            if !allowed_repeat(*min, *max) {
                return Err(IntervalError::NotUnfolded {
                    min: *min,
                    max: max.map_or("*".to_string(), |m| m.to_string()),
                });
            }
            form(expr, seen)
        }
    }
}

/// `{ n : bag ∈ L(expr)^n }`. The expression must pass [`check_interval_form`].
pub fn interval(expr: &ShapeExpr, bag: &Bag) -> Result<Interval, IntervalError> {
    check_interval_form(expr)?;
    let alphabet: BTreeSet<TcId> = expr.tcs().iter().map(|tc| tc.id).collect();
    if bag.iter().any(|(id, &c)| c > 0 && !alphabet.contains(id)) {
        return Ok(Interval::Empty);
    }
    Ok(eval(expr, bag))
}

/// `bag ∈ L(expr)`, decided as `1 ∈ interval(expr, bag)`.
pub fn interval_matches(expr: &ShapeExpr, bag: &Bag) -> Result<bool, IntervalError> {
    Ok(interval(expr, bag)?.contains(1))
}

fn eval(expr: &ShapeExpr, bag: &Bag) -> Interval {
    match expr {
        ShapeExpr::Empty => Interval::ANY,
        ShapeExpr::Tc(tc) => tc_interval(bag.get(&tc.id).copied().unwrap_or(0), 1, Some(1)),
        ShapeExpr::Group(es) => es.iter().fold(Interval::ANY, |acc, e| acc.intersect(eval(e, bag))),
        ShapeExpr::SomeOf(es) => es
            .iter()
            .map(|e| eval(e, bag))
            .reduce(Interval::plus)
            .unwrap_or(Interval::Empty),
        ShapeExpr::Repeat { expr: inner, min, max } => match &**inner {
            ShapeExpr::Tc(tc) => tc_interval(bag.get(&tc.id).copied().unwrap_or(0), *min, *max),
            _ => repeat_interval(eval(inner, bag), *min, *max),
        },
    }
}

/// `{ n : n·l ≤ c ≤ n·u }`.
fn tc_interval(c: u32, l: u32, u: Option<u32>) -> Interval {
    let (c, l) = (c as u64, l as u64);
    if c == 0 {
        return if l == 0 { Interval::ANY } else { Interval::new(0, Some(0)) };
    }
    let lo = match u {
        None => 1,
        Some(0) => return Interval::Empty,
        Some(u) => c.div_ceil(u as u64),
    };
    let hi = if l == 0 { None } else { Some(c / l) };
    Interval::new(lo, hi)
}

/// `{ n : ∃ m ∈ inner, n·l ≤ m ≤ n·u }` for an interval `inner`.
fn repeat_interval(inner: Interval, l: u32, u: Option<u32>) -> Interval {
    let Interval::Range { lo: a, hi: b } = inner else {
        return Interval::Empty;
    };
    let l = l as u64;
    let zero = a == 0;
    let lower = match u {
        None => Some(1),
        Some(0) => (a == 0).then_some(1),
        Some(u) => Some(a.div_ceil(u as u64).max(1)),
    };
    let upper = match b {
        Some(b) if l > 0 => Some(b / l),
        _ => None,
    };
    let positive = match lower {
        Some(lo) => Interval::new(lo, upper),
        None => Interval::Empty,
    };
    match (zero, positive) {
        (true, Interval::Range { lo: 1, hi }) => Interval::Range { lo: 0, hi },
        (true, _) => Interval::new(0, Some(0)),
        (false, p) => p,
    }
}
