//! Edge/consumer matching, candidate local witnesses and the local witness check.

pub mod brute;
mod candidates;
pub mod interval;
mod local;
mod lookahead;
mod typing;
pub mod unfold;

use std::collections::BTreeMap;

use crate::schema::TcId;

pub use brute::{brute_match, BagTooLarge, DEFAULT_BAG_BOUND};
pub use candidates::Candidates;
pub use interval::{allowed_repeat, check_interval_form, interval, interval_matches, Interval, IntervalError};
pub use local::{edge_matches, matching_consumers, value_satisfies, CompiledSchema, CompiledShape, LocalWitness, Strategy};
pub use lookahead::required_properties;
pub use typing::{check_compatible, Sign, Typing};
pub use unfold::unfold_repetitions;

/// Counts of edges per triple constraint.
pub type Bag = BTreeMap<TcId, u32>;
