//! Exact ranking and unranking of discrete fuzzy numbers.
//!
//! A discrete fuzzy number (dfn) on the chain `0..=n` takes membership
//! values in a finite scale of `m` levels and is normal and unimodal. Fixing
//! a total order on the intervals of the chain induces a total order on
//! dfns (compare alpha-cuts from the core downward), and with it a bijection
//! between dfns and `0..N`, `N = C(n + 2m - 2, 2m - 2)`.
//!
//! [`rank::pos`] and [`rank::pos_inv`] compute that bijection level by
//! level using closed-form extension counts, in `O(n² m log n)` big-integer
//! operations. [`oracle`] is the brute-force reference used to validate it,
//! [`connectives`] transports functions on `0..N` to connectives on dfns,
//! and [`bench`] measures how the cost scales with `m`.

pub mod bench;
pub mod connectives;
pub mod count;
mod decimal;
pub mod error;
pub mod model;
pub mod oracle;
pub mod order;
pub mod rank;

pub use count::{binomial, interval_count, sdfn_count, total_dfns};
pub use error::{Error, Result};
pub use model::{from_alpha_cuts, AlphaCutChain, ChainParams, Dfn, DfnRecord, Interval};
pub use order::{
    compare_dfn, compare_intervals, containing_intervals, is_admissible, sorted_intervals,
    verify_order, Admissibility, IntervalOrder,
};
pub use rank::{pos, pos_inv, pos_inv_trace, pos_trace, LevelStep, PositionIndex, Trace};
