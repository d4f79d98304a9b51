//! Brute-force reference: enumerate every dfn, sort under the dfn order,
//! and read positions off the sorted list. Only usable on small instances.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::count::total_dfns;
use crate::error::{Error, Result};
use crate::model::{ChainParams, Dfn};
use crate::order::{compare_dfn_unchecked, IntervalOrder};
use crate::rank::{pos, pos_inv, pos_inv_trace, pos_trace, PositionIndex, Trace};

pub const DEFAULT_CAP: u64 = 1_000_000;

fn check_cap(n: usize, m: usize, cap: u64) -> Result<usize> {
    let count = total_dfns(n, m);
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c as usize),
        _ => Err(Error::InstanceTooLarge { count, cap }),
    }
}

/// Streams every dfn of the instance exactly once.
///
/// Dfns are generated as nondecreasing sequences
/// `l_2 <= ... <= l_m <= r_m <= ... <= r_2` over `0..=n`, in lexicographic
/// order of that sequence; the order under test plays no part.
#[derive(Debug, Clone)]
pub struct DfnEnumerator {
    params: ChainParams,
    seq: Vec<usize>,
    done: bool,
}

impl DfnEnumerator {
    fn levels(&self) -> Vec<usize> {
        let m = self.params.m();
        let mut levels = vec![1; self.params.n() + 1];
        for (x, level) in levels.iter_mut().enumerate() {
            for j in 2..=m {
                let (l, r) = (self.seq[j - 2], self.seq[2 * m - 1 - j]);
                if l <= x && x <= r {
                    *level = j;
                }
            }
        }
        levels
    }

    fn advance(&mut self) {
        let n = self.params.n();
        match self.seq.iter().rposition(|&v| v < n) {
            Some(i) => {
                let v = self.seq[i] + 1;
                self.seq[i..].fill(v);
            }
            None => self.done = true,
        }
    }
}

impl Iterator for DfnEnumerator {
    type Item = Dfn;

    fn next(&mut self) -> Option<Dfn> {
        if self.done {
            return None;
        }
        let levels = self.levels();
        self.advance();
        Some(Dfn::new(self.params.clone(), levels).expect("nested cut chain gives a dfn"))
    }
}

pub fn enumerate_all(params: &ChainParams, cap: u64) -> Result<DfnEnumerator> {
    check_cap(params.n(), params.m(), cap)?;
    Ok(DfnEnumerator {
        params: params.clone(),
        seq: vec![0; 2 * params.m() - 2],
        done: false,
    })
}

/// Every dfn, strictly ascending under the order induced by `ord`.
pub fn oracle_sorted(ord: &IntervalOrder, params: &ChainParams, cap: u64) -> Result<Vec<Dfn>> {
    let mut all: Vec<Dfn> = enumerate_all(params, cap)?.collect();
    all.sort_by(|a, b| compare_dfn_unchecked(ord, a, b));
    Ok(all)
}

/// Position of `dfn` in [`oracle_sorted`].
pub fn oracle_pos(ord: &IntervalOrder, dfn: &Dfn, cap: u64) -> Result<PositionIndex> {
    let sorted = oracle_sorted(ord, dfn.params(), cap)?;
    let i = sorted
        .binary_search_by(|x| compare_dfn_unchecked(ord, x, dfn))
        .expect("every dfn is enumerated");
    Ok(PositionIndex::from(i as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rank,
    Unrank,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub direction: Direction,
    /// The oracle's position of the dfn in question.
    pub index: u64,
    /// What the oracle says: a position for rank, a dfn for unrank.
    pub expected: String,
    pub actual: String,
    pub trace: Option<Trace>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub order: String,
    pub n: usize,
    pub m: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} m={}: {} checked, {} mismatches",
            self.order,
            self.n,
            self.m,
            self.checked,
            self.mismatches.len()
        )
    }
}

/// Compares rank and unrank against the sorted enumeration, position by
/// position. Every disagreement is reported with the fast path's trace.
pub fn cross_check(
    ord: &IntervalOrder,
    params: &ChainParams,
    cap: u64,
) -> Result<CrossCheckReport> {
    let sorted = oracle_sorted(ord, params, cap)?;
    let mut mismatches = Vec::new();
    for (i, dfn) in sorted.iter().enumerate() {
        let idx = BigUint::from(i);
        match pos(ord, dfn) {
            Ok(p) if *p.value() == idx => {}
            other => mismatches.push(Mismatch {
                direction: Direction::Rank,
                index: i as u64,
                expected: i.to_string(),
                actual: describe(other.map(|p| p.to_string())),
                trace: pos_trace(ord, dfn).ok(),
            }),
        }
        match pos_inv(ord, params, &idx) {
            Ok(d) if d == *dfn => {}
            other => mismatches.push(Mismatch {
                direction: Direction::Unrank,
                index: i as u64,
                expected: dfn.to_string(),
                actual: describe(other.map(|d| d.to_string())),
                trace: pos_inv_trace(ord, params, &idx).ok(),
            }),
        }
    }
    Ok(CrossCheckReport {
        order: ord.name().to_string(),
        n: params.n(),
        m: params.m(),
        checked: sorted.len(),
        mismatches,
    })
}

fn describe(r: Result<String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}
