//! Ranking (`pos`) and unranking (`pos⁻¹`) of dfns without enumerating the
//! lattice.
//!
//! Both directions walk the cut chain from the core (level `m`) down to
//! level 1. At level `j` the admissible cuts are the supersets of the cut
//! already fixed at level `j + 1`, and each candidate `[a,b]` stands for
//! exactly `sdfn_count(a, b, j, n)` dfns (the ways to finish the chain
//! below it). Since the dfn order is lexicographic on the cut chain read
//! top-down, the position of a dfn is the sum, over levels, of the counts
//! of candidates that precede its own cut.
//!
//! Public indices are 0-based: the minimum dfn has position 0. Internally
//! the accumulators run 1-based, which is why a position-`p` dfn shows a
//! final trace counter of `p + 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::count::{sdfn_count_unchecked, total_dfns};
use crate::error::{Error, Result};
use crate::model::{AlphaCutChain, ChainParams, Dfn, Interval};
use crate::order::{all_intervals, sort_checked, supersets, IntervalOrder};

/// A 0-based position in the dfn lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionIndex(BigUint);

impl PositionIndex {
    pub fn new(value: BigUint) -> Self {
        PositionIndex(value)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }
}

impl From<BigUint> for PositionIndex {
    fn from(v: BigUint) -> Self {
        PositionIndex(v)
    }
}

impl From<u64> for PositionIndex {
    fn from(v: u64) -> Self {
        PositionIndex(BigUint::from(v))
    }
}

impl fmt::Display for PositionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for PositionIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!(
                "index must be a nonnegative decimal integer, got {s:?}"
            )));
        }
        s.parse::<BigUint>()
            .map(PositionIndex)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Work counters for one rank or unrank call.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpStats {
    /// Interval comparisons, including those made while sorting.
    pub comparisons: u64,
    /// Candidate intervals generated.
    pub candidates: u64,
    /// Extension counts evaluated.
    pub count_evals: u64,
}

impl OpStats {
    pub fn total(&self) -> u64 {
        self.comparisons + self.candidates + self.count_evals
    }
}

/// One row of a level table: a candidate cut, its extension count and the
/// running sum through it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub interval: Interval,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub count: BigUint,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub accumulated: BigUint,
}

/// State of one level of the walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelStep {
    pub level: usize,
    /// Size of the candidate set. For unranking, every superset of the cut
    /// above; for ranking, those not after the dfn's own cut.
    pub candidate_count: usize,
    /// 1-based position of the chosen cut among the candidates.
    pub chosen_index: usize,
    pub chosen: Interval,
    /// Candidates in order, through the chosen one.
    pub rows: Vec<TraceRow>,
    /// Ranking: the 1-based accumulator after this level.
    /// Unranking: the 1-based residual left for the levels below.
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub counter: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Rank,
    Unrank,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trace {
    pub kind: TraceKind,
    pub order: String,
    pub n: usize,
    pub m: usize,
    /// 0-based position of the dfn.
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub index: BigUint,
    #[serde(serialize_with = "crate::decimal::serialize_display")]
    pub dfn: Dfn,
    /// Levels `m` down to 1.
    pub steps: Vec<LevelStep>,
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            TraceKind::Rank => "rank",
            TraceKind::Unrank => "unrank",
        };
        writeln!(
            f,
            "{label} under {} (n={}, m={}): index {} <-> {}",
            self.order, self.n, self.m, self.index, self.dfn
        )?;
        for step in &self.steps {
            writeln!(
                f,
                "level {}: {} candidates, chose #{} {}, counter {}",
                step.level, step.candidate_count, step.chosen_index, step.chosen, step.counter
            )?;
            writeln!(
                f,
                "  {:>5}  {:>9}  {:>20}  {:>20}",
                "#", "interval", "count", "accumulated"
            )?;
            for (k, row) in step.rows.iter().enumerate() {
                writeln!(
                    f,
                    "  {:>5}  {:>9}  {:>20}  {:>20}",
                    k + 1,
                    row.interval.to_string(),
                    row.count,
                    row.accumulated
                )?;
            }
        }
        Ok(())
    }
}

/// Candidate cuts at a level: supersets of the cut above, or every interval
/// at the top level.
fn candidates(n: usize, above: Option<Interval>, stats: &mut OpStats) -> Vec<Interval> {
    let out = match above {
        Some(cut) => supersets(n, cut).expect("cut lies on the chain"),
        None => all_intervals(n),
    };
    stats.candidates += out.len() as u64;
    out
}

fn extension_count(cut: &Interval, level: usize, n: usize, stats: &mut OpStats) -> BigUint {
    stats.count_evals += 1;
    sdfn_count_unchecked(cut.lo, cut.hi, level, n)
}

fn rank_impl(
    ord: &IntervalOrder,
    dfn: &Dfn,
    stats: &mut OpStats,
    mut trace: Option<&mut Vec<LevelStep>>,
) -> Result<BigUint> {
    let n = dfn.params().n();
    let cuts = dfn.to_alpha_cuts();
    let mut acc = BigUint::one();
    let mut above = None;
    for level in (1..=dfn.params().m()).rev() {
        let target = cuts.cut(level);
        let cands = candidates(n, above, stats);
        match trace.as_deref_mut() {
            None => {
                for c in &cands {
                    stats.comparisons += 1;
                    if ord.compare(c, &target) == Ordering::Less {
                        acc += extension_count(c, level, n, stats);
                    }
                }
            }
            Some(steps) => {
                let mut prefix: Vec<Interval> = cands
                    .into_iter()
                    .filter(|c| {
                        stats.comparisons += 1;
                        ord.compare(c, &target) != Ordering::Greater
                    })
                    .collect();
                sort_checked(ord, &mut prefix, &mut stats.comparisons)?;
                let mut rows = Vec::with_capacity(prefix.len());
                let mut running = BigUint::zero();
                for c in &prefix {
                    let count = extension_count(c, level, n, stats);
                    running += &count;
                    rows.push(TraceRow {
                        interval: *c,
                        count,
                        accumulated: running.clone(),
                    });
                }
                let own = rows.last().expect("own cut is a candidate");
                acc += &running - &own.count;
                steps.push(LevelStep {
                    level,
                    candidate_count: rows.len(),
                    chosen_index: rows.len(),
                    chosen: target,
                    rows,
                    counter: acc.clone(),
                });
            }
        }
        above = Some(target);
    }
    Ok(acc - 1u32)
}

fn unrank_impl(
    ord: &IntervalOrder,
    params: &ChainParams,
    index: &BigUint,
    stats: &mut OpStats,
    mut trace: Option<&mut Vec<LevelStep>>,
) -> Result<Dfn> {
    let total = total_dfns(params.n(), params.m());
    if *index >= total {
        return Err(Error::IndexOutOfRange {
            index: index.clone(),
            max: total - 1u32,
        });
    }
    let n = params.n();
    let m = params.m();
    let mut residual = index + 1u32;
    let mut cuts = vec![params.full_interval(); m];
    let mut above = None;
    for level in (1..=m).rev() {
        let mut cands = candidates(n, above, stats);
        sort_checked(ord, &mut cands, &mut stats.comparisons)?;
        let mut running = BigUint::zero();
        let mut rows = Vec::new();
        let mut chosen = None;
        for (k, c) in cands.iter().enumerate() {
            let count = extension_count(c, level, n, stats);
            let through = &running + &count;
            let hit = through >= residual;
            if trace.is_some() {
                rows.push(TraceRow {
                    interval: *c,
                    count: count.clone(),
                    accumulated: through.clone(),
                });
            }
            if hit {
                debug_assert!(residual > running && residual <= &running + &count);
                residual -= &running;
                chosen = Some((k, *c));
                break;
            }
            running = through;
        }
        // The candidate counts at each level sum to the number of chains
        // below the cut above, which bounds the residual.
        let (k, cut) = chosen.expect("residual within the candidate total");
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(LevelStep {
                level,
                candidate_count: cands.len(),
                chosen_index: k + 1,
                chosen: cut,
                rows,
                counter: residual.clone(),
            });
        }
        cuts[level - 1] = cut;
        above = Some(cut);
    }
    debug_assert!(residual.is_one());
    Ok(AlphaCutChain::from_trusted(params.clone(), cuts).to_dfn())
}

/// 0-based position of `dfn` under the top-down order induced by `ord`.
pub fn pos(ord: &IntervalOrder, dfn: &Dfn) -> Result<PositionIndex> {
    pos_with_stats(ord, dfn, &mut OpStats::default())
}

pub fn pos_with_stats(
    ord: &IntervalOrder,
    dfn: &Dfn,
    stats: &mut OpStats,
) -> Result<PositionIndex> {
    rank_impl(ord, dfn, stats, None).map(PositionIndex)
}

/// The dfn at 0-based position `index`.
pub fn pos_inv(ord: &IntervalOrder, params: &ChainParams, index: &BigUint) -> Result<Dfn> {
    pos_inv_with_stats(ord, params, index, &mut OpStats::default())
}

pub fn pos_inv_with_stats(
    ord: &IntervalOrder,
    params: &ChainParams,
    index: &BigUint,
    stats: &mut OpStats,
) -> Result<Dfn> {
    unrank_impl(ord, params, index, stats, None)
}

/// [`pos`] with the per-level tables.
pub fn pos_trace(ord: &IntervalOrder, dfn: &Dfn) -> Result<Trace> {
    let mut steps = Vec::with_capacity(dfn.params().m());
    let index = rank_impl(ord, dfn, &mut OpStats::default(), Some(&mut steps))?;
    Ok(Trace {
        kind: TraceKind::Rank,
        order: ord.name().to_string(),
        n: dfn.params().n(),
        m: dfn.params().m(),
        index,
        dfn: dfn.clone(),
        steps,
    })
}

/// [`pos_inv`] with the per-level tables.
pub fn pos_inv_trace(ord: &IntervalOrder, params: &ChainParams, index: &BigUint) -> Result<Trace> {
    let mut steps = Vec::with_capacity(params.m());
    let dfn = unrank_impl(
        ord,
        params,
        index,
        &mut OpStats::default(),
        Some(&mut steps),
    )?;
    Ok(Trace {
        kind: TraceKind::Unrank,
        order: ord.name().to_string(),
        n: params.n(),
        m: params.m(),
        index: index.clone(),
        dfn,
        steps,
    })
}

/// Work budget `c·(n+1)²·m·log₂(n+2)` for one call, with `c` measured on
/// the built-in orders.
pub fn op_budget(n: usize, m: usize) -> u64 {
    const C: f64 = 4.0;
    let n1 = (n + 1) as f64;
    (C * n1 * n1 * m as f64 * ((n + 2) as f64).log2()).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, m: usize) -> ChainParams {
        ChainParams::new(n, m).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn accumulated(step: &LevelStep) -> Vec<u64> {
        step.rows
            .iter()
            .map(|r| r.accumulated.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn example_one_unrank() {
        let a = pos_inv(&IntervalOrder::TInc, &p(5, 6), &big(49)).unwrap();
        assert_eq!(a.levels(), &[6, 6, 6, 3, 2, 2]);
        assert_eq!(
            a.membership_string(),
            "{1/0, 1/1, 1/2, 0.4/3, 0.2/4, 0.2/5}"
        );

        let t = pos_inv_trace(&IntervalOrder::TInc, &p(5, 6), &big(49)).unwrap();
        assert_eq!(t.steps[0].level, 6);
        assert_eq!(accumulated(&t.steps[0]), vec![1, 6, 21, 56]);
        assert_eq!(t.steps[0].counter, big(29));
        assert_eq!(t.steps[0].chosen_index, 4);
        assert_eq!(t.steps[0].candidate_count, 21);
        assert_eq!(accumulated(&t.steps[1]), vec![1, 5, 15, 35]);
        assert_eq!(t.steps[1].counter, big(14));
        let chosen: Vec<String> = t.steps.iter().map(|s| s.chosen.to_string()).collect();
        assert_eq!(
            chosen,
            ["[0,2]", "[0,2]", "[0,2]", "[0,3]", "[0,5]", "[0,5]"]
        );
    }

    #[test]
    fn example_two_rank() {
        let a = Dfn::new(p(5, 6), vec![6, 6, 6, 2, 1, 1]).unwrap();
        assert_eq!(
            pos(&IntervalOrder::TInc, &a).unwrap(),
            PositionIndex::from(54)
        );
        let t = pos_trace(&IntervalOrder::TInc, &a).unwrap();
        let counters: Vec<BigUint> = t.steps.iter().map(|s| s.counter.clone()).collect();
        assert_eq!(counters, [22u64, 37, 47, 53, 55, 55].map(big));
        assert_eq!(t.steps[0].candidate_count, 4);
        assert_eq!(accumulated(&t.steps[0]), vec![1, 6, 21, 56]);
        assert_eq!(t.index, big(54));

        let b = Dfn::new(p(5, 6), vec![6, 6, 6, 3, 2, 2]).unwrap();
        assert_eq!(
            pos(&IntervalOrder::TInc, &b).unwrap(),
            PositionIndex::from(49)
        );
        assert_eq!(
            pos_inv(&IntervalOrder::TInc, &p(5, 6), &big(54)).unwrap(),
            a
        );
    }

    #[test]
    fn constant_one_is_t_inc_minimum() {
        for (n, m) in [(0, 2), (3, 3), (5, 6), (10, 40)] {
            let one = Dfn::new(p(n, m), vec![m; n + 1]).unwrap();
            assert!(pos(&IntervalOrder::TInc, &one).unwrap().value().is_zero());
            assert_eq!(
                pos_inv(&IntervalOrder::TInc, &p(n, m), &big(0)).unwrap(),
                one
            );
            let t = pos_trace(&IntervalOrder::TInc, &one).unwrap();
            assert!(t
                .steps
                .iter()
                .all(|s| s.chosen_index == 1 && s.counter.is_one()));
            let u = pos_inv_trace(&IntervalOrder::TInc, &p(n, m), &big(0)).unwrap();
            assert!(u
                .steps
                .iter()
                .all(|s| s.chosen_index == 1 && s.counter.is_one()));
        }
    }

    #[test]
    fn out_of_range() {
        let err = pos_inv(&IntervalOrder::TInc, &p(5, 6), &big(3003)).unwrap_err();
        assert_eq!(err.to_string(), "index out of range [0,3002]: 3003");
        assert!(pos_inv(&IntervalOrder::TInc, &p(5, 6), &big(3002)).is_ok());
    }

    #[test]
    fn degenerate_instances() {
        // single-point chain: exactly one dfn
        let only = pos_inv(&IntervalOrder::Lex1, &p(0, 5), &big(0)).unwrap();
        assert_eq!(only.levels(), &[5]);
        assert!(pos_inv(&IntervalOrder::Lex1, &p(0, 5), &big(1)).is_err());
        // m = 2: dfns are crisp intervals ranked directly by the order
        let sorted = crate::order::sorted_intervals(&IntervalOrder::XuYager, 4).unwrap();
        for (i, iv) in sorted.iter().enumerate() {
            let d = pos_inv(&IntervalOrder::XuYager, &p(4, 2), &big(i as u64)).unwrap();
            assert_eq!(d.core(), *iv);
        }
    }

    #[test]
    fn level_one_is_whole_chain() {
        for ord in IntervalOrder::BUILTIN {
            for i in 0..70u64 {
                let t = pos_inv_trace(&ord, &p(4, 3), &big(i)).unwrap();
                let last = t.steps.last().unwrap();
                assert_eq!(last.level, 1);
                assert_eq!(last.chosen, Interval { lo: 0, hi: 4 });
                for s in &t.steps {
                    let chosen = &s.rows[s.chosen_index - 1];
                    assert!(s.counter >= BigUint::one() && s.counter <= chosen.count);
                }
            }
        }
    }

    #[test]
    fn work_stays_in_budget() {
        for ord in IntervalOrder::BUILTIN {
            for (n, m) in [(1, 2), (3, 3), (5, 6), (10, 100), (10, 500), (20, 50)] {
                let params = p(n, m);
                let total = total_dfns(n, m);
                for idx in [BigUint::zero(), &total / 3u32, &total - 1u32] {
                    let mut s = OpStats::default();
                    let d = pos_inv_with_stats(&ord, &params, &idx, &mut s).unwrap();
                    assert!(s.total() <= op_budget(n, m), "{ord} unrank {n} {m}: {s:?}");
                    let mut r = OpStats::default();
                    pos_with_stats(&ord, &d, &mut r).unwrap();
                    assert!(r.total() <= op_budget(n, m), "{ord} rank {n} {m}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn index_parsing() {
        assert_eq!(
            "42".parse::<PositionIndex>().unwrap(),
            PositionIndex::from(42)
        );
        assert!("-1".parse::<PositionIndex>().is_err());
        assert!("1e3".parse::<PositionIndex>().is_err());
        assert!("".parse::<PositionIndex>().is_err());
    }
}
