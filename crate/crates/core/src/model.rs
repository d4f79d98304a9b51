//! Chains, intervals and discrete fuzzy numbers.
//!
//! A dfn over the chain `0..=n` with membership scale `y_1 = 0 < ... < y_m = 1`
//! is stored as one level index `1..=m` per chain point. The equivalent
//! working representation is its full alpha-cut chain: one interval per
//! level, nested downward, with the level-1 cut fixed to the whole chain.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The problem instance: the chain `0..=n` and `m` membership levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams {
    n: usize,
    m: usize,
    values: Option<Arc<[f64]>>,
}

impl ChainParams {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!(
                "m must be at least 2, got {m}"
            )));
        }
        Ok(ChainParams { n, m, values: None })
    }

    /// Attaches an explicit numeric scale. Only used for display and
    /// serialization; ordering and ranking look at level indices alone.
    pub fn with_values(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.m {
            return Err(Error::InvalidParams(format!(
                "scale has {} values, expected {}",
                values.len(),
                self.m
            )));
        }
        if values[0] != 0.0 || values[self.m - 1] != 1.0 {
            return Err(Error::InvalidParams(
                "scale must start at 0 and end at 1".into(),
            ));
        }
        if values
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidParams(
                "scale must be strictly increasing".into(),
            ));
        }
        self.values = Some(values.into());
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    /// Numeric membership value of level `j` (1-based). Falls back to the
    /// uniform scale `(j-1)/(m-1)`.
    pub fn value_of(&self, level: usize) -> f64 {
        match &self.values {
            Some(v) => v[level - 1],
            None => (level - 1) as f64 / (self.m - 1) as f64,
        }
    }

    /// The whole chain `[0,n]`.
    pub fn full_interval(&self) -> Interval {
        Interval { lo: 0, hi: self.n }
    }

    /// Same `(n, m)`; the display scale is ignored.
    pub fn same_shape(&self, other: &ChainParams) -> bool {
        self.n == other.n && self.m == other.m
    }

    pub(crate) fn check_same(&self, other: &ChainParams) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ChainMismatch {
                left_n: self.n,
                left_m: self.m,
                right_n: other.n,
                right_m: other.m,
            })
        }
    }
}

/// A closed interval `[lo, hi]` of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi, n: hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Checked against a chain `0..=n`.
    pub fn on_chain(lo: usize, hi: usize, n: usize) -> Result<Self> {
        if lo > hi || hi > n {
            return Err(Error::InvalidInterval { lo, hi, n });
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_point(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> usize {
        self.hi - self.lo
    }

    /// The componentwise partial order: `lo <= other.lo` and `hi <= other.hi`.
    pub fn le2(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a,b], got {s:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected [a,b], got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        Interval::new(parse(a)?, parse(b)?)
    }
}

/// A validated discrete fuzzy number: `levels[x]` is the index `j` with
/// `A(x) = y_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dfn {
    params: ChainParams,
    levels: Vec<usize>,
}

impl Dfn {
    /// Validates normality and unimodality of a level array.
    pub fn new(params: ChainParams, levels: Vec<usize>) -> Result<Self> {
        let (n, m) = (params.n, params.m);
        if levels.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                found: levels.len(),
            });
        }
        if let Some((point, &level)) = levels.iter().enumerate().find(|(_, &l)| l < 1 || l > m) {
            return Err(Error::LevelOutOfRange { point, level, m });
        }
        let first_top = levels
            .iter()
            .position(|&l| l == m)
            .ok_or(Error::NotNormal { m })?;
        let last_top = levels.iter().rposition(|&l| l == m).unwrap();
        for x in 1..=first_top {
            if levels[x] < levels[x - 1] {
                return Err(Error::NotUnimodal { point: x });
            }
        }
        if let Some(x) = (first_top..=last_top).find(|&x| levels[x] != m) {
            return Err(Error::NotUnimodal { point: x });
        }
        for x in last_top + 1..=n {
            if levels[x] > levels[x - 1] {
                return Err(Error::NotUnimodal { point: x });
            }
        }
        Ok(Dfn { params, levels })
    }

    pub(crate) fn from_trusted(params: ChainParams, levels: Vec<usize>) -> Self {
        debug_assert!(Dfn::new(params.clone(), levels.clone()).is_ok());
        Dfn { params, levels }
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn level_at(&self, x: usize) -> usize {
        self.levels[x]
    }

    /// Membership value `A(x)` on the attached (or uniform) scale.
    pub fn membership(&self, x: usize) -> f64 {
        self.params.value_of(self.levels[x])
    }

    /// The core `[s, t]`: points at level `m`.
    pub fn core(&self) -> Interval {
        let m = self.params.m;
        let lo = self.levels.iter().position(|&l| l == m).unwrap();
        let hi = self.levels.iter().rposition(|&l| l == m).unwrap();
        Interval { lo, hi }
    }

    /// Points with positive membership, i.e. level at least 2.
    pub fn support(&self) -> Interval {
        let lo = self.levels.iter().position(|&l| l >= 2).unwrap();
        let hi = self.levels.iter().rposition(|&l| l >= 2).unwrap();
        Interval { lo, hi }
    }

    /// Levels actually attained on the support, ascending. Always contains `m`.
    pub fn relevant_levels(&self) -> Vec<usize> {
        let mut seen = vec![false; self.params.m + 1];
        for &l in self.levels.iter().filter(|&&l| l >= 2) {
            seen[l] = true;
        }
        (2..=self.params.m).filter(|&j| seen[j]).collect()
    }

    /// The full cut chain. Cut `j` spans the points at level `>= j`;
    /// cut 1 is the whole chain.
    pub fn to_alpha_cuts(&self) -> AlphaCutChain {
        let m = self.params.m;
        let n = self.params.n;
        let mut cuts = vec![Interval { lo: 0, hi: n }; m];
        let core = self.core();
        let (mut lo, mut hi) = (core.lo, core.hi);
        for j in (2..=m).rev() {
            while lo > 0 && self.levels[lo - 1] >= j {
                lo -= 1;
            }
            while hi < n && self.levels[hi + 1] >= j {
                hi += 1;
            }
            cuts[j - 1] = Interval { lo, hi };
        }
        AlphaCutChain {
            params: self.params.clone(),
            cuts,
        }
    }

    /// Membership form `{1/0, 1/1, 0.2/2, ...}` on the attached scale.
    pub fn membership_string(&self) -> String {
        let parts: Vec<String> = (0..=self.params.n)
            .map(|x| format!("{}/{}", self.membership(x), x))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn to_record(&self) -> DfnRecord {
        DfnRecord {
            n: self.params.n,
            m: self.params.m,
            levels: self.levels.clone(),
            values: self.params.values().map(<[f64]>::to_vec),
        }
    }

    pub fn from_record(record: DfnRecord) -> Result<Self> {
        let mut params = ChainParams::new(record.n, record.m)?;
        if let Some(values) = record.values {
            params = params.with_values(values)?;
        }
        Dfn::new(params, record.levels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("dfn record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let record: DfnRecord = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Dfn::from_record(record)
    }

    /// Parses the comma-separated level form, e.g. `6,6,6,2,1,1`.
    pub fn parse(params: ChainParams, text: &str) -> Result<Self> {
        Dfn::new(params, parse_levels(text)?)
    }
}

/// Canonical textual form: comma-separated level indices.
impl fmt::Display for Dfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.levels {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

pub fn parse_levels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("level {t:?}: {e}")))
        })
        .collect()
}

/// JSON shape of a dfn: `{"n":5,"m":6,"levels":[6,6,6,2,1,1]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DfnRecord {
    pub n: usize,
    pub m: usize,
    pub levels: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

/// The nested cuts `cut(m) ⊆ ... ⊆ cut(1) = [0,n]`, one per level.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCutChain {
    params: ChainParams,
    cuts: Vec<Interval>,
}

impl AlphaCutChain {
    /// `cuts[0]` is the level-1 cut, `cuts[m-1]` the core.
    pub fn new(params: ChainParams, cuts: Vec<Interval>) -> Result<Self> {
        if cuts.len() != params.m {
            return Err(Error::LengthMismatch {
                expected: params.m,
                found: cuts.len(),
            });
        }
        for c in &cuts {
            if c.lo > c.hi || c.hi > params.n {
                return Err(Error::InvalidInterval {
                    lo: c.lo,
                    hi: c.hi,
                    n: params.n,
                });
            }
        }
        if cuts[0] != params.full_interval() {
            return Err(Error::BaseCutNotFull {
                n: params.n,
                found: cuts[0],
            });
        }
        for j in 1..cuts.len() {
            if !cuts[j - 1].contains(&cuts[j]) {
                return Err(Error::NotNested {
                    level: j + 1,
                    below: j,
                });
            }
        }
        Ok(AlphaCutChain { params, cuts })
    }

    pub(crate) fn from_trusted(params: ChainParams, cuts: Vec<Interval>) -> Self {
        debug_assert!(AlphaCutChain::new(params.clone(), cuts.clone()).is_ok());
        AlphaCutChain { params, cuts }
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    /// Cut at level `j`, 1-based.
    pub fn cut(&self, level: usize) -> Interval {
        self.cuts[level - 1]
    }

    pub fn cuts(&self) -> &[Interval] {
        &self.cuts
    }

    /// Rebuilds the membership array: the core gets level `m`, then each
    /// lower cut contributes only the points it adds on either side.
    pub fn to_dfn(&self) -> Dfn {
        let m = self.params.m;
        let mut levels = vec![1; self.params.n + 1];
        let core = self.cut(m);
        levels[core.lo..=core.hi].fill(m);
        for j in (2..m).rev() {
            let (outer, inner) = (self.cut(j), self.cut(j + 1));
            levels[outer.lo..inner.lo].fill(j);
            levels[inner.hi + 1..=outer.hi].fill(j);
        }
        Dfn::from_trusted(self.params.clone(), levels)
    }
}

/// Validates a cut chain and reconstructs its dfn.
pub fn from_alpha_cuts(params: ChainParams, cuts: Vec<Interval>) -> Result<Dfn> {
    Ok(AlphaCutChain::new(params, cuts)?.to_dfn())
}
