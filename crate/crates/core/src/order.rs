//! Total orders on the intervals of a finite chain, and the induced
//! top-down order on dfns.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{ChainParams, Dfn, Interval};

pub type Comparator = dyn Fn(&Interval, &Interval) -> Ordering + Send + Sync;

/// A total order on intervals. Custom comparators must be total on the
/// chain they are used with; [`verify_order`] checks that exhaustively.
#[derive(Clone)]
pub enum IntervalOrder {
    /// `a < c`, or `a = c` and `b <= d`.
    Lex1,
    /// `b < d`, or `b = d` and `a <= c`.
    Lex2,
    /// By midpoint sum `a + b`, then by width.
    XuYager,
    /// `a < c`, or `a = c` and `d <= b`: wider intervals first.
    TInc,
    Custom {
        name: String,
        cmp: Arc<Comparator>,
    },
}

impl IntervalOrder {
    pub const BUILTIN: [IntervalOrder; 4] = [
        IntervalOrder::TInc,
        IntervalOrder::Lex1,
        IntervalOrder::Lex2,
        IntervalOrder::XuYager,
    ];

    pub fn custom<F>(name: impl Into<String>, cmp: F) -> Self
    where
        F: Fn(&Interval, &Interval) -> Ordering + Send + Sync + 'static,
    {
        IntervalOrder::Custom {
            name: name.into(),
            cmp: Arc::new(cmp),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            IntervalOrder::Lex1 => "lex1",
            IntervalOrder::Lex2 => "lex2",
            IntervalOrder::XuYager => "xu-yager",
            IntervalOrder::TInc => "t-inc",
            IntervalOrder::Custom { name, .. } => name,
        }
    }

    pub fn compare(&self, x: &Interval, y: &Interval) -> Ordering {
        match self {
            IntervalOrder::Lex1 => x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)),
            IntervalOrder::Lex2 => x.hi.cmp(&y.hi).then(x.lo.cmp(&y.lo)),
            IntervalOrder::XuYager => (x.lo + x.hi)
                .cmp(&(y.lo + y.hi))
                .then(x.width().cmp(&y.width())),
            IntervalOrder::TInc => x.lo.cmp(&y.lo).then(y.hi.cmp(&x.hi)),
            IntervalOrder::Custom { cmp, .. } => cmp(x, y),
        }
    }

    fn is_custom(&self) -> bool {
        matches!(self, IntervalOrder::Custom { .. })
    }
}

impl fmt::Debug for IntervalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalOrder({})", self.name())
    }
}

impl fmt::Display for IntervalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntervalOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex1" => Ok(IntervalOrder::Lex1),
            "lex2" => Ok(IntervalOrder::Lex2),
            "xu-yager" => Ok(IntervalOrder::XuYager),
            "t-inc" => Ok(IntervalOrder::TInc),
            other => Err(Error::Parse(format!(
                "unknown order {other:?}; expected lex1, lex2, xu-yager or t-inc"
            ))),
        }
    }
}

pub fn compare_intervals(ord: &IntervalOrder, x: &Interval, y: &Interval) -> Ordering {
    ord.compare(x, y)
}

/// All `(n+1)(n+2)/2` intervals of the chain `0..=n`.
pub fn all_intervals(n: usize) -> Vec<Interval> {
    (0..=n)
        .flat_map(|lo| (lo..=n).map(move |hi| Interval { lo, hi }))
        .collect()
}

/// Sorts in place and checks the result is strictly ascending. Built-in
/// orders always pass; a custom comparator that is not total fails here.
pub(crate) fn sort_checked(
    ord: &IntervalOrder,
    intervals: &mut [Interval],
    comparisons: &mut u64,
) -> Result<()> {
    intervals.sort_by(|a, b| {
        *comparisons += 1;
        ord.compare(a, b)
    });
    if ord.is_custom() {
        for w in intervals.windows(2) {
            if ord.compare(&w[0], &w[1]) != Ordering::Less {
                return Err(Error::InconsistentOrder(format!(
                    "{} does not strictly precede {} after sorting under {}",
                    w[0],
                    w[1],
                    ord.name()
                )));
            }
        }
    }
    Ok(())
}

/// Every interval of `0..=n`, ascending under `ord`.
pub fn sorted_intervals(ord: &IntervalOrder, n: usize) -> Result<Vec<Interval>> {
    let mut all = all_intervals(n);
    sort_checked(ord, &mut all, &mut 0)?;
    Ok(all)
}

/// Supersets `[a,b]` of `inner` (`a <= inner.lo`, `b >= inner.hi`), ascending
/// under `ord`. There are `(inner.lo + 1)(n - inner.hi + 1)` of them.
pub fn containing_intervals(
    ord: &IntervalOrder,
    n: usize,
    inner: Interval,
) -> Result<Vec<Interval>> {
    let mut out = supersets(n, inner)?;
    sort_checked(ord, &mut out, &mut 0)?;
    Ok(out)
}

pub(crate) fn supersets(n: usize, inner: Interval) -> Result<Vec<Interval>> {
    if inner.lo > inner.hi || inner.hi > n {
        return Err(Error::InvalidInterval {
            lo: inner.lo,
            hi: inner.hi,
            n,
        });
    }
    let mut out = Vec::with_capacity((inner.lo + 1) * (n - inner.hi + 1));
    for lo in 0..=inner.lo {
        for hi in inner.hi..=n {
            out.push(Interval { lo, hi });
        }
    }
    Ok(out)
}

/// Outcome of [`is_admissible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    /// A pair `(I, J)` with `I <=2 J` that the order puts the other way round.
    pub witness: Option<(Interval, Interval)>,
}

/// Whether `ord` refines the componentwise order on the intervals of `0..=n`.
/// Exhaustive over all pairs.
pub fn is_admissible(ord: &IntervalOrder, n: usize) -> Admissibility {
    let all = all_intervals(n);
    for i in &all {
        for j in &all {
            if i.le2(j) && ord.compare(i, j) == Ordering::Greater {
                return Admissibility {
                    admissible: false,
                    witness: Some((*i, *j)),
                };
            }
        }
    }
    Admissibility {
        admissible: true,
        witness: None,
    }
}

/// Exhaustive check of the total-order axioms over the intervals of `0..=n`:
/// `Equal` only on identical intervals, antisymmetry and transitivity.
pub fn verify_order(ord: &IntervalOrder, n: usize) -> Result<()> {
    let all = all_intervals(n);
    for x in &all {
        for y in &all {
            let xy = ord.compare(x, y);
            if (xy == Ordering::Equal) != (x == y) {
                return Err(Error::InconsistentOrder(format!(
                    "{x} and {y} compare {xy:?}"
                )));
            }
            if ord.compare(y, x) != xy.reverse() {
                return Err(Error::InconsistentOrder(format!(
                    "{x} vs {y} is not antisymmetric"
                )));
            }
        }
    }
    for x in &all {
        for y in &all {
            if ord.compare(x, y) != Ordering::Less {
                continue;
            }
            for z in &all {
                if ord.compare(y, z) == Ordering::Less && ord.compare(x, z) != Ordering::Less {
                    return Err(Error::InconsistentOrder(format!(
                        "{x} < {y} < {z} but not {x} < {z}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The top-down order on dfns: compare the cut chains from level `m`
/// downward and decide at the highest level where they differ.
pub fn compare_dfn(ord: &IntervalOrder, a: &Dfn, b: &Dfn) -> Result<Ordering> {
    a.params().check_same(b.params())?;
    Ok(compare_dfn_unchecked(ord, a, b))
}

pub(crate) fn compare_dfn_unchecked(ord: &IntervalOrder, a: &Dfn, b: &Dfn) -> Ordering {
    let (ca, cb) = (a.to_alpha_cuts(), b.to_alpha_cuts());
    ca.cuts()
        .iter()
        .zip(cb.cuts())
        .rev()
        .find(|(x, y)| x != y)
        .map_or(Ordering::Equal, |(x, y)| ord.compare(x, y))
}

/// Convenience for callers holding raw parameters.
pub fn compare_levels(
    ord: &IntervalOrder,
    params: &ChainParams,
    a: &[usize],
    b: &[usize],
) -> Result<Ordering> {
    let a = Dfn::new(params.clone(), a.to_vec())?;
    let b = Dfn::new(params.clone(), b.to_vec())?;
    compare_dfn(ord, &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval { lo, hi }
    }

    #[test]
    fn named_comparisons() {
        assert_eq!(IntervalOrder::TInc.compare(&iv(0, 5), &iv(0, 4)), Less);
        assert_eq!(IntervalOrder::Lex1.compare(&iv(0, 2), &iv(0, 5)), Less);
        assert_eq!(IntervalOrder::XuYager.compare(&iv(1, 2), &iv(0, 3)), Less);
        assert_eq!(IntervalOrder::Lex2.compare(&iv(3, 4), &iv(0, 5)), Less);
        assert_eq!(IntervalOrder::Lex2.compare(&iv(1, 5), &iv(0, 5)), Greater);
        for ord in IntervalOrder::BUILTIN {
            assert_eq!(ord.compare(&iv(1, 3), &iv(1, 3)), Equal);
        }
    }

    #[test]
    fn t_inc_listing_for_n5() {
        let got = sorted_intervals(&IntervalOrder::TInc, 5).unwrap();
        let expected: Vec<Interval> =
            "[0,5] [0,4] [0,3] [0,2] [0,1] [0,0] [1,5] [1,4] [1,3] [1,2] [1,1] \
             [2,5] [2,4] [2,3] [2,2] [3,5] [3,4] [3,3] [4,5] [4,4] [5,5]"
                .split(' ')
                .map(|s| s.parse().unwrap())
                .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn small_listings() {
        for ord in IntervalOrder::BUILTIN {
            assert_eq!(sorted_intervals(&ord, 0).unwrap(), vec![iv(0, 0)]);
        }
        assert_eq!(
            sorted_intervals(&IntervalOrder::Lex1, 2).unwrap(),
            vec![iv(0, 0), iv(0, 1), iv(0, 2), iv(1, 1), iv(1, 2), iv(2, 2)]
        );
    }

    #[test]
    fn containing_examples() {
        assert_eq!(
            containing_intervals(&IntervalOrder::TInc, 5, iv(0, 2)).unwrap(),
            vec![iv(0, 5), iv(0, 4), iv(0, 3), iv(0, 2)]
        );
        assert_eq!(
            containing_intervals(&IntervalOrder::TInc, 5, iv(0, 3)).unwrap(),
            vec![iv(0, 5), iv(0, 4), iv(0, 3)]
        );
        for ord in IntervalOrder::BUILTIN {
            assert_eq!(
                containing_intervals(&ord, 4, iv(0, 4)).unwrap(),
                vec![iv(0, 4)]
            );
        }
        assert!(containing_intervals(&IntervalOrder::TInc, 3, iv(1, 4)).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&IntervalOrder::Lex1, 5).admissible);
        assert!(is_admissible(&IntervalOrder::Lex2, 5).admissible);
        assert!(is_admissible(&IntervalOrder::XuYager, 5).admissible);
        let t = is_admissible(&IntervalOrder::TInc, 5);
        assert!(!t.admissible);
        let (i, j) = t.witness.unwrap();
        assert!(i.le2(&j));
        assert_eq!(IntervalOrder::TInc.compare(&i, &j), Greater);
        // the pair singled out by hand
        assert!(iv(0, 2).le2(&iv(0, 5)));
        assert_eq!(IntervalOrder::TInc.compare(&iv(0, 2), &iv(0, 5)), Greater);
        // a single-point chain has nothing to violate
        assert!(is_admissible(&IntervalOrder::TInc, 0).admissible);
    }

    #[test]
    fn builtin_orders_are_total() {
        for n in 0..=6 {
            for ord in IntervalOrder::BUILTIN {
                verify_order(&ord, n).unwrap();
            }
        }
    }

    #[test]
    fn t_inc_puts_supersets_first() {
        let all = all_intervals(6);
        for i in &all {
            for j in &all {
                if i.contains(j) {
                    assert_ne!(IntervalOrder::TInc.compare(i, j), Greater, "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn broken_custom_order_is_caught() {
        // width only: not antisymmetric on distinct intervals of equal width
        let bad = IntervalOrder::custom("width", |a: &Interval, b: &Interval| {
            a.width().cmp(&b.width())
        });
        assert!(verify_order(&bad, 2).is_err());
        assert!(matches!(
            sorted_intervals(&bad, 2),
            Err(Error::InconsistentOrder(_))
        ));
        let reversed = IntervalOrder::custom("rev-lex1", |a: &Interval, b: &Interval| {
            IntervalOrder::Lex1.compare(b, a)
        });
        verify_order(&reversed, 4).unwrap();
        assert_eq!(
            sorted_intervals(&reversed, 1).unwrap(),
            vec![iv(1, 1), iv(0, 1), iv(0, 0)]
        );
    }

    #[test]
    fn order_names_round_trip() {
        for ord in IntervalOrder::BUILTIN {
            let back: IntervalOrder = ord.name().parse().unwrap();
            assert_eq!(back.name(), ord.name());
        }
        assert!("xu_yager".parse::<IntervalOrder>().is_err());
    }

    #[test]
    fn dfn_comparisons() {
        let p = ChainParams::new(5, 6).unwrap();
        let ex1 = Dfn::new(p.clone(), vec![6, 6, 6, 3, 2, 2]).unwrap();
        let ex2 = Dfn::new(p.clone(), vec![6, 6, 6, 2, 1, 1]).unwrap();
        assert_eq!(compare_dfn(&IntervalOrder::TInc, &ex1, &ex2).unwrap(), Less);
        assert_eq!(
            compare_dfn(&IntervalOrder::TInc, &ex2, &ex1).unwrap(),
            Greater
        );
        assert_eq!(
            compare_dfn(&IntervalOrder::TInc, &ex1, &ex1).unwrap(),
            Equal
        );

        // cut chains ([0,1],[0,1]) vs ([0,0],[0,1]) on n=1, m=2
        let q = ChainParams::new(1, 2).unwrap();
        assert_eq!(
            compare_levels(&IntervalOrder::TInc, &q, &[2, 2], &[2, 1]).unwrap(),
            Less
        );

        let other = Dfn::new(ChainParams::new(5, 5).unwrap(), vec![5, 5, 5, 2, 1, 1]).unwrap();
        assert!(matches!(
            compare_dfn(&IntervalOrder::TInc, &ex1, &other),
            Err(Error::ChainMismatch { .. })
        ));
    }
}
