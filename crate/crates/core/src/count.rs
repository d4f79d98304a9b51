//! Exact combinatorial counts. Everything here is arbitrary precision; the
//! numbers outgrow `u64` already for moderate `m`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(a, b)` with the extension `C(-1, -1) = 1` and `C(a, -1) = 0` for
/// `a >= 0`, so that level-1 extension counts select only the whole chain.
/// Zero whenever `b > a` or `b < -1`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b == -1 {
        return if a == -1 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    choose(a as u64, b as u64)
}

/// Multiplicative running product over `min(b, a - b)` factors; each
/// intermediate is itself a binomial, so the divisions are exact.
fn choose(a: u64, b: u64) -> BigUint {
    let k = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Number of dfns on `0..=n` with `m` levels: `C(n + 2m - 2, 2m - 2)`.
pub fn total_dfns(n: usize, m: usize) -> BigUint {
    assert!(m >= 2, "m must be at least 2");
    let top = (2 * m - 2) as u64;
    choose(n as u64 + top, top)
}

/// Number of intervals of `0..=n`: `(n+1)(n+2)/2`.
pub fn interval_count(n: usize) -> BigUint {
    let n = n as u64;
    BigUint::from(n + 1) * BigUint::from(n + 2) / 2u32
}

/// Number of ways to complete the cuts below level `j` once the level-`j`
/// cut is fixed to `[a, b]`: `C(a+j-2, j-2) * C(n-b+j-2, j-2)`.
///
/// At `j = 1` this is 1 for `[0, n]` and 0 otherwise.
pub fn sdfn_count(a: usize, b: usize, j: usize, n: usize) -> Result<BigUint> {
    if a > b || b > n {
        return Err(Error::InvalidInterval { lo: a, hi: b, n });
    }
    if j == 0 {
        return Err(Error::InvalidParams("level index starts at 1".into()));
    }
    Ok(sdfn_count_unchecked(a, b, j, n))
}

pub(crate) fn sdfn_count_unchecked(a: usize, b: usize, j: usize, n: usize) -> BigUint {
    let j = j as i64;
    let (a, b, n) = (a as i64, b as i64, n as i64);
    let left = binomial(a + j - 2, j - 2);
    if left.is_zero() {
        return left;
    }
    left * binomial(n - b + j - 2, j - 2)
}
