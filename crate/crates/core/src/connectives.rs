//! Connectives on dfns obtained by conjugating functions on the index chain
//! `0..=k` (`k = N - 1`) with the ranking bijection:
//! `lift(f)(A, B) = pos⁻¹(f(pos A, pos B))`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::count::total_dfns;
use crate::error::{Error, Result};
use crate::model::{ChainParams, Dfn};
use crate::order::IntervalOrder;
use crate::rank::{pos, pos_inv};

type UnaryRule = dyn Fn(&BigInt, &BigInt) -> BigInt + Send + Sync;
type BinaryRule = dyn Fn(&BigInt, &BigInt, &BigInt) -> BigInt + Send + Sync;

#[derive(Clone)]
enum Rule {
    Unary(Arc<UnaryRule>),
    Binary(Arc<BinaryRule>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Implication,
    Aggregation,
    Negation,
    Other,
}

/// A function on the index chain `0..=k`, given as a rule over big
/// integers that also receives `k`. Outputs are range-checked on every call.
#[derive(Clone)]
pub struct IndexFunction {
    name: String,
    kind: FunctionKind,
    rule: Rule,
}

impl fmt::Debug for IndexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexFunction({}, arity {})", self.name, self.arity())
    }
}

impl IndexFunction {
    pub fn binary<F>(name: impl Into<String>, kind: FunctionKind, rule: F) -> Self
    where
        F: Fn(&BigInt, &BigInt, &BigInt) -> BigInt + Send + Sync + 'static,
    {
        IndexFunction {
            name: name.into(),
            kind,
            rule: Rule::Binary(Arc::new(rule)),
        }
    }

    pub fn unary<F>(name: impl Into<String>, kind: FunctionKind, rule: F) -> Self
    where
        F: Fn(&BigInt, &BigInt) -> BigInt + Send + Sync + 'static,
    {
        IndexFunction {
            name: name.into(),
            kind,
            rule: Rule::Unary(Arc::new(rule)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        match self.rule {
            Rule::Unary(_) => 1,
            Rule::Binary(_) => 2,
        }
    }

    fn checked(&self, value: BigInt, k: &BigUint) -> Result<BigUint> {
        match value.to_biguint() {
            Some(v) if v <= *k => Ok(v),
            _ => Err(Error::RangeViolation {
                name: self.name.clone(),
                value: value.to_string(),
                k: k.clone(),
            }),
        }
    }

    fn arity_error(&self, expected: usize) -> Error {
        Error::ArityMismatch {
            name: self.name.clone(),
            expected,
            found: self.arity(),
        }
    }

    pub fn apply2(&self, x: &BigUint, y: &BigUint, k: &BigUint) -> Result<BigUint> {
        let Rule::Binary(f) = &self.rule else {
            return Err(self.arity_error(2));
        };
        let (xi, yi, ki) = (to_int(x), to_int(y), to_int(k));
        self.checked(f(&xi, &yi, &ki), k)
    }

    pub fn apply1(&self, x: &BigUint, k: &BigUint) -> Result<BigUint> {
        let Rule::Unary(f) = &self.rule else {
            return Err(self.arity_error(1));
        };
        self.checked(f(&to_int(x), &to_int(k)), k)
    }
}

fn to_int(v: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

/// `min(k, k - x + y)`.
pub fn lukasiewicz() -> IndexFunction {
    IndexFunction::binary("lukasiewicz", FunctionKind::Implication, |x, y, k| {
        (k - x + y).min(k.clone())
    })
}

/// `k` if `x <= y`, else `y`.
pub fn goedel() -> IndexFunction {
    IndexFunction::binary("goedel", FunctionKind::Implication, |x, y, k| {
        if x <= y {
            k.clone()
        } else {
            y.clone()
        }
    })
}

/// `k` if `x <= y`, else `0`.
pub fn rescher() -> IndexFunction {
    IndexFunction::binary("rescher", FunctionKind::Implication, |x, y, k| {
        if x <= y {
            k.clone()
        } else {
            BigInt::zero()
        }
    })
}

pub fn minimum() -> IndexFunction {
    IndexFunction::binary("min", FunctionKind::Aggregation, |x, y, _| x.min(y).clone())
}

pub fn maximum() -> IndexFunction {
    IndexFunction::binary("max", FunctionKind::Aggregation, |x, y, _| x.max(y).clone())
}

/// `(x + y) / 2`, rounding halves up.
pub fn rounded_mean() -> IndexFunction {
    IndexFunction::binary("mean", FunctionKind::Aggregation, |x, y, _| {
        (x + y + BigInt::one()) / 2
    })
}

/// `k - x`.
pub fn strong_negation() -> IndexFunction {
    IndexFunction::unary("negation", FunctionKind::Negation, |x, k| k - x)
}

pub fn first_projection() -> IndexFunction {
    IndexFunction::binary("first", FunctionKind::Other, |x, _, _| x.clone())
}

pub fn second_projection() -> IndexFunction {
    IndexFunction::binary("second", FunctionKind::Other, |_, y, _| y.clone())
}

pub fn builtin_implications() -> Vec<IndexFunction> {
    vec![lukasiewicz(), goedel(), rescher()]
}

pub fn builtin_aggregations() -> Vec<IndexFunction> {
    vec![minimum(), maximum(), rounded_mean()]
}

/// Implications and aggregations together.
pub fn builtin_catalog() -> Vec<IndexFunction> {
    let mut all = builtin_implications();
    all.extend(builtin_aggregations());
    all
}

pub fn by_name(name: &str) -> Option<IndexFunction> {
    builtin_catalog()
        .into_iter()
        .chain([strong_negation()])
        .find(|f| f.name() == name)
}

/// `pos⁻¹(f(pos A, pos B))`.
pub fn lift_binary(
    ord: &IntervalOrder,
    params: &ChainParams,
    f: &IndexFunction,
    a: &Dfn,
    b: &Dfn,
) -> Result<Dfn> {
    params.check_same(a.params())?;
    params.check_same(b.params())?;
    let k = total_dfns(params.n(), params.m()) - 1u32;
    let x = pos(ord, a)?.into_inner();
    let y = pos(ord, b)?.into_inner();
    pos_inv(ord, params, &f.apply2(&x, &y, &k)?)
}

/// `pos⁻¹(f(pos A))`.
pub fn lift_unary(
    ord: &IntervalOrder,
    params: &ChainParams,
    f: &IndexFunction,
    a: &Dfn,
) -> Result<Dfn> {
    params.check_same(a.params())?;
    let k = total_dfns(params.n(), params.m()) - 1u32;
    let x = pos(ord, a)?.into_inner();
    pos_inv(ord, params, &f.apply1(&x, &k)?)
}

/// Which property a witness breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// Nonincreasing in the first argument.
    FirstAntitone,
    /// Nondecreasing in the first argument (aggregations).
    FirstMonotone,
    /// Nondecreasing in the second argument.
    SecondMonotone,
    /// `f(0,0) = k`.
    ZeroZero,
    /// `f(k,k) = k`.
    TopTop,
    /// `f(k,0) = 0`.
    TopZero,
    /// `f(0,0) = 0` (aggregations).
    ZeroZeroIsZero,
    /// The rule left `0..=k`.
    Range,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witness: Option<(Axiom, u64, u64)>,
}

impl AxiomCheck {
    fn ok() -> Self {
        AxiomCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, x: u64, y: u64) -> Self {
        AxiomCheck {
            holds: false,
            witness: Some((axiom, x, y)),
        }
    }
}

/// Default budget for exhaustive checks, in argument pairs.
pub const DEFAULT_PAIR_CAP: u64 = 1_000_000;

fn table(
    f: &IndexFunction,
    k: u64,
    cap: u64,
) -> Result<std::result::Result<Vec<Vec<u64>>, AxiomCheck>> {
    if f.arity() != 2 {
        return Err(f.arity_error(2));
    }
    let pairs = (BigUint::from(k) + 1u32).pow(2);
    if pairs > BigUint::from(cap) {
        return Err(Error::CapExceeded { pairs, cap });
    }
    let kb = BigUint::from(k);
    let mut rows = Vec::with_capacity(k as usize + 1);
    for x in 0..=k {
        let mut row = Vec::with_capacity(k as usize + 1);
        for y in 0..=k {
            match f.apply2(&BigUint::from(x), &BigUint::from(y), &kb) {
                Ok(v) => row.push(v.to_u64().expect("bounded by k")),
                Err(Error::RangeViolation { .. }) => {
                    return Ok(Err(AxiomCheck::fail(Axiom::Range, x, y)))
                }
                Err(e) => return Err(e),
            }
        }
        rows.push(row);
    }
    Ok(Ok(rows))
}

/// Exhaustive check of the implication axioms on `0..=k`: boundary values
/// `f(0,0) = f(k,k) = k`, `f(k,0) = 0`, nonincreasing in `x`,
/// nondecreasing in `y`. Adjacent comparisons suffice on a chain.
pub fn check_implication_axioms(f: &IndexFunction, k: u64, cap: u64) -> Result<AxiomCheck> {
    let t = match table(f, k, cap)? {
        Ok(t) => t,
        Err(fail) => return Ok(fail),
    };
    let k_ = k as usize;
    if t[k_][0] != 0 {
        return Ok(AxiomCheck::fail(Axiom::TopZero, k, 0));
    }
    if t[0][0] != k {
        return Ok(AxiomCheck::fail(Axiom::ZeroZero, 0, 0));
    }
    if t[k_][k_] != k {
        return Ok(AxiomCheck::fail(Axiom::TopTop, k, k));
    }
    for x in 0..=k_ {
        for y in 0..=k_ {
            if x < k_ && t[x][y] < t[x + 1][y] {
                return Ok(AxiomCheck::fail(Axiom::FirstAntitone, x as u64, y as u64));
            }
            if y < k_ && t[x][y] > t[x][y + 1] {
                return Ok(AxiomCheck::fail(Axiom::SecondMonotone, x as u64, y as u64));
            }
        }
    }
    Ok(AxiomCheck::ok())
}

/// Exhaustive check of the aggregation axioms on `0..=k`: `f(0,0) = 0`,
/// `f(k,k) = k`, nondecreasing in both arguments.
pub fn check_aggregation_axioms(f: &IndexFunction, k: u64, cap: u64) -> Result<AxiomCheck> {
    let t = match table(f, k, cap)? {
        Ok(t) => t,
        Err(fail) => return Ok(fail),
    };
    let k_ = k as usize;
    if t[0][0] != 0 {
        return Ok(AxiomCheck::fail(Axiom::ZeroZeroIsZero, 0, 0));
    }
    if t[k_][k_] != k {
        return Ok(AxiomCheck::fail(Axiom::TopTop, k, k));
    }
    for x in 0..=k_ {
        for y in 0..=k_ {
            if x < k_ && t[x][y] > t[x + 1][y] {
                return Ok(AxiomCheck::fail(Axiom::FirstMonotone, x as u64, y as u64));
            }
            if y < k_ && t[x][y] > t[x][y + 1] {
                return Ok(AxiomCheck::fail(Axiom::SecondMonotone, x as u64, y as u64));
            }
        }
    }
    Ok(AxiomCheck::ok())
}
