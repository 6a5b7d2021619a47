//! Forward direction: from a weight multiset to the characteristic polynomial
//! of the associated tensor-product Coxeter transformation.
//!
//! Two independent routes are exposed and cross-checked in tests:
//!
//! - [`chi_factored`] (and [`chi_poly`]): the subset product formula, where
//!   every subset J of the weights contributes `(X^{n_J} - 1)` with exponent
//!   `(-1)^{s-|J|} * prod_{i in J} n_i / n_J`;
//! - [`chi_cyclo`]: the cyclotomic multiplicity table obtained by bucketing
//!   subsets by `n_J` into the integers `k_c` and summing them along the
//!   divisor lattice of `n_I`.
//!
//! Both enumerate all `2^s` subsets, so `s` is capped (default
//! [`DEFAULT_SUBSET_LIMIT`]).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::numtheory::{checked_lcm, divisors, gcd};
use crate::poly::{CycloExponents, FactoredRational, IntPoly, PolyError};

/// Default bound on the multiset cardinality `s`, guarding the `2^s` subset
/// enumeration.
pub const DEFAULT_SUBSET_LIMIT: usize = 20;

/// Validation errors for weight multisets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    /// The multiset must be nonempty.
    #[error("weight multiset must contain at least one entry")]
    Empty,
    /// Every weight must be at least 2.
    #[error("weight {0} is smaller than 2")]
    TooSmall(u64),
    /// lcm of the weights does not fit in u64; the divisor lattice of n_I must
    /// stay enumerable.
    #[error("lcm of the weights overflows u64")]
    LcmOverflow,
}

/// Errors from the forward computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    /// `2^s` subsets would be enumerated; `s` exceeds the configured limit.
    #[error("multiset cardinality {s} exceeds the subset enumeration limit {limit}")]
    SubsetOverflow { s: usize, limit: usize },
    /// An internal invariant failed (a bug, not a user error).
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// Weight validation failed while deriving an auxiliary multiset.
    #[error(transparent)]
    Weights(#[from] WeightsError),
    /// Propagated polynomial arithmetic failure.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A validated weight multiset `[n_1, ..., n_s]`: at least one entry, every
/// entry at least 2, kept sorted ascending so equal multisets compare equal.
///
/// `n_I = lcm(n_1, ..., n_s)` is required to fit in u64 and is
/// precomputed, so all divisor-lattice arithmetic downstream is infallible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    values: Vec<u64>,
    lcm: u64,
}

impl Weights {
    pub fn new(mut values: Vec<u64>) -> Result<Self, WeightsError> {
        if values.is_empty() {
            return Err(WeightsError::Empty);
        }
        if let Some(&bad) = values.iter().find(|&&v| v < 2) {
            return Err(WeightsError::TooSmall(bad));
        }
        values.sort_unstable();
        let mut lcm = 1u64;
        for &v in &values {
            lcm = checked_lcm(lcm, v).ok_or(WeightsError::LcmOverflow)?;
        }
        Ok(Weights { values, lcm })
    }

    /// The sorted entries `n_1 <= ... <= n_s`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Cardinality `s` of the multiset.
    pub fn s(&self) -> usize {
        self.values.len()
    }

    /// `n_I = lcm(n_1, ..., n_s)`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Number of entries equal to 2.
    pub fn count_twos(&self) -> usize {
        self.values.iter().filter(|&&v| v == 2).count()
    }

    /// `l = prod (n_i - 1)`, the degree of the Coxeter polynomial.
    pub fn rank(&self) -> BigInt {
        self.values.iter().map(|&n| BigInt::from(n - 1)).product()
    }

    /// Parity of `l = prod (n_i - 1)` without computing the product: `l` is
    /// even exactly when some weight is odd.
    pub fn rank_is_even(&self) -> bool {
        self.values.iter().any(|&n| n % 2 == 1)
    }

    /// The multiset with extra entries appended (used for the Knörrer shift).
    pub fn with_appended(&self, extra: &[u64]) -> Result<Weights, WeightsError> {
        let mut values = self.values.clone();
        values.extend_from_slice(extra);
        Weights::new(values)
    }
}

impl fmt::Debug for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weights{:?}", self.values)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

fn check_subset_limit(w: &Weights, limit: usize) -> Result<(), CoxeterError> {
    if w.s() > limit {
        Err(CoxeterError::SubsetOverflow { s: w.s(), limit })
    } else {
        Ok(())
    }
}

/// The subset product formula as a factored rational expression: for every
/// subset J the exponent of `(X^{n_J} - 1)` gains
/// `(-1)^{s-|J|} * prod_{i in J} n_i / n_J`.
pub fn chi_factored(w: &Weights) -> Result<FactoredRational, CoxeterError> {
    chi_factored_with_limit(w, DEFAULT_SUBSET_LIMIT)
}

/// [`chi_factored`] with an explicit subset-enumeration limit.
pub fn chi_factored_with_limit(
    w: &Weights,
    limit: usize,
) -> Result<FactoredRational, CoxeterError> {
    check_subset_limit(w, limit)?;
    let s = w.s();
    let mut fr = FactoredRational::new();
    for mask in 0u64..(1u64 << s) {
        let (n_j, prod) = subset_lcm_product(w, mask);
        let quot = prod / n_j;
        let size = mask.count_ones() as usize;
        let term = if (s - size).is_multiple_of(2) {
            quot
        } else {
            -quot
        };
        fr.insert_add(n_j, term);
    }
    Ok(fr)
}

/// lcm and product over the subset selected by `mask`; the empty subset has
/// lcm 1 and product 1.
fn subset_lcm_product(w: &Weights, mask: u64) -> (u64, BigInt) {
    let mut n_j = 1u64;
    let mut prod = BigInt::from(1u32);
    for (i, &n) in w.values().iter().enumerate() {
        if mask >> i & 1 == 1 {
            // Safe: n | n_I and the fold stays within divisors of n_I.
            n_j = n_j / gcd(n_j, n) * n;
            prod *= n;
        }
    }
    (n_j, prod)
}

/// The integers `k_c` for every divisor `c` of `n_I`:
/// `k_c = sum_{J : n_J = c} prod_{i in J} (-n_i) / c`, zeros included.
///
/// Each subset contributes its product to the bucket of its lcm; the bucket
/// total is asserted divisible by `c`.
pub fn subset_k_values(w: &Weights) -> Result<BTreeMap<u64, BigInt>, CoxeterError> {
    subset_k_values_with_limit(w, DEFAULT_SUBSET_LIMIT)
}

/// [`subset_k_values`] with an explicit subset-enumeration limit.
pub fn subset_k_values_with_limit(
    w: &Weights,
    limit: usize,
) -> Result<BTreeMap<u64, BigInt>, CoxeterError> {
    check_subset_limit(w, limit)?;
    let s = w.s();
    let mut numerators: BTreeMap<u64, BigInt> = divisors(w.lcm())
        .into_iter()
        .map(|c| (c, BigInt::zero()))
        .collect();
    for mask in 0u64..(1u64 << s) {
        let (n_j, prod) = subset_lcm_product(w, mask);
        let signed = if mask.count_ones() % 2 == 0 {
            prod
        } else {
            -prod
        };
        *numerators.get_mut(&n_j).expect("subset lcm divides n_I") += signed;
    }
    numerators
        .into_iter()
        .map(|(c, num)| {
            let (q, r) = num.div_rem(&BigInt::from(c));
            if r.is_zero() {
                Ok((c, q))
            } else {
                Err(CoxeterError::InternalInconsistency(format!(
                    "k_{c} numerator {num} is not divisible by {c}"
                )))
            }
        })
        .collect()
}

/// The cyclotomic exponent table of the Coxeter polynomial:
/// `m_d = (-1)^s * sum_{d | c | n_I} k_c` for every divisor `d` of `n_I`.
pub fn chi_cyclo(w: &Weights) -> Result<CycloExponents, CoxeterError> {
    chi_cyclo_with_limit(w, DEFAULT_SUBSET_LIMIT)
}

/// [`chi_cyclo`] with an explicit subset-enumeration limit.
pub fn chi_cyclo_with_limit(w: &Weights, limit: usize) -> Result<CycloExponents, CoxeterError> {
    let k = subset_k_values_with_limit(w, limit)?;
    let sign_s = if w.s().is_multiple_of(2) { 1 } else { -1 };
    let mut ce = CycloExponents::new();
    for &d in k.keys() {
        let mut m: BigInt = k
            .iter()
            .filter(|(&c, _)| c % d == 0)
            .map(|(_, kc)| kc)
            .sum();
        m *= sign_s;
        if m.is_negative() {
            return Err(CoxeterError::InternalInconsistency(format!(
                "negative multiplicity m_{d} = {m} for {w}"
            )));
        }
        ce.insert(d, m);
    }
    if ce.degree() != w.rank() {
        return Err(CoxeterError::InternalInconsistency(format!(
            "multiplicity table degree {} differs from prod(n_i - 1) = {} for {w}",
            ce.degree(),
            w.rank()
        )));
    }
    Ok(ce)
}

/// The Coxeter polynomial of the Kronecker-product transformation, expanded.
pub fn chi_poly(w: &Weights) -> Result<IntPoly, CoxeterError> {
    Ok(chi_factored(w)?.expand()?)
}

/// The Coxeter polynomial of the tensor-product algebra itself: the sign
/// convention prepends a factor 2 to the multiset when `s` is even.
pub fn algebra_coxeter_poly(w: &Weights) -> Result<IntPoly, CoxeterError> {
    if w.s() % 2 == 1 {
        chi_poly(w)
    } else {
        chi_poly(&w.with_appended(&[2])?)
    }
}

/// `det Phi = (-1)^{l s}` with `l = prod (n_i - 1)`.
pub fn determinant_sign(w: &Weights) -> i32 {
    if w.rank_is_even() || w.s().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Fractional Calabi-Yau dimension `(s n_I - 2 sum n_I / n_i) / n_I`, stored
/// unreduced with the reduced form available.
///
/// The usual algebra-level interpretation assumes all weights >= 3; the
/// formula itself is evaluated for any valid multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyDimension {
    numerator: BigInt,
    denominator: u64,
}

impl CyDimension {
    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    /// The unreduced denominator, `n_I`.
    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// The fraction in lowest terms.
    pub fn reduced(&self) -> (BigInt, u64) {
        let den = BigInt::from(self.denominator);
        let g = self.numerator.gcd(&den);
        if g.is_zero() {
            return (BigInt::zero(), 1);
        }
        let num = &self.numerator / &g;
        let den = (&den / &g)
            .try_into()
            .expect("reduced denominator divides a u64");
        (num, den)
    }
}

impl fmt::Display for CyDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Calabi-Yau dimension of the tensor-product algebra.
pub fn cy_dimension(w: &Weights) -> CyDimension {
    let n_i = w.lcm();
    let mut numerator = BigInt::from(w.s() as u64) * BigInt::from(n_i);
    for &n in w.values() {
        numerator -= BigInt::from(2u32) * BigInt::from(n_i / n);
    }
    CyDimension {
        numerator,
        denominator: n_i,
    }
}
