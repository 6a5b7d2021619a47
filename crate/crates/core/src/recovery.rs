//! Inverse direction: from a Coxeter polynomial back to the weight multiset.
//!
//! The pipeline is
//!
//! 1. [`multiplicities`]: strip cyclotomic factors by exact trial division
//!    until the degree is exhausted, giving the table `d -> m_d`;
//! 2. [`working_modulus`]: `N = lcm(d : m_d > 0)`, and the even modulus
//!    `n = N` (N even) or `2N` (N odd), a multiple of the hidden `n_I`;
//! 3. [`k_values`]: Möbius inversion over the divisor lattice of `n` yields
//!    the signed integers `(-1)^s k_d`;
//! 4. [`recover`]: `k_1 = 1` fixes the parity of `s`; `k_2 in {0, -1}` fixes
//!    the parity of the number of 2s; then an induction over divisors
//!    `d | n`, `d > 2` in ascending order solves
//!    `sum_{c | d} c k_c = prod_{c | d} (1 - c)^{|I_c|}`
//!    for `|I_d|`, which is unique because `d - 1 > 1`.
//!
//! Inputs outside the family surface as structured errors, never as garbage
//! multisets. More than one weight equal to 2 is invisible beyond parity
//! (appending two 2s fixes the polynomial), so counts are only produced for
//! weights >= 3.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::coxeter::Weights;
use crate::numtheory::{checked_lcm, divisors, moebius, totient, totient_at_most};
use crate::poly::{cyclotomic, CycloExponents, IntPoly};

/// Errors from the recovery pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    /// The zero polynomial has no multiplicity table.
    #[error("the zero polynomial has no cyclotomic factorization")]
    ZeroPolynomial,
    /// The input is not a product of cyclotomic polynomials.
    #[error("not a product of cyclotomic polynomials: {0}")]
    NotCyclotomicProduct(String),
    /// A multiplicity table with no entries has no working modulus.
    #[error("empty multiplicity table")]
    EmptyTable,
    /// The working modulus does not fit in u64.
    #[error("working modulus overflows u64")]
    ModulusOverflow,
    /// The input is a cyclotomic product but not a Coxeter polynomial of this
    /// family (some recovery equation has no solution).
    #[error("not a Coxeter polynomial of the family: {0}")]
    InconsistentPolynomial(String),
    /// The recovered data describe the empty multiset (the polynomial of a
    /// multiset consisting of an even number of 2s and nothing else).
    #[error("recovered data admit only the empty multiset")]
    EmptyMultiset,
}

/// Cyclotomic multiplicities `d -> m_d` of a polynomial, with the implied
/// total degree `sum m_d phi(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    table: BTreeMap<u64, BigInt>,
    degree: BigInt,
}

impl MultiplicityTable {
    /// Build from positive entries; zero multiplicities are dropped, negative
    /// ones rejected.
    pub fn new(entries: BTreeMap<u64, BigInt>) -> Result<Self, RecoveryError> {
        let mut table = BTreeMap::new();
        for (d, m) in entries {
            if m.is_negative() {
                return Err(RecoveryError::InconsistentPolynomial(format!(
                    "negative multiplicity m_{d} = {m}"
                )));
            }
            if !m.is_zero() {
                table.insert(d, m);
            }
        }
        let degree = table
            .iter()
            .map(|(&d, m)| m * BigInt::from(totient(d)))
            .sum();
        Ok(MultiplicityTable { table, degree })
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let entries = pairs
            .into_iter()
            .map(|(d, m)| (d, BigInt::from(m)))
            .collect();
        Self::new(entries).expect("nonnegative entries")
    }

    /// Multiplicity of `Phi_d`, zero when absent.
    pub fn multiplicity(&self, d: u64) -> BigInt {
        self.table.get(&d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Entries `(d, m_d)` with `m_d >= 1`, ascending in `d`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.table.iter().map(|(&d, m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Total degree `sum m_d phi(d)` of the represented product.
    pub fn degree(&self) -> &BigInt {
        &self.degree
    }
}

impl From<&CycloExponents> for MultiplicityTable {
    fn from(ce: &CycloExponents) -> Self {
        let entries = ce.iter().map(|(d, m)| (d, m.clone())).collect();
        MultiplicityTable::new(entries).expect("cyclotomic exponents are nonnegative")
    }
}

/// Compute the full cyclotomic multiplicity table of `f` by exact trial
/// division, requiring the factors to exhaust the degree.
///
/// Candidates are all `d` with `phi(d) <= deg` of the not-yet-stripped part,
/// processed in ascending order. A necessary-condition filter
/// (`Phi_d(2) | f(2)` and `Phi_d(-2) | f(-2)`, both computed without building
/// `Phi_d`) rejects most non-divisors before any polynomial division runs.
///
/// Errors with [`RecoveryError::NotCyclotomicProduct`] when the leading
/// coefficient is not a unit or when a non-cyclotomic factor remains.
pub fn multiplicities(f: &IntPoly) -> Result<MultiplicityTable, RecoveryError> {
    let Some(deg) = f.degree() else {
        return Err(RecoveryError::ZeroPolynomial);
    };
    let lead = f.leading().expect("nonzero polynomial has a leading term");
    if !lead.is_one() && !(-lead).is_one() {
        return Err(RecoveryError::NotCyclotomicProduct(format!(
            "leading coefficient {lead} is not a unit"
        )));
    }
    let mut g = f.clone();
    let mut table = BTreeMap::new();
    if deg > 0 {
        let two = BigInt::from(2);
        let neg_two = BigInt::from(-2);
        let mut at_two = g.eval(&two);
        let mut at_neg_two = g.eval(&neg_two);
        for d in totient_at_most(deg as u64) {
            let cur = g.degree().expect("stripped part stays nonzero");
            if cur == 0 {
                break;
            }
            if totient(d) > cur as u64 {
                continue;
            }
            if !eval_filter_passes(d, &at_two, &at_neg_two) {
                continue;
            }
            let phi = cyclotomic(d);
            let mut count = 0u64;
            while let Ok(q) = g.div_exact(&phi) {
                g = q;
                count += 1;
            }
            if count > 0 {
                table.insert(d, BigInt::from(count));
                at_two = g.eval(&two);
                at_neg_two = g.eval(&neg_two);
            }
        }
    }
    if g.degree() != Some(0) {
        return Err(RecoveryError::NotCyclotomicProduct(format!(
            "a degree-{} factor with no cyclotomic divisor remains",
            g.degree().unwrap_or(0)
        )));
    }
    MultiplicityTable::new(table)
}

/// `Phi_d(x)` for `x = 2, -2` via `prod_{e|d} (x^e - 1)^{mu(d/e)}`, checked as
/// divisors of the supplied evaluations. These are necessary conditions for
/// `Phi_d | f`, and cheap because no polynomial is materialised.
fn eval_filter_passes(d: u64, at_two: &BigInt, at_neg_two: &BigInt) -> bool {
    for x in [2i64, -2] {
        let value = if x == 2 { at_two } else { at_neg_two };
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for e in divisors(d) {
            let factor = BigInt::from(x).pow(e as u32) - 1;
            match moebius(d / e) {
                1 => num *= factor,
                -1 => den *= factor,
                _ => {}
            }
        }
        let (phi_at_x, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero(), "Phi_{d}({x}) product must be integral");
        if !value
            .mod_floor(&phi_at_x.abs().max(BigInt::one()))
            .is_zero()
        {
            return false;
        }
    }
    true
}

/// `N = lcm(d : m_d > 0)`, then the even working modulus: `N` when `N` is
/// even, `2N` otherwise.
pub fn working_modulus(t: &MultiplicityTable) -> Result<u64, RecoveryError> {
    let mut n = 1u64;
    if t.is_empty() {
        return Err(RecoveryError::EmptyTable);
    }
    for (d, _) in t.iter() {
        n = checked_lcm(n, d).ok_or(RecoveryError::ModulusOverflow)?;
    }
    if n.is_multiple_of(2) {
        Ok(n)
    } else {
        n.checked_mul(2).ok_or(RecoveryError::ModulusOverflow)
    }
}

/// The signed values `(-1)^s k_d` for every divisor `d | n`, by Möbius
/// inversion on the divisor lattice: `(-1)^s k_d = sum_{d|c|n} mu(c/d) m_c`
/// (with `m_c = 0` for `c` absent from the table).
///
/// `n` must be the [`working_modulus`] of the table (any even multiple of the
/// true `n_I` gives the same nonzero values; the extra divisors come out 0).
pub fn k_values(t: &MultiplicityTable, n: u64) -> BTreeMap<u64, BigInt> {
    let mut out = BTreeMap::new();
    for d in divisors(n) {
        let mut total = BigInt::zero();
        for e in divisors(n / d) {
            let mu = moebius(e);
            if mu != 0 {
                total += mu * t.multiplicity(d * e);
            }
        }
        out.insert(d, total);
    }
    out
}

/// Everything the recovery algorithm can extract from a Coxeter polynomial:
/// the count of tensor factors for every weight `d >= 3`, the parity of the
/// number of 2s, the parity of `s`, and the working modulus used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredWeights {
    counts: BTreeMap<u64, u64>,
    two_odd: bool,
    s_odd: bool,
    n: u64,
}

impl RecoveredWeights {
    /// Factor counts `d -> |I_d|` for `d >= 3` (zero counts omitted).
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Whether the number of factors equal to 2 is odd.
    pub fn two_parity_odd(&self) -> bool {
        self.two_odd
    }

    /// Whether the total number of factors `s` is odd.
    pub fn s_parity_odd(&self) -> bool {
        self.s_odd
    }

    /// The working modulus `n` the recovery ran over.
    pub fn modulus(&self) -> u64 {
        self.n
    }
}

/// Run the full recovery pipeline on a polynomial.
pub fn recover(f: &IntPoly) -> Result<RecoveredWeights, RecoveryError> {
    recover_from_table(&multiplicities(f)?)
}

/// Recovery from an already-computed multiplicity table.
pub fn recover_from_table(t: &MultiplicityTable) -> Result<RecoveredWeights, RecoveryError> {
    let n = working_modulus(t)?;
    recover_with_modulus(t, n)
}

/// Recovery over an explicit even modulus.
///
/// Intended for verifying modulus invariance: any even multiple of the true
/// `n_I` (in particular the crude a-priori bound `lcm(1..deg+1)`) must yield
/// the same counts and parities as the working modulus. The reported modulus
/// is the one passed in.
pub fn recover_with_modulus(
    t: &MultiplicityTable,
    n: u64,
) -> Result<RecoveredWeights, RecoveryError> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(RecoveryError::InconsistentPolynomial(format!(
            "working modulus {n} is not a positive even number"
        )));
    }
    let signed = k_values(t, n);

    // k_1 = 1 always, so the signed value at 1 is (-1)^s.
    let sign = signed[&1].clone();
    if !sign.is_one() && !(-&sign).is_one() {
        return Err(RecoveryError::InconsistentPolynomial(format!(
            "(-1)^s k_1 = {sign}, expected +-1"
        )));
    }
    let s_odd = (-&sign).is_one();

    // Materialise the actual k_d = (-1)^s * signed_d.
    let k: BTreeMap<u64, BigInt> = signed.into_iter().map(|(d, v)| (d, v * &sign)).collect();

    // 1 + 2 k_2 = (-1)^{|I_2|} pins the parity of the number of 2s.
    let two_odd = match &k[&2] {
        v if v.is_zero() => false,
        v if (-v).is_one() => true,
        v => {
            return Err(RecoveryError::InconsistentPolynomial(format!(
                "k_2 = {v}, expected 0 or -1"
            )))
        }
    };

    // Induction over divisors d | n, d > 2, ascending:
    //   sum_{c | d} c k_c = prod_{c | d} (1 - c)^{|I_c|},
    // where the right-hand side is known except for the factor (1-d)^{|I_d|}.
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for d in divisors(n).into_iter().filter(|&d| d > 2) {
        let mut lhs = BigInt::zero();
        let mut known = BigInt::one();
        for c in divisors(d) {
            lhs += BigInt::from(c) * &k[&c];
            if c == 2 && two_odd {
                known = -known;
            } else if c > 2 && c < d {
                if let Some(&cnt) = counts.get(&c) {
                    known *= (BigInt::one() - BigInt::from(c))
                        .pow(u32::try_from(cnt).expect("count fits u32"));
                }
            }
        }
        let (mut q, rem) = lhs.div_rem(&known);
        if !rem.is_zero() {
            return Err(RecoveryError::InconsistentPolynomial(format!(
                "divisor {d}: {lhs} is not divisible by the known partial product {known}"
            )));
        }
        // q must now be an exact power of (1 - d).
        let base = BigInt::one() - BigInt::from(d);
        let mut count = 0u64;
        while !q.is_one() {
            if q.is_zero() {
                return Err(RecoveryError::InconsistentPolynomial(format!(
                    "divisor {d}: equation degenerates to zero"
                )));
            }
            let (next, rem) = q.div_rem(&base);
            if !rem.is_zero() {
                return Err(RecoveryError::InconsistentPolynomial(format!(
                    "divisor {d}: quotient {q} is not a power of {base}"
                )));
            }
            q = next;
            count += 1;
        }
        if count > 0 {
            counts.insert(d, count);
        }
    }

    // Parity sanity: |I_2| + sum_{d >= 3} |I_d| must match the parity of s.
    let total: u64 = counts.values().sum::<u64>() + u64::from(two_odd);
    if (total % 2 == 1) != s_odd {
        return Err(RecoveryError::InconsistentPolynomial(format!(
            "recovered counts have parity {} but s is {}",
            if total % 2 == 1 { "odd" } else { "even" },
            if s_odd { "odd" } else { "even" },
        )));
    }

    Ok(RecoveredWeights {
        counts,
        two_odd,
        s_odd,
        n,
    })
}

/// The unique multiset with at most one 2 matching the recovered counts and
/// parities.
///
/// Errors with [`RecoveryError::EmptyMultiset`] in the degenerate case of no
/// counts and an even number of 2s, where the matching multiset is empty.
pub fn canonical_multiset(r: &RecoveredWeights) -> Result<Weights, RecoveryError> {
    let mut values = Vec::new();
    if r.two_odd {
        values.push(2);
    }
    for (&d, &cnt) in &r.counts {
        values.extend(std::iter::repeat_n(d, cnt as usize));
    }
    if values.is_empty() {
        return Err(RecoveryError::EmptyMultiset);
    }
    Ok(Weights::new(values).expect("recovered entries are >= 2 with lcm dividing the modulus"))
}
