//! Exact univariate polynomial arithmetic over the integers, plus cyclotomic
//! polynomial utilities.
//!
//! [`IntPoly`] stores dense arbitrary-precision coefficients, lowest degree
//! first, with trailing zeros stripped; the zero polynomial is the empty
//! coefficient vector and has no degree. Products of the binomials `X^n - 1`
//! (and exact division by them) are the workhorse operations here: both run in
//! a single linear pass, which keeps [`expand`](FactoredRational::expand) and
//! [`cyclotomic`] cheap even at four-digit degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::{divisors, moebius, totient};

/// Errors from exact polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivByZero,
    /// Exact division requested but the remainder is nonzero.
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    /// Operation undefined for the zero polynomial (degree, reciprocal, ...).
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// A factored rational expression failed to expand to a polynomial.
    #[error("factored expression is not a polynomial (inexact division)")]
    NotAPolynomial,
    /// An exponent in a factored form is too large to expand in memory.
    #[error("factored-form exponent too large to expand")]
    ExponentTooLarge,
}

/// Dense integer polynomial, coefficients lowest degree first.
///
/// Invariant: the last stored coefficient is nonzero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Build from coefficients (lowest degree first), stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The binomial `X^n - 1` for `n >= 1`.
    pub fn x_pow_minus_one(n: u64) -> Self {
        assert!(n >= 1, "X^0 - 1 is the zero polynomial");
        let n = n as usize;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients, lowest degree first (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Constant term (zero for the zero polynomial).
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Evaluate at an integer point by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact quotient `self / rhs`.
    ///
    /// Errors with [`PolyError::DivByZero`] for a zero divisor and
    /// [`PolyError::NotDivisible`] when the remainder is nonzero (including a
    /// non-integral quotient step for non-monic divisors).
    pub fn div_exact(&self, rhs: &IntPoly) -> Result<IntPoly, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let n = self.coeffs.len();
        let m = rhs.coeffs.len();
        if n < m {
            return Err(PolyError::NotDivisible);
        }
        let lead = &rhs.coeffs[m - 1];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = std::mem::take(&mut rem[k + m - 1]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (i, b) in rhs.coeffs.iter().enumerate().take(m - 1) {
                rem[k + i] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Reversed coefficient sequence `X^deg · f(1/X)`.
    pub fn reciprocal(&self) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// `f(-X)`: odd coefficients change sign.
    pub fn substitute_negx(&self) -> IntPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        // Leading coefficient only changes sign, never vanishes.
        IntPoly { coeffs }
    }

    /// Largest `k` with `cyclotomic(d)^k` dividing `self`.
    pub fn cyclo_multiplicity(&self, d: u64) -> Result<u64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let phi = cyclotomic(d);
        let mut g = self.clone();
        let mut k = 0u64;
        while let Ok(q) = g.div_exact(&phi) {
            g = q;
            k += 1;
        }
        Ok(k)
    }

    /// Multiply by `X^n - 1` in one pass.
    pub(crate) fn mul_x_pow_minus_one(&self, n: u64) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let n = n as usize;
        let len = self.coeffs.len();
        let mut out = vec![BigInt::zero(); len + n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + n] = c.clone();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly { coeffs: out }
    }

    /// Exact division by `X^n - 1` in one pass (synthetic division).
    pub(crate) fn div_exact_x_pow_minus_one(&self, n: u64) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let n = n as usize;
        let len = self.coeffs.len();
        if len <= n {
            return Err(PolyError::NotDivisible);
        }
        // self = q·X^n - q, so coefficient-wise a_i = q_{i-n} - q_i.
        let qlen = len - n;
        let mut q = vec![BigInt::zero(); qlen];
        for i in 0..qlen {
            q[i] = if i >= n {
                &q[i - n] - &self.coeffs[i]
            } else {
                -&self.coeffs[i]
            };
        }
        for i in qlen..len {
            let expect = if i >= n {
                q[i - n].clone()
            } else {
                BigInt::zero()
            };
            if expect != self.coeffs[i] {
                return Err(PolyError::NotDivisible);
            }
        }
        Ok(IntPoly::from_coeffs(q))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    /// Exact schoolbook product.
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly { coeffs }
    }
}

/// The d-th cyclotomic polynomial, via the Möbius product
/// `prod_{e|d} (X^e - 1)^{mu(d/e)}` with exact divisions.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut fr = FactoredRational::new();
    for e in divisors(d) {
        fr.insert_add(e, BigInt::from(moebius(d / e)));
    }
    let phi = fr
        .expand()
        .expect("Moebius product of a cyclotomic index always expands");
    debug_assert_eq!(phi.degree(), Some(totient(d) as usize));
    phi
}

/// A formal product `prod_n (X^n - 1)^{e_n}` with integer (possibly negative)
/// exponents; zero exponents are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredRational {
    table: BTreeMap<u64, BigInt>,
}

impl FactoredRational {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut fr = Self::new();
        for (n, e) in pairs {
            fr.insert_add(n, BigInt::from(e));
        }
        fr
    }

    /// Add `e` to the exponent of `X^n - 1`, dropping the entry if it cancels.
    pub fn insert_add(&mut self, n: u64, e: BigInt) {
        assert!(n >= 1, "factor X^0 - 1 is zero");
        if e.is_zero() {
            return;
        }
        let entry = self.table.entry(n).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.table.remove(&n);
        }
    }

    pub fn exponent(&self, n: u64) -> BigInt {
        self.table.get(&n).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Entries `(n, e_n)` with nonzero exponent, ascending in `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.table.iter().map(|(&n, e)| (n, e))
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Expand to a polynomial: multiply the positive-exponent factors, then
    /// divide out the negative-exponent ones, each in a linear pass.
    ///
    /// Errors with [`PolyError::NotAPolynomial`] when a division is inexact,
    /// i.e. when the expression is a genuine rational function.
    pub fn expand(&self) -> Result<IntPoly, PolyError> {
        let mut p = IntPoly::one();
        for (&n, e) in &self.table {
            if e.is_positive() {
                let reps = e.to_u64().ok_or(PolyError::ExponentTooLarge)?;
                for _ in 0..reps {
                    p = p.mul_x_pow_minus_one(n);
                }
            }
        }
        for (&n, e) in &self.table {
            if e.is_negative() {
                let reps = (-e).to_u64().ok_or(PolyError::ExponentTooLarge)?;
                for _ in 0..reps {
                    p = p
                        .div_exact_x_pow_minus_one(n)
                        .map_err(|_| PolyError::NotAPolynomial)?;
                }
            }
        }
        Ok(p)
    }
}

/// A product of cyclotomic polynomials `prod_d Phi_d^{m_d}` by its exponent
/// table; entries are the strictly positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloExponents {
    table: BTreeMap<u64, BigInt>,
}

impl CycloExponents {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut ce = Self::new();
        for (d, m) in pairs {
            ce.insert(d, BigInt::from(m));
        }
        ce
    }

    /// Record multiplicity `m` for `Phi_d`; zero is dropped, negatives are a
    /// caller bug.
    pub fn insert(&mut self, d: u64, m: BigInt) {
        assert!(d >= 1, "cyclotomic index must be positive");
        assert!(!m.is_negative(), "cyclotomic multiplicity must be >= 0");
        if !m.is_zero() {
            self.table.insert(d, m);
        }
    }

    /// Multiplicity of `Phi_d` (zero when absent).
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

    pub fn len(&self) -> usize {
        self.table.len()
    }

    /// Degree of the expanded product: `sum m_d * phi(d)`.
    pub fn degree(&self) -> BigInt {
        self.table
            .iter()
            .map(|(&d, m)| m * BigInt::from(totient(d)))
            .sum()
    }

    /// Expand the product `prod_d Phi_d^{m_d}` to a polynomial.
    pub fn to_poly(&self) -> Result<IntPoly, PolyError> {
        let mut p = IntPoly::one();
        for (&d, m) in &self.table {
            let reps = m.to_u64().ok_or(PolyError::ExponentTooLarge)?;
            let phi = cyclotomic(d);
            for _ in 0..reps {
                p = &p * &phi;
            }
        }
        Ok(p)
    }
}

impl FromIterator<(u64, BigInt)> for CycloExponents {
    fn from_iter<T: IntoIterator<Item = (u64, BigInt)>>(iter: T) -> Self {
        let mut ce = Self::new();
        for (d, m) in iter {
            ce.insert(d, m);
        }
        ce
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn mul_difference_of_squares() {
        // (X-1)(X+1) = X^2 - 1
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn mul_geometric_series() {
        // (X^2+X+1)(X-1) = X^3 - 1
        assert_eq!(&p(&[1, 1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn mul_zero_annihilates() {
        assert_eq!(&IntPoly::zero() * &p(&[3, 5, 7]), IntPoly::zero());
        assert!((&p(&[1, 2]) * &IntPoly::zero()).is_zero());
    }

    #[test]
    fn div_exact_cyclotomic_factor() {
        // (X^3-1)/(X-1) = X^2+X+1
        assert_eq!(p(&[-1, 0, 0, 1]).div_exact(&p(&[-1, 1])), Ok(p(&[1, 1, 1])));
    }

    #[test]
    fn div_exact_remainder_detected() {
        // (X^2+1)/(X-1) leaves remainder 2
        assert_eq!(
            p(&[1, 0, 1]).div_exact(&p(&[-1, 1])),
            Err(PolyError::NotDivisible)
        );
    }

    #[test]
    fn div_exact_identity_divisor() {
        let f = p(&[4, -3, 0, 9]);
        assert_eq!(f.div_exact(&IntPoly::one()), Ok(f.clone()));
        assert_eq!(f.div_exact(&IntPoly::zero()), Err(PolyError::DivByZero));
    }

    #[test]
    fn div_exact_nonmonic() {
        let f = &p(&[2, 4]) * &p(&[1, 3]); // (4X+2)(3X+1)
        assert_eq!(f.div_exact(&p(&[2, 4])), Ok(p(&[1, 3])));
        assert_eq!(
            p(&[1, 1]).div_exact(&p(&[0, 2])),
            Err(PolyError::NotDivisible)
        );
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_12_and_30() {
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30), p(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        // Cross-check Phi_12 against its direct expansion
        // (X^12-1)(X^2-1) / ((X^6-1)(X^4-1)).
        let num = &IntPoly::x_pow_minus_one(12) * &IntPoly::x_pow_minus_one(2);
        let den = &IntPoly::x_pow_minus_one(6) * &IntPoly::x_pow_minus_one(4);
        assert_eq!(num.div_exact(&den), Ok(cyclotomic(12)));
    }

    #[test]
    fn cyclotomic_product_over_divisors() {
        for n in 1..=60u64 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = &prod * &cyclotomic(d);
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[-1, 1]).reciprocal(), Ok(p(&[1, -1])));
        assert_eq!(p(&[1, 1, 1]).reciprocal(), Ok(p(&[1, 1, 1])));
        assert_eq!(p(&[3, 2, 1]).reciprocal(), Ok(p(&[1, 2, 3])));
        assert_eq!(IntPoly::zero().reciprocal(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn reciprocal_of_cyclotomics() {
        assert_eq!(cyclotomic(1).reciprocal().unwrap(), -&cyclotomic(1));
        for d in 2..=40u64 {
            assert_eq!(
                cyclotomic(d).reciprocal().unwrap(),
                cyclotomic(d),
                "d = {d}"
            );
        }
    }

    #[test]
    fn substitute_negx_examples() {
        assert_eq!(p(&[1, 1, 1]).substitute_negx(), p(&[1, -1, 1]));
        assert_eq!(p(&[1, 1]).substitute_negx(), p(&[1, -1]));
        assert_eq!(p(&[7]).substitute_negx(), p(&[7]));
    }

    #[test]
    fn cyclo_multiplicity_examples() {
        let sq = &p(&[1, 1, 1]) * &p(&[1, 1, 1]);
        assert_eq!(sq.cyclo_multiplicity(3), Ok(2));
        assert_eq!(p(&[1, 1]).cyclo_multiplicity(3), Ok(0));
        assert_eq!(
            IntPoly::zero().cyclo_multiplicity(3),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn expand_examples() {
        assert_eq!(
            FactoredRational::from_pairs([(1, 1)]).expand(),
            Ok(p(&[-1, 1]))
        );
        // (X^6-1)(X-1) / ((X^2-1)(X^3-1)) = X^2 - X + 1
        assert_eq!(
            FactoredRational::from_pairs([(6, 1), (1, 1), (2, -1), (3, -1)]).expand(),
            Ok(p(&[1, -1, 1]))
        );
        assert_eq!(
            FactoredRational::from_pairs([(2, -1), (1, 1)]).expand(),
            Err(PolyError::NotAPolynomial)
        );
    }

    #[test]
    fn expand_empty_is_one() {
        assert_eq!(FactoredRational::new().expand(), Ok(IntPoly::one()));
    }

    #[test]
    fn factored_rational_cancels_zero_exponents() {
        let mut fr = FactoredRational::new();
        fr.insert_add(4, BigInt::from(3));
        fr.insert_add(4, BigInt::from(-3));
        assert!(fr.is_empty());
    }

    #[test]
    fn sparse_mul_div_roundtrip() {
        let f = p(&[3, -1, 0, 2, 5]);
        for n in [1u64, 2, 3, 7] {
            let g = f.mul_x_pow_minus_one(n);
            assert_eq!(&f * &IntPoly::x_pow_minus_one(n), g);
            assert_eq!(g.div_exact_x_pow_minus_one(n), Ok(f.clone()));
        }
        assert_eq!(
            p(&[1, 0, 1]).div_exact_x_pow_minus_one(2),
            Err(PolyError::NotDivisible)
        );
    }

    #[test]
    fn cyclo_exponents_degree() {
        let ce = CycloExponents::from_pairs([(1, 2), (3, 3)]);
        assert_eq!(ce.degree(), BigInt::from(8));
        let poly = ce.to_poly().unwrap();
        assert_eq!(poly.degree(), Some(8));
    }

    #[test]
    fn display_formatting() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "X^2 - X + 1");
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2X^2 - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_horner() {
        let f = p(&[1, -1, 1]);
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(f.eval(&BigInt::from(-2)), BigInt::from(7));
    }
}
