//! Brute-force cross-checks, deliberately independent of the product formula:
//!
//! - [`fiber_multiplicities`]: enumerate every exponent tuple, map it into
//!   `Z/n_I`, and tally eigenvalue orders directly;
//! - [`companion_coxeter`] / [`kronecker`] / [`charpoly_exact`]: build the
//!   transformation matrix itself and take its characteristic polynomial in
//!   exact integer arithmetic.
//!
//! Both routes are capped ([`DEFAULT_FIBER_CAP`], [`DEFAULT_MATRIX_CAP`]);
//! exceeding a cap is an error, never silent truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::coxeter::Weights;
use crate::numtheory::{gcd, totient};
use crate::poly::IntPoly;
use crate::recovery::MultiplicityTable;

/// Default cap on the matrix dimension for [`charpoly_exact`].
pub const DEFAULT_MATRIX_CAP: usize = 64;

/// Default cap on the tuple count `l = prod (n_i - 1)` for
/// [`fiber_multiplicities`].
pub const DEFAULT_FIBER_CAP: u64 = 10_000_000;

/// Errors from the oracle computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// Matrix dimension exceeds the configured cap.
    #[error("matrix dimension {dim} exceeds the cap {cap}")]
    DimCap { dim: usize, cap: usize },
    /// Tuple count exceeds the configured cap.
    #[error("fiber size {size} exceeds the cap {cap}")]
    FiberCap { size: BigInt, cap: u64 },
    /// An internal cross-check failed (a bug, not a user error).
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Zero matrix of side `dim >= 1`.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Build from explicit rows (all of length `rows.len()`).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                *m.get_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.dim + j]
    }

    /// Matrix product (dimensions must agree).
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Entry-wise negation.
    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The Coxeter matrix of a single linearly oriented type-A factor of weight
/// `n`: the `(n-1) x (n-1)` matrix with 1s on the superdiagonal and a final
/// row of -1s.
///
/// The direct construction is cross-checked against `-C^{-1} C^T` for the
/// upper-unitriangular Cartan matrix `C` of all 1s on every call.
pub fn companion_coxeter(n: u64) -> IntMatrix {
    assert!(n >= 2, "weight must be at least 2");
    let dim = (n - 1) as usize;
    let mut m = IntMatrix::zeros(dim);
    for i in 0..dim.saturating_sub(1) {
        *m.get_mut(i, i + 1) = BigInt::one();
    }
    for j in 0..dim {
        *m.get_mut(dim - 1, j) = BigInt::from(-1);
    }

    // Cartan route: C upper triangular of 1s, C^{-1} bidiagonal (1 on the
    // diagonal, -1 on the superdiagonal), Phi = -C^{-1} C^T.
    let mut cartan_t = IntMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..=i {
            *cartan_t.get_mut(i, j) = BigInt::one();
        }
    }
    let mut cartan_inv = IntMatrix::identity(dim);
    for i in 0..dim.saturating_sub(1) {
        *cartan_inv.get_mut(i, i + 1) = BigInt::from(-1);
    }
    let from_cartan = cartan_inv.mul(&cartan_t).neg();
    assert_eq!(
        m, from_cartan,
        "companion form disagrees with the Cartan-matrix identity for n = {n}"
    );
    m
}

/// Standard Kronecker product; the result has side `dim(a) * dim(b)`.
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = IntMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    let v = aij * b.get(k, l);
                    *out.get_mut(i * db + k, j * db + l) = v;
                }
            }
        }
    }
    out
}

/// Exact characteristic polynomial `det(X I - M)` over the integers, by the
/// Faddeev-LeVerrier iteration; every division by the step index is exact and
/// asserted. Monic of degree `dim`.
pub fn charpoly_exact(m: &IntMatrix, cap: usize) -> Result<IntPoly, OracleError> {
    let n = m.dim();
    if n > cap {
        return Err(OracleError::DimCap { dim: n, cap });
    }
    // coeffs[n - k] accompanies X^{n-k}; leading coefficient 1.
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::identity(n);
    for k in 1..=n {
        let prod = m.mul(&aux);
        let (c, rem) = (-prod.trace()).div_rem(&BigInt::from(k as u64));
        if !rem.is_zero() {
            return Err(OracleError::InternalInconsistency(format!(
                "trace at step {k} is not divisible by {k}"
            )));
        }
        coeffs[n - k] = c.clone();
        aux = prod;
        for i in 0..n {
            *aux.get_mut(i, i) += &c;
        }
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Eigenvalue multiplicities by direct fiber enumeration, fully independent
/// of the product formula.
///
/// Every tuple `(a_1, ..., a_s)` with `a_i in {1, ..., n_i - 1}` is mapped to
/// `x = sum (n/n_i) a_i mod n` for `n = n_I`; its eigenvalue has order
/// `d = n / gcd(x, n)`. Orders are tallied and each tally is divided by
/// `phi(d)` (the `phi(d)` residues of order `d` carry equal fibers; the
/// division is asserted exact), giving `m_d` = the fiber cardinality over a
/// single residue of order `d`.
pub fn fiber_multiplicities(w: &Weights, cap: u64) -> Result<MultiplicityTable, OracleError> {
    let size = w.rank();
    if size > BigInt::from(cap) {
        return Err(OracleError::FiberCap { size, cap });
    }
    let total = size.to_u64().expect("tuple count within cap fits u64");
    let n = w.lcm();
    let steps: Vec<u64> = w.values().iter().map(|&ni| n / ni).collect();
    let radii: Vec<u64> = w.values().iter().map(|&ni| ni - 1).collect();

    // Odometer over the tuples, maintaining x = sum steps[i] * a_i mod n.
    // Intermediate products go through u128; n itself can be large even when
    // the tuple count is small.
    let add_mod = |a: u64, b: u64| ((a as u128 + b as u128) % n as u128) as u64;
    let mul_mod = |a: u64, b: u64| (a as u128 * (b % n) as u128 % n as u128) as u64;
    let mut digits: Vec<u64> = vec![1; radii.len()];
    let mut x: u64 = steps.iter().fold(0u64, |acc, &c| add_mod(acc, c % n));
    let mut order_tally: BTreeMap<u64, u64> = BTreeMap::new();
    let mut remaining = total;
    loop {
        let d = n / gcd(x, n);
        *order_tally.entry(d).or_insert(0) += 1;
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        // Advance the odometer; rolling digit i back from n_i - 1 to 1
        // subtracts (n_i - 2) * steps[i] from x.
        let mut i = digits.len() - 1;
        loop {
            if digits[i] < radii[i] {
                digits[i] += 1;
                x = add_mod(x, steps[i] % n);
                break;
            }
            let rollback = mul_mod(radii[i] - 1, steps[i]);
            x = add_mod(x, n - rollback);
            digits[i] = 1;
            i -= 1;
        }
    }

    let mut table = BTreeMap::new();
    for (d, tally) in order_tally {
        let phi = totient(d);
        if tally % phi != 0 {
            return Err(OracleError::InternalInconsistency(format!(
                "order-{d} tally {tally} is not a multiple of phi({d}) = {phi}"
            )));
        }
        table.insert(d, BigInt::from(tally / phi));
    }
    Ok(MultiplicityTable::new(table).expect("tallies are nonnegative"))
}
