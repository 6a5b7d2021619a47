//! Exact arithmetic for Coxeter polynomials of tensor products of linearly
//! oriented type-A path algebras.
//!
//! A weight multiset `[n_1, ..., n_s]` (entries >= 2) determines the tensor
//! product of path algebras of linearly oriented type-A quivers with
//! `n_i - 1` vertices. This crate computes the characteristic polynomial of
//! the associated Coxeter transformation in exact integer arithmetic, inverts
//! the construction, and decides its spectral properties:
//!
//! - [`coxeter`]: weights to polynomial, in two independent forms (a factored
//!   product of binomials `X^{n_J} - 1`, and a cyclotomic exponent table),
//!   plus determinant sign and fractional Calabi-Yau dimension;
//! - [`recovery`]: polynomial back to weights — factor counts for every
//!   weight >= 3 and the parities of `s` and of the number of 2s;
//! - [`spectral`]: periodicity order, the gcd/prime-graph criterion for the
//!   eigenvalue 1, prime-power closed forms, self-reciprocity;
//! - [`oracle`]: brute-force cross-checks (direct fiber enumeration and exact
//!   characteristic polynomials of Kronecker-product matrices);
//! - [`poly`]: the underlying arbitrary-precision polynomial arithmetic and
//!   cyclotomic utilities.
//!
//! All operations are pure functions on immutable values.

pub mod coxeter;
pub mod numtheory;
pub mod oracle;
pub mod poly;
pub mod recovery;
pub mod spectral;

pub use coxeter::{
    algebra_coxeter_poly, chi_cyclo, chi_factored, chi_poly, cy_dimension, determinant_sign,
    subset_k_values, CoxeterError, CyDimension, Weights, WeightsError, DEFAULT_SUBSET_LIMIT,
};
pub use oracle::{
    charpoly_exact, companion_coxeter, fiber_multiplicities, kronecker, IntMatrix, OracleError,
    DEFAULT_FIBER_CAP, DEFAULT_MATRIX_CAP,
};
pub use poly::{cyclotomic, CycloExponents, FactoredRational, IntPoly, PolyError};
pub use recovery::{
    canonical_multiset, k_values, multiplicities, recover, recover_from_table,
    recover_with_modulus, working_modulus, MultiplicityTable, RecoveredWeights, RecoveryError,
};
pub use spectral::{
    algebra_periodicity_order, gcd_graph, is_self_reciprocal, k_top_prime_power, m1_prime_power,
    m1_vanishing_condition, one_is_eigenvalue, periodicity_order, self_reciprocity_gcd,
    top_multiplicity_positive, GcdGraph, SpectralError, VanishingCondition,
};
