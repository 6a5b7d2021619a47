//! Spectral predicates of the Coxeter transformation: periodicity order,
//! whether 1 is an eigenvalue (the gcd/prime-graph criterion), prime-power
//! closed forms, and self-reciprocity of the polynomial.
//!
//! The periodicity and eigenvalue-1 statements assume the multiset contains
//! at most one 2 (appending two 2s is invisible to the polynomial, and a
//! single extra 2 flips signs); the corresponding operations enforce that
//! hypothesis instead of silently normalising.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coxeter::{chi_cyclo, CoxeterError, Weights};
use crate::numtheory::{checked_lcm, gcd, prime_divisors, valuation};

/// Errors from the spectral predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    /// The multiset contains two or more entries equal to 2, outside the
    /// hypothesis of the periodicity and eigenvalue-1 statements.
    #[error("multiset contains more than one entry equal to 2")]
    TooManyTwos,
    /// The operation requires every weight to be at least 3.
    #[error("multiset contains an entry equal to 2")]
    ContainsTwo,
    /// lcm(n_I, 2) does not fit in u64.
    #[error("periodicity order overflows u64")]
    Overflow,
    /// Propagated failure of the multiplicity computation.
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

fn require_at_most_one_two(w: &Weights) -> Result<(), SpectralError> {
    if w.count_twos() > 1 {
        Err(SpectralError::TooManyTwos)
    } else {
        Ok(())
    }
}

/// Order of periodicity of the Kronecker-product transformation: `n_I`.
///
/// Requires at most one 2; with two or more 2s the order can drop to `n_I/2`
/// and should be read off the multiplicity table instead.
pub fn periodicity_order(w: &Weights) -> Result<u64, SpectralError> {
    require_at_most_one_two(w)?;
    Ok(w.lcm())
}

/// Order of periodicity of the Coxeter transformation of the tensor-product
/// algebra itself: `n_I` for odd `s`, `lcm(n_I, 2)` for even `s`. Requires
/// all weights at least 3.
pub fn algebra_periodicity_order(w: &Weights) -> Result<u64, SpectralError> {
    if w.count_twos() > 0 {
        return Err(SpectralError::ContainsTwo);
    }
    if w.s() % 2 == 1 {
        Ok(w.lcm())
    } else {
        checked_lcm(w.lcm(), 2).ok_or(SpectralError::Overflow)
    }
}

/// Checkable witness that the primitive `n_I`-th roots of unity occur in the
/// spectrum: `m_{n_I} > 0`. True for every multiset with at most one 2.
pub fn top_multiplicity_positive(w: &Weights) -> Result<bool, SpectralError> {
    require_at_most_one_two(w)?;
    let ce = chi_cyclo(w)?;
    Ok(!ce.multiplicity(w.lcm()).is_zero())
}

/// The gcd graph of a weight multiset together with its per-prime structure.
///
/// Vertices are the (sorted) weight entries by index; `i` and `i'` are
/// adjacent when `gcd(n_i, n_{i'}) > 1`. For each prime `p_j` dividing `n_I`
/// the prime graph restricts adjacency to divisibility by `p_j`; its unique
/// nontrivial connected component is the complete graph on the vertices
/// divisible by `p_j` when there are at least two of them, and empty
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdGraph {
    vertices: Vec<u64>,
    edges: Vec<(usize, usize)>,
    primes: Vec<u64>,
    prime_components: Vec<Vec<usize>>,
}

impl GcdGraph {
    /// The weight entries, ascending; vertex `i` is labelled `vertices()[i]`.
    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Edges `(i, i')` with `i < i'` and `gcd > 1`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Prime divisors of `n_I`, ascending (so index 0 is 2 when `n_I` is even).
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Vertex set of the nontrivial component of the `j`-th prime graph
    /// (empty when fewer than two vertices are divisible by `primes()[j]`).
    pub fn prime_component(&self, j: usize) -> &[usize] {
        &self.prime_components[j]
    }

    /// Whether vertex `i` has no neighbour in the gcd graph.
    pub fn is_isolated(&self, i: usize) -> bool {
        self.edges.iter().all(|&(a, b)| a != i && b != i)
    }

    /// Indices of isolated vertices.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.is_isolated(i))
            .collect()
    }
}

/// Build the gcd graph, all prime graphs, and their nontrivial components.
pub fn gcd_graph(w: &Weights) -> GcdGraph {
    let vertices = w.values().to_vec();
    let s = vertices.len();
    let mut edges = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if gcd(vertices[i], vertices[j]) > 1 {
                edges.push((i, j));
            }
        }
    }
    let primes = prime_divisors(w.lcm());
    let prime_components = primes
        .iter()
        .map(|&p| {
            let members: Vec<usize> = (0..s).filter(|&i| vertices[i].is_multiple_of(p)).collect();
            if members.len() >= 2 {
                members
            } else {
                Vec::new()
            }
        })
        .collect();
    GcdGraph {
        vertices,
        edges,
        primes,
        prime_components,
    }
}

/// Which clause of the eigenvalue-1 criterion forces `m_1 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingCondition {
    /// The gcd graph has an isolated vertex.
    IsolatedVertex,
    /// `n_I` is even and the even-prime component is an odd clique, disjoint
    /// from every odd-prime component, with 2-adic exponents `[1, ..., 1, e]`.
    EvenPrimePart,
}

/// The clause under which `m_1 = 0`, or `None` when 1 is an eigenvalue.
/// Requires at most one 2.
pub fn m1_vanishing_condition(w: &Weights) -> Result<Option<VanishingCondition>, SpectralError> {
    require_at_most_one_two(w)?;
    let g = gcd_graph(w);
    if !g.isolated_vertices().is_empty() {
        return Ok(Some(VanishingCondition::IsolatedVertex));
    }
    if w.lcm().is_multiple_of(2) {
        let even_part = g.prime_component(0);
        let in_odd_component =
            |v: usize| (1..g.primes().len()).any(|j| g.prime_component(j).contains(&v));
        if !even_part.is_empty()
            && even_part.len() % 2 == 1
            && even_part.iter().all(|&v| !in_odd_component(v))
        {
            let mut exps: Vec<u32> = even_part
                .iter()
                .map(|&v| valuation(g.vertices()[v], 2))
                .collect();
            exps.sort_unstable();
            // [1, ..., 1, e]: all but the largest exponent equal 1.
            if exps[..exps.len() - 1].iter().all(|&e| e == 1) {
                return Ok(Some(VanishingCondition::EvenPrimePart));
            }
        }
    }
    Ok(None)
}

/// Whether 1 is an eigenvalue of the transformation, i.e. neither clause of
/// the vanishing criterion holds. Requires at most one 2.
pub fn one_is_eigenvalue(w: &Weights) -> Result<bool, SpectralError> {
    Ok(m1_vanishing_condition(w)?.is_none())
}

/// Closed form for `m_1` when all weights are powers of one prime `p`:
/// `m_1 = sum_{j=2}^{s} (-1)^{s-j} prod_{i=1}^{j-1} (p^{e_i} - 1)` over the
/// ascending exponents. Zero for a single factor.
pub fn m1_prime_power(p: u64, exps: &[u32]) -> BigInt {
    assert!(p >= 2, "p must be a prime");
    assert!(!exps.is_empty(), "exponent list must be nonempty");
    let mut exps = exps.to_vec();
    exps.sort_unstable();
    let s = exps.len();
    let mut total = BigInt::zero();
    let mut prefix = BigInt::one();
    for j in 2..=s {
        prefix *= BigInt::from(p).pow(exps[j - 2]) - 1;
        if (s - j).is_multiple_of(2) {
            total += &prefix;
        } else {
            total -= &prefix;
        }
    }
    total
}

/// Closed form for `p^e k_{p^e}` when all weights are powers of `p` and
/// `e = max(exps)`: with `s'` exponents strictly below `e`,
/// `(prod_{e_i < e} (1 - p^{e_i})) * ((1 - p^e)^{s - s'} - 1)`.
pub fn k_top_prime_power(p: u64, exps: &[u32], e: u32) -> BigInt {
    assert!(p >= 2, "p must be a prime");
    assert!(!exps.is_empty(), "exponent list must be nonempty");
    assert_eq!(
        exps.iter().max(),
        Some(&e),
        "e must be the maximal exponent"
    );
    let below: Vec<u32> = exps.iter().copied().filter(|&x| x < e).collect();
    let at_top = (exps.len() - below.len()) as u32;
    let mut prefix = BigInt::one();
    for x in below {
        prefix *= BigInt::one() - BigInt::from(p).pow(x);
    }
    let top = (BigInt::one() - BigInt::from(p).pow(e)).pow(at_top) - 1;
    prefix * top
}

/// `gcd(s, n_1, ..., n_s)`, the witness for the self-reciprocity criterion.
pub fn self_reciprocity_gcd(w: &Weights) -> u64 {
    w.values().iter().fold(w.s() as u64, |acc, &n| gcd(acc, n))
}

/// Whether the Coxeter polynomial is self-reciprocal: exactly when
/// `gcd(s, n_1, ..., n_s)` is odd.
pub fn is_self_reciprocal(w: &Weights) -> bool {
    self_reciprocity_gcd(w) % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{chi_poly, subset_k_values};

    fn w(values: &[u64]) -> Weights {
        Weights::new(values.to_vec()).unwrap()
    }

    #[test]
    fn periodicity_order_cases() {
        assert_eq!(periodicity_order(&w(&[3, 4, 5, 6, 7])), Ok(420));
        assert_eq!(periodicity_order(&w(&[2])), Ok(2));
        assert_eq!(periodicity_order(&w(&[3])), Ok(3));
        assert_eq!(
            periodicity_order(&w(&[2, 2])),
            Err(SpectralError::TooManyTwos)
        );
    }

    #[test]
    fn algebra_periodicity_order_cases() {
        assert_eq!(algebra_periodicity_order(&w(&[3, 3, 3])), Ok(3));
        assert_eq!(algebra_periodicity_order(&w(&[3, 4])), Ok(12));
        assert_eq!(algebra_periodicity_order(&w(&[3, 5])), Ok(30));
        assert_eq!(
            algebra_periodicity_order(&w(&[2, 3])),
            Err(SpectralError::ContainsTwo)
        );
    }

    #[test]
    fn top_multiplicity_cases() {
        assert_eq!(top_multiplicity_positive(&w(&[3, 4, 5, 6, 7])), Ok(true));
        assert_eq!(top_multiplicity_positive(&w(&[2, 4, 6])), Ok(true));
        // chi_[2,2] = X - 1 has m_2 = 0, but the hypothesis already fails.
        assert_eq!(
            top_multiplicity_positive(&w(&[2, 2])),
            Err(SpectralError::TooManyTwos)
        );
    }

    #[test]
    fn gcd_graph_246() {
        let g = gcd_graph(&w(&[2, 4, 6]));
        assert_eq!(g.vertices(), &[2, 4, 6]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.primes(), &[2, 3]);
        assert_eq!(g.prime_component(0), &[0, 1, 2]);
        assert!(g.prime_component(1).is_empty()); // only one multiple of 3
        assert!(g.isolated_vertices().is_empty());
    }

    #[test]
    fn gcd_graph_34567() {
        let g = gcd_graph(&w(&[3, 4, 5, 6, 7]));
        // sorted vertices: 3,4,5,6,7 at indices 0..4
        assert_eq!(g.isolated_vertices(), vec![2, 4]); // 5 and 7
        assert_eq!(g.primes(), &[2, 3, 5, 7]);
        assert_eq!(g.prime_component(0), &[1, 3]); // 4 and 6
        assert_eq!(g.prime_component(1), &[0, 3]); // 3 and 6
        assert!(g.prime_component(2).is_empty());
        assert!(g.prime_component(3).is_empty());
    }

    #[test]
    fn gcd_graph_coprime_pair() {
        let g = gcd_graph(&w(&[5, 7]));
        assert!(g.edges().is_empty());
        assert!((0..g.primes().len()).all(|j| g.prime_component(j).is_empty()));
    }

    #[test]
    fn one_is_eigenvalue_cases() {
        assert_eq!(one_is_eigenvalue(&w(&[2, 4, 6])), Ok(false));
        assert_eq!(
            m1_vanishing_condition(&w(&[2, 4, 6])),
            Ok(Some(VanishingCondition::EvenPrimePart))
        );
        assert_eq!(one_is_eigenvalue(&w(&[2, 3, 4, 6])), Ok(true));
        assert_eq!(one_is_eigenvalue(&w(&[3, 4, 5, 6, 7])), Ok(false));
        assert_eq!(
            m1_vanishing_condition(&w(&[3, 4, 5, 6, 7])),
            Ok(Some(VanishingCondition::IsolatedVertex))
        );
        assert_eq!(one_is_eigenvalue(&w(&[2, 4, 6, 6])), Ok(true));
        assert_eq!(
            one_is_eigenvalue(&w(&[2, 2, 3])),
            Err(SpectralError::TooManyTwos)
        );
    }

    #[test]
    fn m1_prime_power_cases() {
        // p = 2, exps [1,1,e]: the exceptional vanishing case (s odd).
        assert_eq!(m1_prime_power(2, &[1, 1, 1]), BigInt::zero());
        assert_eq!(m1_prime_power(2, &[1, 1, 3]), BigInt::zero());
        assert_eq!(m1_prime_power(3, &[1, 1]), BigInt::from(2));
        assert_eq!(m1_prime_power(5, &[2]), BigInt::zero());
        assert_eq!(m1_prime_power(7, &[3]), BigInt::zero());
    }

    #[test]
    fn m1_prime_power_matches_chi_route() {
        for (p, exps) in [
            (2u64, vec![1u32, 2]),
            (2, vec![1, 1, 2]),
            (3, vec![1, 2, 2]),
            (2, vec![2, 2, 2]),
            (5, vec![1, 1]),
        ] {
            let weights = w(&exps.iter().map(|&e| p.pow(e)).collect::<Vec<_>>());
            let m1 = chi_cyclo(&weights).unwrap().multiplicity(1);
            assert_eq!(m1_prime_power(p, &exps), m1, "p={p} exps={exps:?}");
        }
    }

    #[test]
    fn k_top_prime_power_cases() {
        assert_eq!(k_top_prime_power(2, &[1, 1], 1), BigInt::zero());
        // (1-3)^1 - 1 = -3
        assert_eq!(k_top_prime_power(3, &[1], 1), BigInt::from(-3));
        // (1-2) * ((1-4)^1 - 1) = 4, i.e. k_4 = 1
        assert_eq!(k_top_prime_power(2, &[1, 2], 2), BigInt::from(4));
    }

    #[test]
    fn k_top_prime_power_matches_chi_route() {
        for (p, exps) in [
            (2u64, vec![1u32]),
            (2, vec![1, 1]),
            (2, vec![1, 2]),
            (3, vec![1, 1, 2]),
            (5, vec![1, 2, 2]),
            (2, vec![3, 3]),
        ] {
            let e = *exps.iter().max().unwrap();
            let weights = w(&exps.iter().map(|&x| p.pow(x)).collect::<Vec<_>>());
            let k = subset_k_values(&weights).unwrap();
            let top = p.pow(e);
            let expected = BigInt::from(top) * &k[&top];
            assert_eq!(
                k_top_prime_power(p, &exps, e),
                expected,
                "p={p} exps={exps:?}"
            );
        }
    }

    #[test]
    fn self_reciprocity_cases() {
        assert!(is_self_reciprocal(&w(&[3, 3, 3]))); // gcd(3,3,3,3) = 3
        assert!(!is_self_reciprocal(&w(&[2, 4, 6, 6]))); // gcd = 2
        assert!(!is_self_reciprocal(&w(&[4, 4]))); // gcd(2,4,4) = 2
        assert_eq!(self_reciprocity_gcd(&w(&[2, 4, 6, 6])), 2);
    }

    #[test]
    fn self_reciprocity_matches_polynomial() {
        for ws in [
            vec![2],
            vec![2, 2],
            vec![3, 3, 3],
            vec![4, 4],
            vec![2, 4, 6, 6],
            vec![3, 4],
            vec![2, 3, 4, 6],
        ] {
            let weights = w(&ws);
            let f = chi_poly(&weights).unwrap();
            let star = f.reciprocal().unwrap();
            assert!(star == f || star == -&f, "chi* = +-chi fails for {weights}");
            assert_eq!(star == f, is_self_reciprocal(&weights), "weights {weights}");
        }
    }

    #[test]
    fn vanishing_implies_odd_gcd_with_s() {
        // m_1 = 0 is even, so the polynomial is self-reciprocal and
        // gcd(s, n_1, ..., n_s) must be odd.
        for ws in [
            vec![2, 4, 6],
            vec![3, 4, 5, 6, 7],
            vec![2, 3, 5],
            vec![7],
            vec![5, 7],
        ] {
            let weights = w(&ws);
            if m1_vanishing_condition(&weights).unwrap().is_some() {
                assert!(is_self_reciprocal(&weights), "weights {weights}");
            }
        }
    }
}
