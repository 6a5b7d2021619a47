//! Property-based invariants for the polynomial substrate and the
//! forward/inverse pipeline on randomly drawn weight multisets.

use num_bigint::BigInt;
use proptest::prelude::*;

use coxeterkit::*;

fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-40i64..=40, 0..10).prop_map(|cs| IntPoly::from_i64(&cs))
}

fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
    int_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Random weights with entries in [2, 12] and s <= 5, degree kept moderate so
/// a single case stays well under a second.
fn weights() -> impl Strategy<Value = Weights> {
    prop::collection::vec(2u64..=12, 1..=5)
        .prop_filter("moderate degree", |vs| {
            vs.iter().map(|&v| v - 1).product::<u64>() <= 4000
        })
        .prop_map(|vs| Weights::new(vs).unwrap())
}

fn weights_at_most_one_two() -> impl Strategy<Value = Weights> {
    weights().prop_filter("at most one 2", |w| w.count_twos() <= 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reciprocal_is_an_involution(f in nonzero_poly()) {
        let twice = f.reciprocal().unwrap().reciprocal().unwrap();
        // Reversal drops leading zeros of the reversed sequence, so the
        // involution holds up to the X-power stripped: f = X^k * g with
        // g(0) != 0 reverses to g*, and back to g.
        let k = f.coeffs().iter().take_while(|c| c == &&BigInt::from(0)).count();
        let mut shifted = vec![BigInt::from(0); k];
        shifted.extend_from_slice(twice.coeffs());
        prop_assert_eq!(IntPoly::from_coeffs(shifted), f);
    }

    #[test]
    fn substitute_negx_is_an_involution(f in int_poly()) {
        prop_assert_eq!(f.substitute_negx().substitute_negx(), f);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in int_poly(), b in nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b), Ok(a));
    }

    #[test]
    fn chi_routes_agree(w in weights()) {
        let product = chi_cyclo(&w).unwrap().to_poly().unwrap();
        prop_assert_eq!(product, chi_poly(&w).unwrap());
    }

    #[test]
    fn roundtrip_on_random_multisets(w in weights_at_most_one_two()) {
        let recovered = recover(&chi_poly(&w).unwrap()).unwrap();
        prop_assert_eq!(canonical_multiset(&recovered).unwrap(), w);
    }

    #[test]
    fn recovery_ignores_appended_two_pairs(w in weights()) {
        let base = recover(&chi_poly(&w).unwrap()).unwrap();
        let padded = w.with_appended(&[2, 2]).unwrap();
        prop_assert_eq!(recover(&chi_poly(&padded).unwrap()).unwrap(), base);
    }

    #[test]
    fn knoerrer_shift_and_periodicity(w in weights_at_most_one_two()) {
        let f = chi_poly(&w).unwrap();
        let shifted = chi_poly(&w.with_appended(&[2]).unwrap()).unwrap();
        let twisted = f.substitute_negx();
        let expected = if w.rank_is_even() { twisted } else { -&twisted };
        prop_assert_eq!(shifted, expected);
        prop_assert!(top_multiplicity_positive(&w).unwrap());
    }

    #[test]
    fn eigenvalue_one_criterion_matches_table(w in weights_at_most_one_two()) {
        use num_traits::Zero;
        let m1 = chi_cyclo(&w).unwrap().multiplicity(1);
        prop_assert_eq!(one_is_eigenvalue(&w).unwrap(), !m1.is_zero());
    }

    #[test]
    fn fiber_oracle_matches_formula(w in weights()) {
        let fiber = fiber_multiplicities(&w, DEFAULT_FIBER_CAP).unwrap();
        let formula = MultiplicityTable::from(&chi_cyclo(&w).unwrap());
        prop_assert_eq!(fiber, formula);
    }

    /// Soundness of recovery on arbitrary cyclotomic products: the pipeline
    /// either rejects the input as out-of-family or returns data whose
    /// canonical multiset regenerates the input polynomial (up to the overall
    /// sign). It never fabricates a wrong multiset.
    #[test]
    fn recovery_is_sound_on_cyclotomic_products(
        factors in prop::collection::vec((1u64..=15, 1u64..=3), 1..4),
        negate in proptest::bool::ANY,
    ) {
        let mut f = IntPoly::one();
        for &(d, m) in &factors {
            let phi = cyclotomic(d);
            for _ in 0..m {
                f = &f * &phi;
            }
        }
        if negate {
            f = -&f;
        }
        match recover(&f) {
            Err(RecoveryError::InconsistentPolynomial(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e} for {factors:?}"),
            Ok(r) => match canonical_multiset(&r) {
                Ok(c) => {
                    let regenerated = chi_poly(&c).unwrap();
                    prop_assert!(
                        regenerated == f || regenerated == -&f,
                        "recovered {c} regenerates a different polynomial for {factors:?}"
                    );
                }
                Err(RecoveryError::EmptyMultiset) => {
                    // The class of an even number of 2s: chi = X - 1.
                    let base = IntPoly::from_i64(&[-1, 1]);
                    prop_assert!(f == base || f == -&base, "empty class for {factors:?}");
                }
                Err(e) => prop_assert!(false, "unexpected error {e} for {factors:?}"),
            },
        }
    }
}
