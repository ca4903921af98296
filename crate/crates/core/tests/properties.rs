use flavorkit_core::chain::{direct_sum, homology, homology_in, suspension, Completeness, Window};
use flavorkit_core::circle::{e_y, koszul_a, pinned_shift_a, s_u, Flavor};
use flavorkit_core::connsum::{case2_check, product_complex};
use flavorkit_core::exactlin::{invariant_factors, rank_over, IntMatrix, Ring};
use flavorkit_core::flavors::four_flavors;
use flavorkit_core::random::{random_complex, rng, Params};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small() -> Params {
    Params { max_rank: 4, ..Params::default() }
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariant_factors_form_a_divisor_chain(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let f = invariant_factors(&m, Ring::Integers);
        prop_assert_eq!(f.len(), rank_over(&m, Ring::Integers));
        for w in f.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(f, invariant_factors(&m.transpose(), Ring::Integers));
    }

    #[test]
    fn rank_over_a_prime_never_exceeds_rational_rank(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        prop_assert!(rank_over(&m, Ring::Prime(3)) <= rank_over(&m, Ring::Integers));
    }

    #[test]
    fn random_complexes_and_their_images_are_valid(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), &small(), "c", true, false);
        prop_assert!(c.validate().passed());
        let s = s_u(&c).unwrap();
        prop_assert!(s.validate().passed());
        let w = Window { lo: -10, hi: 10 };
        for f in Flavor::ALL {
            prop_assert!(e_y(&s, f, &w).unwrap().complex.validate().passed());
        }
    }

    #[test]
    fn suspension_shifts_homology_by_one(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), &small(), "c", true, false);
        let (s, _, _) = suspension(&c).unwrap();
        let (h, hs) = (homology(&c, None).unwrap(), homology(&s, None).unwrap());
        for (j, g) in &h.groups {
            prop_assert_eq!(hs.get(j + 1), g.clone());
        }
    }

    #[test]
    fn homology_is_additive(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (a, b) = (random_complex(&mut g, &small(), "a", false, false), random_complex(&mut g, &small(), "b", false, false));
        let (sum, _) = direct_sum(&[("a:", &a), ("b:", &b)]).unwrap();
        for j in -7..=7 {
            let expect = homology_in(&a, &[j]).unwrap().get(j).direct_sum(&homology_in(&b, &[j]).unwrap().get(j));
            prop_assert_eq!(homology_in(&sum, &[j]).unwrap().get(j), expect);
        }
    }

    #[test]
    fn fundamental_sequences_are_exact(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), &small(), "c", true, false);
        prop_assert!(four_flavors(&c, None).unwrap().passed());
    }

    #[test]
    fn minus_flavor_matches_its_pinned_shift(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed), &small(), "c", true, false);
        let r = koszul_a(&c, Flavor::Minus, None).unwrap();
        prop_assert!(r.passed(pinned_shift_a(Flavor::Minus)));
    }

    #[test]
    fn products_are_valid_and_case2_holds(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (a, b) = (random_complex(&mut g, &small(), "a", true, false), random_complex(&mut g, &small(), "b", true, false));
        prop_assert!(product_complex(&a, &b).unwrap().validate().passed());
        let w = Window { lo: -8, hi: 8 };
        prop_assert!(case2_check(&a, Flavor::Hat, &w).unwrap());
    }
}

#[test]
fn completeness_of_a_full_window_is_everywhere_safe() {
    let c = Completeness::full();
    assert!((-20..20).all(|j| c.is_safe(j)));
}
