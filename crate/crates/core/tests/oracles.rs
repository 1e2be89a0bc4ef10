mod common;

use common::*;
use eqcoh::cyclic_cohomology::{group_cohomology, GModule};
use eqcoh::intlinalg::{cokernel, smith_normal_form};
use eqcoh::{FinAbGroup, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn z2_lattice(rng: &mut rand_chacha::ChaCha8Rng) -> (GModule, usize, usize, usize) {
    let (a, b, c) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
    let n = a + b + 2 * c;
    let mut t = IntMatrix::zeros(n, n);
    for i in 0..a {
        t.set(i, i, 1);
    }
    for i in a..a + b {
        t.set(i, i, -1);
    }
    for k in 0..c {
        let i = a + b + 2 * k;
        t.set(i, i + 1, 1);
        t.set(i + 1, i, 1);
    }
    let (p, q) = random_unimodular(rng, n, 4 * n);
    let module = GModule::new(2, &(&p * &t) * &q).unwrap();
    (module, a, b, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_matches_determinantal_divisors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(0..=4), r.gen_range(0..=4));
        let a = random_matrix(&mut r, rows, cols, 6);
        let cert = smith_normal_form(&a);
        prop_assert_eq!(cert.diagonal(), determinantal_diagonal(&a));
        prop_assert_eq!(cert.rank(), rank_q(&a));
    }

    #[test]
    fn z2_lattices_follow_the_classification(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (module, a, b, _c) = z2_lattice(&mut r);
        let t = module.action();
        let n = module.rank();
        let id = IntMatrix::identity(n);
        let plus = t + &id;
        let minus = t - &id;
        let h1_dim = (n - rank_q(&plus)) - rank_mod_p(&minus, 2);
        let h2_dim = (n - rank_q(&minus)) - rank_mod_p(&plus, 2);
        prop_assert_eq!(h1_dim, b);
        prop_assert_eq!(h2_dim, a);
        prop_assert_eq!(group_cohomology(&module, 1), FinAbGroup::elementary(2, h1_dim));
        prop_assert_eq!(group_cohomology(&module, 2), FinAbGroup::elementary(2, h2_dim));
        prop_assert_eq!(group_cohomology(&module, 0), FinAbGroup::free(n - rank_q(&minus)));
    }

    #[test]
    fn tensor_and_tor_match_hom_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut orders = Vec::new();
            let mut prod = 1u64;
            for _ in 0..r.gen_range(1..=3) {
                let o = r.gen_range(2..=12u64);
                if prod * o > 36 {
                    break;
                }
                prod *= o;
                orders.push(o);
            }
            orders
        };
        let (a, b) = (pick(&mut r), pick(&mut r));
        let ga = FinAbGroup::new(0, a.iter().copied());
        let gb = FinAbGroup::new(0, b.iter().copied());
        let profile = brute_hom_profile(&a, &b, 36);
        prop_assert_eq!(group_profile(&ga.tensor(&gb), 36), profile.clone());
        prop_assert_eq!(group_profile(&ga.tor(&gb), 36), profile);
    }

    #[test]
    fn direct_sum_matches_prime_powers(
        a in prop::collection::vec(1u64..=60, 0..4),
        b in prop::collection::vec(1u64..=60, 0..4),
    ) {
        let ga = FinAbGroup::new(0, a.iter().copied());
        let gb = FinAbGroup::new(0, b.iter().copied());
        let all: Vec<u64> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(canonical_elementary_divisors(&ga.direct_sum(&gb)), elementary_divisors(&all));
    }

    #[test]
    fn cokernel_of_square_matrix_has_order_det(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let a = random_matrix(&mut r, n, n, 5);
        let det = determinantal_diagonal(&a).into_iter().fold(BigInt::from(1), |x, y| x * y);
        let g = cokernel(&a);
        if det == BigInt::from(0) {
            prop_assert!(!g.is_finite());
        } else {
            prop_assert_eq!(BigInt::from(g.order().unwrap()), det);
        }
    }
}

#[test]
fn known_snf() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    assert_eq!(determinantal_diagonal(&a), big(&[2, 6, 12]));
    assert_eq!(smith_normal_form(&a).diagonal(), big(&[2, 6, 12]));
}

#[test]
fn hom_profile_small_cases() {
    // Hom(Z/4, Z/6) = Z/2
    assert_eq!(brute_homs(&[4], &[6]).len(), 2);
    assert_eq!(group_profile(&FinAbGroup::cyclic(2), 4), vec![1, 2, 1, 2]);
}
