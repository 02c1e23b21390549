mod common;

use lamcohom::cohomology::{apply_coboundary, betti_numbers, coboundary_dense, coboundary_matrix, cup_product};
use lamcohom::corpus;
use lamcohom::exact::pair_sequence_check;
use lamcohom::homotopy::{homotopy_operator, induced_maps_agree};
use lamcohom::rational::{int, Rational};
use lamcohom::subdivide::barycentric_subdivide;
use lamcohom::{CoeffKind, Cochain, FiberedComplex, Field, Z2};
use proptest::prelude::*;
use rand::Rng;

fn random_cochain<F: Field, R: Rng>(r: &mut R, c: &FiberedComplex, n: usize, lift: impl Fn(i64) -> F) -> Cochain<F> {
    let v: Vec<F> = (0..c.count(n)).map(|_| lift(r.gen_range(-3..=3))).collect();
    Cochain::from_vector(c, n, &v).unwrap()
}

fn q(x: i64) -> Rational {
    int(x)
}

fn z2(x: i64) -> Z2 {
    Z2(x.rem_euclid(2) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(seed in any::<u64>()) {
        let c = corpus::random_complex(&mut corpus::rng(seed));
        for n in 0..c.num_dims() {
            prop_assert!(coboundary_matrix(&c, n + 1).mul(&coboundary_matrix(&c, n)).is_zero());
            prop_assert!(coboundary_dense::<Z2>(&c, n + 1).mul(&coboundary_dense::<Z2>(&c, n)).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches_cohomology(seed in any::<u64>()) {
        let c = corpus::random_complex(&mut corpus::rng(seed));
        let b = betti_numbers(&c, CoeffKind::Q, None).unwrap();
        let chi: i64 = b.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
        prop_assert_eq!(b, common::betti_oracle(&c, None, common::P));
    }

    #[test]
    fn coboundary_commutes_with_saturated_restriction(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let c = corpus::random_complex(&mut r);
        let leaves = c.leaf_decomposition();
        let atoms: Vec<usize> = leaves.iter().filter(|_| r.gen_bool(0.5)).flatten().copied().collect();
        let restrict_all = |w: &Cochain<Rational>| {
            (0..c.families(w.degree()).len()).fold(w.clone(), |acc, f| acc.restrict(&c, f, &atoms))
        };
        for n in 0..c.num_dims().saturating_sub(1) {
            let w = random_cochain(&mut r, &c, n, q);
            let lhs = apply_coboundary(&c, &restrict_all(&w)).unwrap();
            let rhs = restrict_all(&apply_coboundary(&c, &w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_product_leibniz(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let c = corpus::random_complex(&mut r);
        let dims = c.num_dims();
        for p in 0..dims {
            for k in 0..dims - p {
                if p + k + 1 >= dims {
                    continue;
                }
                let (w, t) = (random_cochain(&mut r, &c, p, q), random_cochain(&mut r, &c, k, q));
                let lhs = apply_coboundary(&c, &cup_product(&c, &w, &t).unwrap()).unwrap();
                let a = cup_product(&c, &apply_coboundary(&c, &w).unwrap(), &t).unwrap();
                let b = cup_product(&c, &w, &apply_coboundary(&c, &t).unwrap()).unwrap();
                let sign = if p % 2 == 0 { int(1) } else { int(-1) };
                prop_assert_eq!(lhs, a.add(&b.scale(&sign)));

                let (w, t) = (random_cochain(&mut r, &c, p, z2), random_cochain(&mut r, &c, k, z2));
                let lhs = apply_coboundary(&c, &cup_product(&c, &w, &t).unwrap()).unwrap();
                let a = cup_product(&c, &apply_coboundary(&c, &w).unwrap(), &t).unwrap();
                let b = cup_product(&c, &w, &apply_coboundary(&c, &t).unwrap()).unwrap();
                prop_assert_eq!(lhs, a.add(&b));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cohomology_survives_subdivision(seed in any::<u64>()) {
        let c = corpus::random_complex(&mut corpus::rng(seed));
        let sd = barycentric_subdivide(&c);
        prop_assert!(sd.validate().is_empty());
        for coeff in [CoeffKind::Q, CoeffKind::Z2] {
            prop_assert_eq!(betti_numbers(&c, coeff, None).unwrap(), betti_numbers(&sd, coeff, None).unwrap());
        }
    }

    #[test]
    fn pair_sequences_are_exact(seed in any::<u64>()) {
        let (c, a) = corpus::random_pair(&mut corpus::rng(seed));
        for report in pair_sequence_check(&c, &a).unwrap() {
            prop_assert!(report.is_exact(), "{:?}", report.first_failure());
        }
    }

    #[test]
    fn homotopic_maps_induce_equal_maps(seed in any::<u64>()) {
        let h = corpus::random_homotopy(&mut corpus::rng(seed));
        let cert = homotopy_operator(&h.k, &h.l, &h.f, &h.g, &h.prism, &h.h).unwrap();
        prop_assert!(cert.certified());
        for m in 0..h.k.num_dims() {
            prop_assert!(induced_maps_agree(&h.k, &h.l, &cert, m).unwrap());
        }
    }
}
