mod common;

use lamcohom::cohomology::{apply_coboundary, cohomology_dim};
use lamcohom::constructions::{
    excision_check, mayer_vietoris_check, product_complex, suspension, vertex_selection, wedge, SuspensionBase,
    SuspensionData,
};
use lamcohom::corpus;
use lamcohom::rational::{int, rat, Rational};
use lamcohom::{CoeffKind, Cochain, DeltaComplex, FiberedComplex, PartialHolonomy, Transversal};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_base<R: Rng>(r: &mut R) -> DeltaComplex {
    match r.gen_range(0..5) {
        0 => DeltaComplex::circle(r.gen_range(1..=5)),
        1 => DeltaComplex::bouquet(r.gen_range(1..=3)),
        2 => DeltaComplex::torus(),
        3 => DeltaComplex::simplex(r.gen_range(0..=3)),
        _ => DeltaComplex::triangle(),
    }
}

/// Replaces one face map of one family by its composite with a random
/// permutation of the target base.
fn corrupt<R: Rng>(r: &mut R, c: &FiberedComplex) -> Option<FiberedComplex> {
    let n = (1..c.num_dims()).filter(|&n| !c.families(n).is_empty()).collect::<Vec<_>>().choose(r).copied()?;
    let mut fams = c.all_families().to_vec();
    let fid = r.gen_range(0..fams[n].len());
    let i = r.gen_range(0..=n);
    let face = fams[n][fid].faces[i].clone();
    let mut target = fams[n - 1][face.target].base.clone();
    target.shuffle(r);
    let base = &fams[n - 1][face.target].base;
    let perm = PartialHolonomy::new(base.iter().copied().zip(target));
    fams[n][fid].faces[i].map = face.map.then(&perm);
    Some(FiberedComplex::new(c.transversal().clone(), fams, c.regularity_bound()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_multiplies_cells_and_betti_numbers(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let base = random_base(&mut r);
        let k = r.gen_range(1..=6);
        let weights: Vec<Rational> = (0..k).map(|_| rat(r.gen_range(1..=6), r.gen_range(1..=6))).collect();
        let c = product_complex(&base, Transversal::new(weights).unwrap());
        prop_assert!(c.validate().is_empty());
        for n in 0..base.num_dims() {
            prop_assert_eq!(c.count(n), k * base.count(n));
        }
        let expected: Vec<usize> = common::delta_betti(&base).into_iter().map(|b| k * b).collect();
        prop_assert_eq!(common::betti_oracle(&c, None, common::P), expected);
    }

    #[test]
    fn wedge_adds_relative_cohomology(seed in any::<u64>()) {
        let w = corpus::random_wedge(&mut corpus::rng(seed));
        let glued = wedge(&w.f, &w.g, w.vf, w.vg, &w.gamma).unwrap();
        prop_assert!(glued.complex.validate().is_empty());
        let tf = vertex_selection(&w.f, w.vf, w.gamma.domain()).unwrap();
        let tg = vertex_selection(&w.g, w.vg, w.gamma.pairs().map(|(_, d)| d)).unwrap();
        for coeff in [CoeffKind::Q, CoeffKind::Z2] {
            for n in 1..3 {
                let lhs = cohomology_dim(&glued.complex, n, coeff, Some(&glued.glued)).unwrap();
                let a = cohomology_dim(&w.f, n, coeff, Some(&tf)).unwrap();
                let b = cohomology_dim(&w.g, n, coeff, Some(&tg)).unwrap();
                prop_assert_eq!(lhs, a + b);
            }
        }
    }

    #[test]
    fn identity_suspension_is_a_product(loops in 1usize..=3, k in 1usize..=5) {
        let weights = vec![rat(1, k as i64); k];
        let rep = vec![(0..k).collect::<Vec<_>>(); loops];
        let s = suspension(&SuspensionData::new(SuspensionBase::Bouquet { loops }, rep, weights.clone())).unwrap();
        let p = product_complex(&DeltaComplex::bouquet(loops), Transversal::new(weights).unwrap());
        prop_assert_eq!(common::betti_oracle(&s, None, common::P), common::betti_oracle(&p, None, common::P));
        for n in 0..2 {
            prop_assert_eq!(s.count(n), p.count(n));
        }
    }

    #[test]
    fn mayer_vietoris_and_excision_are_exact(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let (x, u, v) = corpus::random_mv_cover(&mut r);
        prop_assert!(mayer_vietoris_check(&x, &u, &v).unwrap().iter().all(|s| s.is_exact()));
        let (x, u, z) = corpus::random_excision(&mut r);
        prop_assert!(excision_check(&x, &u, &z).unwrap().iter().all(|e| e.equal));
    }

    #[test]
    fn valid_complexes_have_square_zero_coboundary(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let c = corpus::random_complex(&mut r);
        if let Some(bad) = corrupt(&mut r, &c) {
            let square_zero = (0..bad.num_dims().saturating_sub(2)).all(|n| {
                (0..bad.count(n)).all(|i| {
                    let mut v = vec![int(0); bad.count(n)];
                    v[i] = int(1);
                    let w = Cochain::from_vector(&bad, n, &v).unwrap();
                    apply_coboundary(&bad, &apply_coboundary(&bad, &w).unwrap()).unwrap().is_zero()
                })
            });
            if !square_zero {
                prop_assert!(!bad.validate().is_empty());
            }
        }
    }
}
