//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use lamcohom::circle::{approximating_lengths, one_is_coboundary, zero_set, ArcSet, QuadReal};
use lamcohom::cohomology::{apply_coboundary, betti_numbers, cohomology_dim, coboundary_matrix, is_coboundary};
use lamcohom::constructions::{
    excision_check, kronecker, mayer_vietoris_check, product_complex, suspension, vertex_selection, wedge,
    SuspensionBase, SuspensionData,
};
use lamcohom::corpus::{self, random_complex};
use lamcohom::exact::pair_sequence_check;
use lamcohom::geometry::prism::{prism_decompose, telescoping_defect};
use lamcohom::geometry::regions::{all_interiors_disjoint, contained_in_inputs, pairwise_attached};
use lamcohom::geometry::{attach_decompose, factorial, simplex_volume_sum, triangulate};
use lamcohom::homotopy::{cylinder_homotopy, homotopy_operator};
use lamcohom::l2::{inner_product_f64, l2_betti, l2_betti_f64, L2Space};
use lamcohom::rational::{int, rat, Rational};
use lamcohom::subdivide::barycentric_subdivide;
use lamcohom::{CoeffKind, Cochain, DeltaComplex, Field, Transversal, Z2};
use rand::Rng;

use common::{apply_oracle, betti_oracle, delta_betti, grid_union_volume, P};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn err(e: lamcohom::Error) -> String {
    e.to_string()
}

fn coboundary_squares_to_zero() -> Outcome {
    let start = Instant::now();
    let mut r = corpus::rng(1);
    let mut checked = 0;
    for case in 0..100 {
        let c = random_complex(&mut r);
        for n in 0..c.num_dims().saturating_sub(2) {
            let dd = coboundary_matrix(&c, n + 1).mul(&coboundary_matrix(&c, n));
            ensure(dd.is_zero(), || format!("case {case}: δ{}δ{n} has nonzero integer entries", n + 1))?;
            let d2 = lamcohom::cohomology::coboundary_dense::<Z2>(&c, n + 1)
                .mul(&lamcohom::cohomology::coboundary_dense::<Z2>(&c, n));
            ensure(d2.is_zero(), || format!("case {case}: δ² ≠ 0 over Z2 in degree {n}"))?;
            let omega: Vec<i64> = (0..c.count(n)).map(|_| r.gen_range(-5..=5)).collect();
            let q = Cochain::from_vector(&c, n, &omega.iter().map(|&x| int(x)).collect::<Vec<_>>()).map_err(err)?;
            let qq = apply_coboundary(&c, &apply_coboundary(&c, &q).map_err(err)?).map_err(err)?;
            ensure(qq.is_zero(), || format!("case {case}: δδω ≠ 0 over Q in degree {n}"))?;
            let z = Cochain::from_vector(&c, n, &omega.iter().map(|&x| Z2(x.rem_euclid(2) == 1)).collect::<Vec<_>>())
                .map_err(err)?;
            let zz = apply_coboundary(&c, &apply_coboundary(&c, &z).map_err(err)?).map_err(err)?;
            ensure(zz.is_zero(), || format!("case {case}: δδω ≠ 0 over Z2 in degree {n}"))?;
            let once = apply_oracle(&c, n, &omega);
            ensure(apply_oracle(&c, n + 1, &once).iter().all(|&x| x == 0), || format!("case {case}: oracle δδω ≠ 0"))?;
            let lib: Vec<Rational> = apply_coboundary(&c, &q).map_err(err)?.to_vector();
            ensure(lib == once.iter().map(|&x| int(x)).collect::<Vec<_>>(), || {
                format!("case {case}: δω disagrees with direct evaluation")
            })?;
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2}s"))?;
    Ok(format!("100 complexes, {checked} degree checks, {secs:.2}s"))
}

fn euler_identity() -> Outcome {
    let mut r = corpus::rng(1);
    for case in 0..100 {
        let c = random_complex(&mut r);
        let betti = betti_numbers(&c, CoeffKind::Q, None).map_err(err)?;
        ensure(betti == betti_oracle(&c, None, P), || format!("case {case}: Betti numbers disagree with the oracle"))?;
        let chi: i64 = betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        ensure(chi == c.euler_characteristic(), || {
            format!("case {case}: χ from cohomology {chi} ≠ χ from counts {}", c.euler_characteristic())
        })?;
    }
    Ok("100 complexes".into())
}

fn product_example() -> Outcome {
    let t = Transversal::new(vec![rat(1, 2), rat(1, 3)]).map_err(err)?;
    let c = product_complex(&DeltaComplex::circle(3), t);
    for n in 0..2 {
        let exact = l2_betti(&c, n).map_err(err)?;
        ensure(exact == rat(5, 6), || format!("b{n} = {exact}, expected 5/6"))?;
        let float = l2_betti_f64(&c, n, 1e-9).map_err(err)?;
        ensure((float - 5.0 / 6.0).abs() < 1e-8, || format!("float b{n} = {float}"))?;
    }
    let mut r = corpus::rng(3);
    for case in 0..20 {
        let base = match r.gen_range(0..4) {
            0 => DeltaComplex::circle(r.gen_range(1..=5)),
            1 => DeltaComplex::bouquet(r.gen_range(1..=3)),
            2 => DeltaComplex::torus(),
            _ => DeltaComplex::sphere2(),
        };
        let k = r.gen_range(1..=8);
        let c = product_complex(&base, Transversal::unit(k));
        let betti = betti_numbers(&c, CoeffKind::Q, None).map_err(err)?;
        let expected: Vec<usize> = delta_betti(&base).into_iter().map(|b| k * b).collect();
        ensure(betti == expected, || format!("case {case}: {betti:?} ≠ |T|·b(C) = {expected:?}"))?;
    }
    Ok("b0 = b1 = 5/6 exact and float; 20 random products".into())
}

fn brute_force(q: usize, p: usize) -> bool {
    (0u32..1 << q).any(|mask| (0..q).all(|t| ((mask >> ((t + p) % q)) ^ (mask >> t)) & 1 == 1))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn kronecker_model() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for q in 1..=20usize {
        for p in 0..q.max(2) {
            if gcd(q, p) != 1 {
                continue;
            }
            let answer = one_is_coboundary(q, p as i64).map_err(err)?.is_coboundary();
            ensure(answer == (q % 2 == 0), || format!("q={q} p={p}: got {answer}"))?;
            if q <= 12 {
                ensure(brute_force(q, p) == answer, || format!("q={q} p={p}: brute force disagrees"))?;
            }
            let data = SuspensionData::rotations(SuspensionBase::Bouquet { loops: 1 }, q, &[p as i64]);
            let s = suspension(&data).map_err(err)?;
            let one = Cochain::constant(&s, 1, Z2::one());
            let flagged = !is_coboundary(&s, &one).map_err(err)?;
            ensure(flagged == (q % 2 == 1), || format!("q={q} p={p}: suspension H¹ class of ω≡1 misreported"))?;
            let k = kronecker(q, p as i64).map_err(err)?;
            ensure(cohomology_dim(&k, 1, CoeffKind::Z2, None).map_err(err)? == 1, || format!("q={q}: H¹ ≠ Z2"))?;
            pairs += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{pairs} coprime pairs, {secs:.2}s"))
}

/// `B` with `R₋α B = Bᶜ` for `α = j/(2k)`, `j` odd.
fn forced_complement<R: Rng>(r: &mut R) -> (ArcSet, QuadReal) {
    let k = r.gen_range(1..=5i64);
    let j = 2 * r.gen_range(0..k) + 1;
    let slot = QuadReal::from_ratio(1, 2 * k);
    let den = 2 * k * 12;
    let a0 = r.gen_range(0..12);
    let a1 = r.gen_range(a0 + 1..=12);
    let a = ArcSet::arc(QuadReal::from_ratio(a0, den), QuadReal::from_ratio(a1, den));
    let not_a = a.complement().and(&ArcSet::arc(QuadReal::zero(), slot.clone()));
    let b = (0..2 * k).fold(ArcSet::empty(), |acc, i| {
        let piece = if i % 2 == 0 { &a } else { &not_a };
        acc.or(&piece.rotate(&QuadReal::from_ratio(i, 2 * k)))
    });
    (b, QuadReal::from_ratio(j, 2 * k))
}

fn irrational_statement() -> Outcome {
    let mut r = corpus::rng(5);
    let alpha = QuadReal::golden();
    for case in 0..50 {
        let b = corpus::random_proper_arcs(&mut r, 5);
        ensure(b.rotate(&-&alpha) != b.complement(), || format!("case {case}: R₋αB = Bᶜ for irrational α"))?;
    }
    for case in 0..50 {
        let (b, a) = forced_complement(&mut r);
        ensure(b.rotate(&-&a) == b.complement(), || format!("forced case {case}: construction failed"))?;
        let two = &a + &a;
        ensure(b.rotate(&-&two) == b, || format!("forced case {case}: R₋₂αB ≠ B"))?;
    }
    Ok("50 irrational cases, 50 forced rational cases".into())
}

fn wedge_identity() -> Outcome {
    let mut r = corpus::rng(6);
    for case in 0..20 {
        let w = corpus::random_wedge(&mut r);
        let glued = wedge(&w.f, &w.g, w.vf, w.vg, &w.gamma).map_err(err)?;
        let tf = vertex_selection(&w.f, w.vf, w.gamma.domain()).map_err(err)?;
        let tg = vertex_selection(&w.g, w.vg, w.gamma.pairs().map(|(_, d)| d)).map_err(err)?;
        for n in 1..3 {
            let lhs = cohomology_dim(&glued.complex, n, CoeffKind::Q, Some(&glued.glued)).map_err(err)?;
            let a = cohomology_dim(&w.f, n, CoeffKind::Q, Some(&tf)).map_err(err)?;
            let b = cohomology_dim(&w.g, n, CoeffKind::Q, Some(&tg)).map_err(err)?;
            ensure(lhs == a + b, || format!("case {case}: H{n}: {lhs} ≠ {a} + {b}"))?;
        }
    }
    Ok("20 random wedge pairs, degrees 1 and 2".into())
}

fn hodge_suite() -> Outcome {
    let mut r = corpus::rng(7);
    let mut worst: f64 = 0.0;
    for case in 0..40 {
        let c = random_complex(&mut r);
        let space = L2Space::new(&c).map_err(err)?;
        let oracle = betti_oracle(&c, None, P);
        let sd = barycentric_subdivide(&c);
        for n in 0..c.num_dims() {
            let omega: Vec<f64> = (0..c.count(n)).map(|_| r.gen_range(-3..=3) as f64).collect();
            let omega = Cochain::from_vector(&c, n, &omega).map_err(err)?;
            let h = space.hodge_decompose_f64(&omega).map_err(err)?;
            let sum = h.harmonic.add(&h.exact).add(&h.coexact);
            let mut res = sum.sub(&omega).values().iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            for (x, y) in [(&h.harmonic, &h.exact), (&h.harmonic, &h.coexact), (&h.exact, &h.coexact)] {
                res = res.max(inner_product_f64(&c, x, y).map_err(err)?.abs());
            }
            let d = apply_coboundary_f64(&c, &h.harmonic);
            res = res.max(d.iter().fold(0.0, |m, x| m.max(x.abs())));
            worst = worst.max(res);
            ensure(res < 1e-8, || format!("case {case} degree {n}: residual {res:e}"))?;

            let report = space.report(n, 1e-9);
            ensure(report.kernel_dim == oracle[n], || {
                format!("case {case}: dim ker Δ{n} = {} but rank H{n}(Q) = {}", report.kernel_dim, oracle[n])
            })?;
            ensure(report.harmonic_basis.len() == oracle[n], || format!("case {case}: float kernel of Δ{n} has wrong size"))?;

            let before = l2_betti(&c, n).map_err(err)?;
            let after = l2_betti(&sd, n).map_err(err)?;
            ensure(before == after, || format!("case {case}: b{n} changes under subdivision: {before} → {after}"))?;
        }
    }
    Ok(format!("40 complexes, worst residual {worst:.1e}"))
}

/// `δ` on a float cochain, through the exact integer matrix.
fn apply_coboundary_f64(c: &lamcohom::FiberedComplex, omega: &Cochain<f64>) -> Vec<f64> {
    let n = omega.degree();
    if n + 1 >= c.num_dims() {
        return Vec::new();
    }
    coboundary_matrix(c, n).mul_vec(&omega.to_vector())
}

fn sequences() -> Outcome {
    let mut r = corpus::rng(8);
    for case in 0..40 {
        let (x, u, v) = corpus::random_mv_cover(&mut r);
        let reports = mayer_vietoris_check(&x, &u, &v).map_err(err)?;
        ensure(reports.iter().all(|s| s.is_exact()), || format!("MV case {case} not exact"))?;

        let (x, a) = corpus::random_pair(&mut r);
        let reports = pair_sequence_check(&x, &a).map_err(err)?;
        ensure(reports.iter().all(|s| s.is_exact()), || format!("pair case {case} not exact"))?;
        let rel = betti_numbers(&x, CoeffKind::Q, Some(&a)).map_err(err)?;
        ensure(rel == betti_oracle(&x, Some(&a), P), || format!("pair case {case}: relative dims disagree with oracle"))?;

        let (x, u, z) = corpus::random_excision(&mut r);
        let reports = excision_check(&x, &u, &z).map_err(err)?;
        ensure(reports.iter().all(|e| e.equal), || format!("excision case {case}: {reports:?}"))?;
        let z2 = betti_oracle(&x, Some(&u), 2);
        let lib = &reports.iter().find(|e| e.coeff == CoeffKind::Z2).unwrap().full;
        ensure(lib[..z2.len()] == z2[..], || format!("excision case {case}: Z2 dims disagree with oracle"))?;
    }
    Ok("40 instances each".into())
}

fn homotopies() -> Outcome {
    let k = product_complex(&DeltaComplex::circle(3), Transversal::unit(2));
    let (prism, f, g, h) = cylinder_homotopy(&k);
    let cert = homotopy_operator(&k, &prism.complex, &f, &g, &prism, &h).map_err(err)?;
    ensure(cert.certified(), || "circle into cylinder: δP + Pδ ≠ g* − f*".into())?;
    let kr = kronecker(5, 2).map_err(err)?;
    let (prism, f, g, h) = cylinder_homotopy(&kr);
    ensure(homotopy_operator(&kr, &prism.complex, &f, &g, &prism, &h).map_err(err)?.certified(), || {
        "Kronecker cylinder".into()
    })?;
    let mut r = corpus::rng(9);
    let mut kinds = Vec::new();
    for case in 0..10 {
        let hi = corpus::random_homotopy(&mut r);
        let cert = homotopy_operator(&hi.k, &hi.l, &hi.f, &hi.g, &hi.prism, &hi.h).map_err(err)?;
        ensure(cert.certified(), || format!("case {case} ({}) fails", hi.kind))?;
        kinds.push(hi.kind);
    }
    kinds.sort();
    kinds.dedup();
    Ok(format!("circle cylinder + 10 random ({})", kinds.join(", ")))
}

fn geometry() -> Outcome {
    let mut r = corpus::rng(10);
    let mut simplices = 0;
    for case in 0..50 {
        let boxes = corpus::random_boxes(&mut r);
        let d = boxes[0].ambient_dim;
        let volume = grid_union_volume(&boxes, d);
        let pieces = attach_decompose(&boxes).map_err(err)?;
        ensure(pairwise_attached(&pieces).map_err(err)?, || format!("case {case}: pieces not attached"))?;
        ensure(contained_in_inputs(&pieces, &boxes).map_err(err)?, || format!("case {case}: piece leaves the union"))?;
        let total = pieces.iter().try_fold(int(0), |acc, p| p.volume().map(|v| acc + v)).map_err(err)?;
        ensure(total == volume, || format!("case {case}: piece volume {total} ≠ union volume {volume}"))?;
        let tri = triangulate(&pieces).map_err(err)?;
        ensure(simplex_volume_sum(&tri) == volume, || format!("case {case}: triangulation volume"))?;
        ensure(all_interiors_disjoint(&tri), || format!("case {case}: overlapping simplices"))?;
        simplices += tri.len();
    }
    for n in 0..=3 {
        ensure(telescoping_defect(n).is_empty(), || format!("prism telescoping fails for n = {n}"))?;
        let vol = prism_decompose(n).iter().fold(int(0), |acc, (s, _)| acc + s.volume());
        ensure(vol == int(1) / factorial(n), || format!("prism volume for n = {n}"))?;
    }
    Ok(format!("50 unions, {simplices} simplices; telescoping n ≤ 3"))
}

fn zero_sets() -> Outcome {
    let mut r = corpus::rng(11);
    let mut min_len = f64::INFINITY;
    for case in 0..30 {
        let (bs, alphas) = corpus::random_arc_family(&mut r);
        let z = zero_set(&bs, &alphas).map_err(err)?.length();
        ensure(z > QuadReal::zero(), || format!("case {case}: zero set has length 0"))?;
        min_len = min_len.min(z.to_f64());
        let levels = 16;
        let lens = approximating_lengths(&bs, &alphas, levels).map_err(err)?;
        let m = bs.len() as i64;
        for (i, l) in lens.iter().enumerate() {
            let n = i as i64 + 1;
            let bound = QuadReal::from_ratio(2 * m, 1 << n);
            let gap = l - &z;
            ensure(gap.clone().max(-&gap) <= bound, || format!("case {case}: level {n} misses the 2^-n bound"))?;
        }
    }
    Ok(format!("30 families, min length(Z) = {min_len:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("δ² = 0 over Z2 and Q", coboundary_squares_to_zero),
        ("Euler characteristic identity", euler_identity),
        ("product example", product_example),
        ("Kronecker model", kronecker_model),
        ("exact irrational rotation statement", irrational_statement),
        ("wedge isomorphism", wedge_identity),
        ("Hodge suite", hodge_suite),
        ("Mayer-Vietoris, pair and excision", sequences),
        ("homotopy operator", homotopies),
        ("geometry", geometry),
        ("zero sets", zero_sets),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
