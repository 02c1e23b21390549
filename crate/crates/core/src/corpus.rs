//! Seeded random instances for property checks and the acceptance suite.
//!
//! Every generator takes a caller-owned RNG so runs are reproducible from a
//! seed via [`rng`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circle::{ArcSet, QuadReal};
use crate::complex::{AtomId, FamilyId, FiberedComplex, Instance, PartialHolonomy, Subcomplex, Transversal, UnionFind};
use crate::constructions::{flat_bundle, kronecker, suspension, SuspensionBase, SuspensionData};
use crate::delta::DeltaComplex;
use crate::geometry::LinearRegion;
use crate::homotopy::{cylinder_homotopy, Prism, SimplicialMap};
use crate::rational::{int, rat, Rational};

pub const MAX_ATOMS: usize = 8;
pub const MAX_FAMILIES: usize = 5;
pub const MAX_DIMS: usize = 3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_permutation<R: Rng>(rng: &mut R, k: usize) -> Vec<AtomId> {
    let mut p: Vec<AtomId> = (0..k).collect();
    p.shuffle(rng);
    p
}

fn power(p: &[AtomId], e: usize) -> Vec<AtomId> {
    (0..p.len()).map(|mut x| {
        for _ in 0..e {
            x = p[x];
        }
        x
    })
    .collect()
}

/// Random ordered simplicial complex on at most four vertices with at most
/// five cells per dimension.
fn random_simplicial<R: Rng>(rng: &mut R) -> DeltaComplex {
    loop {
        let nv = rng.gen_range(1..=4usize);
        let count = rng.gen_range(1..=3usize);
        let maximal: Vec<Vec<usize>> = (0..count)
            .map(|_| {
                let size = rng.gen_range(2..=3usize).min(nv);
                let mut vs: Vec<usize> = (0..nv).collect();
                vs.shuffle(rng);
                vs.truncate(size);
                vs
            })
            .collect();
        let c = DeltaComplex::from_simplices(&maximal);
        if (0..c.num_dims()).all(|n| c.count(n) <= MAX_FAMILIES) {
            return c;
        }
    }
}

fn random_base<R: Rng>(rng: &mut R) -> DeltaComplex {
    match rng.gen_range(0..5) {
        0 => DeltaComplex::circle(rng.gen_range(1..=5)),
        1 => DeltaComplex::bouquet(rng.gen_range(1..=3)),
        _ => random_simplicial(rng),
    }
}

/// Edge transports: a gauge `π_w ∘ π_v⁻¹` on edges lying in a triangle (so the
/// bundle is flat), arbitrary permutations on the others.
fn edge_transports<R: Rng>(rng: &mut R, base: &DeltaComplex, k: usize) -> Vec<Vec<AtomId>> {
    let gauge: Vec<Vec<AtomId>> = (0..base.count(0)).map(|_| random_permutation(rng, k)).collect();
    let mut in_triangle = vec![false; base.count(1)];
    if base.num_dims() > 2 {
        for t in 0..base.count(2) {
            for &e in base.faces(2, t) {
                in_triangle[e] = true;
            }
        }
    }
    (0..base.count(1))
        .map(|e| {
            if !in_triangle[e] {
                return random_permutation(rng, k);
            }
            // face 0 is the head, face 1 the tail
            let head = &gauge[base.faces(1, e)[0]];
            let tail = &gauge[base.faces(1, e)[1]];
            let mut tail_inv = vec![0; k];
            for (a, &b) in tail.iter().enumerate() {
                tail_inv[b] = a;
            }
            (0..k).map(|a| head[tail_inv[a]]).collect()
        })
        .collect()
}

fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=6))
}

/// Leaf-constant random positive weights.
pub fn randomize_weights<R: Rng>(rng: &mut R, c: &FiberedComplex) -> FiberedComplex {
    let leaf = c.leaf_of_atoms();
    let per_leaf: Vec<Rational> = (0..=leaf.iter().copied().max().unwrap_or(0)).map(|_| random_weight(rng)).collect();
    c.with_weights(leaf.iter().map(|&l| per_leaf[l].clone()).collect()).expect("weights match atoms")
}

/// Face-closed sub-selection generated by a random set of instances.
pub fn random_closure<R: Rng>(rng: &mut R, c: &FiberedComplex, density: f64) -> Subcomplex {
    let picks: Vec<Instance> =
        (0..c.num_dims()).flat_map(|n| c.instances(n)).filter(|_| rng.gen_bool(density)).collect();
    Subcomplex::closure(c, picks).expect("instances exist")
}

/// A valid fibered complex with at most three dimensions, five families per
/// dimension and eight atoms, and leaf-constant weights.
pub fn random_complex<R: Rng>(rng: &mut R) -> FiberedComplex {
    let k = rng.gen_range(1..=MAX_ATOMS);
    let c = match rng.gen_range(0..6) {
        0 => {
            let sigma = random_permutation(rng, k);
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let data = SuspensionData::new(SuspensionBase::Torus, vec![power(&sigma, i), power(&sigma, j)], vec![int(1); k]);
            suspension(&data).expect("commuting permutations")
        }
        1 => kronecker(k, rng.gen_range(0..k as i64)).expect("positive size"),
        _ => {
            let base = random_base(rng);
            let perms = edge_transports(rng, &base, k);
            flat_bundle(&base, &perms, Transversal::unit(k)).expect("gauge transports are flat")
        }
    };
    let c = if rng.gen_bool(0.4) {
        let sub = random_closure(rng, &c, 0.6);
        if sub.is_empty() {
            c
        } else {
            sub.extract(&c).expect("face-closed").0
        }
    } else {
        c
    };
    randomize_weights(rng, &c)
}

/// A complex paired with a random face-closed subcomplex.
pub fn random_pair<R: Rng>(rng: &mut R) -> (FiberedComplex, Subcomplex) {
    let c = random_complex(rng);
    let a = {
        let density = rng.gen_range(0.1..0.7);
        random_closure(rng, &c, density)
    };
    (c, a)
}

/// `U` a random closure, `V` the closure of everything outside `U`.
pub fn random_mv_cover<R: Rng>(rng: &mut R) -> (FiberedComplex, Subcomplex, Subcomplex) {
    let c = random_complex(rng);
    let u = {
        let density = rng.gen_range(0.1..0.7);
        random_closure(rng, &c, density)
    };
    let rest: Vec<Instance> = (0..c.num_dims()).flat_map(|n| c.instances(n)).filter(|&i| !u.contains(i)).collect();
    let v = Subcomplex::closure(&c, rest).expect("instances exist");
    (c, u, v)
}

/// `Z` the star of some vertex instances, `U` the closure of `Z` plus extras.
pub fn random_excision<R: Rng>(rng: &mut R) -> (FiberedComplex, Subcomplex, Subcomplex) {
    let c = random_complex(rng);
    let mut verts = c.instances(0);
    verts.shuffle(rng);
    verts.truncate(rng.gen_range(0..=2.min(verts.len())));
    let z = Subcomplex::star(&c, verts).expect("instances exist");
    let extra = random_closure(rng, &c, 0.2);
    let u = Subcomplex::closure(&c, z.instances()).expect("instances exist").union(&extra);
    (c, u, z)
}

/// Inputs for the wedge identity: two complexes, vertex families and a gluing.
#[derive(Debug, Clone)]
pub struct WedgeInstance {
    pub f: FiberedComplex,
    pub g: FiberedComplex,
    pub vf: FamilyId,
    pub vg: FamilyId,
    pub gamma: PartialHolonomy,
}

pub fn random_wedge<R: Rng>(rng: &mut R) -> WedgeInstance {
    let f = random_complex(rng);
    let g = random_complex(rng);
    let vf = rng.gen_range(0..f.families(0).len());
    let vg = rng.gen_range(0..g.families(0).len());
    let mut src: Vec<AtomId> = f.family(0, vf).base.clone();
    let mut dst: Vec<AtomId> = g.family(0, vg).base.clone();
    src.shuffle(rng);
    dst.shuffle(rng);
    let m = rng.gen_range(0..=src.len().min(dst.len()));
    let gamma = PartialHolonomy::new(src.into_iter().zip(dst).take(m));
    let (lf, lg) = (f.leaf_of_atoms(), g.leaf_of_atoms());
    let nf = lf.iter().map(|&l| l + 1).max().unwrap_or(0);
    let ng = lg.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut class = UnionFind::new(nf + ng);
    for (s, d) in gamma.pairs() {
        class.union(lf[s], nf + lg[d]);
    }
    let w: Vec<Rational> = (0..nf + ng).map(|_| random_weight(rng)).collect();
    let mut weight = |l: usize| w[class.find(l)].clone();
    let wf: Vec<Rational> = lf.iter().map(|&l| weight(l)).collect();
    let wg: Vec<Rational> = lg.iter().map(|&l| weight(nf + l)).collect();
    let f = f.with_weights(wf).expect("weights match atoms");
    let g = g.with_weights(wg).expect("weights match atoms");
    WedgeInstance { f, g, vf, vg, gamma }
}

/// A simplicial homotopy `h: K × [0,1] → L` from `f` to `g`.
#[derive(Debug, Clone)]
pub struct HomotopyInstance {
    pub kind: &'static str,
    pub k: FiberedComplex,
    pub l: FiberedComplex,
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub prism: Prism,
    pub h: SimplicialMap,
}

fn small_complex<R: Rng>(rng: &mut R) -> FiberedComplex {
    loop {
        let c = random_complex(rng);
        if c.num_dims() <= 2 || rng.gen_bool(0.3) {
            return c;
        }
    }
}

pub fn random_homotopy<R: Rng>(rng: &mut R) -> HomotopyInstance {
    let k = small_complex(rng);
    let (prism, f, g, h) = cylinder_homotopy(&k);
    match rng.gen_range(0..4) {
        0 => HomotopyInstance { kind: "cylinder", l: prism.complex.clone(), k, f, g, prism, h },
        1 => {
            let id = SimplicialMap::identity(&k);
            let h = prism.projection();
            HomotopyInstance { kind: "projection", l: k.clone(), k, f: id.clone(), g: id, prism, h }
        }
        e => {
            let end = prism.inclusion(&k, u8::from(e == 3));
            let h = prism.projection().then(&end);
            let name = if e == 3 { "collapse to top" } else { "collapse to bottom" };
            HomotopyInstance { kind: name, l: prism.complex.clone(), f: end.clone(), g: end, k, prism, h }
        }
    }
}

/// Union of one to four integer boxes in `[0,4]^d`, `d ∈ 1..=3`.
pub fn random_boxes<R: Rng>(rng: &mut R) -> Vec<LinearRegion> {
    let d = rng.gen_range(1..=3usize);
    (0..rng.gen_range(1..=4))
        .map(|_| {
            let (lo, hi): (Vec<Rational>, Vec<Rational>) = (0..d)
                .map(|_| {
                    let a = rng.gen_range(0..4i64);
                    let b = rng.gen_range(a + 1..=4);
                    (int(a), int(b))
                })
                .unzip();
            LinearRegion::cuboid(&lo, &hi).expect("nonempty box")
        })
        .collect()
}

/// A random irrational element `a + b√d` of `[0,1)`, `b ≠ 0`.
pub fn random_irrational<R: Rng>(rng: &mut R, d: u32) -> QuadReal {
    let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=12));
    let mut b = 0;
    while b == 0 {
        b = rng.gen_range(-6..=6);
    }
    let b = rat(b, rng.gen_range(1..=12));
    QuadReal::new(a, b, d).expect("square-free radicand").frac()
}

/// Random arc set with one to three arcs with rational endpoints of
/// denominator at most 12.
pub fn random_arcs<R: Rng>(rng: &mut R) -> ArcSet {
    let n = rng.gen_range(1..=3);
    ArcSet::from_arcs((0..n).map(|_| {
        let den = rng.gen_range(2..=12);
        let lo = rng.gen_range(0..den);
        let len = rng.gen_range(1..den);
        (QuadReal::from_ratio(lo, den), QuadReal::from_ratio(lo + len, den))
    }))
}

/// Nonempty proper arc set, endpoints in `ℚ` or `ℚ(√d)`.
pub fn random_proper_arcs<R: Rng>(rng: &mut R, d: u32) -> ArcSet {
    loop {
        let a = if rng.gen_bool(0.5) {
            random_arcs(rng)
        } else {
            let lo = random_irrational(rng, d);
            let len = QuadReal::from_ratio(rng.gen_range(1..12), 12);
            ArcSet::arc(lo.clone(), &lo + &len).or(&random_arcs(rng))
        };
        if !a.is_empty() && !a.is_full() {
            return a;
        }
    }
}

/// Up to three arc sets with pairwise distinct irrational angles in a
/// common `ℚ(√d)`, `d ∈ {2, 3, 5}`.
pub fn random_arc_family<R: Rng>(rng: &mut R) -> (Vec<ArcSet>, Vec<QuadReal>) {
    let d = *[2u32, 3, 5].choose(rng).expect("nonempty");
    let n = rng.gen_range(1..=3);
    let mut angles: Vec<QuadReal> = Vec::new();
    while angles.len() < n {
        let a = random_irrational(rng, d);
        if !angles.contains(&a) {
            angles.push(a);
        }
    }
    ((0..n).map(|_| random_arcs(rng)).collect(), angles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexes_respect_bounds() {
        let mut r = rng(7);
        for _ in 0..200 {
            let c = random_complex(&mut r);
            assert!(c.validate().is_empty(), "{:?}", c.validate());
            assert!(c.num_dims() <= MAX_DIMS);
            assert!((0..c.num_dims()).all(|n| c.families(n).len() <= MAX_FAMILIES));
            assert!(c.transversal().len() <= MAX_ATOMS);
        }
    }

    #[test]
    fn covers_cover() {
        let mut r = rng(11);
        for _ in 0..50 {
            let (c, u, v) = random_mv_cover(&mut r);
            assert!(u.is_face_closed(&c) && v.is_face_closed(&c));
            assert_eq!(u.union(&v), Subcomplex::full(&c));
            let (c, u, z) = random_excision(&mut r);
            assert!(z.is_subset(&u) && u.is_face_closed(&c));
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_complex(&mut rng(3));
        let b = random_complex(&mut rng(3));
        assert_eq!(a.all_families(), b.all_families());
    }

    #[test]
    fn arc_families_have_distinct_irrational_angles() {
        let mut r = rng(5);
        for _ in 0..30 {
            let (bs, alphas) = random_arc_family(&mut r);
            assert_eq!(bs.len(), alphas.len());
            assert!(alphas.iter().all(|a| !a.is_rational() && *a >= QuadReal::zero() && *a < QuadReal::one()));
        }
    }
}
