//! Standard examples (products, wedges, suspensions, Kronecker models) and
//! the covering checkers (Mayer–Vietoris, excision).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cohomology::betti_numbers;
use crate::complex::{
    AtomId, Cochain, Face, FamilyId, FiberedComplex, Instance, PartialHolonomy, SimplexFamily, Subcomplex,
    Transversal, Violation,
};
use crate::delta::DeltaComplex;
use crate::error::{domain, Error, Result};
use crate::exact::{mayer_vietoris_sequence, SequenceReport};
use crate::field::{CoeffKind, Z2};
use crate::rational::{self, Rational};

/// `C × T` with identity holonomy: every leaf is a copy of `C`.
pub fn product_complex(c: &DeltaComplex, t: Transversal) -> FiberedComplex {
    c.to_fibered(t)
}

/// The finite Kronecker model: `q` atoms of weight `1/q` on one vertex
/// family and one edge family, the edge over `t` running from `t` to `t + p`.
pub fn kronecker(q: usize, p: i64) -> Result<FiberedComplex> {
    if q == 0 {
        return Err(domain("the Kronecker model needs at least one atom"));
    }
    let atoms: Vec<AtomId> = (0..q).collect();
    let shift = p.rem_euclid(q as i64) as usize;
    let rotation = PartialHolonomy::new(atoms.iter().map(|&t| (t, (t + shift) % q)));
    let vertex = SimplexFamily::vertex(atoms.iter().copied());
    let edge = SimplexFamily::new(1, atoms.iter().copied(), vec![Face::new(0, rotation), Face::identity(0, &atoms)]);
    FiberedComplex::with_tight_bound(Transversal::uniform(q, rational::int(1)), vec![vec![vertex], vec![edge]])
}

fn check_permutation(p: &[AtomId], k: usize, what: &str) -> Result<()> {
    let set: BTreeSet<AtomId> = p.iter().copied().collect();
    if p.len() != k || set.len() != k || set.iter().any(|&a| a >= k) {
        return Err(domain(format!("{what} is not a permutation of the {k} atoms")));
    }
    Ok(())
}

/// Flat atom bundle over a Δ-complex: every cell carries all atoms, face 0
/// transports along the cell's leading edge by `edge_perm`, other faces are
/// identities.
pub fn flat_bundle(base: &DeltaComplex, edge_perm: &[Vec<AtomId>], t: Transversal) -> Result<FiberedComplex> {
    let k = t.len();
    if edge_perm.len() != base.count(1) {
        return Err(domain(format!("{} edge permutations for {} edges", edge_perm.len(), base.count(1))));
    }
    for (e, p) in edge_perm.iter().enumerate() {
        check_permutation(p, k, &format!("permutation of edge {e}"))?;
    }
    let atoms: Vec<AtomId> = (0..k).collect();
    let families = (0..base.num_dims())
        .map(|n| {
            (0..base.count(n))
                .map(|c| {
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        let rho = &edge_perm[base.leading_edge(n, c)];
                        base.faces(n, c)
                            .iter()
                            .enumerate()
                            .map(|(i, &target)| {
                                if i == 0 {
                                    Face::new(target, PartialHolonomy::new(atoms.iter().map(|&a| (a, rho[a]))))
                                } else {
                                    Face::identity(target, &atoms)
                                }
                            })
                            .collect()
                    };
                    SimplexFamily::new(n, atoms.iter().copied(), faces)
                })
                .collect()
        })
        .collect();
    let c = FiberedComplex::with_tight_bound(t, families)?;
    if let Some(v) = c.validate().into_iter().find(|v| matches!(v, Violation::SimplicialIdentity { .. })) {
        return Err(domain(format!("edge permutations are not flat: {v}")));
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SuspensionBase {
    /// `loops` circles at one vertex; `loops = 1` is the circle.
    Bouquet { loops: usize },
    /// One-vertex torus with generators `a`, `b` and diagonal `c = b∘a`.
    Torus,
}

/// A base with generating loops and one atom permutation per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuspensionData {
    pub base: SuspensionBase,
    pub rep: Vec<Vec<AtomId>>,
    #[serde(with = "rational::vec_as_str")]
    pub weights: Vec<Rational>,
}

impl SuspensionData {
    pub fn new(base: SuspensionBase, rep: Vec<Vec<AtomId>>, weights: Vec<Rational>) -> Self {
        Self { base, rep, weights }
    }

    /// `q` atoms of weight `1/q`, each generator acting by its own rotation `t ↦ t + p`.
    pub fn rotations(base: SuspensionBase, q: usize, shifts: &[i64]) -> Self {
        let rep = shifts
            .iter()
            .map(|&p| {
                let s = p.rem_euclid(q as i64) as usize;
                (0..q).map(|t| (t + s) % q).collect()
            })
            .collect();
        Self { base, rep, weights: vec![rational::rat(1, q as i64); q] }
    }
}

/// Composite `b∘a` (apply `a` first).
fn compose(a: &[AtomId], b: &[AtomId]) -> Vec<AtomId> {
    a.iter().map(|&x| b[x]).collect()
}

/// The measurable suspension of the representation over the chosen base.
pub fn suspension(data: &SuspensionData) -> Result<FiberedComplex> {
    let k = data.weights.len();
    let t = Transversal::new(data.weights.clone())?;
    for (i, p) in data.rep.iter().enumerate() {
        check_permutation(p, k, &format!("generator {i}"))?;
    }
    match &data.base {
        SuspensionBase::Bouquet { loops } => {
            if data.rep.len() != *loops {
                return Err(domain(format!("{} permutations for {loops} loops", data.rep.len())));
            }
            flat_bundle(&DeltaComplex::bouquet(*loops), &data.rep, t)
        }
        SuspensionBase::Torus => {
            let [a, b] = data.rep.as_slice() else {
                return Err(domain(format!("a torus base needs 2 permutations, got {}", data.rep.len())));
            };
            let ab = compose(a, b);
            if ab != compose(b, a) {
                return Err(domain("the torus generators do not commute"));
            }
            flat_bundle(&DeltaComplex::torus(), &[a.clone(), b.clone(), ab], t)
        }
    }
}

/// The ℤ₂ 2-cochain that is 1 on the first triangle family of a torus
/// suspension: the cellular top class of each square.
pub fn torus_top_class(c: &FiberedComplex) -> Result<Cochain<Z2>> {
    if c.families(2).len() != 2 {
        return Err(domain("expected the two triangle families of a torus base"));
    }
    let mut values: Vec<Vec<Z2>> = c.families(2).iter().map(|f| vec![Z2(false); f.base.len()]).collect();
    values[0].iter_mut().for_each(|v| *v = Z2(true));
    Ok(Cochain::from_values(2, values))
}

/// Result of gluing two complexes along vertex instances.
#[derive(Debug, Clone)]
pub struct Wedge {
    pub complex: FiberedComplex,
    /// The glued vertex instances `π(T)`.
    pub glued: Subcomplex,
    /// New atom of every atom of the second complex.
    pub g_atoms: Vec<AtomId>,
    /// New family id of every family of the second complex, per dimension.
    pub g_families: Vec<Vec<FamilyId>>,
}

/// Glues the vertex instances `(vf, t)` of `f` to `(vg, γ(t))` of `g`.
///
/// The atom `γ(t)` of `g` is identified with `t`, and the vertex family
/// `vg` merges into `vf`. Families of `f` keep their ids; those of `g`
/// follow.
pub fn wedge(f: &FiberedComplex, g: &FiberedComplex, vf: FamilyId, vg: FamilyId, gamma: &PartialHolonomy) -> Result<Wedge> {
    let fv = f.families(0).get(vf).ok_or_else(|| domain(format!("no vertex family {vf} in the first complex")))?;
    let gv = g.families(0).get(vg).ok_or_else(|| domain(format!("no vertex family {vg} in the second complex")))?;
    if !gamma.is_injective() {
        return Err(domain("the gluing map is not injective"));
    }
    for (s, d) in gamma.pairs() {
        if fv.position(s).is_none() {
            return Err(domain(format!("atom {s} is not a vertex of family {vf}")));
        }
        if gv.position(d).is_none() {
            return Err(domain(format!("target atom {d} is not a vertex of family {vg}")));
        }
        if f.transversal().weight(s) != g.transversal().weight(d) {
            return Err(domain(format!("gluing atom {s} to atom {d} changes the weight")));
        }
    }
    let inverse = gamma.inverse().expect("injective");
    let kf = f.transversal().len();
    let mut weights = f.transversal().weights().to_vec();
    let mut g_atoms = Vec::with_capacity(g.transversal().len());
    for a in 0..g.transversal().len() {
        match inverse.apply(a) {
            Some(t) => g_atoms.push(t),
            None => {
                g_atoms.push(kf + (weights.len() - kf));
                weights.push(g.transversal().weight(a).clone());
            }
        }
    }
    let dims = f.num_dims().max(g.num_dims());
    let mut g_families: Vec<Vec<FamilyId>> = Vec::with_capacity(g.num_dims());
    let mut families: Vec<Vec<SimplexFamily>> = Vec::with_capacity(dims);
    for n in 0..dims {
        let mut out: Vec<SimplexFamily> = f.families(n).to_vec();
        let mut ids = Vec::with_capacity(g.families(n).len());
        for (gid, fam) in g.families(n).iter().enumerate() {
            let base: Vec<AtomId> = fam.base.iter().map(|&a| g_atoms[a]).collect();
            if n == 0 && gid == vg {
                ids.push(vf);
                let merged: Vec<AtomId> = out[vf].base.iter().copied().chain(base).collect();
                out[vf] = SimplexFamily::vertex(merged);
                continue;
            }
            let faces = fam
                .faces
                .iter()
                .map(|face| {
                    let pairs = face.map.pairs().map(|(s, d)| (g_atoms[s], g_atoms[d]));
                    Face::new(g_families[n - 1][face.target], PartialHolonomy::new(pairs))
                })
                .collect();
            ids.push(out.len());
            out.push(SimplexFamily::new(n, base, faces));
        }
        if n < g.num_dims() {
            g_families.push(ids);
        }
        families.push(out);
    }
    let complex = FiberedComplex::with_tight_bound(Transversal::new(weights)?, families)?;
    let glued = Subcomplex::from_instances(&complex, gamma.domain().map(|t| Instance::new(0, vf, t)))?;
    Ok(Wedge { complex, glued, g_atoms, g_families })
}

/// Vertex instances `(v, t)` for the atoms in `atoms`.
pub fn vertex_selection(c: &FiberedComplex, v: FamilyId, atoms: impl IntoIterator<Item = AtomId>) -> Result<Subcomplex> {
    Subcomplex::from_instances(c, atoms.into_iter().map(|t| Instance::new(0, v, t)))
}

fn cover_witness(x: &FiberedComplex, u: &Subcomplex, v: &Subcomplex) -> Option<Instance> {
    (0..x.num_dims()).flat_map(|n| x.instances(n)).find(|&i| !u.contains(i) && !v.contains(i))
}

/// Long exact Mayer–Vietoris sequence of a cover `X = U ∪ V` by face-closed
/// subcomplexes, checked over ℚ and ℤ₂.
pub fn mayer_vietoris_check(x: &FiberedComplex, u: &Subcomplex, v: &Subcomplex) -> Result<Vec<SequenceReport>> {
    u.check(x)?;
    v.check(x)?;
    if let Some(i) = cover_witness(x, u, v) {
        return Err(Error::Coverage {
            message: "U and V do not cover the complex".to_string(),
            witness: vec![i.to_string()],
        });
    }
    Ok(mayer_vietoris_sequence(x, u, v)?.check_all())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcisionReport {
    pub coeff: CoeffKind,
    /// dim Hⁿ(X, U).
    pub full: Vec<usize>,
    /// dim Hⁿ(X∖Z, U∖Z).
    pub excised: Vec<usize>,
    pub equal: bool,
}

/// Compares `H*(X, U)` with `H*(X∖Z, U∖Z)` over ℚ and ℤ₂. `Z` must lie in
/// `U` and be closed under cofaces, so that `X∖Z` is a subcomplex.
pub fn excision_check(x: &FiberedComplex, u: &Subcomplex, z: &Subcomplex) -> Result<Vec<ExcisionReport>> {
    u.check(x)?;
    if !z.is_subset(u) {
        return Err(domain("Z is not contained in U"));
    }
    let rest = Subcomplex::full(x).difference(z);
    if let Some((inst, face)) = rest.face_closure_witness(x) {
        return Err(domain(format!("removing Z leaves {inst} without its face {face}")));
    }
    let (xz, remap) = rest.extract(x)?;
    let moved = |s: &Subcomplex| -> Result<Subcomplex> {
        let inst = s.instances().into_iter().map(|i| Instance::new(i.dim, remap[i.dim][i.family].expect("kept family"), i.atom));
        Subcomplex::from_instances(&xz, inst)
    };
    let uz = moved(&u.difference(z))?;
    let mut out = Vec::new();
    for coeff in [CoeffKind::Q, CoeffKind::Z2] {
        let mut full = betti_numbers(x, coeff, Some(u))?;
        let mut excised = betti_numbers(&xz, coeff, Some(&uz))?;
        let len = full.len().max(excised.len());
        full.resize(len, 0);
        excised.resize(len, 0);
        let equal = full == excised;
        out.push(ExcisionReport { coeff, full, excised, equal });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohomology_dim, is_coboundary};
    use crate::rational::{int, rat};

    fn circle_one_atom(n: usize) -> FiberedComplex {
        DeltaComplex::circle(n).to_fibered(Transversal::unit(1))
    }

    #[test]
    fn products() {
        let p = product_complex(&DeltaComplex::point(), Transversal::unit(3));
        assert_eq!(cohomology_dim(&p, 0, CoeffKind::Q, None).unwrap(), 3);
        let c = product_complex(&DeltaComplex::circle(3), Transversal::unit(2));
        assert_eq!(cohomology_dim(&c, 1, CoeffKind::Q, None).unwrap(), 2);
        assert_eq!(c.leaf_decomposition().len(), 2);
    }

    #[test]
    fn kronecker_is_one_leaf() {
        let k = kronecker(5, 2).unwrap();
        assert!(k.validate().is_empty());
        assert_eq!(k.leaf_decomposition(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(betti_numbers(&k, CoeffKind::Z2, None).unwrap(), vec![1, 1]);
        assert_eq!(betti_numbers(&kronecker(6, 2).unwrap(), CoeffKind::Q, None).unwrap(), vec![2, 2]);
    }

    #[test]
    fn circle_suspension_is_kronecker() {
        for (q, p) in [(3, 1), (5, 2), (4, 3)] {
            let s = suspension(&SuspensionData::rotations(SuspensionBase::Bouquet { loops: 1 }, q, &[p])).unwrap();
            assert_eq!(s, kronecker(q, p).unwrap());
        }
    }

    #[test]
    fn trivial_suspension_is_product() {
        let data = SuspensionData::rotations(SuspensionBase::Torus, 3, &[0, 0]);
        let s = suspension(&data).unwrap();
        let p = product_complex(&DeltaComplex::torus(), Transversal::uniform(3, rational::int(1)));
        assert_eq!(s, p);
    }

    #[test]
    fn torus_top_class_survives_rotation() {
        let s = suspension(&SuspensionData::rotations(SuspensionBase::Torus, 3, &[1, 1])).unwrap();
        assert!(s.validate().is_empty());
        let w = torus_top_class(&s).unwrap();
        assert!(!is_coboundary(&s, &w).unwrap());
        // an even number of sheets makes the class vanish mod 2
        let s2 = suspension(&SuspensionData::rotations(SuspensionBase::Torus, 2, &[1, 0])).unwrap();
        assert!(is_coboundary(&s2, &torus_top_class(&s2).unwrap()).unwrap());
    }

    #[test]
    fn noncommuting_torus_is_rejected() {
        let data = SuspensionData::new(SuspensionBase::Torus, vec![vec![1, 0, 2], vec![0, 2, 1]], vec![rat(1, 3); 3]);
        assert!(matches!(suspension(&data), Err(Error::Domain(_))));
    }

    #[test]
    fn wedge_of_two_circles() {
        let a = circle_one_atom(3);
        let b = circle_one_atom(4);
        let w = wedge(&a, &b, 0, 2, &PartialHolonomy::new([(0, 0)])).unwrap();
        assert!(w.complex.validate().is_empty());
        assert_eq!(w.complex.leaf_decomposition().len(), 1);
        assert_eq!(betti_numbers(&w.complex, CoeffKind::Q, None).unwrap(), vec![1, 2]);
        let rel = betti_numbers(&w.complex, CoeffKind::Q, Some(&w.glued)).unwrap();
        assert_eq!(rel, vec![0, 2]);
        let empty = wedge(&a, &b, 0, 0, &PartialHolonomy::new([])).unwrap();
        assert_eq!(betti_numbers(&empty.complex, CoeffKind::Q, None).unwrap(), vec![2, 2]);
    }

    #[test]
    fn wedge_rejects_bad_gluing() {
        let a = product_complex(&DeltaComplex::point(), Transversal::unit(2));
        let b = product_complex(&DeltaComplex::point(), Transversal::unit(2));
        assert!(wedge(&a, &b, 0, 0, &PartialHolonomy::new([(0, 1), (1, 1)])).is_err());
        assert!(wedge(&a, &b, 0, 0, &PartialHolonomy::new([(0, 5)])).is_err());
        let c = product_complex(&DeltaComplex::point(), Transversal::new(vec![rat(1, 2), int(1)]).unwrap());
        assert!(wedge(&a, &c, 0, 0, &PartialHolonomy::new([(0, 0)])).is_err());
        assert!(wedge(&a, &c, 0, 0, &PartialHolonomy::new([(0, 1)])).is_ok());
    }

    #[test]
    fn mayer_vietoris_on_hexagon() {
        let x = circle_one_atom(6);
        let arc = |vs: &[usize]| {
            let edges: Vec<Instance> = x
                .instances(1)
                .into_iter()
                .filter(|e| vs.contains(&x.face(*e, 0).family) && vs.contains(&x.face(*e, 1).family))
                .collect();
            Subcomplex::closure(&x, edges).unwrap()
        };
        let u = arc(&[0, 1, 2, 3]);
        let v = arc(&[3, 4, 5, 0]);
        let reports = mayer_vietoris_check(&x, &u, &v).unwrap();
        assert!(reports.iter().all(SequenceReport::is_exact));
        let bad = mayer_vietoris_check(&x, &u, &Subcomplex::empty(&x));
        assert!(matches!(bad, Err(Error::Coverage { .. })));
        let full = Subcomplex::full(&x);
        assert!(mayer_vietoris_check(&x, &full, &full).unwrap().iter().all(SequenceReport::is_exact));
    }

    #[test]
    fn excision_on_circle() {
        let x = circle_one_atom(6);
        let u = Subcomplex::closure(&x, [Instance::new(1, 0, 0), Instance::new(1, 1, 0)]).unwrap();
        // the open star of the middle vertex of the arc
        let mid = (0..x.families(0).len())
            .find(|&v| {
                x.instances(1).iter().filter(|e| u.contains(**e)).filter(|e| (0..2).any(|i| x.face(**e, i).family == v)).count()
                    == 2
            })
            .unwrap();
        let z = Subcomplex::star(&x, [Instance::new(0, mid, 0)]).unwrap();
        let reports = excision_check(&x, &u, &z).unwrap();
        assert!(reports.iter().all(|r| r.equal));
        assert!(excision_check(&x, &u, &Subcomplex::empty(&x)).unwrap().iter().all(|r| r.equal));
        let bare = Subcomplex::from_instances(&x, [Instance::new(0, mid, 0)]).unwrap();
        assert!(matches!(excision_check(&x, &u, &bare), Err(Error::Domain(_))));
    }

    #[test]
    fn flat_bundle_rejects_bad_permutation() {
        let r = flat_bundle(&DeltaComplex::circle(1), &[vec![0, 0]], Transversal::unit(2));
        assert!(r.is_err());
    }
}
