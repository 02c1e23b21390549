//! Simplicial maps, the prism complex `K × [0,1]`, and the cochain homotopy
//! `P(ω)(σ) = Σᵢ (−1)ⁱ ω(H(Πᵢσ))` with `δP + Pδ = g* − f*`.

use std::collections::BTreeMap;

use crate::cohomology::{coboundary_matrix, cohomology};
use crate::complex::{AtomId, Face, FamilyId, FiberedComplex, PartialHolonomy, SimplexFamily};
use crate::error::{structural, Result};
use crate::geometry::prism::{shuffle_sequences, PrismVertex};
use crate::linalg::SparseMatrix;
use crate::rational::Rational;

/// Image of one family under a simplicial map: a family of `L`, a monotone
/// surjection of vertex slots onto it, and the atom map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub target: FamilyId,
    pub surjection: Vec<usize>,
    pub atoms: PartialHolonomy,
}

impl MapEntry {
    pub fn target_dim(&self) -> usize {
        self.surjection.last().copied().unwrap_or(0)
    }

    pub fn is_degenerate(&self) -> bool {
        self.surjection.windows(2).any(|w| w[0] == w[1])
    }
}

/// A simplicial map `K → L`, one entry per family of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub entries: Vec<Vec<MapEntry>>,
}

impl SimplicialMap {
    pub fn identity(k: &FiberedComplex) -> Self {
        let entries = k
            .all_families()
            .iter()
            .map(|fams| {
                fams.iter()
                    .enumerate()
                    .map(|(fid, f)| MapEntry {
                        target: fid,
                        surjection: (0..=f.dim).collect(),
                        atoms: PartialHolonomy::identity(f.base.iter().copied()),
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn entry(&self, dim: usize, fam: FamilyId) -> &MapEntry {
        &self.entries[dim][fam]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        let entries = self
            .entries
            .iter()
            .map(|es| {
                es.iter()
                    .map(|e| {
                        let o = other.entry(e.target_dim(), e.target);
                        MapEntry {
                            target: o.target,
                            surjection: e.surjection.iter().map(|&s| o.surjection[s]).collect(),
                            atoms: e.atoms.then(&o.atoms),
                        }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { entries }
    }

    /// Checks the data is a simplicial map `k → l`: entries well formed and
    /// compatible with every face.
    pub fn check(&self, k: &FiberedComplex, l: &FiberedComplex) -> Result<()> {
        if self.entries.len() != k.num_dims()
            || self.entries.iter().zip(k.all_families()).any(|(e, f)| e.len() != f.len())
        {
            return Err(structural("simplicial map does not list one entry per family"));
        }
        for (n, es) in self.entries.iter().enumerate() {
            for (fid, e) in es.iter().enumerate() {
                let fam = k.family(n, fid);
                let m = e.target_dim();
                let s = &e.surjection;
                let onto = s.len() == n + 1 && s[0] == 0 && s.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                if !onto || m >= l.num_dims() || e.target >= l.families(m).len() {
                    return Err(structural(format!("family ({n}, {fid}) has a malformed image")));
                }
                let tbase = &l.family(m, e.target).base;
                if e.atoms.len() != fam.base.len()
                    || fam.base.iter().any(|&t| e.atoms.apply(t).is_none_or(|u| tbase.binary_search(&u).is_err()))
                {
                    return Err(structural(format!("family ({n}, {fid}) has a partial or misplaced atom map")));
                }
            }
        }
        for (n, es) in self.entries.iter().enumerate().skip(1) {
            for (fid, e) in es.iter().enumerate() {
                let fam = k.family(n, fid);
                for (i, face) in fam.faces.iter().enumerate() {
                    let mut s: Vec<usize> = e.surjection.clone();
                    s.remove(i);
                    let lower = self.entry(n - 1, face.target);
                    let m = e.target_dim();
                    let (target, expect_s, via) = if (0..=m).all(|v| s.contains(&v)) {
                        (e.target, s, None)
                    } else {
                        // slot j of the image was hit only by vertex i
                        let j = e.surjection[i];
                        let g = &l.family(m, e.target).faces[j];
                        let s2 = s.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
                        (g.target, s2, Some(&g.map))
                    };
                    let ok_target = lower.target == target && lower.surjection == expect_s;
                    let ok_atoms = fam.base.iter().all(|&t| {
                        let down = face.map.apply(t).and_then(|u| lower.atoms.apply(u));
                        let across = e.atoms.apply(t).and_then(|u| match via {
                            None => Some(u),
                            Some(h) => h.apply(u),
                        });
                        down == across
                    });
                    if !ok_target || !ok_atoms {
                        return Err(structural(format!(
                            "simplicial map does not commute with face {i} of family ({n}, {fid})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `f*: Cᵐ(L) → Cᵐ(K)`; degenerate images pull back to zero.
    pub fn pullback(&self, k: &FiberedComplex, l: &FiberedComplex, m: usize) -> SparseMatrix {
        let mut p = SparseMatrix::new(k.count(m), l.count(m));
        for (r, inst) in k.instances(m).into_iter().enumerate() {
            let e = self.entry(m, inst.family);
            if e.is_degenerate() {
                continue;
            }
            let u = e.atoms.apply(inst.atom).expect("atom maps are total");
            let col = l.index_of(crate::complex::Instance::new(m, e.target, u)).expect("image exists");
            p.add_entry(r, col, 1);
        }
        p
    }
}

/// `K × [0,1]` triangulated by the shuffle prisms, with its two end inclusions
/// and the projection back to `K`.
#[derive(Debug, Clone)]
pub struct Prism {
    pub complex: FiberedComplex,
    /// Family id of `(dim of F, F, vertex sequence)`.
    index: BTreeMap<(usize, FamilyId, Vec<PrismVertex>), FamilyId>,
    keys: Vec<Vec<(usize, FamilyId, Vec<PrismVertex>)>>,
}

/// Vertex sequences of `Δⁿ × [0,1]` whose projection covers `0..=n`,
/// i.e. the simplices interior to the prism over the top cell.
fn interior_sequences(n: usize) -> Vec<Vec<PrismVertex>> {
    let mut out: Vec<Vec<PrismVertex>> = (0..=n + 1)
        .map(|p| (0..=n).map(|j| (j, u8::from(j >= p))).collect())
        .collect();
    out.extend(shuffle_sequences(n).into_iter().map(|(seq, _)| seq));
    out
}

impl Prism {
    pub fn new(k: &FiberedComplex) -> Self {
        let top = k.num_dims() + usize::from(k.num_dims() > 0);
        let mut keys: Vec<Vec<(usize, FamilyId, Vec<PrismVertex>)>> = vec![Vec::new(); top];
        for n in 0..k.num_dims() {
            let seqs = interior_sequences(n);
            for f in 0..k.families(n).len() {
                for s in &seqs {
                    keys[s.len() - 1].push((n, f, s.clone()));
                }
            }
        }
        for ks in &mut keys {
            ks.sort();
        }
        let index: BTreeMap<_, _> =
            keys.iter().flat_map(|ks| ks.iter().enumerate().map(|(i, key)| (key.clone(), i))).collect();
        let mut families = Vec::new();
        for (d, ks) in keys.iter().enumerate() {
            let mut out = Vec::new();
            for (n, f, seq) in ks {
                let fam = k.family(*n, *f);
                let faces = (0..seq.len())
                    .filter(|_| d > 0)
                    .map(|i| {
                        let (n2, f2, map, seq2) = prism_face(k, *n, *f, seq, i);
                        Face::new(index[&(n2, f2, seq2)], map)
                    })
                    .collect();
                out.push(SimplexFamily::new(d, fam.base.iter().copied(), faces));
            }
            families.push(out);
        }
        let complex = FiberedComplex::with_tight_bound(k.transversal().clone(), families).expect("prism is well formed");
        Self { complex, index, keys }
    }

    pub fn family_of(&self, n: usize, f: FamilyId, seq: &[PrismVertex]) -> FamilyId {
        self.index[&(n, f, seq.to_vec())]
    }

    /// The end inclusion `K → K × {ε}`.
    pub fn inclusion(&self, k: &FiberedComplex, eps: u8) -> SimplicialMap {
        let entries = k
            .all_families()
            .iter()
            .enumerate()
            .map(|(n, fams)| {
                fams.iter()
                    .enumerate()
                    .map(|(fid, f)| {
                        let seq: Vec<PrismVertex> = (0..=n).map(|j| (j, eps)).collect();
                        MapEntry {
                            target: self.family_of(n, fid, &seq),
                            surjection: (0..=n).collect(),
                            atoms: PartialHolonomy::identity(f.base.iter().copied()),
                        }
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { entries }
    }

    /// `K × [0,1] → K`, forgetting the interval coordinate.
    pub fn projection(&self) -> SimplicialMap {
        let entries = self
            .keys
            .iter()
            .enumerate()
            .map(|(d, ks)| {
                ks.iter()
                    .enumerate()
                    .map(|(pf, (_, f, seq))| MapEntry {
                        target: *f,
                        surjection: seq.iter().map(|v| v.0).collect(),
                        atoms: PartialHolonomy::identity(self.complex.family(d, pf).base.iter().copied()),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap { entries }
    }

    /// The prism operator `Cᵐ(K×I) → Cᵐ⁻¹(K)`, `σ ↦ Σᵢ (−1)ⁱ Πᵢσ` dualized.
    pub fn operator(&self, k: &FiberedComplex, m: usize) -> SparseMatrix {
        let rows = if m == 0 { 0 } else { k.count(m - 1) };
        let mut p = SparseMatrix::new(rows, self.complex.count(m));
        if m == 0 {
            return p;
        }
        let n = m - 1;
        let shuffles = shuffle_sequences(n);
        for (r, inst) in k.instances(n).into_iter().enumerate() {
            for (seq, sign) in &shuffles {
                let pf = self.family_of(n, inst.family, seq);
                let col = self
                    .complex
                    .index_of(crate::complex::Instance::new(m, pf, inst.atom))
                    .expect("prism instance exists");
                p.add_entry(r, col, i64::from(*sign));
            }
        }
        p
    }
}

/// Face `i` of the prism simplex `(F, seq)`: same `F` when the projection
/// still covers `0..=n`, otherwise the matching face of `F` with relabeled slots.
fn prism_face(
    k: &FiberedComplex,
    n: usize,
    f: FamilyId,
    seq: &[PrismVertex],
    i: usize,
) -> (usize, FamilyId, PartialHolonomy, Vec<PrismVertex>) {
    let mut s = seq.to_vec();
    let (j, _) = s.remove(i);
    let base = &k.family(n, f).base;
    if s.iter().any(|v| v.0 == j) {
        return (n, f, PartialHolonomy::identity(base.iter().copied()), s);
    }
    let face = &k.family(n, f).faces[j];
    let s2 = s.into_iter().map(|(a, e)| (if a > j { a - 1 } else { a }, e)).collect();
    (n - 1, face.target, face.map.clone(), s2)
}

/// The operator `P` in every degree and the check of `δP + Pδ = g* − f*`.
#[derive(Debug, Clone)]
pub struct HomotopyCertificate {
    /// `operators[m]: Cᵐ(L) → Cᵐ⁻¹(K)`.
    pub operators: Vec<SparseMatrix>,
    pub f_star: Vec<SparseMatrix>,
    pub g_star: Vec<SparseMatrix>,
    /// Per degree: does `δP + Pδ = g* − f*` hold exactly.
    pub holds: Vec<bool>,
}

impl HomotopyCertificate {
    pub fn certified(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }
}

/// Builds `P` for a homotopy `h: K × [0,1] → L` between `f` and `g` and
/// certifies the chain-homotopy identity over ℤ (hence over ℚ and ℤ₂).
pub fn homotopy_operator(
    k: &FiberedComplex,
    l: &FiberedComplex,
    f: &SimplicialMap,
    g: &SimplicialMap,
    prism: &Prism,
    h: &SimplicialMap,
) -> Result<HomotopyCertificate> {
    f.check(k, l)?;
    g.check(k, l)?;
    h.check(&prism.complex, l)?;
    if prism.inclusion(k, 0).then(h) != *f {
        return Err(structural("the homotopy does not restrict to f on K × {0}"));
    }
    if prism.inclusion(k, 1).then(h) != *g {
        return Err(structural("the homotopy does not restrict to g on K × {1}"));
    }
    let dims = k.num_dims();
    let operators: Vec<SparseMatrix> = (0..=dims)
        .map(|m| prism.operator(k, m).mul(&h.pullback(&prism.complex, l, m)))
        .collect();
    let f_star: Vec<SparseMatrix> = (0..dims).map(|m| f.pullback(k, l, m)).collect();
    let g_star: Vec<SparseMatrix> = (0..dims).map(|m| g.pullback(k, l, m)).collect();
    let holds = (0..dims)
        .map(|m| {
            let mut lhs = operators[m + 1].mul(&coboundary_matrix(l, m));
            if m > 0 {
                lhs = add(&lhs, &coboundary_matrix(k, m - 1).mul(&operators[m]));
            }
            let rhs = add(&g_star[m], &negate(&f_star[m]));
            add(&lhs, &negate(&rhs)).is_zero()
        })
        .collect();
    Ok(HomotopyCertificate { operators, f_star, g_star, holds })
}

fn negate(a: &SparseMatrix) -> SparseMatrix {
    crate::exact::scaled(a, -1)
}

fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut m = a.clone();
    for r in 0..b.rows() {
        for &(c, v) in b.row(r) {
            m.add_entry(r, c, v);
        }
    }
    m
}

/// Do `f*` and `g*` agree on `Hᵐ(L; ℚ) → Hᵐ(K; ℚ)`?
pub fn induced_maps_agree(k: &FiberedComplex, l: &FiberedComplex, cert: &HomotopyCertificate, m: usize) -> Result<bool> {
    let hl = cohomology::<Rational>(l, m, None)?;
    let d = if m == 0 { None } else { Some(coboundary_matrix(k, m - 1).to_dense::<Rational>()) };
    for z in &hl.basis {
        let v = z.to_vector();
        let a = cert.f_star[m].mul_vec(&v);
        let b = cert.g_star[m].mul_vec(&v);
        let diff: Vec<Rational> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
        let is_exact = match &d {
            None => diff.iter().all(|x| *x == Rational::from_integer(0.into())),
            Some(d) => d.solve(&diff).is_some(),
        };
        if !is_exact {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `K`, the cylinder `K × [0,1]`, the two end inclusions and the identity
/// homotopy.
pub fn cylinder_homotopy(k: &FiberedComplex) -> (Prism, SimplicialMap, SimplicialMap, SimplicialMap) {
    let prism = Prism::new(k);
    let f = prism.inclusion(k, 0);
    let g = prism.inclusion(k, 1);
    let h = SimplicialMap::identity(&prism.complex);
    (prism, f, g, h)
}

/// Atom of `K` under a pulled-back instance, for callers building maps by hand.
pub fn atom_image(map: &SimplicialMap, dim: usize, fam: FamilyId, atom: AtomId) -> Option<AtomId> {
    map.entry(dim, fam).atoms.apply(atom)
}
