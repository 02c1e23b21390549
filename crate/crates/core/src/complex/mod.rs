//! Fibered simplicial complexes: finite models of measurable triangulations.
//!
//! An n-dimensional [`SimplexFamily`] is a family of ordered n-simplices
//! parametrized by a set of transversal atoms (its base). The pair
//! `(family, atom)` is a simplex *instance*. Face `i` of an instance omits
//! vertex `i`; it lives in the family `faces[i].target` over the atom
//! `faces[i].map(atom)`, so face maps play the role of leafwise holonomy.

mod cochain;
pub mod io;
mod subcomplex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{structural, Error, Result};
use crate::rational::{self, Rational};

pub use cochain::Cochain;
pub use io::ComplexFile;
pub use subcomplex::Subcomplex;

pub type AtomId = usize;
pub type FamilyId = usize;

/// A finite measured transversal: atoms `0..k` with nonnegative weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    weights: Vec<Rational>,
}

impl Transversal {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(a) = weights.iter().position(|w| w.is_negative()) {
            return Err(structural(format!("atom {a} has negative weight")));
        }
        Ok(Self { weights })
    }

    /// `k` atoms sharing `total` mass equally.
    pub fn uniform(k: usize, total: Rational) -> Self {
        let w = if k == 0 { total } else { total / rational::int(k as i64) };
        Self { weights: vec![w; k] }
    }

    /// `k` atoms of weight one.
    pub fn unit(k: usize) -> Self {
        Self { weights: vec![rational::int(1); k] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, atom: AtomId) -> &Rational {
        &self.weights[atom]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(rational::int(0), |acc, w| acc + w)
    }

    pub(crate) fn push(&mut self, w: Rational) -> AtomId {
        self.weights.push(w);
        self.weights.len() - 1
    }
}

/// A finite partial map between atom sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialHolonomy {
    pairs: BTreeMap<AtomId, AtomId>,
}

impl PartialHolonomy {
    pub fn new(pairs: impl IntoIterator<Item = (AtomId, AtomId)>) -> Self {
        Self { pairs: pairs.into_iter().collect() }
    }

    pub fn identity(atoms: impl IntoIterator<Item = AtomId>) -> Self {
        Self::new(atoms.into_iter().map(|a| (a, a)))
    }

    pub fn apply(&self, a: AtomId) -> Option<AtomId> {
        self.pairs.get(&a).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.pairs.keys().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (AtomId, AtomId)> + '_ {
        self.pairs.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        let img: BTreeSet<_> = self.pairs.values().collect();
        img.len() == self.pairs.len()
    }

    /// `other ∘ self`, defined where `self` lands in the domain of `other`.
    pub fn then(&self, other: &PartialHolonomy) -> PartialHolonomy {
        Self::new(self.pairs.iter().filter_map(|(&a, &b)| other.apply(b).map(|c| (a, c))))
    }

    pub fn inverse(&self) -> Option<PartialHolonomy> {
        self.is_injective().then(|| Self::new(self.pairs.iter().map(|(&a, &b)| (b, a))))
    }
}

/// Face `i` of a family: target family one dimension lower and the atom map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub target: FamilyId,
    pub map: PartialHolonomy,
}

impl Face {
    pub fn new(target: FamilyId, map: PartialHolonomy) -> Self {
        Self { target, map }
    }

    pub fn identity(target: FamilyId, base: &[AtomId]) -> Self {
        Self { target, map: PartialHolonomy::identity(base.iter().copied()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexFamily {
    pub dim: usize,
    /// Sorted, duplicate-free.
    pub base: Vec<AtomId>,
    /// Exactly `dim + 1` faces for `dim >= 1`, none for vertices.
    pub faces: Vec<Face>,
}

impl SimplexFamily {
    pub fn vertex(base: impl IntoIterator<Item = AtomId>) -> Self {
        Self::new(0, base, Vec::new())
    }

    pub fn new(dim: usize, base: impl IntoIterator<Item = AtomId>, faces: Vec<Face>) -> Self {
        let mut base: Vec<AtomId> = base.into_iter().collect();
        base.sort_unstable();
        base.dedup();
        Self { dim, base, faces }
    }

    pub fn position(&self, atom: AtomId) -> Option<usize> {
        self.base.binary_search(&atom).ok()
    }
}

/// A simplex instance: the simplex of `family` (of dimension `dim`) over `atom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Instance {
    pub dim: usize,
    pub family: FamilyId,
    pub atom: AtomId,
}

impl Instance {
    pub fn new(dim: usize, family: FamilyId, atom: AtomId) -> Self {
        Self { dim, family, atom }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(dim {}, family {}, atom {})", self.dim, self.family, self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedComplex {
    transversal: Transversal,
    families: Vec<Vec<SimplexFamily>>,
    regularity_bound: usize,
    offsets: Vec<Vec<usize>>,
}

impl FiberedComplex {
    /// Builds a complex after checking that every face map is total on its
    /// family's base and lands in the target family's base.
    ///
    /// Simplicial identities, the regularity bound and leaf constancy of the
    /// weights are *not* enforced here; see [`FiberedComplex::validate`].
    pub fn new(
        transversal: Transversal,
        mut families: Vec<Vec<SimplexFamily>>,
        regularity_bound: usize,
    ) -> Result<Self> {
        while families.last().is_some_and(Vec::is_empty) {
            families.pop();
        }
        let k = transversal.len();
        for (n, fams) in families.iter().enumerate() {
            for (fid, fam) in fams.iter().enumerate() {
                if fam.dim != n {
                    return Err(structural(format!(
                        "family {fid} is listed in dimension {n} but has dim {}",
                        fam.dim
                    )));
                }
                if fam.base.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(structural(format!("family ({n}, {fid}) base is not sorted")));
                }
                if let Some(&a) = fam.base.iter().find(|&&a| a >= k) {
                    return Err(structural(format!("family ({n}, {fid}) uses unknown atom {a}")));
                }
                let expected = if n == 0 { 0 } else { n + 1 };
                if fam.faces.len() != expected {
                    return Err(structural(format!(
                        "family ({n}, {fid}) has {} faces, expected {expected}",
                        fam.faces.len()
                    )));
                }
                for (i, face) in fam.faces.iter().enumerate() {
                    let target = families[n - 1].get(face.target).ok_or_else(|| {
                        structural(format!(
                            "face {i} of family ({n}, {fid}) targets missing family {}",
                            face.target
                        ))
                    })?;
                    if face.map.len() != fam.base.len()
                        || face.map.domain().zip(&fam.base).any(|(a, &b)| a != b)
                    {
                        return Err(structural(format!(
                            "face map {i} of family ({n}, {fid}) is not total on its base"
                        )));
                    }
                    for (src, dst) in face.map.pairs() {
                        if target.position(dst).is_none() {
                            return Err(structural(format!(
                                "face map {i} of family ({n}, {fid}) sends atom {src} to atom {dst}, \
                                 which is not in the base of family ({}, {})",
                                n - 1,
                                face.target
                            )));
                        }
                    }
                }
            }
        }
        let offsets = families
            .iter()
            .map(|fams| {
                let mut acc = 0;
                fams.iter()
                    .map(|f| {
                        let o = acc;
                        acc += f.base.len();
                        o
                    })
                    .collect()
            })
            .collect();
        Ok(Self { transversal, families, regularity_bound: regularity_bound.max(1), offsets })
    }

    /// Builds a complex with the regularity bound set to the actual maximum
    /// number of cofaces of any instance.
    pub fn with_tight_bound(transversal: Transversal, families: Vec<Vec<SimplexFamily>>) -> Result<Self> {
        let mut c = Self::new(transversal, families, 1)?;
        c.regularity_bound = c.max_cofaces().max(1);
        Ok(c)
    }

    pub fn empty() -> Self {
        Self::new(Transversal::new(Vec::new()).unwrap(), Vec::new(), 1).unwrap()
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn families(&self, dim: usize) -> &[SimplexFamily] {
        self.families.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn family(&self, dim: usize, id: FamilyId) -> &SimplexFamily {
        &self.families[dim][id]
    }

    pub fn all_families(&self) -> &[Vec<SimplexFamily>] {
        &self.families
    }

    pub fn regularity_bound(&self) -> usize {
        self.regularity_bound
    }

    /// Number of dimensions carrying families (top dimension + 1).
    pub fn num_dims(&self) -> usize {
        self.families.len()
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.families.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.families(dim).iter().map(|f| f.base.len()).sum()
    }

    /// Instances of dimension `dim` in canonical order: family order, then atom order.
    pub fn instances(&self, dim: usize) -> Vec<Instance> {
        self.families(dim)
            .iter()
            .enumerate()
            .flat_map(|(fid, f)| f.base.iter().map(move |&a| Instance::new(dim, fid, a)))
            .collect()
    }

    pub fn index_of(&self, inst: Instance) -> Option<usize> {
        let fam = self.families.get(inst.dim)?.get(inst.family)?;
        fam.position(inst.atom).map(|p| self.offsets[inst.dim][inst.family] + p)
    }

    pub fn instance_at(&self, dim: usize, index: usize) -> Instance {
        let offs = &self.offsets[dim];
        let mut fid = offs.partition_point(|&o| o <= index) - 1;
        // empty families share the offset of their successor
        while self.families[dim][fid].base.len() <= index - offs[fid] {
            fid -= 1;
        }
        Instance::new(dim, fid, self.families[dim][fid].base[index - offs[fid]])
    }

    pub fn contains(&self, inst: Instance) -> bool {
        self.index_of(inst).is_some()
    }

    /// Face `i` of an instance.
    pub fn face(&self, inst: Instance, i: usize) -> Instance {
        let face = &self.families[inst.dim][inst.family].faces[i];
        let atom = face.map.apply(inst.atom).expect("face maps are total on the base");
        Instance::new(inst.dim - 1, face.target, atom)
    }

    /// Iterated face keeping exactly the vertex slots in `keep` (sorted, nonempty).
    pub fn sub_face(&self, inst: Instance, keep: &[usize]) -> Instance {
        let mut cur = inst;
        for v in (0..=inst.dim).rev() {
            if !keep.contains(&v) {
                cur = self.face(cur, v);
            }
        }
        cur
    }

    /// Front `k`-face (vertices `0..=k`).
    pub fn front_face(&self, inst: Instance, k: usize) -> Instance {
        let mut cur = inst;
        while cur.dim > k {
            cur = self.face(cur, cur.dim);
        }
        cur
    }

    /// Back `k`-face (vertices `dim-k..=dim`).
    pub fn back_face(&self, inst: Instance, k: usize) -> Instance {
        let mut cur = inst;
        while cur.dim > k {
            cur = self.face(cur, 0);
        }
        cur
    }

    /// Distinct instances of dimension `dim + 1` having `inst` as a face, per instance of `dim`.
    fn coface_counts(&self, dim: usize) -> Vec<usize> {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.count(dim)];
        for (j, up) in self.instances(dim + 1).into_iter().enumerate() {
            for i in 0..=dim + 1 {
                let f = self.face(up, i);
                sets[self.index_of(f).unwrap()].insert(j);
            }
        }
        sets.into_iter().map(|s| s.len()).collect()
    }

    pub fn max_cofaces(&self) -> usize {
        (0..self.num_dims().saturating_sub(1))
            .flat_map(|n| self.coface_counts(n))
            .max()
            .unwrap_or(0)
    }

    /// Partition of the transversal into leaves, blocks ordered by least atom.
    pub fn leaf_decomposition(&self) -> Vec<Vec<AtomId>> {
        let mut uf = UnionFind::new(self.transversal.len());
        for fams in self.families.iter().skip(1) {
            for fam in fams {
                for face in &fam.faces {
                    for (a, b) in face.map.pairs() {
                        uf.union(a, b);
                    }
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<AtomId>> = BTreeMap::new();
        for a in 0..self.transversal.len() {
            blocks.entry(uf.find(a)).or_default().push(a);
        }
        let mut out: Vec<Vec<AtomId>> = blocks.into_values().collect();
        out.sort_by_key(|b| b[0]);
        out
    }

    /// Leaf index of every atom, following [`FiberedComplex::leaf_decomposition`].
    pub fn leaf_of_atoms(&self) -> Vec<usize> {
        let mut leaf = vec![0; self.transversal.len()];
        for (i, block) in self.leaf_decomposition().iter().enumerate() {
            for &a in block {
                leaf[a] = i;
            }
        }
        leaf
    }

    /// Invariant diagnostics; empty on a valid complex.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (n, fams) in self.families.iter().enumerate().skip(2) {
            for (fid, fam) in fams.iter().enumerate() {
                for j in 1..=n {
                    for i in 0..j {
                        if let Some(v) = self.identity_violation(n, fid, fam, i, j) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        for n in 0..self.num_dims().saturating_sub(1) {
            for (idx, c) in self.coface_counts(n).into_iter().enumerate() {
                if c > self.regularity_bound {
                    out.push(Violation::Regularity {
                        instance: self.instance_at(n, idx),
                        cofaces: c,
                        bound: self.regularity_bound,
                    });
                }
            }
        }
        for (leaf, block) in self.leaf_decomposition().into_iter().enumerate() {
            let w0 = self.transversal.weight(block[0]);
            if let Some(&b) = block.iter().find(|&&b| self.transversal.weight(b) != w0) {
                out.push(Violation::WeightNotLeafConstant {
                    leaf,
                    atoms: (block[0], b),
                    weights: (w0.clone(), self.transversal.weight(b).clone()),
                });
            }
        }
        out
    }

    fn identity_violation(
        &self,
        n: usize,
        fid: FamilyId,
        fam: &SimplexFamily,
        i: usize,
        j: usize,
    ) -> Option<Violation> {
        let via_j = &self.families[n - 1][fam.faces[j].target].faces[i];
        let via_i = &self.families[n - 1][fam.faces[i].target].faces[j - 1];
        if via_j.target != via_i.target {
            return Some(Violation::SimplicialIdentity {
                dim: n,
                family: fid,
                i,
                j,
                atom: None,
                detail: format!(
                    "face {i} of face {j} is family {} but face {} of face {i} is family {}",
                    via_j.target,
                    j - 1,
                    via_i.target
                ),
            });
        }
        for &t in &fam.base {
            let a = fam.faces[j].map.apply(t).and_then(|s| via_j.map.apply(s));
            let b = fam.faces[i].map.apply(t).and_then(|s| via_i.map.apply(s));
            if a != b {
                return Some(Violation::SimplicialIdentity {
                    dim: n,
                    family: fid,
                    i,
                    j,
                    atom: Some(t),
                    detail: {
                        let show = |x: Option<AtomId>| x.map_or("nothing".to_string(), |x| format!("atom {x}"));
                        format!("atom {t} reaches {} one way and {} the other", show(a), show(b))
                    },
                });
            }
        }
        None
    }

    /// Errors with the first violation if the complex is not valid.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(Violation::WeightNotLeafConstant { leaf, .. }) => Err(Error::Invariance(format!(
                "weights are not constant on leaf {leaf}"
            ))),
            Some(v) => Err(structural(v.to_string())),
        }
    }

    /// Alternating sum of instance counts.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.num_dims())
            .map(|n| {
                let c = self.count(n) as i64;
                if n % 2 == 0 { c } else { -c }
            })
            .sum()
    }

    /// Same complex with a different transversal measure (same atom count).
    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.transversal.len() {
            return Err(structural(format!(
                "{} weights given for {} atoms",
                weights.len(),
                self.transversal.len()
            )));
        }
        Self::new(Transversal::new(weights)?, self.families.clone(), self.regularity_bound)
    }
}

/// One violated invariant, as reported by [`FiberedComplex::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    SimplicialIdentity {
        dim: usize,
        family: FamilyId,
        i: usize,
        j: usize,
        atom: Option<AtomId>,
        detail: String,
    },
    Regularity {
        instance: Instance,
        cofaces: usize,
        bound: usize,
    },
    WeightNotLeafConstant {
        leaf: usize,
        atoms: (AtomId, AtomId),
        weights: (Rational, Rational),
    },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::SimplicialIdentity { .. } => "simplicial-identity",
            Violation::Regularity { .. } => "regularity",
            Violation::WeightNotLeafConstant { .. } => "weight-leaf-constancy",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SimplicialIdentity { dim, family, i, j, detail, .. } => write!(
                f,
                "simplicial identity d{i}∘d{j} = d{}∘d{i} fails on family ({dim}, {family}): {detail}",
                j - 1
            ),
            Violation::Regularity { instance, cofaces, bound } => write!(
                f,
                "instance {instance} is a face of {cofaces} instances, above the bound {bound}"
            ),
            Violation::WeightNotLeafConstant { leaf, atoms, weights } => write!(
                f,
                "leaf {leaf} carries atoms {} and {} with weights {} and {}",
                atoms.0,
                atoms.1,
                rational::format_rational(&weights.0),
                rational::format_rational(&weights.1)
            ),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Union by least representative, so roots are block minima.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
