use std::collections::BTreeSet;

use crate::error::{structural, Result};

use super::{AtomId, Face, FamilyId, FiberedComplex, Instance, PartialHolonomy, SimplexFamily};

/// A selection of instances, stored per family as a set of base atoms.
///
/// Most operations expect the selection to be closed under faces; use
/// [`Subcomplex::is_face_closed`] or build it with [`Subcomplex::closure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    selection: Vec<Vec<BTreeSet<AtomId>>>,
}

impl Subcomplex {
    pub fn empty(complex: &FiberedComplex) -> Self {
        let selection = (0..complex.num_dims())
            .map(|n| vec![BTreeSet::new(); complex.families(n).len()])
            .collect();
        Self { selection }
    }

    pub fn full(complex: &FiberedComplex) -> Self {
        let selection = complex
            .all_families()
            .iter()
            .map(|fams| fams.iter().map(|f| f.base.iter().copied().collect()).collect())
            .collect();
        Self { selection }
    }

    /// All instances of dimension at most `k`.
    pub fn skeleton(complex: &FiberedComplex, k: usize) -> Self {
        let mut s = Self::full(complex);
        for (n, fams) in s.selection.iter_mut().enumerate() {
            if n > k {
                fams.iter_mut().for_each(BTreeSet::clear);
            }
        }
        s
    }

    /// Exactly the listed instances (no closure).
    pub fn from_instances(
        complex: &FiberedComplex,
        instances: impl IntoIterator<Item = Instance>,
    ) -> Result<Self> {
        let mut s = Self::empty(complex);
        for inst in instances {
            if !complex.contains(inst) {
                return Err(structural(format!("instance {inst} does not exist")));
            }
            s.selection[inst.dim][inst.family].insert(inst.atom);
        }
        Ok(s)
    }

    /// Smallest face-closed selection containing the listed instances.
    pub fn closure(
        complex: &FiberedComplex,
        instances: impl IntoIterator<Item = Instance>,
    ) -> Result<Self> {
        let mut s = Self::from_instances(complex, instances)?;
        for n in (1..complex.num_dims()).rev() {
            for inst in s.instances_of_dim(n) {
                for i in 0..=n {
                    let f = complex.face(inst, i);
                    s.selection[f.dim][f.family].insert(f.atom);
                }
            }
        }
        Ok(s)
    }

    /// Every instance having one of the listed instances as an iterated face
    /// (the listed instances included).
    pub fn star(
        complex: &FiberedComplex,
        instances: impl IntoIterator<Item = Instance>,
    ) -> Result<Self> {
        let mut s = Self::from_instances(complex, instances)?;
        for n in 1..complex.num_dims() {
            for inst in complex.instances(n) {
                if (0..=n).any(|i| s.contains(complex.face(inst, i))) {
                    s.selection[n][inst.family].insert(inst.atom);
                }
            }
        }
        Ok(s)
    }

    pub fn contains(&self, inst: Instance) -> bool {
        self.selection
            .get(inst.dim)
            .and_then(|f| f.get(inst.family))
            .is_some_and(|s| s.contains(&inst.atom))
    }

    pub fn selected(&self, dim: usize, family: FamilyId) -> &BTreeSet<AtomId> {
        &self.selection[dim][family]
    }

    pub fn num_dims(&self) -> usize {
        self.selection.len()
    }

    pub fn instances_of_dim(&self, dim: usize) -> Vec<Instance> {
        self.selection
            .get(dim)
            .map(|fams| {
                fams.iter()
                    .enumerate()
                    .flat_map(|(fid, s)| s.iter().map(move |&a| Instance::new(dim, fid, a)))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn instances(&self) -> Vec<Instance> {
        (0..self.selection.len()).flat_map(|n| self.instances_of_dim(n)).collect()
    }

    pub fn len(&self) -> usize {
        self.selection.iter().flatten().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A selected instance together with a face that is not selected.
    pub fn face_closure_witness(&self, complex: &FiberedComplex) -> Option<(Instance, Instance)> {
        for n in 1..self.selection.len() {
            for inst in self.instances_of_dim(n) {
                for i in 0..=n {
                    let f = complex.face(inst, i);
                    if !self.contains(f) {
                        return Some((inst, f));
                    }
                }
            }
        }
        None
    }

    pub fn is_face_closed(&self, complex: &FiberedComplex) -> bool {
        self.face_closure_witness(complex).is_none()
    }

    /// Checks the selection refers to `complex` and is face-closed.
    pub fn check(&self, complex: &FiberedComplex) -> Result<()> {
        for inst in self.instances() {
            if !complex.contains(inst) {
                return Err(structural(format!("subcomplex selects missing instance {inst}")));
            }
        }
        if let Some((inst, f)) = self.face_closure_witness(complex) {
            return Err(structural(format!(
                "subcomplex is not closed under faces: {inst} is selected but its face {f} is not"
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&BTreeSet<AtomId>, &BTreeSet<AtomId>) -> BTreeSet<AtomId>) -> Self {
        let dims = self.selection.len().max(other.selection.len());
        let empty = BTreeSet::new();
        let selection = (0..dims)
            .map(|n| {
                let a = self.selection.get(n).map(Vec::as_slice).unwrap_or(&[]);
                let b = other.selection.get(n).map(Vec::as_slice).unwrap_or(&[]);
                (0..a.len().max(b.len()))
                    .map(|f| op(a.get(f).unwrap_or(&empty), b.get(f).unwrap_or(&empty)))
                    .collect()
            })
            .collect();
        Self { selection }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Canonical indices of the selected instances of dimension `dim`.
    pub fn indices(&self, complex: &FiberedComplex, dim: usize) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.instances_of_dim(dim).into_iter().filter_map(|i| complex.index_of(i)).collect();
        v.sort_unstable();
        v
    }

    /// Canonical indices of the unselected instances of dimension `dim`.
    pub fn complement_indices(&self, complex: &FiberedComplex, dim: usize) -> Vec<usize> {
        complex
            .instances(dim)
            .into_iter()
            .enumerate()
            .filter(|(_, i)| !self.contains(*i))
            .map(|(k, _)| k)
            .collect()
    }

    /// The selection as a complex of its own, over the same transversal.
    /// Families with an empty selection are dropped; the returned table maps
    /// old `(dim, family)` to the new family id.
    pub fn extract(&self, complex: &FiberedComplex) -> Result<(FiberedComplex, Vec<Vec<Option<FamilyId>>>)> {
        self.check(complex)?;
        let mut remap: Vec<Vec<Option<FamilyId>>> = Vec::new();
        let mut families: Vec<Vec<SimplexFamily>> = Vec::new();
        for n in 0..complex.num_dims() {
            let mut map = Vec::new();
            let mut out = Vec::new();
            for (fid, fam) in complex.families(n).iter().enumerate() {
                let sel = &self.selection[n][fid];
                if sel.is_empty() {
                    map.push(None);
                    continue;
                }
                let faces = fam
                    .faces
                    .iter()
                    .map(|face| {
                        let pairs = face.map.pairs().filter(|(a, _)| sel.contains(a));
                        Face::new(remap[n - 1][face.target].expect("face-closed"), PartialHolonomy::new(pairs))
                    })
                    .collect();
                map.push(Some(out.len()));
                out.push(SimplexFamily::new(n, sel.iter().copied(), faces));
            }
            remap.push(map);
            families.push(out);
        }
        let sub = FiberedComplex::new(complex.transversal().clone(), families, complex.regularity_bound())?;
        Ok((sub, remap))
    }
}
