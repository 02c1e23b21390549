//! Long exact sequences in cohomology, checked by rank bookkeeping.
//!
//! Each node of a sequence is a cohomology group `Hⁿ(C)` of a finite
//! cochain complex; each arrow is a cochain-level linear map that sends
//! cocycles to cocycles. Exactness at a node holds when the composite of
//! the two adjacent arrows vanishes in cohomology and
//! `rank(in) + rank(out) = dim Hⁿ`.

use serde::Serialize;

use crate::cohomology::coboundary_matrix;
use crate::complex::{FiberedComplex, Subcomplex};
use crate::error::Result;
use crate::field::{CoeffKind, Field, Z2};
use crate::linalg::{EchelonBasis, SparseMatrix};
use crate::rational::Rational;

/// A finite cochain complex: `deltas[n]` maps degree `n` to degree `n + 1`.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    dims: Vec<usize>,
    deltas: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, deltas: Vec<SparseMatrix>) -> Self {
        assert_eq!(dims.len(), deltas.len());
        for (n, d) in deltas.iter().enumerate() {
            assert_eq!(d.cols(), dims[n]);
            assert_eq!(d.rows(), dims.get(n + 1).copied().unwrap_or(0));
        }
        Self { dims, deltas }
    }

    /// Cochains of `complex` vanishing on `rel`.
    pub fn of(complex: &FiberedComplex, rel: Option<&Subcomplex>) -> Self {
        let keep = |n: usize| -> Vec<usize> {
            match rel {
                None => (0..complex.count(n)).collect(),
                Some(a) => a.complement_indices(complex, n),
            }
        };
        Self::select(complex, keep)
    }

    /// Cochains of the subcomplex `a` (its own coboundary).
    pub fn of_sub(complex: &FiberedComplex, a: &Subcomplex) -> Self {
        Self::select(complex, |n| a.indices(complex, n))
    }

    fn select(complex: &FiberedComplex, keep: impl Fn(usize) -> Vec<usize>) -> Self {
        let top = complex.num_dims();
        let kept: Vec<Vec<usize>> = (0..top).map(&keep).collect();
        let dims = kept.iter().map(Vec::len).collect();
        let deltas = (0..top)
            .map(|n| {
                let rows = kept.get(n + 1).cloned().unwrap_or_default();
                coboundary_matrix(complex, n).submatrix(&rows, &kept[n])
            })
            .collect();
        Self { dims, deltas }
    }

    /// Block sum of two complexes with the same number of degrees.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let top = self.dims.len().max(other.dims.len());
        let dim = |c: &Self, n: usize| c.dims.get(n).copied().unwrap_or(0);
        let dims: Vec<usize> = (0..top).map(|n| dim(self, n) + dim(other, n)).collect();
        let deltas = (0..top)
            .map(|n| {
                let rows = dims.get(n + 1).copied().unwrap_or(0);
                let mut m = SparseMatrix::new(rows, dims[n]);
                let (r0, c0) = (dim(self, n + 1), dim(self, n));
                if let Some(d) = self.deltas.get(n) {
                    copy_block(&mut m, d, 0, 0);
                }
                if let Some(d) = other.deltas.get(n) {
                    copy_block(&mut m, d, r0, c0);
                }
                m
            })
            .collect();
        Self { dims, deltas }
    }

    pub fn num_degrees(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn delta(&self, n: usize) -> SparseMatrix {
        self.deltas.get(n).cloned().unwrap_or_else(|| SparseMatrix::new(0, self.dim(n)))
    }

    pub fn is_complex(&self) -> bool {
        self.deltas.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

fn copy_block(dst: &mut SparseMatrix, src: &SparseMatrix, r0: usize, c0: usize) {
    for r in 0..src.rows() {
        for &(c, v) in src.row(r) {
            dst.add_entry(r0 + r, c0 + c, v);
        }
    }
}

/// Selection of coordinates `keep` out of `len`, as a `keep.len() × len` matrix.
pub fn restriction(len: usize, keep: &[usize]) -> SparseMatrix {
    let mut m = SparseMatrix::new(keep.len(), len);
    for (r, &c) in keep.iter().enumerate() {
        m.add_entry(r, c, 1);
    }
    m
}

/// Extension by zero from the coordinates `keep` into `len` coordinates.
pub fn extension(len: usize, keep: &[usize]) -> SparseMatrix {
    restriction(len, keep).transpose()
}

/// Stacks `a` over `b`.
pub fn vstack(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    assert_eq!(a.cols(), b.cols());
    let mut m = SparseMatrix::new(a.rows() + b.rows(), a.cols());
    copy_block(&mut m, a, 0, 0);
    copy_block(&mut m, b, a.rows(), 0);
    m
}

/// `[a | b]`.
pub fn hstack(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    assert_eq!(a.rows(), b.rows());
    let mut m = SparseMatrix::new(a.rows(), a.cols() + b.cols());
    copy_block(&mut m, a, 0, 0);
    copy_block(&mut m, b, 0, a.cols());
    m
}

pub fn scaled(a: &SparseMatrix, s: i64) -> SparseMatrix {
    let mut m = SparseMatrix::new(a.rows(), a.cols());
    for r in 0..a.rows() {
        for &(c, v) in a.row(r) {
            m.add_entry(r, c, v * s);
        }
    }
    m
}

/// A node `Hⁿ(C)` of a long sequence.
#[derive(Debug, Clone)]
pub struct Node {
    pub label: String,
    pub complex: usize,
    pub degree: usize,
}

/// A long sequence: `nodes[k] → nodes[k+1]` via `maps[k]`.
#[derive(Debug, Clone)]
pub struct LongSequence {
    pub complexes: Vec<CochainComplex>,
    pub nodes: Vec<Node>,
    pub maps: Vec<SparseMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub coeff: CoeffKind,
    pub nodes: Vec<NodeReport>,
}

impl SequenceReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    /// First node where exactness fails.
    pub fn first_failure(&self) -> Option<&NodeReport> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

struct NodeData<F> {
    cocycles: Vec<Vec<F>>,
    boundaries: EchelonBasis<F>,
}

fn node_data<F: Field>(c: &CochainComplex, n: usize) -> NodeData<F> {
    let cocycles = c.delta(n).to_dense::<F>().nullspace();
    let mut boundaries = EchelonBasis::new();
    if n > 0 {
        let d = c.delta(n - 1).to_dense::<F>();
        for j in 0..d.cols() {
            boundaries.insert(&d.column(j));
        }
    }
    NodeData { cocycles, boundaries }
}

impl LongSequence {
    pub fn check<F: Field>(&self) -> SequenceReport {
        let data: Vec<NodeData<F>> =
            self.nodes.iter().map(|nd| node_data::<F>(&self.complexes[nd.complex], nd.degree)).collect();
        // rank of the induced map nodes[k] -> nodes[k+1]
        let ranks: Vec<usize> = (0..self.maps.len())
            .map(|k| {
                let mut span = data[k + 1].boundaries.clone();
                let base = span.rank();
                for z in &data[k].cocycles {
                    span.insert(&self.maps[k].mul_vec(z));
                }
                span.rank() - base
            })
            .collect();
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, nd)| {
                let dim = data[k].cocycles.len() - data[k].boundaries.rank();
                let rank_in = if k == 0 { 0 } else { ranks[k - 1] };
                let rank_out = ranks.get(k).copied().unwrap_or(0);
                let composite_zero = k == 0
                    || k + 1 >= self.nodes.len()
                    || data[k - 1].cocycles.iter().all(|z| {
                        let w = self.maps[k].mul_vec(&self.maps[k - 1].mul_vec(z));
                        data[k + 1].boundaries.contains(&w)
                    });
                NodeReport {
                    label: nd.label.clone(),
                    dim,
                    rank_in,
                    rank_out,
                    composite_zero,
                    exact: composite_zero && rank_in + rank_out == dim,
                }
            })
            .collect();
        SequenceReport { coeff: F::KIND, nodes }
    }

    pub fn check_all(&self) -> Vec<SequenceReport> {
        vec![self.check::<Rational>(), self.check::<Z2>()]
    }
}

/// `… → Hⁿ(X,A) → Hⁿ(X) → Hⁿ(A) → Hⁿ⁺¹(X,A) → …`
pub fn pair_sequence(complex: &FiberedComplex, a: &Subcomplex) -> Result<LongSequence> {
    a.check(complex)?;
    let rel = CochainComplex::of(complex, Some(a));
    let full = CochainComplex::of(complex, None);
    let sub = CochainComplex::of_sub(complex, a);
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    let top = complex.num_dims();
    for n in 0..top {
        let outside = a.complement_indices(complex, n);
        let inside = a.indices(complex, n);
        let len = complex.count(n);
        nodes.push(Node { label: format!("H^{n}(X,A)"), complex: 0, degree: n });
        maps.push(extension(len, &outside));
        nodes.push(Node { label: format!("H^{n}(X)"), complex: 1, degree: n });
        maps.push(restriction(len, &inside));
        nodes.push(Node { label: format!("H^{n}(A)"), complex: 2, degree: n });
        if n + 1 < top {
            let outside_up = a.complement_indices(complex, n + 1);
            let d = coboundary_matrix(complex, n);
            let conn = restriction(d.rows(), &outside_up).mul(&d).mul(&extension(len, &inside));
            maps.push(conn);
        }
    }
    Ok(LongSequence { complexes: vec![rel, full, sub], nodes, maps })
}

/// Pair sequence exactness over ℚ and ℤ₂.
pub fn pair_sequence_check(complex: &FiberedComplex, a: &Subcomplex) -> Result<Vec<SequenceReport>> {
    Ok(pair_sequence(complex, a)?.check_all())
}

/// `… → Hⁿ(X) → Hⁿ(U) ⊕ Hⁿ(V) → Hⁿ(U∩V) → Hⁿ⁺¹(X) → …` for face-closed
/// `U`, `V` covering `X`.
pub fn mayer_vietoris_sequence(complex: &FiberedComplex, u: &Subcomplex, v: &Subcomplex) -> Result<LongSequence> {
    u.check(complex)?;
    v.check(complex)?;
    let w = u.intersection(v);
    let full = CochainComplex::of(complex, None);
    let sum = CochainComplex::of_sub(complex, u).direct_sum(&CochainComplex::of_sub(complex, v));
    let inter = CochainComplex::of_sub(complex, &w);
    let top = complex.num_dims();
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for n in 0..top {
        let len = complex.count(n);
        let (iu, iv, iw) = (u.indices(complex, n), v.indices(complex, n), w.indices(complex, n));
        nodes.push(Node { label: format!("H^{n}(X)"), complex: 0, degree: n });
        maps.push(vstack(&restriction(len, &iu), &restriction(len, &iv)));
        nodes.push(Node { label: format!("H^{n}(U)+H^{n}(V)"), complex: 1, degree: n });
        // positions of U∩V inside U and inside V
        let pos = |outer: &[usize]| -> Vec<usize> {
            iw.iter().map(|x| outer.binary_search(x).expect("U∩V ⊆ U, V")).collect()
        };
        let ru = restriction(iu.len(), &pos(&iu));
        let rv = scaled(&restriction(iv.len(), &pos(&iv)), -1);
        maps.push(hstack(&ru, &rv));
        nodes.push(Node { label: format!("H^{n}(U∩V)"), complex: 2, degree: n });
        if n + 1 < top {
            let d = coboundary_matrix(complex, n);
            let outside_v = v.complement_indices(complex, n + 1);
            let conn = extension(d.rows(), &outside_v)
                .mul(&restriction(d.rows(), &outside_v))
                .mul(&d)
                .mul(&extension(len, &iw));
            maps.push(conn);
        }
    }
    Ok(LongSequence { complexes: vec![full, sum, inter], nodes, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Instance, Transversal};
    use crate::constructions::kronecker;
    use crate::delta::DeltaComplex;

    fn circle3() -> FiberedComplex {
        DeltaComplex::circle(3).to_fibered(Transversal::unit(1))
    }

    #[test]
    fn empty_pair_is_exact_and_relative_equals_absolute() {
        let c = circle3();
        let reports = pair_sequence_check(&c, &Subcomplex::empty(&c)).unwrap();
        for r in &reports {
            assert!(r.is_exact());
            assert_eq!(r.nodes[0].dim, 1);
            assert_eq!(r.nodes[3].dim, 1);
            assert_eq!(r.nodes[5].dim, 0);
        }
    }

    #[test]
    fn circle_rel_vertex() {
        let c = circle3();
        let a = Subcomplex::closure(&c, [Instance::new(0, 0, 0)]).unwrap();
        let r = pair_sequence(&c, &a).unwrap().check::<Rational>();
        assert!(r.is_exact());
        let dims: Vec<usize> = r.nodes.iter().map(|n| n.dim).collect();
        // H0(X,A) H0(X) H0(A) H1(X,A) H1(X) H1(A)
        assert_eq!(dims, vec![0, 1, 1, 1, 1, 0]);
        assert_eq!(r.nodes[3].rank_out, 1);
    }

    #[test]
    fn kronecker_rel_zero_skeleton() {
        let c = kronecker(3, 1).unwrap();
        let a = Subcomplex::skeleton(&c, 0);
        let r = pair_sequence(&c, &a).unwrap().check::<Z2>();
        assert!(r.is_exact(), "{r:?}");
        // H0(A) has one class per vertex instance
        assert_eq!(r.nodes[2].dim, 3);
    }

    #[test]
    fn mayer_vietoris_on_a_hexagon() {
        let c = DeltaComplex::circle(6).to_fibered(Transversal::unit(1));
        // arcs 0-1-2-3 and 3-4-5-0 as closures of their edges
        let edges = c.instances(1);
        let pick = |pairs: &[[usize; 2]]| {
            let simp = DeltaComplex::circle(6);
            let s = simp.simplices().unwrap();
            let ids: Vec<Instance> = pairs
                .iter()
                .map(|p| {
                    let mut v = p.to_vec();
                    v.sort_unstable();
                    edges[s[1].binary_search(&v).unwrap()]
                })
                .collect();
            Subcomplex::closure(&c, ids).unwrap()
        };
        let u = pick(&[[0, 1], [1, 2], [2, 3]]);
        let v = pick(&[[3, 4], [4, 5], [5, 0]]);
        let seq = mayer_vietoris_sequence(&c, &u, &v).unwrap();
        for r in seq.check_all() {
            assert!(r.is_exact(), "{r:?}");
            assert_eq!(r.nodes[3].dim, 1);
            assert_eq!(r.nodes[2].dim, 2);
        }
    }

    #[test]
    fn direct_sum_is_a_complex() {
        let c = DeltaComplex::simplex(2).to_fibered(Transversal::unit(2));
        let x = CochainComplex::of(&c, None);
        let s = x.direct_sum(&x);
        assert!(s.is_complex());
        assert_eq!(s.dim(1), 2 * x.dim(1));
    }
}
