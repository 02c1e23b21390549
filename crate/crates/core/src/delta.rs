//! Finite Δ-complexes (semi-simplicial sets) used as leaf models.
//!
//! `cells[n][k]` lists the `n + 1` faces of the k-th n-cell; face `i`
//! omits vertex `i`. Ordered simplicial complexes are the special case
//! produced by [`DeltaComplex::from_simplices`].

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Face, FiberedComplex, SimplexFamily, Transversal};
use crate::error::{structural, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    cells: Vec<Vec<Vec<usize>>>,
    /// Vertex labels for complexes built from simplices.
    simplices: Option<Vec<Vec<Vec<usize>>>>,
}

impl DeltaComplex {
    pub fn new(mut cells: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
        for (n, cs) in cells.iter().enumerate() {
            for (k, faces) in cs.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if faces.len() != expected {
                    return Err(structural(format!("cell ({n}, {k}) has {} faces, expected {expected}", faces.len())));
                }
                if let Some(&f) = faces.iter().find(|&&f| f >= cells[n - 1].len()) {
                    return Err(structural(format!("cell ({n}, {k}) refers to missing face {f}")));
                }
            }
        }
        let d = Self { cells, simplices: None };
        for n in 2..d.cells.len() {
            for (k, faces) in d.cells[n].iter().enumerate() {
                for j in 1..=n {
                    for i in 0..j {
                        if d.cells[n - 1][faces[j]][i] != d.cells[n - 1][faces[i]][j - 1] {
                            return Err(structural(format!(
                                "cell ({n}, {k}) violates the face identity for i={i}, j={j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    /// Ordered simplicial complex generated by the given simplices (vertex
    /// lists, any order); every simplex is sorted ascending.
    pub fn from_simplices(maximal: &[Vec<usize>]) -> Self {
        let mut by_dim: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            let k = s.len();
            // every nonempty subset
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                by_dim.entry(sub.len() - 1).or_default().insert(sub);
            }
        }
        let top = by_dim.keys().next_back().copied();
        let simplices: Vec<Vec<Vec<usize>>> = match top {
            None => Vec::new(),
            Some(t) => (0..=t).map(|n| by_dim.get(&n).map(|s| s.iter().cloned().collect()).unwrap_or_default()).collect(),
        };
        let cells = simplices
            .iter()
            .enumerate()
            .map(|(n, ss)| {
                ss.iter()
                    .map(|s| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let mut f = s.clone();
                                f.remove(i);
                                simplices[n - 1].binary_search(&f).expect("closure contains faces")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { cells, simplices: Some(simplices) }
    }

    pub fn point() -> Self {
        Self::from_simplices(&[vec![0]])
    }

    pub fn edge() -> Self {
        Self::from_simplices(&[vec![0, 1]])
    }

    pub fn triangle() -> Self {
        Self::from_simplices(&[vec![0, 1, 2]])
    }

    /// Full n-simplex.
    pub fn simplex(n: usize) -> Self {
        Self::from_simplices(&[(0..=n).collect()])
    }

    /// Circle with `n` vertices: a loop for `n = 1`, a bigon for `n = 2`,
    /// an ordered simplicial n-gon for `n >= 3`.
    pub fn circle(n: usize) -> Self {
        match n {
            0 => Self { cells: Vec::new(), simplices: None },
            1 => Self::new(vec![vec![vec![]], vec![vec![0, 0]]]).unwrap(),
            2 => Self::new(vec![vec![vec![], vec![]], vec![vec![1, 0], vec![1, 0]]]).unwrap(),
            _ => {
                let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
                Self::from_simplices(&edges)
            }
        }
    }

    /// `k` loops at a single vertex.
    pub fn bouquet(k: usize) -> Self {
        Self::new(vec![vec![vec![]], vec![vec![0, 0]; k]]).unwrap()
    }

    /// One vertex, edges `a = 0` (horizontal), `b = 1` (vertical) and the
    /// diagonal `c = 2`, and the two triangles of the unit square.
    pub fn torus() -> Self {
        Self::new(vec![
            vec![vec![]],
            vec![vec![0, 0]; 3],
            vec![vec![1, 2, 0], vec![0, 2, 1]],
        ])
        .unwrap()
    }

    /// The 7-vertex triangulation of the torus.
    pub fn torus7() -> Self {
        let mut tris = Vec::new();
        for i in 0..7 {
            tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::from_simplices(&tris)
    }

    /// Boundary of the 3-simplex.
    pub fn sphere2() -> Self {
        Self::from_simplices(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
    }

    pub fn num_dims(&self) -> usize {
        self.cells.len()
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }

    pub fn faces(&self, n: usize, k: usize) -> &[usize] {
        &self.cells[n][k]
    }

    pub fn cells(&self) -> &[Vec<Vec<usize>>] {
        &self.cells
    }

    /// Vertex lists, when built from simplices.
    pub fn simplices(&self) -> Option<&[Vec<Vec<usize>>]> {
        self.simplices.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.num_dims()).map(|n| if n % 2 == 0 { self.count(n) as i64 } else { -(self.count(n) as i64) }).sum()
    }

    /// Index of the edge from vertex slot 0 to vertex slot 1 of cell `(n, k)`.
    pub fn leading_edge(&self, n: usize, k: usize) -> usize {
        assert!(n >= 1);
        let mut cur = k;
        for m in (2..=n).rev() {
            cur = self.cells[m][cur][m];
        }
        cur
    }

    /// The product with a transversal: one family per cell over every atom,
    /// with identity face maps.
    pub fn to_fibered(&self, transversal: Transversal) -> FiberedComplex {
        let atoms: Vec<usize> = (0..transversal.len()).collect();
        let families = self
            .cells
            .iter()
            .enumerate()
            .map(|(n, cs)| {
                cs.iter()
                    .map(|faces| {
                        let faces = faces.iter().map(|&t| Face::identity(t, &atoms)).collect();
                        SimplexFamily::new(n, atoms.iter().copied(), faces)
                    })
                    .collect()
            })
            .collect();
        FiberedComplex::with_tight_bound(transversal, families).expect("product complexes are well formed")
    }
}
