//! Exact linear algebra: a dense row-major matrix over any [`Field`] and a
//! sparse integer matrix used for incidence data.
//!
//! Elimination always pivots on the first usable row in row order, so every
//! result (ranks, bases, solutions) is deterministic.

use std::collections::HashMap;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, keep.len());
        for r in 0..self.rows {
            for (j, &c) in keep.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead_row);
            let inv = m.get(lead_row, c).inv().expect("nonzero pivot is invertible");
            for j in c..m.cols {
                let v = m.get(lead_row, j).mul(&inv);
                m.set(lead_row, j, v);
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j).sub(&factor.mul(m.get(lead_row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Rank of the span of a list of vectors of common length `len`.
pub fn span_rank<F: Field>(len: usize, vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        rows.push(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect());
    }
    sparse_rank_rows(rows)
}

/// Sparse matrix with integer entries, stored as sorted rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(r, c)`, dropping the entry if it cancels.
    pub fn add_entry(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of bounds");
        let row = &mut self.entries[r];
        match row.binary_search_by_key(&c, |&(col, _)| col) {
            Ok(pos) => {
                row[pos].1 += v;
                if row[pos].1 == 0 {
                    row.remove(pos);
                }
            }
            Err(pos) => {
                if v != 0 {
                    row.insert(pos, (c, v));
                }
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let row = &self.entries[r];
        row.binary_search_by_key(&c, |&(col, _)| col).map(|p| row[p].1).unwrap_or(0)
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.entries[r]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            for &(c, v) in row {
                t.entries[c].push((r, v));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in sparse product");
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (r, row) in self.entries.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, a) in row {
                for &(c, b) in &rhs.entries[k] {
                    *acc.entry(c).or_insert(0) += a * b;
                }
            }
            let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
            v.sort_unstable();
            out.entries[r] = v;
        }
        out
    }

    /// Keeps the listed rows and columns, in the listed order.
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> SparseMatrix {
        let mut col_map = vec![usize::MAX; self.cols];
        for (j, &c) in keep_cols.iter().enumerate() {
            col_map[c] = j;
        }
        let mut out = SparseMatrix::new(keep_rows.len(), keep_cols.len());
        for (i, &r) in keep_rows.iter().enumerate() {
            let mut row: Vec<(usize, i64)> = self.entries[r]
                .iter()
                .filter(|&&(c, _)| col_map[c] != usize::MAX)
                .map(|&(c, v)| (col_map[c], v))
                .collect();
            row.sort_unstable();
            out.entries[i] = row;
        }
        out
    }

    pub fn to_dense<F: Field>(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.entries.iter().enumerate() {
            for &(c, v) in row {
                m.set(r, c, F::from_i64(v));
            }
        }
        m
    }

    pub fn mul_vec<F: Field>(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for &(c, x) in row {
                    if !v[c].is_zero() {
                        acc.add_assign(&F::from_i64(x).mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact rank over `F` by sparse row elimination.
    ///
    /// # Panics
    /// If `F` is the real field; real ranks need a tolerance.
    pub fn rank<F: Field>(&self) -> usize {
        assert!(F::KIND.is_exact(), "exact rank requested over the real field");
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(c, v)| (c, F::from_i64(v)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        sparse_rank_rows(rows)
    }
}

type SparseRow<F> = Vec<(usize, F)>;

/// Incrementally built echelon basis of a subspace of `F^len`.
#[derive(Debug, Clone)]
pub struct EchelonBasis<F> {
    pivots: HashMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for EchelonBasis<F> {
    fn default() -> Self {
        Self { pivots: HashMap::new() }
    }
}

impl<F: Field> EchelonBasis<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn sparse(v: &[F]) -> SparseRow<F> {
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }

    fn reduce_sparse(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        // reduce only the leading term repeatedly; the lead strictly increases
        let mut done: SparseRow<F> = Vec::new();
        while let Some((lead, coef)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coef.neg(), p),
                None => {
                    done.push(row.remove(0));
                }
            }
        }
        done
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut row = Self::sparse(v);
        while let Some((lead, coef)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coef.neg(), p),
                None => {
                    let inv = coef.inv().expect("nonzero leading entry");
                    for e in &mut row {
                        e.1 = e.1.mul(&inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce_sparse(Self::sparse(v)).is_empty()
    }
}

fn sparse_rank_rows<F: Field>(rows: Vec<SparseRow<F>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F>> = HashMap::new();
    for mut row in rows {
        while let Some((lead, coef)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coef.neg(), p),
                None => {
                    let inv = coef.inv().expect("nonzero leading entry");
                    for e in &mut row {
                        e.1 = e.1.mul(&inv);
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a + s·b` for sparse rows sorted by column.
fn axpy<F: Field>(a: &[(usize, F)], s: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
