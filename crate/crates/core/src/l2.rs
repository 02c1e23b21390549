//! Weighted inner products, the Hodge Laplacian and Λ-Betti numbers.
//!
//! The L² space of degree n is spanned by the instances whose atom has
//! positive weight; instances over zero-weight atoms are dropped. The
//! adjoint of δ is `δ* = W⁻¹ δᵀ W` with `W` the diagonal weight matrix.
//!
//! Every quantity has an exact path (rational elimination) and a float path
//! (symmetric eigen-decomposition of `W^{1/2} Δ W^{-1/2}`).

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohomology::coboundary_matrix;
use crate::complex::{Cochain, FiberedComplex, Violation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::rational::{self, Rational};

/// Default relative eigenvalue threshold of the float path.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `Σ Λ(atom)·ω·θ` over all instances.
pub fn inner_product(complex: &FiberedComplex, omega: &Cochain<Rational>, theta: &Cochain<Rational>) -> Result<Rational> {
    check_pair(complex, omega.degree(), theta.degree())?;
    omega.check_layout(complex)?;
    theta.check_layout(complex)?;
    let w = instance_weights(complex, omega.degree());
    Ok(omega.to_vector().iter().zip(theta.to_vector()).zip(&w).fold(Rational::zero(), |acc, ((a, b), w)| acc + a * b * w))
}

pub fn inner_product_f64(complex: &FiberedComplex, omega: &Cochain<f64>, theta: &Cochain<f64>) -> Result<f64> {
    check_pair(complex, omega.degree(), theta.degree())?;
    omega.check_layout(complex)?;
    theta.check_layout(complex)?;
    let w = instance_weights(complex, omega.degree());
    Ok(omega.to_vector().iter().zip(theta.to_vector()).zip(&w).map(|((a, b), w)| a * b * rational::to_f64(w)).sum())
}

fn check_pair(_: &FiberedComplex, a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DegreeMismatch { expected: a, found: b });
    }
    Ok(())
}

fn instance_weights(complex: &FiberedComplex, n: usize) -> Vec<Rational> {
    complex.instances(n).iter().map(|i| complex.transversal().weight(i.atom).clone()).collect()
}

/// `Σₙ (−1)ⁿ Σ_{n-instances} Λ(atom)`, which equals `Σ_O Λ_O·χ(O)` when Λ is leaf-constant.
pub fn weighted_euler_characteristic(complex: &FiberedComplex) -> Rational {
    (0..complex.num_dims()).fold(Rational::zero(), |acc, n| {
        let s = instance_weights(complex, n).into_iter().fold(Rational::zero(), |a, b| a + b);
        if n % 2 == 0 {
            acc + s
        } else {
            acc - s
        }
    })
}

/// Eigenvalues and orthonormal eigenvectors (as columns) of a symmetric matrix.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let k = m.nrows();
    if k == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let e = faer::Mat::<f64>::from_fn(k, k, |i, j| m[(i, j)])
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("eigendecomposition of a finite symmetric matrix");
    let (u, s) = (e.U(), e.S());
    (DVector::from_fn(k, |i, _| s[i]), DMatrix::from_fn(k, k, |i, j| u[(i, j)]))
}

/// The L² cochain spaces of a complex with leaf-constant weights.
#[derive(Debug, Clone)]
pub struct L2Space<'a> {
    complex: &'a FiberedComplex,
    /// Canonical instance indices with positive weight, per degree.
    support: Vec<Vec<usize>>,
    weights: Vec<Vec<Rational>>,
    /// Leaf of each supported instance, per degree.
    leaf: Vec<Vec<usize>>,
    /// Weight of every leaf.
    leaf_weight: Vec<Rational>,
}

impl<'a> L2Space<'a> {
    pub fn new(complex: &'a FiberedComplex) -> Result<Self> {
        if let Some(v) = complex.validate().into_iter().find(|v| matches!(v, Violation::WeightNotLeafConstant { .. })) {
            return Err(Error::Invariance(v.to_string()));
        }
        let leaf_of = complex.leaf_of_atoms();
        let blocks = complex.leaf_decomposition();
        let leaf_weight = blocks.iter().map(|b| complex.transversal().weight(b[0]).clone()).collect();
        let mut support = Vec::new();
        let mut weights = Vec::new();
        let mut leaf = Vec::new();
        for n in 0..complex.num_dims() {
            let (mut s, mut w, mut l) = (Vec::new(), Vec::new(), Vec::new());
            for (i, inst) in complex.instances(n).into_iter().enumerate() {
                let x = complex.transversal().weight(inst.atom);
                if x.is_positive() {
                    s.push(i);
                    w.push(x.clone());
                    l.push(leaf_of[inst.atom]);
                }
            }
            support.push(s);
            weights.push(w);
            leaf.push(l);
        }
        Ok(Self { complex, support, weights, leaf, leaf_weight })
    }

    pub fn complex(&self) -> &FiberedComplex {
        self.complex
    }

    pub fn dim(&self, n: usize) -> usize {
        self.support.get(n).map_or(0, Vec::len)
    }

    /// Weights of the supported instances of degree `n`.
    pub fn weights(&self, n: usize) -> &[Rational] {
        self.weights.get(n).map_or(&[], Vec::as_slice)
    }

    fn weights_f64(&self, n: usize) -> Vec<f64> {
        self.weights(n).iter().map(rational::to_f64).collect()
    }

    /// δₙ restricted to supported instances.
    pub fn delta(&self, n: usize) -> SparseMatrix {
        let d = coboundary_matrix(self.complex, n);
        let rows: Vec<usize> = self.support.get(n + 1).cloned().unwrap_or_default();
        let cols: Vec<usize> = self.support.get(n).cloned().unwrap_or_default();
        if d.rows() == 0 {
            return SparseMatrix::new(0, cols.len());
        }
        d.submatrix(&rows, &cols)
    }

    /// Coordinates of a cochain on the supported instances.
    pub fn local<F: crate::field::Field>(&self, omega: &Cochain<F>) -> Vec<F> {
        let v = omega.to_vector();
        self.support[omega.degree()].iter().map(|&i| v[i].clone()).collect()
    }

    /// Cochain with the given supported coordinates and zero elsewhere.
    pub fn global<F: crate::field::Field>(&self, n: usize, x: &[F]) -> Cochain<F> {
        let mut v = vec![F::zero(); self.complex.count(n)];
        for (k, &i) in self.support[n].iter().enumerate() {
            v[i] = x[k].clone();
        }
        Cochain::from_vector(self.complex, n, &v).expect("length matches")
    }

    fn weight_diag(&self, n: usize, inverse: bool) -> Matrix<Rational> {
        let w = self.weights(n);
        let mut m = Matrix::zeros(w.len(), w.len());
        for (i, x) in w.iter().enumerate() {
            m.set(i, i, if inverse { x.recip() } else { x.clone() });
        }
        m
    }

    /// `δ*ₙ₋₁ : Cⁿ → Cⁿ⁻¹` as a rational matrix.
    pub fn delta_adjoint(&self, n: usize) -> Matrix<Rational> {
        if n == 0 {
            return Matrix::zeros(0, self.dim(0));
        }
        let d = self.delta(n - 1).to_dense::<Rational>();
        self.weight_diag(n - 1, true).mul(&d.transpose()).mul(&self.weight_diag(n, false))
    }

    /// `Δₙ = δ*δ + δδ*` on supported instances.
    pub fn laplacian(&self, n: usize) -> Matrix<Rational> {
        let d = self.delta(n).to_dense::<Rational>();
        let up = self.delta_adjoint(n + 1).mul(&d);
        let mut lap = if up.rows() == self.dim(n) { up } else { Matrix::zeros(self.dim(n), self.dim(n)) };
        if n > 0 {
            let dp = self.delta(n - 1).to_dense::<Rational>();
            lap = lap.add(&dp.mul(&self.delta_adjoint(n)));
        }
        lap
    }

    /// `W^{1/2} Δₙ W^{-1/2}`, symmetric.
    pub fn symmetric_laplacian(&self, n: usize) -> DMatrix<f64> {
        let lap = self.laplacian(n);
        let w = self.weights_f64(n);
        let k = w.len();
        DMatrix::from_fn(k, k, |i, j| rational::to_f64(lap.get(i, j)) * w[i].sqrt() / w[j].sqrt())
    }

    fn leaf_positions(&self, n: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for (k, &l) in self.leaf.get(n).map_or(&[][..], Vec::as_slice).iter().enumerate() {
            match out.iter_mut().find(|(x, _)| *x == l) {
                Some((_, v)) => v.push(k),
                None => out.push((l, vec![k])),
            }
        }
        out
    }

    /// Harmonic dimension per leaf, exact.
    pub fn harmonic_dims(&self, n: usize) -> Vec<(usize, usize)> {
        if n >= self.complex.num_dims() {
            return Vec::new();
        }
        let lap = self.laplacian(n);
        self.leaf_positions(n)
            .into_iter()
            .map(|(l, pos)| (l, pos.len() - lap.select_rows(&pos).select_cols(&pos).rank()))
            .collect()
    }

    /// `Σ_O Λ_O · dim ker Δₙ|_O`, exact.
    pub fn l2_betti(&self, n: usize) -> Rational {
        self.harmonic_dims(n)
            .into_iter()
            .fold(Rational::zero(), |acc, (l, d)| acc + &self.leaf_weight[l] * rational::int(d as i64))
    }

    fn threshold(&self, s: &DMatrix<f64>, tol: f64) -> f64 {
        let top = if s.nrows() == 0 { 0.0 } else { symmetric_eigen(s).0.amax() };
        tol * top.max(1.0)
    }

    /// Float path of [`L2Space::l2_betti`]: eigenvalues below `tol·max(λ_max, 1)` count as zero.
    pub fn l2_betti_f64(&self, n: usize, tol: f64) -> f64 {
        if n >= self.complex.num_dims() {
            return 0.0;
        }
        let s = self.symmetric_laplacian(n);
        let thr = self.threshold(&s, tol);
        self.leaf_positions(n)
            .into_iter()
            .map(|(l, pos)| {
                let block = DMatrix::from_fn(pos.len(), pos.len(), |i, j| s[(pos[i], pos[j])]);
                let zeros = symmetric_eigen(&block).0.iter().filter(|x| x.abs() < thr).count();
                rational::to_f64(&self.leaf_weight[l]) * zeros as f64
            })
            .sum()
    }

    /// Exact harmonic basis (not orthogonalized), in supported coordinates.
    pub fn harmonic_basis(&self, n: usize) -> Vec<Vec<Rational>> {
        if n >= self.complex.num_dims() {
            return Vec::new();
        }
        self.laplacian(n).nullspace()
    }

    /// W-orthonormal harmonic basis from the eigenvectors of the symmetric Laplacian.
    pub fn harmonic_basis_f64(&self, n: usize, tol: f64) -> Vec<Vec<f64>> {
        if n >= self.complex.num_dims() || self.dim(n) == 0 {
            return Vec::new();
        }
        let s = self.symmetric_laplacian(n);
        let thr = self.threshold(&s, tol);
        let (values, vectors) = symmetric_eigen(&s);
        let w = self.weights_f64(n);
        let idx: Vec<usize> = (0..values.len()).filter(|&i| values[i].abs() < thr).collect();
        idx.into_iter()
            .map(|i| vectors.column(i).iter().zip(&w).map(|(x, w)| x / w.sqrt()).collect())
            .collect()
    }

    /// Exact orthogonal decomposition `ω = h + δα + δ*β`.
    pub fn hodge_decompose(&self, omega: &Cochain<Rational>) -> Result<HodgeDecomposition<Rational>> {
        omega.check_layout(self.complex)?;
        let n = omega.degree();
        let x = self.local(omega);
        let w = self.weight_diag(n, false);
        // δα: W-orthogonal projection onto im δₙ₋₁
        let (alpha, exact) = if n == 0 {
            (Vec::new(), vec![Rational::zero(); x.len()])
        } else {
            let d = self.delta(n - 1).to_dense::<Rational>();
            let dt_w = d.transpose().mul(&w);
            let alpha = dt_w.mul(&d).solve(&dt_w.mul_vec(&x)).expect("normal equations are consistent");
            let e = d.mul_vec(&alpha);
            (alpha, e)
        };
        // δ*β: W-orthogonal projection onto im δ*ₙ, from δδ*β = δω
        let d = self.delta(n).to_dense::<Rational>();
        let (beta, coexact) = if d.rows() == 0 {
            (Vec::new(), vec![Rational::zero(); x.len()])
        } else {
            let adj = self.delta_adjoint(n + 1);
            let beta = d.mul(&adj).solve(&d.mul_vec(&x)).expect("normal equations are consistent");
            let c = adj.mul_vec(&beta);
            (beta, c)
        };
        let harmonic: Vec<Rational> = (0..x.len()).map(|i| &x[i] - &exact[i] - &coexact[i]).collect();
        Ok(HodgeDecomposition {
            harmonic: self.global(n, &harmonic),
            exact: self.global(n, &exact),
            coexact: self.global(n, &coexact),
            alpha: if n == 0 { None } else { Some(self.global(n - 1, &alpha)) },
            beta: if beta.is_empty() { None } else { Some(self.global(n + 1, &beta)) },
        })
    }

    /// Float decomposition through Euclidean projections in `W^{1/2}` coordinates.
    pub fn hodge_decompose_f64(&self, omega: &Cochain<f64>) -> Result<HodgeDecomposition<f64>> {
        omega.check_layout(self.complex)?;
        let n = omega.degree();
        let w = self.weights_f64(n);
        let x = DVector::from_vec(self.local(omega).iter().zip(&w).map(|(a, w)| a * w.sqrt()).collect());
        let k = x.len();
        let scaled = |m: &SparseMatrix, rs: &[f64], cs: &[f64]| {
            let dense = m.to_dense::<f64>();
            DMatrix::from_fn(m.rows(), m.cols(), |i, j| *dense.get(i, j) * rs[i] * cs[j])
        };
        let inv_sqrt = |v: &[f64]| v.iter().map(|x| 1.0 / x.sqrt()).collect::<Vec<_>>();
        let sqrt = |v: &[f64]| v.iter().map(|x| x.sqrt()).collect::<Vec<_>>();
        let project = |a: &DMatrix<f64>| -> (DVector<f64>, DVector<f64>) {
            if a.nrows() == 0 || a.ncols() == 0 {
                return (DVector::zeros(a.ncols()), DVector::zeros(a.nrows()));
            }
            // A⁺x = Aᵀ(AAᵀ)⁺x, with (AAᵀ)⁺ from a symmetric eigendecomposition
            let (values, vectors) = symmetric_eigen(&(a * a.transpose()));
            let cut = values.amax() * 1e-12;
            let mut y = DVector::zeros(a.nrows());
            for (i, &l) in values.iter().enumerate() {
                if l > cut {
                    let v = vectors.column(i);
                    y += v * (v.dot(&x) / l);
                }
            }
            let coef = a.transpose() * y;
            let image = a * &coef;
            (coef, image)
        };
        let (alpha, exact) = if n == 0 {
            (Vec::new(), DVector::zeros(k))
        } else {
            // A = W^{1/2} δ W'^{-1/2}
            let wp = self.weights_f64(n - 1);
            let a = scaled(&self.delta(n - 1), &sqrt(&w), &inv_sqrt(&wp));
            let (c, img) = project(&a);
            (c.iter().zip(&wp).map(|(c, w)| c / w.sqrt()).collect(), img)
        };
        let (beta, coexact) = if n + 1 >= self.complex.num_dims() {
            (Vec::new(), DVector::zeros(k))
        } else {
            // B = W^{-1/2} δᵀ W''^{1/2}
            let wn = self.weights_f64(n + 1);
            let b = scaled(&self.delta(n).transpose(), &inv_sqrt(&w), &sqrt(&wn));
            let (c, img) = project(&b);
            (c.iter().zip(&wn).map(|(c, w)| c / w.sqrt()).collect(), img)
        };
        let back = |v: &DVector<f64>| v.iter().zip(&w).map(|(a, w)| a / w.sqrt()).collect::<Vec<f64>>();
        let harmonic = &x - &exact - &coexact;
        Ok(HodgeDecomposition {
            harmonic: self.global(n, &back(&harmonic)),
            exact: self.global(n, &back(&exact)),
            coexact: self.global(n, &back(&coexact)),
            alpha: if n == 0 { None } else { Some(self.global(n - 1, &alpha)) },
            beta: if beta.is_empty() { None } else { Some(self.global(n + 1, &beta)) },
        })
    }

    /// Full report for degree `n`.
    pub fn report(&self, n: usize, tol: f64) -> HodgeReport {
        let basis = self.harmonic_basis_f64(n, tol);
        let w = self.weights_f64(n);
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).zip(&w).map(|((x, y), w)| x * y * w).sum::<f64>();
        let mut orth: f64 = 0.0;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let target = if i == j { 1.0 } else { 0.0 };
                orth = orth.max((dot(&basis[i], &basis[j]) - target).abs());
            }
        }
        let mut eigen: f64 = 0.0;
        if !basis.is_empty() {
            let lap = self.laplacian(n);
            let lapf = DMatrix::from_fn(lap.rows(), lap.cols(), |i, j| rational::to_f64(lap.get(i, j)));
            for h in &basis {
                let v = &lapf * DVector::from_column_slice(h);
                eigen = eigen.max(dot(v.as_slice(), v.as_slice()).sqrt());
            }
        }
        let kernel_dim = self.harmonic_dims(n).iter().map(|(_, d)| d).sum();
        HodgeReport {
            degree: n,
            kernel_dim,
            lambda_betti: self.l2_betti(n),
            lambda_betti_float: self.l2_betti_f64(n, tol),
            harmonic_basis: basis,
            orthogonality_residual: orth,
            eigen_residual: eigen,
        }
    }
}

/// `ω = harmonic + exact + coexact` with `exact = δα` and `coexact = δ*β`.
#[derive(Debug, Clone, PartialEq)]
pub struct HodgeDecomposition<F> {
    pub harmonic: Cochain<F>,
    pub exact: Cochain<F>,
    pub coexact: Cochain<F>,
    pub alpha: Option<Cochain<F>>,
    pub beta: Option<Cochain<F>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HodgeReport {
    pub degree: usize,
    pub kernel_dim: usize,
    #[serde(with = "rational::as_str")]
    pub lambda_betti: Rational,
    #[serde(serialize_with = "rational::f64_17::serialize")]
    pub lambda_betti_float: f64,
    #[serde(serialize_with = "serialize_basis")]
    pub harmonic_basis: Vec<Vec<f64>>,
    #[serde(serialize_with = "rational::f64_17::serialize")]
    pub orthogonality_residual: f64,
    #[serde(serialize_with = "rational::f64_17::serialize")]
    pub eigen_residual: f64,
}

fn serialize_basis<S: serde::Serializer>(b: &[Vec<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct F(#[serde(serialize_with = "rational::f64_17::serialize")] f64);
    let mut seq = s.serialize_seq(Some(b.len()))?;
    for v in b {
        seq.serialize_element(&v.iter().map(|&x| F(x)).collect::<Vec<_>>())?;
    }
    seq.end()
}

/// Exact Λ-Betti numbers of every degree.
pub fn l2_betti_numbers(complex: &FiberedComplex) -> Result<Vec<Rational>> {
    let space = L2Space::new(complex)?;
    Ok((0..complex.num_dims()).map(|n| space.l2_betti(n)).collect())
}

pub fn l2_betti(complex: &FiberedComplex, n: usize) -> Result<Rational> {
    Ok(L2Space::new(complex)?.l2_betti(n))
}

pub fn l2_betti_f64(complex: &FiberedComplex, n: usize, tol: f64) -> Result<f64> {
    Ok(L2Space::new(complex)?.l2_betti_f64(n, tol))
}
