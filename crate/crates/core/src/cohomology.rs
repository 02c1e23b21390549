//! Coboundaries, cohomology, and cup products on fibered complexes.

use crate::complex::{Cochain, FiberedComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::field::{CoeffKind, Field, Z2};
use crate::linalg::{EchelonBasis, Matrix, SparseMatrix};
use crate::rational::Rational;

/// Matrix of δ: Cⁿ → Cⁿ⁺¹ in the canonical instance order. Entry
/// `(σ, τ)` is the sum of `(-1)^i` over the faces `i` of σ equal to τ.
///
/// Above the top dimension the matrix has no rows.
pub fn coboundary_matrix(complex: &FiberedComplex, n: usize) -> SparseMatrix {
    let cols = complex.count(n);
    let ups = complex.instances(n + 1);
    let mut m = SparseMatrix::new(ups.len(), cols);
    for (r, &up) in ups.iter().enumerate() {
        for i in 0..=n + 1 {
            let f = complex.face(up, i);
            let c = complex.index_of(f).expect("faces exist");
            m.add_entry(r, c, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// δ restricted to cochains vanishing on `rel` (rows and columns outside it).
pub fn relative_coboundary(complex: &FiberedComplex, n: usize, rel: Option<&Subcomplex>) -> SparseMatrix {
    let d = coboundary_matrix(complex, n);
    match rel {
        None => d,
        Some(a) => d.submatrix(&a.complement_indices(complex, n + 1), &a.complement_indices(complex, n)),
    }
}

pub fn apply_coboundary<F: Field>(complex: &FiberedComplex, omega: &Cochain<F>) -> Result<Cochain<F>> {
    omega.check_layout(complex)?;
    let n = omega.degree();
    let v = coboundary_matrix(complex, n).mul_vec(&omega.to_vector());
    Cochain::from_vector(complex, n + 1, &v)
}

/// Cohomology in one degree: its dimension and cocycle representatives of a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Cohomology<F> {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<Cochain<F>>,
}

fn reject_real<F: Field>() -> Result<()> {
    if F::KIND == CoeffKind::R {
        return Err(Error::WrongBackend(
            "exact cohomology needs z2 or q coefficients; use the L2/Hodge routines for r".into(),
        ));
    }
    Ok(())
}

/// Hⁿ of the complex, or of the pair `(complex, rel)`, with a basis of
/// cocycles independent modulo coboundaries. Relative representatives are
/// extended by zero over `rel`.
pub fn cohomology<F: Field>(complex: &FiberedComplex, n: usize, rel: Option<&Subcomplex>) -> Result<Cohomology<F>> {
    reject_real::<F>()?;
    if let Some(a) = rel {
        a.check(complex)?;
    }
    let keep: Vec<usize> = match rel {
        None => (0..complex.count(n)).collect(),
        Some(a) => a.complement_indices(complex, n),
    };
    let d_n = relative_coboundary(complex, n, rel).to_dense::<F>();
    let cocycles = d_n.nullspace();
    let mut span = EchelonBasis::new();
    if n > 0 {
        let d_prev = relative_coboundary(complex, n - 1, rel).to_dense::<F>();
        for c in 0..d_prev.cols() {
            span.insert(&d_prev.column(c));
        }
    }
    let mut basis = Vec::new();
    for z in cocycles {
        if span.insert(&z) {
            let mut full = vec![F::zero(); complex.count(n)];
            for (k, &idx) in keep.iter().enumerate() {
                full[idx] = z[k].clone();
            }
            basis.push(Cochain::from_vector(complex, n, &full)?);
        }
    }
    Ok(Cohomology { degree: n, dim: basis.len(), basis })
}

/// dim Hⁿ by rank computations only (no basis), suitable for large complexes.
pub fn cohomology_dim_with<F: Field>(complex: &FiberedComplex, n: usize, rel: Option<&Subcomplex>) -> Result<usize> {
    reject_real::<F>()?;
    if let Some(a) = rel {
        a.check(complex)?;
    }
    let size = match rel {
        None => complex.count(n),
        Some(a) => a.complement_indices(complex, n).len(),
    };
    let rank_n = relative_coboundary(complex, n, rel).rank::<F>();
    let rank_prev = if n == 0 { 0 } else { relative_coboundary(complex, n - 1, rel).rank::<F>() };
    Ok(size - rank_n - rank_prev)
}

pub fn cohomology_dim(complex: &FiberedComplex, n: usize, coeff: CoeffKind, rel: Option<&Subcomplex>) -> Result<usize> {
    match coeff {
        CoeffKind::Z2 => cohomology_dim_with::<Z2>(complex, n, rel),
        CoeffKind::Q => cohomology_dim_with::<Rational>(complex, n, rel),
        CoeffKind::R => reject_real::<f64>().map(|_| 0),
    }
}

/// dim Hⁿ for every degree carried by the complex.
pub fn betti_numbers(complex: &FiberedComplex, coeff: CoeffKind, rel: Option<&Subcomplex>) -> Result<Vec<usize>> {
    (0..complex.num_dims()).map(|n| cohomology_dim(complex, n, coeff, rel)).collect()
}

/// A primitive `α` with `δα = ω`, if one exists.
pub fn coboundary_preimage<F: Field>(complex: &FiberedComplex, omega: &Cochain<F>) -> Result<Option<Cochain<F>>> {
    reject_real::<F>()?;
    omega.check_layout(complex)?;
    let n = omega.degree();
    if n == 0 {
        return Ok(omega.is_zero().then(|| Cochain::from_values(0, omega.values().to_vec())));
    }
    let d = coboundary_matrix(complex, n - 1).to_dense::<F>();
    match d.solve(&omega.to_vector()) {
        Some(x) => Ok(Some(Cochain::from_vector(complex, n - 1, &x)?)),
        None => Ok(None),
    }
}

pub fn is_coboundary<F: Field>(complex: &FiberedComplex, omega: &Cochain<F>) -> Result<bool> {
    Ok(coboundary_preimage(complex, omega)?.is_some())
}

/// Front-face/back-face cup product: `(ω⌣θ)(σ) = ω(front_n σ)·θ(back_m σ)`.
/// Above the top dimension the result is the (empty) zero cochain.
pub fn cup_product<F: Field>(complex: &FiberedComplex, omega: &Cochain<F>, theta: &Cochain<F>) -> Result<Cochain<F>> {
    omega.check_layout(complex)?;
    theta.check_layout(complex)?;
    let (n, m) = (omega.degree(), theta.degree());
    let mut out = Cochain::zero(complex, n + m);
    for sigma in complex.instances(n + m) {
        let a = omega.get(complex, complex.front_face(sigma, n));
        if a.is_zero() {
            continue;
        }
        let b = theta.get(complex, complex.back_face(sigma, m));
        out.set(complex, sigma, a.mul(&b));
    }
    Ok(out)
}

/// The signed incidence matrix as a dense matrix over `F`.
pub fn coboundary_dense<F: Field>(complex: &FiberedComplex, n: usize) -> Matrix<F> {
    coboundary_matrix(complex, n).to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Instance, Transversal};
    use crate::constructions::kronecker;
    use crate::delta::DeltaComplex;
    use crate::rational::int;

    fn single(d: &DeltaComplex) -> FiberedComplex {
        d.to_fibered(Transversal::unit(1))
    }

    #[test]
    fn edge_coboundary_is_head_minus_tail() {
        let c = single(&DeltaComplex::edge());
        let d = coboundary_matrix(&c, 0);
        // face 0 omits vertex 0 (so it is the head, vertex 1) with sign +1
        assert_eq!((d.get(0, 1), d.get(0, 0)), (1, -1));
        let omega = Cochain::from_vector(&c, 0, &[int(0), int(1)]).unwrap();
        let d_omega = apply_coboundary(&c, &omega).unwrap();
        assert_eq!(d_omega.to_vector(), vec![int(1)]);
    }

    #[test]
    fn triangle_signed_row() {
        // edges in order [01], [02], [12]; δ of the 2-simplex row is
        // +[12] - [02] + [01]  ->  (+1, -1, +1)
        let c = single(&DeltaComplex::triangle());
        let d = coboundary_matrix(&c, 1);
        assert_eq!((d.rows(), d.cols()), (1, 3));
        assert_eq!([d.get(0, 0), d.get(0, 1), d.get(0, 2)], [1, -1, 1]);
    }

    #[test]
    fn above_top_dimension_has_no_rows() {
        let c = single(&DeltaComplex::edge());
        let d = coboundary_matrix(&c, 1);
        assert_eq!((d.rows(), d.cols()), (0, 1));
    }

    #[test]
    fn delta_squared_vanishes_on_the_tetrahedron() {
        let c = single(&DeltaComplex::simplex(3));
        for n in 0..3 {
            assert!(coboundary_matrix(&c, n + 1).mul(&coboundary_matrix(&c, n)).is_zero());
        }
    }

    #[test]
    fn point_and_triangle_circle() {
        let p = single(&DeltaComplex::point());
        assert_eq!(betti_numbers(&p, CoeffKind::Q, None).unwrap(), vec![1]);
        let circle = single(&DeltaComplex::circle(3));
        assert_eq!(betti_numbers(&circle, CoeffKind::Q, None).unwrap(), vec![1, 1]);
        let h1 = cohomology::<Rational>(&circle, 1, None).unwrap();
        assert_eq!(h1.dim, 1);
        assert!(!is_coboundary(&circle, &h1.basis[0]).unwrap());
    }

    #[test]
    fn disjoint_circles_have_one_constant_per_leaf() {
        let c = DeltaComplex::circle(3).to_fibered(Transversal::unit(3));
        assert_eq!(cohomology_dim(&c, 0, CoeffKind::Q, None).unwrap(), 3);
        let h0 = cohomology::<Rational>(&c, 0, None).unwrap();
        for z in &h0.basis {
            // constant along each leaf
            for leaf_atom in 0..3 {
                let vals: Vec<_> = (0..3).map(|f| z.get(&c, Instance::new(0, f, leaf_atom))).collect();
                assert!(vals.iter().all(|v| v == &vals[0]));
            }
        }
    }

    #[test]
    fn real_coefficients_are_rejected() {
        let c = single(&DeltaComplex::point());
        assert!(matches!(cohomology_dim(&c, 0, CoeffKind::R, None), Err(Error::WrongBackend(_))));
    }

    #[test]
    fn kronecker_q3_coboundary_of_indicator() {
        let c = kronecker(3, 1).unwrap();
        let f = Cochain::from_vector(&c, 0, &[Z2(true), Z2(false), Z2(false)]).unwrap();
        let df = apply_coboundary(&c, &f).unwrap();
        assert_eq!(df.to_vector(), vec![Z2(true), Z2(false), Z2(true)]);
    }

    #[test]
    fn cup_units() {
        let c = single(&DeltaComplex::torus7());
        let one = Cochain::constant(&c, 0, int(1));
        let h1 = cohomology::<Rational>(&c, 1, None).unwrap();
        for theta in &h1.basis {
            assert_eq!(&cup_product(&c, &one, theta).unwrap(), theta);
            assert_eq!(&cup_product(&c, theta, &one).unwrap(), theta);
        }
    }

    #[test]
    fn cup_overflow_is_empty() {
        let c = single(&DeltaComplex::circle(3));
        let h1 = cohomology::<Rational>(&c, 1, None).unwrap();
        let sq = cup_product(&c, &h1.basis[0], &h1.basis[0]).unwrap();
        assert_eq!(sq.degree(), 2);
        assert!(sq.to_vector().is_empty());
    }

    #[test]
    fn relative_circle_rel_vertex() {
        let c = single(&DeltaComplex::circle(3));
        let a = Subcomplex::closure(&c, [Instance::new(0, 0, 0)]).unwrap();
        assert_eq!(cohomology_dim(&c, 0, CoeffKind::Q, Some(&a)).unwrap(), 0);
        assert_eq!(cohomology_dim(&c, 1, CoeffKind::Q, Some(&a)).unwrap(), 1);
    }
}
