//! Exact rational polyhedral geometry in dimension at most 3.
//!
//! Regions are unions of intersections of half-spaces. Everything is
//! computed with exact rationals; there is no tolerance anywhere.

pub mod adapted;
pub mod io;
pub mod polytope;
pub mod prism;
pub mod regions;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

pub use adapted::{adapted_subdivision, AdaptedBlock, AdaptedSubdivision, CoverBox, CoverElement, Interval};
pub use polytope::{simplex_volume_sum, Polytope};
pub use prism::{prism_decompose, shuffle_sequences, PrismVertex};
pub use regions::{attach_decompose, convex_decompose, triangulate};

pub const MAX_DIM: usize = 3;

pub type Point = Vec<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
}

impl Sense {
    pub fn flip(self) -> Self {
        match self {
            Sense::Le => Sense::Ge,
            Sense::Ge => Sense::Le,
        }
    }
}

/// `normal · x ≤ offset` or `normal · x ≥ offset`, with a primitive integer
/// normal whose first nonzero coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: Vec<i64>,
    offset: Rational,
    sense: Sense,
}

impl HalfSpace {
    pub fn new(normal: &[Rational], offset: Rational, sense: Sense) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(domain("half-space with zero normal"));
        }
        let lcm = normal.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = normal.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
        let mut offset = offset * Rational::new(lcm, g);
        let mut sense = sense;
        if ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            ints.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
            sense = sense.flip();
        }
        let normal = ints
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| domain("half-space normal too large")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { normal, offset, sense })
    }

    pub fn from_ints(normal: &[i64], offset: Rational, sense: Sense) -> Result<Self> {
        let n: Vec<Rational> = normal.iter().map(|&x| rational::int(x)).collect();
        Self::new(&n, offset, sense)
    }

    /// `x_axis ≤ c` or `x_axis ≥ c`.
    pub fn axis(dim: usize, axis: usize, c: Rational, sense: Sense) -> Self {
        let mut n = vec![0; dim];
        n[axis] = 1;
        Self { normal: n, offset: c, sense }
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.normal.iter().zip(x).fold(Rational::zero(), |acc, (&a, b)| acc + rational::int(a) * b)
    }

    /// Sign of `normal · x − offset`.
    pub fn side(&self, x: &[Rational]) -> Ordering {
        self.eval(x).cmp(&self.offset)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        match (self.sense, self.side(x)) {
            (_, Ordering::Equal) => true,
            (Sense::Le, o) => o == Ordering::Less,
            (Sense::Ge, o) => o == Ordering::Greater,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.side(x) == Ordering::Equal
    }

    /// The bounding hyperplane, as a canonical key.
    pub fn hyperplane(&self) -> (Vec<i64>, Rational) {
        (self.normal.clone(), self.offset.clone())
    }

    pub fn complement(&self) -> Self {
        Self { normal: self.normal.clone(), offset: self.offset.clone(), sense: self.sense.flip() }
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.sense == Sense::Le { "<=" } else { ">=" };
        write!(f, "{:?} . x {op} {}", self.normal, rational::format_rational(&self.offset))
    }
}

/// A finite union of finite intersections of half-spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRegion {
    pub ambient_dim: usize,
    pub pieces: Vec<Vec<HalfSpace>>,
}

impl LinearRegion {
    pub fn new(ambient_dim: usize, pieces: Vec<Vec<HalfSpace>>) -> Result<Self> {
        if ambient_dim == 0 || ambient_dim > MAX_DIM {
            return Err(domain(format!("ambient dimension {ambient_dim} is outside 1..={MAX_DIM}")));
        }
        if pieces.iter().flatten().any(|h| h.dim() != ambient_dim) {
            return Err(domain("half-space of the wrong dimension"));
        }
        Ok(Self { ambient_dim, pieces })
    }

    /// The closed box `∏ [lo_i, hi_i]`.
    pub fn cuboid(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(hi).any(|(a, b)| a >= b) {
            return Err(domain("box needs lo < hi on every axis"));
        }
        let d = lo.len();
        let mut hs = Vec::new();
        for k in 0..d {
            hs.push(HalfSpace::axis(d, k, lo[k].clone(), Sense::Ge));
            hs.push(HalfSpace::axis(d, k, hi[k].clone(), Sense::Le));
        }
        Self::new(d, vec![hs])
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        Self { ambient_dim: p.dim(), pieces: vec![p.halfspaces().to_vec()] }
    }

    pub fn from_polytopes(ps: &[Polytope]) -> Self {
        Self { ambient_dim: ps[0].dim(), pieces: ps.iter().map(|p| p.halfspaces().to_vec()).collect() }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.iter().all(|h| h.contains(x)))
    }

    /// Pieces as bounded polytopes; empty or lower-dimensional pieces are dropped.
    pub fn polytopes(&self) -> Result<Vec<Polytope>> {
        let mut out = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let poly = Polytope::new(self.ambient_dim, p.clone())?;
            if !poly.is_empty() && !poly.is_bounded() {
                return Err(domain(format!("piece {i} of the region is unbounded")));
            }
            if poly.is_full_dim() {
                out.push(poly);
            }
        }
        Ok(out)
    }

    /// Exact volume, assuming the pieces have disjoint interiors.
    pub fn volume(&self) -> Result<Rational> {
        Ok(self.polytopes()?.iter().map(Polytope::volume).fold(Rational::zero(), |a, b| a + b))
    }

    /// Every hyperplane bounding some piece.
    pub fn hyperplanes(&self) -> Vec<(Vec<i64>, Rational)> {
        let mut hs: Vec<_> = self.pieces.iter().flatten().map(HalfSpace::hyperplane).collect();
        hs.sort();
        hs.dedup();
        hs
    }

    /// Pieces meet in a connected pattern.
    pub fn is_connected(&self) -> Result<bool> {
        let ps = self.polytopes()?;
        if ps.is_empty() {
            return Ok(false);
        }
        let mut seen = vec![false; ps.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..ps.len() {
                if !seen[j] && !ps[i].intersection(&ps[j]).is_empty() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }
}

/// An ordered simplex with rational vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<Point>,
    /// Sign of the determinant of the edge vectors; 0 below full dimension.
    pub orientation: i8,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let d = vertices.first().map_or(0, Vec::len);
        if vertices.iter().any(|v| v.len() != d) {
            return Err(domain("simplex vertices of mixed dimension"));
        }
        if affine_rank(&vertices) + 1 != vertices.len() {
            return Err(domain("simplex vertices are affinely dependent"));
        }
        let orientation = if vertices.len() == d + 1 {
            match det(&edge_matrix(&vertices)).cmp(&Rational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            }
        } else {
            0
        };
        Ok(Self { vertices, orientation })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Signed volume `det / d!` (full-dimensional simplices only).
    pub fn signed_volume(&self) -> Rational {
        let d = self.ambient_dim();
        if self.vertices.len() != d + 1 {
            return Rational::zero();
        }
        det(&edge_matrix(&self.vertices)) / factorial(d)
    }

    pub fn volume(&self) -> Rational {
        self.signed_volume().abs()
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.vertices)
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rational::int(k))
}

pub fn centroid(points: &[Point]) -> Point {
    let d = points[0].len();
    let k = rational::int(points.len() as i64);
    (0..d)
        .map(|c| points.iter().fold(Rational::zero(), |acc, p| acc + &p[c]) / &k)
        .collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rows `v_i − v_0`.
pub fn edge_matrix(vertices: &[Point]) -> Matrix<Rational> {
    let d = vertices[0].len();
    let rows = vertices.len() - 1;
    let data = vertices[1..].iter().flat_map(|v| sub(v, &vertices[0])).collect();
    Matrix::from_rows(rows, d, data)
}

pub fn det(m: &Matrix<Rational>) -> Rational {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    d
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[Point]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    edge_matrix(points).rank()
}
