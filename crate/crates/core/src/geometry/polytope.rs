//! Convex polytopes: vertex enumeration, face lattice, exact volume,
//! mass centers and barycentric triangulation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::{affine_rank, centroid, det, edge_matrix, factorial, HalfSpace, Point, Sense, Simplex};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

/// A face of a polytope, as the sorted indices of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyFace {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// An intersection of half-spaces together with its vertices (sorted
/// lexicographically). Full-dimensional polytopes keep only facet-defining
/// half-spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<Point>,
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn normal_rows(hs: &[&HalfSpace], d: usize) -> Matrix<Rational> {
    let data = hs.iter().flat_map(|h| h.normal().iter().map(|&a| rational::int(a))).collect();
    Matrix::from_rows(hs.len(), d, data)
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        let mut vertices: BTreeSet<Point> = BTreeSet::new();
        for idx in combinations(halfspaces.len(), dim) {
            let rows: Vec<&HalfSpace> = idx.iter().map(|&i| &halfspaces[i]).collect();
            let m = normal_rows(&rows, dim);
            if det(&m).is_zero() {
                continue;
            }
            let rhs: Vec<Rational> = rows.iter().map(|h| h.offset().clone()).collect();
            let x = m.solve(&rhs).expect("nonsingular system");
            if halfspaces.iter().all(|h| h.contains(&x)) {
                vertices.insert(x);
            }
        }
        let vertices: Vec<Point> = vertices.into_iter().collect();
        let mut p = Self { dim, halfspaces, vertices };
        if p.is_full_dim() && p.is_bounded() {
            p.prune();
        }
        Ok(p)
    }

    /// Convex hull of a full-dimensional point set.
    pub fn hull(dim: usize, points: &[Point]) -> Result<Self> {
        let mut hs: BTreeSet<HalfSpace> = BTreeSet::new();
        for idx in combinations(points.len(), dim) {
            let sel: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
            let normal = if dim == 1 {
                vec![rational::int(1)]
            } else {
                let ns = edge_matrix(&sel).nullspace();
                if ns.len() != 1 {
                    continue;
                }
                ns.into_iter().next().unwrap()
            };
            let off = super::dot(&normal, &sel[0]);
            let sides: Vec<std::cmp::Ordering> = points.iter().map(|p| super::dot(&normal, p).cmp(&off)).collect();
            if sides.iter().all(|s| s.is_le()) {
                hs.insert(HalfSpace::new(&normal, off.clone(), Sense::Le)?);
            } else if sides.iter().all(|s| s.is_ge()) {
                hs.insert(HalfSpace::new(&normal, off.clone(), Sense::Ge)?);
            }
        }
        Self::new(dim, hs.into_iter().collect())
    }

    fn prune(&mut self) {
        let mut keep: BTreeSet<HalfSpace> = BTreeSet::new();
        for h in &self.halfspaces {
            let tight: Vec<Point> = self.vertices.iter().filter(|v| h.is_tight(v)).cloned().collect();
            if !tight.is_empty() && affine_rank(&tight) + 1 == self.dim {
                keep.insert(h.clone());
            }
        }
        self.halfspaces = keep.into_iter().collect();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn affine_dim(&self) -> Option<usize> {
        (!self.vertices.is_empty()).then(|| affine_rank(&self.vertices))
    }

    pub fn is_full_dim(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    /// No nonzero direction of recession.
    pub fn is_bounded(&self) -> bool {
        let d = self.dim;
        let all: Vec<&HalfSpace> = self.halfspaces.iter().collect();
        if all.len() < d + 1 || normal_rows(&all, d).rank() < d {
            return false;
        }
        for idx in combinations(all.len(), d - 1) {
            let rows: Vec<&HalfSpace> = idx.iter().map(|&i| all[i]).collect();
            let ray = if d == 1 {
                vec![rational::int(1)]
            } else {
                let ns = normal_rows(&rows, d).nullspace();
                if ns.len() != 1 {
                    continue;
                }
                ns.into_iter().next().unwrap()
            };
            for s in [1, -1] {
                let r: Point = ray.iter().map(|x| x * rational::int(s)).collect();
                let recedes = all.iter().all(|h| {
                    let v = h.normal().iter().zip(&r).fold(Rational::zero(), |a, (&n, x)| a + rational::int(n) * x);
                    match h.sense() {
                        Sense::Le => !v.is_positive(),
                        Sense::Ge => !v.is_negative(),
                    }
                });
                if recedes {
                    return false;
                }
            }
        }
        true
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    pub fn intersection(&self, other: &Polytope) -> Polytope {
        let mut hs = self.halfspaces.clone();
        hs.extend(other.halfspaces.iter().cloned());
        Polytope::new(self.dim, hs).expect("same dimension")
    }

    /// Full-dimensional parts on the two sides of the hyperplane.
    pub fn split(&self, normal: &[i64], offset: &Rational) -> (Option<Polytope>, Option<Polytope>) {
        let h = HalfSpace::from_ints(normal, offset.clone(), Sense::Le).expect("nonzero normal");
        let below = self.vertices.iter().any(|v| h.side(v).is_lt());
        let above = self.vertices.iter().any(|v| h.side(v).is_gt());
        if !(below && above) {
            return if below { (Some(self.clone()), None) } else { (None, Some(self.clone())) };
        }
        let side = |h: HalfSpace| {
            let mut hs = self.halfspaces.clone();
            hs.push(h);
            Polytope::new(self.dim, hs).ok().filter(Polytope::is_full_dim)
        };
        (side(h.clone()), side(h.complement()))
    }

    /// All nonempty faces, the polytope itself included, ordered by dimension.
    pub fn faces(&self) -> Vec<PolyFace> {
        let n = self.vertices.len();
        if n == 0 {
            return Vec::new();
        }
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert((0..n).collect());
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for h in &self.halfspaces {
            let t: Vec<usize> = (0..n).filter(|&i| h.is_tight(&self.vertices[i])).collect();
            if !t.is_empty() && t.len() < n {
                facets.push(t);
            }
        }
        let mut frontier: Vec<Vec<usize>> = facets.clone();
        for f in &facets {
            sets.insert(f.clone());
        }
        while let Some(s) = frontier.pop() {
            for f in &facets {
                let meet: Vec<usize> = s.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
                if !meet.is_empty() && sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut out: Vec<PolyFace> = sets
            .into_iter()
            .map(|vs| {
                let pts: Vec<Point> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
                PolyFace { dim: affine_rank(&pts), vertices: vs }
            })
            .collect();
        out.sort();
        out
    }

    /// Faces of `face` one dimension lower.
    fn subfaces<'a>(faces: &'a [PolyFace], face: &PolyFace) -> impl Iterator<Item = &'a PolyFace> + 'a {
        let parent = face.clone();
        faces.iter().filter(move |g| {
            g.dim + 1 == parent.dim && g.vertices.iter().all(|v| parent.vertices.binary_search(v).is_ok())
        })
    }

    /// Pulling triangulation of a face from its least vertex, as vertex index lists.
    fn pulling(&self, faces: &[PolyFace], face: &PolyFace) -> Vec<Vec<usize>> {
        if face.dim == 0 {
            return vec![vec![face.vertices[0]]];
        }
        let v0 = face.vertices[0];
        let mut out = Vec::new();
        for g in Self::subfaces(faces, face) {
            if g.vertices.contains(&v0) {
                continue;
            }
            for s in self.pulling(faces, g) {
                let mut t = vec![v0];
                t.extend(s);
                out.push(t);
            }
        }
        out
    }

    /// Simplices of the pulling triangulation of the whole polytope.
    pub fn pulling_triangulation(&self) -> Vec<Simplex> {
        let faces = self.faces();
        let Some(top) = faces.last() else {
            return Vec::new();
        };
        self.pulling(&faces, top)
            .into_iter()
            .map(|s| Simplex::new(s.iter().map(|&i| self.vertices[i].clone()).collect()).expect("pulling simplices are proper"))
            .collect()
    }

    pub fn volume(&self) -> Rational {
        if !self.is_full_dim() {
            return Rational::zero();
        }
        self.pulling_triangulation().iter().map(Simplex::volume).fold(Rational::zero(), |a, b| a + b)
    }

    /// Mass center of a face, computed from its pulling triangulation.
    fn mass_center(&self, faces: &[PolyFace], face: &PolyFace) -> Point {
        if face.dim == 0 {
            return self.vertices[face.vertices[0]].clone();
        }
        let simplices: Vec<Vec<Point>> = self
            .pulling(faces, face)
            .into_iter()
            .map(|s| s.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect();
        // project onto coordinates where the face's affine span maps bijectively
        let k = face.dim;
        let e = edge_matrix(&simplices[0]);
        let cols = combinations(self.dim, k)
            .into_iter()
            .find(|cs| !det(&e.select_cols(cs)).is_zero())
            .expect("face spans k dimensions");
        let mut total = Rational::zero();
        let mut acc = vec![Rational::zero(); self.dim];
        for s in &simplices {
            let w = det(&edge_matrix(s).select_cols(&cols)).abs();
            let c = centroid(s);
            for (a, x) in acc.iter_mut().zip(&c) {
                *a += &w * x;
            }
            total += w;
        }
        acc.into_iter().map(|a| a / &total).collect()
    }

    /// Mass center of the whole polytope.
    pub fn barycenter(&self) -> Point {
        let faces = self.faces();
        self.mass_center(&faces, faces.last().expect("nonempty polytope"))
    }

    /// Barycentric subdivision through complete flags of faces, each simplex
    /// spanned by the mass centers of the faces of one flag.
    pub fn barycentric_triangulation(&self) -> Vec<Simplex> {
        let faces = self.faces();
        let Some(top) = faces.last().cloned() else {
            return Vec::new();
        };
        let mut centers: BTreeMap<Vec<usize>, Point> = BTreeMap::new();
        for f in &faces {
            centers.insert(f.vertices.clone(), self.mass_center(&faces, f));
        }
        let mut flags: Vec<Vec<&PolyFace>> = Vec::new();
        fn go<'a>(faces: &'a [PolyFace], f: &'a PolyFace, tail: &mut Vec<&'a PolyFace>, out: &mut Vec<Vec<&'a PolyFace>>) {
            tail.push(f);
            if f.dim == 0 {
                let mut flag = tail.clone();
                flag.reverse();
                out.push(flag);
            } else {
                for g in Polytope::subfaces(faces, f) {
                    go(faces, g, tail, out);
                }
            }
            tail.pop();
        }
        let top_ref = faces.iter().find(|f| **f == top).unwrap();
        go(&faces, top_ref, &mut Vec::new(), &mut flags);
        flags
            .into_iter()
            .map(|flag| {
                Simplex::new(flag.iter().map(|f| centers[&f.vertices].clone()).collect()).expect("flag simplices are proper")
            })
            .collect()
    }
}

/// Volume of `∏ [lo_i, hi_i]`.
pub fn box_volume(lo: &[Rational], hi: &[Rational]) -> Rational {
    lo.iter().zip(hi).fold(rational::int(1), |acc, (a, b)| acc * (b - a))
}

pub fn simplex_volume_sum(simplices: &[Simplex]) -> Rational {
    simplices.iter().map(Simplex::volume).fold(Rational::zero(), |a, b| a + b)
}

/// `|det| / d!` of the edge matrix; used by callers that only have points.
pub fn points_volume(points: &[Point]) -> Rational {
    det(&edge_matrix(points)).abs() / factorial(points[0].len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LinearRegion;
    use crate::rational::{int, rat};

    fn unit_square() -> Polytope {
        LinearRegion::cuboid(&[int(0), int(0)], &[int(1), int(1)]).unwrap().polytopes().unwrap().remove(0)
    }

    #[test]
    fn square_faces_and_volume() {
        let sq = unit_square();
        assert_eq!(sq.vertices().len(), 4);
        let faces = sq.faces();
        let by_dim: Vec<usize> = (0..3).map(|d| faces.iter().filter(|f| f.dim == d).count()).collect();
        assert_eq!(by_dim, vec![4, 4, 1]);
        assert_eq!(sq.volume(), int(1));
        assert_eq!(sq.barycenter(), vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn square_barycentric_has_eight_triangles() {
        let t = unit_square().barycentric_triangulation();
        assert_eq!(t.len(), 8);
        assert_eq!(simplex_volume_sum(&t), int(1));
    }

    #[test]
    fn triangle_barycentric_has_six() {
        let tri = Polytope::hull(2, &[vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(tri.halfspaces().len(), 3);
        let t = tri.barycentric_triangulation();
        assert_eq!(t.len(), 6);
        assert_eq!(simplex_volume_sum(&t), rat(1, 2));
        assert_eq!(tri.barycenter(), vec![rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn cube_counts() {
        let c = LinearRegion::cuboid(&[int(0), int(0), int(0)], &[int(1), int(2), int(3)]).unwrap().polytopes().unwrap().remove(0);
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.volume(), int(6));
        // 6 facets × 4 edges × 2 vertices
        assert_eq!(c.barycentric_triangulation().len(), 48);
    }

    #[test]
    fn trapezoid_mass_center_is_area_weighted() {
        // (0,0) (2,0) (1,1) (0,1): area 3/2, centroid x = 7/9, y = 4/9
        let pts = vec![vec![int(0), int(0)], vec![int(2), int(0)], vec![int(1), int(1)], vec![int(0), int(1)]];
        let p = Polytope::hull(2, &pts).unwrap();
        assert_eq!(p.volume(), rat(3, 2));
        assert_eq!(p.barycenter(), vec![rat(7, 9), rat(4, 9)]);
    }

    #[test]
    fn split_and_containment() {
        let sq = unit_square();
        let (a, b) = sq.split(&[1, 0], &rat(1, 3));
        let (a, b) = (a.unwrap(), b.unwrap());
        assert_eq!(a.volume() + b.volume(), int(1));
        assert!(sq.contains(&a) && sq.contains(&b));
        assert!(!a.intersection(&b).is_full_dim());
        let (c, d) = sq.split(&[1, 0], &int(5));
        assert!(c.is_some() && d.is_none());
    }
}
