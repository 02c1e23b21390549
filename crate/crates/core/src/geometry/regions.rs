//! Decompositions of unions of linear regions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::polytope::Polytope;
use super::{affine_rank, sub, HalfSpace, LinearRegion, Point, Sense, Simplex};
use crate::error::{domain, Result};
use crate::rational::{self, Rational};

type Hyperplane = (Vec<i64>, Rational);

/// Bounding box of a set of polytopes, as a polytope.
fn bounding_box(dim: usize, polys: &[Polytope]) -> Result<Polytope> {
    let mut lo: Vec<Option<Rational>> = vec![None; dim];
    let mut hi: Vec<Option<Rational>> = vec![None; dim];
    for v in polys.iter().flat_map(|p| p.vertices()) {
        for k in 0..dim {
            if lo[k].as_ref().is_none_or(|l| v[k] < *l) {
                lo[k] = Some(v[k].clone());
            }
            if hi[k].as_ref().is_none_or(|h| v[k] > *h) {
                hi[k] = Some(v[k].clone());
            }
        }
    }
    let mut hs = Vec::new();
    for k in 0..dim {
        let (Some(l), Some(h)) = (lo[k].clone(), hi[k].clone()) else {
            return Err(domain("no full-dimensional input"));
        };
        hs.push(HalfSpace::axis(dim, k, l, Sense::Ge));
        hs.push(HalfSpace::axis(dim, k, h, Sense::Le));
    }
    Polytope::new(dim, hs)
}

/// Full-dimensional cells of the arrangement of `planes` inside `start`.
pub fn arrangement_cells(start: Polytope, planes: &[Hyperplane]) -> Vec<Polytope> {
    let mut cells = vec![start];
    for (n, c) in planes {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let (a, b) = cell.split(n, c);
            next.extend(a);
            next.extend(b);
        }
        cells = next;
    }
    cells
}

/// A point in the interior of a full-dimensional polytope.
fn interior_point(p: &Polytope) -> Point {
    super::centroid(p.vertices())
}

fn all_polytopes(regions: &[LinearRegion]) -> Result<(usize, Vec<Vec<Polytope>>)> {
    let dim = regions.first().ok_or_else(|| domain("no regions given"))?.ambient_dim;
    if regions.iter().any(|r| r.ambient_dim != dim) {
        return Err(domain("regions live in different dimensions"));
    }
    let polys = regions.iter().map(LinearRegion::polytopes).collect::<Result<Vec<_>>>()?;
    Ok((dim, polys))
}

fn merged_planes(regions: &[LinearRegion]) -> Vec<Hyperplane> {
    let mut hs: Vec<Hyperplane> = regions.iter().flat_map(LinearRegion::hyperplanes).collect();
    hs.sort();
    hs.dedup();
    hs
}

/// Coordinate-wise vertex bounds.
fn vertex_bounds(p: &Polytope) -> (Point, Point) {
    let mut lo = p.vertices()[0].clone();
    let mut hi = lo.clone();
    for v in p.vertices() {
        for k in 0..v.len() {
            if v[k] < lo[k] {
                lo[k] = v[k].clone();
            }
            if v[k] > hi[k] {
                hi[k] = v[k].clone();
            }
        }
    }
    (lo, hi)
}

/// Closed bounding boxes intersect.
fn bounds_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    (0..a.0.len()).all(|k| a.0[k] <= b.1[k] && b.0[k] <= a.1[k])
}

fn polytopes_meet(a: &Polytope, b: &Polytope) -> bool {
    !a.vertices().is_empty() && !b.vertices().is_empty() && bounds_meet(&vertex_bounds(a), &vertex_bounds(b))
}

/// Two cells share a facet.
fn share_facet(a: &Polytope, b: &Polytope) -> bool {
    if !polytopes_meet(a, b) {
        return false;
    }
    let m = a.intersection(b);
    m.affine_dim() == Some(a.dim() - 1)
}

/// Hull of a union of cells when the union is convex. A convex union is
/// cut out by those facet half-spaces of its cells that hold on every cell.
fn convex_hull_of(dim: usize, cells: &[Polytope]) -> Result<Option<Polytope>> {
    if cells.len() == 1 {
        return Ok(Some(cells[0].clone()));
    }
    let pts: std::collections::BTreeSet<&Point> = cells.iter().flat_map(|c| c.vertices()).collect();
    let hs: std::collections::BTreeSet<&HalfSpace> = cells.iter().flat_map(|c| c.halfspaces()).collect();
    let outer: Vec<HalfSpace> = hs.into_iter().filter(|h| pts.iter().all(|p| h.contains(p))).cloned().collect();
    let hull = Polytope::new(dim, outer)?;
    if !hull.is_full_dim() || !hull.is_bounded() {
        return Ok(None);
    }
    let total = cells.iter().map(Polytope::volume).fold(Rational::zero(), |a, b| a + b);
    Ok((hull.volume() == total).then_some(hull))
}

/// Splits a union of maximal regions into regions that pairwise meet only
/// along common faces (or not at all).
///
/// Cells of the arrangement of every bounding hyperplane are grouped by the
/// set of inputs containing them; facet-adjacent cells of one group merge.
pub fn attach_decompose(regions: &[LinearRegion]) -> Result<Vec<LinearRegion>> {
    let (dim, polys) = all_polytopes(regions)?;
    let flat: Vec<Polytope> = polys.iter().flatten().cloned().collect();
    let cells = arrangement_cells(bounding_box(dim, &flat)?, &merged_planes(regions));
    let mut groups: BTreeMap<Vec<usize>, Vec<Polytope>> = BTreeMap::new();
    for cell in cells {
        let x = interior_point(&cell);
        let sig: Vec<usize> = (0..regions.len()).filter(|&i| polys[i].iter().any(|p| p.contains_point(&x))).collect();
        if !sig.is_empty() {
            groups.entry(sig).or_default().push(cell);
        }
    }
    let mut parts: Vec<Vec<Polytope>> = Vec::new();
    for cells in groups.into_values() {
        let bounds: Vec<(Point, Point)> = cells.iter().map(vertex_bounds).collect();
        let mut comp = vec![usize::MAX; cells.len()];
        for s in 0..cells.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..cells.len() {
                    if comp[j] == usize::MAX && bounds_meet(&bounds[i], &bounds[j]) && share_facet(&cells[i], &cells[j]) {
                        comp[j] = s;
                        stack.push(j);
                    }
                }
            }
        }
        let mut by_comp: BTreeMap<usize, Vec<Polytope>> = BTreeMap::new();
        for (i, c) in cells.into_iter().enumerate() {
            by_comp.entry(comp[i]).or_default().push(c);
        }
        parts.extend(by_comp.into_values());
    }
    // a convex component becomes one polytope unless that breaks attachment
    for i in 0..parts.len() {
        if let Some(hull) = convex_hull_of(dim, &parts[i])? {
            let single = std::slice::from_ref(&hull);
            if (0..parts.len()).all(|j| j == i || regions_attached(single, &parts[j])) {
                parts[i] = vec![hull];
            }
        }
    }
    Ok(parts.iter().map(|p| LinearRegion::from_polytopes(p)).collect())
}

/// Convex pieces with disjoint interiors covering a bounded region: the
/// full-dimensional sign-pattern cells of its own hyperplanes that fall in
/// one of its pieces.
pub fn convex_decompose(region: &LinearRegion) -> Result<Vec<Polytope>> {
    let polys = region.polytopes()?;
    if polys.is_empty() {
        return Ok(Vec::new());
    }
    if polys.len() == 1 {
        return Ok(polys);
    }
    let cells = arrangement_cells(bounding_box(region.ambient_dim, &polys)?, &region.hyperplanes());
    Ok(cells
        .into_iter()
        .filter(|c| {
            let x = interior_point(c);
            polys.iter().any(|p| p.contains_point(&x))
        })
        .collect())
}

/// Barycentric triangulation of pairwise attached-or-disjoint regions.
///
/// The regions are cut by the arrangement of all their hyperplanes, which
/// makes neighbouring cells meet in whole faces, and every cell is then
/// subdivided through flags of faces with exact mass centers.
pub fn triangulate(regions: &[LinearRegion]) -> Result<Vec<Simplex>> {
    let (dim, polys) = all_polytopes(regions)?;
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            if !regions_attached(&polys[i], &polys[j]) {
                return Err(domain(format!("regions {i} and {j} overlap without being attached")));
            }
        }
    }
    let flat: Vec<Polytope> = polys.iter().flatten().cloned().collect();
    let cells = arrangement_cells(bounding_box(dim, &flat)?, &merged_planes(regions));
    let mut out = Vec::new();
    for cell in cells {
        let x = interior_point(&cell);
        if flat.iter().any(|p| p.contains_point(&x)) {
            out.extend(cell.barycentric_triangulation());
        }
    }
    Ok(out)
}

/// Is `face` (given by its vertices) a face of `p`?
pub fn is_face_of(p: &Polytope, face: &[Point]) -> bool {
    if face.is_empty() {
        return true;
    }
    let tight: Vec<&HalfSpace> = p.halfspaces().iter().filter(|h| face.iter().all(|v| h.is_tight(v))).collect();
    let spanned: Vec<&Point> = p.vertices().iter().filter(|v| tight.iter().all(|h| h.is_tight(v))).collect();
    let mut a: Vec<&Point> = face.iter().collect();
    a.sort();
    let mut b = spanned;
    b.sort();
    a == b
}

/// Pieces of the two regions meet, if at all, in common faces of lower dimension.
pub fn regions_attached(a: &[Polytope], b: &[Polytope]) -> bool {
    a.iter().all(|p| {
        b.iter().all(|q| {
            if !polytopes_meet(p, q) {
                return true;
            }
            let m = p.intersection(q);
            m.is_empty() || (!m.is_full_dim() && is_face_of(p, m.vertices()) && is_face_of(q, m.vertices()))
        })
    })
}

/// Every pair of output regions is attached or disjoint.
pub fn pairwise_attached(regions: &[LinearRegion]) -> Result<bool> {
    let polys = regions.iter().map(LinearRegion::polytopes).collect::<Result<Vec<_>>>()?;
    Ok((0..polys.len()).all(|i| (i + 1..polys.len()).all(|j| regions_attached(&polys[i], &polys[j]))))
}

fn cross(a: &[Rational], b: &[Rational]) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Exact separating-axis test: do two full-dimensional simplices have
/// disjoint interiors? Ambient dimension at most 3.
pub fn interiors_disjoint(a: &Simplex, b: &Simplex) -> bool {
    let d = a.ambient_dim();
    let edges = |s: &Simplex| -> Vec<Point> {
        let v = &s.vertices;
        let mut e = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                e.push(sub(&v[j], &v[i]));
            }
        }
        e
    };
    let mut axes: Vec<Point> = Vec::new();
    match d {
        1 => axes.push(vec![rational::int(1)]),
        2 => {
            for e in edges(a).into_iter().chain(edges(b)) {
                axes.push(vec![-e[1].clone(), e[0].clone()]);
            }
        }
        _ => {
            let (ea, eb) = (edges(a), edges(b));
            for s in [a, b] {
                let v = &s.vertices;
                for skip in 0..v.len() {
                    let f: Vec<&Point> = v.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| p).collect();
                    axes.push(cross(&sub(f[1], f[0]), &sub(f[2], f[0])));
                }
            }
            for x in &ea {
                for y in &eb {
                    axes.push(cross(x, y));
                }
            }
        }
    }
    axes.into_iter().filter(|ax| ax.iter().any(|c| !c.is_zero())).any(|ax| {
        let proj = |s: &Simplex| -> (Rational, Rational) {
            let vals: Vec<Rational> = s.vertices.iter().map(|v| super::dot(&ax, v)).collect();
            (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
        };
        let (amin, amax) = proj(a);
        let (bmin, bmax) = proj(b);
        amax <= bmin || bmax <= amin
    })
}

/// Bounding-box prefilter followed by the exact test on every pair.
pub fn all_interiors_disjoint(simplices: &[Simplex]) -> bool {
    let boxes: Vec<(Point, Point)> = simplices
        .iter()
        .map(|s| {
            let d = s.ambient_dim();
            let lo = (0..d).map(|k| s.vertices.iter().map(|v| v[k].clone()).min().unwrap()).collect();
            let hi = (0..d).map(|k| s.vertices.iter().map(|v| v[k].clone()).max().unwrap()).collect();
            (lo, hi)
        })
        .collect();
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            let (lo1, hi1) = &boxes[i];
            let (lo2, hi2) = &boxes[j];
            let apart = (0..lo1.len()).any(|k| hi1[k] <= lo2[k] || hi2[k] <= lo1[k]);
            if !apart && !interiors_disjoint(&simplices[i], &simplices[j]) {
                return false;
            }
        }
    }
    true
}

/// Each simplex lies in one piece of one of the regions.
pub fn simplices_in_regions(simplices: &[Simplex], regions: &[LinearRegion]) -> Result<bool> {
    let polys: Vec<Polytope> = regions.iter().map(LinearRegion::polytopes).collect::<Result<Vec<_>>>()?.concat();
    Ok(simplices.iter().all(|s| polys.iter().any(|p| s.vertices.iter().all(|v| p.contains_point(v)))))
}

/// Every output region lies in one input region (piecewise).
pub fn contained_in_inputs(outputs: &[LinearRegion], inputs: &[LinearRegion]) -> Result<bool> {
    let ins = inputs.iter().map(LinearRegion::polytopes).collect::<Result<Vec<_>>>()?;
    for o in outputs {
        let pieces = o.polytopes()?;
        let ok = ins.iter().any(|r| pieces.iter().all(|p| r.iter().any(|q| q.contains(p))));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Affine dimension of a set of points (for callers outside the module).
pub fn point_set_dim(points: &[Point]) -> usize {
    affine_rank(points)
}
