//! Subdivisions of `Δⁿ × T` adapted to a box cover.
//!
//! `Δⁿ = {x ≥ 0, Σ xᵢ ≤ 1} ⊂ ℝⁿ`. Atoms with the same cover trace form a
//! block; each block gets the coarsest uniform barycentric refinement of
//! `Δⁿ` whose simplices all sit inside one box of the block's trace.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{centroid, Point, Simplex};
use crate::complex::AtomId;
use crate::error::{domain, Error, Result};
use crate::rational::{self, format_rational, Rational};

/// Iterated subdivisions stop once a block would exceed this many simplices.
pub const MAX_SIMPLICES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Interval {
    #[serde(with = "rational::as_str")]
    pub lo: Rational,
    #[serde(with = "rational::as_str")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Self {
        Self { lo, hi, lo_closed, hi_closed }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { *x >= self.lo } else { *x > self.lo };
        let below = if self.hi_closed { *x <= self.hi } else { *x < self.hi };
        above && below
    }

    /// The closed interval `[a, b]` lies inside.
    pub fn contains_range(&self, a: &Rational, b: &Rational) -> bool {
        self.contains(a) && self.contains(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverBox {
    pub intervals: Vec<Interval>,
}

impl CoverBox {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Self { intervals }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.intervals.iter().zip(x).all(|(i, v)| i.contains(v))
    }

    /// The closed simplex lies inside the box.
    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.intervals.iter().enumerate().all(|(k, iv)| {
            let lo = s.vertices.iter().map(|v| &v[k]).min().expect("nonempty simplex");
            let hi = s.vertices.iter().map(|v| &v[k]).max().expect("nonempty simplex");
            iv.contains_range(lo, hi)
        })
    }
}

/// A box `V` together with the atoms `S` over which it is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverElement {
    #[serde(rename = "box")]
    pub bx: CoverBox,
    pub atoms: Vec<AtomId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBlock {
    pub atoms: Vec<AtomId>,
    /// Distinct boxes seen by every atom of the block.
    pub trace: Vec<CoverBox>,
    /// Number of barycentric subdivisions applied to `Δⁿ`.
    pub depth: usize,
    pub simplices: Vec<Simplex>,
}

impl AdaptedBlock {
    /// Every simplex lies in one box of the trace.
    pub fn refines_cover(&self) -> bool {
        self.simplices.iter().all(|s| self.trace.iter().any(|b| b.contains_simplex(s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedSubdivision {
    pub dim: usize,
    pub blocks: Vec<AdaptedBlock>,
}

impl AdaptedSubdivision {
    /// The blocks partition `0..num_atoms`.
    pub fn is_partition(&self, num_atoms: usize) -> bool {
        let mut seen = vec![false; num_atoms];
        for a in self.blocks.iter().flat_map(|b| &b.atoms) {
            if *a >= num_atoms || seen[*a] {
                return false;
            }
            seen[*a] = true;
        }
        seen.into_iter().all(|x| x)
    }

    pub fn block_of(&self, atom: AtomId) -> Option<&AdaptedBlock> {
        self.blocks.iter().find(|b| b.atoms.contains(&atom))
    }
}

/// Vertices of `Δⁿ`: the origin followed by the unit vectors.
pub fn standard_simplex(n: usize) -> Simplex {
    let mut vs = vec![vec![Rational::zero(); n]];
    for k in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        vs.push(e);
    }
    Simplex::new(vs).expect("standard simplex")
}

/// Barycentric subdivision of one simplex through its full flags of faces.
pub fn barycentric(s: &Simplex) -> Vec<Simplex> {
    let m = s.vertices.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let pts: Vec<Point> = (1..=m)
            .map(|k| {
                let face: Vec<Point> = perm[..k].iter().map(|&i| s.vertices[i].clone()).collect();
                centroid(&face)
            })
            .collect();
        out.push(Simplex::new(pts).expect("flag simplices are nondegenerate"));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A point of `Δⁿ` no box covers, if any.
///
/// Box endpoints cut each axis into points and open gaps; every cell of that
/// grid meeting `Δⁿ` is tested at its corner nearest the origin (pushed into
/// open gaps by a small exact amount).
pub fn uncovered_point(n: usize, boxes: &[&CoverBox]) -> Option<Point> {
    let mut cuts: Vec<Vec<Rational>> = vec![vec![Rational::zero(), Rational::one()]; n];
    for b in boxes {
        for (k, iv) in b.intervals.iter().enumerate() {
            for x in [&iv.lo, &iv.hi] {
                if *x > Rational::zero() && *x < Rational::one() {
                    cuts[k].push(x.clone());
                }
            }
        }
    }
    for c in &mut cuts {
        c.sort();
        c.dedup();
    }
    let min_gap = cuts
        .iter()
        .flat_map(|c| c.windows(2).map(|w| &w[1] - &w[0]))
        .min()
        .unwrap_or_else(Rational::one);
    // a cell is a choice, per axis, of a cut point (even index) or an open gap (odd index)
    let choices: Vec<usize> = cuts.iter().map(|c| 2 * c.len() - 1).collect();
    let mut idx = vec![0usize; n];
    loop {
        let lows: Point = (0..n).map(|k| cuts[k][idx[k] / 2].clone()).collect();
        let open = idx.iter().filter(|&&i| i % 2 == 1).count();
        let sum: Rational = lows.iter().fold(Rational::zero(), |a, b| a + b);
        let meets = if open == 0 { sum <= Rational::one() } else { sum < Rational::one() };
        if meets {
            let delta = if open == 0 {
                Rational::zero()
            } else {
                let slack = (Rational::one() - &sum) / rational::int(2 * open as i64);
                std::cmp::min(min_gap.clone() / rational::int(2), slack)
            };
            let x: Point =
                (0..n).map(|k| if idx[k] % 2 == 1 { &lows[k] + &delta } else { lows[k].clone() }).collect();
            if !boxes.iter().any(|b| b.contains(&x)) {
                return Some(x);
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Partition of the atoms into cover-pattern classes, each with a
/// triangulation of `Δⁿ` refining its boxes.
pub fn adapted_subdivision(n: usize, num_atoms: usize, cover: &[CoverElement]) -> Result<AdaptedSubdivision> {
    for (i, e) in cover.iter().enumerate() {
        if e.bx.dim() != n {
            return Err(domain(format!("cover element {i} has a {}-dimensional box, expected {n}", e.bx.dim())));
        }
        if let Some(&a) = e.atoms.iter().find(|&&a| a >= num_atoms) {
            return Err(domain(format!("cover element {i} names atom {a} outside the transversal")));
        }
    }
    let mut classes: BTreeMap<Vec<CoverBox>, Vec<AtomId>> = BTreeMap::new();
    for t in 0..num_atoms {
        let mut trace: Vec<CoverBox> = cover.iter().filter(|e| e.atoms.contains(&t)).map(|e| e.bx.clone()).collect();
        trace.sort();
        trace.dedup();
        classes.entry(trace).or_default().push(t);
    }
    let mut blocks = Vec::with_capacity(classes.len());
    for (trace, atoms) in classes {
        let refs: Vec<&CoverBox> = trace.iter().collect();
        if let Some(x) = uncovered_point(n, &refs) {
            let mut witness = vec![format!("atom {}", atoms[0])];
            witness.extend(x.iter().map(format_rational));
            return Err(Error::Coverage {
                message: format!("fiber over atom {} is not covered", atoms[0]),
                witness,
            });
        }
        let mut simplices = vec![standard_simplex(n)];
        let mut depth = 0;
        let fits = |s: &Simplex| trace.iter().any(|b| b.contains_simplex(s));
        while !simplices.iter().all(fits) {
            if simplices.len() * (1..=n + 1).product::<usize>() > MAX_SIMPLICES {
                return Err(domain(format!(
                    "no uniform barycentric refinement within {MAX_SIMPLICES} simplices fits the cover of atom {}",
                    atoms[0]
                )));
            }
            simplices = simplices.iter().flat_map(barycentric).collect();
            depth += 1;
        }
        blocks.push(AdaptedBlock { atoms, trace, depth, simplices });
    }
    blocks.sort_by(|a, b| a.atoms.cmp(&b.atoms));
    Ok(AdaptedSubdivision { dim: n, blocks })
}
