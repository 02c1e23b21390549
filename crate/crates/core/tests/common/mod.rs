//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use lamcohom::complex::Instance;
use lamcohom::delta::DeltaComplex;
use lamcohom::geometry::LinearRegion;
use lamcohom::rational::{int, rat, Rational};
use lamcohom::{FiberedComplex, Subcomplex};

pub const P: i64 = 1_000_000_007;

/// `δₙ` as a dense integer matrix, assembled from the face maps alone.
pub fn coboundary_oracle(c: &FiberedComplex, n: usize) -> Vec<Vec<i64>> {
    let cols = if n < c.num_dims() { c.count(n) } else { 0 };
    if n + 1 >= c.num_dims() {
        return Vec::new();
    }
    c.instances(n + 1)
        .into_iter()
        .map(|s| {
            let mut row = vec![0i64; cols];
            for i in 0..=n + 1 {
                let f = c.face(s, i);
                let k = c.instances(n).iter().position(|&x| x == f).expect("face exists");
                row[k] += if i % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Direct evaluation `(δω)(σ) = Σ (−1)ⁱ ω(dᵢσ)`.
pub fn apply_oracle(c: &FiberedComplex, n: usize, omega: &[i64]) -> Vec<i64> {
    let inst = c.instances(n);
    c.instances(n + 1)
        .into_iter()
        .map(|s| {
            (0..=n + 1)
                .map(|i| {
                    let k = inst.iter().position(|&x| x == c.face(s, i)).unwrap();
                    if i % 2 == 0 { omega[k] } else { -omega[k] }
                })
                .sum()
        })
        .collect()
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over `𝔽_p` by plain elimination.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col] * inv % p;
                for c in col..ncols {
                    m[r][c] = (m[r][c] - f * m[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn restrict(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Vec<Vec<i64>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect()
}

fn outside(c: &FiberedComplex, n: usize, rel: Option<&Subcomplex>) -> Vec<usize> {
    c.instances(n)
        .into_iter()
        .enumerate()
        .filter(|(_, i)| rel.is_none_or(|a| !a.contains(*i)))
        .map(|(k, _)| k)
        .collect()
}

/// `dim Hⁿ(X, A)` over `𝔽_p` (ℚ for these sizes) or `𝔽₂`.
pub fn betti_oracle(c: &FiberedComplex, rel: Option<&Subcomplex>, p: i64) -> Vec<usize> {
    let dims = c.num_dims();
    let ranks: Vec<usize> = (0..dims)
        .map(|n| {
            let m = coboundary_oracle(c, n);
            if m.is_empty() {
                return 0;
            }
            rank_mod(&restrict(&m, &outside(c, n + 1, rel), &outside(c, n, rel)), p)
        })
        .collect();
    (0..dims)
        .map(|n| outside(c, n, rel).len() - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect()
}

/// Betti numbers of a Δ-complex from its face lists.
pub fn delta_betti(d: &DeltaComplex) -> Vec<usize> {
    let dims = d.num_dims();
    let ranks: Vec<usize> = (0..dims)
        .map(|n| {
            if n + 1 >= dims {
                return 0;
            }
            let rows: Vec<Vec<i64>> = (0..d.count(n + 1))
                .map(|k| {
                    let mut row = vec![0; d.count(n)];
                    for (i, &f) in d.faces(n + 1, k).iter().enumerate() {
                        row[f] += if i % 2 == 0 { 1 } else { -1 };
                    }
                    row
                })
                .collect();
            rank_mod(&rows, P)
        })
        .collect();
    (0..dims).map(|n| d.count(n) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect()
}

/// Volume of a union of integer boxes inside `[0, 4]^d` by unit-cell count.
pub fn grid_union_volume(boxes: &[LinearRegion], d: usize) -> Rational {
    let mut count = 0i64;
    for cell in 0..4usize.pow(d as u32) {
        let centre: Vec<Rational> =
            (0..d).map(|k| rat(((cell / 4usize.pow(k as u32)) % 4) as i64 * 2 + 1, 2)).collect();
        if boxes.iter().any(|b| b.contains(&centre)) {
            count += 1;
        }
    }
    int(count)
}

pub fn instance_list(c: &FiberedComplex) -> Vec<Instance> {
    (0..c.num_dims()).flat_map(|n| c.instances(n)).collect()
}
