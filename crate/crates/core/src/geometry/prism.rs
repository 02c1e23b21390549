//! The shuffle decomposition of `Δⁿ × [0,1]`.

use std::collections::BTreeMap;

use super::{Point, Simplex};
use crate::rational::int;

/// Vertex `(j, ε)` of the prism: vertex `j` of `Δⁿ` at height `ε`.
pub type PrismVertex = (usize, u8);

/// `Πᵢ = [(0,0) … (i,0), (i,1) … (n,1)]` with sign `(−1)ⁱ`, for `i = 0..=n`.
pub fn shuffle_sequences(n: usize) -> Vec<(Vec<PrismVertex>, i8)> {
    (0..=n)
        .map(|i| {
            let seq = (0..=i).map(|j| (j, 0)).chain((i..=n).map(|j| (j, 1))).collect();
            (seq, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Coordinates of a prism vertex in `ℝⁿ⁺¹`, with `Δⁿ = {1 ≥ x₁ ≥ … ≥ xₙ ≥ 0}`.
pub fn prism_point(n: usize, v: PrismVertex) -> Point {
    (0..n).map(|k| int(i64::from(k < v.0))).chain([int(i64::from(v.1))]).collect()
}

/// The `n+1` simplices of the prism with their signs.
pub fn prism_decompose(n: usize) -> Vec<(Simplex, i8)> {
    shuffle_sequences(n)
        .into_iter()
        .map(|(seq, sign)| {
            let pts = seq.iter().map(|&v| prism_point(n, v)).collect();
            (Simplex::new(pts).expect("shuffle simplices are nondegenerate"), sign)
        })
        .collect()
}

/// Integer chain of ordered vertex sequences.
pub type Chain = BTreeMap<Vec<PrismVertex>, i64>;

fn add(chain: &mut Chain, key: Vec<PrismVertex>, c: i64) {
    let e = chain.entry(key.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        chain.remove(&key);
    }
}

pub fn boundary(chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (seq, &c) in chain {
        for i in 0..seq.len() {
            let mut s = seq.clone();
            s.remove(i);
            if !s.is_empty() {
                add(&mut out, s, if i % 2 == 0 { c } else { -c });
            }
        }
    }
    out
}

/// Prism over the simplex with vertex labels `verts` (increasing).
pub fn prism_chain(verts: &[usize]) -> Chain {
    let mut out = Chain::new();
    for i in 0..verts.len() {
        let seq = verts[..=i].iter().map(|&j| (j, 0)).chain(verts[i..].iter().map(|&j| (j, 1))).collect();
        add(&mut out, seq, if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// `∂P(σ) + P(∂σ) − (σ×1 − σ×0)` for the top simplex of `Δⁿ`; empty when the
/// decomposition telescopes.
pub fn telescoping_defect(n: usize) -> Chain {
    let verts: Vec<usize> = (0..=n).collect();
    let mut out = boundary(&prism_chain(&verts));
    for i in 0..=n {
        if n == 0 {
            break;
        }
        let mut face = verts.clone();
        face.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (seq, c) in prism_chain(&face) {
            add(&mut out, seq, sign * c);
        }
    }
    add(&mut out, verts.iter().map(|&j| (j, 1)).collect(), -1);
    add(&mut out, verts.iter().map(|&j| (j, 0)).collect(), 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::factorial;
    use crate::rational::Rational;

    #[test]
    fn counts_and_volumes() {
        for n in 0..=3 {
            let p = prism_decompose(n);
            assert_eq!(p.len(), n + 1);
            let total = p.iter().fold(Rational::from_integer(0.into()), |a, (s, _)| a + s.volume());
            // vol(Δⁿ) · 1
            assert_eq!(total, Rational::from_integer(1.into()) / factorial(n));
        }
        for (s, _) in prism_decompose(2) {
            assert_eq!(s.volume(), Rational::new(1.into(), 6.into()));
        }
    }

    #[test]
    fn signs_match_orientation() {
        for n in 1..=3 {
            let p = prism_decompose(n);
            let o0 = p[0].0.orientation;
            assert_ne!(o0, 0);
            for (s, sign) in &p {
                assert_eq!(s.orientation * o0, *sign);
            }
        }
    }

    #[test]
    fn telescopes() {
        for n in 0..=3 {
            assert!(telescoping_defect(n).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn shuffle_layout() {
        let s = shuffle_sequences(1);
        assert_eq!(s[0], (vec![(0, 0), (0, 1), (1, 1)], 1));
        assert_eq!(s[1], (vec![(0, 0), (1, 0), (1, 1)], -1));
    }
}
