//! Circle rotations: exact arc sets over a real quadratic field and the
//! finite cyclic model of the Kronecker flow.

pub mod arcs;
pub mod quad;

pub use arcs::{
    approximating_lengths, indicator_coboundary, is_rotation_invariant, zero_set, ArcSet, BoolOp,
    InvarianceCertificate,
};
pub use quad::QuadReal;

use num_integer::Integer;
use serde::Serialize;

use crate::cohomology::coboundary_preimage;
use crate::complex::Cochain;
use crate::constructions::kronecker;
use crate::error::{domain, Result};
use crate::field::{Field, Z2};

/// Outcome of solving `f∘R − f = 1` over ℤ₂ on the `q`-cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoboundaryAnswer {
    /// `f` with `f(0) = 0`.
    Coboundary { f: Vec<u8> },
    /// The orbit sum of `1`, which every coboundary annihilates.
    Obstruction { orbit_sum: u8 },
}

impl CoboundaryAnswer {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryAnswer::Coboundary { .. })
    }
}

/// Decides whether the constant ℤ₂ 1-cochain on the suspension of
/// `t ↦ t + p mod q` is a coboundary.
pub fn one_is_coboundary(q: usize, p: i64) -> Result<CoboundaryAnswer> {
    if q == 0 {
        return Err(domain("q must be positive"));
    }
    let g = (q as i64).gcd(&p);
    if g != 1 {
        return Err(domain(format!(
            "gcd({p}, {q}) = {g}: the rotation has {g} orbits; split into cycles and decide each separately"
        )));
    }
    let complex = kronecker(q, p)?;
    let one = Cochain::constant(&complex, 1, Z2::one());
    match coboundary_preimage(&complex, &one)? {
        Some(f) => {
            let values = &f.values()[0];
            let shift = values[0];
            Ok(CoboundaryAnswer::Coboundary { f: values.iter().map(|v| u8::from((*v).add(&shift).0)).collect() })
        }
        None => Ok(CoboundaryAnswer::Obstruction { orbit_sum: (q % 2) as u8 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(q: usize, p: i64) -> Option<Vec<u8>> {
        let shift = p.rem_euclid(q as i64) as usize;
        (0u32..1 << q).step_by(2).find_map(|mask| {
            let f: Vec<u8> = (0..q).map(|i| ((mask >> i) & 1) as u8).collect();
            (0..q).all(|t| f[(t + shift) % q] ^ f[t] == 1).then_some(f)
        })
    }

    #[test]
    fn small_cycles() {
        assert_eq!(one_is_coboundary(4, 1).unwrap(), CoboundaryAnswer::Coboundary { f: vec![0, 1, 0, 1] });
        assert_eq!(one_is_coboundary(2, 1).unwrap(), CoboundaryAnswer::Coboundary { f: vec![0, 1] });
        assert_eq!(one_is_coboundary(3, 1).unwrap(), CoboundaryAnswer::Obstruction { orbit_sum: 1 });
        assert!(one_is_coboundary(4, 2).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        for q in 1..=10usize {
            for p in 0..q as i64 {
                if (q as i64).gcd(&p) != 1 {
                    continue;
                }
                let got = one_is_coboundary(q, p).unwrap();
                match (brute_force(q, p), got) {
                    (Some(f), CoboundaryAnswer::Coboundary { f: g }) => {
                        assert_eq!(f[0], 0);
                        assert_eq!(f, g);
                    }
                    (None, CoboundaryAnswer::Obstruction { .. }) => {}
                    (b, g) => panic!("q={q} p={p}: brute force {b:?}, got {g:?}"),
                }
            }
        }
    }
}
