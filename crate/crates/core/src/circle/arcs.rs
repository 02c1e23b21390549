//! Finite unions of half-open arcs on ℝ/ℤ.

use serde::{Deserialize, Serialize};

use super::quad::QuadReal;
use crate::error::{domain, Error, Result};

/// Sorted disjoint arcs `[lo, hi)` with `0 ≤ lo < hi ≤ 1`; touching arcs are
/// merged. An arc crossing `0` is stored as two pieces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcSet {
    arcs: Vec<(QuadReal, QuadReal)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolOp {
    Xor,
    And,
    Or,
    /// Complement of the first operand.
    Not,
}

impl std::str::FromStr for BoolOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xor" => Ok(BoolOp::Xor),
            "and" => Ok(BoolOp::And),
            "or" => Ok(BoolOp::Or),
            "not" => Ok(BoolOp::Not),
            _ => Err(Error::Parse(format!("unknown boolean operation {s:?}"))),
        }
    }
}

impl ArcSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self { arcs: vec![(QuadReal::zero(), QuadReal::one())] }
    }

    /// One arc from `lo` of length `hi − lo` (read mod 1); lengths of 1 or
    /// more give the whole circle.
    pub fn arc(lo: QuadReal, hi: QuadReal) -> Self {
        let len = &hi - &lo;
        if len <= QuadReal::zero() {
            return Self::empty();
        }
        if len >= QuadReal::one() {
            return Self::full();
        }
        let start = lo.frac();
        let end = &start + &len;
        if end <= QuadReal::one() {
            Self::normalized(vec![(start, end)])
        } else {
            Self::normalized(vec![(QuadReal::zero(), &end - &QuadReal::one()), (start, QuadReal::one())])
        }
    }

    /// Union of arbitrary arcs `[lo, hi)` (each read mod 1 as in [`ArcSet::arc`]).
    pub fn from_arcs(arcs: impl IntoIterator<Item = (QuadReal, QuadReal)>) -> Self {
        arcs.into_iter().fold(Self::empty(), |acc, (lo, hi)| acc.or(&Self::arc(lo, hi)))
    }

    fn normalized(mut arcs: Vec<(QuadReal, QuadReal)>) -> Self {
        arcs.retain(|(lo, hi)| lo < hi);
        arcs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(QuadReal, QuadReal)> = Vec::with_capacity(arcs.len());
        for (lo, hi) in arcs {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Self { arcs: out }
    }

    pub fn arcs(&self) -> &[(QuadReal, QuadReal)] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn length(&self) -> QuadReal {
        self.arcs.iter().fold(QuadReal::zero(), |acc, (lo, hi)| &acc + &(hi - lo))
    }

    /// Membership of a point (read mod 1).
    pub fn contains(&self, x: &QuadReal) -> bool {
        let x = x.frac();
        let i = self.arcs.partition_point(|(lo, _)| *lo <= x);
        i > 0 && x < self.arcs[i - 1].1
    }

    /// `{x + θ : x ∈ A}`.
    pub fn rotate(&self, theta: &QuadReal) -> Self {
        let pieces = self.arcs.iter().flat_map(|(lo, hi)| {
            let l = (lo + theta).frac();
            let end = &l + &(hi - lo);
            if end <= QuadReal::one() {
                vec![(l, end)]
            } else {
                vec![(l, QuadReal::one()), (QuadReal::zero(), &end - &QuadReal::one())]
            }
        });
        Self::normalized(pieces.collect())
    }

    /// Sweep over the common breakpoints, testing each elementary piece.
    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Self {
        let mut cuts: Vec<QuadReal> = vec![QuadReal::zero(), QuadReal::one()];
        for (lo, hi) in self.arcs.iter().chain(&other.arcs) {
            cuts.push(lo.clone());
            cuts.push(hi.clone());
        }
        cuts.sort();
        cuts.dedup();
        let pieces = cuts
            .windows(2)
            .filter(|w| {
                let mid = (&w[0] + &w[1]).half();
                keep(self.contains(&mid), other.contains(&mid))
            })
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::normalized(pieces)
    }

    pub fn xor(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn and(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn complement(&self) -> Self {
        self.combine(&Self::empty(), |a, _| !a)
    }

    pub fn boolean(&self, other: &Self, op: BoolOp) -> Self {
        match op {
            BoolOp::Xor => self.xor(other),
            BoolOp::And => self.and(other),
            BoolOp::Or => self.or(other),
            BoolOp::Not => self.complement(),
        }
    }

    /// Every arc widened by `eps` on both sides.
    pub fn thicken(&self, eps: &QuadReal) -> Self {
        Self::from_arcs(self.arcs.iter().map(|(lo, hi)| (lo - eps, hi + eps)))
    }

    /// A point of `self △ other`, if the sets differ.
    pub fn difference_witness(&self, other: &Self) -> Option<QuadReal> {
        self.xor(other).arcs.first().map(|(lo, hi)| (lo + hi).half())
    }
}

/// `(R₋α B) △ B`, the support of `χ_B∘R_α + χ_B` over ℤ₂.
pub fn indicator_coboundary(b: &ArcSet, alpha: &QuadReal) -> ArcSet {
    b.rotate(&-alpha).xor(b)
}

/// Complement of the ℤ₂ sum of the indicator coboundaries.
pub fn zero_set(bs: &[ArcSet], alphas: &[QuadReal]) -> Result<ArcSet> {
    if bs.len() != alphas.len() {
        return Err(Error::LengthMismatch(alphas.len(), bs.len()));
    }
    if bs.is_empty() {
        return Err(domain("zero_set needs at least one arc set"));
    }
    let sum = bs.iter().zip(alphas).fold(ArcSet::empty(), |acc, (b, a)| acc.xor(&indicator_coboundary(b, a)));
    Ok(sum.complement())
}

/// Invariance of `A` under rotation by `θ`, with a witness of `R_θ A △ A` when not invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceCertificate {
    pub invariant: bool,
    pub witness: Option<QuadReal>,
}

pub fn is_rotation_invariant(a: &ArcSet, theta: &QuadReal) -> InvarianceCertificate {
    let witness = a.rotate(theta).difference_witness(a);
    InvarianceCertificate { invariant: witness.is_none(), witness }
}

/// Lengths of the zero sets of the thickened families `Bᵢ + [−εₙ, εₙ]`,
/// `εₙ = 2⁻ⁿ / (2·#arcs)`, for `n = 1..=levels`.
pub fn approximating_lengths(bs: &[ArcSet], alphas: &[QuadReal], levels: u32) -> Result<Vec<QuadReal>> {
    (1..=levels)
        .map(|n| {
            let thick: Vec<ArcSet> = bs
                .iter()
                .map(|b| {
                    let k = b.arcs().len().max(1) as i64;
                    b.thicken(&QuadReal::from_ratio(1, 2 * k * (1_i64 << n)))
                })
                .collect();
            Ok(zero_set(&thick, alphas)?.length())
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    lo: QuadReal,
    hi: QuadReal,
}

impl Serialize for ArcSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<ArcJson> = self.arcs.iter().map(|(lo, hi)| ArcJson { lo: lo.clone(), hi: hi.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<ArcJson>::deserialize(d)?;
        Ok(ArcSet::from_arcs(v.into_iter().map(|a| (a.lo, a.hi))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q(p: i64, r: i64) -> QuadReal {
        QuadReal::from_ratio(p, r)
    }

    fn arc(a: (i64, i64), b: (i64, i64)) -> ArcSet {
        ArcSet::arc(q(a.0, a.1), q(b.0, b.1))
    }

    #[test]
    fn rotations() {
        assert_eq!(arc((0, 1), (1, 4)).rotate(&q(1, 3)), arc((1, 3), (7, 12)));
        let a = arc((3, 4), (1, 1));
        assert_eq!(a.rotate(&QuadReal::zero()), a);
        let r = a.rotate(&q(1, 2));
        assert_eq!(r, arc((1, 4), (1, 2)));
        assert_eq!(r.length(), q(1, 4));
        // wraparound splits into two pieces
        assert_eq!(arc((0, 1), (1, 2)).rotate(&q(3, 4)).arcs().len(), 2);
    }

    #[test]
    fn booleans() {
        let a = arc((0, 1), (1, 4));
        assert!(a.xor(&a).is_empty());
        let b = arc((2, 3), (11, 12));
        let x = a.xor(&b);
        assert_eq!(x, a.or(&b));
        assert_eq!(x.length(), q(1, 2));
        assert_eq!(a.complement().length(), q(3, 4));
        assert!(a.or(&a.complement()).is_full());
    }

    #[test]
    fn indicator_example() {
        let b = arc((0, 1), (1, 4));
        let c = indicator_coboundary(&b, &q(1, 3));
        assert_eq!(c, arc((0, 1), (1, 4)).or(&arc((2, 3), (11, 12))));
        assert_eq!(c.length(), q(1, 2));
        assert!(indicator_coboundary(&ArcSet::empty(), &q(1, 3)).is_empty());
    }

    #[test]
    fn zero_sets() {
        let z = zero_set(&[arc((0, 1), (1, 4))], &[q(1, 3)]).unwrap();
        assert_eq!(z.length(), q(1, 2));
        let z = zero_set(&[ArcSet::empty(), ArcSet::empty()], &[q(1, 3), QuadReal::golden()]).unwrap();
        assert!(z.is_full());
        assert!(matches!(zero_set(&[ArcSet::empty()], &[]), Err(Error::LengthMismatch(0, 1))));
    }

    #[test]
    fn invariance() {
        assert!(is_rotation_invariant(&ArcSet::empty(), &QuadReal::golden()).invariant);
        assert!(is_rotation_invariant(&ArcSet::full(), &QuadReal::golden()).invariant);
        let two_periodic = arc((0, 1), (1, 4)).or(&arc((1, 2), (3, 4)));
        assert!(is_rotation_invariant(&two_periodic, &q(1, 2)).invariant);
        assert!(!is_rotation_invariant(&arc((0, 1), (1, 2)), &q(1, 2)).invariant);
        let c = is_rotation_invariant(&arc((0, 1), (1, 2)), &QuadReal::golden());
        assert!(!c.invariant);
        let w = c.witness.unwrap();
        let a = arc((0, 1), (1, 2));
        assert_ne!(a.contains(&w), a.rotate(&QuadReal::golden()).contains(&w));
    }

    #[test]
    fn irrational_endpoints() {
        let g = QuadReal::golden();
        let b = ArcSet::arc(QuadReal::zero(), g.clone());
        assert_eq!(b.length(), g);
        assert_eq!(b.rotate(&g).length(), g);
        assert!(b.contains(&q(3, 5)));
        assert!(!b.contains(&q(5, 8)));
        let _ = rat(0, 1);
    }

    #[test]
    fn json_round_trip() {
        let b = ArcSet::arc(QuadReal::golden(), QuadReal::one());
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<ArcSet>(&s).unwrap(), b);
    }
}
