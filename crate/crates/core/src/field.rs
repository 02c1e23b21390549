//! Coefficient fields: ℤ₂ and ℚ (exact) and ℝ (double precision).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Z2,
    Q,
    R,
}

impl CoeffKind {
    pub fn is_exact(self) -> bool {
        !matches!(self, CoeffKind::R)
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffKind::Z2 => "z2",
            CoeffKind::Q => "q",
            CoeffKind::R => "r",
        })
    }
}

impl std::str::FromStr for CoeffKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "z2" => Ok(CoeffKind::Z2),
            "q" => Ok(CoeffKind::Q),
            "r" => Ok(CoeffKind::R),
            other => Err(format!("unknown coefficient kind {other:?} (expected z2, q or r)")),
        }
    }
}

/// Arithmetic needed by the cochain machinery.
///
/// `is_zero` is exact for ℤ₂ and ℚ; for `f64` it is a literal comparison
/// with zero, and rank computations refuse the real field altogether.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const KIND: CoeffKind;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

/// The two-element field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Z2(pub bool);

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Field for Z2 {
    const KIND: CoeffKind = CoeffKind::Z2;
    fn zero() -> Self {
        Z2(false)
    }
    fn one() -> Self {
        Z2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, rhs: &Self) -> Self {
        Z2(self.0 ^ rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Z2(self.0 ^ rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Z2(self.0 & rhs.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn from_i64(v: i64) -> Self {
        Z2(v.rem_euclid(2) == 1)
    }
}

impl Field for Rational {
    const KIND: CoeffKind = CoeffKind::Q;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_i64(v: i64) -> Self {
        rational::int(v)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl Field for f64 {
    const KIND: CoeffKind = CoeffKind::R;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// A coefficient value tagged with its field, used at the text boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Z2(Z2),
    Q(Rational),
    R(f64),
}

impl Coefficient {
    pub fn kind(&self) -> CoeffKind {
        match self {
            Coefficient::Z2(_) => CoeffKind::Z2,
            Coefficient::Q(_) => CoeffKind::Q,
            Coefficient::R(_) => CoeffKind::R,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Z2(v) => write!(f, "{v}"),
            Coefficient::Q(r) => f.write_str(&rational::format_rational(r)),
            Coefficient::R(x) => f.write_str(&rational::f64_17::text(*x)),
        }
    }
}

/// Conversion of a field element to its tagged text form.
pub trait ToCoefficient {
    fn to_coefficient(&self) -> Coefficient;
}

impl ToCoefficient for Z2 {
    fn to_coefficient(&self) -> Coefficient {
        Coefficient::Z2(*self)
    }
}

impl ToCoefficient for Rational {
    fn to_coefficient(&self) -> Coefficient {
        Coefficient::Q(self.clone())
    }
}

impl ToCoefficient for f64 {
    fn to_coefficient(&self) -> Coefficient {
        Coefficient::R(*self)
    }
}
