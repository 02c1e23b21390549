//! Exact real numbers `a + b√d` in a fixed real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};
use crate::rational::{self, Rational};

/// Default radicand: ℚ(√5) contains the golden mean.
pub const DEFAULT_D: u32 = 5;

/// `a + b√d` with `d` square-free and at least 2.
///
/// Values with `b = 0` are rationals and mix freely with any field; mixing
/// two irrational values from different fields panics.
#[derive(Debug, Clone)]
pub struct QuadReal {
    a: Rational,
    b: Rational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    d >= 2 && (2..).take_while(|k: &u32| k * k <= d).all(|k| d % (k * k) != 0)
}

impl QuadReal {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(domain(format!("{d} is not a square-free integer greater than 1")));
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: DEFAULT_D }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(rational::rat(p, q))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Self { a: rational::rat(-1, 2), b: rational::rat(1, 2), d: 5 }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn field(&self, other: &Self) -> u32 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "values from different quadratic fields");
                self.d
            }
        }
    }

    /// Sign of `a + b√d`, decided by comparing `a²` with `b²d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rational::int(i64::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * f64::from(self.d).sqrt()
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        let mut k = BigInt::from(self.to_f64().floor() as i64);
        loop {
            let kq = Self::rational(Rational::from_integer(k.clone()));
            if kq > *self {
                k -= 1;
            } else if Self::rational(Rational::from_integer(&k + 1)) <= *self {
                k += 1;
            } else {
                return k;
            }
        }
    }

    /// Representative in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let k = Rational::from_integer(self.floor());
        Self { a: &self.a - k, b: self.b.clone(), d: self.d }
    }

    pub fn half(&self) -> Self {
        let h = rational::rat(1, 2);
        Self { a: &self.a * &h, b: &self.b * &h, d: self.d }
    }
}

impl PartialEq for QuadReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadReal {}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: &QuadReal) -> QuadReal {
        QuadReal { d: self.field(rhs), a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: &QuadReal) -> QuadReal {
        QuadReal { d: self.field(rhs), a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &QuadReal {
    type Output = QuadReal;
    fn mul(self, rhs: &QuadReal) -> QuadReal {
        let d = self.field(rhs);
        let dd = rational::int(i64::from(d));
        QuadReal { d, a: &self.a * &rhs.a + &self.b * &rhs.b * dd, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl Neg for &QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        QuadReal { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Add for QuadReal {
    type Output = QuadReal;
    fn add(self, rhs: QuadReal) -> QuadReal {
        &self + &rhs
    }
}

impl Sub for QuadReal {
    type Output = QuadReal;
    fn sub(self, rhs: QuadReal) -> QuadReal {
        &self - &rhs
    }
}

impl Neg for QuadReal {
    type Output = QuadReal;
    fn neg(self) -> QuadReal {
        -&self
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", rational::format_rational(&self.a))
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            write!(f, "{} {sign} {}*sqrt({})", rational::format_rational(&self.a), rational::format_rational(&self.b.abs()), self.d)
        }
    }
}

/// Wire form `{a: "p/q", b: "r/s", d: n}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuadJson {
    #[serde(with = "rational::as_str")]
    a: Rational,
    #[serde(with = "rational::as_str")]
    b: Rational,
    d: u32,
}

impl Serialize for QuadReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadJson { a: self.a.clone(), b: self.b.clone(), d: self.d }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuadJson::deserialize(d)?;
        QuadReal::new(j.a, j.b, j.d).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn golden_mean_bounds() {
        let g = QuadReal::golden();
        assert!(g > QuadReal::from_ratio(61, 100));
        assert!(g < QuadReal::from_ratio(62, 100));
        assert_eq!(g.floor(), BigInt::zero());
        assert_eq!((&g * &g) + g.clone(), QuadReal::one());
    }

    #[test]
    fn floor_and_frac() {
        let x = QuadReal::new(rat(3, 1), rat(-2, 1), 5).unwrap(); // 3 − 2√5 ≈ −1.47
        assert_eq!(x.floor(), BigInt::from(-2));
        let f = x.frac();
        assert!(f >= QuadReal::zero() && f < QuadReal::one());
        assert_eq!(QuadReal::from_ratio(7, 3).frac(), QuadReal::from_ratio(1, 3));
        assert_eq!(QuadReal::from_ratio(-1, 4).frac(), QuadReal::from_ratio(3, 4));
    }

    #[test]
    fn exact_sign_near_zero() {
        // 161 − 72√5 ≈ 0.0031
        let x = QuadReal::new(rat(161, 1), rat(-72, 1), 5).unwrap();
        assert_eq!(x.signum(), Ordering::Greater);
        assert_eq!((-&x).signum(), Ordering::Less);
    }

    #[test]
    fn radicand_must_be_square_free() {
        assert!(QuadReal::new(rat(0, 1), rat(1, 1), 8).is_err());
        assert!(QuadReal::new(rat(0, 1), rat(1, 1), 1).is_err());
        assert!(QuadReal::new(rat(0, 1), rat(1, 1), 7).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let g = QuadReal::golden();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"a":"-1/2","b":"1/2","d":5}"#);
        assert_eq!(serde_json::from_str::<QuadReal>(&s).unwrap(), g);
    }
}
