//! Extended rational surgery slopes.
//!
//! A slope is a primitive homology class `p*mu + q*lambda` on the boundary
//! torus of a knot exterior, written as the extended rational `p/q`. The
//! meridian `mu` is the class of a small linking circle and `lambda` is the
//! Seifert-framed longitude. The trivial (meridional) filling is `inf`,
//! stored canonically as 1/0.
//!
//! Invariants maintained by every constructor:
//!
//! - `gcd(|p|, q) = 1`,
//! - `q >= 0`, with the sign carried by `p`,
//! - `inf` is exactly `(1, 0)`; the pair `(0, 0)` is rejected.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlopeError {
    /// The pair (0, 0) does not name a curve on the torus.
    #[error("undefined slope 0/0")]
    Undefined,
    /// Input did not match the grammar `p/q`, `p`, or `inf`.
    #[error("invalid slope `{0}`: expected `p/q`, `p`, or `inf`")]
    Parse(String),
}

/// A reduced extended rational `p/q` with `q >= 0`; `inf` is 1/0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    /// Builds a slope from any integer pair, reducing to canonical form.
    ///
    /// ```
    /// use dehn::Slope;
    /// assert_eq!(Slope::new(2, 4).unwrap(), Slope::new(1, 2).unwrap());
    /// assert_eq!(Slope::new(1, -2).unwrap().to_string(), "-1/2");
    /// assert_eq!(Slope::new(-3, 0).unwrap(), Slope::infinity());
    /// assert!(Slope::new(0, 0).is_err());
    /// ```
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(SlopeError::Undefined);
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(Slope { num, den })
    }

    /// The integer slope `n/1`.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Slope {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    /// The trivial filling slope 1/0.
    pub fn infinity() -> Self {
        Slope {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True for slopes `n/1`, including 0 and negative integers.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// True for slopes of the form `1/k` with `k` a nonzero integer, i.e.
    /// finite slopes with numerator of absolute value one. These are exactly
    /// the slopes whose surgery on an unknot returns the three-sphere.
    pub fn is_reciprocal_integer(&self) -> bool {
        self.is_finite() && self.num.abs().is_one()
    }

    /// Minimal geometric intersection number with another slope:
    /// `|p_a q_b - p_b q_a|`.
    ///
    /// ```
    /// use dehn::Slope;
    /// let d = Slope::infinity().distance(&Slope::new(1, 5).unwrap());
    /// assert_eq!(d, 5u32.into());
    /// ```
    pub fn distance(&self, other: &Slope) -> BigUint {
        (&self.num * &other.den - &other.num * &self.den)
            .abs()
            .to_biguint()
            .expect("absolute value is nonnegative")
    }

    /// Adds the integer `t`, i.e. `p/q + t = (p + t q)/q`. Fixes `inf`.
    pub fn shifted(&self, t: &BigInt) -> Slope {
        Slope::new(&self.num + t * &self.den, self.den.clone())
            .expect("shift preserves validity")
    }

    /// Applies `t` full twists along the curve's own disk:
    /// `p/q -> p/(q + t p)`. Total on valid slopes; the result may be `inf`.
    pub fn twisted(&self, t: &BigInt) -> Slope {
        Slope::new(self.num.clone(), &self.den + t * &self.num)
            .expect("twist preserves validity")
    }

    /// Negated reciprocal `-q/p`, the effect of reversing the roles of
    /// meridian and longitude in an orientation-compatible way.
    pub fn neg_recip(&self) -> Result<Slope, SlopeError> {
        Slope::new(-self.den.clone(), self.num.clone())
    }
}

impl Ord for Slope {
    /// Finite slopes order as rationals; `inf` is greater than everything
    /// finite. Used only to make reports and enumerations deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_zero() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({})", self)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, SlopeError> {
        let t = s.trim();
        if t == "inf" {
            return Ok(Slope::infinity());
        }
        let bad = || SlopeError::Parse(s.to_string());
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Slope::new(p, q)
            }
            None => {
                let p: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Slope::integer(p))
            }
        }
    }
}

impl From<i64> for Slope {
    fn from(n: i64) -> Self {
        Slope::integer(n)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(s(1, -2).to_string(), "-1/2");
        assert_eq!(s(0, 5).to_string(), "0");
        assert_eq!(s(7, 0), Slope::infinity());
        assert_eq!(s(-3, 0), Slope::infinity());
        assert_eq!(Slope::new(0, 0), Err(SlopeError::Undefined));
    }

    #[test]
    fn parse_and_display() {
        for text in ["1/2", "-1/2", "5", "0", "-7", "inf", "22/7"] {
            let slope: Slope = text.parse().unwrap();
            assert_eq!(slope.to_string(), text);
        }
        assert_eq!("2/4".parse::<Slope>().unwrap().to_string(), "1/2");
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::infinity());
        assert!("0/0".parse::<Slope>().is_err());
        assert!("".parse::<Slope>().is_err());
        assert!("a/b".parse::<Slope>().is_err());
        assert!("1.5".parse::<Slope>().is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(Slope::infinity().distance(&s(1, 5)), 5u32.into());
        assert_eq!(s(1, 0).distance(&s(3, 7)), 7u32.into());
        assert_eq!(s(1, 2).distance(&s(1, 3)), 1u32.into());
        assert_eq!(s(1, 1).distance(&s(-1, 1)), 2u32.into());
        assert_eq!(s(2, 3).distance(&s(2, 3)), 0u32.into());
    }

    #[test]
    fn predicates() {
        assert!(s(1, 7).is_reciprocal_integer());
        assert!(s(-1, 7).is_reciprocal_integer());
        assert!(s(1, 1).is_reciprocal_integer());
        assert!(!s(0, 1).is_reciprocal_integer());
        assert!(!s(2, 3).is_reciprocal_integer());
        assert!(!Slope::infinity().is_reciprocal_integer());
        assert!(s(-4, 1).is_integral());
        assert!(!Slope::infinity().is_integral());
    }

    #[test]
    fn shift_and_twist() {
        let t = BigInt::from(-2);
        assert_eq!(s(1, 2).twisted(&t), Slope::infinity());
        assert_eq!(s(1, 2).shifted(&t), s(-3, 2));
        assert_eq!(Slope::infinity().shifted(&t), Slope::infinity());
        assert_eq!(Slope::infinity().twisted(&t), s(1, -2));
        assert_eq!(s(0, 1).twisted(&BigInt::from(9)), s(0, 1));
    }

    #[test]
    fn ordering() {
        let mut v = [Slope::infinity(), s(1, 2), s(-1, 2), s(3, 1), s(0, 1)];
        v.sort();
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["-1/2", "0", "1/2", "3", "inf"]);
    }

    #[test]
    fn serde_round_trip() {
        let slope = s(-3, 7);
        let json = serde_json::to_string(&slope).unwrap();
        assert_eq!(json, "\"-3/7\"");
        let back: Slope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, slope);
        assert!(serde_json::from_str::<Slope>("\"0/0\"").is_err());
    }
}
