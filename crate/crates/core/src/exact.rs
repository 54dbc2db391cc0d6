//! Exact rational quantities and radii.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational used for phases, norms and radii.
pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// A ball radius: rational, rational times a square root, or a transcendental
/// real such as `1/2π`.
///
/// Membership of an exact rational norm value is decided exactly for the
/// first two forms. `Real` radii are compared in floating point, which is
/// exact in practice because a rational with small denominator never lies
/// within rounding distance of the transcendental values used here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius {
    Exact(Q),
    /// `coeff · √radicand` with `coeff, radicand ≥ 0`.
    Surd {
        coeff: Q,
        radicand: Q,
    },
    Real(f64),
}

impl Radius {
    pub fn exact(r: Q) -> Self {
        Radius::Exact(r)
    }

    /// `1 / 2π`.
    pub fn inverse_two_pi() -> Self {
        Radius::Real(1.0 / (2.0 * std::f64::consts::PI))
    }

    /// Whether the exact value `v ≥ 0` satisfies `v ≤ radius`.
    pub fn admits(&self, v: Q) -> bool {
        match *self {
            Radius::Exact(r) => v <= r,
            Radius::Surd { coeff, radicand } => {
                if v.is_negative() {
                    return true;
                }
                // v ≤ c√r  ⇔  v² ≤ c² r  (all non-negative)
                v * v <= coeff * coeff * radicand
            }
            Radius::Real(r) => to_f64(v) <= r,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Radius::Exact(r) => to_f64(r),
            Radius::Surd { coeff, radicand } => to_f64(coeff) * to_f64(radicand).sqrt(),
            Radius::Real(r) => r,
        }
    }

    pub fn is_positive(&self) -> bool {
        match *self {
            Radius::Exact(r) => r > Q::zero(),
            Radius::Surd { coeff, radicand } => coeff > Q::zero() && radicand > Q::zero(),
            Radius::Real(r) => r > 0.0,
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Exact(r) => write!(f, "{r}"),
            Radius::Surd { coeff, radicand } => write!(f, "{coeff}·√({radicand})"),
            Radius::Real(r) => write!(f, "{r}"),
        }
    }
}

impl From<Q> for Radius {
    fn from(r: Q) -> Self {
        Radius::Exact(r)
    }
}

/// JSON form `{"num": n, "den": d}` for an exact rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl From<Q> for RationalJson {
    fn from(x: Q) -> Self {
        RationalJson { num: *x.numer(), den: *x.denom() }
    }
}

impl TryFrom<RationalJson> for Q {
    type Error = crate::Error;
    fn try_from(r: RationalJson) -> Result<Self, Self::Error> {
        if r.den == 0 {
            return Err(crate::Error::Parameter("rational with zero denominator".into()));
        }
        Ok(Q::new(r.num, r.den))
    }
}

/// Serde adapter: `#[serde(with = "crate::exact::rational")]`.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let r = RationalJson::deserialize(d)?;
        Q::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Q>`.
pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        x.map(RationalJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<RationalJson>::deserialize(d)?.map(Q::try_from).transpose().map_err(serde::de::Error::custom)
    }
}

/// Parses `"3/16"`, `"0.125"` or `"2"` into an exact rational.
pub fn parse_rational(text: &str) -> crate::Result<Q> {
    let text = text.trim();
    let bad = || crate::Error::Parameter(format!("cannot parse `{text}` as a rational"));
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = Q::new(int.abs() * den + f, den);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    Ok(Q::from_integer(text.parse().map_err(|_| bad())?))
}

/// Rounds to 12 significant digits for report output.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surd_membership_is_exact() {
        // 2·(1/16)·√(2·2) = 1/4 exactly
        let r = Radius::Surd { coeff: q(1, 8), radicand: q(4, 1) };
        assert!(r.admits(q(1, 4)));
        assert!(!r.admits(q(1, 4) + q(1, 1_000_000)));
        let r = Radius::Surd { coeff: q(1, 8), radicand: q(3, 1) };
        assert!(r.admits(q(21, 100))); // 0.2165...
        assert!(!r.admits(q(22, 100)));
    }

    #[test]
    fn inverse_two_pi_radius() {
        let r = Radius::inverse_two_pi();
        assert!(r.admits(q(15, 100)));
        assert!(!r.admits(q(16, 100)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/16").unwrap(), q(3, 16));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(sig12(0.0), 0.0);
    }
}
