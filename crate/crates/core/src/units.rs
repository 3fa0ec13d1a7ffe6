//! The unit group `{1, -1, eps, -eps}`, the coefficient ring `Z[eps]/(eps^2 - 1)`
//! and the specializations of that ring which model the unit map of a ring
//! spectrum.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `(-1)^s eps^t` of the Klein four-group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnitExp {
    minus: bool,
    eps: bool,
}

impl UnitExp {
    pub const ONE: UnitExp = UnitExp::new(false, false);
    pub const MINUS_ONE: UnitExp = UnitExp::new(true, false);
    pub const EPS: UnitExp = UnitExp::new(false, true);
    pub const MINUS_EPS: UnitExp = UnitExp::new(true, true);

    pub const ALL: [UnitExp; 4] = [Self::ONE, Self::MINUS_ONE, Self::EPS, Self::MINUS_EPS];

    pub const fn new(minus: bool, eps: bool) -> Self {
        UnitExp { minus, eps }
    }

    /// Exponent of `-1`, as 0 or 1.
    pub fn s(self) -> u8 {
        self.minus as u8
    }

    /// Exponent of `eps`, as 0 or 1.
    pub fn t(self) -> u8 {
        self.eps as u8
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    /// Every element is its own inverse.
    pub fn inv(self) -> Self {
        self
    }

    pub fn pow(self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Self::ONE
        } else {
            self
        }
    }

    /// `self^(m*n)` without forming the product.
    pub fn pow2(self, m: i64, n: i64) -> Self {
        if m.rem_euclid(2) == 1 && n.rem_euclid(2) == 1 {
            self
        } else {
            Self::ONE
        }
    }

    pub fn to_coef(self) -> Coef {
        let sign: i64 = if self.minus { -1 } else { 1 };
        if self.eps {
            Coef::new(0, sign)
        } else {
            Coef::new(sign, 0)
        }
    }

    /// `+1` or `-1` once `eps` is sent to `eps_image`.
    pub fn sign_under(self, eps_image: i8) -> i8 {
        let mut sign = if self.minus { -1 } else { 1 };
        if self.eps {
            sign *= eps_image;
        }
        sign
    }
}

impl Mul for UnitExp {
    type Output = UnitExp;

    fn mul(self, rhs: UnitExp) -> UnitExp {
        UnitExp::new(self.minus ^ rhs.minus, self.eps ^ rhs.eps)
    }
}

impl Neg for UnitExp {
    type Output = UnitExp;

    fn neg(self) -> UnitExp {
        self * UnitExp::MINUS_ONE
    }
}

impl std::iter::Product for UnitExp {
    fn product<I: Iterator<Item = UnitExp>>(iter: I) -> Self {
        iter.fold(UnitExp::ONE, |acc, u| acc * u)
    }
}

impl fmt::Display for UnitExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.minus, self.eps) {
            (false, false) => "1",
            (true, false) => "-1",
            (false, true) => "eps",
            (true, true) => "-eps",
        })
    }
}

impl fmt::Debug for UnitExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UnitExp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "1" | "+1" => Ok(Self::ONE),
            "-1" => Ok(Self::MINUS_ONE),
            "eps" | "+eps" | "epsilon" | "ε" => Ok(Self::EPS),
            "-eps" | "-epsilon" | "-ε" => Ok(Self::MINUS_EPS),
            _ => Err(Error::Parse {
                what: "unit",
                input: s.to_string(),
                reason: "expected one of 1, -1, eps, -eps".into(),
            }),
        }
    }
}

impl Serialize for UnitExp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitExp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `a + b*eps` in `Z[eps]/(eps^2 - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coef {
    pub a: BigInt,
    pub b: BigInt,
}

impl Coef {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Coef {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        Coef::new(a, 0)
    }

    pub fn eps() -> Self {
        Coef::new(0, 1)
    }

    /// `1 - eps`, the coefficient of the universal annihilator relations.
    pub fn one_minus_eps() -> Self {
        Coef::new(1, -1)
    }

    pub fn zero() -> Self {
        Coef::default()
    }

    pub fn one() -> Self {
        Coef::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Swaps the two components: multiplication by `eps`.
    pub fn times_eps(&self) -> Coef {
        Coef {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn scale(&self, u: UnitExp) -> Coef {
        let c = if u.t() == 1 { self.times_eps() } else { self.clone() };
        if u.s() == 1 {
            -c
        } else {
            c
        }
    }

    /// `(a + b eps)(a - b eps) = a^2 - b^2`; the coefficient is a unit exactly
    /// when this norm is.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.b * &self.b
    }

    /// The unit this coefficient equals, if it is one of `1, -1, eps, -eps`.
    pub fn as_unit(&self) -> Option<UnitExp> {
        UnitExp::ALL.into_iter().find(|u| u.to_coef() == *self)
    }

    pub fn is_unit(&self, mode: CoefMode) -> bool {
        let c = mode.specialize(self);
        let n = c.norm();
        if mode.modulus == 0 {
            n.abs().is_one()
        } else {
            n.gcd(&BigInt::from(mode.modulus)).is_one()
        }
    }
}

impl From<UnitExp> for Coef {
    fn from(u: UnitExp) -> Self {
        u.to_coef()
    }
}

impl From<i64> for Coef {
    fn from(a: i64) -> Self {
        Coef::int(a)
    }
}

impl Add for &Coef {
    type Output = Coef;

    fn add(self, rhs: &Coef) -> Coef {
        Coef {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Add for Coef {
    type Output = Coef;

    fn add(self, rhs: Coef) -> Coef {
        &self + &rhs
    }
}

impl AddAssign<&Coef> for Coef {
    fn add_assign(&mut self, rhs: &Coef) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &Coef {
    type Output = Coef;

    fn sub(self, rhs: &Coef) -> Coef {
        Coef {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Sub for Coef {
    type Output = Coef;

    fn sub(self, rhs: Coef) -> Coef {
        &self - &rhs
    }
}

impl Mul for &Coef {
    type Output = Coef;

    fn mul(self, rhs: &Coef) -> Coef {
        Coef {
            a: &self.a * &rhs.a + &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Mul for Coef {
    type Output = Coef;

    fn mul(self, rhs: Coef) -> Coef {
        &self * &rhs
    }
}

impl Neg for Coef {
    type Output = Coef;

    fn neg(self) -> Coef {
        Coef {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps_term = |f: &mut fmt::Formatter<'_>, b: &BigInt, leading: bool| {
            let sign = if b.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            let mag = b.abs();
            if mag.is_one() {
                write!(f, "{sign}eps")
            } else {
                write!(f, "{sign}{mag}*eps")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => eps_term(f, &self.b, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                eps_term(f, &self.b, false)
            }
        }
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coef({self})")
    }
}

impl FromStr for Coef {
    type Err = Error;

    /// Accepts sums of signed terms `n`, `eps`, `n*eps`, e.g. `1-eps`,
    /// `-3+2*eps`, `eps`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "coefficient",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut total = Coef::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            if term.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut parsed = match term.strip_suffix("eps") {
                Some("") => Coef::eps(),
                Some(num) => {
                    let num = num.strip_suffix('*').ok_or_else(|| err("expected n*eps"))?;
                    let n: BigInt = num.parse().map_err(|_| err("bad integer"))?;
                    Coef::new(0, n)
                }
                None => Coef::int(term.parse::<BigInt>().map_err(|_| err("bad integer"))?),
            };
            if negative {
                parsed = -parsed;
            }
            total += &parsed;
            rest = tail;
        }
        Ok(total)
    }
}

impl Serialize for Coef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where `eps` goes under a specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum EpsImage {
    #[default]
    #[serde(rename = "generic")]
    Generic,
    #[serde(rename = "+1")]
    PlusOne,
    #[serde(rename = "-1")]
    MinusOne,
}

impl fmt::Display for EpsImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsImage::Generic => "generic",
            EpsImage::PlusOne => "+1",
            EpsImage::MinusOne => "-1",
        })
    }
}

impl FromStr for EpsImage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "generic" => Ok(EpsImage::Generic),
            "+1" | "1" | "plus-one" => Ok(EpsImage::PlusOne),
            "-1" | "minus-one" => Ok(EpsImage::MinusOne),
            other => Err(Error::Parse {
                what: "eps image",
                input: other.to_string(),
                reason: "expected generic, +1 or -1".into(),
            }),
        }
    }
}

/// A quotient of the coefficient ring: `eps` optionally sent to `+-1`, then
/// everything reduced modulo `modulus` (0 meaning no reduction).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CoefMode {
    pub eps: EpsImage,
    #[serde(default)]
    pub modulus: u64,
}

impl CoefMode {
    pub const GENERIC: CoefMode = CoefMode {
        eps: EpsImage::Generic,
        modulus: 0,
    };

    pub fn new(eps: EpsImage, modulus: u64) -> Self {
        CoefMode { eps, modulus }
    }

    pub fn is_generic(&self) -> bool {
        *self == Self::GENERIC
    }

    pub fn specialize(&self, c: &Coef) -> Coef {
        let mut out = match self.eps {
            EpsImage::Generic => c.clone(),
            EpsImage::PlusOne => Coef::int(&c.a + &c.b),
            EpsImage::MinusOne => Coef::int(&c.a - &c.b),
        };
        if self.modulus != 0 {
            let m = BigInt::from(self.modulus);
            out.a = out.a.mod_floor(&m);
            out.b = out.b.mod_floor(&m);
        }
        out
    }

    /// The image of a unit, kept inside the four-group. Agrees with
    /// `specialize(u.to_coef())` whenever that image is still a sign or `+-eps`.
    pub fn specialize_unit(&self, u: UnitExp) -> UnitExp {
        let mut minus = u.minus;
        let mut eps = u.eps;
        match self.eps {
            EpsImage::Generic => {}
            EpsImage::PlusOne => eps = false,
            EpsImage::MinusOne => {
                minus ^= eps;
                eps = false;
            }
        }
        // -1 = 1 modulo 1 and 2
        if self.modulus == 1 || self.modulus == 2 {
            minus = false;
        }
        if self.modulus == 1 {
            eps = false;
        }
        UnitExp::new(minus, eps)
    }
}

impl fmt::Display for CoefMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps={}", self.eps)?;
        if self.modulus != 0 {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

/// A bidegree `(p, q)`: stem and weight.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn l1(&self) -> i64 {
        self.p.abs() + self.q.abs()
    }
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;

    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;

    fn neg(self) -> Bidegree {
        Bidegree::new(-self.p, -self.q)
    }
}

impl std::iter::Sum for Bidegree {
    fn sum<I: Iterator<Item = Bidegree>>(iter: I) -> Self {
        iter.fold(Bidegree::ZERO, |acc, d| acc + d)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl fmt::Debug for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Bidegree {
    type Err = Error;

    /// `p,q`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "bidegree",
            input: s.to_string(),
            reason: "expected two comma-separated integers".into(),
        };
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let (p, q) = inner.split_once(',').ok_or_else(err)?;
        let p = p.trim().parse().map_err(|_| err())?;
        let q = q.trim().parse().map_err(|_| err())?;
        Ok(Bidegree::new(p, q))
    }
}

impl Serialize for Bidegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.p, self.q].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bidegree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[i64; 2]>::deserialize(deserializer)?;
        Ok(Bidegree::new(p, q))
    }
}
