//! Exact scalars and the base rings they live in.
//!
//! Every ring handled here is a subring of the rationals: the integers, the
//! rationals themselves, the localization at a prime `p` and the ring with a
//! single integer `m` inverted. Ring membership is a predicate on the reduced
//! denominator, so a single scalar type serves all of them.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact rational number, reduced, with positive denominator.
///
/// Integers that fit in an `i64` are kept unboxed; every other value is a
/// boxed big rational. The representation is canonical, so derived equality
/// and hashing agree with numeric equality.
#[derive(Clone)]
pub enum RingScalar {
    Small(i64),
    Big(Box<BigRational>),
}

impl RingScalar {
    pub fn from_int(n: i64) -> Self {
        RingScalar::Small(n)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        match n.to_i64() {
            Some(v) => RingScalar::Small(v),
            None => RingScalar::Big(Box::new(BigRational::from_integer(n))),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        if q.denom().is_one() {
            if let Some(v) = q.numer().to_i64() {
                return RingScalar::Small(v);
            }
        }
        RingScalar::Big(Box::new(q))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            RingScalar::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            RingScalar::Big(q) => (**q).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            RingScalar::Small(v) => BigInt::from(*v),
            RingScalar::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            RingScalar::Small(_) => BigInt::one(),
            RingScalar::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            RingScalar::Small(_) => true,
            RingScalar::Big(q) => q.denom().is_one(),
        }
    }

    /// The value as a big integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            RingScalar::Small(v) => Some(BigInt::from(*v)),
            RingScalar::Big(q) if q.denom().is_one() => Some(q.numer().clone()),
            RingScalar::Big(_) => None,
        }
    }

    pub fn as_small(&self) -> Option<i64> {
        match self {
            RingScalar::Small(v) => Some(*v),
            RingScalar::Big(_) => None,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::from_big(self.to_big().recip()))
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            RingScalar::Small(v) => *v < 0,
            RingScalar::Big(q) => q.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for RingScalar {
    fn from(v: i64) -> Self {
        RingScalar::Small(v)
    }
}

impl From<BigInt> for RingScalar {
    fn from(v: BigInt) -> Self {
        RingScalar::from_bigint(v)
    }
}

impl From<&BigInt> for RingScalar {
    fn from(v: &BigInt) -> Self {
        RingScalar::from_bigint(v.clone())
    }
}

impl PartialEq for RingScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingScalar::Small(a), RingScalar::Small(b)) => a == b,
            (RingScalar::Big(a), RingScalar::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for RingScalar {}

impl Hash for RingScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            RingScalar::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            RingScalar::Big(q) => {
                1u8.hash(state);
                q.numer().hash(state);
                q.denom().hash(state);
            }
        }
    }
}

impl PartialOrd for RingScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RingScalar::Small(a), RingScalar::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingScalar::Small(v) => write!(f, "{v}"),
            RingScalar::Big(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl FromStr for RingScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => RingScalar::from_parts(parse(n)?, parse(d)?),
            None => Ok(RingScalar::from_bigint(parse(s)?)),
        }
    }
}

impl Zero for RingScalar {
    fn zero() -> Self {
        RingScalar::Small(0)
    }

    fn is_zero(&self) -> bool {
        matches!(self, RingScalar::Small(0))
    }
}

impl One for RingScalar {
    fn one() -> Self {
        RingScalar::Small(1)
    }
}

impl Add<&RingScalar> for &RingScalar {
    type Output = RingScalar;

    fn add(self, rhs: &RingScalar) -> RingScalar {
        if let (RingScalar::Small(a), RingScalar::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return RingScalar::Small(c);
            }
        }
        RingScalar::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub<&RingScalar> for &RingScalar {
    type Output = RingScalar;

    fn sub(self, rhs: &RingScalar) -> RingScalar {
        if let (RingScalar::Small(a), RingScalar::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return RingScalar::Small(c);
            }
        }
        RingScalar::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul<&RingScalar> for &RingScalar {
    type Output = RingScalar;

    fn mul(self, rhs: &RingScalar) -> RingScalar {
        if let (RingScalar::Small(a), RingScalar::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return RingScalar::Small(c);
            }
        }
        RingScalar::from_big(self.to_big() * rhs.to_big())
    }
}

impl Div<&RingScalar> for &RingScalar {
    type Output = RingScalar;

    /// Panics on division by zero.
    fn div(self, rhs: &RingScalar) -> RingScalar {
        assert!(!rhs.is_zero(), "division by zero");
        if let (RingScalar::Small(a), RingScalar::Small(b)) = (self, rhs) {
            if *b != 0 && a % b == 0 {
                if let Some(c) = a.checked_div(*b) {
                    return RingScalar::Small(c);
                }
            }
        }
        RingScalar::from_big(self.to_big() / rhs.to_big())
    }
}

impl Neg for &RingScalar {
    type Output = RingScalar;

    fn neg(self) -> RingScalar {
        match self {
            RingScalar::Small(v) => match v.checked_neg() {
                Some(n) => RingScalar::Small(n),
                None => RingScalar::from_big(-self.to_big()),
            },
            RingScalar::Big(q) => RingScalar::from_big(-(**q).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RingScalar> for RingScalar {
            type Output = RingScalar;
            fn $m(self, rhs: RingScalar) -> RingScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RingScalar> for RingScalar {
            type Output = RingScalar;
            fn $m(self, rhs: &RingScalar) -> RingScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RingScalar {
    type Output = RingScalar;
    fn neg(self) -> RingScalar {
        -&self
    }
}

impl AddAssign<&RingScalar> for RingScalar {
    fn add_assign(&mut self, rhs: &RingScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RingScalar> for RingScalar {
    fn sub_assign(&mut self, rhs: &RingScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RingScalar> for RingScalar {
    fn mul_assign(&mut self, rhs: &RingScalar) {
        *self = &*self * rhs;
    }
}

// Integers that fit an i64 serialize as JSON numbers, everything else as "n/d".
impl Serialize for RingScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RingScalar::Small(v) => s.serialize_i64(*v),
            RingScalar::Big(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for RingScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(RingScalar::Small(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A subring of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Integers,
    Rationals,
    LocalizedAtPrime(u64),
    InvertedInteger(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl BaseRing {
    pub fn localized_at(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(BaseRing::LocalizedAtPrime(p))
    }

    pub fn inverting(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("cannot invert {m}: need m >= 2")));
        }
        Ok(BaseRing::InvertedInteger(m))
    }

    /// Whether an integer that is a denominator of some ring element is allowed.
    fn allows_denominator(&self, den: &BigInt) -> bool {
        let den = den.abs();
        if den.is_one() {
            return true;
        }
        match self {
            BaseRing::Integers => false,
            BaseRing::Rationals => true,
            BaseRing::LocalizedAtPrime(p) => !(&den % BigInt::from(*p)).is_zero(),
            BaseRing::InvertedInteger(m) => {
                // den | m^k for some k  <=>  stripping gcds with m ends at 1
                let m = BigInt::from(*m);
                let mut d = den;
                loop {
                    let g = d.gcd(&m);
                    if g.is_one() {
                        return d.is_one();
                    }
                    while (&d % &g).is_zero() {
                        d /= &g;
                    }
                }
            }
        }
    }

    pub fn contains(&self, q: &RingScalar) -> bool {
        match q {
            RingScalar::Small(_) => true,
            RingScalar::Big(b) => self.allows_denominator(b.denom()),
        }
    }

    pub fn is_unit(&self, q: &RingScalar) -> bool {
        !q.is_zero() && self.contains(q) && self.allows_denominator(&q.numer())
    }

    /// Whether this ring is a subring of `other`, i.e. a canonical map exists.
    pub fn embeds_in(&self, other: &BaseRing) -> bool {
        use BaseRing::*;
        match (self, other) {
            (Integers, _) => true,
            (_, Rationals) => true,
            (Rationals, _) => false,
            (LocalizedAtPrime(p), LocalizedAtPrime(q)) => p == q,
            (LocalizedAtPrime(_), _) => false,
            (InvertedInteger(m), o) => o.allows_denominator(&BigInt::from(*m)),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BaseRing::Rationals)
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::LocalizedAtPrime(p) => write!(f, "Z_p:{p}"),
            BaseRing::InvertedInteger(m) => write!(f, "Z_inv:{m}"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidRing(format!("bad ring `{s}`")))
        };
        match s {
            "Z" => Ok(BaseRing::Integers),
            "Q" => Ok(BaseRing::Rationals),
            _ => {
                if let Some(p) = s.strip_prefix("Z_p:") {
                    BaseRing::localized_at(num(p)?)
                } else if let Some(m) = s.strip_prefix("Z_inv:") {
                    BaseRing::inverting(num(m)?)
                } else {
                    Err(Error::InvalidRing(format!(
                        "bad ring `{s}` (expected Z, Q, Z_p:<prime>, Z_inv:<m>)"
                    )))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> RingScalar {
        RingScalar::ratio(n, d)
    }

    #[test]
    fn membership_examples() {
        assert!(BaseRing::Integers.contains(&q(3, 1)));
        assert!(BaseRing::InvertedInteger(6).contains(&q(5, 12)));
        assert!(!BaseRing::LocalizedAtPrime(5).contains(&q(1, 5)));
        assert!(BaseRing::LocalizedAtPrime(5).contains(&q(1, 6)));
        assert!(!BaseRing::InvertedInteger(6).contains(&q(1, 5)));
        assert!(BaseRing::Rationals.contains(&q(7, 13)));
    }

    #[test]
    fn unit_examples() {
        assert!(BaseRing::Integers.is_unit(&q(-1, 1)));
        assert!(BaseRing::InvertedInteger(2).is_unit(&q(4, 1)));
        assert!(!BaseRing::LocalizedAtPrime(3).is_unit(&q(3, 1)));
        assert!(!BaseRing::Integers.is_unit(&q(2, 1)));
        assert!(!BaseRing::Rationals.is_unit(&q(0, 1)));
        assert!(BaseRing::LocalizedAtPrime(3).is_unit(&q(2, 5)));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<BaseRing>().unwrap(), BaseRing::Integers);
        assert_eq!("Z_p:5".parse::<BaseRing>().unwrap(), BaseRing::LocalizedAtPrime(5));
        assert_eq!("Z_inv:6".parse::<BaseRing>().unwrap(), BaseRing::InvertedInteger(6));
        assert!("Z_p:6".parse::<BaseRing>().is_err());
        assert!("Z_inv:1".parse::<BaseRing>().is_err());
        assert!("R".parse::<BaseRing>().is_err());
        for r in ["Z", "Q", "Z_p:7", "Z_inv:10"] {
            assert_eq!(r.parse::<BaseRing>().unwrap().to_string(), r);
        }
    }

    #[test]
    fn embeddings() {
        use BaseRing::*;
        assert!(Integers.embeds_in(&InvertedInteger(2)));
        assert!(InvertedInteger(2).embeds_in(&InvertedInteger(6)));
        assert!(!InvertedInteger(6).embeds_in(&InvertedInteger(2)));
        assert!(InvertedInteger(6).embeds_in(&LocalizedAtPrime(5)));
        assert!(!InvertedInteger(10).embeds_in(&LocalizedAtPrime(5)));
        assert!(!Rationals.embeds_in(&Integers));
        assert!(LocalizedAtPrime(3).embeds_in(&Rationals));
    }

    #[test]
    fn small_overflow_promotes() {
        let a = RingScalar::from_int(i64::MAX);
        let b = &a + &RingScalar::one();
        assert!(matches!(b, RingScalar::Big(_)));
        let c = &b - &RingScalar::one();
        assert_eq!(c, a);
        assert!(matches!(c, RingScalar::Small(_)));
        assert_eq!(-&RingScalar::from_int(i64::MIN), &RingScalar::from_int(i64::MAX) + &RingScalar::one());
    }

    fn ring_strategy() -> impl Strategy<Value = BaseRing> {
        prop_oneof![
            Just(BaseRing::Integers),
            Just(BaseRing::Rationals),
            prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(BaseRing::LocalizedAtPrime),
            (2u64..31).prop_map(BaseRing::InvertedInteger),
        ]
    }

    proptest! {
        #[test]
        fn unit_implies_membership_of_inverse(r in ring_strategy(), n in -200i64..200, d in 1i64..200) {
            let x = q(n, d);
            if r.is_unit(&x) {
                prop_assert!(r.contains(&x));
                prop_assert!(r.contains(&x.recip().unwrap()));
            }
        }

        #[test]
        fn membership_closed_under_ring_ops(r in ring_strategy(), a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let x = q(a, b);
            let y = q(c, d);
            if r.contains(&x) && r.contains(&y) {
                prop_assert!(r.contains(&(&x + &y)));
                prop_assert!(r.contains(&(&x * &y)));
            }
        }

        #[test]
        fn arithmetic_matches_bigrational(a in any::<i64>(), b in any::<i64>()) {
            let x = RingScalar::from_int(a);
            let y = RingScalar::from_int(b);
            let bx = x.to_big();
            let by = y.to_big();
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        }
    }
}
