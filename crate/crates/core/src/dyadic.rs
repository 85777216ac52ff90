//! Exact signed dyadic rationals `m / 2^e`.
//!
//! All domination weights live in this ring: contributions are powers of
//! one half, path lengths are bounded by the order of the graph, so the
//! exponent never exceeds `n` and the numerator stays exact. No floating
//! point is ever used in a threshold comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A signed dyadic rational `num / 2^exp` in lowest terms: `exp > 0`
/// implies `num` is odd, and zero is stored as `0 / 2^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { num: BigInt::from(v), exp: 0 }
    }

    /// `1 / 2^k`.
    pub fn half_pow(k: u32) -> Self {
        Dyadic { num: BigInt::one(), exp: k }
    }

    /// The weight a set vertex receives from itself: `(1/2)^(0-1) = 2`.
    pub fn two() -> Self {
        Dyadic::from_int(2)
    }

    fn normalize(mut num: BigInt, mut exp: u32) -> Self {
        if num.is_zero() {
            return Dyadic::zero();
        }
        while exp > 0 && !num.bit(0) {
            num >>= 1;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// Multiplies by `2^k`, keeping the representation in lowest terms.
    pub fn scale_pow2(&self, k: u32) -> Self {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        if k >= self.exp {
            Dyadic { num: &self.num << (k - self.exp), exp: 0 }
        } else {
            Dyadic { num: self.num.clone(), exp: self.exp - k }
        }
    }

    pub fn cmp_int(&self, v: i64) -> Ordering {
        self.num.cmp(&(BigInt::from(v) << self.exp))
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = 0.0f64;
        // good enough for reporting; never used in exact comparisons
        let (sign, digits) = self.num.to_u64_digits();
        for d in digits.iter().rev() {
            x = x * 18446744073709551616.0 + *d as f64;
        }
        if sign == num_bigint::Sign::Minus {
            x = -x;
        }
        x / 2f64.powi(self.exp as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let num = (&self.num << (e - self.exp)) + (&rhs.num << (e - rhs.exp));
        Dyadic::normalize(num, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let num = (&self.num << (e - self.exp)) - (&rhs.num << (e - rhs.exp));
        Dyadic::normalize(num, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::normalize(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid dyadic literal {0:?}, expected \"m/2^e\"")]
pub struct ParseDyadicError(String);

impl FromStr for Dyadic {
    type Err = ParseDyadicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, exp) = s.split_once("/2^").ok_or_else(|| ParseDyadicError(s.into()))?;
        let num = BigInt::from_str(num.trim()).map_err(|_| ParseDyadicError(s.into()))?;
        let exp: u32 = exp.trim().parse().map_err(|_| ParseDyadicError(s.into()))?;
        Ok(Dyadic::normalize(num, exp))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dy(num: i64, exp: u32) -> Dyadic {
        Dyadic::normalize(BigInt::from(num), exp)
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(dy(4, 2), Dyadic::one());
        assert_eq!(dy(6, 1), Dyadic::from_int(3));
        assert_eq!(dy(0, 7), Dyadic::zero());
        assert_eq!(dy(3, 1).to_string(), "3/2^1");
        assert_eq!(Dyadic::two().to_string(), "2/2^0");
    }

    #[test]
    fn threshold_comparisons() {
        let half = Dyadic::half_pow(1);
        assert_eq!(half.cmp_int(1), Ordering::Less);
        assert_eq!((&half + &half).cmp_int(1), Ordering::Equal);
        assert_eq!(Dyadic::two().cmp_int(2), Ordering::Equal);
        assert_eq!((&Dyadic::two() + &Dyadic::one()).cmp_int(3), Ordering::Equal);
    }

    #[test]
    fn scale() {
        assert_eq!(Dyadic::half_pow(3).scale_pow2(5), Dyadic::from_int(4));
        assert_eq!(Dyadic::half_pow(3).scale_pow2(2), Dyadic::half_pow(1));
    }

    #[test]
    fn roundtrip_str() {
        for s in ["3/2^1", "-5/2^4", "0/2^0", "2/2^0"] {
            let d: Dyadic = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    proptest! {
        #[test]
        fn ring_props(a in -1000i64..1000, ea in 0u32..20, b in -1000i64..1000, eb in 0u32..20) {
            let x = dy(a, ea);
            let y = dy(b, eb);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            prop_assert_eq!(&x * &y, &y * &x);
            // comparison agrees with exact rational comparison via cross multiplication
            let lhs = BigInt::from(a) << eb;
            let rhs = BigInt::from(b) << ea;
            prop_assert_eq!(x.cmp(&y), lhs.cmp(&rhs));
        }
    }
}
