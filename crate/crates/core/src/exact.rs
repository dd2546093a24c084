//! Exact rational scalars and the q-analog primitives.
//!
//! Every probability and weight in this crate is an [`ExactScalar`], a reduced
//! big-integer fraction. [`QContext`] carries the deformation parameter
//! `0 <= q < 1` and evaluates `(q;q)_n`, `n!_q` and the Gaussian binomial.
//! The value `q = 0` is admitted and is the classic (undeformed) evaluation
//! point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_integer(value: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numerator / denominator`, reduced. Fails on a zero denominator.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    /// Shorthand for literals known to be valid; panics on a zero denominator.
    pub fn ratio(numerator: i64, denominator: i64) -> Self {
        Self::new(numerator, denominator).expect("nonzero denominator")
    }

    pub fn from_big(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(BigRational::new(numerator, denominator)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(&self.0 / &rhs.0))
    }

    /// Nonnegative integer power; `x^0 = 1` for every `x`, including zero.
    pub fn pow(&self, exponent: u32) -> Self {
        ExactScalar(num_traits::Pow::pow(&self.0, exponent))
    }

    /// Signed integer power. Negative exponents of zero are an error.
    pub fn powi(&self, exponent: i64) -> Result<Self> {
        let magnitude = u32::try_from(exponent.unsigned_abs())
            .map_err(|_| Error::Invalid(format!("exponent {exponent} too large")))?;
        let p = self.pow(magnitude);
        if exponent < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The underlying big rational.
    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactScalar {
    fn from(value: BigRational) -> Self {
        ExactScalar(value)
    }
}

impl From<i64> for ExactScalar {
    fn from(value: i64) -> Self {
        ExactScalar::from_integer(value)
    }
}

impl From<i32> for ExactScalar {
    fn from(value: i32) -> Self {
        ExactScalar::from_integer(value as i64)
    }
}

impl From<u64> for ExactScalar {
    fn from(value: u64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(value)))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, or a finite decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseRational(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            return ExactScalar::from_big(num, den);
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let mut num = int_part.abs() * &scale + frac_part;
            if negative {
                num = -num;
            }
            return ExactScalar::from_big(num, scale);
        }
        let num: BigInt = t.parse().map_err(|_| bad())?;
        Ok(ExactScalar(BigRational::from_integer(num)))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, as for the primitive integer types. Use
// `checked_div` where the divisor is not known to be nonzero.
impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("ExactScalar division by zero")
    }
}

impl Div<ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        &self / &rhs
    }
}

impl Div<&ExactScalar> for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        &self / rhs
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for ExactScalar {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for ExactScalar {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

/// The deformation parameter `q`, with `0 <= q < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QContext {
    q: ExactScalar,
}

impl QContext {
    pub fn new(q: ExactScalar) -> Result<Self> {
        if q.is_negative() || q >= 1 {
            return Err(Error::QOutOfRange(q.to_string()));
        }
        Ok(QContext { q })
    }

    /// The classic evaluation point `q = 0`.
    pub fn classic() -> Self {
        QContext {
            q: ExactScalar::zero(),
        }
    }

    pub fn q(&self) -> &ExactScalar {
        &self.q
    }

    pub fn is_classic(&self) -> bool {
        self.q.is_zero()
    }

    /// `q^e` with `q^0 = 1` (also at `q = 0`).
    pub fn pow(&self, e: u32) -> ExactScalar {
        self.q.pow(e)
    }

    /// `q^e` where `None` stands for an infinite exponent, so `q^inf = 0`.
    pub fn pow_ext(&self, e: Option<u32>) -> ExactScalar {
        match e {
            Some(e) => self.pow(e),
            None => ExactScalar::zero(),
        }
    }

    /// `1 - q^e`.
    pub fn one_minus_pow(&self, e: u32) -> ExactScalar {
        ExactScalar::one() - self.pow(e)
    }
}

/// `(q;q)_n = prod_{k=1}^{n} (1 - q^k)`; the empty product is 1.
pub fn q_pochhammer(ctx: &QContext, n: u32) -> ExactScalar {
    (1..=n).map(|k| ctx.one_minus_pow(k)).product()
}

/// `n!_q = (q;q)_n / (1-q)^n`.
pub fn q_factorial(ctx: &QContext, n: u32) -> ExactScalar {
    // (1-q^k)/(1-q) = 1 + q + ... + q^{k-1}, which avoids a division.
    (1..=n)
        .map(|k| (0..k).map(|j| ctx.pow(j)).sum::<ExactScalar>())
        .product()
}

/// Gaussian binomial `[n choose k]_q`, zero outside `0 <= k <= n`.
pub fn q_binomial(ctx: &QContext, n: i64, k: i64) -> ExactScalar {
    if n < 0 || k < 0 || k > n {
        return ExactScalar::zero();
    }
    let (n, k) = (n as u32, k as u32);
    let num = q_pochhammer(ctx, n);
    let den = q_pochhammer(ctx, k) * q_pochhammer(ctx, n - k);
    num / den
}

/// Checks the four neighbour relations of the Gaussian binomial
///
/// ```text
/// [n+1, k] = [n, k] (1-q^{n+1}) / (1-q^{n-k+1})
/// [n-1, k] = [n, k] (1-q^{n-k}) / (1-q^n)
/// [n, k+1] = [n, k] (1-q^{n-k}) / (1-q^{k+1})
/// [n, k-1] = [n, k] (1-q^k)     / (1-q^{n-k+1})
/// ```
///
/// exactly for all `0 <= k <= n <= n_max`. The second relation is skipped at
/// `n = 0`, where its denominator vanishes.
pub fn check_q_binomial_recurrences(ctx: &QContext, n_max: u32) -> bool {
    let b = |n: i64, k: i64| q_binomial(ctx, n, k);
    let om = |e: i64| ctx.one_minus_pow(e as u32);
    for n in 0..=n_max as i64 {
        for k in 0..=n {
            let base = b(n, k);
            if b(n + 1, k) * om(n - k + 1) != &base * om(n + 1) {
                return false;
            }
            if n >= 1 && b(n - 1, k) * om(n) != &base * om(n - k) {
                return false;
            }
            if b(n, k + 1) * om(k + 1) != &base * om(n - k) {
                return false;
            }
            if b(n, k - 1) * om(n - k + 1) != &base * om(k) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> QContext {
        QContext::new(ExactScalar::ratio(num, den)).unwrap()
    }

    #[test]
    fn scalar_is_reduced_and_prints_exactly() {
        let x = ExactScalar::ratio(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(ExactScalar::ratio(8, 4).to_string(), "2");
        assert_eq!(x.denominator(), &BigInt::from(2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/6".parse::<ExactScalar>().unwrap(), ExactScalar::ratio(1, 2));
        assert_eq!("7".parse::<ExactScalar>().unwrap(), ExactScalar::from_integer(7));
        assert_eq!("0.25".parse::<ExactScalar>().unwrap(), ExactScalar::ratio(1, 4));
        assert_eq!("-1.5".parse::<ExactScalar>().unwrap(), ExactScalar::ratio(-3, 2));
        assert_eq!("1/0".parse::<ExactScalar>(), Err(Error::DivisionByZero));
        assert!("x/2".parse::<ExactScalar>().is_err());
        assert!("1.".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let one = ExactScalar::one();
        assert_eq!(one.checked_div(&ExactScalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(ExactScalar::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(ExactScalar::new(1, 0), Err(Error::DivisionByZero));
        assert_eq!(ExactScalar::zero().powi(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_is_a_string() {
        let x = ExactScalar::ratio(3, 8);
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"3/8\"");
        let back: ExactScalar = serde_json::from_str("\"3/8\"").unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&ExactScalar::from_integer(5)).unwrap(), "\"5\"");
    }

    #[test]
    fn q_range() {
        assert!(QContext::new(ExactScalar::one()).is_err());
        assert!(QContext::new(ExactScalar::ratio(-1, 3)).is_err());
        assert!(QContext::new(ExactScalar::zero()).is_ok());
        assert!(QContext::classic().pow(0).is_one());
        assert_eq!(QContext::classic().pow_ext(None), 0);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(&q(1, 2), 0), 1);
        assert_eq!(q_pochhammer(&q(1, 2), 2), ExactScalar::ratio(3, 8));
        assert_eq!(q_pochhammer(&QContext::classic(), 5), 1);
    }

    #[test]
    fn factorial_matches_pochhammer_ratio() {
        let ctx = q(2, 3);
        for n in 0..6 {
            let expected = q_pochhammer(&ctx, n) / ctx.one_minus_pow(1).pow(n);
            assert_eq!(q_factorial(&ctx, n), expected);
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(&q(1, 3), 4, 0), 1);
        assert_eq!(q_binomial(&q(1, 2), 2, 1), ExactScalar::ratio(3, 2));
        assert_eq!(q_binomial(&QContext::classic(), 7, 3), 1);
        assert_eq!(q_binomial(&q(1, 2), 3, 4), 0);
        assert_eq!(q_binomial(&q(1, 2), 3, -1), 0);
    }

    #[test]
    fn binomial_is_factorial_ratio() {
        let ctx = q(1, 3);
        for n in 0..7i64 {
            for k in 0..=n {
                let f = |m: i64| q_factorial(&ctx, m as u32);
                assert_eq!(q_binomial(&ctx, n, k), f(n) / (f(k) * f(n - k)));
            }
        }
    }

    #[test]
    fn recurrences_hold() {
        assert!(check_q_binomial_recurrences(&q(1, 2), 6));
        assert!(check_q_binomial_recurrences(&QContext::classic(), 6));
        assert!(check_q_binomial_recurrences(&q(2, 3), 4));
    }

    #[test]
    fn classic_binomial_is_indicator() {
        let ctx = QContext::classic();
        for n in 0..8i64 {
            for k in -2..=n + 2 {
                let expected = if (0..=n).contains(&k) { 1 } else { 0 };
                assert_eq!(q_binomial(&ctx, n, k), expected);
            }
        }
    }
}
