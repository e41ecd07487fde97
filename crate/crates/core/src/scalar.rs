//! Scalars: exact rationals and binary floats under one roof.
//!
//! Exact-mode arithmetic is closed: combining two `Exact` values always yields
//! an `Exact` value. Mixing an `Exact` with an `Approx` operand produces an
//! `Approx` result (the operation itself is approximate, so nothing exact is
//! silently demoted). Approximate comparisons always take an explicit
//! tolerance; there is no hidden epsilon anywhere in the crate.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the polyhedral paths.
pub type Rational = num_rational::BigRational;

/// Arithmetic mode of an ordered space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    /// Exact rational arithmetic. Default for polyhedral cones.
    Exact,
    /// f64 arithmetic with explicit tolerances. Default for matrix cones.
    Approx,
}

/// A scalar value in either exact or approximate mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(Rational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact rational view. `Approx` values convert losslessly (every finite
    /// f64 is rational); NaN and infinities are rejected.
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Exact(r) => Ok(r.clone()),
            Scalar::Approx(x) => Rational::from_float(*x)
                .ok_or_else(|| Error::parse("non-finite float has no rational value")),
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    /// Comparison with an explicit tolerance; exact when both sides are exact
    /// and `tol` is zero.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) if tol == 0.0 => a == b,
            _ => Float::abs(self.to_f64() - other.to_f64()) <= tol,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(Float::abs(*x)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    _ => Scalar::Approx(self.to_f64().$method(rhs.to_f64())),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Round-to-nearest conversion; exact rationals outside f64 range saturate.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// f64 value guaranteed `<=` the rational.
pub fn rational_to_f64_down(r: &Rational) -> f64 {
    let x = rational_to_f64(r);
    if x.is_finite() && &Rational::from_float(x).unwrap() > r {
        next_down(x)
    } else {
        x
    }
}

/// f64 value guaranteed `>=` the rational.
pub fn rational_to_f64_up(r: &Rational) -> f64 {
    let x = rational_to_f64(r);
    if x.is_finite() && &Rational::from_float(x).unwrap() < r {
        next_up(x)
    } else {
        x
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    let bits = if x == 0.0 { 1 } else if x > 0.0 { x.to_bits() + 1 } else { x.to_bits() - 1 };
    f64::from_bits(bits)
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// Largest rational `q` (at the given binary precision) with `q*q <= r`.
///
/// Used to turn exact squared bounds into certified one-sided values without
/// trusting floating point. `r` must be non-negative.
pub fn sqrt_lower(r: &Rational, bits: u32) -> Result<Rational> {
    if r.is_negative() {
        return Err(Error::internal("sqrt_lower of negative rational"));
    }
    // sqrt(p/q) = sqrt(p*q)/q; floor(sqrt(p*q*4^k)) / (q*2^k) <= sqrt(p/q)
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let scaled: BigUint = p * q << (2 * bits);
    let root = scaled.sqrt(); // floor square root
    let den: BigUint = q << bits;
    Ok(Rational::new(BigInt::from(root), BigInt::from(den)))
}

/// Smallest rational `q` (at the given precision) with `q*q >= r`.
pub fn sqrt_upper(r: &Rational, bits: u32) -> Result<Rational> {
    let lo = sqrt_lower(r, bits)?;
    if &lo * &lo == *r {
        return Ok(lo);
    }
    let ulp = Rational::new(BigInt::one(), BigInt::from(r.denom().magnitude() << bits));
    Ok(lo + ulp)
}

/// Exact rational square root when one exists.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let pn = r.numer().magnitude().sqrt();
    let pd = r.denom().magnitude().sqrt();
    if &(&pn * &pn) == r.numer().magnitude() && &(&pd * &pd) == r.denom().magnitude() {
        Some(Rational::new(BigInt::from(pn), BigInt::from(pd)))
    } else {
        None
    }
}

/// Square root of an exact non-negative scalar: exact when the value is a
/// perfect rational square, otherwise a float tagged `Approx`. The caller
/// keeps the exact square around if it needs exact comparisons.
pub fn scalar_sqrt(sq: &Scalar) -> Scalar {
    match sq {
        Scalar::Exact(r) => match sqrt_exact(r) {
            Some(root) => Scalar::Exact(root),
            None => Scalar::Approx(Float::sqrt(rational_to_f64(r))),
        },
        Scalar::Approx(x) => Scalar::Approx(Float::sqrt(*x)),
    }
}

/// Parse a scalar literal. `Exact` mode accepts integers and `p/q`; `Approx`
/// mode accepts decimal/float literals. Cross-mode literals are rejected so
/// files cannot mix modes silently.
pub fn parse_scalar(text: &str, mode: ScalarMode) -> Result<Scalar> {
    let t = text.trim();
    match mode {
        ScalarMode::Exact => {
            if let Some((num, den)) = t.split_once('/') {
                let n: BigInt = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(bad_literal(t, "rational")))?;
                let d: BigInt = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(bad_literal(t, "rational")))?;
                if d.is_zero() {
                    return Err(Error::parse("rational with zero denominator"));
                }
                Ok(Scalar::Exact(Rational::new(n, d)))
            } else {
                let n: BigInt = t
                    .parse()
                    .map_err(|_| Error::parse(bad_literal(t, "integer or p/q rational")))?;
                Ok(Scalar::Exact(Rational::from_integer(n)))
            }
        }
        ScalarMode::Approx => {
            if t.contains('/') {
                return Err(Error::parse(bad_literal(t, "decimal (approx mode)")));
            }
            let x: f64 = t
                .parse()
                .map_err(|_| Error::parse(bad_literal(t, "decimal")))?;
            if !x.is_finite() {
                return Err(Error::parse("non-finite float literal"));
            }
            Ok(Scalar::Approx(x))
        }
    }
}

fn bad_literal(t: &str, want: &str) -> String {
    let mut s = String::from("invalid scalar literal `");
    s.push_str(t);
    s.push_str("`, expected ");
    s.push_str(want);
    s
}

/// Total ordering on exact rationals, error on approx operands.
pub fn exact_cmp(a: &Scalar, b: &Scalar) -> Result<Ordering> {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Ok(x.cmp(y)),
        _ => Err(Error::precondition(
            "exact comparison requested on approximate scalars",
        )),
    }
}

/// Rational from a small integer, used in test and fixture code paths.
pub fn rat(n: i64) -> Rational {
    Rational::from_i64(n).unwrap()
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_is_closed() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        let s = &a + &b;
        assert_eq!(s, Scalar::ratio(1, 2));
        assert!(s.is_exact());
        let p = &a * &b;
        assert_eq!(p, Scalar::ratio(1, 18));
        assert!(p.is_exact());
    }

    #[test]
    fn mixed_arithmetic_goes_approx() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::Approx(0.25);
        assert!(!(&a + &b).is_exact());
    }

    #[test]
    fn parse_respects_mode() {
        assert_eq!(
            parse_scalar("3/4", ScalarMode::Exact).unwrap(),
            Scalar::ratio(3, 4)
        );
        assert!(parse_scalar("0.75", ScalarMode::Exact).is_err());
        assert_eq!(
            parse_scalar("0.75", ScalarMode::Approx).unwrap(),
            Scalar::Approx(0.75)
        );
        assert!(parse_scalar("3/4", ScalarMode::Approx).is_err());
    }

    #[test]
    fn sqrt_bounds_enclose() {
        let two = ratio(2, 1);
        let lo = sqrt_lower(&two, 48).unwrap();
        let hi = sqrt_upper(&two, 48).unwrap();
        assert!(&lo * &lo <= two);
        assert!(&hi * &hi >= two);
        assert!(&hi - &lo < ratio(1, 1 << 40));
        assert_eq!(sqrt_exact(&ratio(9, 4)).unwrap(), ratio(3, 2));
        assert!(sqrt_exact(&two).is_none());
    }

    #[test]
    fn directed_rounding_encloses() {
        let r = ratio(1, 3);
        let lo = rational_to_f64_down(&r);
        let hi = rational_to_f64_up(&r);
        assert!(Rational::from_float(lo).unwrap() <= r);
        assert!(Rational::from_float(hi).unwrap() >= r);
        assert!(lo < hi);
    }
}
