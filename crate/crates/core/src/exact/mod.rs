//! Exact arithmetic substrate: big integers, rationals, dense matrices, and
//! high-precision reals with a certified floor.

pub mod cholesky;
pub mod matrix;
pub mod real;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use cholesky::{cholesky, ldl, Ldl};
pub use matrix::{dot, Matrix, QMatrix, Scalar, ZMatrix};
pub use real::{certified_floor, floor_with_retry, HighPrecReal};

pub type Rational = num_rational::BigRational;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Natural log of |x| for x ≠ 0, accurate to f64 at any magnitude.
pub fn ln_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(x: &Rational) -> f64 {
    ln_abs(x.numer()) - ln_abs(x.denom())
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 1e300 && d < 1e300 {
            return n / d;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rational(x).exp()
}

/// Nearest integer, ties rounded up.
pub fn round_rational(x: &Rational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// Exact square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Parse `"p"`, `"p/q"`, or a finite decimal such as `"0.99"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let frac_int: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(whole * &scale + frac_int, scale);
        return Ok(if negative { -mag } else { mag });
    }
    s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad())
}

/// Canonical `"p"` or `"p/q"` rendering, the inverse of [`parse_rational`].
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("0.99").unwrap(), rat(99, 100));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn format_round_trips() {
        for x in [rat(1, 10), rat(-7, 3), int(0), int(-12)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(round_rational(&rat(5, 2)), BigInt::from(3));
        assert_eq!(round_rational(&rat(-5, 2)), BigInt::from(-2));
        assert_eq!(round_rational(&rat(-7, 3)), BigInt::from(-2));
        assert_eq!(round_rational(&rat(7, 3)), BigInt::from(2));
    }

    #[test]
    fn rational_sqrt_detects_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(3, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn huge_values_convert_to_f64() {
        let p = |e: usize| num_traits::pow(BigInt::from(10), e);
        let x = rational_to_f64(&Rational::new(p(400) * 3 + 1, p(398) * 7));
        assert!((x - 300.0 / 7.0).abs() < 1e-10);
        assert!((ln_abs(&num_traits::pow(BigInt::from(2), 5000)) - 5000.0 * 2f64.ln()).abs() < 1e-6);
    }
}
