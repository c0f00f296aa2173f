//! Fixed-point reals at a requested binary precision.
//!
//! A [`HighPrecReal`] either carries an exact rational (the integer and
//! rational-Cholesky paths) or a dyadic approximation `mantissa / 2^precision`
//! whose absolute error is below one unit in the last place.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{rational_sqrt, rational_to_f64, Rational, DEFAULT_PRECISION, MAX_PRECISION};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecReal {
    repr: Repr,
    precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Exact(Rational),
    Approx(BigInt),
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

impl HighPrecReal {
    pub fn exact(value: Rational, precision: u32) -> Self {
        HighPrecReal { repr: Repr::Exact(value), precision }
    }

    pub fn from_integer(value: BigInt) -> Self {
        Self::exact(Rational::from_integer(value), DEFAULT_PRECISION)
    }

    /// Dyadic approximation of a rational, truncated toward negative infinity.
    pub fn approximate(value: &Rational, precision: u32) -> Self {
        let m = (value.numer() << precision).div_floor(value.denom());
        HighPrecReal { repr: Repr::Approx(m), precision }
    }

    /// `sign · √q`. Exact when `q` is a rational square.
    pub fn signed_sqrt(negative: bool, q: &Rational, precision: u32) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::precondition("square root of a negative number"));
        }
        if let Some(root) = rational_sqrt(q) {
            let root = if negative { -root } else { root };
            return Ok(Self::exact(root, precision));
        }
        // isqrt(⌊q·4^p⌋) = ⌊√q·2^p⌋
        let scaled = (q.numer() << (2 * precision)).div_floor(q.denom());
        let m = scaled.sqrt();
        let m = if negative { -m } else { m };
        Ok(HighPrecReal { repr: Repr::Approx(m), precision })
    }

    pub fn sqrt(q: &Rational, precision: u32) -> Result<Self> {
        Self::signed_sqrt(false, q, precision)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    /// The represented value as a rational: exact, or the dyadic approximation.
    pub fn to_rational(&self) -> Rational {
        match &self.repr {
            Repr::Exact(q) => q.clone(),
            Repr::Approx(m) => Rational::new(m.clone(), pow2(self.precision)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.to_rational())
    }

    /// Multiply by an integer. The approximation error scales with `|k|`.
    pub fn mul_integer(&self, k: &BigInt) -> Self {
        let repr = match &self.repr {
            Repr::Exact(q) => Repr::Exact(q * k),
            Repr::Approx(m) => Repr::Approx(m * k),
        };
        HighPrecReal { repr, precision: self.precision }
    }

    pub fn neg(&self) -> Self {
        self.mul_integer(&BigInt::from(-1))
    }
}

impl std::fmt::Display for HighPrecReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            Repr::Exact(q) => write!(f, "{q}"),
            Repr::Approx(_) => write!(f, "{:.17}", self.to_f64()),
        }
    }
}

/// `⌊x⌋`, refusing when an approximate `x` lies within `2^(-precision/2)` of
/// an integer.
pub fn certified_floor(x: &HighPrecReal) -> Result<BigInt> {
    match &x.repr {
        Repr::Exact(q) => Ok(q.floor().to_integer()),
        Repr::Approx(m) => {
            let p = x.precision;
            let unit = pow2(p);
            let (fl, frac) = m.div_mod_floor(&unit);
            let margin = pow2(p - p / 2);
            if frac < margin || &unit - &frac < margin {
                return Err(Error::AmbiguousFloor { precision: p });
            }
            Ok(fl)
        }
    }
}

/// Evaluate at `start` bits and double the precision on each ambiguous floor
/// until [`MAX_PRECISION`] is reached.
pub fn floor_with_retry(
    start: u32,
    mut eval: impl FnMut(u32) -> Result<HighPrecReal>,
) -> Result<BigInt> {
    let mut precision = start.max(2);
    loop {
        match certified_floor(&eval(precision)?) {
            Err(Error::AmbiguousFloor { .. }) if precision < MAX_PRECISION => {
                precision = (precision * 2).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn ten_root_three() {
        let x = HighPrecReal::sqrt(&int(300), 256).unwrap();
        assert!(!x.is_exact());
        assert_eq!(certified_floor(&x).unwrap(), BigInt::from(17));
        assert!((x.to_f64() - 17.320508075688775).abs() < 1e-12);
    }

    #[test]
    fn exact_integer_path() {
        let x = HighPrecReal::from_integer(BigInt::from(5));
        assert_eq!(certified_floor(&x).unwrap(), BigInt::from(5));
        // √25 is recognised as exact rather than approximated
        let y = HighPrecReal::sqrt(&int(25), 64).unwrap();
        assert!(y.is_exact());
        assert_eq!(certified_floor(&y).unwrap(), BigInt::from(5));
    }

    #[test]
    fn ten_root_five_thirds() {
        let x = HighPrecReal::sqrt(&rat(500, 3), 256).unwrap();
        assert_eq!(certified_floor(&x).unwrap(), BigInt::from(12));
    }

    #[test]
    fn negative_values_floor_downward() {
        let x = HighPrecReal::signed_sqrt(true, &int(3), 128).unwrap();
        assert_eq!(certified_floor(&x).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn near_integer_is_ambiguous() {
        // 1 + 2^-100 at 128 bits is within 2^-64 of an integer
        let q = int(1) + Rational::new(BigInt::one(), pow2(100));
        let x = HighPrecReal::approximate(&q, 128);
        assert_eq!(certified_floor(&x), Err(Error::AmbiguousFloor { precision: 128 }));
        // retrying at higher precision separates it
        let fl = floor_with_retry(128, |p| Ok(HighPrecReal::approximate(&q, p))).unwrap();
        assert_eq!(fl, BigInt::one());
    }

    #[test]
    fn integral_approximation_hits_the_cap() {
        let err = floor_with_retry(256, |p| Ok(HighPrecReal::approximate(&int(7), p)));
        assert_eq!(err, Err(Error::AmbiguousFloor { precision: MAX_PRECISION }));
    }

    #[test]
    fn sqrt_error_below_one_ulp() {
        let p = 200;
        let x = HighPrecReal::sqrt(&rat(5, 3), p).unwrap().to_rational();
        let lo = &x * &x;
        let ulp = Rational::new(BigInt::one(), pow2(p));
        let hi = (&x + &ulp) * (&x + &ulp);
        assert!(lo <= rat(5, 3) && rat(5, 3) < hi);
    }
}
