//! Exact rational substrate: scalars, matrices, polynomials over Q,
//! factorization, real-root counting, certified roots and subspaces.

mod factor;
mod matrix;
mod modular;
mod poly;
mod roots;
mod subspace;

pub use factor::{factor_over_q, Factorization};
pub use matrix::{charpoly, Matrix, RatMatrix};
pub use poly::{cyclotomic, real_root_count, real_roots_between, unit_circle_root_count, RatPoly};
pub use roots::{
    certified_roots, isolate_roots, separate_moduli, CertifiedRoot, RootConfig, MODULUS_TIE_RADIUS,
};
pub use subspace::{unit_vector, Subspace};

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Field of scalars used by the generic linear algebra: exact rationals or
/// doubles.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug + PartialEq + Send + Sync + 'static {
    /// True for exact arithmetic (pivoting then only needs a nonzero entry).
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Zero test; doubles use a small absolute threshold.
    fn is_negligible(&self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() < 1e-300
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ratio_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

fn ratio_to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optional sign, decimal digits).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits_ok = |x: &str, signed: bool| {
        let body = if signed { x.strip_prefix(['-', '+']).unwrap_or(x) } else { x };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) || !digits_ok(den, false) {
        return Err(bad());
    }
    let n = BigInt::from_str_radix(num.trim_start_matches('+'), 10).map_err(|_| bad())?;
    let d = BigInt::from_str_radix(den, 10).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_f64(x).unwrap_or_else(Rational::zero)
}

/// Rounds `q` to the nearest multiple of `2^-bits`, ties away from zero.
/// The rounding commutes with negation.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    let two = BigInt::from(2);
    let n = scaled.numer();
    let d = scaled.denom();
    let (quo, rem) = n.abs().div_rem(d);
    let rounded = if rem * &two >= *d { quo + 1 } else { quo };
    let signed = if n.is_negative() { -rounded } else { rounded };
    Rational::new(signed, scale)
}

/// Upper bound (as a double, exactly representable) on `sqrt(q)` for `q >= 0`.
pub fn sqrt_upper(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let mut r = ratio_to_f64(q).sqrt();
    if r == 0.0 {
        r = f64::MIN_POSITIVE;
    }
    loop {
        let rq = from_f64(r);
        if &rq * &rq >= *q {
            return r;
        }
        r = next_up(r * (1.0 + 1e-15));
    }
}

/// Lower bound (as a double) on `sqrt(q)` for `q >= 0`.
pub fn sqrt_lower(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let mut r = ratio_to_f64(q).sqrt();
    loop {
        let rq = from_f64(r);
        if &rq * &rq <= *q {
            return r;
        }
        r *= 1.0 - 1e-15;
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_infinite() {
        x
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

/// Least common multiple of the denominators of `qs`.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
