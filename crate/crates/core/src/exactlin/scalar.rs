//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Rationals print as `p/q` (or `p` when the denominator is one); Gaussian
//! rationals as `p/q+r/s i`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational field element. Always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn rational(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn format_rational(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl CScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        CScalar { re, im: Scalar::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(rational(n, d))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        CScalar { re: int(re), im: int(im) }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar { re: self.re.clone(), im: -&self.im }
    }

    /// |z|², always a non-negative rational.
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm_sqr();
        CScalar { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn scale(&self, q: &Scalar) -> Self {
        CScalar { re: &self.re * q, im: &self.im * q }
    }

    /// Parses `p/q`, `r/s i`, `p/q+r/s i`, `p/q-r/s i`, `i`, `-i`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed complex scalar `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        // split at the last sign that is not the leading character
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => int(1),
            "-" => int(-1),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
        };
        Ok(CScalar { re: parse_rational(re).map_err(|_| bad())?, im })
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let im = format!("{} i", format_rational(&self.im.abs()));
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}")
        } else {
            write!(f, "{}{sign}{im}", format_rational(&self.re))
        }
    }
}

impl fmt::Debug for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Scalar> for CScalar {
    fn from(q: Scalar) -> Self {
        CScalar::real(q)
    }
}

impl From<i64> for CScalar {
    fn from(n: i64) -> Self {
        CScalar::from_int(n)
    }
}

impl Add<&CScalar> for &CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&CScalar> for &CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&CScalar> for &CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return CScalar::real(real_mul(&self.re, &o.re));
        }
        CScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

fn is_minus_one(x: &BigRational) -> bool {
    x.denom().is_one() && x.numer().is_negative() && x.numer().magnitude().is_one()
}

fn real_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_one() {
        a.clone()
    } else if a.is_one() {
        b.clone()
    } else if is_minus_one(b) {
        -a
    } else if is_minus_one(a) {
        -b
    } else {
        a * b
    }
}

impl Div<&CScalar> for &CScalar {
    type Output = CScalar;
    fn div(self, o: &CScalar) -> CScalar {
        if o.im.is_zero() {
            return CScalar { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, o: CScalar) -> CScalar { (&self).$m(&o) }
        }
        impl $tr<&CScalar> for CScalar {
            type Output = CScalar;
            fn $m(self, o: &CScalar) -> CScalar { (&self).$m(o) }
        }
        impl $tr<CScalar> for &CScalar {
            type Output = CScalar;
            fn $m(self, o: CScalar) -> CScalar { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, o: &CScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<CScalar> for CScalar {
    fn add_assign(&mut self, o: CScalar) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, o: &CScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CScalar> for CScalar {
    fn mul_assign(&mut self, o: &CScalar) {
        *self = &*self * o;
    }
}

impl Sum for CScalar {
    fn sum<I: Iterator<Item = CScalar>>(iter: I) -> CScalar {
        iter.fold(CScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normal_form() {
        let q = rational(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in ["0", "3", "-1/2", "1/2+3/4 i", "-1/3 i", "2-1 i", "-5/7-2/9 i"] {
            let z = CScalar::parse(s).unwrap();
            assert_eq!(CScalar::parse(&z.to_string()).unwrap(), z, "{s}");
        }
        assert_eq!(CScalar::parse("i").unwrap(), CScalar::i());
        assert_eq!(CScalar::parse("-i").unwrap(), -CScalar::i());
        assert_eq!(CScalar::parse("1/2+3/4 i").unwrap().to_string(), "1/2+3/4 i");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(CScalar::parse("1/2+q i").is_err());
    }

    #[test]
    fn field_axioms_on_samples() {
        let a = CScalar::new(rational(1, 2), rational(-3, 5));
        let b = CScalar::new(rational(7, 3), rational(2, 1));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv(), CScalar::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(&CScalar::i() * &CScalar::i(), CScalar::from_int(-1));
    }
}
