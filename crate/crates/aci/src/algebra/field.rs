//! Coefficient fields: exact Gaussian rationals and a complex float mirror.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num::complex::Complex64;

/// Relative tolerance used to decide that a float coefficient vanishes.
pub const FLOAT_ZERO_TOL: f64 = 1e-9;

/// A commutative field usable as polynomial coefficients.
///
/// Exact fields report `EXACT = true` and decide zero-ness structurally;
/// the float mirror compares magnitudes against a caller-supplied scale.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Imaginary unit.
    fn i() -> Self;
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    /// True when the value is zero relative to `scale`.
    fn negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= FLOAT_ZERO_TOL * scale.max(1.0)
        }
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Qi { re, im: BigRational::zero() }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Qi::real(rat(n, d))
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Qi { re: rat(re.0, re.1), im: rat(im.0, im.1) }
    }

    pub fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        Qi { re: &self.re / &n, im: -(&self.im / &n) }
    }

    /// Largest denominator among the two components.
    pub fn height(&self) -> BigInt {
        let a = self.re.denom().abs();
        let b = self.im.denom().abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Snaps a float to the nearest Gaussian rational with bounded denominators.
    pub fn approximate(z: Complex64, max_den: i64, tol: f64) -> Option<Qi> {
        let re = rationalize(z.re, max_den, tol)?;
        let im = rationalize(z.im, max_den, tol)?;
        Some(Qi { re, im })
    }
}

/// Continued-fraction snap of `x`: the convergents are followed while the
/// denominator stays at most `max_den` and the error exceeds a thousandth of
/// the tolerance; the last one is accepted when within `tol * max(1, |x|)`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let bound = tol * x.abs().max(1.0);
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        best = Some((h2, k2));
        if (x - h2 as f64 / k2 as f64).abs() <= bound * 1e-3 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    let (p, q) = best?;
    if (x - p as f64 / q as f64).abs() <= bound {
        Some(BigRational::new(BigInt::from(p), BigInt::from(q)))
    } else {
        None
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators and denominators together.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        Qi { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        Qi { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi::real(self.re * o.re);
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Qi { re, im }
    }
}

impl Div for Qi {
    type Output = Qi;
    fn div(self, o: Qi) -> Qi {
        if o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero in Q(i)");
            return Qi { re: self.re / &o.re, im: self.im / o.re };
        }
        self * o.inv()
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

impl FromStr for Qi {
    type Err = Error;

    /// Accepts `p/q`, `p/qi`, `i`, `-i` and `p/q+r/si` forms.
    fn from_str(s: &str) -> Result<Qi> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if !s.ends_with('i') {
            return Ok(Qi::real(parse_rational(&s)?));
        }
        let body = &s[..s.len() - 1];
        // Find the sign that separates real and imaginary parts.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with('/'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Qi { re: parse_rational(re)?, im: parse_rational(im.trim_start_matches('+'))? })
    }
}

impl Field for Qi {
    const EXACT: bool = true;
    fn zero() -> Self {
        Qi::real(BigRational::zero())
    }
    fn one() -> Self {
        Qi::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Qi::ratio(n, 1)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Qi::ratio(n, d)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn i() -> Self {
        Qi { re: BigRational::zero(), im: BigRational::one() }
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Complex64::new(n as f64 / d as f64, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

/// Conversion from the exact field into any field (identity or float mirror).
pub trait FromQi: Field {
    fn from_qi(q: &Qi) -> Self;
}

impl FromQi for Qi {
    fn from_qi(q: &Qi) -> Self {
        q.clone()
    }
}

impl FromQi for Complex64 {
    fn from_qi(q: &Qi) -> Self {
        q.to_c64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gaussian_forms() {
        assert_eq!("3/4".parse::<Qi>().unwrap(), Qi::ratio(3, 4));
        assert_eq!("-i".parse::<Qi>().unwrap(), -Qi::i());
        assert_eq!("1/2i".parse::<Qi>().unwrap(), Qi::gaussian((0, 1), (1, 2)));
        assert_eq!("1/2-3/4i".parse::<Qi>().unwrap(), Qi::gaussian((1, 2), (-3, 4)));
        assert_eq!("-2+i".parse::<Qi>().unwrap(), Qi::gaussian((-2, 1), (1, 1)));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-7/15552", "5/3i", "1/2-1/3i", "-1+2i"] {
            let q: Qi = s.parse().unwrap();
            assert_eq!(q.to_string().parse::<Qi>().unwrap(), q);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Qi::gaussian((1, 2), (3, 5));
        let b = Qi::gaussian((-2, 7), (1, 1));
        assert_eq!((a.clone() * b.clone()) / b, a);
    }

    #[test]
    fn rationalize_recovers_large_denominators() {
        let r = rationalize(-671.0 / 544320.0, 1_000_000, 1e-8).unwrap();
        assert_eq!(r, BigRational::new((-671).into(), 544320.into()));
        assert!(rationalize(std::f64::consts::PI, 10, 1e-8).is_none());
    }
}
