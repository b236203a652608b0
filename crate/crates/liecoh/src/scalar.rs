//! Exact scalars: elements of Q(i), a rational real part plus a rational
//! imaginary part. Everything downstream (kernels, ranks, cohomology
//! dimensions) depends on this arithmetic being exact; there is no floating
//! point anywhere in this crate.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rat,
    pub im: Rat,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: Rat::one(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        Scalar { re: Rat::zero(), im: Rat::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: rat(n, 1), im: Rat::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar { re: rat(n, d), im: Rat::zero() }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar { re: r, im: Rat::zero() }
    }

    pub fn new(re: Rat, im: Rat) -> Self {
        Scalar { re, im }
    }

    pub fn gauss(re: Rat, im: Rat) -> Self {
        Scalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|^2, a nonnegative rational; zero iff z is zero.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero scalar");
        Scalar { re: &self.re / &n, im: -&self.im / &n }
    }

    /// Reference-based product; the operator impls defer to this.
    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar::mul(&self, &rhs)
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = Scalar::mul(&*self, &rhs);
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        Scalar::mul(&self, &rhs.inv())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders the coefficient of i with the sign stripped: 1 -> "i",
/// 5/3 -> "5/3i".
fn fmt_imag_abs(r: &Rat) -> String {
    let a = r.abs();
    if a.is_one() {
        "i".to_string()
    } else {
        format!("{}i", fmt_rat(&a))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, fmt_imag_abs(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", fmt_rat(&self.re), sign, fmt_imag_abs(&self.im))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses "a", "a/b", "a/b+c/di", "-c/di", "i", "a-i" and the like.
/// Whitespace is ignored. At most one real and one imaginary term.
pub fn parse_scalar(input: &str) -> Result<Scalar, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty scalar".to_string());
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut re: Option<Rat> = None;
    let mut im: Option<Rat> = None;

    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(format!("expected '+' or '-' at offset {pos} in '{input}'"));
        }
        if pos >= bytes.len() {
            return Err(format!("dangling sign in '{input}'"));
        }
        // Bare i: coefficient 1.
        if bytes[pos] == b'i' {
            pos += 1;
            if im.is_some() {
                return Err(format!("two imaginary terms in '{input}'"));
            }
            im = Some(rat(sign, 1));
            continue;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(format!("expected digits at offset {pos} in '{input}'"));
        }
        let numer: BigInt = s[start..pos].parse().map_err(|e| format!("{e}"))?;
        let mut denom = BigInt::one();
        if pos < bytes.len() && bytes[pos] == b'/' {
            pos += 1;
            let dstart = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == dstart {
                return Err(format!("expected denominator digits in '{input}'"));
            }
            denom = s[dstart..pos].parse().map_err(|e| format!("{e}"))?;
            if denom.is_zero() {
                return Err(format!("zero denominator in '{input}'"));
            }
        }
        let mut val = Rat::new(numer, denom);
        if sign < 0 {
            val = -val;
        }
        if pos < bytes.len() && bytes[pos] == b'i' {
            pos += 1;
            if im.is_some() {
                return Err(format!("two imaginary terms in '{input}'"));
            }
            im = Some(val);
        } else {
            if re.is_some() {
                return Err(format!("two real terms in '{input}'"));
            }
            re = Some(val);
        }
    }

    Ok(Scalar {
        re: re.unwrap_or_else(Rat::zero),
        im: im.unwrap_or_else(Rat::zero),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::from_ratio(1, 3);
        let b = Scalar::from_ratio(1, 6);
        assert_eq!(a.clone() + b.clone(), Scalar::from_ratio(1, 2));
        let i = Scalar::i();
        assert_eq!((&i).mul(&i), Scalar::from_int(-1));
        let z = Scalar::new(rat(1, 2), rat(-1, 3));
        assert!(((&z).mul(&z.inv())).is_one());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["3/4", "-1/2+1/3i", "0", "i", "-i", "2", "-7/2", "5i", "1-i"] {
            let z = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&z.to_string()).unwrap(), z, "{s}");
        }
        assert_eq!(parse_scalar("-1/2+1/3i").unwrap().to_string(), "-1/2+1/3i");
        assert_eq!(parse_scalar(" 1 - 2 i ").unwrap().to_string(), "1-2i");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "+", "1//2", "1+2", "i+i", "1/0", "2x"] {
            assert!(parse_scalar(s).is_err(), "{s}");
        }
    }
}
