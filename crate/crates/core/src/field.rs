//! Exact scalar arithmetic over the Gaussian rationals ℚ(i).
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. [`GaussianRational`] pairs two
//! of them as real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Sign of the imaginary unit in [`i_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    /// `num/den + 0i`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The complex number `re + im·i` with integer parts.
    pub fn complex(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    pub fn i() -> Self {
        Self::complex(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

/// `(±i)^k`, computed from `k mod 4`.
pub fn i_power(k: u32, sign: Sign) -> GaussianRational {
    let k = match sign {
        Sign::Plus => k % 4,
        Sign::Minus => (4 - k % 4) % 4,
    };
    match k {
        0 => GaussianRational::one(),
        1 => GaussianRational::complex(0, 1),
        2 => GaussianRational::complex(-1, 0),
        _ => GaussianRational::complex(0, -1),
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    /// Formats per the scalar grammar: `-2`, `3/2-1/2i`, `i`, `-3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &Rational, leading: bool| {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if leading {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, &self.im, false)
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

pub fn format_scalar(a: &GaussianRational) -> String {
    a.to_string()
}

/// Parses `rational [± rational "i"] | rational "i" | "i"`, where
/// `rational = int | int "/" posint`. Whitespace between tokens is ignored
/// and the Unicode minus sign `−` is accepted for `-`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let mut cur = ScalarCursor { text, pos: 0 };
    cur.skip_ws();
    if cur.at_end() {
        return Err(Error::parse_at(text, 0, "empty scalar"));
    }
    let first_sign = cur.sign();
    let (first, first_imag) = cur.term(first_sign)?;
    let mut value = if first_imag {
        GaussianRational::new(Rational::zero(), first)
    } else {
        GaussianRational::real(first)
    };
    cur.skip_ws();
    if !cur.at_end() {
        let at = cur.pos;
        let Some(sign) = cur.sign() else {
            return Err(Error::parse_expecting(
                text,
                at,
                "unexpected character",
                vec!["'+'".into(), "'-'".into(), "end of input".into()],
            ));
        };
        let (second, second_imag) = cur.term(Some(sign))?;
        if second_imag == first_imag {
            return Err(Error::parse_at(
                text,
                at,
                "a scalar has at most one real and one imaginary part",
            ));
        }
        if second_imag {
            value.im = second;
        } else {
            value.re = second;
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(Error::parse_expecting(
                text,
                cur.pos,
                "trailing input",
                vec!["end of input".into()],
            ));
        }
    }
    Ok(value)
}

struct ScalarCursor<'a> {
    text: &'a str,
    pos: usize,
}

impl ScalarCursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Consumes an optional sign; `Some(true)` means negative.
    fn sign(&mut self) -> Option<bool> {
        let s = match self.peek()? {
            '+' => false,
            '-' | '−' => true,
            _ => return None,
        };
        self.bump();
        self.skip_ws();
        Some(s)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| self.text[start..self.pos].parse().unwrap())
    }

    /// One term: `rational`, `rational "i"` or `"i"`. Returns the value and
    /// whether it was imaginary.
    fn term(&mut self, sign: Option<bool>) -> Result<(Rational, bool)> {
        let negative = sign.unwrap_or(false);
        let start = self.pos;
        let value = match self.digits() {
            Some(num) => {
                let den = if self.peek() == Some('/') {
                    self.bump();
                    let at = self.pos;
                    match self.digits() {
                        Some(d) if !d.is_zero() => d,
                        Some(_) => return Err(Error::parse_at(self.text, at, "zero denominator")),
                        None => {
                            return Err(Error::parse_expecting(
                                self.text,
                                at,
                                "missing denominator",
                                vec!["positive integer".into()],
                            ))
                        }
                    }
                } else {
                    BigInt::one()
                };
                Some(Rational::new(num, den))
            }
            None => None,
        };
        self.skip_ws();
        let imaginary = if self.peek() == Some('i') {
            self.bump();
            true
        } else {
            false
        };
        let value = match (value, imaginary) {
            (Some(v), _) => v,
            (None, true) => Rational::one(),
            (None, false) => {
                return Err(Error::parse_expecting(
                    self.text,
                    start,
                    "expected a number",
                    vec!["integer".into(), "'i'".into()],
                ))
            }
        };
        Ok((if negative { -value } else { value }, imaginary))
    }
}
