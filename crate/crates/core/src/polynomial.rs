//! Sparse multivariate polynomials over ℚ(i) and the operator calculus on
//! polynomial × exponential functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{cumulative_count, graded_set, MultiIndex};
use crate::error::{Error, Result};
use crate::field::{i_power, GaussianRational, Rational, Sign};

/// A point of ℚ(i)^d.
pub type Point = Vec<GaussianRational>;

/// Polynomial in `dim` variables, stored as a map from exponent to
/// non-zero coefficient. Iteration follows the graded monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: GaussianRational) -> Self {
        let mut p = Self::zero(alpha.dim());
        if !c.is_zero() {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// The coordinate function `x_j`.
    pub fn var(dim: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, j), GaussianRational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, GaussianRational)>,
    {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            assert_eq!(alpha.dim(), dim, "exponent has wrong dimension");
            p.add_term(alpha, &c);
        }
        p
    }

    fn add_term(&mut self, alpha: MultiIndex, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> GaussianRational {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|a| a.degree() as i64).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.dim), |acc, _| &acc * self)
    }

    /// The partial derivative `D^α p`.
    pub fn derivative(&self, alpha: &MultiIndex) -> Self {
        assert_eq!(alpha.dim(), self.dim, "derivative order has wrong dimension");
        let mut out = Self::zero(self.dim);
        for (beta, c) in &self.terms {
            let Some(rest) = beta.checked_sub(alpha) else {
                continue;
            };
            // β!/(β−α)! = Π falling factorials
            let factor: u128 = beta
                .components()
                .iter()
                .zip(alpha.components())
                .map(|(&b, &a)| ((b - a + 1)..=b).map(u128::from).product::<u128>())
                .product();
            let factor = GaussianRational::real(Rational::from_integer(factor.into()));
            out.add_term(rest, &(c * &factor));
        }
        out
    }

    pub fn evaluate(&self, x0: &[GaussianRational]) -> GaussianRational {
        assert_eq!(x0.len(), self.dim, "point has wrong dimension");
        let mut acc = GaussianRational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (xj, &aj) in x0.iter().zip(alpha.components()) {
                if aj > 0 {
                    term = &term * &xj.pow(aj);
                }
            }
            acc += &term;
        }
        acc
    }

    /// Coefficients in graded order over all monomials of degree `≤ cap`.
    pub fn coeff_vector(&self, cap: u32) -> Result<Vec<GaussianRational>> {
        if self.degree() > cap as i64 {
            return Err(Error::DegreeExceedsCap { degree: self.degree(), cap });
        }
        Ok(graded_set(self.dim, cap).iter().map(|a| self.coeff(a)).collect())
    }

    pub fn from_coeff_vector(v: &[GaussianRational], dim: usize, cap: u32) -> Result<Self> {
        let expected = cumulative_count(dim, cap);
        if v.len() != expected {
            return Err(Error::LengthMismatch { expected, found: v.len() });
        }
        Ok(Self::from_terms(
            dim,
            graded_set(dim, cap).iter().cloned().zip(v.iter().cloned()),
        ))
    }

    /// Reads `self` as a polynomial in the derivative symbols `D_j` and
    /// returns the symbol `P` with `self(D) = P(−iD)`, i.e. substitutes
    /// `D_j ↦ i·x_j`.
    pub fn symbol_from_operator(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c * &i_power(a.degree(), Sign::Plus)))
                .collect(),
        }
    }

    /// `x ↦ p(x + s)`, via the Taylor expansion at `s`.
    pub fn shift(&self, s: &[GaussianRational]) -> Self {
        assert_eq!(s.len(), self.dim, "shift has wrong dimension");
        let Ok(cap) = u32::try_from(self.degree()) else {
            return self.clone();
        };
        let set = graded_set(self.dim, cap);
        let terms = set.iter().filter_map(|gamma| {
            let value = self.derivative(gamma).evaluate(s);
            if value.is_zero() {
                return None;
            }
            let fact = Rational::from_integer(gamma.factorial().into());
            let c = GaussianRational::new(value.re() / &fact, value.im() / &fact);
            Some((gamma.clone(), c))
        });
        Self::from_terms(self.dim, terms.collect::<Vec<_>>())
    }

    /// Plain-text rendering with the given variable names, e.g.
    /// `-4 - 3*x + 2*x*y - y^2`. The output re-parses to `self`.
    pub fn format_with(&self, vars: &[impl AsRef<str>]) -> String {
        assert_eq!(vars.len(), self.dim, "wrong number of variable names");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (alpha, c)) in self.terms.iter().enumerate() {
            let mono = alpha
                .components()
                .iter()
                .zip(vars)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| {
                    if e == 1 {
                        v.as_ref().to_string()
                    } else {
                        format!("{}^{e}", v.as_ref())
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let (negative, coeff) = split_coefficient(c);
            match (k == 0, negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            match (coeff.as_str(), mono.is_empty()) {
                (c, true) => out.push_str(c),
                ("1", false) => out.push_str(&mono),
                (c, false) => {
                    out.push_str(c);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Splits a coefficient into a leading sign and an unsigned magnitude text.
/// Coefficients with both real and imaginary parts are parenthesised.
fn split_coefficient(c: &GaussianRational) -> (bool, String) {
    if c.is_real() {
        (c.re().is_negative(), c.re().abs().to_string())
    } else if c.re().is_zero() {
        let mag = c.im().abs();
        let text = if mag.is_one() { "i".to_string() } else { format!("{mag}i") };
        (c.im().is_negative(), text)
    } else {
        (false, format!("({c})"))
    }
}

/// `x, y, z` for up to three variables, `x1, …, xd` beyond that.
pub fn default_variables(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|j| format!("x{j}")).collect(),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_variables(self.dim)))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.dim)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimensions differ");
        let mut out = MultiPoly::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, e) in &rhs.terms {
                out.add_term(a.add(b), &(c * e));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GaussianRational::from(-1))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// The function `x ↦ e^{i·root·x}·poly(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpPoly {
    root: Point,
    poly: MultiPoly,
}

impl ExpPoly {
    pub fn new(root: Point, poly: MultiPoly) -> Self {
        assert_eq!(root.len(), poly.dim(), "root and polynomial dimensions differ");
        Self { root, poly }
    }

    pub fn root(&self) -> &[GaussianRational] {
        &self.root
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly {
        self.poly
    }
}

/// `P(−iD)` applied to `e^{i x₀·x} p(x)`.
///
/// Each monomial `x^γ` of `P` is applied as `γ_j` repetitions of the step
/// `(−i)D_j(e^{i x₀·x} r) = e^{i x₀·x}((x₀)_j r − i D_j r)`.
pub fn apply_operator(symbol: &MultiPoly, u: &ExpPoly) -> ExpPoly {
    let dim = u.poly.dim();
    assert_eq!(symbol.dim(), dim, "operator and function dimensions differ");
    let minus_i = GaussianRational::complex(0, -1);
    let mut result = MultiPoly::zero(dim);
    for (gamma, c) in symbol.terms() {
        let mut r = u.poly.clone();
        for (j, &times) in gamma.components().iter().enumerate() {
            let unit = MultiIndex::unit(dim, j);
            for _ in 0..times {
                let shifted = r.scale(&u.root[j]);
                let differentiated = r.derivative(&unit).scale(&minus_i);
                r = &shifted + &differentiated;
            }
        }
        result = &result + &r.scale(c);
    }
    ExpPoly::new(u.root.clone(), result)
}

/// Smallest `m` with `D^γ P(x₀) ≠ 0` for some `|γ| = m`, and one such `γ`.
pub fn least_nonzero_derivative_order(
    symbol: &MultiPoly,
    x0: &[GaussianRational],
) -> Result<(u32, MultiIndex)> {
    if symbol.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if x0.len() != symbol.dim() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables but the point has {} coordinates",
            symbol.dim(),
            x0.len()
        )));
    }
    let cap = symbol.degree() as u32;
    graded_set(symbol.dim(), cap)
        .iter()
        .find(|gamma| !symbol.derivative(gamma).evaluate(x0).is_zero())
        .map(|gamma| (gamma.degree(), gamma.clone()))
        .ok_or(Error::ZeroPolynomial)
}
