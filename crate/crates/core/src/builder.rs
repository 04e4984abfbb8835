//! Assembly of the derivative matrix `D̄_L f(x₀)`.
//!
//! Rows and columns are indexed by the graded multi-index set of degree
//! `≤ L`. The entry in row `β`, column `α` is
//! `(−i)^{|α−β|} C(α,β) D^{α−β} f(x₀)` when `β ≤ α` and zero otherwise, so the
//! matrix is upper block-triangular with `f(x₀)·I` on the diagonal blocks.
//! Multiplying it with the coefficient vector of `p` gives the coefficient
//! vector of `e^{-i x₀·x} f(−iD)(e^{i x₀·x} p)`.

use std::collections::HashMap;
use std::ops::Range;

use num_traits::Zero;

use crate::combinatorics::{count, cumulative_count, graded_set, level_set, multi_binomial, MultiIndex};
use crate::error::{Error, Result};
use crate::field::{i_power, GaussianRational, Rational, Sign};
use crate::linalg::ExactMatrix;
use crate::polynomial::MultiPoly;

/// `D̄_L f(x₀)` together with its block layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltMatrix {
    pub matrix: ExactMatrix,
    pub degree_cap: u32,
    pub dim: usize,
}

impl BuiltMatrix {
    /// Row/column range of degree level `k` (0-based, half-open).
    pub fn level_range(&self, k: u32) -> Range<usize> {
        level_range(self.dim, k)
    }

    /// The `d(k) × d(K)` block at block-row `k`, block-column `K`.
    pub fn block(&self, k: u32, big_k: u32) -> ExactMatrix {
        assert!(k <= self.degree_cap && big_k <= self.degree_cap, "block outside the cap");
        let r = self.level_range(k);
        let c = self.level_range(big_k);
        self.matrix.submatrix(r.start, r.end, c.start, c.end)
    }
}

pub fn level_range(dim: usize, k: u32) -> Range<usize> {
    let start = if k == 0 { 0 } else { cumulative_count(dim, k - 1) };
    start..start + count(dim, k)
}

fn check_dims(f: &MultiPoly, x0: &[GaussianRational]) -> Result<()> {
    if f.dim() != x0.len() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables but the point has {} coordinates",
            f.dim(),
            x0.len()
        )));
    }
    if f.dim() == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    Ok(())
}

/// Memoised values `(−i)^{|γ|} D^γ f(x₀)`.
struct ScaledDerivatives<'a> {
    f: &'a MultiPoly,
    x0: &'a [GaussianRational],
    cache: HashMap<MultiIndex, GaussianRational>,
}

impl<'a> ScaledDerivatives<'a> {
    fn new(f: &'a MultiPoly, x0: &'a [GaussianRational]) -> Self {
        Self { f, x0, cache: HashMap::new() }
    }

    fn get(&mut self, gamma: &MultiIndex) -> GaussianRational {
        if gamma.degree() as i64 > self.f.degree() {
            return GaussianRational::zero();
        }
        if let Some(v) = self.cache.get(gamma) {
            return v.clone();
        }
        let v = &i_power(gamma.degree(), Sign::Minus) * &self.f.derivative(gamma).evaluate(self.x0);
        self.cache.insert(gamma.clone(), v.clone());
        v
    }

    fn entry(&mut self, beta: &MultiIndex, alpha: &MultiIndex) -> GaussianRational {
        let Some(gamma) = alpha.checked_sub(beta) else {
            return GaussianRational::zero();
        };
        let d = self.get(&gamma);
        if d.is_zero() {
            return d;
        }
        let c = multi_binomial(alpha, beta);
        &d * &GaussianRational::real(Rational::from_integer(c.into()))
    }
}

pub fn build_block(f: &MultiPoly, x0: &[GaussianRational], k: u32, big_k: u32) -> Result<ExactMatrix> {
    check_dims(f, x0)?;
    let rows = level_set(f.dim(), k);
    let cols = level_set(f.dim(), big_k);
    let mut m = ExactMatrix::zeros(rows.len(), cols.len());
    if k > big_k {
        return Ok(m);
    }
    let mut table = ScaledDerivatives::new(f, x0);
    for (j, beta) in rows.iter().enumerate() {
        for (c, alpha) in cols.iter().enumerate() {
            m[(j, c)] = table.entry(beta, alpha);
        }
    }
    Ok(m)
}

pub fn build_full(f: &MultiPoly, x0: &[GaussianRational], cap: u32) -> Result<BuiltMatrix> {
    check_dims(f, x0)?;
    let set = graded_set(f.dim(), cap);
    let n = set.len();
    let mut m = ExactMatrix::zeros(n, n);
    let mut table = ScaledDerivatives::new(f, x0);
    for (r, beta) in set.iter().enumerate() {
        for (c, alpha) in set.iter().enumerate().skip(r) {
            m[(r, c)] = table.entry(beta, alpha);
        }
    }
    Ok(BuiltMatrix { matrix: m, degree_cap: cap, dim: f.dim() })
}

/// The row `((−i)^{|α|} D^α f(x₀))_α` over the graded set of degree `≤ cap`.
pub fn derivative_row(f: &MultiPoly, x0: &[GaussianRational], cap: u32) -> Result<Vec<GaussianRational>> {
    check_dims(f, x0)?;
    let mut table = ScaledDerivatives::new(f, x0);
    Ok(graded_set(f.dim(), cap).iter().map(|a| table.get(a)).collect())
}

/// Vertical stack of `D̄_L f_n(x₀)` in input order.
pub fn build_stacked(fs: &[MultiPoly], x0: &[GaussianRational], cap: u32) -> Result<ExactMatrix> {
    if fs.is_empty() {
        return Err(Error::EmptyList);
    }
    let parts = fs
        .iter()
        .map(|f| build_full(f, x0, cap).map(|b| b.matrix))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::vstack(&parts)
}
