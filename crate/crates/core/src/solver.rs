//! Polynomial × exponential solutions of constant-coefficient PDEs.
//!
//! For a symbol `P` and a point `x₀`, the function `e^{i x₀·x} p(x)` with
//! `deg p ≤ L` solves `P(−iD) u = e^{i x₀·x} F` exactly when the coefficient
//! vector of `p` solves `D̄_L P(x₀) v = coeffs(F)`. Everything here reduces to
//! kernels and linear solves of that matrix.

use crate::builder::{build_full, build_stacked};
use crate::combinatorics::cumulative_count;
use crate::error::{Error, Result};
use crate::field::GaussianRational;
use crate::linalg::{nullspace, solve, span_equal, ExactMatrix};
use crate::polynomial::{apply_operator, least_nonzero_derivative_order, ExpPoly, MultiPoly, Point};

/// The affine family `e^{i x₀·x}(particular + Σ c_j basis_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    root: Point,
    degree_cap: u32,
    basis: Vec<MultiPoly>,
    particular: Option<MultiPoly>,
}

impl SolutionSpace {
    /// Assembles a space from parts, e.g. after deserialisation. No
    /// solution property is checked here; use [`verify`] for that.
    pub fn new(
        root: Point,
        degree_cap: u32,
        basis: Vec<MultiPoly>,
        particular: Option<MultiPoly>,
    ) -> Result<Self> {
        let d = root.len();
        for p in basis.iter().chain(particular.iter()) {
            if p.dim() != d {
                return Err(Error::DimensionMismatch(format!(
                    "polynomial in {} variables for a {d}-dimensional root",
                    p.dim()
                )));
            }
            if p.degree() > degree_cap as i64 {
                return Err(Error::DegreeExceedsCap { degree: p.degree(), cap: degree_cap });
            }
        }
        Ok(Self { root, degree_cap, basis, particular })
    }

    pub fn root(&self) -> &[GaussianRational] {
        &self.root
    }

    pub fn dim(&self) -> usize {
        self.root.len()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn particular(&self) -> Option<&MultiPoly> {
        self.particular.as_ref()
    }

    /// Number of free parameters.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis coefficient vectors as the columns of a `d̄(L) × n` matrix.
    pub fn basis_matrix(&self) -> ExactMatrix {
        coefficient_matrix(&self.basis, self.dim(), self.degree_cap)
            .expect("basis degrees are bounded by the cap")
    }
}

/// Predicted against computed kernel dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionReport {
    pub degree_cap: u32,
    pub least_order: u32,
    pub predicted: usize,
    pub computed: usize,
}

impl DimensionReport {
    pub fn consistent(&self) -> bool {
        self.predicted == self.computed
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Passed,
    Failed(String),
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Passed)
    }
}

fn coefficient_matrix(polys: &[MultiPoly], dim: usize, cap: u32) -> Result<ExactMatrix> {
    let cols = polys
        .iter()
        .map(|p| p.coeff_vector(cap))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(cumulative_count(dim, cap), &cols)
}

/// Whether two lists of polynomials of degree `≤ cap` span the same space.
pub fn polys_span_equal(a: &[MultiPoly], b: &[MultiPoly], dim: usize, cap: u32) -> Result<bool> {
    span_equal(&coefficient_matrix(a, dim, cap)?, &coefficient_matrix(b, dim, cap)?)
}

fn require_nonzero(ps: &[MultiPoly], x0: &[GaussianRational]) -> Result<()> {
    if ps.is_empty() {
        return Err(Error::EmptyList);
    }
    for p in ps {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.dim() != x0.len() {
            return Err(Error::DimensionMismatch(format!(
                "polynomial has {} variables but the point has {} coordinates",
                p.dim(),
                x0.len()
            )));
        }
    }
    Ok(())
}

fn kernel_polys(m: &ExactMatrix, dim: usize, cap: u32) -> Vec<MultiPoly> {
    nullspace(m)
        .columns()
        .iter()
        .map(|v| MultiPoly::from_coeff_vector(v, dim, cap).expect("kernel vector has d̄(L) entries"))
        .collect()
}

/// Solutions of `P(−iD) u = 0` of the form `e^{i x₀·x} p`, `deg p ≤ cap`.
/// The basis is empty when `P(x₀) ≠ 0`.
pub fn homogeneous_solutions(symbol: &MultiPoly, x0: &[GaussianRational], cap: u32) -> Result<SolutionSpace> {
    system_solutions(std::slice::from_ref(symbol), x0, cap)
}

/// Common solutions of `P_n(−iD) u = 0` for every symbol in `symbols`.
pub fn system_solutions(symbols: &[MultiPoly], x0: &[GaussianRational], cap: u32) -> Result<SolutionSpace> {
    require_nonzero(symbols, x0)?;
    let m = build_stacked(symbols, x0, cap)?;
    Ok(SolutionSpace {
        root: x0.to_vec(),
        degree_cap: cap,
        basis: kernel_polys(&m, x0.len(), cap),
        particular: None,
    })
}

/// Solves `P(−iD)(e^{i x₀·x} p) = e^{i x₀·x} F`.
///
/// Without an explicit cap, uses `deg F + m` where `m` is the least order of
/// a non-vanishing derivative of `P` at `x₀`; the system is always
/// consistent there. The returned particular solution has every free
/// variable of the linear system set to zero.
pub fn rhs_solve(
    symbol: &MultiPoly,
    rhs: &MultiPoly,
    x0: &[GaussianRational],
    cap: Option<u32>,
) -> Result<SolutionSpace> {
    require_nonzero(std::slice::from_ref(symbol), x0)?;
    if rhs.dim() != x0.len() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} variables but the point has {} coordinates",
            rhs.dim(),
            x0.len()
        )));
    }
    let rhs_degree = rhs.degree().max(0) as u32;
    let cap = match cap {
        Some(l) => l,
        None => rhs_degree + least_nonzero_derivative_order(symbol, x0)?.0,
    };
    let b = rhs.coeff_vector(cap)?;
    let built = build_full(symbol, x0, cap)?;
    let sol = solve(&built.matrix, &b)?;
    let dim = x0.len();
    let basis = sol
        .homogeneous
        .columns()
        .iter()
        .map(|v| MultiPoly::from_coeff_vector(v, dim, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(SolutionSpace {
        root: x0.to_vec(),
        degree_cap: cap,
        basis,
        particular: Some(MultiPoly::from_coeff_vector(&sol.particular, dim, cap)?),
    })
}

/// Kernel dimension predicted from the least derivative order, next to the
/// dimension actually computed.
pub fn predicted_dimension(symbol: &MultiPoly, x0: &[GaussianRational], cap: u32) -> Result<DimensionReport> {
    require_nonzero(std::slice::from_ref(symbol), x0)?;
    let (m, _) = least_nonzero_derivative_order(symbol, x0)?;
    let d = x0.len();
    let predicted = if m == 0 {
        0
    } else if cap >= m {
        cumulative_count(d, cap) - cumulative_count(d, cap - m)
    } else {
        cumulative_count(d, cap)
    };
    let computed = homogeneous_solutions(symbol, x0, cap)?.dimension();
    Ok(DimensionReport { degree_cap: cap, least_order: m, predicted, computed })
}

/// Re-checks a space with the direct operator application.
///
/// Every basis element must be annihilated by every symbol. When `rhs` is
/// given, each symbol must also map the particular solution (zero if
/// absent) onto `rhs`.
pub fn verify(space: &SolutionSpace, symbols: &[MultiPoly], rhs: Option<&MultiPoly>) -> Verification {
    let d = space.dim();
    if let Some(p) = symbols.iter().chain(rhs).find(|p| p.dim() != d) {
        return Verification::Failed(format!(
            "polynomial {p} has {} variables, expected {d}",
            p.dim()
        ));
    }
    for (n, symbol) in symbols.iter().enumerate() {
        for (j, b) in space.basis.iter().enumerate() {
            let image = apply_operator(symbol, &ExpPoly::new(space.root.clone(), b.clone()));
            if !image.poly().is_zero() {
                return Verification::Failed(format!(
                    "basis element {} ({b}) is not annihilated by symbol {}: residual {}",
                    j + 1,
                    n + 1,
                    image.poly()
                ));
            }
        }
        if let Some(f) = rhs {
            let p = space.particular.clone().unwrap_or_else(|| MultiPoly::zero(d));
            let image = apply_operator(symbol, &ExpPoly::new(space.root.clone(), p.clone()));
            let residual = image.poly() - f;
            if !residual.is_zero() {
                return Verification::Failed(format!(
                    "particular solution ({p}) under symbol {} misses the right-hand side by {residual}",
                    n + 1
                ));
            }
        }
    }
    Verification::Passed
}

/// Whether `q` lies in the space; for affine spaces `q − particular` is
/// tested against the span of the basis.
pub fn membership(space: &SolutionSpace, q: &MultiPoly) -> Result<bool> {
    let target = match &space.particular {
        Some(p) => q - p,
        None => q.clone(),
    };
    if q.degree() > space.degree_cap as i64 {
        return Err(Error::DegreeExceedsCap { degree: q.degree(), cap: space.degree_cap });
    }
    if target.is_zero() {
        return Ok(true);
    }
    if space.basis.is_empty() {
        return Ok(false);
    }
    let b = target.coeff_vector(space.degree_cap)?;
    match solve(&space.basis_matrix(), &b) {
        Ok(_) => Ok(true),
        Err(Error::Inconsistent) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::MultiIndex;
    use crate::field::parse_scalar;

    fn s(t: &str) -> GaussianRational {
        parse_scalar(t).unwrap()
    }

    fn poly2(terms: &[(&[u32], &str)]) -> MultiPoly {
        MultiPoly::from_terms(2, terms.iter().map(|(a, c)| (MultiIndex::new(a.to_vec()), s(c))))
    }

    fn p1() -> MultiPoly {
        poly2(&[(&[2, 0], "-1"), (&[0, 2], "-1")])
    }

    fn origin() -> Vec<GaussianRational> {
        vec![s("0"), s("0")]
    }

    #[test]
    fn empty_basis_off_the_root() {
        let space = homogeneous_solutions(&p1(), &[s("1"), s("1")], 3).unwrap();
        assert_eq!(space.dimension(), 0);
        let constant = homogeneous_solutions(&MultiPoly::one(2), &origin(), 2).unwrap();
        assert_eq!(constant.dimension(), 0);
        let report = predicted_dimension(&p1(), &[s("1"), s("1")], 3).unwrap();
        assert_eq!((report.least_order, report.predicted, report.computed), (0, 0, 0));
    }

    #[test]
    fn zero_and_empty_inputs() {
        assert_eq!(
            homogeneous_solutions(&MultiPoly::zero(2), &origin(), 2),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(system_solutions(&[], &origin(), 2), Err(Error::EmptyList));
        assert!(matches!(
            homogeneous_solutions(&p1(), &[s("0")], 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn system_with_constant_is_trivial() {
        let space = system_solutions(&[p1(), MultiPoly::one(2)], &origin(), 3).unwrap();
        assert_eq!(space.dimension(), 0);
    }

    #[test]
    fn verify_reports_residual() {
        let bad = SolutionSpace::new(origin(), 2, vec![poly2(&[(&[2, 0], "1")])], None).unwrap();
        match verify(&bad, &[p1()], None) {
            Verification::Failed(msg) => assert!(msg.contains("residual 2"), "{msg}"),
            Verification::Passed => panic!("x^2 is not harmonic"),
        }
    }

    #[test]
    fn membership_examples() {
        let space = homogeneous_solutions(&p1(), &origin(), 3).unwrap();
        assert!(membership(&space, &poly2(&[(&[0, 2], "1"), (&[2, 0], "-1")])).unwrap());
        assert!(!membership(&space, &poly2(&[(&[2, 0], "1")])).unwrap());
        assert!(membership(&space, &MultiPoly::zero(2)).unwrap());
        assert_eq!(
            membership(&space, &poly2(&[(&[4, 0], "1")])),
            Err(Error::DegreeExceedsCap { degree: 4, cap: 3 })
        );
    }

    #[test]
    fn forced_low_cap_is_inconsistent() {
        // Helmholtz at a root needs cap deg F + 1; deg F alone is too small.
        let p5 = poly2(&[(&[2, 0], "-1"), (&[0, 2], "-1"), (&[0, 0], "-1")]);
        let f = poly2(&[(&[0, 0], "2"), (&[1, 0], "3"), (&[1, 1], "-2"), (&[0, 2], "1")]);
        let root = vec![s("i"), s("0")];
        assert_eq!(rhs_solve(&p5, &f, &root, Some(2)), Err(Error::Inconsistent));
        assert_eq!(
            rhs_solve(&p5, &f, &root, Some(1)),
            Err(Error::DegreeExceedsCap { degree: 2, cap: 1 })
        );
        let space = rhs_solve(&p5, &f, &root, None).unwrap();
        assert_eq!(space.degree_cap(), 3);
        assert!(verify(&space, &[p5], Some(&f)).passed());
    }
}
