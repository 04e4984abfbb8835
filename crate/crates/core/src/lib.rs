//! Exact polynomial × exponential solutions of linear PDEs with constant
//! coefficients.
//!
//! A constant-coefficient operator is represented by its symbol `P`, the
//! polynomial with `operator = P(−iD)`; for instance the Laplacian
//! `∂²/∂x² + ∂²/∂y²` has symbol `−x² − y²`. For a point `x₀` and a degree cap
//! `L`, the solutions `e^{i x₀·x} p(x)` with `deg p ≤ L` correspond to the
//! kernel of an upper block-triangular matrix built from the derivatives of
//! `P` at `x₀` (see [`builder`]). All arithmetic is exact over ℚ(i).
//!
//! ```
//! use pdepoly::{parse_operator, parse_point, homogeneous_solutions, ParseContext};
//!
//! let ctx = ParseContext::symbols(2);
//! let laplace = parse_operator("Dx^2 + Dy^2", &ctx).unwrap();
//! let origin = parse_point("(0,0)", 2).unwrap();
//! let space = homogeneous_solutions(&laplace, &origin, 3).unwrap();
//! assert_eq!(space.dimension(), 7);
//! ```

pub mod builder;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod linalg;
pub mod parser;
pub mod polynomial;
pub mod solver;

pub use builder::{build_block, build_full, build_stacked, derivative_row, BuiltMatrix};
pub use combinatorics::{
    count, cumulative_count, graded_set, level_set, multi_binomial, MultiIndex, OrderedIndexSet,
};
pub use error::{Error, Result};
pub use field::{format_scalar, i_power, parse_scalar, GaussianRational, Rational, Sign};
pub use linalg::{nullspace, rank, rref, solve, span_equal, ExactMatrix, LinearSolution, Rref};
pub use parser::{parse_operator, parse_point, parse_point_any, parse_poly, Mode, ParseContext};
pub use polynomial::{
    apply_operator, default_variables, least_nonzero_derivative_order, ExpPoly, MultiPoly, Point,
};
pub use solver::{
    homogeneous_solutions, membership, polys_span_equal, predicted_dimension, rhs_solve,
    system_solutions, verify, DimensionReport, SolutionSpace, Verification,
};
