//! Plain-text, LaTeX and CSV renderings.

use num_traits::{One, Signed, Zero};
use pdepoly::{format_scalar, ExactMatrix, GaussianRational, MultiPoly, Rational, SolutionSpace};

/// `Σ i·(x₀)_j·x_j`, the exponent of the exponential factor.
pub fn exponent(root: &[GaussianRational]) -> MultiPoly {
    let d = root.len();
    let i = GaussianRational::i();
    (0..d).fold(MultiPoly::zero(d), |acc, j| &acc + &MultiPoly::var(d, j).scale(&(&i * &root[j])))
}

pub fn point(root: &[GaussianRational]) -> String {
    let coords: Vec<_> = root.iter().map(format_scalar).collect();
    format!("({})", coords.join(", "))
}

pub fn solution_plain(space: &SolutionSpace, vars: &[String], notes: &[String]) -> String {
    let mut out = String::new();
    let e = exponent(space.root());
    out.push_str(&format!("root: {}\n", point(space.root())));
    out.push_str(&format!("degree cap: {}\n", space.degree_cap()));
    if e.is_zero() {
        out.push_str("factor: 1\n");
    } else {
        out.push_str(&format!("factor: exp({})\n", e.format_with(vars)));
    }
    if let Some(p) = space.particular() {
        let unique = if space.basis().is_empty() { " (unique)" } else { "" };
        out.push_str(&format!("particular: {}{unique}\n", p.format_with(vars)));
    }
    out.push_str(&format!("dimension: {}\n", space.dimension()));
    if !space.basis().is_empty() {
        out.push_str("basis:\n");
        for b in space.basis() {
            out.push_str(&format!("  {}\n", b.format_with(vars)));
        }
    }
    for note in notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

pub fn solution_latex(space: &SolutionSpace, vars: &[String], notes: &[String]) -> String {
    let e = exponent(space.root());
    let prefix = if e.is_zero() { String::new() } else { format!("e^{{{}}}", poly_latex(&e, vars)) };
    let wrap = |p: &MultiPoly| {
        if prefix.is_empty() {
            poly_latex(p, vars)
        } else {
            format!("{prefix}\\left({}\\right)", poly_latex(p, vars))
        }
    };
    let mut out = String::new();
    if let Some(p) = space.particular() {
        out.push_str(&format!("u_0 = {}\\\\\n", wrap(p)));
    }
    for (j, b) in space.basis().iter().enumerate() {
        out.push_str(&format!("u_{{{}}} = {}\\\\\n", j + 1, wrap(b)));
    }
    for note in notes {
        out.push_str(&format!("% {note}\n"));
    }
    out
}

/// Coefficient table: a header of monomials, then one row per polynomial
/// (the particular solution first, when present).
pub fn solution_csv(space: &SolutionSpace, vars: &[String]) -> String {
    let cap = space.degree_cap();
    let monomials = pdepoly::graded_set(space.dim(), cap);
    let mut header = vec!["kind".to_string()];
    header.extend(monomials.iter().map(|a| {
        MultiPoly::monomial(a.clone(), GaussianRational::one()).format_with(vars)
    }));
    let mut out = header.join(",") + "\n";
    let rows = space
        .particular()
        .map(|p| ("particular", p))
        .into_iter()
        .chain(space.basis().iter().map(|b| ("basis", b)));
    for (kind, p) in rows {
        let coeffs = p.coeff_vector(cap).expect("degrees are bounded by the cap");
        let mut fields = vec![kind.to_string()];
        fields.extend(coeffs.iter().map(format_scalar));
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_csv(m: &ExactMatrix) -> String {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(format_scalar).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

pub fn matrix_plain(m: &ExactMatrix) -> String {
    let cells: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            row.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" ").trim_end().to_string() + "\n"
        })
        .collect()
}

pub fn matrix_latex(m: &ExactMatrix) -> String {
    let mut out = String::from("\\begin{bmatrix}\n");
    for row in m.to_rows() {
        let cells: Vec<_> = row.iter().map(scalar_latex).collect();
        out.push_str(&format!("  {} \\\\\n", cells.join(" & ")));
    }
    out.push_str("\\end{bmatrix}\n");
    out
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn signed_rational_latex(r: &Rational) -> String {
    if r.is_negative() {
        format!("-{}", rational_latex(&r.abs()))
    } else {
        rational_latex(r)
    }
}

fn imaginary_latex(mag: &Rational) -> String {
    if mag.is_one() {
        "i".to_string()
    } else {
        format!("{}i", rational_latex(mag))
    }
}

pub fn scalar_latex(c: &GaussianRational) -> String {
    if c.im().is_zero() {
        return signed_rational_latex(c.re());
    }
    let im = imaginary_latex(&c.im().abs());
    if c.re().is_zero() {
        let sign = if c.im().is_negative() { "-" } else { "" };
        return format!("{sign}{im}");
    }
    let sign = if c.im().is_negative() { "-" } else { "+" };
    format!("{}{sign}{im}", signed_rational_latex(c.re()))
}

pub fn poly_latex(p: &MultiPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (alpha, c)) in p.terms().enumerate() {
        let mono: String = alpha
            .components()
            .iter()
            .zip(vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{{{e}}}") })
            .collect();
        let (negative, magnitude) = if c.im().is_zero() {
            (c.re().is_negative(), rational_latex(&c.re().abs()))
        } else if c.re().is_zero() {
            (c.im().is_negative(), imaginary_latex(&c.im().abs()))
        } else {
            (false, format!("\\left({}\\right)", scalar_latex(c)))
        };
        out.push_str(match (k == 0, negative) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if magnitude != "1" || mono.is_empty() {
            out.push_str(&magnitude);
        }
        out.push_str(&mono);
    }
    out
}
