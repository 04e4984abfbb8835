//! JSON documents emitted and consumed by the command-line tool. Scalars are
//! always exact strings in the `a/b±c/di` grammar.

use pdepoly::{
    format_scalar, parse_scalar, DimensionReport, Error, ExactMatrix, MultiIndex, MultiPoly, SolutionSpace,
};
use serde::{Deserialize, Serialize};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub monomials: Vec<(Vec<u32>, String)>,
}

impl PolyDocument {
    pub fn from_poly(p: &MultiPoly) -> Self {
        Self {
            monomials: p
                .terms()
                .map(|(alpha, c)| (alpha.components().to_vec(), format_scalar(c)))
                .collect(),
        }
    }

    pub fn to_poly(&self, dim: usize) -> Result<MultiPoly, Error> {
        let mut terms = Vec::with_capacity(self.monomials.len());
        for (exponent, coefficient) in &self.monomials {
            if exponent.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "monomial exponent has {} entries, expected {dim}",
                    exponent.len()
                )));
            }
            terms.push((MultiIndex::new(exponent.clone()), parse_scalar(coefficient)?));
        }
        Ok(MultiPoly::from_terms(dim, terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub version: u32,
    pub d: usize,
    pub vars: Vec<String>,
    pub root: Vec<String>,
    pub degree_cap: u32,
    pub basis: Vec<PolyDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particular: Option<PolyDocument>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl SolutionDocument {
    pub fn new(space: &SolutionSpace, vars: &[String], notes: Vec<String>) -> Self {
        Self {
            version: VERSION,
            d: space.dim(),
            vars: vars.to_vec(),
            root: space.root().iter().map(format_scalar).collect(),
            degree_cap: space.degree_cap(),
            basis: space.basis().iter().map(PolyDocument::from_poly).collect(),
            particular: space.particular().map(PolyDocument::from_poly),
            notes,
        }
    }

    pub fn to_space(&self) -> Result<SolutionSpace, Error> {
        if self.version != VERSION {
            return Err(Error::DimensionMismatch(format!("unsupported document version {}", self.version)));
        }
        if self.vars.len() != self.d || self.root.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "d = {} but {} variables and {} root coordinates",
                self.d,
                self.vars.len(),
                self.root.len()
            )));
        }
        let root = self.root.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
        let basis = self.basis.iter().map(|b| b.to_poly(self.d)).collect::<Result<Vec<_>, _>>()?;
        let particular = self.particular.as_ref().map(|p| p.to_poly(self.d)).transpose()?;
        SolutionSpace::new(root, self.degree_cap, basis, particular)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub version: u32,
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<(u32, u32)>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDocument {
    pub fn new(m: &ExactMatrix, block: Option<(u32, u32)>) -> Self {
        Self {
            version: VERSION,
            rows: m.rows(),
            cols: m.cols(),
            block,
            entries: m
                .to_rows()
                .iter()
                .map(|row| row.iter().map(format_scalar).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionDocument {
    pub version: u32,
    pub degree_cap: u32,
    pub least_order: u32,
    pub predicted: usize,
    pub computed: usize,
}

impl From<&DimensionReport> for DimensionDocument {
    fn from(r: &DimensionReport) -> Self {
        Self {
            version: VERSION,
            degree_cap: r.degree_cap,
            least_order: r.least_order,
            predicted: r.predicted,
            computed: r.computed,
        }
    }
}
