#![allow(dead_code)]

use pdepoly::{
    graded_set, parse_operator, parse_poly, parse_scalar, GaussianRational, MultiIndex, MultiPoly, ParseContext,
};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn s(text: &str) -> GaussianRational {
    parse_scalar(text).unwrap()
}

pub fn point(texts: &[&str]) -> Vec<GaussianRational> {
    texts.iter().map(|t| s(t)).collect()
}

pub fn poly(dim: usize, text: &str) -> MultiPoly {
    parse_poly(text, &ParseContext::symbols(dim)).unwrap()
}

pub fn op(dim: usize, text: &str) -> MultiPoly {
    parse_operator(text, &ParseContext::symbols(dim)).unwrap()
}

pub fn polys(dim: usize, texts: &[&str]) -> Vec<MultiPoly> {
    texts.iter().map(|t| poly(dim, t)).collect()
}

/// Small Gaussian rational; zero with probability about 1/4.
pub fn scalar(rng: &mut ChaCha8Rng) -> GaussianRational {
    if rng.gen_ratio(1, 4) {
        return GaussianRational::zero();
    }
    let re = GaussianRational::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let im = if rng.gen_bool(0.5) {
        GaussianRational::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
    } else {
        GaussianRational::ratio(0, 1)
    };
    &re + &(&im * &GaussianRational::i())
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<GaussianRational> {
    (0..dim).map(|_| scalar(rng)).collect()
}

/// Random polynomial with up to `max_terms` terms of degree `≤ max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, dim: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
    let set = graded_set(dim, max_degree);
    let n = rng.gen_range(1..=max_terms);
    MultiPoly::from_terms(
        dim,
        (0..n)
            .map(|_| (set[rng.gen_range(0..set.len())].clone(), scalar(rng)))
            .collect::<Vec<_>>(),
    )
}

/// `(x − x0)^γ`
pub fn shifted_monomial(x0: &[GaussianRational], gamma: &MultiIndex) -> MultiPoly {
    let dim = x0.len();
    let mut p = MultiPoly::one(dim);
    for (j, &e) in gamma.components().iter().enumerate() {
        let factor = &MultiPoly::var(dim, j) - &MultiPoly::constant(dim, x0[j].clone());
        p = &p * &factor.pow(e);
    }
    p
}

/// A polynomial whose derivatives at `x0` vanish below order `m` while some
/// derivative of order exactly `m` does not.
pub fn with_root_of_order(rng: &mut ChaCha8Rng, x0: &[GaussianRational], m: u32, extra: u32) -> MultiPoly {
    let dim = x0.len();
    let set = graded_set(dim, m + extra);
    let level: Vec<_> = set.iter().filter(|g| g.degree() == m).cloned().collect();
    let lead = &level[rng.gen_range(0..level.len())];
    let mut lead_c = scalar(rng);
    while lead_c.is_zero() {
        lead_c = scalar(rng);
    }
    let mut p = shifted_monomial(x0, lead).scale(&lead_c);
    for _ in 0..rng.gen_range(0..4) {
        let higher: Vec<_> = set.iter().filter(|g| g.degree() >= m).collect();
        let g = higher[rng.gen_range(0..higher.len())];
        if g == lead {
            continue;
        }
        p = &p + &shifted_monomial(x0, g).scale(&scalar(rng));
    }
    p
}
