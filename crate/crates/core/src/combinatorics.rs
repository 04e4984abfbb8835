//! Multi-indices and their graded ordered sets.
//!
//! Within one total degree `K` the indices run from `(K,0,…,0)` to
//! `(0,…,0,K)`, ordered by comparing components from the last coordinate
//! backwards, smaller first. In two variables this is the familiar
//! `x³, x²y, xy², y³`; in three variables all `z`-free indices precede those
//! containing `z`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A `d`-tuple of non-negative integers.
///
/// The `Ord` impl is the graded order used everywhere in this crate: total
/// degree first, then the in-level order described in the module docs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// The unit index with a 1 in coordinate `j`.
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut c = vec![0; dim];
        c[j] = 1;
        Self(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Component-wise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self − other`, or `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.le(self) {
            return None;
        }
        Some(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α! = Π αⱼ!`
    pub fn factorial(&self) -> u128 {
        self.0.iter().map(|&a| (1..=a as u128).product::<u128>()).product()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Number of multi-indices of length `k` in `d` variables, `C(d+k−1, k)`.
pub fn count(d: usize, k: u32) -> usize {
    assert!(d >= 1, "dimension must be positive");
    binomial((d as u64) + k as u64 - 1, k as u64) as usize
}

/// Number of multi-indices of length at most `l`, `C(d+l, d)`.
pub fn cumulative_count(d: usize, l: u32) -> usize {
    assert!(d >= 1, "dimension must be positive");
    binomial(d as u64 + l as u64, d as u64) as usize
}

/// `C(α, β) = Π C(αⱼ, βⱼ)`, and 0 unless `β ≤ α`.
pub fn multi_binomial(alpha: &MultiIndex, beta: &MultiIndex) -> u64 {
    assert_eq!(alpha.dim(), beta.dim(), "multi-index dimensions differ");
    alpha
        .0
        .iter()
        .zip(&beta.0)
        .map(|(&a, &b)| binomial(a as u64, b as u64))
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    /// All indices of exactly this length.
    Level(u32),
    /// All indices of length up to this cap, level by level.
    Graded(u32),
}

#[derive(Debug, Clone)]
pub struct OrderedIndexSet {
    dim: usize,
    kind: SetKind,
    indices: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
}

fn push_level(dim: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    // Fills coordinates from the last one backwards; `prefix` holds the
    // already chosen tail in reverse.
    if dim == 1 {
        let mut c = Vec::with_capacity(prefix.len() + 1);
        c.push(k);
        c.extend(prefix.iter().rev());
        out.push(MultiIndex(c));
        return;
    }
    for last in 0..=k {
        prefix.push(last);
        push_level(dim - 1, k - last, prefix, out);
        prefix.pop();
    }
}

impl OrderedIndexSet {
    fn from_indices(dim: usize, kind: SetKind, indices: Vec<MultiIndex>) -> Self {
        let lookup = indices.iter().cloned().enumerate().map(|(p, a)| (a, p)).collect();
        Self { dim, kind, indices, lookup }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.indices.iter()
    }

    /// 0-based storage position.
    pub fn index_of(&self, alpha: &MultiIndex) -> Result<usize> {
        self.lookup.get(alpha).copied().ok_or_else(|| Error::NotInSet {
            index: alpha.to_string(),
            cap: match self.kind {
                SetKind::Level(k) | SetKind::Graded(k) => k,
            },
        })
    }

    /// 1-based position, as used in user-facing output.
    pub fn position_of(&self, alpha: &MultiIndex) -> Result<usize> {
        self.index_of(alpha).map(|p| p + 1)
    }
}

impl std::ops::Index<usize> for OrderedIndexSet {
    type Output = MultiIndex;
    fn index(&self, p: usize) -> &MultiIndex {
        &self.indices[p]
    }
}

impl<'a> IntoIterator for &'a OrderedIndexSet {
    type Item = &'a MultiIndex;
    type IntoIter = std::slice::Iter<'a, MultiIndex>;
    fn into_iter(self) -> Self::IntoIter {
        self.indices.iter()
    }
}

pub fn level_set(d: usize, k: u32) -> OrderedIndexSet {
    assert!(d >= 1, "dimension must be positive");
    let mut out = Vec::with_capacity(count(d, k));
    push_level(d, k, &mut Vec::with_capacity(d), &mut out);
    OrderedIndexSet::from_indices(d, SetKind::Level(k), out)
}

pub fn graded_set(d: usize, l: u32) -> OrderedIndexSet {
    let mut out = Vec::with_capacity(cumulative_count(d, l));
    for k in 0..=l {
        push_level(d, k, &mut Vec::with_capacity(d), &mut out);
    }
    OrderedIndexSet::from_indices(d, SetKind::Graded(l), out)
}
