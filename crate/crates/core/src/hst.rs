//! The 2-HST lower-bound family and its line-of-copies variant.
//!
//! [`HstTree`] is the perfect `2^d`-ary tree of height `h` whose internal
//! nodes at height `i` carry label `2^i`. Points are the leaves in
//! left-to-right order, so point `u` written in base `2^d` spells its
//! root-to-leaf path, and the distance between two points is the label of
//! their lowest common ancestor.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::params::Epsilon;

/// Largest `d * h` accepted, keeping `n = 2^(d h)` and every label in range.
pub const MAX_LOG2_POINTS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HstTree {
    dim: u32,
    height: u32,
}

impl HstTree {
    pub fn new(dim: u32, height: u32) -> Result<Self> {
        if dim == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "hst needs d >= 1 and h >= 1, got d = {dim}, h = {height}"
            )));
        }
        if dim.checked_mul(height).is_none_or(|bits| bits > MAX_LOG2_POINTS) {
            return Err(Error::InvalidParameter(format!(
                "hst with d = {dim}, h = {height} exceeds 2^{MAX_LOG2_POINTS} points"
            )));
        }
        Ok(HstTree { dim, height })
    }

    /// Largest height with `2^(d h) <= n`, if any.
    pub fn height_for_points(dim: u32, n: usize) -> Option<u32> {
        if dim == 0 || n < 2 {
            return None;
        }
        let h = (usize::BITS - 1 - n.leading_zeros()) / dim;
        (h >= 1).then_some(h)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn branching(&self) -> usize {
        1 << self.dim
    }

    pub fn n(&self) -> usize {
        1 << (self.dim * self.height)
    }

    /// Label of a node at height `i`: `0` for leaves, `2^i` otherwise.
    pub fn label(&self, i: u32) -> u64 {
        if i == 0 {
            0
        } else {
            1 << i
        }
    }

    /// Height of the lowest common ancestor of two leaves.
    pub fn lca_height(&self, u: usize, v: usize) -> u32 {
        let diff = u ^ v;
        if diff == 0 {
            0
        } else {
            (usize::BITS - 1 - diff.leading_zeros()) / self.dim + 1
        }
    }

    pub fn hst_distance(&self, u: usize, v: usize) -> Result<u64> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        Ok(self.label(self.lca_height(u, v)))
    }

    /// Points below the height-`i` ancestor of `u`.
    pub fn subtree(&self, u: usize, i: u32) -> Range<usize> {
        let shift = self.dim * i.min(self.height);
        let start = (u >> shift) << shift;
        start..start + (1 << shift)
    }

    /// Sum of distances between consecutive points in left-to-right order.
    pub fn hamiltonian_path_weight(&self) -> u64 {
        (1..self.n()).map(|u| self.dist(u - 1, u)).sum()
    }

    /// `(2^d - 1) * 2^h * sum_{i<h} (2^(d-1))^i`.
    pub fn hamiltonian_path_weight_closed_form(&self) -> u64 {
        let geometric: u64 = (0..self.height).map(|i| 1u64 << ((self.dim - 1) * i)).sum();
        ((1u64 << self.dim) - 1) * (1u64 << self.height) * geometric
    }

    /// Multiset of edge weights along the left-to-right Hamiltonian path.
    pub fn edge_weight_census(&self) -> BTreeMap<u64, u64> {
        let mut census = BTreeMap::new();
        for u in 1..self.n() {
            *census.entry(self.dist(u - 1, u)).or_insert(0) += 1;
        }
        census
    }

    /// Centers of at most `2^d` balls of radius `r/2` covering `B(u, r)`.
    /// Below `r = 2` the ball is `{u}`; otherwise with `2^i <= r < 2^(i+1)`
    /// the ball is the height-`i` subtree of `u` and each child subtree gets
    /// its leftmost leaf as a center.
    pub fn doubling_cover_witness(&self, u: usize, r: f64) -> Result<Vec<(usize, f64)>> {
        if u >= self.n() {
            return Err(Error::IndexOutOfRange { index: u, n: self.n() });
        }
        if r.is_nan() || r <= 0.0 || r.is_infinite() {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
        }
        if r < 2.0 {
            return Ok(vec![(u, r / 2.0)]);
        }
        let i = (r.log2().floor() as u32).min(self.height);
        let block = self.subtree(u, i);
        let child = 1usize << (self.dim * (i - 1));
        Ok(block.step_by(child).map(|c| (c, r / 2.0)).collect())
    }

    /// Largest forced label: the height `i_max` and label `D_max = 2^i_max`
    /// of the tallest nodes with `D_max < 2/epsilon`. `None` if no internal
    /// label qualifies.
    pub fn forced_label(&self, eps: Epsilon) -> Option<(u32, u64)> {
        let (num, den) = eps.forced_threshold();
        (1..=self.height)
            .take_while(|&i| (1u64 << i) * den < num)
            .last()
            .map(|i| (i, 1u64 << i))
    }

    /// All pairs at distance `< 2/epsilon`, i.e. every pair inside a
    /// height-`i_max` subtree, enumerated block by block.
    pub fn forced_edges(&self, eps: Epsilon) -> Vec<(usize, usize)> {
        let Some((i_max, _)) = self.forced_label(eps) else {
            return Vec::new();
        };
        let block = 1usize << (self.dim * i_max);
        let mut pairs = Vec::with_capacity(self.n() / block * block * (block - 1) / 2);
        for start in (0..self.n()).step_by(block) {
            for u in start..start + block {
                for v in u + 1..start + block {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }
}

impl MetricSpace for HstTree {
    type Dist = u64;
    fn len(&self) -> usize {
        self.n()
    }
    fn dist(&self, u: usize, v: usize) -> u64 {
        self.label(self.lca_height(u, v))
    }
}

/// `n_total / n_prime` copies of the `d = 1` HST on `n_prime` points placed on
/// a line; points in copies `j` and `k` are `2 * n_prime * |j - k|` apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineOfCopies {
    epsilon: Epsilon,
    n_total: usize,
    copy: HstTree,
}

impl LineOfCopies {
    /// Per-copy size: the smallest power of two at least `2/epsilon`.
    pub fn n_prime_for(eps: Epsilon) -> usize {
        let (num, den) = eps.forced_threshold();
        (num.div_ceil(den) as usize).next_power_of_two()
    }

    pub fn new(epsilon: Epsilon, n_total: usize) -> Result<Self> {
        if epsilon.is_one() {
            return Err(Error::InvalidParameter("line of copies needs epsilon in (0, 1)".into()));
        }
        let n_prime = Self::n_prime_for(epsilon);
        if n_total == 0 || !n_total.is_multiple_of(n_prime) {
            return Err(Error::InvalidParameter(format!(
                "n_total = {n_total} must be a positive multiple of n_prime = {n_prime}"
            )));
        }
        let copy = HstTree::new(1, n_prime.trailing_zeros())?;
        Ok(LineOfCopies { epsilon, n_total, copy })
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn n_prime(&self) -> usize {
        self.copy.n()
    }

    pub fn copies(&self) -> usize {
        self.n_total / self.n_prime()
    }

    pub fn copy_tree(&self) -> &HstTree {
        &self.copy
    }

    pub fn copy_of(&self, u: usize) -> usize {
        u / self.n_prime()
    }

    pub fn gap(&self) -> u64 {
        2 * self.n_prime() as u64
    }

    /// Forced pairs of every copy; cross-copy distances are at least
    /// `2 n_prime >= 2/epsilon`, so none of them are forced.
    pub fn forced_edges(&self, eps: Epsilon) -> Vec<(usize, usize)> {
        let local = self.copy.forced_edges(eps);
        let np = self.n_prime();
        (0..self.copies())
            .flat_map(|c| local.iter().map(move |&(u, v)| (u + c * np, v + c * np)))
            .collect()
    }
}

impl MetricSpace for LineOfCopies {
    type Dist = u64;
    fn len(&self) -> usize {
        self.n_total
    }
    fn dist(&self, u: usize, v: usize) -> u64 {
        let np = self.n_prime();
        let (cu, cv) = (u / np, v / np);
        if cu == cv {
            self.copy.dist(u % np, v % np)
        } else {
            self.gap() * cu.abs_diff(cv) as u64
        }
    }
}

/// Metrics on which the forced-edge lower bounds apply: a single HST, or
/// isolated HST copies.
pub trait LowerBoundInstance: MetricSpace<Dist = u64> {
    fn dimension(&self) -> u32;

    /// Points in one HST block; the `epsilon^-d <= n` precondition uses this.
    fn block_points(&self) -> usize;

    fn forced_label(&self, eps: Epsilon) -> Option<(u32, u64)>;

    fn forced_edges(&self, eps: Epsilon) -> Vec<(usize, usize)>;
}

impl LowerBoundInstance for HstTree {
    fn dimension(&self) -> u32 {
        self.dim
    }
    fn block_points(&self) -> usize {
        self.n()
    }
    fn forced_label(&self, eps: Epsilon) -> Option<(u32, u64)> {
        HstTree::forced_label(self, eps)
    }
    fn forced_edges(&self, eps: Epsilon) -> Vec<(usize, usize)> {
        HstTree::forced_edges(self, eps)
    }
}

impl LowerBoundInstance for LineOfCopies {
    fn dimension(&self) -> u32 {
        1
    }
    fn block_points(&self) -> usize {
        self.n_prime()
    }
    fn forced_label(&self, eps: Epsilon) -> Option<(u32, u64)> {
        self.copy.forced_label(eps)
    }
    fn forced_edges(&self, eps: Epsilon) -> Vec<(usize, usize)> {
        LineOfCopies::forced_edges(self, eps)
    }
}
