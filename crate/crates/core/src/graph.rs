//! Weighted undirected spanner graphs and single-source shortest paths.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

/// Undirected graph over metric indices `0..n`. Edges are kept sorted by
/// `(u, v)` with `u < v`; every weight is the metric distance of its endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct SpannerGraph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
}

impl<W: Weight> SpannerGraph<W> {
    pub fn empty(n: usize) -> Self {
        SpannerGraph { n, edges: Vec::new() }
    }

    /// Builds a graph from index pairs, weighting each with the metric.
    /// Pairs are normalized to `u < v` and deduplicated.
    pub fn from_pairs<M>(m: &M, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self>
    where
        M: MetricSpace<Dist = W> + ?Sized,
    {
        let n = m.len();
        let mut norm = Vec::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at {a}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        let edges = norm
            .into_iter()
            .map(|(u, v)| Edge { u, v, weight: m.dist(u, v) })
            .collect();
        Ok(SpannerGraph { n, edges })
    }

    pub fn complete<M>(m: &M) -> Self
    where
        M: MetricSpace<Dist = W> + ?Sized,
    {
        let n = m.len();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| Edge { u, v, weight: m.dist(u, v) })
            .collect();
        SpannerGraph { n, edges }
    }

    /// Uses the given edges as-is after sorting; callers guarantee `u < v`,
    /// distinct pairs and metric weights.
    pub(crate) fn from_sorted_unchecked(n: usize, mut edges: Vec<Edge<W>>) -> Self {
        edges.sort_unstable_by_key(|e| (e.u, e.v));
        SpannerGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> W {
        self.edges.iter().fold(W::zero(), |acc, e| acc + e.weight)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .is_ok()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|e| (e.u, e.v))
    }

    /// Checks the structural invariants against a metric: matching size, no
    /// self-loops or duplicates, and weights equal to metric distances
    /// (exact, or within `1e-12` relative on floating metrics).
    pub fn check_against<M>(&self, m: &M) -> Result<()>
    where
        M: MetricSpace<Dist = W> + ?Sized,
    {
        if m.len() != self.n {
            return Err(Error::SizeMismatch { metric: m.len(), graph: self.n });
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= e.v || e.v >= self.n {
                return Err(Error::InvalidParameter(format!("malformed edge ({}, {})", e.u, e.v)));
            }
            if i > 0 && (self.edges[i - 1].u, self.edges[i - 1].v) >= (e.u, e.v) {
                return Err(Error::InvalidParameter(format!("duplicate or unsorted edge ({}, {})", e.u, e.v)));
            }
            let expected = m.dist(e.u, e.v);
            if !weights_match(e.weight, expected) {
                return Err(Error::WeightMismatch {
                    u: e.u,
                    v: e.v,
                    found: e.weight.to_decimal(),
                    expected: expected.to_decimal(),
                });
            }
        }
        Ok(())
    }

    pub fn adjacency(&self) -> Adjacency<W> {
        let mut degree = vec![0usize; self.n + 1];
        for e in &self.edges {
            degree[e.u + 1] += 1;
            degree[e.v + 1] += 1;
        }
        for i in 0..self.n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree.clone();
        let mut fill = degree;
        let mut targets = vec![(0usize, W::zero()); 2 * self.edges.len()];
        for e in &self.edges {
            targets[fill[e.u]] = (e.v, e.weight);
            fill[e.u] += 1;
            targets[fill[e.v]] = (e.u, e.weight);
            fill[e.v] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }
}

pub(crate) fn weights_match<W: Weight>(found: W, expected: W) -> bool {
    if W::EXACT {
        found == expected
    } else {
        let (a, b) = (found.to_f64(), expected.to_f64());
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
    }
}

/// Compressed adjacency lists.
#[derive(Clone, Debug)]
pub struct Adjacency<W> {
    offsets: Vec<usize>,
    targets: Vec<(usize, W)>,
}

impl<W: Weight> Adjacency<W> {
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, W)] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// All shortest-path distances from `src`; `None` marks unreachable nodes.
    pub fn distances_from(&self, src: usize) -> Vec<Option<W>> {
        dijkstra(self.n(), src, |u| self.neighbors(u), |_| true)
    }
}

struct HeapEntry<W>(W, usize);

impl<W: Weight> PartialEq for HeapEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<W: Weight> Eq for HeapEntry<W> {}
impl<W: Weight> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<W: Weight> Ord for HeapEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Dijkstra from `src`. Nodes whose tentative distance fails `within` are
/// never settled, which bounds the search for greedy stretch queries.
pub(crate) fn dijkstra<'a, W, N, C>(n: usize, src: usize, neighbors: N, within: C) -> Vec<Option<W>>
where
    W: Weight,
    N: Fn(usize) -> &'a [(usize, W)],
    C: Fn(W) -> bool,
{
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = Some(W::zero());
    heap.push(Reverse(HeapEntry(W::zero(), src)));
    while let Some(Reverse(HeapEntry(d, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for &(v, w) in neighbors(u) {
            if settled[v] {
                continue;
            }
            let cand = d + w;
            if !within(cand) {
                continue;
            }
            if dist[v].is_none_or(|cur| cand < cur) {
                dist[v] = Some(cand);
                heap.push(Reverse(HeapEntry(cand, v)));
            }
        }
    }
    dist
}
