//! Hierarchies of nets built greedily bottom-up.
//!
//! Distances are normalized by the metric's minimum pairwise distance (kept
//! as [`NetHierarchy::scale`]), so level `i` is a `2^i`-net of level `i - 1`
//! in units of that minimum.

use serde::{Deserialize, Serialize};

use crate::metric::{distance_range, MetricSpace};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq)]
pub struct NetHierarchy<W> {
    levels: Vec<Vec<usize>>,
    scale: W,
}

/// What a hierarchy got wrong, at which level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetViolation {
    Empty,
    /// Level 0 is not exactly `0..n`.
    BaseLevel,
    /// A point of level `level` missing from level `level - 1`.
    NotNested { level: usize, point: usize },
    /// Two level points closer than `2^level`.
    Separation { level: usize, a: usize, b: usize },
    /// A point of level `level - 1` with no level point within `2^level`.
    Uncovered { level: usize, point: usize },
}

impl<W: Weight> NetHierarchy<W> {
    /// Wraps prebuilt levels, e.g. when loading from JSON; see [`verify_net_property`].
    pub fn from_levels(levels: Vec<Vec<usize>>, scale: W) -> Self {
        NetHierarchy { levels, scale }
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.levels[i]
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// The minimum pairwise distance; normalized distance is `dist / scale`.
    pub fn scale(&self) -> W {
        self.scale
    }

    /// `2^level * scale`, the level's net radius in metric units.
    pub fn radius(&self, level: usize) -> W {
        self.scale.scale(1u64 << level)
    }

    pub fn to_json(&self) -> NetHierarchyJson {
        NetHierarchyJson { levels: self.levels.clone(), scale: self.scale.to_decimal() }
    }
}

/// `{"levels": [[indices], ...], "scale": "<min distance>"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetHierarchyJson {
    pub levels: Vec<Vec<usize>>,
    pub scale: String,
}

/// Greedy construction: each level sweeps the previous level's points in
/// ascending index order, keeping a point iff it is at least `2^i` (times the
/// scale) from every point already kept. Stops at the first single-point level.
pub fn build_nets<M: MetricSpace + ?Sized>(m: &M) -> NetHierarchy<M::Dist> {
    let n = m.len();
    let scale = distance_range(m).map_or(M::Dist::from_u64(1), |(lo, _)| lo);
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    while levels.last().unwrap().len() > 1 {
        let i = levels.len();
        let radius = scale.scale(1u64 << i);
        let mut kept: Vec<usize> = Vec::new();
        for &p in levels.last().unwrap() {
            if kept.iter().all(|&k| m.dist(p, k) >= radius) {
                kept.push(p);
            }
        }
        levels.push(kept);
    }
    NetHierarchy { levels, scale }
}

/// Checks base level, nesting, separation and covering, in that order per level.
pub fn verify_net_property<M: MetricSpace + ?Sized>(
    nh: &NetHierarchy<M::Dist>,
    m: &M,
) -> Option<NetViolation> {
    let levels = nh.levels();
    if levels.is_empty() {
        return Some(NetViolation::Empty);
    }
    if levels[0] != (0..m.len()).collect::<Vec<_>>() {
        return Some(NetViolation::BaseLevel);
    }
    for (i, level) in levels.iter().enumerate().skip(1) {
        let radius = nh.radius(i);
        let prev = &levels[i - 1];
        let mut in_prev = vec![false; m.len()];
        for &p in prev {
            in_prev[p] = true;
        }
        if let Some(&point) = level.iter().find(|&&p| p >= m.len() || !in_prev[p]) {
            return Some(NetViolation::NotNested { level: i, point });
        }
        for (a_idx, &a) in level.iter().enumerate() {
            for &b in &level[a_idx + 1..] {
                if m.dist(a, b) < radius {
                    return Some(NetViolation::Separation { level: i, a, b });
                }
            }
        }
        for &p in prev {
            if !level.iter().any(|&c| m.dist(p, c) <= radius) {
                return Some(NetViolation::Uncovered { level: i, point: p });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hst::HstTree;
    use crate::metric::{PointSet2D, TableMetric};

    #[test]
    fn single_point() {
        let nh = build_nets(&TableMetric::uniform(1, 1u64));
        assert_eq!(nh.levels(), &[vec![0]]);
    }

    #[test]
    fn uniform_four() {
        let m = TableMetric::uniform(4, 1u64);
        let nh = build_nets(&m);
        assert_eq!(nh.levels(), &[vec![0, 1, 2, 3], vec![0]]);
        assert_eq!(verify_net_property(&nh, &m), None);
    }

    #[test]
    fn hst_d1_h2() {
        let t = HstTree::new(1, 2).unwrap();
        let nh = build_nets(&t);
        assert_eq!(nh.scale(), 2);
        assert_eq!(nh.levels(), &[vec![0, 1, 2, 3], vec![0, 2], vec![0]]);
        assert_eq!(verify_net_property(&nh, &t), None);
    }

    #[test]
    fn random_points_valid_and_deterministic() {
        let p = PointSet2D::random_unit_square(200, 11);
        let nh = build_nets(&p);
        assert_eq!(verify_net_property(&nh, &p), None);
        assert_eq!(nh, build_nets(&p));
        assert_eq!(nh.levels().last().unwrap().len(), 1);
    }

    #[test]
    fn separation_witness() {
        let m = TableMetric::uniform(3, 1u64);
        let nh = NetHierarchy::from_levels(vec![vec![0, 1, 2], vec![0, 1]], 1);
        assert_eq!(
            verify_net_property(&nh, &m),
            Some(NetViolation::Separation { level: 1, a: 0, b: 1 })
        );
    }

    #[test]
    fn covering_witness() {
        // Points on a line at 0, 1, 5.
        let xs = [0u64, 1, 5];
        let m = TableMetric::from_fn(3, |i, j| xs[i].abs_diff(xs[j]));
        let valid = build_nets(&m);
        assert_eq!(valid.levels(), &[vec![0, 1, 2], vec![0, 2], vec![0, 2], vec![0]]);
        let dropped = NetHierarchy::from_levels(vec![vec![0, 1, 2], vec![0], vec![0]], 1);
        assert_eq!(
            verify_net_property(&dropped, &m),
            Some(NetViolation::Uncovered { level: 1, point: 2 })
        );
    }

    #[test]
    fn nesting_and_base_witnesses() {
        let m = TableMetric::uniform(3, 1u64);
        let nh = NetHierarchy::from_levels(vec![vec![0, 1]], 1);
        assert_eq!(verify_net_property(&nh, &m), Some(NetViolation::BaseLevel));
        let nh = NetHierarchy::from_levels(vec![vec![0, 1, 2], vec![0], vec![1]], 1);
        assert_eq!(
            verify_net_property(&nh, &m),
            Some(NetViolation::NotNested { level: 2, point: 1 })
        );
    }
}
