use crate::error::{Error, Result};
use crate::graph::{Edge, SpannerGraph};
use crate::metric::MetricSpace;
use crate::nets::{build_nets, NetHierarchy};
use crate::par;
use crate::params::Epsilon;
use crate::weight::Weight;

/// The net-tree spanner together with the hierarchy it was built from and
/// the pairs each level contributed (before cross-level deduplication).
#[derive(Clone, Debug)]
pub struct NetTreeSpanner<W> {
    pub graph: SpannerGraph<W>,
    pub nets: NetHierarchy<W>,
    pub level_pairs: Vec<Vec<(usize, usize)>>,
}

impl<W: Weight> NetTreeSpanner<W> {
    /// Largest number of same-level pairs touching one net point, per level.
    pub fn max_level_degrees(&self) -> Vec<usize> {
        self.level_pairs
            .iter()
            .map(|pairs| {
                let mut deg = vec![0usize; self.graph.n()];
                for &(u, v) in pairs {
                    deg[u] += 1;
                    deg[v] += 1;
                }
                deg.into_iter().max().unwrap_or(0)
            })
            .collect()
    }
}

/// Connects every pair of level-`i` net points within normalized distance
/// `(4 + 32/epsilon) * 2^i`, over all levels, and returns the union with
/// true metric weights.
pub fn net_tree_spanner<M: MetricSpace + ?Sized>(
    m: &M,
    eps: Epsilon,
) -> Result<NetTreeSpanner<M::Dist>> {
    let n = m.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("net-tree spanner needs n >= 2, got {n}")));
    }
    let nets = build_nets(m);
    // dist <= (4 + 32 q/p) 2^i scale  <=>  p * dist <= (4p + 32q) 2^i scale
    let (p, q) = (eps.numer(), eps.denom());
    let factor = 4 * p + 32 * q;
    let level_pairs: Vec<Vec<(usize, usize)>> = nets
        .levels()
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let bound = nets.scale().scale(factor << i);
            par::map_range(level.len(), |a| {
                let x = level[a];
                level[a + 1..]
                    .iter()
                    .filter(|&&y| m.dist(x, y).scale(p) <= bound)
                    .map(|&y| (x.min(y), x.max(y)))
                    .collect::<Vec<_>>()
            })
            .concat()
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = level_pairs.iter().flatten().copied().collect();
    pairs.sort_unstable();
    pairs.dedup();
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge { u, v, weight: m.dist(u, v) })
        .collect();
    Ok(NetTreeSpanner {
        graph: SpannerGraph::from_sorted_unchecked(n, edges),
        nets,
        level_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hst::HstTree;
    use crate::metric::TableMetric;

    #[test]
    fn two_points_single_edge() {
        let m = TableMetric::uniform(2, 5u64);
        let s = net_tree_spanner(&m, Epsilon::new(1, 2).unwrap()).unwrap();
        assert_eq!(s.graph.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn uniform_four_is_complete() {
        let m = TableMetric::uniform(4, 1u64);
        let s = net_tree_spanner(&m, Epsilon::new(1, 1).unwrap()).unwrap();
        assert_eq!(s.graph.edge_count(), 6);
    }

    #[test]
    fn hst_d1_h2_is_complete() {
        let t = HstTree::new(1, 2).unwrap();
        let s = net_tree_spanner(&t, Epsilon::new(1, 1).unwrap()).unwrap();
        assert_eq!(s.graph.edge_count(), 6);
        s.graph.check_against(&t).unwrap();
    }

    #[test]
    fn single_point_rejected() {
        let m = TableMetric::uniform(1, 1u64);
        assert!(net_tree_spanner(&m, Epsilon::new(1, 2).unwrap()).is_err());
    }

    #[test]
    fn far_pairs_left_to_upper_levels() {
        // Points on a line at 0, 1, 1000: level 0 only joins 0-1 (threshold 36),
        // and the far point is reached through a higher level.
        let xs = [0u64, 1, 1000];
        let m = TableMetric::from_fn(3, |i, j| xs[i].abs_diff(xs[j]));
        let s = net_tree_spanner(&m, Epsilon::new(1, 1).unwrap()).unwrap();
        assert_eq!(s.level_pairs[0], vec![(0, 1)]);
        assert!(s.graph.contains(0, 2));
        assert!(!s.graph.contains(1, 2));
    }
}
