use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::graph::SpannerGraph;
use crate::metric::{MetricSpace, PointSet2D};
use crate::par;
use crate::params::Epsilon;

/// `k` cones around a point; cone `j` covers angles `[2πj/k, 2π(j+1)/k)`
/// measured counterclockwise from the positive x-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConePartition2D {
    k: usize,
}

impl ConePartition2D {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!("cone count must be >= 3, got {k}")));
        }
        Ok(ConePartition2D { k })
    }

    /// `ceil(6π / epsilon)` cones, the default for a `(1 + epsilon)` target.
    pub fn for_epsilon(eps: Epsilon) -> Self {
        let k = (6.0 * std::f64::consts::PI * eps.denom() as f64 / eps.numer() as f64).ceil();
        ConePartition2D { k: k as usize }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn theta(&self) -> f64 {
        TAU / self.k as f64
    }

    /// Cone containing the nonzero direction `(dx, dy)`.
    pub fn cone_of(&self, dx: f64, dy: f64) -> usize {
        let angle = dy.atan2(dx).rem_euclid(TAU);
        ((angle * self.k as f64 / TAU) as usize).min(self.k - 1)
    }

    /// Unit vector along cone `j`'s angular bisector.
    pub fn bisector(&self, j: usize) -> [f64; 2] {
        let phi = TAU * (j as f64 + 0.5) / self.k as f64;
        [phi.cos(), phi.sin()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ConeRule {
    Nearest,
    ShortestProjection,
}

/// Per-cone choice of point `a`, in cone order; ties keep the smaller index.
fn select(p: &PointSet2D, cones: &ConePartition2D, rule: ConeRule, a: usize) -> Vec<Option<usize>> {
    let origin = p.point(a);
    let mut best: Vec<Option<(f64, usize)>> = vec![None; cones.k()];
    for b in 0..p.len() {
        if b == a {
            continue;
        }
        let q = p.point(b);
        let delta = [q[0] - origin[0], q[1] - origin[1]];
        let j = cones.cone_of(delta[0], delta[1]);
        let score = match rule {
            ConeRule::Nearest => delta[0].hypot(delta[1]),
            ConeRule::ShortestProjection => {
                let axis = cones.bisector(j);
                delta[0] * axis[0] + delta[1] * axis[1]
            }
        };
        if best[j].is_none_or(|(s, _)| score < s) {
            best[j] = Some((score, b));
        }
    }
    best.into_iter().map(|o| o.map(|(_, b)| b)).collect()
}

fn cone_graph(p: &PointSet2D, k: usize, rule: ConeRule) -> Result<SpannerGraph<f64>> {
    let cones = ConePartition2D::new(k)?;
    // Re-validates distinctness for point sets assembled elsewhere.
    PointSet2D::new(p.points().to_vec())?;
    let picks = par::map_range(p.len(), |a| {
        select(p, &cones, rule, a)
            .into_iter()
            .flatten()
            .map(|b| (a, b))
            .collect::<Vec<_>>()
    });
    SpannerGraph::from_pairs(p, picks.into_iter().flatten())
}

/// For each point and each nonempty cone, an edge to the nearest point in
/// that cone; ties go to the smaller index.
pub fn yao_graph(p: &PointSet2D, k: usize) -> Result<SpannerGraph<f64>> {
    cone_graph(p, k, ConeRule::Nearest)
}

/// Like [`yao_graph`], but "nearest" is the shortest orthogonal projection
/// onto the cone's bisector ray.
pub fn theta_graph(p: &PointSet2D, k: usize) -> Result<SpannerGraph<f64>> {
    cone_graph(p, k, ConeRule::ShortestProjection)
}
