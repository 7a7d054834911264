//! Stretch, lightness, and the forced-edge lower-bound certificates.
//!
//! On HST-family metrics every quantity is an integer, so all certificate
//! comparisons below are exact cross-multiplications with zero tolerance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SpannerGraph;
use crate::hst::LowerBoundInstance;
use crate::metric::{mst, MetricSpace};
use crate::par;
use crate::params::{Epsilon, StretchFactor};
use crate::weight::{format_ratio, Weight};

/// Relative tolerance for stretch checks on floating-point metrics.
pub const EUCLIDEAN_TOLERANCE: f64 = 1e-9;

/// The worst pair of a graph: graph distance over metric distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stretch<W> {
    pub pair: (usize, usize),
    /// `None` when the pair is disconnected.
    pub graph_dist: Option<W>,
    pub metric_dist: W,
}

impl<W: Weight> Stretch<W> {
    pub fn ratio(&self) -> f64 {
        self.graph_dist
            .map_or(f64::INFINITY, |g| g.to_f64() / self.metric_dist.to_f64())
    }

    pub fn ratio_string(&self) -> String {
        self.graph_dist
            .map_or_else(|| "inf".to_string(), |g| W::ratio_string(g, self.metric_dist))
    }

    /// Exact on exact weights, relative [`EUCLIDEAN_TOLERANCE`] on floats.
    pub fn within(&self, t: StretchFactor) -> bool {
        self.graph_dist
            .is_some_and(|g| t.admits_with_tolerance(g, self.metric_dist, EUCLIDEAN_TOLERANCE))
    }

    fn worse_than(&self, other: &Self) -> bool {
        match (self.graph_dist, other.graph_dist) {
            (None, None) => false,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some(a), Some(c)) => a * other.metric_dist > c * self.metric_dist,
        }
    }
}

fn check_sizes<M: MetricSpace + ?Sized>(m: &M, g: &SpannerGraph<M::Dist>) -> Result<()> {
    if m.len() != g.n() {
        return Err(Error::SizeMismatch { metric: m.len(), graph: g.n() });
    }
    Ok(())
}

/// Maximum over pairs of `d_G / d_X`, from one shortest-path run per source.
/// Ties keep the lexicographically first pair.
pub fn stretch<M: MetricSpace + ?Sized>(m: &M, g: &SpannerGraph<M::Dist>) -> Result<Stretch<M::Dist>> {
    check_sizes(m, g)?;
    let n = m.len();
    if n < 2 {
        return Err(Error::InvalidParameter("stretch needs at least 2 points".into()));
    }
    let adj = g.adjacency();
    let per_source = par::map_range(n - 1, |u| {
        let dist = adj.distances_from(u);
        let mut best: Option<Stretch<M::Dist>> = None;
        for (v, &graph_dist) in dist.iter().enumerate().skip(u + 1) {
            let cand = Stretch { pair: (u, v), graph_dist, metric_dist: m.dist(u, v) };
            if best.as_ref().is_none_or(|b| cand.worse_than(b)) {
                best = Some(cand);
            }
        }
        best.expect("u < n - 1 has a partner")
    });
    Ok(per_source
        .into_iter()
        .reduce(|best, cand| if cand.worse_than(&best) { cand } else { best })
        .unwrap())
}

/// Total spanner weight and MST weight.
pub fn lightness_parts<M: MetricSpace + ?Sized>(
    m: &M,
    g: &SpannerGraph<M::Dist>,
) -> Result<(M::Dist, M::Dist)> {
    check_sizes(m, g)?;
    if m.len() < 2 {
        return Err(Error::InvalidParameter("lightness needs at least 2 points".into()));
    }
    Ok((g.total_weight(), mst(m).1))
}

pub fn lightness<M: MetricSpace + ?Sized>(m: &M, g: &SpannerGraph<M::Dist>) -> Result<f64> {
    let (w, t) = lightness_parts(m, g)?;
    Ok(w.to_f64() / t.to_f64())
}

/// Shortest `u`–`v` path length in the complete graph with edge `(u, v)`
/// removed. By the triangle inequality a single intermediate point is
/// optimal, so this is `min_w d(u,w) + d(w,v)`.
pub fn detour_distance<M: MetricSpace + ?Sized>(m: &M, u: usize, v: usize) -> Option<M::Dist> {
    (0..m.len())
        .filter(|&w| w != u && w != v)
        .map(|w| m.dist(u, w) + m.dist(w, v))
        .reduce(|a, b| if b < a { b } else { a })
}

/// Pairs that every `(1+eps)`-spanner of the instance must contain:
/// all pairs at distance strictly below `2/eps`.
pub fn forced_edges<I: LowerBoundInstance + ?Sized>(inst: &I, eps: Epsilon) -> Vec<(usize, usize)> {
    inst.forced_edges(eps)
}

fn pow_checked(base: u64, exp: u32) -> Result<i128> {
    (base as i128)
        .checked_pow(exp)
        .ok_or_else(|| Error::InvalidParameter(format!("{base}^{exp} overflows")))
}

fn mul_checked(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::InvalidParameter("certificate arithmetic overflows".into()))
}

fn frac_string(num: i128, den: i128) -> String {
    format_ratio(num_rational::Ratio::new(num, den))
}

/// `eps^-d <= block` as an exact integer comparison.
fn check_block_size(eps: Epsilon, dim: u32, block: usize) -> Result<()> {
    let qd = pow_checked(eps.denom(), dim)?;
    let pd = pow_checked(eps.numer(), dim)?;
    if qd > mul_checked(block as i128, pd)? {
        return Err(Error::InstanceTooSmall {
            required: frac_string(qd, pd),
            available: block,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeBound {
    pub forced_count: usize,
    /// `n (eps^-d - 1) / 2`, exact decimal string.
    pub formula: String,
    pub i_max: u32,
    pub d_max: u64,
    pub pass: bool,
}

/// Forced-edge count against `n (eps^-d - 1) / 2`.
pub fn size_lower_bound<I: LowerBoundInstance + ?Sized>(inst: &I, eps: Epsilon) -> Result<SizeBound> {
    let d = inst.dimension();
    check_block_size(eps, d, inst.block_points())?;
    let n = inst.len() as i128;
    let forced = inst.forced_edges(eps).len();
    let (i_max, d_max) = inst.forced_label(eps).unwrap_or((0, 0));
    let qd = pow_checked(eps.denom(), d)?;
    let pd = pow_checked(eps.numer(), d)?;
    // forced >= n (q^d - p^d) / (2 p^d)
    let rhs = mul_checked(n, qd - pd)?;
    let lhs = mul_checked(2 * pd, forced as i128)?;
    Ok(SizeBound {
        forced_count: forced,
        formula: frac_string(rhs, 2 * pd),
        i_max,
        d_max,
        pass: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightBound {
    pub forced_weight: u64,
    /// `n eps^-(d+1) / 4`.
    pub formula: String,
    /// `eps^-(d+1) / 2`, the incident forced weight guaranteed per point.
    pub per_point: String,
    pub pass: bool,
}

fn forced_weight<I: LowerBoundInstance + ?Sized>(inst: &I, eps: Epsilon) -> u64 {
    inst.forced_edges(eps).iter().map(|&(u, v)| inst.dist(u, v)).sum()
}

/// Forced-edge total weight against `n eps^-(d+1) / 4`.
pub fn weight_lower_bound<I: LowerBoundInstance + ?Sized>(inst: &I, eps: Epsilon) -> Result<WeightBound> {
    let d = inst.dimension();
    check_block_size(eps, d, inst.block_points())?;
    let n = inst.len() as i128;
    let w = forced_weight(inst, eps);
    let q = pow_checked(eps.denom(), d + 1)?;
    let p = pow_checked(eps.numer(), d + 1)?;
    let rhs = mul_checked(n, q)?;
    let lhs = mul_checked(4 * p, w as i128)?;
    Ok(WeightBound {
        forced_weight: w,
        formula: frac_string(rhs, 4 * p),
        per_point: frac_string(q, 2 * p),
        pass: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LightnessBound {
    pub forced_weight: u64,
    pub mst_weight: u64,
    /// `eps^-(d+1) / divisor`.
    pub required: String,
    pub measured: String,
    pub pass: bool,
}

/// Forced weight over MST weight against `eps^-(d+1) / divisor`, exactly.
pub fn forced_lightness_bound<I: LowerBoundInstance + ?Sized>(
    inst: &I,
    eps: Epsilon,
    divisor: u64,
) -> Result<LightnessBound> {
    let d = inst.dimension();
    let fw = forced_weight(inst, eps);
    let mw = mst(inst).1;
    let q = pow_checked(eps.denom(), d + 1)?;
    let p = pow_checked(eps.numer(), d + 1)?;
    // fw / mw >= q / (divisor p)
    let lhs = mul_checked(mul_checked(divisor as i128, p)?, fw as i128)?;
    let rhs = mul_checked(q, mw as i128)?;
    Ok(LightnessBound {
        forced_weight: fw,
        mst_weight: mw,
        required: frac_string(q, divisor as i128 * p),
        measured: frac_string(fw as i128, mw.max(1) as i128),
        pass: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub required: String,
    pub measured: String,
    pub pass: bool,
}

/// Bundled verification output for one candidate spanner.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertReport {
    pub n: usize,
    pub epsilon: String,
    pub stretch: String,
    pub stretch_witness: (usize, usize),
    pub edge_count: usize,
    pub total_weight: String,
    pub mst_weight: String,
    pub lightness: String,
    /// Whether every forced edge is present; `None` off the HST family.
    pub forced_compliance: Option<bool>,
    pub missing_forced: usize,
    pub bound_checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl CertReport {
    pub const CSV_HEADER: [&'static str; 11] = [
        "n",
        "epsilon",
        "stretch",
        "witness_u",
        "witness_v",
        "edge_count",
        "total_weight",
        "mst_weight",
        "lightness",
        "forced_compliance",
        "pass",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.epsilon.clone(),
            self.stretch.clone(),
            self.stretch_witness.0.to_string(),
            self.stretch_witness.1.to_string(),
            self.edge_count.to_string(),
            self.total_weight.clone(),
            self.mst_weight.clone(),
            self.lightness.clone(),
            self.forced_compliance.map_or(String::new(), |b| b.to_string()),
            self.pass.to_string(),
        ]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Header plus the single [`CertReport::csv_record`] row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(Self::CSV_HEADER).unwrap();
        w.write_record(self.csv_record()).unwrap();
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn finish(mut self) -> Self {
        self.pass = self.bound_checks.iter().all(|c| c.pass) && self.forced_compliance != Some(false);
        self
    }
}

/// Stretch, size, weight and lightness of `g` as a `(1+eps)`-spanner of `m`.
pub fn certify_spanner<M: MetricSpace + ?Sized>(
    m: &M,
    g: &SpannerGraph<M::Dist>,
    eps: Epsilon,
) -> Result<CertReport> {
    g.check_against(m)?;
    let s = stretch(m, g)?;
    let (total, tree) = lightness_parts(m, g)?;
    let t = eps.stretch();
    let report = CertReport {
        n: m.len(),
        epsilon: eps.to_string(),
        stretch: s.ratio_string(),
        stretch_witness: s.pair,
        edge_count: g.edge_count(),
        total_weight: total.to_decimal(),
        mst_weight: tree.to_decimal(),
        lightness: M::Dist::ratio_string(total, tree),
        forced_compliance: None,
        missing_forced: 0,
        bound_checks: vec![BoundCheck {
            name: "stretch".into(),
            required: t.to_string(),
            measured: s.ratio_string(),
            pass: s.within(t),
        }],
        notes: Vec::new(),
        pass: false,
    };
    Ok(report.finish())
}

/// [`certify_spanner`] plus forced-edge compliance and the size and weight
/// lower bounds, which every valid `(1+eps)`-spanner must meet.
pub fn certify_lower_bound_spanner<I: LowerBoundInstance + ?Sized>(
    inst: &I,
    g: &SpannerGraph<u64>,
    eps: Epsilon,
) -> Result<CertReport> {
    let mut report = certify_spanner(inst, g, eps)?;
    let forced = inst.forced_edges(eps);
    let missing = forced.iter().filter(|&&(u, v)| !g.contains(u, v)).count();
    report.forced_compliance = Some(missing == 0);
    report.missing_forced = missing;
    match (size_lower_bound(inst, eps), weight_lower_bound(inst, eps)) {
        (Ok(size), Ok(weight)) => {
            let n = inst.len() as i128;
            let d = inst.dimension();
            let (qd, pd) = (pow_checked(eps.denom(), d)?, pow_checked(eps.numer(), d)?);
            let size_ok = mul_checked(2 * pd, g.edge_count() as i128)? >= mul_checked(n, qd - pd)?;
            let (q1, p1) = (pow_checked(eps.denom(), d + 1)?, pow_checked(eps.numer(), d + 1)?);
            let weight_ok =
                mul_checked(4 * p1, g.total_weight() as i128)? >= mul_checked(n, q1)?;
            report.bound_checks.push(BoundCheck {
                name: "size_lower_bound".into(),
                required: size.formula,
                measured: g.edge_count().to_string(),
                pass: size_ok,
            });
            report.bound_checks.push(BoundCheck {
                name: "weight_lower_bound".into(),
                required: weight.formula,
                measured: g.total_weight().to_string(),
                pass: weight_ok,
            });
        }
        (Err(e), _) | (_, Err(e)) => report.notes.push(format!("lower bounds skipped: {e}")),
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hst::HstTree;
    use crate::metric::TableMetric;

    fn eps(p: u64, q: u64) -> Epsilon {
        Epsilon::new(p, q).unwrap()
    }

    fn brute_forced(t: &HstTree, e: Epsilon) -> Vec<(usize, usize)> {
        let (num, den) = e.forced_threshold();
        let n = t.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| t.dist(u, v) * den < num)
            .collect()
    }

    #[test]
    fn complete_graph_stretch_one() {
        let t = HstTree::new(1, 3).unwrap();
        let s = stretch(&t, &SpannerGraph::complete(&t)).unwrap();
        assert_eq!(s.ratio(), 1.0);
        assert_eq!(s.pair, (0, 1));
    }

    #[test]
    fn path_on_hst_has_stretch_two() {
        let t = HstTree::new(1, 2).unwrap();
        let g = SpannerGraph::from_pairs(&t, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = stretch(&t, &g).unwrap();
        assert_eq!(s, Stretch { pair: (0, 3), graph_dist: Some(8), metric_dist: 4 });
        assert_eq!(s.ratio_string(), "2");
    }

    #[test]
    fn missing_sibling_edge_costs_two() {
        let t = HstTree::new(1, 3).unwrap();
        let all: Vec<_> = SpannerGraph::complete(&t).pairs().filter(|&p| p != (0, 1)).collect();
        let g = SpannerGraph::from_pairs(&t, all).unwrap();
        let s = stretch(&t, &g).unwrap();
        assert_eq!(s.pair, (0, 1));
        assert!(s.graph_dist.unwrap() >= t.dist(0, 1) + 2);
        assert!(s.ratio() >= 2.0);
        assert_eq!(detour_distance(&t, 0, 1), s.graph_dist);
    }

    #[test]
    fn disconnected_is_infinite() {
        let m = TableMetric::uniform(3, 1u64);
        let g = SpannerGraph::from_pairs(&m, [(0, 1)]).unwrap();
        let s = stretch(&m, &g).unwrap();
        assert_eq!((s.pair, s.graph_dist), ((0, 2), None));
        assert_eq!(s.ratio(), f64::INFINITY);
        assert!(!s.within(eps(1, 1).stretch()));
    }

    #[test]
    fn stretch_rejects_size_mismatch() {
        let m = TableMetric::uniform(3, 1u64);
        let g = SpannerGraph::empty(4);
        assert!(matches!(stretch(&m, &g), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn lightness_examples() {
        let m = TableMetric::uniform(4, 1u64);
        assert_eq!(lightness(&m, &mst(&m).0).unwrap(), 1.0);
        assert_eq!(lightness(&m, &SpannerGraph::complete(&m)).unwrap(), 2.0);
        let t = HstTree::new(1, 2).unwrap();
        assert_eq!(lightness_parts(&t, &SpannerGraph::complete(&t)).unwrap(), (20, 8));
        assert_eq!(lightness(&t, &SpannerGraph::complete(&t)).unwrap(), 2.5);
    }

    #[test]
    fn forced_edge_examples() {
        let t = HstTree::new(1, 4).unwrap();
        assert_eq!(forced_edges(&t, eps(1, 4)), brute_forced(&t, eps(1, 4)));
        assert_eq!(forced_edges(&t, eps(1, 4)).len(), 24);
        let t = HstTree::new(2, 2).unwrap();
        let f = forced_edges(&t, eps(1, 2));
        assert_eq!(f.len(), 24);
        assert!(f.iter().all(|&(u, v)| t.dist(u, v) == 2));
        assert_eq!(f, brute_forced(&t, eps(1, 2)));
        let near_one = forced_edges(&t, eps(999, 1000));
        assert!(near_one.iter().all(|&(u, v)| t.dist(u, v) == 2));
    }

    #[test]
    fn size_bound_examples() {
        let b = size_lower_bound(&HstTree::new(1, 4).unwrap(), eps(1, 4)).unwrap();
        assert_eq!((b.forced_count, b.formula.as_str(), b.pass), (24, "24", true));
        assert_eq!((b.i_max, b.d_max), (2, 4));
        let b = size_lower_bound(&HstTree::new(2, 2).unwrap(), eps(1, 2)).unwrap();
        assert_eq!((b.forced_count, b.formula.as_str(), b.pass), (24, "24", true));
        let b = size_lower_bound(&HstTree::new(2, 2).unwrap(), eps(99, 100)).unwrap();
        assert!(b.pass);
    }

    #[test]
    fn size_bound_requires_large_instance() {
        let r = size_lower_bound(&HstTree::new(2, 1).unwrap(), eps(1, 4));
        assert!(matches!(r, Err(Error::InstanceTooSmall { available: 4, .. })));
    }

    #[test]
    fn weight_bound_examples() {
        let b = weight_lower_bound(&HstTree::new(1, 4).unwrap(), eps(1, 4)).unwrap();
        assert_eq!((b.forced_weight, b.formula.as_str(), b.pass), (80, "64", true));
        assert_eq!(b.per_point, "8");
        let b = weight_lower_bound(&HstTree::new(2, 2).unwrap(), eps(1, 2)).unwrap();
        assert_eq!((b.forced_weight, b.formula.as_str(), b.pass), (48, "32", true));
        for (d, h) in [(1, 3), (2, 2), (3, 1)] {
            let t = HstTree::new(d, h).unwrap();
            let b = weight_lower_bound(&t, eps(9, 10)).unwrap();
            assert!(b.pass, "d={d} h={h}");
        }
    }

    #[test]
    fn certify_examples() {
        let t = HstTree::new(1, 2).unwrap();
        let (tree, _) = mst(&t);
        let r = certify_lower_bound_spanner(&t, &tree, eps(1, 2)).unwrap();
        assert_eq!(r.stretch, "2");
        assert!(!r.pass);

        let r = certify_lower_bound_spanner(&t, &SpannerGraph::complete(&t), eps(1, 2)).unwrap();
        assert_eq!(r.stretch, "1");
        assert_eq!(r.forced_compliance, Some(true));
        assert!(r.pass, "{r:?}");
        assert_eq!(r.bound_checks.len(), 3);
    }

    #[test]
    fn certify_skips_bounds_on_small_instances() {
        let t = HstTree::new(1, 1).unwrap();
        let r = certify_lower_bound_spanner(&t, &SpannerGraph::complete(&t), eps(1, 4)).unwrap();
        assert_eq!(r.bound_checks.len(), 1);
        assert_eq!(r.notes.len(), 1);
        assert!(r.pass);
    }
}
