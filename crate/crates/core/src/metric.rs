//! Finite metric spaces, minimum spanning trees, and metric-property checks.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Edge, SpannerGraph};
use crate::par;
use crate::rng::XorShift64Star;
use crate::weight::Weight;

/// Default cap on `n` for the cubic exhaustive checkers.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 1024;

/// A finite metric on indices `0..len()`, exposed as a distance oracle.
pub trait MetricSpace: Sync {
    type Dist: Weight;

    fn len(&self) -> usize;

    fn dist(&self, i: usize, j: usize) -> Self::Dist;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<M: MetricSpace + ?Sized> MetricSpace for &M {
    type Dist = M::Dist;
    fn len(&self) -> usize {
        (**self).len()
    }
    fn dist(&self, i: usize, j: usize) -> Self::Dist {
        (**self).dist(i, j)
    }
}

/// Outcome of a one-sided check: pass, or the first witness found.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<T> {
    Pass,
    Witness(T),
}

impl<T> Verdict<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            Verdict::Pass => None,
            Verdict::Witness(w) => Some(w),
        }
    }

    fn from_option(o: Option<T>) -> Self {
        o.map_or(Verdict::Pass, Verdict::Witness)
    }
}

/// Points in the plane under Euclidean distance.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet2D {
    points: Vec<[f64; 2]>,
}

impl PointSet2D {
    /// Rejects non-finite coordinates and repeated points.
    pub fn new(points: Vec<[f64; 2]>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::NonFiniteCoordinate(i));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            let (p, q) = (points[a], points[b]);
            p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])).then(a.cmp(&b))
        });
        for w in order.windows(2) {
            let (p, q) = (points[w[0]], points[w[1]]);
            if p[0] == q[0] && p[1] == q[1] {
                return Err(Error::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        Ok(PointSet2D { points })
    }

    /// `n` points drawn uniformly from the unit square, `x` then `y` per point,
    /// with the generator documented in [`crate::rng`]. Repeats are redrawn.
    pub fn random_unit_square(n: usize, seed: u64) -> Self {
        let mut rng = XorShift64Star::new(seed);
        let mut seen = std::collections::HashSet::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        while points.len() < n {
            let p = [rng.next_unit(), rng.next_unit()];
            if seen.insert((p[0].to_bits(), p[1].to_bits())) {
                points.push(p);
            }
        }
        PointSet2D { points }
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn point(&self, i: usize) -> [f64; 2] {
        self.points[i]
    }
}

impl MetricSpace for PointSet2D {
    type Dist = f64;
    fn len(&self) -> usize {
        self.points.len()
    }
    fn dist(&self, i: usize, j: usize) -> f64 {
        let (p, q) = (self.points[i], self.points[j]);
        (p[0] - q[0]).hypot(p[1] - q[1])
    }
}

/// A metric given by its full distance table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableMetric<W> {
    n: usize,
    table: Vec<W>,
}

impl<W: Weight> TableMetric<W> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> W) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(f(i, j));
            }
        }
        TableMetric { n, table }
    }

    /// Row-major strict upper triangle: `(0,1), (0,2), …, (0,n-1), (1,2), …`.
    pub fn from_upper_triangle(n: usize, upper: &[W]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::Parse(format!(
                "table for n = {n} needs {expected} distances, got {}",
                upper.len()
            )));
        }
        let mut table = vec![W::zero(); n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let d = *it.next().unwrap();
                table[i * n + j] = d;
                table[j * n + i] = d;
            }
        }
        Ok(TableMetric { n, table })
    }

    /// Every pair at the same distance.
    pub fn uniform(n: usize, d: W) -> Self {
        Self::from_fn(n, |i, j| if i == j { W::zero() } else { d })
    }

    /// Materializes any metric.
    pub fn from_metric<M: MetricSpace<Dist = W> + ?Sized>(m: &M) -> Self {
        Self::from_fn(m.len(), |i, j| m.dist(i, j))
    }

    pub fn upper_triangle(&self) -> Vec<W> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.table[i * n + j])
            .collect()
    }
}

impl<W: Weight> MetricSpace for TableMetric<W> {
    type Dist = W;
    fn len(&self) -> usize {
        self.n
    }
    fn dist(&self, i: usize, j: usize) -> W {
        self.table[i * self.n + j]
    }
}

/// Smallest and largest distance over distinct pairs.
pub fn distance_range<M: MetricSpace + ?Sized>(m: &M) -> Option<(M::Dist, M::Dist)> {
    let n = m.len();
    let rows = par::map_range(n, |i| {
        (i + 1..n).map(|j| m.dist(i, j)).fold(None, |acc: Option<(M::Dist, M::Dist)>, d| {
            Some(match acc {
                None => (d, d),
                Some((lo, hi)) => (
                    if d < lo { d } else { lo },
                    if d > hi { d } else { hi },
                ),
            })
        })
    });
    rows.into_iter().flatten().reduce(|(a, b), (c, d)| {
        (if c < a { c } else { a }, if d > b { d } else { b })
    })
}

/// Largest over smallest pairwise distance.
pub fn aspect_ratio<M: MetricSpace + ?Sized>(m: &M) -> Result<f64> {
    if m.len() < 2 {
        return Err(Error::UndefinedAspectRatio(m.len()));
    }
    let (lo, hi) = distance_range(m).expect("n >= 2");
    Ok(hi.to_f64() / lo.to_f64())
}

/// Sorted distinct pairwise distances.
pub fn distinct_distances<M: MetricSpace + ?Sized>(m: &M) -> Vec<M::Dist> {
    let n = m.len();
    let mut all: Vec<M::Dist> = par::map_range(n, |i| {
        let mut row: Vec<M::Dist> = (i + 1..n).map(|j| m.dist(i, j)).collect();
        row.sort_by(Weight::total_cmp);
        row.dedup();
        row
    })
    .into_iter()
    .flatten()
    .collect();
    all.sort_by(Weight::total_cmp);
    all.dedup();
    all
}

fn edge_key_cmp<W: Weight>(a: &(W, usize, usize), b: &(W, usize, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2)))
}

/// Minimum spanning tree of the complete metric graph by dense Prim.
/// Ties go to the lexicographically smallest `(min endpoint, max endpoint)`.
pub fn mst<M: MetricSpace + ?Sized>(m: &M) -> (SpannerGraph<M::Dist>, M::Dist) {
    let n = m.len();
    if n <= 1 {
        return (SpannerGraph::empty(n), M::Dist::zero());
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<(M::Dist, usize, usize)>> = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut total = M::Dist::zero();
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let cand = (m.dist(current, v), current.min(v), current.max(v));
            if best[v].is_none_or(|b| edge_key_cmp(&cand, &b) == Ordering::Less) {
                best[v] = Some(cand);
            }
        }
        let next = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| edge_key_cmp(&best[a].unwrap(), &best[b].unwrap()))
            .expect("tree not yet spanning");
        let (w, a, b) = best[next].unwrap();
        edges.push(Edge { u: a, v: b, weight: w });
        total = total + w;
        in_tree[next] = true;
        current = next;
    }
    (SpannerGraph::from_sorted_unchecked(n, edges), total)
}

/// Which metric axiom a witness violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    NonzeroSelfDistance(usize),
    Asymmetric(usize, usize),
    NonPositive(usize, usize),
    /// `dist(i,k) > dist(i,j) + dist(j,k)` for the triple `(i, j, k)`.
    Triangle(usize, usize, usize),
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::AboveExhaustiveLimit { n, limit })
    } else {
        Ok(())
    }
}

fn pair_axioms<M: MetricSpace + ?Sized>(m: &M, i: usize) -> Option<AxiomViolation> {
    if m.dist(i, i) != M::Dist::zero() {
        return Some(AxiomViolation::NonzeroSelfDistance(i));
    }
    for j in 0..m.len() {
        if j == i {
            continue;
        }
        if m.dist(i, j) != m.dist(j, i) {
            return Some(AxiomViolation::Asymmetric(i.min(j), i.max(j)));
        }
        if !m.dist(i, j).is_positive() {
            return Some(AxiomViolation::NonPositive(i.min(j), i.max(j)));
        }
    }
    None
}

fn triangle_holds<M: MetricSpace + ?Sized>(m: &M, i: usize, j: usize, k: usize) -> bool {
    m.dist(i, k).approx_le(m.dist(i, j) + m.dist(j, k))
}

/// Exhaustive check of identity, symmetry, positivity, then the triangle
/// inequality over all ordered triples, reporting the first violation.
pub fn verify_metric_axioms<M: MetricSpace + ?Sized>(m: &M) -> Result<Verdict<AxiomViolation>> {
    verify_metric_axioms_with_limit(m, DEFAULT_EXHAUSTIVE_LIMIT)
}

pub fn verify_metric_axioms_with_limit<M: MetricSpace + ?Sized>(
    m: &M,
    limit: usize,
) -> Result<Verdict<AxiomViolation>> {
    let n = m.len();
    check_limit(n, limit)?;
    if let Some(v) = par::find_first(n, |i| pair_axioms(m, i)) {
        return Ok(Verdict::Witness(v));
    }
    let found = par::find_first(n, |i| {
        for j in 0..n {
            for k in 0..n {
                if !triangle_holds(m, i, j, k) {
                    return Some(AxiomViolation::Triangle(i, j, k));
                }
            }
        }
        None
    });
    Ok(Verdict::from_option(found))
}

/// Sampled variant for metrics above the exhaustive limit: checks the pair
/// axioms on `samples` random pairs and the triangle inequality on `samples`
/// random triples.
pub fn verify_metric_axioms_sampled<M: MetricSpace + ?Sized>(
    m: &M,
    samples: usize,
    seed: u64,
) -> Verdict<AxiomViolation> {
    let n = m.len();
    if n == 0 {
        return Verdict::Pass;
    }
    let mut rng = XorShift64Star::new(seed);
    let mut pick = || (rng.next_u64() % n as u64) as usize;
    for _ in 0..samples {
        let (i, j, k) = (pick(), pick(), pick());
        if m.dist(i, i) != M::Dist::zero() {
            return Verdict::Witness(AxiomViolation::NonzeroSelfDistance(i));
        }
        if i != j {
            if m.dist(i, j) != m.dist(j, i) {
                return Verdict::Witness(AxiomViolation::Asymmetric(i.min(j), i.max(j)));
            }
            if !m.dist(i, j).is_positive() {
                return Verdict::Witness(AxiomViolation::NonPositive(i.min(j), i.max(j)));
            }
        }
        if !triangle_holds(m, i, j, k) {
            return Verdict::Witness(AxiomViolation::Triangle(i, j, k));
        }
    }
    Verdict::Pass
}

/// Strong triangle inequality `dist(i,k) <= max(dist(i,j), dist(j,k))` over
/// all ordered triples; the witness is the first failing `(i, j, k)`.
pub fn verify_ultrametric<M: MetricSpace + ?Sized>(m: &M) -> Result<Verdict<(usize, usize, usize)>> {
    let n = m.len();
    check_limit(n, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let found = par::find_first(n, |i| {
        for j in 0..n {
            let dij = m.dist(i, j);
            for k in 0..n {
                let djk = m.dist(j, k);
                let bound = if dij > djk { dij } else { djk };
                if !m.dist(i, k).approx_le(bound) {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    Ok(Verdict::from_option(found))
}

/// A ball `B(center, radius)` together with a packing separation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PackingBall<W> {
    pub center: usize,
    pub radius: W,
    pub separation: W,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BallSample<W> {
    Explicit(Vec<PackingBall<W>>),
    /// Every center, with radius and separation drawn from the distinct
    /// distances subject to `separation <= radius`.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingViolation<W> {
    pub ball: PackingBall<W>,
    pub count: usize,
}

/// Greedy maximal `separation`-separated subset of the closed ball, taking
/// points in index order.
pub fn greedy_packing<M: MetricSpace + ?Sized>(m: &M, ball: &PackingBall<M::Dist>) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for x in 0..m.len() {
        if m.dist(ball.center, x) > ball.radius {
            continue;
        }
        if kept.iter().all(|&k| m.dist(k, x) >= ball.separation) {
            kept.push(x);
        }
    }
    kept
}

fn packing_bound_holds<W: Weight>(count: usize, ball: &PackingBall<W>, dim: u32) -> bool {
    // count * r^d <= (4R)^d
    let mut lhs = W::from_u64(count as u64);
    let mut rhs = W::from_u64(1);
    for _ in 0..dim {
        lhs = lhs * ball.separation;
        rhs = rhs * ball.radius.scale(4);
    }
    lhs.approx_le(rhs)
}

/// Checks sampled balls against the packing bound `(4R/r)^d`. Greedy packings
/// only bound the maximum packing from below, so a pass is evidence rather
/// than proof; a witness is a genuine violation.
pub fn packing_check<M: MetricSpace + ?Sized>(
    m: &M,
    dim: u32,
    sample: &BallSample<M::Dist>,
) -> Result<Verdict<PackingViolation<M::Dist>>> {
    if dim == 0 {
        return Err(Error::InvalidParameter("claimed dimension must be >= 1".into()));
    }
    let balls: Vec<PackingBall<M::Dist>> = match sample {
        BallSample::Explicit(balls) => {
            for b in balls {
                if !b.radius.is_positive() || !b.separation.is_positive() {
                    return Err(Error::NonPositiveRadius {
                        big: b.radius.to_decimal(),
                        small: b.separation.to_decimal(),
                    });
                }
                if b.center >= m.len() {
                    return Err(Error::IndexOutOfRange { index: b.center, n: m.len() });
                }
            }
            balls.clone()
        }
        BallSample::Exhaustive => {
            let radii = distinct_distances(m);
            let mut balls = Vec::new();
            for center in 0..m.len() {
                for (a, &radius) in radii.iter().enumerate() {
                    for &separation in &radii[..=a] {
                        balls.push(PackingBall { center, radius, separation });
                    }
                }
            }
            balls
        }
    };
    let found = par::find_first(balls.len(), |idx| {
        let ball = balls[idx];
        let count = greedy_packing(m, &ball).len();
        (count > 1 && !packing_bound_holds(count, &ball, dim))
            .then_some(PackingViolation { ball, count })
    });
    Ok(Verdict::from_option(found))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingSuspect<W> {
    pub center: usize,
    pub radius: W,
    /// Half-radius balls the greedy cover needed.
    pub cover_size: usize,
}

/// Greedy cover of `B(center, radius)` by closed balls of radius `radius/2`
/// centered at ball points: the first center is the lowest uncovered index,
/// later ones the uncovered point farthest from the chosen centers (ties to
/// the lower index).
pub fn greedy_half_cover<M: MetricSpace + ?Sized>(m: &M, center: usize, radius: M::Dist) -> Vec<usize> {
    let ball: Vec<usize> = (0..m.len()).filter(|&x| m.dist(center, x) <= radius).collect();
    let covers = |c: usize, x: usize| m.dist(c, x).scale(2) <= radius;
    let mut uncovered = ball.clone();
    let mut centers = Vec::new();
    while let Some(&first) = uncovered.first() {
        let next = if centers.is_empty() {
            first
        } else {
            let gap = |x: usize| {
                centers
                    .iter()
                    .map(|&c| m.dist(c, x))
                    .reduce(|a, b| if b < a { b } else { a })
                    .unwrap()
            };
            let mut best = first;
            let mut best_gap = gap(first);
            for &x in &uncovered[1..] {
                let g = gap(x);
                if g > best_gap {
                    best = x;
                    best_gap = g;
                }
            }
            best
        };
        centers.push(next);
        uncovered.retain(|&x| !covers(next, x));
    }
    centers
}

/// Refutation-only doubling check: for every point and every distinct
/// distance as radius, a greedy half-radius cover larger than `2^dim` marks
/// the ball as suspect. Suspects are not proofs; minimum covers are not
/// computed.
pub fn doubling_refute<M: MetricSpace + ?Sized>(m: &M, dim: u32) -> Result<Verdict<DoublingSuspect<M::Dist>>> {
    let n = m.len();
    check_limit(n, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let radii = distinct_distances(m);
    let allowed = 1usize.checked_shl(dim).unwrap_or(usize::MAX);
    let found = par::find_first(n, |u| {
        radii.iter().find_map(|&r| {
            let size = greedy_half_cover(m, u, r).len();
            (size > allowed).then_some(DoublingSuspect { center: u, radius: r, cover_size: size })
        })
    });
    Ok(Verdict::from_option(found))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collinear() -> PointSet2D {
        PointSet2D::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap()
    }

    #[test]
    fn point_set_validation() {
        assert!(matches!(
            PointSet2D::new(vec![[0.0, 0.0], [1.0, 1.0], [0.0, 0.0]]),
            Err(Error::DuplicatePoint(0, 2))
        ));
        assert!(matches!(
            PointSet2D::new(vec![[0.0, f64::NAN]]),
            Err(Error::NonFiniteCoordinate(0))
        ));
    }

    #[test]
    fn random_points_are_reproducible() {
        let a = PointSet2D::random_unit_square(100, 7);
        assert_eq!(a, PointSet2D::random_unit_square(100, 7));
        assert_ne!(a, PointSet2D::random_unit_square(100, 8));
        assert!(a.points().iter().all(|p| (0.0..1.0).contains(&p[0]) && (0.0..1.0).contains(&p[1])));
        PointSet2D::new(a.points().to_vec()).unwrap();
    }

    #[test]
    fn aspect_ratio_examples() {
        assert_eq!(aspect_ratio(&TableMetric::uniform(2, 7u64)).unwrap(), 1.0);
        assert!(matches!(
            aspect_ratio(&TableMetric::uniform(1, 1u64)),
            Err(Error::UndefinedAspectRatio(1))
        ));
        assert_eq!(aspect_ratio(&collinear()).unwrap(), 2.0);
    }

    #[test]
    fn mst_uniform_three() {
        let (tree, w) = mst(&TableMetric::uniform(3, 1u64));
        assert_eq!(w, 2);
        assert_eq!(tree.pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn mst_single_point() {
        let (tree, w) = mst(&TableMetric::uniform(1, 1u64));
        assert_eq!((tree.edge_count(), w), (0, 0));
    }

    #[test]
    fn table_upper_triangle_roundtrip() {
        let t = TableMetric::from_upper_triangle(3, &[1u64, 2, 3]).unwrap();
        assert_eq!(t.dist(0, 1), 1);
        assert_eq!(t.dist(2, 0), 2);
        assert_eq!(t.dist(1, 2), 3);
        assert_eq!(t.upper_triangle(), vec![1, 2, 3]);
        assert!(TableMetric::from_upper_triangle(3, &[1u64]).is_err());
    }

    #[test]
    fn axioms_pass_on_points() {
        assert!(verify_metric_axioms(&collinear()).unwrap().is_pass());
        let p = PointSet2D::random_unit_square(60, 3);
        assert!(verify_metric_axioms(&p).unwrap().is_pass());
    }

    #[test]
    fn triangle_violation_witness() {
        let t = TableMetric::from_upper_triangle(3, &[1u64, 10, 1]).unwrap();
        assert_eq!(
            verify_metric_axioms(&t).unwrap(),
            Verdict::Witness(AxiomViolation::Triangle(0, 1, 2))
        );
        assert!(!verify_metric_axioms_sampled(&t, 500, 1).is_pass());
    }

    #[test]
    fn other_axiom_witnesses() {
        let zero = TableMetric::from_upper_triangle(2, &[0u64]).unwrap();
        assert_eq!(
            verify_metric_axioms(&zero).unwrap(),
            Verdict::Witness(AxiomViolation::NonPositive(0, 1))
        );
        let asym = TableMetric::from_fn(2, |i, j| if i < j { 1u64 } else if i > j { 2 } else { 0 });
        assert_eq!(
            verify_metric_axioms(&asym).unwrap(),
            Verdict::Witness(AxiomViolation::Asymmetric(0, 1))
        );
    }

    #[test]
    fn exhaustive_limit_enforced() {
        let t = TableMetric::uniform(5, 1u64);
        assert!(matches!(
            verify_metric_axioms_with_limit(&t, 4),
            Err(Error::AboveExhaustiveLimit { n: 5, limit: 4 })
        ));
    }

    #[test]
    fn ultrametric_examples() {
        assert_eq!(verify_ultrametric(&collinear()).unwrap(), Verdict::Witness((0, 1, 2)));
        assert!(verify_ultrametric(&TableMetric::uniform(2, 3u64)).unwrap().is_pass());
        assert!(verify_ultrametric(&TableMetric::uniform(6, 3u64)).unwrap().is_pass());
    }

    #[test]
    fn packing_uniform_violates_dimension_one() {
        let m = TableMetric::uniform(100, 1u64);
        let ball = PackingBall { center: 0, radius: 1, separation: 1 };
        assert_eq!(greedy_packing(&m, &ball).len(), 100);
        let v = packing_check(&m, 1, &BallSample::Explicit(vec![ball])).unwrap();
        assert_eq!(v, Verdict::Witness(PackingViolation { ball, count: 100 }));
    }

    #[test]
    fn packing_single_point_ball_passes() {
        let m = TableMetric::uniform(4, 10u64);
        let ball = PackingBall { center: 2, radius: 3, separation: 3 };
        assert_eq!(greedy_packing(&m, &ball), vec![2]);
        assert!(packing_check(&m, 1, &BallSample::Explicit(vec![ball])).unwrap().is_pass());
    }

    #[test]
    fn packing_rejects_nonpositive_radii() {
        let m = TableMetric::uniform(4, 10u64);
        let ball = PackingBall { center: 0, radius: 3, separation: 0 };
        assert!(matches!(
            packing_check(&m, 1, &BallSample::Explicit(vec![ball])),
            Err(Error::NonPositiveRadius { .. })
        ));
    }

    #[test]
    fn doubling_refute_examples() {
        assert!(doubling_refute(&TableMetric::uniform(1, 1u64), 1).unwrap().is_pass());
        let v = doubling_refute(&TableMetric::uniform(5, 1u64), 1).unwrap();
        assert_eq!(
            v,
            Verdict::Witness(DoublingSuspect { center: 0, radius: 1, cover_size: 5 })
        );
        // The same 5 singletons fit under 2^3 = 8.
        assert!(doubling_refute(&TableMetric::uniform(5, 1u64), 3).unwrap().is_pass());
    }
}
