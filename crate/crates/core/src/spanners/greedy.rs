use crate::error::{Error, Result};
use crate::graph::{dijkstra, Edge, SpannerGraph};
use crate::metric::MetricSpace;
use crate::params::StretchFactor;
use crate::weight::Weight;

/// Source, distance bound, and bounded distances from that source.
type Search<W> = (usize, W, Vec<Option<W>>);

/// Path-greedy `t`-spanner: pairs in ascending `(distance, min index, max
/// index)` order, each added iff the current graph distance exceeds `t`
/// times the metric distance.
pub fn greedy_spanner<M: MetricSpace + ?Sized>(m: &M, t: StretchFactor) -> Result<SpannerGraph<M::Dist>> {
    let n = m.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("greedy spanner needs n >= 2, got {n}")));
    }
    let mut pairs: Vec<(M::Dist, usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| (m.dist(u, v), u, v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut adj: Vec<Vec<(usize, M::Dist)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    // Bounded search results are reused for consecutive pairs sharing the
    // source and distance until the graph changes.
    let mut cached: Option<Search<M::Dist>> = None;
    for (d, u, v) in pairs {
        let reuse = matches!(&cached, Some((src, cd, _)) if *src == u && *cd == d);
        if !reuse {
            let within = |x: M::Dist| t.admits(x, d);
            let dist = dijkstra(n, u, |x| adj[x].as_slice(), within);
            cached = Some((u, d, dist));
        }
        let reached = cached.as_ref().unwrap().2[v];
        if reached.is_none_or(|g| !t.admits(g, d)) {
            adj[u].push((v, d));
            adj[v].push((u, d));
            edges.push(Edge { u, v, weight: d });
            cached = None;
        }
    }
    Ok(SpannerGraph::from_sorted_unchecked(n, edges))
}
