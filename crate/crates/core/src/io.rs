//! File formats: metric documents, spanner JSON and edge lists, net hierarchies.
//!
//! Exact weights travel as decimal strings (`"3"`, `"0.25"`, `"1/3"`).
//! Loaded spanners are checked against the metric they claim to span.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, SpannerGraph};
use crate::hst::{HstTree, LineOfCopies};
use crate::metric::{MetricSpace, PointSet2D, TableMetric};
use crate::nets::{NetHierarchy, NetHierarchyJson};
use crate::params::Epsilon;
use crate::weight::{Exact, Weight};

/// Serialized metric, tagged by `"type"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricDoc {
    Points2d {
        points: Vec<[f64; 2]>,
    },
    Hst {
        d: u32,
        h: u32,
    },
    LineOfCopies {
        #[serde(serialize_with = "ser_eps", deserialize_with = "de_eps")]
        epsilon: Epsilon,
        n_total: usize,
    },
    Table {
        n: usize,
        distances: Vec<String>,
    },
}

fn ser_eps<S: Serializer>(e: &Epsilon, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

/// Accepts `"p/q"` or decimal strings, and plain JSON numbers.
fn de_eps<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Epsilon, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Number(serde_json::Number),
    }
    let text = match Raw::deserialize(d)? {
        Raw::Text(s) => s,
        Raw::Number(n) => n.to_string(),
    };
    text.parse().map_err(serde::de::Error::custom)
}

/// A loaded metric of any supported kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMetric {
    Points(PointSet2D),
    Hst(HstTree),
    Line(LineOfCopies),
    Table(TableMetric<Exact>),
}

/// Runs `$body` with `$m` bound to the concrete metric inside an [`AnyMetric`].
#[macro_export]
macro_rules! with_metric {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::io::AnyMetric::Points($m) => $body,
            $crate::io::AnyMetric::Hst($m) => $body,
            $crate::io::AnyMetric::Line($m) => $body,
            $crate::io::AnyMetric::Table($m) => $body,
        }
    };
}

impl AnyMetric {
    pub fn from_doc(doc: &MetricDoc) -> Result<Self> {
        Ok(match doc {
            MetricDoc::Points2d { points } => AnyMetric::Points(PointSet2D::new(points.clone())?),
            MetricDoc::Hst { d, h } => AnyMetric::Hst(HstTree::new(*d, *h)?),
            MetricDoc::LineOfCopies { epsilon, n_total } => {
                AnyMetric::Line(LineOfCopies::new(*epsilon, *n_total)?)
            }
            MetricDoc::Table { n, distances } => {
                let parsed = distances
                    .iter()
                    .map(|s| Exact::parse_decimal(s))
                    .collect::<Result<Vec<_>>>()?;
                AnyMetric::Table(TableMetric::from_upper_triangle(*n, &parsed)?)
            }
        })
    }

    pub fn to_doc(&self) -> MetricDoc {
        match self {
            AnyMetric::Points(p) => MetricDoc::Points2d { points: p.points().to_vec() },
            AnyMetric::Hst(t) => MetricDoc::Hst { d: t.dim(), h: t.height() },
            AnyMetric::Line(l) => MetricDoc::LineOfCopies { epsilon: l.epsilon(), n_total: l.n_total() },
            AnyMetric::Table(t) => table_doc(t),
        }
    }

    /// The full distance table of this metric, as a `table` document.
    pub fn to_table_doc(&self) -> MetricDoc {
        with_metric!(self, m => table_doc(m))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyMetric::Points(_) => "points2d",
            AnyMetric::Hst(_) => "hst",
            AnyMetric::Line(_) => "line_of_copies",
            AnyMetric::Table(_) => "table",
        }
    }

    pub fn len(&self) -> usize {
        with_metric!(self, m => m.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MetricDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        doc_to_json(&self.to_doc())
    }
}

pub fn doc_to_json(doc: &MetricDoc) -> String {
    serde_json::to_string(doc).expect("metric documents serialize") + "\n"
}

fn table_doc<M: MetricSpace + ?Sized>(m: &M) -> MetricDoc {
    let n = m.len();
    let distances = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| m.dist(i, j).to_decimal())
        .collect();
    MetricDoc::Table { n, distances }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpannerDoc {
    n: usize,
    edges: Vec<(usize, usize, String)>,
}

/// `{"n":N,"edges":[[u,v,"w"],...]}` on one line.
pub fn spanner_to_json<W: Weight>(g: &SpannerGraph<W>) -> String {
    let doc = SpannerDoc {
        n: g.n(),
        edges: g.edges().iter().map(|e| (e.u, e.v, e.weight.to_decimal())).collect(),
    };
    serde_json::to_string(&doc).expect("spanner documents serialize") + "\n"
}

/// `# n=N` followed by one `u v w` line per edge.
pub fn spanner_to_edgelist<W: Weight>(g: &SpannerGraph<W>) -> String {
    let mut out = format!("# n={}\n", g.n());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.weight.to_decimal()).unwrap();
    }
    out
}

/// `u,v,w` with a header row.
pub fn spanner_to_csv<W: Weight>(g: &SpannerGraph<W>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["u", "v", "w"]).unwrap();
    for e in g.edges() {
        w.write_record([e.u.to_string(), e.v.to_string(), e.weight.to_decimal()])
            .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn assemble<M: MetricSpace + ?Sized>(
    m: &M,
    n: usize,
    raw: Vec<(usize, usize, String)>,
) -> Result<SpannerGraph<M::Dist>> {
    if n != m.len() {
        return Err(Error::SizeMismatch { metric: m.len(), graph: n });
    }
    let mut edges = Vec::with_capacity(raw.len());
    for (a, b, w) in raw {
        for x in [a, b] {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        if a == b {
            return Err(Error::Parse(format!("self-loop at {a}")));
        }
        let weight = M::Dist::parse_decimal(&w)?;
        edges.push(Edge { u: a.min(b), v: a.max(b), weight });
    }
    let g = SpannerGraph::from_sorted_unchecked(n, edges);
    g.check_against(m)?;
    Ok(g)
}

/// Parses spanner JSON and verifies every weight against `m`.
pub fn spanner_from_json<M: MetricSpace + ?Sized>(m: &M, text: &str) -> Result<SpannerGraph<M::Dist>> {
    let doc: SpannerDoc = serde_json::from_str(text)?;
    assemble(m, doc.n, doc.edges)
}

/// Parses an edge list. Blank lines and `#` comments are skipped; a
/// `# n=N` comment fixes the size, which otherwise defaults to `m.len()`.
pub fn spanner_from_edgelist<M: MetricSpace + ?Sized>(m: &M, text: &str) -> Result<SpannerGraph<M::Dist>> {
    let mut n = m.len();
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=") {
                n = v.trim().parse().map_err(|_| Error::Parse(format!("bad size line: {line:?}")))?;
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected `u v w`, got {line:?}", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(u), Some(v), Some(w), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        raw.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?, w.to_string()));
    }
    assemble(m, n, raw)
}

/// JSON when the text starts with `{`, an edge list otherwise.
pub fn spanner_from_text<M: MetricSpace + ?Sized>(m: &M, text: &str) -> Result<SpannerGraph<M::Dist>> {
    if text.trim_start().starts_with('{') {
        spanner_from_json(m, text)
    } else {
        spanner_from_edgelist(m, text)
    }
}

pub fn nets_to_json<W: Weight>(nh: &NetHierarchy<W>) -> String {
    serde_json::to_string(&nh.to_json()).expect("nets serialize") + "\n"
}

pub fn nets_from_json<W: Weight>(text: &str) -> Result<NetHierarchy<W>> {
    let doc: NetHierarchyJson = serde_json::from_str(text)?;
    Ok(NetHierarchy::from_levels(doc.levels, W::parse_decimal(&doc.scale)?))
}
