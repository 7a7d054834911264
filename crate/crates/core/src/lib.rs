//! Spanner lower-bound laboratory: metrics, HST instances, net hierarchies,
//! spanner constructions and their verification.
//!
//! Parallel loops go through rayon when the `parallel` feature is on (the
//! default) and run sequentially otherwise; results are identical either way.

pub mod error;
pub mod graph;
pub mod hst;
pub mod io;
pub mod metric;
pub mod nets;
mod par;
pub mod params;
pub mod rng;
pub mod spanners;
pub mod sweep;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{Edge, SpannerGraph};
pub use hst::{HstTree, LineOfCopies, LowerBoundInstance};
pub use metric::{MetricSpace, PointSet2D, TableMetric, Verdict};
pub use nets::{build_nets, verify_net_property, NetHierarchy};
pub use par::with_jobs;
pub use params::{Epsilon, StretchFactor};
pub use weight::{Exact, Weight};
