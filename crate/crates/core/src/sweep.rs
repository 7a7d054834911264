//! Experiment sweeps over `(d, n, epsilon, construction)` grids.
//!
//! Cells run concurrently; rows come back in configuration order. Failures
//! are recorded in the row and never abort the sweep.

use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::graph::SpannerGraph;
use crate::hst::{HstTree, LineOfCopies, LowerBoundInstance};
use crate::metric::{mst, MetricSpace, PointSet2D};
use crate::par;
use crate::params::Epsilon;
use crate::spanners::{greedy_spanner, net_tree_spanner, theta_graph, yao_graph, ConePartition2D};
use crate::verify::{size_lower_bound, stretch, weight_lower_bound};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    #[default]
    Hst,
    Line,
    Points2d,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hst => "hst",
            Family::Line => "line",
            Family::Points2d => "points2d",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    NetTree,
    Greedy,
    Yao,
    Theta,
    Forced,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::NetTree => "net_tree",
            Construction::Greedy => "greedy",
            Construction::Yao => "yao",
            Construction::Theta => "theta",
            Construction::Forced => "forced",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFormat {
    #[default]
    Csv,
    Json,
}

/// A sweep description, usually read from TOML:
///
/// ```toml
/// family = "hst"            # hst | line | points2d
/// dims = [1, 2]             # hst only
/// sizes = [64, 256, 1024]   # or `heights = [...]` for hst
/// epsilons = ["1/2", 0.25]
/// constructions = ["forced", "net_tree"]
/// seed = 7                  # points2d only
/// ```
#[derive(Clone, Debug, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub family: Family,
    #[serde(default)]
    pub dims: Vec<u32>,
    pub sizes: Option<Vec<usize>>,
    pub heights: Option<Vec<u32>>,
    #[serde(deserialize_with = "de_epsilons")]
    pub epsilons: Vec<Epsilon>,
    #[serde(default)]
    pub constructions: Vec<Construction>,
    #[serde(default)]
    pub seed: u64,
    pub output: Option<String>,
    pub format: Option<SweepFormat>,
    /// Fill the `wall_ms` column; off by default so output is reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn de_epsilons<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Epsilon>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(u64),
        Float(f64),
    }
    Vec::<Raw>::deserialize(d)?
        .into_iter()
        .map(|r| {
            let text = match r {
                Raw::Text(s) => s,
                Raw::Int(i) => i.to_string(),
                Raw::Float(f) => f.to_string(),
            };
            text.parse().map_err(serde::de::Error::custom)
        })
        .collect()
}

/// One grid point. `size` is the requested size before rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Cell {
    d: u32,
    size: Size,
    eps: Epsilon,
    construction: Construction,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Size {
    Points(usize),
    Height(u32),
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Parse(msg.to_string()));
        match (self.family, &self.sizes, &self.heights) {
            (_, Some(_), Some(_)) => return bad("give either sizes or heights, not both"),
            (Family::Hst, None, None) => return bad("hst sweeps need sizes or heights"),
            (Family::Line | Family::Points2d, None, _) => return bad("line and points2d sweeps need sizes"),
            _ => {}
        }
        if self.family == Family::Hst && self.dims.is_empty() {
            return bad("hst sweeps need at least one entry in dims");
        }
        if self.family != Family::Hst && !self.dims.is_empty() {
            return bad("dims applies to hst sweeps only");
        }
        if self.dims.contains(&0) {
            return bad("dims must be positive");
        }
        Ok(())
    }

    fn effective_dims(&self) -> Vec<u32> {
        match self.family {
            Family::Hst => self.dims.clone(),
            Family::Line => vec![1],
            Family::Points2d => vec![2],
        }
    }

    fn cells(&self) -> Vec<Cell> {
        let sizes: Vec<Size> = match (&self.sizes, &self.heights) {
            (Some(s), _) => s.iter().map(|&n| Size::Points(n)).collect(),
            (None, Some(h)) => h.iter().map(|&h| Size::Height(h)).collect(),
            (None, None) => Vec::new(),
        };
        let mut cells = Vec::new();
        for d in self.effective_dims() {
            for &size in &sizes {
                for &eps in &self.epsilons {
                    for &construction in &self.constructions {
                        cells.push(Cell { d, size, eps, construction });
                    }
                }
            }
        }
        cells
    }
}

/// CSV column order; see the README for meanings.
pub const COLUMNS: [&str; 22] = [
    "family",
    "d",
    "n",
    "epsilon",
    "construction",
    "edge_count",
    "total_weight",
    "mst_weight",
    "lightness",
    "stretch",
    "stretch_pass",
    "forced_count",
    "forced_weight",
    "forced_present",
    "forced_lightness",
    "size_bound",
    "size_pass",
    "weight_bound",
    "weight_pass",
    "pass",
    "wall_ms",
    "error",
];

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub d: u32,
    pub n: Option<usize>,
    pub epsilon: String,
    pub construction: String,
    pub edge_count: Option<usize>,
    pub total_weight: Option<String>,
    pub mst_weight: Option<String>,
    pub lightness: Option<String>,
    pub stretch: Option<String>,
    pub stretch_pass: Option<bool>,
    pub forced_count: Option<usize>,
    pub forced_weight: Option<u64>,
    pub forced_present: Option<bool>,
    pub forced_lightness: Option<String>,
    pub size_bound: Option<String>,
    pub size_pass: Option<bool>,
    pub weight_bound: Option<String>,
    pub weight_pass: Option<bool>,
    pub pass: bool,
    pub wall_ms: Option<String>,
    pub error: Option<String>,
}

impl SweepRow {
    fn finish(mut self) -> Self {
        let flags = [
            self.stretch_pass,
            self.forced_present,
            self.size_pass,
            self.weight_pass,
        ];
        self.pass = self.error.is_none() && flags.iter().all(|f| f.unwrap_or(true));
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Header plus one row per cell; written even when there are no rows.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(COLUMNS).unwrap();
        for row in &self.rows {
            w.serialize(row).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).unwrap() + "\n"
    }

    pub fn render(&self, format: SweepFormat) -> String {
        match format {
            SweepFormat::Csv => self.to_csv(),
            SweepFormat::Json => self.to_json(),
        }
    }
}

/// Runs every cell, in parallel when enabled; the pool size is the caller's
/// business (see [`crate::with_jobs`]).
pub fn run_sweep(cfg: &SweepConfig) -> SweepResult {
    let cells = cfg.cells();
    let rows = par::map_slice(&cells, |cell| run_cell(cfg, cell));
    SweepResult { rows }
}

fn run_cell(cfg: &SweepConfig, cell: &Cell) -> SweepRow {
    let mut row = SweepRow {
        family: cfg.family.name().to_string(),
        d: cell.d,
        epsilon: cell.eps.to_string(),
        construction: cell.construction.name().to_string(),
        ..SweepRow::default()
    };
    let start = Instant::now();
    if let Err(e) = fill_row(cfg, cell, &mut row) {
        row.error = Some(e.to_string());
    }
    if cfg.timing {
        row.wall_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    }
    row.finish()
}

fn fill_row(cfg: &SweepConfig, cell: &Cell, row: &mut SweepRow) -> Result<()> {
    let eps = cell.eps;
    match cfg.family {
        Family::Hst => {
            let h = match cell.size {
                Size::Height(h) => h,
                Size::Points(n) => HstTree::height_for_points(cell.d, n).ok_or_else(|| {
                    Error::InstanceTooSmall { required: format!("2^{}", cell.d), available: n }
                })?,
            };
            let t = HstTree::new(cell.d, h)?;
            row.n = Some(t.n());
            lower_bound_row(&t, cell.construction, eps, row)
        }
        Family::Line => {
            let Size::Points(n) = cell.size else { unreachable!("validated") };
            if eps.is_one() {
                return Err(Error::InvalidParameter("line sweeps need epsilon < 1".into()));
            }
            let np = LineOfCopies::n_prime_for(eps);
            let rounded = n - n % np;
            if rounded == 0 {
                return Err(Error::InstanceTooSmall { required: np.to_string(), available: n });
            }
            let l = LineOfCopies::new(eps, rounded)?;
            row.n = Some(rounded);
            lower_bound_row(&l, cell.construction, eps, row)
        }
        Family::Points2d => {
            let Size::Points(n) = cell.size else { unreachable!("validated") };
            let p = PointSet2D::random_unit_square(n, cfg.seed);
            row.n = Some(n);
            let k = ConePartition2D::for_epsilon(eps).k();
            let g = match cell.construction {
                Construction::Yao => yao_graph(&p, k)?,
                Construction::Theta => theta_graph(&p, k)?,
                Construction::NetTree => net_tree_spanner(&p, eps)?.graph,
                Construction::Greedy => greedy_spanner(&p, eps.stretch())?,
                Construction::Forced => return Err(Error::RequiresLowerBoundInstance("forced".into())),
            };
            measure(&p, &g, eps, true, row)
        }
    }
}

fn lower_bound_row<I: LowerBoundInstance>(
    inst: &I,
    construction: Construction,
    eps: Epsilon,
    row: &mut SweepRow,
) -> Result<()> {
    let size = size_lower_bound(inst, eps)?;
    let weight = weight_lower_bound(inst, eps)?;
    let forced = inst.forced_edges(eps);
    let g = match construction {
        Construction::Forced => SpannerGraph::from_pairs(inst, forced.iter().copied())?,
        Construction::NetTree => net_tree_spanner(inst, eps)?.graph,
        Construction::Greedy => greedy_spanner(inst, eps.stretch())?,
        Construction::Yao | Construction::Theta => {
            return Err(Error::RequiresPoints2d(construction.name().into()))
        }
    };
    // The forced set alone is not claimed to be a spanner: stretch is
    // reported for it, not asserted.
    measure(inst, &g, eps, construction != Construction::Forced, row)?;
    let mst_weight = mst(inst).1;
    row.forced_count = Some(size.forced_count);
    row.forced_weight = Some(weight.forced_weight);
    row.forced_present = Some(forced.iter().all(|&(u, v)| g.contains(u, v)));
    row.forced_lightness = Some(u64::ratio_string(weight.forced_weight, mst_weight));
    row.size_bound = Some(size.formula);
    row.size_pass = Some(size.pass);
    row.weight_bound = Some(weight.formula);
    row.weight_pass = Some(weight.pass);
    Ok(())
}

fn measure<M: MetricSpace>(
    m: &M,
    g: &SpannerGraph<M::Dist>,
    eps: Epsilon,
    assert_stretch: bool,
    row: &mut SweepRow,
) -> Result<()> {
    let total = g.total_weight();
    let tree = mst(m).1;
    row.edge_count = Some(g.edge_count());
    row.total_weight = Some(total.to_decimal());
    row.mst_weight = Some(tree.to_decimal());
    row.lightness = Some(M::Dist::ratio_string(total, tree));
    let s = stretch(m, g)?;
    row.stretch = Some(s.ratio_string());
    if assert_stretch {
        row.stretch_pass = Some(s.within(eps.stretch()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config() {
        let cfg = SweepConfig::from_toml(
            r#"
            dims = [1, 2]
            sizes = [16, 64]
            epsilons = ["1/2", 0.25, 1]
            constructions = ["forced", "net_tree"]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.family, Family::Hst);
        assert_eq!(cfg.epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["1/2", "1/4", "1/1"]);
        assert_eq!(cfg.cells().len(), 2 * 2 * 3 * 2);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "dims = [1]\nepsilons = [\"1/2\"]",
            "dims = [1]\nsizes=[4]\nheights=[2]\nepsilons = [\"1/2\"]",
            "sizes=[4]\nepsilons = [\"1/2\"]",
            "dims = [1]\nsizes=[4]\nepsilons = [\"3/2\"]",
            "dims = [1]\nsizes=[4]\nepsilons = [\"1/2\"]\nconstructions=[\"wspd\"]",
            "dims = [1]\nsizes=[4]\nepsilons = [\"1/2\"]\ncolour=1",
            "family=\"line\"\ndims = [1]\nsizes=[4]\nepsilons = [\"1/2\"]",
        ] {
            assert!(SweepConfig::from_toml(text).is_err(), "{text}");
        }
    }

    #[test]
    fn empty_constructions_give_header_only() {
        let cfg = SweepConfig::from_toml("dims=[1]\nsizes=[16]\nepsilons=[\"1/2\"]").unwrap();
        let r = run_sweep(&cfg);
        assert!(r.rows.is_empty());
        assert!(r.all_pass());
        assert_eq!(r.to_csv(), COLUMNS.join(",") + "\n");
    }

    #[test]
    fn header_matches_row_fields() {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(SweepRow::default()).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), COLUMNS.join(","));
    }

    #[test]
    fn small_instance_reported_in_row() {
        let cfg = SweepConfig::from_toml(
            "dims=[2]\nsizes=[4, 16]\nepsilons=[\"1/4\"]\nconstructions=[\"forced\"]",
        )
        .unwrap();
        let r = run_sweep(&cfg);
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows[0].error.as_deref().unwrap().contains("instance too small"));
        assert!(!r.rows[0].pass);
        assert!(r.rows[1].pass, "{:?}", r.rows[1]);
        assert!(!r.all_pass());
    }

    #[test]
    fn hst_sweep_passes() {
        let cfg = SweepConfig::from_toml(
            "dims=[1,2]\nsizes=[64, 256]\nepsilons=[\"1/2\",\"1/4\"]\nconstructions=[\"forced\",\"net_tree\",\"greedy\"]",
        )
        .unwrap();
        let r = run_sweep(&cfg);
        assert_eq!(r.rows.len(), 24);
        for row in &r.rows {
            assert!(row.pass, "{row:?}");
        }
        assert_eq!(r.to_csv(), run_sweep(&cfg).to_csv());
    }

    #[test]
    fn mismatched_construction_recorded() {
        let cfg = SweepConfig::from_toml(
            "family=\"points2d\"\nsizes=[20]\nepsilons=[\"1/2\"]\nconstructions=[\"forced\",\"yao\",\"theta\"]\nseed=3",
        )
        .unwrap();
        let r = run_sweep(&cfg);
        assert!(r.rows[0].error.is_some());
        assert_eq!(r.rows[1].d, 2);
        assert!(r.rows[1].stretch_pass.is_some());
    }

    #[test]
    fn line_sizes_round_down() {
        let cfg = SweepConfig::from_toml(
            "family=\"line\"\nsizes=[70]\nepsilons=[\"1/4\"]\nconstructions=[\"forced\"]",
        )
        .unwrap();
        let r = run_sweep(&cfg);
        assert_eq!(r.rows[0].n, Some(64));
        assert!(r.rows[0].pass, "{:?}", r.rows[0]);
    }
}
