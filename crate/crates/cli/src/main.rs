use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use spanner_lab_core::io::{self, AnyMetric, MetricDoc};
use spanner_lab_core::metric::{distance_range, mst};
use spanner_lab_core::spanners::{
    greedy_spanner, net_tree_spanner, theta_graph, yao_graph, ConePartition2D,
};
use spanner_lab_core::sweep::{run_sweep, SweepConfig, SweepFormat};
use spanner_lab_core::verify::{certify_lower_bound_spanner, certify_spanner, CertReport};
use spanner_lab_core::{
    with_jobs, with_metric, Epsilon, HstTree, LineOfCopies, LowerBoundInstance, MetricSpace,
    PointSet2D, SpannerGraph, StretchFactor, Weight,
};

/// Metric spanner laboratory: instances, constructions, certificates, sweeps.
#[derive(Parser, Debug)]
#[command(name = "spanner-lab", version)]
struct Cli {
    /// Worker threads for parallel work (0 = one per core).
    #[arg(long, global = true, env = "SPANNER_LAB_JOBS", default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a metric document.
    Generate(GenerateArgs),
    /// Build a spanner of a metric file.
    Build(BuildArgs),
    /// Check a spanner against a metric; exits 1 if any check fails.
    Certify(CertifyArgs),
    /// Run a TOML-configured sweep; exits 1 if any row fails.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricKind {
    Hst,
    Points2d,
    Line,
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    kind: MetricKind,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
    /// Point count; for hst it is rounded down to a power of 2^d.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    epsilon: Option<Epsilon>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the full distance table instead of the compact form.
    #[arg(long)]
    table: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ConstructionArg {
    NetTree,
    Greedy,
    Yao,
    Theta,
    Forced,
    Mst,
    Complete,
}

#[derive(clap::Args, Debug)]
struct BuildArgs {
    construction: ConstructionArg,
    /// Metric document to span.
    #[arg(long)]
    metric: PathBuf,
    #[arg(long)]
    epsilon: Option<Epsilon>,
    /// Greedy stretch target; defaults to 1 + epsilon.
    #[arg(long)]
    t: Option<StretchFactor>,
    /// Cone count for yao and theta; defaults to ceil(6π / epsilon).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the net hierarchy used by net_tree.
    #[arg(long)]
    emit_nets: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct CertifyArgs {
    #[arg(long)]
    metric: PathBuf,
    /// Spanner as JSON or edge list.
    #[arg(long)]
    spanner: PathBuf,
    #[arg(long)]
    epsilon: Epsilon,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Fill the wall_ms column (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match with_jobs(jobs, move || dispatch(cli.command)) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Build(a) => build(a),
        Command::Certify(a) => certify(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_metric(path: &Path) -> Result<AnyMetric> {
    AnyMetric::from_json(&read(path)?).with_context(|| format!("loading metric {}", path.display()))
}

fn generate(a: GenerateArgs) -> Result<Outcome> {
    if a.format != Format::Json {
        bail!("metric documents are written as JSON only");
    }
    let metric = match a.kind {
        MetricKind::Hst => {
            let d = a.d.context("generate hst needs --d")?;
            let h = match (a.h, a.n) {
                (Some(h), None) => h,
                (None, Some(n)) => HstTree::height_for_points(d, n)
                    .with_context(|| format!("--n {n} is below one branching block 2^{d}"))?,
                _ => bail!("generate hst needs exactly one of --h and --n"),
            };
            AnyMetric::Hst(HstTree::new(d, h)?)
        }
        MetricKind::Points2d => {
            let n = a.n.context("generate points2d needs --n")?;
            AnyMetric::Points(PointSet2D::random_unit_square(n, a.seed))
        }
        MetricKind::Line => {
            let eps = a.epsilon.context("generate line needs --epsilon")?;
            let n = a.n.context("generate line needs --n")?;
            AnyMetric::Line(LineOfCopies::new(eps, n)?)
        }
    };
    let doc: MetricDoc = if a.table { metric.to_table_doc() } else { metric.to_doc() };
    emit(a.output.as_deref(), &io::doc_to_json(&doc))?;
    eprintln!("{}", with_metric!(&metric, m => summary(m)));
    if let AnyMetric::Line(l) = &metric {
        eprintln!("copies={} n_prime={}", l.copies(), l.n_prime());
    }
    Ok(Outcome::Pass)
}

fn summary<M: MetricSpace>(m: &M) -> String {
    match distance_range(m) {
        Some((lo, hi)) => format!(
            "n={} aspect_ratio={} min_distance={} max_distance={}",
            m.len(),
            M::Dist::ratio_string(hi, lo),
            lo.to_decimal(),
            hi.to_decimal()
        ),
        None => format!("n={} aspect_ratio=undefined", m.len()),
    }
}

fn render_graph<W: Weight>(g: &SpannerGraph<W>, format: Format) -> String {
    match format {
        Format::Json => io::spanner_to_json(g),
        Format::Csv => io::spanner_to_csv(g),
        Format::Edgelist => io::spanner_to_edgelist(g),
    }
}

fn build(a: BuildArgs) -> Result<Outcome> {
    let metric = load_metric(&a.metric)?;
    if a.emit_nets.is_some() && a.construction != ConstructionArg::NetTree {
        bail!("--emit-nets applies to net_tree only");
    }
    let need_eps = |what: &str| a.epsilon.with_context(|| format!("{what} needs --epsilon"));
    let out = match a.construction {
        ConstructionArg::Yao | ConstructionArg::Theta => {
            let AnyMetric::Points(p) = &metric else {
                bail!("yao and theta need a points2d metric, got {}", metric.kind());
            };
            let k = match a.k {
                Some(k) => k,
                None => ConePartition2D::for_epsilon(need_eps("yao/theta without --k")?).k(),
            };
            let g = if a.construction == ConstructionArg::Yao {
                yao_graph(p, k)?
            } else {
                theta_graph(p, k)?
            };
            (render_graph(&g, a.format), g.edge_count(), g.total_weight().to_decimal())
        }
        ConstructionArg::Forced => {
            let eps = need_eps("forced")?;
            match &metric {
                AnyMetric::Hst(t) => forced_graph(t, eps, a.format)?,
                AnyMetric::Line(l) => forced_graph(l, eps, a.format)?,
                other => bail!("forced needs an hst or line_of_copies metric, got {}", other.kind()),
            }
        }
        _ => with_metric!(&metric, m => build_general(m, &a)?),
    };
    emit(a.output.as_deref(), &out.0)?;
    eprintln!("edges={} weight={}", out.1, out.2);
    Ok(Outcome::Pass)
}

fn forced_graph<I: LowerBoundInstance>(
    inst: &I,
    eps: Epsilon,
    format: Format,
) -> Result<(String, usize, String)> {
    let g = SpannerGraph::from_pairs(inst, inst.forced_edges(eps))?;
    Ok((render_graph(&g, format), g.edge_count(), g.total_weight().to_decimal()))
}

fn build_general<M: MetricSpace>(m: &M, a: &BuildArgs) -> Result<(String, usize, String)> {
    let g = match a.construction {
        ConstructionArg::NetTree => {
            let eps = a.epsilon.context("net_tree needs --epsilon")?;
            let s = net_tree_spanner(m, eps)?;
            if let Some(path) = &a.emit_nets {
                fs::write(path, io::nets_to_json(&s.nets))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            s.graph
        }
        ConstructionArg::Greedy => {
            let t = match (a.t, a.epsilon) {
                (Some(t), _) => t,
                (None, Some(eps)) => eps.stretch(),
                (None, None) => bail!("greedy needs --t or --epsilon"),
            };
            greedy_spanner(m, t)?
        }
        ConstructionArg::Mst => mst(m).0,
        ConstructionArg::Complete => SpannerGraph::complete(m),
        _ => unreachable!("handled by the caller"),
    };
    Ok((render_graph(&g, a.format), g.edge_count(), g.total_weight().to_decimal()))
}

fn certify(a: CertifyArgs) -> Result<Outcome> {
    let metric = load_metric(&a.metric)?;
    let text = read(&a.spanner)?;
    let ctx = || format!("loading spanner {}", a.spanner.display());
    let report: CertReport = match &metric {
        AnyMetric::Hst(t) => {
            certify_lower_bound_spanner(t, &io::spanner_from_text(t, &text).with_context(ctx)?, a.epsilon)?
        }
        AnyMetric::Line(l) => {
            certify_lower_bound_spanner(l, &io::spanner_from_text(l, &text).with_context(ctx)?, a.epsilon)?
        }
        other => with_metric!(other, m => {
            certify_spanner(m, &io::spanner_from_text(m, &text).with_context(ctx)?, a.epsilon)?
        }),
    };
    let rendered = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Edgelist => bail!("certify reports are JSON or CSV"),
    };
    emit(a.output.as_deref(), &rendered)?;
    eprintln!("stretch={} pass={}", report.stretch, report.pass);
    Ok(if report.pass { Outcome::Pass } else { Outcome::CheckFailed })
}

fn sweep(a: SweepArgs) -> Result<Outcome> {
    let mut cfg = SweepConfig::from_toml(&read(&a.config)?)
        .with_context(|| format!("parsing {}", a.config.display()))?;
    cfg.timing |= a.timing;
    let format = match a.format {
        Some(Format::Csv) => SweepFormat::Csv,
        Some(Format::Json) => SweepFormat::Json,
        Some(Format::Edgelist) => bail!("sweep output is CSV or JSON"),
        None => cfg.format.unwrap_or_default(),
    };
    let output = a.output.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    let result = run_sweep(&cfg);
    emit(output.as_deref(), &result.render(format))?;
    let failed = result.rows.iter().filter(|r| !r.pass).count();
    eprintln!("rows={} failed={failed}", result.rows.len());
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::CheckFailed })
}
