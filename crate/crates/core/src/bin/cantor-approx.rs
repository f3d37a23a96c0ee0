use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cantor_approx::cantor::{depth_partition, modulus_delta, DyadicValue, Transducer, DEFAULT_MAX_DEPTH};
use cantor_approx::dynamics::{
    dynamics_graph_auto, itinerary_map, per_containment, SpectrumBounds,
};
use cantor_approx::error::{Error, Result};
use cantor_approx::marker::{
    check_markers, coding_tables, find_markers_with_radius, search_markers, small_period_orbits,
    synthesize_code, target_spacing, SubshiftWindow,
};
use cantor_approx::pipeline::{
    approximate, load_graph, load_system, verify, ConjugacyResult, PipelineConfig, Strictness,
    SCHEMA,
};
use cantor_approx::symbolic::{cantor_check, mixing_certificate, period_spectrum, DirectedGraph, Sft, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cantor-approx", version, about = "Certified approximation of Cantor-set maps by conjugates of aperiodic homeomorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the dynamics graph G(f, P) of a depth partition.
    Graph(Common),
    /// Primitivity certificate of a graph or of G(f, P).
    Mixing(GraphSource),
    /// Period spectrum of a graph or of G(f, P), up to --mbar (default 12).
    Spectrum(GraphSource),
    /// Periods of g against those of the shift on G(f, P).
    Percon(Common),
    /// Marker set for a window language.
    Markers(MarkerArgs),
    /// Sliding block code from a window language into a target shift; the
    /// spacing N is derived from the target.
    Code(CodeArgs),
    /// Build h conjugate to g with a certified bound d(h, f) < epsilon.
    Approximate(Common),
    /// Replay every certificate of a stored approximation report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrictArg {
    Abort,
    Warn,
}

#[derive(Args)]
struct Common {
    /// Systems as `f=<name|file>` and `g=<name|file>`.
    #[arg(long, num_args = 1.., value_name = "ROLE=SPEC")]
    system: Vec<String>,
    /// Target precision, written `2^-k`.
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: Option<DyadicValue>,
    /// Partition depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Period bound.
    #[arg(long)]
    mbar: Option<usize>,
    /// Deepest transducer level used anywhere.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a Graphviz rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Treat undecided periods as a refusal (`abort`, the default) or a warning.
    #[arg(long, value_enum, num_args = 0..=1, default_value = "abort", default_missing_value = "abort")]
    strict: StrictArg,
}

#[derive(Args)]
struct GraphSource {
    /// A built-in graph name or a graph JSON file, instead of G(f, P).
    #[arg(long)]
    graph: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct WindowArgs {
    /// Take the window language of this graph's shift.
    #[arg(long)]
    graph: Option<String>,
    /// Longest window length for a graph language.
    #[arg(long)]
    len: Option<usize>,
    /// Spacing N.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Periodicity window radius k; defaults to N + 1.
    #[arg(long)]
    k: Option<usize>,
    /// Marker radius L; the least one is searched when absent.
    #[arg(long)]
    radius: Option<usize>,
    /// Largest marker radius tried by the search.
    #[arg(long, default_value_t = 12)]
    max_radius: usize,
}

#[derive(Args)]
struct MarkerArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Target graph of the code.
    #[arg(long, default_value = "full2")]
    target: String,
    /// Comma-separated target words the image must hit; every vertex by default.
    #[arg(long, value_delimiter = ',')]
    words: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Report written by `approximate --out`.
    input: PathBuf,
    /// Write the verification report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_epsilon(s: &str) -> std::result::Result<DyadicValue, String> {
    s.parse::<DyadicValue>().map_err(|e| e.to_string())
}

impl Common {
    fn system(&self, role: &str) -> Result<Transducer> {
        let spec = self
            .system
            .iter()
            .find_map(|s| s.strip_prefix(role).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| Error::InvalidConfig(format!("missing --system {role}=<name|file>")))?;
        load_system(spec, self.max_depth)
    }

    /// The explicit depth, or the one the modulus of `f` at epsilon needs.
    fn partition_depth(&self, f: &Transducer) -> Result<usize> {
        match (self.depth, self.epsilon) {
            (Some(d), _) => Ok(d),
            (None, Some(eps)) => Ok(modulus_delta(f, eps)?.exponent().unwrap_or(0) as usize),
            (None, None) => Ok(2),
        }
    }

    fn f_graph(&self) -> Result<DirectedGraph> {
        let f = self.system("f")?;
        let p = depth_partition(self.partition_depth(&f)?)?;
        Ok(dynamics_graph_auto(&f, &p)?.graph)
    }

    fn config(&self) -> Result<PipelineConfig> {
        let eps = self
            .epsilon
            .ok_or_else(|| Error::InvalidConfig("--epsilon 2^-k is required".into()))?;
        let mut cfg = PipelineConfig::new(eps);
        cfg.max_depth = self.max_depth;
        cfg.mbar = self.mbar;
        cfg.strict = match self.strict {
            StrictArg::Abort => Strictness::Abort,
            StrictArg::Warn => Strictness::Warn,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl GraphSource {
    fn graph(&self) -> Result<DirectedGraph> {
        match &self.graph {
            Some(spec) => load_graph(spec),
            None => self.common.f_graph(),
        }
    }
}

impl WindowArgs {
    fn window(&self, common: &Common) -> Result<SubshiftWindow> {
        match &self.graph {
            Some(spec) => Ok(SubshiftWindow::from_graph(load_graph(spec)?, self.len)),
            None => {
                let g = common.system("g")?;
                let p = depth_partition(common.depth.unwrap_or(2))?;
                let len = self.len.unwrap_or(2 * (2 * self.n + 2 * self.max_radius) + 2);
                Ok(itinerary_map(&g, &p, len)?.window)
            }
        }
    }

    fn k(&self) -> usize {
        self.k.unwrap_or(self.n + 1)
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'a str,
    command: &'a str,
    result: Value,
}

fn envelope(command: &str, result: impl Serialize) -> Result<Envelope<'_>> {
    Ok(Envelope {
        schema: SCHEMA,
        command,
        result: serde_json::to_value(result)?,
    })
}

/// Prints to stdout, treating a closed pipe as success.
fn print(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Writes to `--out` when given, otherwise prints.
fn emit(common: &Common, value: &Envelope<'_>) -> Result<()> {
    match &common.out {
        Some(path) => write_json(path, value),
        None => print(&serde_json::to_string_pretty(value)?),
    }
}

fn write_dot(common: &Common, graph: &DirectedGraph, name: &str) -> Result<()> {
    if let Some(path) = &common.dot {
        std::fs::write(path, graph.to_dot(name))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Graph(c) => {
            let f = c.system("f")?;
            let p = depth_partition(c.partition_depth(&f)?)?;
            let g = dynamics_graph_auto(&f, &p)?;
            write_dot(&c, &g.graph, &format!("G_{}", f.name))?;
            emit(&c, &envelope("graph", &g)?)
        }
        Command::Mixing(s) => {
            let graph = s.graph()?;
            let cert = mixing_certificate(&graph);
            let cantor = cantor_check(&Sft::new(graph.clone()));
            write_dot(&s.common, &graph, "mixing")?;
            emit(&s.common, &envelope("mixing", json!({ "certificate": cert, "cantor": cantor }))?)
        }
        Command::Spectrum(s) => {
            let graph = s.graph()?;
            let spectrum = period_spectrum(&graph, s.common.mbar.unwrap_or(12));
            emit(&s.common, &envelope("spectrum", &spectrum)?)
        }
        Command::Percon(c) => {
            let f = c.system("f")?;
            let g = c.system("g")?;
            let p = depth_partition(c.partition_depth(&f)?)?;
            let target_graph = dynamics_graph_auto(&f, &p)?.graph;
            let bound = c.mbar.unwrap_or(12);
            let source = SpectrumBounds::from_transducer(&g, bound, c.max_depth)?;
            let verdict = per_containment(source, SpectrumBounds::from_graph(&target_graph, bound));
            emit(&c, &envelope("percon", &verdict)?)?;
            if !verdict.violations.is_empty() {
                return Err(Error::PerconViolation(verdict.violations));
            }
            if !verdict.unresolved.is_empty() {
                match c.strict {
                    StrictArg::Abort => return Err(Error::PerconUnresolved(verdict.unresolved)),
                    StrictArg::Warn => eprintln!("warning: periods {:?} undecided", verdict.unresolved),
                }
            }
            Ok(())
        }
        Command::Markers(m) => {
            let lambda = m.window.window(&m.common)?;
            let set = match m.window.radius {
                Some(l) => find_markers_with_radius(&lambda, m.window.n, m.window.k(), l)?,
                None => search_markers(&lambda, m.window.n, m.window.max_radius)?,
            };
            let check = check_markers(&lambda, &set)?;
            emit(&m.common, &envelope("markers", json!({ "markers": set, "check": check }))?)?;
            if !check.holds() {
                return Err(Error::ReplayMismatch {
                    stage: cantor_approx::error::Stage::Markers,
                    detail: "marker check failed".into(),
                });
            }
            Ok(())
        }
        Command::Code(a) => {
            let lambda = a.window.window(&a.common)?;
            let sigma = Sft::new(load_graph(&a.target)?);
            let targets: Vec<Word> = if a.words.is_empty() {
                sigma.graph().labels().iter().map(|l| sigma.graph().parse_word(l)).collect::<Result<_>>()?
            } else {
                a.words.iter().map(|w| sigma.graph().parse_word(w)).collect::<Result<_>>()?
            };
            let n = target_spacing(&sigma, &targets)?;
            let orbits = small_period_orbits(&lambda, n, n + 1)?;
            let tables = coding_tables(&sigma, &targets, &orbits)?;
            let markers = match a.window.radius {
                Some(l) => find_markers_with_radius(&lambda, tables.big_n, tables.big_n + 1, l)?,
                None => search_markers(&lambda, tables.big_n, a.window.max_radius)?,
            };
            let (code, check) = synthesize_code(&lambda, &sigma, &markers, &tables)?;
            emit(&a.common, &envelope("code", json!({ "code": code, "check": check }))?)
        }
        Command::Approximate(c) => {
            let cfg = c.config()?;
            let f = c.system("f")?;
            let g = c.system("g")?;
            let r = approximate(&f, &g, &cfg)?;
            if let Some(path) = &c.out {
                write_json(path, &r)?;
            }
            write_dot(&c, &r.certificate.g_graph.graph, "G_h")?;
            print(&format!(
                "h conjugate to {} with d(h, {}) <= {} < {}",
                g.name, f.name, r.upper, cfg.epsilon
            ))?;
            print(&format!(
                "partition depth {}, N = {}, marker radius {}, code radius {}, M-bar {}",
                r.partition_depth, r.code.tables.big_n, r.code.markers.radius, r.code.window_radius, r.mbar
            ))
        }
        Command::Verify(v) => {
            let text = std::fs::read_to_string(&v.input)?;
            let r: ConjugacyResult = serde_json::from_str(&text)?;
            let report = verify(&r);
            for c in &report.checks {
                print(&format!("{} {:<12} {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail))?;
            }
            if let Some(path) = &v.out {
                write_json(path, &report)?;
            }
            report.into_result().map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
