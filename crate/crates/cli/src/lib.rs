//! File formats and subcommands behind the `dirhom` binary.

pub mod format;
pub mod render;

use std::path::PathBuf;

use serde_json::{json, Value};
use thiserror::Error;

use dirhom_core::chain::verify_chain_complex;
use dirhom_core::directed::DEFAULT_CIRCUIT_BUDGET;
use dirhom_core::metrics::DEFAULT_MAP_PAIR_BUDGET;
use dirhom_core::rips::DEFAULT_SIMPLEX_BUDGET;
use dirhom_core::semihomology::{even_cycles_trivial, h0_rank, z1_generators_with_budget, DEFAULT_ENUMERATION_BUDGET, DEFAULT_SEARCH_BOUND};
use dirhom_core::{
    build_filtration, directed_persistence, stability_check, subbarcode_match, undirected_diagrams, DiagramKind, FilteredComplex,
    PersistenceDiagram, Rational, SearchLimits, StabilityConfig,
};

use format::{diagram_to_json, diagrams_from_csv, diagrams_from_json, diagrams_to_csv, format_rational, read_input, Input};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }
}

impl From<dirhom_core::Error> for CliError {
    fn from(e: dirhom_core::Error) -> Self {
        match e {
            dirhom_core::Error::Budget { .. } => CliError::Budget(e.to_string()),
            e => CliError::Format(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
    Text,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub max_dim: usize,
    pub directed: bool,
    pub bound: u32,
    pub circuit_budget: usize,
    pub simplex_budget: u128,
    pub map_pair_budget: u128,
    pub enumeration_budget: u128,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            max_dim: 1,
            directed: true,
            bound: DEFAULT_SEARCH_BOUND,
            circuit_budget: DEFAULT_CIRCUIT_BUDGET,
            simplex_budget: DEFAULT_SIMPLEX_BUDGET,
            map_pair_budget: DEFAULT_MAP_PAIR_BUDGET,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            output: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), CliError> {
        if self.circuit_budget == 0 || self.simplex_budget == 0 || self.map_pair_budget == 0 || self.enumeration_budget == 0 {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        Ok(())
    }

    fn input(&self, i: usize) -> Result<&PathBuf, CliError> {
        self.inputs.get(i).ok_or_else(|| CliError::Usage(format!("expected at least {} input file(s)", i + 1)))
    }
}

/// What a command produced and whether its checks passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

fn filtration(input: Input, cfg: &RunConfig) -> Result<FilteredComplex, CliError> {
    Ok(match input {
        Input::Matrix { matrix, .. } => build_filtration(&matrix, (cfg.max_dim + 1).max(2), cfg.simplex_budget)?,
        Input::Complex(f) => f,
    })
}

/// Undirected diagrams in dimensions `0..=k` and, if requested, directed
/// diagrams in dimensions 0 (equal to the undirected one) and 1.
pub fn compute_diagrams(f: &FilteredComplex, cfg: &RunConfig) -> Result<Vec<(PersistenceDiagram, DiagramKind)>, CliError> {
    let mut out: Vec<(PersistenceDiagram, DiagramKind)> =
        undirected_diagrams(f, cfg.max_dim)?.into_iter().map(|d| (d, DiagramKind::Undirected)).collect();
    if cfg.directed {
        out.push((out[0].0.clone(), DiagramKind::Directed));
        if cfg.max_dim >= 1 {
            out.push((directed_persistence(f, cfg.circuit_budget)?, DiagramKind::Directed));
        }
    }
    Ok(out)
}

pub fn write_diagrams(diagrams: &[(PersistenceDiagram, DiagramKind)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let v = Value::Array(diagrams.iter().map(|(d, k)| diagram_to_json(d, *k)).collect());
            serde_json::to_string_pretty(&v).expect("json values serialise") + "\n"
        }
        OutputFormat::Csv => diagrams_to_csv(diagrams),
        OutputFormat::Svg => render::render_svg(diagrams),
        OutputFormat::Text => render::render_text(diagrams),
    }
}

pub fn command_compute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let f = filtration(read_input(cfg.input(0)?)?, cfg)?;
    let diagrams = compute_diagrams(&f, cfg)?;
    Ok(Outcome { output: write_diagrams(&diagrams, cfg.output), success: true })
}

/// Stability report for two matrix inputs. Succeeds iff every bottleneck
/// distance is at most twice the correspondence distortion.
pub fn command_compare(cfg: &RunConfig, distortion_bound: Option<Rational>) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let a = format::parse_matrix(cfg.input(0)?)?;
    let b = format::parse_matrix(cfg.input(1)?)?;
    let config = StabilityConfig {
        simplex_budget: cfg.simplex_budget,
        circuit_budget: cfg.circuit_budget,
        map_pair_budget: cfg.map_pair_budget,
        directed: cfg.directed,
    };
    let report = stability_check(&a, &b, cfg.max_dim, distortion_bound, config)?;
    let holds = report.holds();
    let output = match cfg.output {
        OutputFormat::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "dim": r.dimension,
                        "kind": r.kind.as_str(),
                        "bottleneck": match r.bottleneck.finite() {
                            Some(x) => format::rational_to_json(x),
                            None => Value::Null,
                        },
                    })
                })
                .collect();
            let v = json!({
                "correspondence_distortion": format::rational_to_json(&report.distortion),
                "exact": report.exact,
                "bound": format::rational_to_json(&report.bound()),
                "rows": rows,
                "holds": holds,
            });
            serde_json::to_string_pretty(&v).expect("json values serialise") + "\n"
        }
        _ => {
            let mut s = format!(
                "correspondence distortion {}{}\nbound 2*d = {}\n",
                if report.exact { "" } else { "<= " },
                format_rational(&report.distortion),
                format_rational(&report.bound())
            );
            for r in &report.rows {
                s += &format!("Dgm{} {:<10} bottleneck {}\n", r.dimension, r.kind.as_str(), r.bottleneck);
            }
            s += if holds { "inequality holds\n" } else { "INEQUALITY VIOLATED\n" };
            s
        }
    };
    Ok(Outcome { output, success: holds })
}

enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

/// Structural and semiring checks on one input; one line per check.
pub fn command_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let f = filtration(read_input(cfg.input(0)?)?, cfg)?;
    let x = f.complex();
    let top = x.dim().unwrap_or(0);
    let limits = SearchLimits { bound: cfg.bound, budget: cfg.enumeration_budget };
    let mut results: Vec<(String, Status)> = Vec::new();
    let verdict = |ok: bool, why: &str| if ok { Status::Pass } else { Status::Fail(why.into()) };

    results.push(("filtration order is compatible".into(), verdict(f.is_compatible(), "a face enters after its coface")));
    results.push(("complex is closed under faces".into(), verdict(x.is_face_closed(), "missing face")));
    results.push((
        "paired differentials form a chain complex".into(),
        verdict(verify_chain_complex(&x, top), "an identity between the two differentials fails"),
    ));
    let undirected = undirected_diagrams(&f, 1.min(top))?;
    let components = h0_rank(&x);
    results.push((
        "H0 over N matches rational Betti 0".into(),
        verdict(components == undirected[0].infinite_count(), &format!("{components} components")),
    ));
    let circuits = z1_generators_with_budget(&x, cfg.circuit_budget)?;
    let elementary = circuits.iter().all(|c| c.is_cycle() && c.terms().all(|(_, k)| *k == 1u8.into()));
    results.push((format!("{} circuit generators are elementary 1-cycles", circuits.len()), verdict(elementary, "bad generator")));
    for dim in (2..=top).step_by(2) {
        let name = format!("no nonzero {dim}-cycles over N (bound {})", cfg.bound);
        let status = match even_cycles_trivial(&x, dim, limits) {
            Ok(ok) => verdict(ok, "found a cycle"),
            Err(dirhom_core::Error::Budget { .. }) => Status::Skip("enumeration budget".into()),
            Err(e) => return Err(e.into()),
        };
        results.push((name, status));
    }
    if cfg.directed && top >= 1 {
        let directed = directed_persistence(&f, cfg.circuit_budget)?;
        let status = match subbarcode_match(&directed, &undirected[1]) {
            Ok(_) => Status::Pass,
            Err(m) => Status::Fail(format!("{} unmatched directed bars", m.unmatched_directed.len())),
        };
        results.push(("directed Dgm1 is a subbarcode of undirected Dgm1".into(), status));
    }

    let mut output = String::new();
    let mut success = true;
    for (name, status) in results {
        match status {
            Status::Pass => output += &format!("ok    {name}\n"),
            Status::Skip(why) => output += &format!("skip  {name} ({why})\n"),
            Status::Fail(why) => {
                success = false;
                output += &format!("FAIL  {name}: {why}\n");
            }
        }
    }
    Ok(Outcome { output, success })
}

/// Re-renders diagrams read from JSON or CSV.
pub fn command_render(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let path = cfg.input(0)?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let diagrams = if text.trim_start().starts_with(['[', '{']) {
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
        diagrams_from_json(&v)?
    } else {
        diagrams_from_csv(&text)?
    };
    Ok(Outcome { output: write_diagrams(&diagrams, cfg.output), success: true })
}
