//! Command-line surface: derived-graph construction, total coloring,
//! clique-minor certificates, verification, brute-force oracles, and
//! instance generation.
//!
//! Exit codes: 0 valid, 1 invalid artifact, 2 precondition or parse error,
//! 3 size guard or search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use totalgraph::coloring::engine::{weak_tcc_total_coloring, WeakTccError, WeakTccOptions};
use totalgraph::coloring::{verify_total_coloring, ColoringJson, ElementColoring};
use totalgraph::derived::{line_graph, square, subdivision, to_dot, total_graph, total_to_dot, ElementJson, TotalGraph};
use totalgraph::graph::Graph;
use totalgraph::minors::{
    is_total_critical, minor_certificate_from_connectivity, minor_from_critical_delta_plus_2,
    minor_from_critical_delta_plus_3, verify_minor_certificate, CertificateJson, MinorCertificate,
    MinorError,
};
use totalgraph::oracle::{self, OracleError, DEFAULT_MAX_ELEMENTS};

#[derive(Parser)]
#[command(name = "totalgraph", version, about = "Total graphs, total colorings, and clique-minor certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a derived graph (total, line, subdivision, square)
    Derive {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        which: Derived,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Total-color a 5-colorable graph with at most Delta+3 colors
    ColorTotal {
        #[arg(long)]
        input: PathBuf,
        /// JSON file {"vertex_colors": [...]} with a proper coloring in 1..=5
        #[arg(long)]
        external_coloring: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a verified clique-minor certificate over the total graph
    Minor {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: MinorMode,
        /// Connectivity parameter (mode = connectivity)
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring or certificate artifact against a graph
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long, value_enum)]
        kind: ArtifactKind,
    },
    /// Exact brute-force quantities at desk scale
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        quantity: Quantity,
        /// Target total chromatic number (quantity = criticality)
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Generate a named or random graph
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Size parameter (vertex count, or dimension for hypercube)
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Edge probability (random families)
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Derived {
    Total,
    Line,
    Subdivision,
    Square,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MinorMode {
    Connectivity,
    Critical2,
    Critical3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArtifactKind {
    Coloring,
    Certificate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Chi,
    ChiPrime,
    ChiDoublePrime,
    Criticality,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "random-5-partite")]
    Random5Partite,
    Complete,
    Cycle,
    Hypercube,
    Petersen,
}

/// A failed run: message plus process exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Derive {
            input,
            which,
            output,
            format,
        } => cmd_derive(&input, which, output.as_deref(), format),
        Command::ColorTotal {
            input,
            external_coloring,
            output,
        } => cmd_color_total(&input, external_coloring.as_deref(), output.as_deref()),
        Command::Minor {
            input,
            mode,
            k,
            output,
        } => cmd_minor(&input, mode, k, output.as_deref()),
        Command::Verify {
            input,
            artifact,
            kind,
        } => cmd_verify(&input, &artifact, kind),
        Command::Oracle {
            input,
            quantity,
            t,
            max_elements,
        } => cmd_oracle(&input, quantity, t, max_elements),
        Command::Gen {
            family,
            n,
            p,
            seed,
            output,
        } => cmd_gen(family, n, p, seed, output.as_deref()),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| fail(2, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn element_map_comments(t: &TotalGraph) -> String {
    t.element_map_json()
        .iter()
        .enumerate()
        .map(|(idx, el)| match el {
            ElementJson::V { id } => format!("c element {idx} v {id}\n"),
            ElementJson::E { u, v } => format!("c element {idx} e {u} {v}\n"),
        })
        .collect()
}

fn cmd_derive(input: &Path, which: Derived, output: Option<&Path>, format: Format) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let (derived, total): (Graph, Option<TotalGraph>) = match which {
        Derived::Total => {
            let t = total_graph(&g);
            (t.graph().clone(), Some(t))
        }
        Derived::Line => (line_graph(&g), None),
        Derived::Subdivision => (subdivision(&g), None),
        Derived::Square => (square(&g), None),
    };
    let content = match (format, &total) {
        (Format::Text, Some(t)) => format!("{}{}", derived.write(), element_map_comments(t)),
        (Format::Text, None) => derived.write(),
        (Format::Dot, Some(t)) => total_to_dot(t),
        (Format::Dot, None) => to_dot(&derived),
        (Format::Json, total) => {
            let mut value = serde_json::json!({
                "n": derived.n(),
                "edges": derived.edges(),
            });
            if let Some(t) = total {
                value["element_map"] = serde_json::to_value(t.element_map_json()).unwrap();
            }
            format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
        }
    };
    emit(output, &content)
}

#[derive(Deserialize)]
struct VertexColoringJson {
    vertex_colors: Vec<u32>,
}

fn cmd_color_total(input: &Path, external: Option<&Path>, output: Option<&Path>) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let five_coloring = match external {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
            let parsed: VertexColoringJson = serde_json::from_str(&text)
                .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
            Some(parsed.vertex_colors)
        }
        None => None,
    };
    let opts = WeakTccOptions {
        five_coloring,
        ..Default::default()
    };
    let outcome = weak_tcc_total_coloring(&g, &opts).map_err(|e| match e {
        WeakTccError::NotFiveColorable => fail(2, e.to_string()),
        WeakTccError::BudgetExceeded => fail(3, e.to_string()),
        WeakTccError::BadExternalColoring(_) => fail(2, e.to_string()),
        WeakTccError::Engine(_) => fail(2, e.to_string()),
    })?;
    let bound = g.max_degree() as u32 + 3;
    eprintln!(
        "valid: {}; colors used: {}; max color: {} (Delta+3 = {}); conflict fixes: {}; trails: {}",
        outcome.report.valid,
        outcome.report.colors_used,
        outcome.report.max_color,
        bound,
        outcome.fix_invocations,
        outcome.trails.len()
    );
    if !outcome.report.valid || outcome.report.max_color > bound {
        return Err(fail(1, "produced coloring failed validation"));
    }
    let json = outcome.coloring.to_json(&g);
    emit(output, &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()))
}

fn minor_failure(e: MinorError) -> Failure {
    match e {
        MinorError::Oracle(OracleError::SizeGuard { .. }) => fail(3, e.to_string()),
        MinorError::Oracle(OracleError::BudgetExceeded) => fail(3, e.to_string()),
        MinorError::VerificationFailed(_) => fail(1, e.to_string()),
        other => fail(2, other.to_string()),
    }
}

fn cmd_minor(input: &Path, mode: MinorMode, k: usize, output: Option<&Path>) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let cert = match mode {
        MinorMode::Connectivity => minor_certificate_from_connectivity(&g, k),
        MinorMode::Critical2 => minor_from_critical_delta_plus_2(&g),
        MinorMode::Critical3 => minor_from_critical_delta_plus_3(&g, true),
    }
    .map_err(minor_failure)?;
    eprintln!("certificate of order {} ({})", cert.order, cert.provenance);
    let json = cert.to_json(&g);
    emit(output, &format!("{}\n", serde_json::to_string_pretty(&json).unwrap()))
}

fn cmd_verify(input: &Path, artifact: &Path, kind: ArtifactKind) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let text = fs::read_to_string(artifact)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", artifact.display())))?;
    match kind {
        ArtifactKind::Coloring => {
            let json: ColoringJson = serde_json::from_str(&text)
                .map_err(|e| fail(2, format!("{}: {e}", artifact.display())))?;
            let coloring = ElementColoring::from_json(&json, &g).map_err(|e| fail(2, e.to_string()))?;
            let report = verify_total_coloring(&g, &coloring).map_err(|e| fail(2, e.to_string()))?;
            for (a, b) in &report.violations {
                println!("violation: {a:?} and {b:?} share a color");
            }
            println!(
                "coloring: {}; colors used: {}; max color: {}",
                if report.valid { "valid" } else { "invalid" },
                report.colors_used,
                report.max_color
            );
            if report.valid {
                Ok(())
            } else {
                Err(fail(1, format!("{} violations", report.violations.len())))
            }
        }
        ArtifactKind::Certificate => {
            let json: CertificateJson = serde_json::from_str(&text)
                .map_err(|e| fail(2, format!("{}: {e}", artifact.display())))?;
            let cert = MinorCertificate::from_json(&json, &g).map_err(|e| fail(2, e.to_string()))?;
            let t = total_graph(&g);
            let report = verify_minor_certificate(&t, &cert).map_err(|e| fail(2, e.to_string()))?;
            for f in &report.failures {
                println!("failure: {f:?}");
            }
            println!(
                "certificate: {}; order {}",
                if report.ok { "valid" } else { "invalid" },
                cert.order
            );
            if report.ok {
                Ok(())
            } else {
                Err(fail(1, format!("{} failures", report.failures.len())))
            }
        }
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::SizeGuard { .. } => fail(3, format!("too large: {e}")),
        OracleError::BudgetExceeded => fail(3, format!("infeasible within budget: {e}")),
    }
}

fn cmd_oracle(input: &Path, quantity: Quantity, t: Option<u32>, max_elements: usize) -> Result<(), Failure> {
    if max_elements == 0 {
        return Err(fail(2, "--max-elements must be positive"));
    }
    let g = read_graph(input)?;
    match quantity {
        Quantity::Chi => {
            let v = oracle::chi(&g, max_elements).map_err(oracle_failure)?;
            println!("{v}");
        }
        Quantity::ChiPrime => {
            let v = oracle::chi_prime(&g, max_elements).map_err(oracle_failure)?;
            println!("{v}");
        }
        Quantity::ChiDoublePrime => {
            let v = oracle::brute_force_total_chromatic(&g, max_elements).map_err(oracle_failure)?;
            println!("{v}");
        }
        Quantity::Criticality => {
            let t = t.ok_or_else(|| fail(2, "--t is required for criticality"))?;
            let v = is_total_critical(&g, t, max_elements).map_err(oracle_failure)?;
            println!("{v}");
        }
    }
    Ok(())
}

fn cmd_gen(family: Family, n: usize, p: f64, seed: u64, output: Option<&Path>) -> Result<(), Failure> {
    let g = match family {
        Family::Complete => Graph::complete(n),
        Family::Cycle => {
            if n < 3 {
                return Err(fail(2, "a cycle needs n >= 3"));
            }
            Graph::cycle(n)
        }
        Family::Hypercube => {
            if n > 16 {
                return Err(fail(2, "hypercube dimension capped at 16"));
            }
            Graph::hypercube(n as u32)
        }
        Family::Petersen => Graph::petersen(),
        Family::Random5Partite => {
            if !(0.0..=1.0).contains(&p) {
                return Err(fail(2, "p must lie in [0, 1]"));
            }
            Graph::random_5_partite(n, p, seed).0
        }
    };
    emit(output, &g.write())
}
