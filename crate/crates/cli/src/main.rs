//! `polysparse`: sparsity and coupling-unknown counts for polytopal finite
//! element methods on periodic meshes.
//!
//! Exit codes: 0 success, 1 closed-form/oracle mismatch in `verify`, 2 bad
//! arguments, 3 invalid mesh, 4 write failure. Diagnostics go to stderr;
//! data goes to stdout or `--out`.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polysparse::builtin::{builtin, BuiltinMeshId};
use polysparse::complex::{parse_mesh, PeriodicCellComplex};
use polysparse::fixtures::{reference_fixture, FixtureVariant};
use polysparse::formula::{metric_poly, Metric};
use polysparse::method::{lookup, registry, Method};
use polysparse::oracle::{coupling_pattern, stability_check, write_matrix_market};
use polysparse::report::{build_table, render_poly, render_table, render_topology, Format};
use polysparse::topology::{classify, TopologyStats, DEFAULT_PROBE};
use polysparse::torus::tile;
use polysparse::verify::{render_verify, verify, VerifyOptions};

const EXIT_ORACLE_MISMATCH: u8 = 1;
const EXIT_BAD_ARGS: u8 = 2;
const EXIT_INVALID_MESH: u8 = 3;
const EXIT_WRITE_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "polysparse",
    version,
    about = "Coupling unknowns and matrix sparsity of polytopal FEM discretizations on periodic meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// Builtin mesh (triangle2d, quad2d, hexagon2d, tet3d, hex3d, oct3d,
    /// truncoct3d) or path to a mesh file
    #[arg(long)]
    mesh: String,

    /// Output format
    #[arg(long, default_value = "md")]
    format: String,

    /// Topology numbers to use: derived from the mesh, or the printed /
    /// implied reference fixtures (builtin meshes only)
    #[arg(long, default_value = "derived")]
    fixture: String,

    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Topology classes of a mesh: neighbor counts and per-element ratios
    Topology {
        #[command(flatten)]
        shared: Shared,
    },
    /// Closed-form polynomial in k for one method and metric
    Poly {
        #[command(flatten)]
        shared: Shared,
        /// DG, TDG2, TDG1, HDG, HHO or VEM
        #[arg(long)]
        method: String,
        /// ncdof, nnze or ndof
        #[arg(long)]
        metric: String,
    },
    /// Table of per-element values over a degree range
    Table {
        #[command(flatten)]
        shared: Shared,
        /// Comma-separated method list; defaults to all six
        #[arg(long, value_delimiter = ',')]
        methods: Vec<String>,
        /// ncdof, nnze or ndof
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 1)]
        k_min: i64,
        #[arg(long, default_value_t = 10)]
        k_max: i64,
        /// Round to one decimal place (half up) instead of exact rationals
        #[arg(long)]
        decimal: bool,
    },
    /// Invariant suite, oracle-vs-formula equivalence and reference errata
    Verify {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value_t = 1)]
        k_min: i64,
        #[arg(long, default_value_t = 10)]
        k_max: i64,
        /// Torus cells per axis for the oracle
        #[arg(long, default_value_t = 3)]
        tiling: i64,
    },
    /// Export a coupling pattern as a Matrix Market file
    ExportPattern {
        #[command(flatten)]
        shared: Shared,
        /// DG, TDG2, TDG1, HDG, HHO or VEM
        #[arg(long)]
        method: String,
        /// Polynomial degree
        #[arg(long)]
        k: i64,
        /// Torus cells per axis
        #[arg(long, default_value_t = 3)]
        tiling: i64,
        /// Export even if the tiling fails the wrap-around stability check
        #[arg(long)]
        force: bool,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl fmt::Display) -> Self {
        CliError {
            code,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("polysparse: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Topology { shared } => {
            let format = parse_format(&shared.format)?;
            let stats = resolve_stats(&shared)?;
            emit(&shared.out, render_topology(&stats, format))
        }
        Command::Poly {
            shared,
            method,
            metric,
        } => {
            let format = parse_format(&shared.format)?;
            let method = parse_method(&method)?;
            let metric = parse_metric(&metric)?;
            let stats = resolve_stats(&shared)?;
            let poly =
                metric_poly(method, &stats, metric).map_err(|e| CliError::new(EXIT_BAD_ARGS, e))?;
            emit(
                &shared.out,
                render_poly(&stats, method, metric, &poly, format),
            )
        }
        Command::Table {
            shared,
            methods,
            metric,
            k_min,
            k_max,
            decimal,
        } => {
            let format = parse_format(&shared.format)?;
            let metric = parse_metric(&metric)?;
            if !(1..=50).contains(&k_min) || !(1..=50).contains(&k_max) || k_min > k_max {
                return Err(CliError::new(
                    EXIT_BAD_ARGS,
                    format!("degree range {k_min}..{k_max} must lie within 1..50"),
                ));
            }
            let methods = parse_methods(&methods)?;
            let stats = resolve_stats(&shared)?;
            let table = build_table(&stats, &methods, metric, k_min, k_max, decimal)
                .map_err(|e| CliError::new(EXIT_BAD_ARGS, e))?;
            emit(&shared.out, render_table(&table, format))
        }
        Command::Verify {
            shared,
            k_min,
            k_max,
            tiling,
        } => {
            let format = parse_format(&shared.format)?;
            if k_min < 1 || k_min > k_max {
                return Err(CliError::new(
                    EXIT_BAD_ARGS,
                    format!("degree range {k_min}..{k_max} is invalid"),
                ));
            }
            if tiling < 2 {
                return Err(CliError::new(
                    EXIT_BAD_ARGS,
                    "verify needs a tiling of at least 2 per axis",
                ));
            }
            let (complex, builtin_id) = resolve_mesh(&shared.mesh)?;
            let opts = VerifyOptions {
                k_min,
                k_max,
                tiling,
                probe: DEFAULT_PROBE,
            };
            let report = verify(&complex, builtin_id, opts)
                .map_err(|e| CliError::new(EXIT_INVALID_MESH, e))?;
            emit(&shared.out, render_verify(&report, format))?;
            if !report.formula_matches_oracle() {
                return Err(CliError::new(
                    EXIT_ORACLE_MISMATCH,
                    "closed-form counts do not match the oracle (see report)",
                ));
            }
            Ok(())
        }
        Command::ExportPattern {
            shared,
            method,
            k,
            tiling,
            force,
        } => {
            let method = parse_method(&method)?;
            if k < 1 {
                return Err(CliError::new(
                    EXIT_BAD_ARGS,
                    format!("degree k must be >= 1, got {k}"),
                ));
            }
            if tiling < 1 {
                return Err(CliError::new(EXIT_BAD_ARGS, "tiling must be >= 1"));
            }
            let out = shared.out.as_ref().ok_or_else(|| {
                CliError::new(EXIT_BAD_ARGS, "export-pattern requires --out <path>")
            })?;
            let (complex, _) = resolve_mesh(&shared.mesh)?;
            let stability = stability_check(&complex, method, k, tiling, tiling + 1)
                .map_err(|e| CliError::new(EXIT_INVALID_MESH, e))?;
            if !stability.passed() {
                eprintln!(
                    "polysparse: warning: stability check failed (nnze/element {} on tiling {} vs {} on tiling {})",
                    stability.samples[0].1,
                    stability.samples[0].0,
                    stability.samples[1].1,
                    stability.samples[1].0
                );
                if !force {
                    return Err(CliError::new(
                        EXIT_BAD_ARGS,
                        "tiling too small for a faithful pattern; pass --force to export anyway",
                    ));
                }
            }
            let torus = tile(&complex, &vec![tiling; complex.dimension])
                .map_err(|e| CliError::new(EXIT_INVALID_MESH, e))?;
            let pattern =
                coupling_pattern(&torus, method, k).map_err(|e| CliError::new(EXIT_BAD_ARGS, e))?;
            let mut buffer = Vec::new();
            write_matrix_market(&pattern, &mut buffer)
                .map_err(|e| CliError::new(EXIT_WRITE_FAILURE, e))?;
            fs::write(out, &buffer).map_err(|e| {
                CliError::new(EXIT_WRITE_FAILURE, format!("{}: {e}", out.display()))
            })?;
            println!("{} {} {}", pattern.ndofs(), pattern.ndofs(), pattern.nnz());
            Ok(())
        }
    }
}

fn parse_format(text: &str) -> Result<Format, CliError> {
    text.parse()
        .map_err(|e: String| CliError::new(EXIT_BAD_ARGS, e))
}

fn parse_metric(text: &str) -> Result<Metric, CliError> {
    text.parse()
        .map_err(|e: String| CliError::new(EXIT_BAD_ARGS, e))
}

fn parse_method(name: &str) -> Result<&'static dyn Method, CliError> {
    lookup(name).ok_or_else(|| {
        CliError::new(
            EXIT_BAD_ARGS,
            format!("unknown method `{name}` (expected DG, TDG2, TDG1, HDG, HHO or VEM)"),
        )
    })
}

fn parse_methods(names: &[String]) -> Result<Vec<&'static dyn Method>, CliError> {
    if names.is_empty() {
        return Ok(registry().into_iter().collect());
    }
    names.iter().map(|n| parse_method(n)).collect()
}

/// Resolves `--mesh` to a complex: builtin name first, then file path.
fn resolve_mesh(mesh_arg: &str) -> Result<(PeriodicCellComplex, Option<BuiltinMeshId>), CliError> {
    if let Ok(id) = mesh_arg.parse::<BuiltinMeshId>() {
        return Ok((builtin(id), Some(id)));
    }
    let text = fs::read_to_string(mesh_arg)
        .map_err(|e| CliError::new(EXIT_INVALID_MESH, format!("cannot read `{mesh_arg}`: {e}")))?;
    let complex = parse_mesh(&text)
        .map_err(|e| CliError::new(EXIT_INVALID_MESH, format!("{mesh_arg}: {e}")))?;
    let report = complex.validate();
    if !report.passed() {
        let failures: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(CliError::new(
            EXIT_INVALID_MESH,
            format!("{mesh_arg} failed validation: {}", failures.join("; ")),
        ));
    }
    Ok((complex, None))
}

/// Topology statistics per the `--fixture` flag.
fn resolve_stats(shared: &Shared) -> Result<TopologyStats, CliError> {
    let (complex, builtin_id) = resolve_mesh(&shared.mesh)?;
    match shared.fixture.to_ascii_lowercase().as_str() {
        "derived" => {
            classify(&complex, DEFAULT_PROBE).map_err(|e| CliError::new(EXIT_INVALID_MESH, e))
        }
        "printed" | "implied" => {
            let id = builtin_id.ok_or_else(|| {
                CliError::new(
                    EXIT_BAD_ARGS,
                    "reference fixtures exist only for builtin meshes",
                )
            })?;
            let variant = if shared.fixture.eq_ignore_ascii_case("printed") {
                FixtureVariant::Printed
            } else {
                FixtureVariant::Implied
            };
            Ok(reference_fixture(id, variant))
        }
        other => Err(CliError::new(
            EXIT_BAD_ARGS,
            format!("unknown fixture `{other}` (expected derived, printed or implied)"),
        )),
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::new(EXIT_WRITE_FAILURE, format!("{}: {e}", path.display()))),
    }
}
