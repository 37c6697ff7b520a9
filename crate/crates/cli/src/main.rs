//! `snarklab`: construct, measure, transform and scan cubic graphs.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 cap exceeded,
//! 4 infeasible (no 2-factor), 5 internal assertion failure.

mod input;
mod measure;
mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use snarklab_core::composed::{
    construct_paper_graph, construct_variant_gprime, write_pole_file, PoleFile,
};
use snarklab_core::format::{write_edgelist, write_graph6};
use snarklab_core::paper::verify_paper;
use snarklab_core::twopole::{contract_triangle, expand_vertex_to_triangle, petersen};
use snarklab_core::{Error, Graph, SeriesBlock};

use input::{load, Input, InputFormat};
use measure::{Caps, Method, Status, Wanted};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::CapExceeded { .. }) => 3,
            CliError::Core(Error::Infeasible(_)) => 4,
            CliError::Core(Error::WitnessMismatch(_)) | CliError::Assertion(_) => 5,
            CliError::Core(_) | CliError::Io(_) | CliError::Usage(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "snarklab",
    version,
    about = "Resistance, weak oddness and oddness of cubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph or 2-pole.
    Construct(ConstructArgs),
    /// Compute resistance, weak oddness and oddness.
    Measure(MeasureArgs),
    /// Expand a vertex into a triangle or contract a triangle.
    Transform(TransformArgs),
    /// Measure every graph in a file of graph6 lines and write CSV.
    Scan(ScanArgs),
    /// Rebuild the H2 construction and check its known values.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Name {
    Petersen,
    PoleP,
    H,
    H2,
    PaperG,
    Gprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    G6,
    Edgelist,
    Pole,
}

#[derive(Args)]
struct ConstructArgs {
    name: Name,
    /// Number of H copies per block (h2, paper-g).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..))]
    k: u16,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutFormat>,
}

#[derive(Args)]
struct CapArgs {
    /// Largest cycle-space dimension enumerated by brute force.
    #[arg(long, default_value_t = Caps::default().dimension)]
    dimension_cap: usize,
    /// Largest order for brute-force oddness.
    #[arg(long, default_value_t = Caps::default().oddness_order)]
    max_order: usize,
    /// Largest deletion set tried for brute-force resistance (0 = no limit).
    #[arg(long, default_value_t = Caps::default().rho_budget.unwrap())]
    rho_budget: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            dimension: self.dimension_cap,
            oddness_order: self.max_order,
            rho_budget: (self.rho_budget > 0).then_some(self.rho_budget),
        }
    }
}

#[derive(Args)]
struct MeasureArgs {
    input: PathBuf,
    #[arg(long)]
    rho: bool,
    #[arg(long)]
    weak: bool,
    #[arg(long)]
    oddness: bool,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[command(flatten)]
    caps: CapArgs,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Report all timings as 0 so output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct TransformArgs {
    input: PathBuf,
    /// Vertex to expand, as `N` or `uN`.
    #[arg(
        long,
        conflicts_with = "contract_triangle",
        required_unless_present = "contract_triangle"
    )]
    expand_triangle: Option<String>,
    /// Triangle to contract, as `a,b,c`.
    #[arg(long)]
    contract_triangle: Option<String>,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutFormat>,
}

#[derive(Args)]
struct ScanArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Keep only rows where oddness differs from weak oddness.
    #[arg(long)]
    only_gaps: bool,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_timing: bool,
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn render(input: &Input, format: OutFormat) -> Result<String, CliError> {
    let graph_text = |g: &Graph| -> Result<String, CliError> {
        Ok(match format {
            OutFormat::G6 => write_graph6(g)? + "\n",
            OutFormat::Edgelist => write_edgelist(g),
            OutFormat::Pole => {
                return Err(CliError::Usage(
                    "a plain graph cannot be written in pole format".into(),
                ))
            }
        })
    };
    match input {
        Input::Graph(g) => graph_text(g),
        Input::Composed(c) => match format {
            OutFormat::Pole => Ok(write_pole_file(&PoleFile::Composed(c.clone()))?),
            _ => graph_text(&c.flatten()?.graph),
        },
        Input::Pole(PoleFile::TwoPole(block)) => match format {
            OutFormat::Pole => Ok(write_pole_file(&PoleFile::TwoPole(block.clone()))?),
            _ => graph_text(&block.to_pole()?.graph),
        },
        Input::Pole(PoleFile::Composed(c)) => render(&Input::Composed(c.clone()), format),
    }
}

fn construct(args: &ConstructArgs) -> Result<(), CliError> {
    let k = args.k as usize;
    let (object, default) = match args.name {
        Name::Petersen => (Input::Graph(petersen()), OutFormat::G6),
        Name::PoleP => (
            Input::Pole(PoleFile::TwoPole(SeriesBlock::pole_p())),
            OutFormat::Pole,
        ),
        Name::H => (
            Input::Pole(PoleFile::TwoPole(SeriesBlock::h())),
            OutFormat::Pole,
        ),
        Name::H2 => (
            Input::Pole(PoleFile::TwoPole(SeriesBlock::h2(k)?)),
            OutFormat::Pole,
        ),
        Name::PaperG => (Input::Composed(construct_paper_graph(k)?), OutFormat::Pole),
        Name::Gprime => (
            Input::Composed(construct_variant_gprime()?),
            OutFormat::Pole,
        ),
    };
    emit(
        args.output.as_deref(),
        &render(&object, args.format.unwrap_or(default))?,
    )
}

fn measure(args: &MeasureArgs) -> Result<ExitCode, CliError> {
    let name = args.input.display().to_string();
    let mut wanted = Wanted {
        rho: args.rho,
        weak: args.weak,
        oddness: args.oddness,
    };
    if !(wanted.rho || wanted.weak || wanted.oddness) {
        wanted = Wanted {
            rho: true,
            weak: true,
            oddness: true,
        };
    }
    let caps = args.caps.caps();
    let mut result = match load(&args.input, args.input_format)? {
        Input::Graph(g) => match args.method {
            Method::Decomposition => {
                return Err(CliError::Usage(
                    "decomposition needs a pole-format input describing the blocks".into(),
                ))
            }
            Method::Auto | Method::Bruteforce => measure::brute_force(&name, &g, wanted, &caps)?,
        },
        Input::Composed(c) => {
            let flat = c.flatten()?;
            let brute = match args.method {
                Method::Bruteforce => true,
                Method::Decomposition => false,
                Method::Auto => measure::check_caps(&flat.graph, wanted, &caps).is_ok(),
            };
            if brute {
                measure::brute_force(&name, &flat.graph, wanted, &caps)?
            } else {
                measure::decomposition(&name, &c, wanted)?
            }
        }
        Input::Pole(_) => {
            return Err(CliError::Usage(
                "a 2-pole is not a cubic graph; measure a composed graph".into(),
            ))
        }
    };
    result.check_invariants()?;
    if args.no_timing {
        result.clear_timing();
    }
    let text = if args.json {
        serde_json::to_string_pretty(&result).map_err(|e| CliError::Io(e.to_string()))? + "\n"
    } else {
        measure::render_table(&result)
    };
    emit(None, &text)?;
    let infeasible = result
        .oddness
        .as_ref()
        .is_some_and(|m| m.status == Status::No2Factor);
    Ok(if infeasible {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_vertex(s: &str) -> Result<usize, CliError> {
    let digits = s.trim().strip_prefix('u').unwrap_or(s.trim());
    digits
        .parse()
        .map_err(|_| CliError::Usage(format!("not a vertex: {s:?}")))
}

fn transform(args: &TransformArgs) -> Result<(), CliError> {
    let input = load(&args.input, args.input_format)?;
    let default = match (&input, args.input_format) {
        (Input::Graph(_), Some(InputFormat::G6)) => OutFormat::G6,
        (Input::Graph(_), _) if args.input.extension().is_some_and(|e| e == "g6") => OutFormat::G6,
        (Input::Graph(_), _) => OutFormat::Edgelist,
        _ => OutFormat::Pole,
    };
    let result = match (&input, &args.expand_triangle, &args.contract_triangle) {
        (Input::Graph(g), Some(v), _) => {
            Input::Graph(expand_vertex_to_triangle(g, parse_vertex(v)?)?.0)
        }
        (Input::Composed(c), Some(v), _) => {
            Input::Composed(c.expand_vertex_to_triangle(parse_vertex(v)?)?.0)
        }
        (Input::Graph(g), None, Some(tri)) => {
            let vs: Vec<usize> = tri.split(',').map(parse_vertex).collect::<Result<_, _>>()?;
            let tri: [usize; 3] = vs
                .try_into()
                .map_err(|_| CliError::Usage("--contract-triangle takes three vertices".into()))?;
            Input::Graph(contract_triangle(g, tri)?.0)
        }
        (Input::Composed(_), None, Some(_)) => {
            return Err(CliError::Usage(
                "contract a triangle on the flattened graph (construct with --format edgelist)"
                    .into(),
            ))
        }
        _ => {
            return Err(CliError::Usage(
                "transform needs a cubic graph or composed graph".into(),
            ))
        }
    };
    emit(
        args.output.as_deref(),
        &render(&result, args.format.unwrap_or(default))?,
    )
}

fn run_scan(args: &ScanArgs) -> Result<(), CliError> {
    let text = input::read_text(&args.input)?;
    let caps = args.caps.caps();
    let threads = scan::threads_from_env();
    match &args.output {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            scan::scan(
                &text,
                &caps,
                args.only_gaps,
                !args.no_timing,
                threads,
                io::BufWriter::new(file),
            )
        }
        None => scan::scan(
            &text,
            &caps,
            args.only_gaps,
            !args.no_timing,
            threads,
            io::stdout().lock(),
        ),
    }
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let mut report = verify_paper();
    if args.no_timing {
        report.rows.iter_mut().for_each(|r| r.millis = 0);
    }
    if args.json {
        emit(
            None,
            &(serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?
                + "\n"),
        )?;
    } else {
        let width = report.rows.iter().map(|r| r.name.len()).max().unwrap_or(5);
        let mut out = format!(
            "{:<width$}  {:<14}{:<14}{:<8}{}\n",
            "check", "expected", "actual", "result", "millis"
        );
        for r in &report.rows {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{:<width$}  {:<14}{:<14}{:<8}{}\n",
                r.name, r.expected, r.actual, verdict, r.millis
            ));
        }
        emit(None, &out)?;
    }
    let failed: Vec<&str> = report
        .rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed: {}", failed.join("; "));
        Ok(ExitCode::from(5))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Construct(a) => construct(a).map(|_| ExitCode::SUCCESS),
        Command::Measure(a) => measure(a),
        Command::Transform(a) => transform(a).map(|_| ExitCode::SUCCESS),
        Command::Scan(a) => run_scan(a).map(|_| ExitCode::SUCCESS),
        Command::VerifyPaper(a) => run_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
