use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropweier::commands::{self, Format};
use tropweier::io::{load_divisor, load_graph, parse_point};
use tropweier::CliError;
use tropweier_core::equidist::ExperimentConfig;
use tropweier_core::SweepConfig;

const MAX_REFINE_VAR: &str = "TROPWEIER_MAX_REFINE";

#[derive(Parser)]
#[command(name = "tropweier", version, about = "Exact divisor theory and Weierstrass loci on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file (JSON).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, edges, genus and bridges.
    Info {
        #[command(flatten)]
        graph: GraphArg,
        /// Print the validated graph in file format instead.
        #[arg(long)]
        emit_normalized: bool,
    },
    /// Canonical measure per edge and its total mass.
    Measure {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Effective resistance between two points.
    Resistance {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Voltage function for a unit current from source to sink.
    Voltage {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        source: String,
        #[arg(long)]
        sink: String,
    },
    /// Reduced form of a divisor with respect to a base point.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        basepoint: String,
    },
    /// Rank of a divisor.
    Rank {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Weierstrass locus of a divisor.
    Weierstrass {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        /// Compare against the mesh oracle at this resolution.
        #[arg(long, value_name = "R")]
        mesh_check: Option<u32>,
    },
    /// Weierstrass counts of random generic divisors against the measure.
    Equidistribute {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        denom: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

fn sweep_config() -> Result<SweepConfig, CliError> {
    match std::env::var(MAX_REFINE_VAR) {
        Err(_) => Ok(SweepConfig::default()),
        Ok(s) => s
            .trim()
            .parse()
            .map(|max_refine| SweepConfig { max_refine })
            .map_err(|_| CliError::Usage(format!("{MAX_REFINE_VAR} must be a non-negative integer, got {s:?}"))),
    }
}

fn run(command: Command) -> Result<String, CliError> {
    let cfg = sweep_config()?;
    Ok(match command {
        Command::Info { graph, emit_normalized } => {
            let g = load_graph(&graph.graph)?;
            commands::pretty(&if emit_normalized { commands::normalized(&g) } else { commands::info(&g) })
        }
        Command::Measure { graph, format } => commands::measure(&load_graph(&graph.graph)?, format.into()),
        Command::Resistance { graph, from, to } => {
            let g = load_graph(&graph.graph)?;
            commands::pretty(&commands::resistance_between(&g, &parse_point(&g, &from)?, &parse_point(&g, &to)?))
        }
        Command::Voltage { graph, source, sink } => {
            let g = load_graph(&graph.graph)?;
            commands::pretty(&commands::voltage(&g, &parse_point(&g, &source)?, &parse_point(&g, &sink)?))
        }
        Command::Reduce { graph, divisor, basepoint } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, &divisor)?;
            commands::pretty(&commands::reduce_at(&g, &d, &parse_point(&g, &basepoint)?))
        }
        Command::Rank { graph, divisor } => {
            let g = load_graph(&graph.graph)?;
            commands::pretty(&commands::rank_of(&g, &load_divisor(&g, &divisor)?))
        }
        Command::Weierstrass { graph, divisor, mesh_check } => {
            let g = load_graph(&graph.graph)?;
            let d = load_divisor(&g, &divisor)?;
            commands::pretty(&commands::weierstrass(&g, &d, &cfg, mesh_check)?)
        }
        Command::Equidistribute { graph, degrees, seed, denom, out, format } => {
            let g = load_graph(&graph.graph)?;
            let mut exp = ExperimentConfig::new(degrees, seed, denom);
            exp.sweep = cfg;
            let text = commands::equidistribute(&g, &exp, format.into())?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                    String::new()
                }
                None => text,
            }
        }
    })
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.kind().exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
