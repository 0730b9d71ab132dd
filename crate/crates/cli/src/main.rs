//! `qflow`: validate quiver representations and compute their persistence,
//! preradical values, homology of filtrations, and information flow.

mod commands;
mod error;
mod expr;
mod format;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qflow_core::quiver::DEFAULT_PATH_CAP;
use serde_json::Map;

use crate::commands::{FiltrationQuery, Globals, Input, Outcome};
use crate::error::CliError;
use crate::report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "qflow", version, about = "Persistence and preradicals of commutative quiver representations over GF(p)")]
struct Cli {
    /// Compute over GF(p) instead of the field declared in the file.
    #[arg(long, global = true, value_name = "P")]
    field_override: Option<u64>,

    /// Allow --field-override to differ from the file; entries are reduced mod P.
    #[arg(long, global = true)]
    force: bool,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of paths enumerated between two vertices.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_PATH_CAP)]
    path_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check structure and commutativity of a representation file.
    Validate { path: PathBuf },

    /// Limit, colimit and persistence of a commutative representation.
    Persistence {
        path: PathBuf,
        /// Also compute α on the extended diagram and require equality.
        #[arg(long)]
        extended: bool,
        /// Persistence carried by a subset of the sources.
        #[arg(long, value_delimiter = ',', value_name = "S1,S2,...")]
        sources: Option<Vec<String>>,
    },

    /// Evaluate a preradical expression.
    Prerad {
        path: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long, value_name = "VERTEX")]
        at: String,
    },

    /// Degree-k homology of every complex in a filtration file.
    Homology {
        path: PathBuf,
        #[arg(long = "k", value_name = "K")]
        k: usize,
    },

    /// Persistence module of a graph filtration and queries on it.
    Filtration {
        path: PathBuf,
        #[arg(long = "k", value_name = "K")]
        k: usize,
        #[command(subcommand)]
        query: Query,
    },

    /// Information received at a vertex from an assignment on its predecessors.
    Flow {
        path: PathBuf,
        #[arg(long, value_name = "VERTEX")]
        target: String,
        /// JSON object: vertex → "full" | "zero" | rows | {"expr": "..."}.
        #[arg(long, value_name = "FILE", required_unless_present = "exprs")]
        assign: Option<PathBuf>,
        /// `<vertex>=<expression>`, repeatable.
        #[arg(long = "expr", value_name = "VERTEX=EXPR")]
        exprs: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum Query {
    /// Emit the derived representation file (to stdout or --output).
    Module {
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Standard persistence on a chain filtration.
    Std { i: usize, p: usize },
    /// Rank invariant on a grid filtration.
    Rank { u: String, v: String },
    /// Dimension of the persistent homology group.
    Group { j: usize, t: usize },
}

fn run(cli: &Cli) -> (Option<String>, Result<Outcome, CliError>) {
    let g = Globals {
        field_override: cli.field_override,
        force: cli.force,
        path_cap: cli.path_cap,
    };
    let path = match &cli.command {
        Command::Validate { path }
        | Command::Persistence { path, .. }
        | Command::Prerad { path, .. }
        | Command::Homology { path, .. }
        | Command::Filtration { path, .. }
        | Command::Flow { path, .. } => path,
    };
    let input = match commands::read_input(path) {
        Ok(i) => i,
        Err(e) => return (None, Err(e)),
    };
    let digest = Some(input.digest.clone());
    let result = dispatch(cli, &input, g);
    (digest, result)
}

fn dispatch(cli: &Cli, input: &Input, g: Globals) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { .. } => commands::validate(input, g),
        Command::Persistence { extended, sources, .. } => commands::persistence(input, g, *extended, sources.as_deref()),
        Command::Prerad { expr, at, .. } => commands::prerad(input, g, expr, at),
        Command::Homology { k, .. } => commands::homology_cmd(input, g, *k),
        Command::Filtration { k, query, .. } => {
            let q = match query {
                Query::Module { output } => FiltrationQuery::Module { output: output.as_deref() },
                Query::Std { i, p } => FiltrationQuery::Std { i: *i, p: *p },
                Query::Rank { u, v } => FiltrationQuery::Rank { u, v },
                Query::Group { j, t } => FiltrationQuery::Group { j: *j, t: *t },
            };
            commands::filtration(input, g, *k, q)
        }
        Command::Flow { target, assign, exprs, .. } => {
            let assign = assign.as_deref().map(commands::read_input).transpose()?;
            commands::flow(input, g, target, assign.as_ref(), exprs)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let command = std::iter::once("qflow").chain(argv.iter().skip(1).map(String::as_str)).collect::<Vec<_>>().join(" ");
    let (digest, result) = run(&cli);
    let report = match result {
        Ok(Outcome {
            document: Some(doc), ..
        }) => {
            print!("{doc}");
            return ExitCode::SUCCESS;
        }
        Ok(Outcome { payload, failure, .. }) => Report {
            command,
            input_sha256: digest,
            payload,
            status: if failure.is_some() { Status::Failed } else { Status::Ok },
            message: failure,
        },
        Err(e) => Report {
            command,
            input_sha256: digest,
            payload: Map::new(),
            status: Status::Error(e.exit_code()),
            message: Some(e.to_string()),
        },
    };
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if let Some(m) = report.message.as_deref().filter(|_| report.status != Status::Ok) {
        eprintln!("qflow: {m}");
    }
    ExitCode::from(report.status.exit_code() as u8)
}
