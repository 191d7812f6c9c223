//! `circaut`: automorphism groups of circulant graphs from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use circaut_core::graph::parse_set_list;
use circaut_core::{CirculantGraph, Error, Method, SearchBudget};

use commands::{CiMode, Options, Output, Status};
use report::ErrorBody;

#[derive(Parser, Debug)]
#[command(name = "circaut", version, about = "Automorphism groups of circulant graphs X(n; S)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest graph the brute-force oracle will search.
    #[arg(long, global = true, default_value_t = 32)]
    budget_vertices: usize,
    /// Largest group the oracle will enumerate element by element.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget_order: u64,
    /// Record wall time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Reserved. Nothing here is random, so this flag is rejected.
    #[arg(long, global = true)]
    seed_less: bool,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Connection set as a comma list; the empty string is the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Aut(X(n; S)).
    Aut {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "auto", value_parser = Method::from_str)]
        method: Method,
        /// Compare with the brute-force oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Run the structural predicates on X(n; S).
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// CI status of Z_n, or of one graph when --set is given.
    Ci {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Lookup)]
        mode: ModeArg,
    },
    /// Decide whether X(n; S) and X(n; T) are isomorphic.
    Iso {
        #[command(flatten)]
        graph: GraphArgs,
        /// The second connection set.
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Solve every "n;s1,s2,..." line of a file, one JSON record per line.
    Batch {
        path: PathBuf,
        #[arg(long, default_value = "auto", value_parser = Method::from_str)]
        method: Method,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Lookup,
    Exhaustive,
    Conjugacy,
}

impl From<ModeArg> for CiMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Lookup => CiMode::Lookup,
            ModeArg::Exhaustive => CiMode::Exhaustive,
            ModeArg::Conjugacy => CiMode::Conjugacy,
        }
    }
}

fn graph(n: usize, set: &str) -> Result<CirculantGraph, Error> {
    let set = parse_set_list(set, 1, 0)?;
    CirculantGraph::undirected(n, &set)
}

fn exit(status: Status) -> ExitCode {
    ExitCode::from(status as u8)
}

fn fail(e: &Error, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::json!({ "error": ErrorBody::from(e) }));
    } else {
        eprintln!("error: {e}");
    }
    exit(commands::status_of(e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Status::InputError } else { Status::Success };
            let _ = e.print();
            return exit(code);
        }
    };
    let json = cli.common.json;
    if cli.common.seed_less {
        eprintln!("error: --seed-less is reserved; no computation here uses randomness");
        return exit(Status::InputError);
    }
    let budget = match SearchBudget::new(cli.common.budget_vertices, cli.common.budget_order, None) {
        Ok(b) => b,
        Err(e) => return fail(&e, json),
    };
    let options = Options {
        json,
        timing: cli.common.timing,
        budget,
    };
    let result: Result<Output, Error> = match cli.command {
        Command::Aut { graph: g, method, verify } => {
            graph(g.n, &g.set).and_then(|x| commands::cmd_aut(&x, method, verify, &options))
        }
        Command::Classify { graph: g } => graph(g.n, &g.set).and_then(|x| commands::cmd_classify(&x, &options)),
        Command::Ci { n, set, mode } => set
            .map(|s| graph(n, &s))
            .transpose()
            .and_then(|x| commands::cmd_ci(n, x.as_ref(), mode.into(), &options)),
        Command::Iso { graph: g, other } => graph(g.n, &g.set)
            .and_then(|x| graph(g.n, &other).map(|y| (x, y)))
            .and_then(|(x, y)| commands::cmd_iso(&x, &y, &options)),
        Command::Batch { path, method, verify } => {
            let contents = match std::fs::read_to_string(&path) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return exit(Status::InputError);
                }
            };
            let (records, status) = commands::cmd_batch(&contents, method, verify, &options);
            for r in records {
                println!("{r}");
            }
            return exit(status);
        }
    };
    match result {
        Ok(out) => {
            if options.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            if out.status == Status::Mismatch && !options.json {
                eprintln!("error: result disagrees with the reference computation");
            }
            exit(out.status)
        }
        Err(e) => fail(&e, json),
    }
}
