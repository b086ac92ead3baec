//! perfdiv: perfect-divisibility toolkit over graph6 streams.
//!
//! Reads one graph6 word per line (optionally followed by a tab and a JSON
//! weight array), runs the chosen check on every line, and emits one JSON
//! record per line in input order. Exit code: 0 all properties hold, 1 a
//! property was violated, 2 bad input, 3 a resource cap was hit; the worst
//! class present wins, ordered 2 > 3 > 1 > 0.

mod process;
mod records;
mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use perfdiv_core::graph6::from_graph6;

use crate::process::{minimal_summary, process_line, Cmd, Opts};
use crate::records::{Record, Severity};

#[derive(Parser)]
#[command(
    name = "perfdiv",
    about = "Exact perfection, clique, and perfect-divisibility checks on small graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input file of graph6 lines, or - for stdin
    #[arg(default_value = "-")]
    input: String,
    /// Comma-separated weights applied to every graph without a weight column
    #[arg(long)]
    weights: Option<String>,
    /// Largest weight value in sweeps
    #[arg(long, default_value_t = 3)]
    wmax: u64,
    /// Weight functions per graph in sampled sweeps; 0 sweeps exhaustively
    #[arg(long, default_value_t = 0)]
    samples: u64,
    /// Base seed; line i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the operation's vertex cap
    #[arg(long)]
    cap_n: Option<usize>,
    /// Worker threads; 1 runs serially. Output order is input order either way
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Lower weights one unit at a time during division transport
    #[arg(long)]
    unit_steps: bool,
    /// Output file, or - for stdout
    #[arg(long, default_value = "-")]
    output: String,
    /// Record per-line wall time; off by default so reruns are byte-identical
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum weight of a clique, with the lexicographically least witness
    Omega(Common),
    /// Chromatic number, with a witness coloring
    Chi(Common),
    /// Perfection via odd holes and odd antiholes
    IsPerfect(Common),
    /// All homogeneous sets, smallest first
    HomSets(Common),
    /// Replace a vertex by a whole graph
    Substitute {
        #[command(flatten)]
        common: Common,
        /// Vertex to replace
        #[arg(long)]
        vertex: usize,
        /// graph6 word of the replacement graph
        #[arg(long = "with")]
        with_word: String,
    },
    /// Find a perfect division of the whole vertex set
    Divide(Common),
    /// Perfect divisibility for the given weights
    CheckDivisible(Common),
    /// Weighted divisibility must match all-ones divisibility, constructively
    CheckEquivalence(Common),
    /// Scan for minimal non-divisible graphs; they must have no homogeneous sets
    FindMinimal(Common),
    /// Re-check records produced by the other subcommands
    Verify(Common),
}

impl Command {
    fn split(self) -> Result<(Common, Cmd), String> {
        Ok(match self {
            Command::Omega(c) => (c, Cmd::Omega),
            Command::Chi(c) => (c, Cmd::Chi),
            Command::IsPerfect(c) => (c, Cmd::IsPerfect),
            Command::HomSets(c) => (c, Cmd::HomSets),
            Command::Substitute {
                common,
                vertex,
                with_word,
            } => {
                let graph = from_graph6(&with_word)
                    .map_err(|e| format!("--with {with_word:?}: {e}"))?;
                (
                    common,
                    Cmd::Substitute {
                        vertex,
                        word: with_word,
                        graph,
                    },
                )
            }
            Command::Divide(c) => (c, Cmd::Divide),
            Command::CheckDivisible(c) => (c, Cmd::CheckDivisible),
            Command::CheckEquivalence(c) => (c, Cmd::CheckEquivalence),
            Command::FindMinimal(c) => (c, Cmd::FindMinimal),
            Command::Verify(c) => (c, Cmd::Verify),
        })
    }
}

fn parse_weights_flag(raw: &str) -> Result<Vec<u64>, String> {
    raw.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("--weights: {e}")))
        .collect()
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

fn write_output(path: &str, lines: &[String]) -> io::Result<()> {
    let mut body = lines.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    if path == "-" {
        io::stdout().write_all(body.as_bytes())
    } else {
        fs::write(path, body)
    }
}

fn main() {
    let cli = Cli::parse();
    exit(run(cli.command));
}

fn run(command: Command) -> i32 {
    let (common, cmd) = match command.split() {
        Ok(pair) => pair,
        Err(msg) => {
            eprintln!("perfdiv: {msg}");
            return 2;
        }
    };
    let weights = match common.weights.as_deref().map(parse_weights_flag).transpose() {
        Ok(w) => w,
        Err(msg) => {
            eprintln!("perfdiv: {msg}");
            return 2;
        }
    };
    let opts = Opts {
        weights,
        wmax: common.wmax,
        samples: common.samples,
        seed: common.seed,
        cap_n: common.cap_n,
        unit_steps: common.unit_steps,
        timing: common.timing,
    };
    if opts.wmax < 1 {
        eprintln!("perfdiv: --wmax must be at least 1");
        return 2;
    }

    let text = match read_input(&common.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("perfdiv: {}: {e}", common.input);
            return 2;
        }
    };
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .collect();

    let mut outcomes: Vec<(Record, Severity)> = if common.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(common.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            use rayon::prelude::*;
            lines
                .par_iter()
                .enumerate()
                .map(|(idx, line)| process_line(&cmd, &opts, idx, line))
                .collect()
        })
    } else {
        lines
            .iter()
            .enumerate()
            .map(|(idx, line)| process_line(&cmd, &opts, idx, line))
            .collect()
    };

    if let Cmd::FindMinimal = cmd {
        let summary = minimal_summary(&outcomes);
        outcomes.push((summary, Severity::Clean));
    }

    let rendered: Vec<String> = outcomes.iter().map(|(r, _)| r.to_line()).collect();
    if let Err(e) = write_output(&common.output, &rendered) {
        eprintln!("perfdiv: {}: {e}", common.output);
        return 2;
    }

    let worst = outcomes
        .iter()
        .map(|(_, s)| *s)
        .max()
        .unwrap_or(Severity::Clean);
    worst.exit_code()
}
