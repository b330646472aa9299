use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ms_cli::commands::{self, RandomCmd};

/// Generate, evaluate, verify and render mutual-search protocols.
#[derive(Parser)]
#[command(name = "ms", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named protocol (allinturn, halfinturn, sathalfinturn,
    /// sr, asr, rhc)
    Gen {
        /// Protocol name
        name: String,
        #[arg(long)]
        n: usize,
        /// Seed for randomized generators (decimal 64-bit unsigned)
        #[arg(long)]
        seed: Option<u64>,
        /// Write the structure as JSON
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// For sr: also write the row layout (gaps as '*') as text
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Evaluate a protocol file under a cost model
    Cost {
        file: PathBuf,
        /// sync, async or oblivious
        #[arg(long)]
        model: String,
        /// Also print the edge attaining the cost
        #[arg(long)]
        per_edge: bool,
    },
    /// Greedily refine a tournament file into an ordered algorithm
    Refine {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Replay a two-agent execution
    Simulate {
        file: PathBuf,
        /// Agent sites as "a,b"
        #[arg(long)]
        agents: String,
    },
    /// Render a protocol file (matrix or pbm)
    Render {
        file: PathBuf,
        #[arg(long)]
        format: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Lower/upper bound table as CSV
    Bounds {
        /// Comma-separated site counts
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Models to include (sync, async, oblivious, randomized);
        /// defaults to all four
        #[arg(long, value_delimiter = ',')]
        model: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive optimum over all tournaments at small n
    Oracle {
        #[arg(long)]
        n: usize,
        /// sync or async
        #[arg(long)]
        model: String,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Worst-case sweep of the multi-agent RingSegments protocol
    Rs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Sample this many random placements instead of sweeping all
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the worst placement's transcript as JSON
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Expected-cost evaluation of the randomized concert protocol
    #[command(subcommand)]
    Random(RandomSub),
}

#[derive(Subcommand)]
enum RandomSub {
    /// Exact expected cost for one placement (rational)
    Exact {
        #[arg(long)]
        n: usize,
        /// Agent sites as "a,b"
        #[arg(long)]
        agents: String,
    },
    /// Worst placement's exact expected cost (rational)
    Worst {
        #[arg(long)]
        n: usize,
    },
    /// Monte-Carlo estimate for one placement
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        agents: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> anyhow::Result<String> {
    match cli.command {
        Command::Gen {
            name,
            n,
            seed,
            out,
            layout,
        } => commands::cmd_gen(&name, n, seed, out.as_deref(), layout.as_deref()),
        Command::Cost {
            file,
            model,
            per_edge,
        } => commands::cmd_cost(&file, &model, per_edge),
        Command::Refine { file, out } => commands::cmd_refine(&file, out.as_deref()),
        Command::Simulate { file, agents } => {
            let (a, b) = commands::parse_pair(&agents)?;
            commands::cmd_simulate(&file, a, b)
        }
        Command::Render { file, format, out } => {
            commands::cmd_render(&file, &format, out.as_deref())
        }
        Command::Bounds { n, model, out } => commands::cmd_bounds(&n, &model, out.as_deref()),
        Command::Oracle { n, model, jobs, out } => {
            commands::cmd_oracle(n, &model, jobs, out.as_deref())
        }
        Command::Rs {
            k,
            m,
            samples,
            seed,
            transcript,
        } => commands::cmd_rs(k, m, samples, seed, transcript.as_deref()),
        Command::Random(sub) => commands::cmd_random(match sub {
            RandomSub::Exact { n, agents } => {
                let (a, b) = commands::parse_pair(&agents)?;
                RandomCmd::Exact { n, a, b }
            }
            RandomSub::Worst { n } => RandomCmd::Worst { n },
            RandomSub::Mc {
                n,
                agents,
                trials,
                seed,
            } => {
                let (a, b) = commands::parse_pair(&agents)?;
                RandomCmd::MonteCarlo { n, a, b, trials, seed }
            }
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code_for(&err) as u8)
        }
    }
}
