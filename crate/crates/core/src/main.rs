use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wqwalk::experiment::{
    threads_from_env, write_outputs, Experiment, GraphSource, LoopGrid, ReductionBase, SearchMode,
};
use wqwalk::line::{LineCoinSpec, LooplessCoin};
use wqwalk::ShiftKind;

#[derive(Parser, Debug)]
#[command(name = "wqwalk", version, about = "Coined quantum walks on weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equivalence checks against other walk formulations.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Compare k unit loops per vertex with one loop of weight k.
    ReduceVerify(ReduceArgs),
    /// Walk on the infinite line from the origin.
    Line(LineArgs),
    /// Search for one marked vertex on the complete graph.
    Search(SearchArgs),
    /// Regenerate every figure curve as CSV.
    Figures {
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Two coined steps against one step of Szegedy's walk.
    Szegedy(SzegedyArgs),
}

#[derive(Args, Debug)]
struct SzegedyArgs {
    /// Edge list: one `v u w` triple per line, `#` comments.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    graph: Option<PathBuf>,
    /// Number of random weighted graphs to check.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "flipflop")]
    shift: ShiftKind,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum BaseKind {
    Line,
    Complete,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    base: BaseKind,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Vertex count for the complete base.
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args, Debug)]
struct LineArgs {
    /// Self-loop weight.
    #[arg(long, conflicts_with_all = ["rho", "loopless_coin"])]
    l: Option<f64>,
    /// Deformation parameter of the three-state coin, in (0, 1).
    #[arg(long, conflicts_with = "loopless_coin")]
    rho: Option<f64>,
    /// Two-state walk with this coin (`hadamard` or `grover2`).
    #[arg(long)]
    loopless_coin: Option<LooplessCoin>,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value = "moving")]
    shift: ShiftKind,
    #[arg(long, default_value = "line.csv")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    l: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value = "subspace")]
    mode: SearchMode,
    /// Scan `p_peak` over loop weights `start:stop:step` instead.
    #[arg(long)]
    scan_l: Option<LoopGrid>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build(command: Command) -> anyhow::Result<(Experiment, PathBuf, Option<PathBuf>)> {
    let here = PathBuf::from(".");
    Ok(match command {
        Command::Verify {
            which: VerifyCommand::Szegedy(a),
        } => {
            let source = match (a.graph, a.random) {
                (Some(path), _) => GraphSource::EdgeList {
                    label: path.display().to_string(),
                    text: std::fs::read_to_string(&path)
                        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?,
                },
                (None, Some(count)) => GraphSource::Random { count },
                (None, None) => anyhow::bail!("one of --graph or --random is required"),
            };
            let exp = Experiment::VerifySzegedy {
                source,
                shift: a.shift,
                trials: a.trials,
                tol: a.tol,
                seed: a.seed,
            };
            (exp, here, None)
        }
        Command::ReduceVerify(a) => {
            let base = match a.base {
                BaseKind::Line => ReductionBase::Line,
                BaseKind::Complete => ReductionBase::Complete { n: a.n },
            };
            let exp = Experiment::ReduceVerify {
                base,
                k: a.k,
                steps: a.steps,
                tol: a.tol,
            };
            (exp, here, None)
        }
        Command::Line(a) => {
            let coin = match (a.l, a.rho, a.loopless_coin) {
                (Some(l), _, _) => LineCoinSpec::LoopWeight(l),
                (None, Some(rho), _) => LineCoinSpec::Rho(rho),
                (None, None, Some(c)) => LineCoinSpec::Loopless(c),
                (None, None, None) => anyhow::bail!("one of --l, --rho or --loopless-coin is required"),
            };
            let exp = Experiment::Line {
                coin,
                steps: a.steps,
                shift: a.shift,
            };
            (exp, here, Some(a.out))
        }
        Command::Search(a) => {
            let exp = Experiment::Search {
                n: a.n,
                loop_weight: a.l,
                steps: a.steps,
                mode: a.mode,
                scan: a.scan_l,
            };
            let default = if a.scan_l.is_some() { "scan.csv" } else { "search.csv" };
            (exp, here, Some(a.out.unwrap_or_else(|| default.into())))
        }
        Command::Figures { out_dir } => (Experiment::Figures, out_dir, None),
    })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = threads_from_env()? {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let (exp, dir, single) = build(cli.command)?;
    let outcome = exp.run()?;
    print!("{}", outcome.stdout);
    write_outputs(&outcome, &dir, single.as_deref())?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
