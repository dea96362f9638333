//! Experiment runner behind the `wqwalk` binary.
//!
//! Each [`Experiment`] produces its stdout text, the files it would write and a
//! pass flag; the binary only does the I/O. Output is deterministic for a fixed
//! configuration and seed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::graph::WeightedGraph;
use crate::line::{simulate_line, LineCoinSpec, LooplessCoin, PositionDistribution};
use crate::random::random_weighted_graph;
use crate::reduction::{verify_line_reduction, verify_search_reduction};
use crate::search::{
    asymptotic_probability, find_peak, full_success_series, peak_of_series, predict, slow_period,
    success_series, SearchParams,
};
use crate::szegedy::{verify_equivalence, EquivalenceReport};
use crate::walk::ShiftKind;

/// Environment variable capping the worker count (0 or unset = automatic).
pub const THREADS_ENV: &str = "WQWALK_THREADS";

/// Loop weights of the two complete-graph figure panels.
pub const SEARCH_LOW_LOOPS: [f64; 5] = [0.0, 0.1, 0.2, 0.4, 0.8];
pub const SEARCH_HIGH_LOOPS: [f64; 5] = [1.0, 2.5, 5.0, 7.5, 10.0];
pub const SEARCH_FIGURE_N: usize = 1024;
pub const SEARCH_FIGURE_STEPS: usize = 200;
pub const LINE_FIGURE_STEPS: usize = 100;

/// Formats a real with 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Where the Szegedy check gets its graphs.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    /// Edge-list file contents, with a display label.
    EdgeList { label: String, text: String },
    /// `count` seeded random weighted graphs of at most 8 vertices.
    Random { count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Subspace,
    Full,
    /// Exact subspace evolution plus the asymptotic-formula column.
    Asymptotic,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "subspace" => Ok(Self::Subspace),
            "full" => Ok(Self::Full),
            "asymptotic" => Ok(Self::Asymptotic),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Inclusive loop-weight grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl LoopGrid {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for LoopGrid {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(format!("expected `start:stop:step`, got `{s}`"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
        let grid = Self {
            start: num(a)?,
            stop: num(b)?,
            step: num(c)?,
        };
        if !(grid.step > 0.0) || grid.stop < grid.start || grid.start < 0.0 {
            return Err(format!("invalid grid `{s}`"));
        }
        Ok(grid)
    }
}

/// Base graph of a reduction check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionBase {
    /// Line with the moving shift, half-width `steps + 1`.
    Line,
    /// Complete graph on `n` vertices with the search operator.
    Complete { n: usize },
}

/// One runnable configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    VerifySzegedy {
        source: GraphSource,
        shift: ShiftKind,
        trials: usize,
        tol: f64,
        seed: u64,
    },
    ReduceVerify {
        base: ReductionBase,
        k: usize,
        steps: usize,
        tol: f64,
    },
    Line {
        coin: LineCoinSpec<f64>,
        steps: usize,
        shift: ShiftKind,
    },
    Search {
        n: usize,
        loop_weight: f64,
        steps: usize,
        mode: SearchMode,
        scan: Option<LoopGrid>,
    },
    Figures,
}

/// What an experiment produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    /// `(file name, contents)`; the caller picks the directory or path.
    pub files: Vec<(String, String)>,
    pub pass: bool,
}

impl Outcome {
    fn report(stdout: String, pass: bool) -> Self {
        Self {
            stdout,
            files: Vec::new(),
            pass,
        }
    }
}

/// Aggregate over several graphs, same shape as a single report.
#[derive(Debug, Clone, Serialize)]
struct AggregateReport {
    graph: String,
    trials: usize,
    graphs: usize,
    #[serde(rename = "max_dev_C_R1")]
    max_dev_c_r1: f64,
    #[serde(rename = "max_dev_SCS_R2")]
    max_dev_scs_r2: f64,
    #[serde(rename = "max_dev_U2_W")]
    max_dev_u2_w: f64,
    pass: bool,
}

/// JSON summary of a search run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub l: f64,
    pub regime: String,
    pub t_star_pred: Option<f64>,
    pub p_star_pred: Option<f64>,
    pub t_peak: usize,
    pub p_peak: f64,
    pub hump_count: usize,
}

fn to_json<S: Serialize>(value: &S) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

/// Positions `-reach..=reach`; the walker cannot get further in `reach` steps.
pub fn line_csv(dist: &PositionDistribution<f64>, reach: usize) -> String {
    let reach = reach.min(dist.half_width()) as i64;
    let mut out = String::from("position,probability\n");
    for (x, p) in dist.iter().filter(|(x, _)| x.abs() <= reach) {
        let _ = writeln!(out, "{x},{}", fmt_real(p));
    }
    out
}

pub fn search_csv(p: &[f64], p_asym: Option<&[f64]>) -> String {
    let mut out = String::from(if p_asym.is_some() { "t,p,p_asym\n" } else { "t,p\n" });
    for (t, v) in p.iter().enumerate() {
        match p_asym {
            Some(a) => {
                let _ = writeln!(out, "{t},{},{}", fmt_real(*v), fmt_real(a[t]));
            }
            None => {
                let _ = writeln!(out, "{t},{}", fmt_real(*v));
            }
        }
    }
    out
}

/// Summary for `(N, l)` from an exact series.
pub fn search_summary(params: &SearchParams<f64>, series: &[f64]) -> SearchSummary {
    let peak = peak_of_series(series, slow_period(params));
    let pred = predict(params).ok();
    SearchSummary {
        n: params.n,
        l: params.loop_weight,
        regime: pred.map_or("ambiguous".into(), |p| p.regime.label().into()),
        t_star_pred: pred.map(|p| p.t_star),
        p_star_pred: pred.map(|p| p.p_star),
        t_peak: peak.t_peak,
        p_peak: peak.p_peak,
        hump_count: peak.hump_count,
    }
}

fn fuzz_szegedy(count: usize, shift: ShiftKind, trials: usize, tol: f64, seed: u64) -> Result<AggregateReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agg = AggregateReport {
        graph: format!("random(count={count}, max_vertices=8, weights=(0,5])"),
        trials,
        graphs: count,
        max_dev_c_r1: 0.0,
        max_dev_scs_r2: 0.0,
        max_dev_u2_w: 0.0,
        pass: true,
    };
    for i in 0..count {
        let g: WeightedGraph<f64> = random_weighted_graph(&mut rng, 8, 5.0);
        let r = verify_equivalence(&g, &format!("random#{i}"), shift, trials, tol, &mut rng)?;
        agg.max_dev_c_r1 = agg.max_dev_c_r1.max(r.max_dev_c_r1);
        agg.max_dev_scs_r2 = agg.max_dev_scs_r2.max(r.max_dev_scs_r2);
        agg.max_dev_u2_w = agg.max_dev_u2_w.max(r.max_dev_u2_w);
        agg.pass &= r.pass;
    }
    Ok(agg)
}

impl Experiment {
    pub fn run(&self) -> Result<Outcome> {
        match self {
            Self::VerifySzegedy {
                source,
                shift,
                trials,
                tol,
                seed,
            } => match source {
                GraphSource::EdgeList { label, text } => {
                    let g = WeightedGraph::<f64>::parse_edge_list(text)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let r: EquivalenceReport = verify_equivalence(&g, label, *shift, *trials, *tol, &mut rng)?;
                    Ok(Outcome::report(to_json(&r), r.pass))
                }
                GraphSource::Random { count } => {
                    let r = fuzz_szegedy(*count, *shift, *trials, *tol, *seed)?;
                    Ok(Outcome::report(to_json(&r), r.pass))
                }
            },
            Self::ReduceVerify { base, k, steps, tol } => {
                let r = match base {
                    ReductionBase::Line => verify_line_reduction(*k, *steps, *tol)?,
                    ReductionBase::Complete { n } => verify_search_reduction(*n, *k, *steps, *tol)?,
                };
                Ok(Outcome::report(to_json(&r), r.pass))
            }
            Self::Line { coin, steps, shift } => {
                let dist = simulate_line(*coin, *steps, *shift)?;
                Ok(Outcome {
                    stdout: String::new(),
                    files: vec![("line.csv".into(), line_csv(&dist, *steps))],
                    pass: true,
                })
            }
            Self::Search {
                n,
                loop_weight,
                steps,
                mode,
                scan,
            } => match scan {
                Some(grid) => run_scan(*n, grid),
                None => run_search(*n, *loop_weight, *steps, *mode),
            },
            Self::Figures => {
                let files = figure_suite()?;
                let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
                Ok(Outcome {
                    stdout: names.join("\n") + "\n",
                    files,
                    pass: true,
                })
            }
        }
    }
}

fn run_search(n: usize, loop_weight: f64, steps: usize, mode: SearchMode) -> Result<Outcome> {
    let params = SearchParams::new(n, loop_weight)?;
    let horizon = steps.max(slow_period(&params));
    let series = match mode {
        SearchMode::Full => full_success_series(&params, horizon)?,
        SearchMode::Subspace | SearchMode::Asymptotic => success_series(&params, horizon),
    };
    let summary = search_summary(&params, &series);
    let shown = &series[..=steps];
    let asym: Option<Vec<f64>> = (mode == SearchMode::Asymptotic).then(|| {
        (0..=steps)
            .map(|t| asymptotic_probability(&params, t as f64))
            .collect()
    });
    Ok(Outcome {
        stdout: to_json(&summary),
        files: vec![("search.csv".into(), search_csv(shown, asym.as_deref()))],
        pass: true,
    })
}

fn run_scan(n: usize, grid: &LoopGrid) -> Result<Outcome> {
    let rows: Vec<(f64, crate::search::PeakReport<f64>)> = grid
        .values()
        .into_par_iter()
        .map(|l| Ok((l, find_peak(&SearchParams::new(n, l)?, 0))))
        .collect::<Result<_>>()?;
    let mut csv = String::from("l,p_peak,t_peak,hump_count\n");
    for (l, r) in &rows {
        let _ = writeln!(csv, "{},{},{},{}", fmt_real(*l), fmt_real(r.p_peak), r.t_peak, r.hump_count);
    }
    Ok(Outcome {
        stdout: String::new(),
        files: vec![("scan.csv".into(), csv)],
        pass: true,
    })
}

/// Every curve of the line and complete-graph figures as `(file name, CSV)`.
pub fn figure_suite() -> Result<Vec<(String, String)>> {
    enum Job {
        Line(&'static str, LineCoinSpec<f64>, ShiftKind),
        Search(&'static str, f64),
    }
    let mut jobs = vec![
        Job::Line("fig3_loopless", LineCoinSpec::Loopless(LooplessCoin::Hadamard), ShiftKind::Moving),
        Job::Line("fig3_loopless_grover2", LineCoinSpec::Loopless(LooplessCoin::Grover2), ShiftKind::Moving),
        Job::Line("fig3_l10_moving", LineCoinSpec::LoopWeight(10.0), ShiftKind::Moving),
        Job::Line("fig3_l10_flipflop", LineCoinSpec::LoopWeight(10.0), ShiftKind::FlipFlop),
    ];
    jobs.extend(SEARCH_LOW_LOOPS.iter().map(|&l| Job::Search("fig4a", l)));
    jobs.extend(SEARCH_HIGH_LOOPS.iter().map(|&l| Job::Search("fig4b", l)));
    jobs.into_par_iter()
        .map(|job| match job {
            Job::Line(name, coin, shift) => {
                let d = simulate_line(coin, LINE_FIGURE_STEPS, shift)?;
                Ok((format!("{name}.csv"), line_csv(&d, LINE_FIGURE_STEPS)))
            }
            Job::Search(panel, l) => {
                let p = SearchParams::new(SEARCH_FIGURE_N, l)?;
                let series = success_series(&p, SEARCH_FIGURE_STEPS);
                Ok((format!("{panel}_l{l}.csv"), search_csv(&series, None)))
            }
        })
        .collect()
}

/// Writes `outcome.files` under `dir`, or to `single` when exactly one file
/// was produced and a path was given.
pub fn write_outputs(outcome: &Outcome, dir: &Path, single: Option<&Path>) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if let (Some(path), [(_, contents)]) = (single, outcome.files.as_slice()) {
        std::fs::write(path, contents)?;
        written.push(path.to_path_buf());
        return Ok(written);
    }
    std::fs::create_dir_all(dir)?;
    for (name, contents) in &outcome.files {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}

/// Worker count from [`THREADS_ENV`]; `None` means automatic.
pub fn threads_from_env() -> std::result::Result<Option<usize>, WalkError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(e) => Err(WalkError::Parse {
                line: 0,
                message: format!("{THREADS_ENV}=`{v}`: {e}"),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: LoopGrid = "0:1:0.25".parse().unwrap();
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!("1:0:0.1".parse::<LoopGrid>().is_err());
        assert!("0:1".parse::<LoopGrid>().is_err());
        assert!("0:1:0".parse::<LoopGrid>().is_err());
    }

    #[test]
    fn real_format_has_17_digits() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn search_csv_columns() {
        let csv = search_csv(&[0.5, 0.25], Some(&[0.4, 0.3]));
        assert!(csv.starts_with("t,p,p_asym\n0,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
