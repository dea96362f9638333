//! Lackadaisical walk on the line with one weighted self-loop per vertex.
//!
//! Coin basis at every position is `(L, S, R)`: point left, stay, point right.
//! With loop weight `l` the weighted Grover coin is the real symmetric matrix
//!
//! ```text
//!            1   | -l      2√l   2    |
//!   C(l) = ----- | 2√l     l-2   2√l  |
//!          l + 2 | 2      2√l    -l   |
//! ```
//!
//! which coincides with the eigenvector-deformed three-state Grover coin at
//! `ρ = sqrt(l / (l + 2))`. Peaks of the moving-shift walk travel at `±ρ`.

use num_complex::Complex;

use crate::error::{Result, WalkError};
use crate::graph::WeightedGraph;
use crate::scalar::{czero, Real};
use crate::walk::{evolve, vertex_probabilities, ArcState, ShiftKind, BOUNDARY_TOL};

/// Probability below which a local maximum is not counted as a peak.
pub const PEAK_THRESHOLD: f64 = 1e-4;

const L: usize = 0;
const S: usize = 1;
const R: usize = 2;

/// Real 3×3 coin over `(L, S, R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineCoin3<T> {
    pub m: [[T; 3]; 3],
}

impl<T: Real> LineCoin3<T> {
    pub fn from_rows(m: [[T; 3]; 3]) -> Self {
        Self { m }
    }

    /// `2|s><s| - I` with `s = (1, √l, 1)/√(l+2)`.
    pub fn lackadaisical(loop_weight: T) -> Result<Self> {
        if loop_weight < T::zero() || !loop_weight.is_finite() {
            return Err(WalkError::NegativeLoopWeight(loop_weight.to_f64_lossy()));
        }
        let l = loop_weight;
        let two = T::lit(2.0);
        let r = l.sqrt();
        let d = l + two;
        Ok(Self::from_rows([
            [-l / d, two * r / d, two / d],
            [two * r / d, (l - two) / d, two * r / d],
            [two / d, two * r / d, -l / d],
        ]))
    }

    /// Eigenvector-deformed three-state Grover coin with parameter `ρ ∈ [0, 1]`.
    pub fn stefanak(rho: T) -> Result<Self> {
        if !(rho >= T::zero() && rho <= T::one()) {
            return Err(WalkError::RhoOutOfRange(rho.to_f64_lossy()));
        }
        let one = T::one();
        let two = T::lit(2.0);
        let rr = rho * rho;
        let off = rho * (two * (one - rr)).sqrt();
        Ok(Self::from_rows([
            [-rr, off, one - rr],
            [off, two * rr - one, off],
            [one - rr, off, -rr],
        ]))
    }

    /// Unweighted three-state Grover coin `(1/3)[[-1,2,2],[2,-1,2],[2,2,-1]]`.
    pub fn grover3() -> Self {
        let a = T::lit(-1.0) / T::lit(3.0);
        let b = T::lit(2.0) / T::lit(3.0);
        Self::from_rows([[a, b, b], [b, a, b], [b, b, a]])
    }

    /// A two-state coin on `(L, R)` acting as the identity on `S`.
    pub fn embed_two_state(c: [[T; 2]; 2]) -> Self {
        let z = T::zero();
        Self::from_rows([[c[0][0], z, c[0][1]], [z, T::one(), z], [c[1][0], z, c[1][1]]])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }

    /// `max |(CᵀC - I)_ij|`.
    pub fn orthogonality_deviation(&self) -> T {
        let mut d = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let dot: T = (0..3).map(|k| self.m[k][i] * self.m[k][j]).sum();
                let id = if i == j { T::one() } else { T::zero() };
                d = d.max((dot - id).abs());
            }
        }
        d
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.m[i][j] == self.m[j][i]))
    }

    fn apply(&self, a: &[Complex<T>; 3]) -> [Complex<T>; 3] {
        let mut out = [czero(); 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = a[0] * self.m[i][0] + a[1] * self.m[i][1] + a[2] * self.m[i][2];
        }
        out
    }
}

/// `ρ = sqrt(l / (l + 2))`.
pub fn rho_for_loop_weight<T: Real>(loop_weight: T) -> T {
    (loop_weight / (loop_weight + T::lit(2.0))).sqrt()
}

/// `l = 2ρ² / (1 - ρ²)`; infinite at `ρ = 1`.
pub fn loop_weight_for_rho<T: Real>(rho: T) -> T {
    let rr = rho * rho;
    T::lit(2.0) * rr / (T::one() - rr)
}

/// Coin used when there are no self-loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LooplessCoin {
    Hadamard,
    /// `2|s><s| - I` on two directions: a pure swap of `L` and `R`.
    Grover2,
}

impl LooplessCoin {
    pub fn matrix<T: Real>(self) -> [[T; 2]; 2] {
        match self {
            Self::Hadamard => {
                let h = T::FRAC_1_SQRT_2();
                [[h, h], [h, -h]]
            }
            Self::Grover2 => [[T::zero(), T::one()], [T::one(), T::zero()]],
        }
    }
}

impl std::str::FromStr for LooplessCoin {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hadamard" => Ok(Self::Hadamard),
            "grover2" => Ok(Self::Grover2),
            other => Err(format!("unknown loopless coin `{other}`")),
        }
    }
}

/// Which line walk to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineCoinSpec<T> {
    /// Weighted Grover coin from a weight-`l` self-loop, evolved on the graph.
    LoopWeight(T),
    /// Deformed three-state coin with parameter `ρ`.
    Rho(T),
    /// Two-state walk without loops.
    Loopless(LooplessCoin),
}

/// Probability per position `-half_width..=half_width`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution<T> {
    half_width: usize,
    probs: Vec<T>,
}

impl<T: Real> PositionDistribution<T> {
    pub fn new(half_width: usize, probs: Vec<T>) -> Self {
        assert_eq!(probs.len(), 2 * half_width + 1);
        Self { half_width, probs }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Probability at position `x`; zero outside the window.
    pub fn get(&self, x: i64) -> T {
        let i = x + self.half_width as i64;
        if i < 0 || i as usize >= self.probs.len() {
            T::zero()
        } else {
            self.probs[i as usize]
        }
    }

    /// `(position, probability)` in ascending position order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        let m = self.half_width as i64;
        self.probs.iter().enumerate().map(move |(i, p)| (i as i64 - m, *p))
    }

    pub fn total(&self) -> T {
        self.probs.iter().copied().sum()
    }

    pub fn odd_mass(&self) -> T {
        self.iter().filter(|(x, _)| x % 2 != 0).map(|(_, p)| p).sum()
    }

    /// `max_x |p(x) - p(-x)|`.
    pub fn asymmetry(&self) -> T {
        let m = self.half_width as i64;
        (0..=m)
            .map(|x| (self.get(x) - self.get(-x)).abs())
            .fold(T::zero(), T::max)
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probs
    }
}

/// Walker at the origin pointing `(|-1> + i|1>)/sqrt(2)`, nothing on the loop.
pub fn initial_coin_state<T: Real>() -> [Complex<T>; 3] {
    let h = T::FRAC_1_SQRT_2();
    [Complex::new(h, T::zero()), czero(), Complex::new(T::zero(), h)]
}

/// Direct line engine: any 3×3 coin, moving or flip-flop shift.
///
/// Position `x` is stored at `x + half_width`. Fails with
/// `BoundaryContamination` if amplitude reaches either end.
pub fn simulate_with_coin<T: Real>(
    coin: &LineCoin3<T>,
    steps: usize,
    shift: ShiftKind,
    initial: [Complex<T>; 3],
) -> Result<PositionDistribution<T>> {
    let half = steps + 1;
    let n = 2 * half + 1;
    let mut state = vec![[czero::<T>(); 3]; n];
    let mut next = state.clone();
    state[half] = initial;
    let tol = T::lit(BOUNDARY_TOL);
    for t in 1..=steps {
        for cell in next.iter_mut() {
            *cell = [czero(); 3];
        }
        for x in 0..n {
            let c = coin.apply(&state[x]);
            next[x][S] += c[S];
            // Amplitude never reaches the ends (checked below), so the end
            // cells' outward components are zero and can be dropped.
            match shift {
                ShiftKind::Moving => {
                    if x > 0 {
                        next[x - 1][L] += c[L];
                    }
                    if x + 1 < n {
                        next[x + 1][R] += c[R];
                    }
                }
                ShiftKind::FlipFlop => {
                    if x > 0 {
                        next[x - 1][R] += c[L];
                    }
                    if x + 1 < n {
                        next[x + 1][L] += c[R];
                    }
                }
            }
        }
        std::mem::swap(&mut state, &mut next);
        for v in [0, n - 1] {
            let amp = state[v].iter().map(|a| a.norm()).fold(T::zero(), T::max);
            if amp > tol {
                return Err(WalkError::BoundaryContamination {
                    vertex: v,
                    step: t,
                    amplitude: amp.to_f64_lossy(),
                });
            }
        }
    }
    let probs = state
        .iter()
        .map(|c| c.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    Ok(PositionDistribution::new(half, probs))
}

/// Same walk through the generic weighted-graph operators on
/// `line_graph(steps + 1, l)`.
pub fn simulate_on_graph<T: Real>(
    loop_weight: T,
    steps: usize,
    shift: ShiftKind,
) -> Result<PositionDistribution<T>> {
    let half = steps + 1;
    let g = WeightedGraph::line(half, loop_weight)?;
    let [left, _, right] = initial_coin_state::<T>();
    let psi = ArcState::localized(&g, half, &[(half - 1, left), (half + 1, right)])?;
    let out = evolve(&g, &psi, shift, steps)?;
    Ok(PositionDistribution::new(half, vertex_probabilities(&g, &out)?))
}

/// Distribution after `steps` steps from the default initial state.
pub fn simulate_line<T: Real>(
    spec: LineCoinSpec<T>,
    steps: usize,
    shift: ShiftKind,
) -> Result<PositionDistribution<T>> {
    match spec {
        LineCoinSpec::LoopWeight(l) => simulate_on_graph(l, steps, shift),
        LineCoinSpec::Rho(rho) => {
            simulate_with_coin(&LineCoin3::stefanak(rho)?, steps, shift, initial_coin_state())
        }
        LineCoinSpec::Loopless(c) => simulate_with_coin(
            &LineCoin3::embed_two_state(c.matrix()),
            steps,
            shift,
            initial_coin_state(),
        ),
    }
}

/// Outermost peak speeds `(v_left, v_right)`: scanning inward from `±steps`,
/// the first local maximum with probability ≥ [`PEAK_THRESHOLD`], divided by
/// `steps`. `v_left` is negative. Maxima are taken over the two nearest sites
/// on each side so that walks living on one parity are handled.
pub fn peak_velocity<T: Real>(dist: &PositionDistribution<T>, steps: usize) -> Result<(T, T)> {
    let threshold = T::lit(PEAK_THRESHOLD);
    let t = T::from_usize_lossy(steps);
    let reach = (steps as i64).min(dist.half_width() as i64);
    let find = |sign: i64| {
        (1..=reach).rev().map(|d| sign * d).find(|&x| {
            let p = dist.get(x);
            p >= threshold && [-2, -1, 1, 2].iter().all(|d| p >= dist.get(x + d))
        })
    };
    let left = find(-1).ok_or(WalkError::NoPeakFound { side: "left" })?;
    let right = find(1).ok_or(WalkError::NoPeakFound { side: "right" })?;
    Ok((T::lit(left as f64) / t, T::lit(right as f64) / t))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = LineCoin3<f64>;

    #[test]
    fn lack_coin_at_one_is_grover3() {
        let c = C::lackadaisical(1.0).unwrap();
        assert!(c.max_abs_diff(&C::grover3()) < 1e-16);
        assert!(c.is_symmetric());
    }

    #[test]
    fn lack_coin_at_zero() {
        let c = C::lackadaisical(0.0).unwrap();
        assert_eq!(c.m, [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]);
    }

    #[test]
    fn lack_coin_at_two() {
        let r2 = 2f64.sqrt();
        let want = C::from_rows([
            [-0.5, r2 / 2.0, 0.5],
            [r2 / 2.0, 0.0, r2 / 2.0],
            [0.5, r2 / 2.0, -0.5],
        ]);
        let c = C::lackadaisical(2.0).unwrap();
        assert!(c.max_abs_diff(&want) < 1e-15);
        assert!(c.orthogonality_deviation() < 1e-15);
        assert!(C::lackadaisical(-0.1).is_err());
    }

    #[test]
    fn stefanak_special_values() {
        let c = C::stefanak(1.0 / 3f64.sqrt()).unwrap();
        assert!(c.max_abs_diff(&C::grover3()) < 1e-15);
        let c = C::stefanak(1.0).unwrap();
        assert_eq!(c.m, [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(C::stefanak(1.5).is_err());
        assert!(C::stefanak(-0.01).is_err());
    }

    #[test]
    fn coins_agree_under_rho_map() {
        for l in [0.0, 0.5, 1.0, 2.0, 10.0] {
            let a = C::lackadaisical(l).unwrap();
            let b = C::stefanak(rho_for_loop_weight(l)).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-14, "l = {l}");
        }
        let rho = 0.6_f64;
        assert!((rho_for_loop_weight(loop_weight_for_rho(rho)) - rho).abs() < 1e-15);
    }

    #[test]
    fn engine_matches_graph_walk() {
        for (l, shift) in [(10.0, ShiftKind::Moving), (0.5, ShiftKind::FlipFlop), (2.0, ShiftKind::Moving)] {
            let g = simulate_on_graph(l, 40, shift).unwrap();
            let e = simulate_with_coin(&C::lackadaisical(l).unwrap(), 40, shift, initial_coin_state()).unwrap();
            let d = g
                .probabilities()
                .iter()
                .zip(e.probabilities())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(d < 1e-12, "l = {l}: {d}");
        }
    }

    #[test]
    fn loopless_walks_live_on_even_sites() {
        for coin in [LooplessCoin::Hadamard, LooplessCoin::Grover2] {
            let d = simulate_line::<f64>(LineCoinSpec::Loopless(coin), 100, ShiftKind::Moving).unwrap();
            assert_eq!(d.odd_mass(), 0.0);
            assert!((d.total() - 1.0).abs() < 1e-12);
        }
        // Grover2 is a swap: the walker bounces back to the origin every two steps.
        let d = simulate_line::<f64>(LineCoinSpec::Loopless(LooplessCoin::Grover2), 50, ShiftKind::Moving).unwrap();
        assert!((d.get(0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn peak_velocity_errors_on_empty() {
        let d = PositionDistribution::new(3, vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            peak_velocity(&d, 3),
            Err(WalkError::NoPeakFound { side: "left" })
        ));
    }

    #[test]
    fn flip_flop_and_moving_differ_with_loops() {
        let m = simulate_line::<f64>(LineCoinSpec::LoopWeight(10.0), 100, ShiftKind::Moving).unwrap();
        let f = simulate_line(LineCoinSpec::LoopWeight(10.0), 100, ShiftKind::FlipFlop).unwrap();
        let d = m
            .probabilities()
            .iter()
            .zip(f.probabilities())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(d > 1e-3);
        let (_, vm) = peak_velocity(&m, 100).unwrap();
        let (_, vf) = peak_velocity(&f, 100).unwrap();
        assert!(vm > vf);
    }
}
