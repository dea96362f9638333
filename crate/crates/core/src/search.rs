//! Search for one marked vertex on the complete graph with a weight-`l`
//! self-loop at every vertex.
//!
//! Each step is `U' = S C Q`: the oracle `Q` negates the amplitudes at the
//! marked vertex `a`, then the weighted Grover coin and the flip-flop shift.
//! By symmetry the evolution stays in the span of
//!
//! ```text
//! |aa>  walker at a on its loop
//! |ab>  walker at a pointing uniformly at the unmarked vertices
//! |ba>  walker at an unmarked vertex pointing at a
//! |bb>  walker at an unmarked vertex in its local superposition over b's
//! ```
//!
//! where `U'` is a 4×4 real orthogonal matrix in the angles `θ`, `φ`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::graph::{Arc, WeightedGraph};
use crate::scalar::{czero, creal, Real};
use crate::walk::{apply_coin, coin_in_place, shift_into, ArcState, ShiftKind};

/// `l/N` below which `l` is treated as `o(N)`.
pub const SMALL_RATIO: f64 = 0.01;
/// `l/N` at or above which `l` is treated as `ω(N)`.
pub const LARGE_RATIO: f64 = 100.0;

/// Problem size, loop weight and marked vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams<T> {
    pub n: usize,
    pub loop_weight: T,
    pub marked: usize,
    /// `c` in `l = c N`, set only through [`SearchParams::linear`].
    pub linear_ratio: Option<T>,
}

impl<T: Real> SearchParams<T> {
    pub fn new(n: usize, loop_weight: T) -> Result<Self> {
        if n < 2 {
            return Err(WalkError::TooFewVertices { min: 2, got: n });
        }
        if loop_weight < T::zero() || !loop_weight.is_finite() {
            return Err(WalkError::NegativeLoopWeight(loop_weight.to_f64_lossy()));
        }
        Ok(Self {
            n,
            loop_weight,
            marked: 0,
            linear_ratio: None,
        })
    }

    /// `l = c N`, placing the parameters in the linear regime.
    pub fn linear(n: usize, c: T) -> Result<Self> {
        let mut p = Self::new(n, c * T::from_usize_lossy(n))?;
        p.linear_ratio = Some(c);
        Ok(p)
    }

    pub fn with_marked(mut self, marked: usize) -> Result<Self> {
        if marked >= self.n {
            return Err(WalkError::VertexOutOfRange {
                vertex: marked,
                count: self.n,
            });
        }
        self.marked = marked;
        Ok(self)
    }

    fn nf(&self) -> T {
        T::from_usize_lossy(self.n)
    }
}

/// `θ`, `φ` of the 4×4 step matrix and the rotation angle `α` of its
/// slow eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchAngles<T> {
    pub cos_theta: T,
    pub sin_theta: T,
    pub cos_phi: T,
    pub sin_phi: T,
    pub cos_alpha: T,
    pub sin_alpha: T,
}

impl<T: Real> SearchAngles<T> {
    pub fn new(p: &SearchParams<T>) -> Self {
        let n = p.nf();
        let l = p.loop_weight;
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let d = n + l - one;
        Self {
            cos_theta: (n - l - one) / d,
            sin_theta: two * (l * (n - one)).sqrt() / d,
            cos_phi: (n + l - three) / d,
            sin_phi: two * (n + l - two).sqrt() / d,
            cos_alpha: (n - two) / d,
            sin_alpha: ((two * n + l - three) * (l + one)).sqrt() / d,
        }
    }

    pub fn alpha(&self) -> T {
        self.sin_alpha.atan2(self.cos_alpha)
    }
}

/// Amplitudes on `(|aa>, |ab>, |ba>, |bb>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceState4<T> {
    pub amps: [Complex<T>; 4],
}

impl<T: Real> SubspaceState4<T> {
    pub fn from_real(a: [T; 4]) -> Self {
        Self {
            amps: a.map(creal),
        }
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<aa|ψ>|² + |<ab|ψ>|²`.
    pub fn marked_probability(&self) -> T {
        self.amps[0].norm_sqr() + self.amps[1].norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

/// Negates every amplitude on arcs leaving `marked`.
pub fn apply_oracle<T: Real>(
    g: &WeightedGraph<T>,
    state: &ArcState<T>,
    marked: usize,
) -> Result<ArcState<T>> {
    g.check_vertex(marked)?;
    crate::walk::check_dim(g, state.len())?;
    let mut out = state.clone();
    for i in g.arc_index().block(marked) {
        out[i] = -out[i];
    }
    Ok(out)
}

/// One search step `S C Q` on the full arc space.
pub fn full_search_step<T: Real>(
    g: &WeightedGraph<T>,
    state: &ArcState<T>,
    marked: usize,
) -> Result<ArcState<T>> {
    let q = apply_oracle(g, state, marked)?;
    let c = apply_coin(g, &q)?;
    crate::walk::apply_shift(g, &c, ShiftKind::FlipFlop)
}

/// Initial state in the subspace basis:
/// `(√l, √(N-1), √(N-1), √((N-1)(N+l-2))) / √(N(N+l-1))`.
pub fn initial_state<T: Real>(p: &SearchParams<T>) -> SubspaceState4<T> {
    let n = p.nf();
    let l = p.loop_weight;
    let one = T::one();
    let norm = (n * (n + l - one)).sqrt();
    let r = (n - one).sqrt();
    SubspaceState4::from_real([
        l.sqrt() / norm,
        r / norm,
        r / norm,
        ((n - one) * (n + l - T::lit(2.0))).sqrt() / norm,
    ])
}

/// The complete graph for `p` and the uniform weighted superposition on it.
pub fn initial_full_state<T: Real>(p: &SearchParams<T>) -> Result<(WeightedGraph<T>, ArcState<T>)> {
    let g = WeightedGraph::complete(p.n, p.loop_weight)?;
    let s = ArcState::uniform_weighted(&g);
    Ok((g, s))
}

/// `U'` in the `(aa, ab, ba, bb)` basis.
pub fn subspace_matrix<T: Real>(p: &SearchParams<T>) -> [[T; 4]; 4] {
    let a = SearchAngles::new(p);
    let z = T::zero();
    [
        [a.cos_theta, -a.sin_theta, z, z],
        [z, z, -a.cos_phi, a.sin_phi],
        [-a.sin_theta, -a.cos_theta, z, z],
        [z, z, a.sin_phi, a.cos_phi],
    ]
}

fn apply4<T: Real>(m: &[[T; 4]; 4], s: &SubspaceState4<T>) -> SubspaceState4<T> {
    let mut out = [czero(); 4];
    for (i, o) in out.iter_mut().enumerate() {
        for j in 0..4 {
            *o += s.amps[j] * m[i][j];
        }
    }
    SubspaceState4 { amps: out }
}

pub fn subspace_step<T: Real>(p: &SearchParams<T>, s: &SubspaceState4<T>) -> SubspaceState4<T> {
    apply4(&subspace_matrix(p), s)
}

/// `U'^t |ψ0>` for `t = 0..=steps`.
pub fn subspace_trajectory<T: Real>(p: &SearchParams<T>, steps: usize) -> Vec<SubspaceState4<T>> {
    let m = subspace_matrix(p);
    let mut s = initial_state(p);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s);
    for _ in 0..steps {
        s = apply4(&m, &s);
        out.push(s);
    }
    out
}

/// Exact `p(t)` for `t = 0..=steps` from the subspace evolution.
pub fn success_series<T: Real>(p: &SearchParams<T>, steps: usize) -> Vec<T> {
    subspace_trajectory(p, steps)
        .iter()
        .map(SubspaceState4::marked_probability)
        .collect()
}

pub fn success_probability<T: Real>(p: &SearchParams<T>, t: usize) -> T {
    *success_series(p, t).last().expect("series has t + 1 entries")
}

/// Overlaps of a full arc state with the four basis vectors, and the largest
/// amplitude of what is left outside their span.
pub fn project_to_subspace<T: Real>(
    g: &WeightedGraph<T>,
    state: &ArcState<T>,
    p: &SearchParams<T>,
) -> Result<(SubspaceState4<T>, T)> {
    crate::walk::check_dim(g, state.len())?;
    let idx = g.arc_index();
    let a = p.marked;
    let n = p.nf();
    let one = T::one();
    let l = p.loop_weight;
    let at = |v: usize, u: usize| idx.index_of(Arc::new(v, u)).map_or(czero(), |i| state[i]);

    let aa = at(a, a);
    let mut ab = czero::<T>();
    let mut ba = czero::<T>();
    let mut bb = czero::<T>();
    let root_l = l.sqrt();
    for b in (0..p.n).filter(|&b| b != a) {
        ab += at(a, b);
        ba += at(b, a);
        for i in idx.block(b) {
            let u = idx.arc(i).to;
            if u == a {
                continue;
            }
            bb += if u == b { state[i] * root_l } else { state[i] };
        }
    }
    let r = (n - one).sqrt();
    let bb_norm = ((n - one) * (n + l - T::lit(2.0))).sqrt();
    let s4 = SubspaceState4 {
        amps: [
            aa,
            ab / r,
            ba / r,
            if bb_norm > T::zero() { bb / bb_norm } else { czero() },
        ],
    };
    let outside = state.max_abs_diff(&embed_subspace(g, &s4, p)?);
    Ok((s4, outside))
}

/// Full arc state `Σ_i s_i |basis_i>` of a subspace state.
pub fn embed_subspace<T: Real>(
    g: &WeightedGraph<T>,
    s4: &SubspaceState4<T>,
    p: &SearchParams<T>,
) -> Result<ArcState<T>> {
    let idx = g.arc_index();
    let a = p.marked;
    let n = p.nf();
    let one = T::one();
    let r = (n - one).sqrt();
    let bb_norm = ((n - one) * (n + p.loop_weight - T::lit(2.0))).sqrt();
    let root_l = p.loop_weight.sqrt();
    let mut out = ArcState::zeros(g.arc_count());
    for i in 0..idx.len() {
        let arc = idx.arc(i);
        out[i] = match (arc.from == a, arc.to == a) {
            (true, true) => s4.amps[0],
            (true, false) => s4.amps[1] / r,
            (false, true) => s4.amps[2] / r,
            (false, false) if arc.from == arc.to => s4.amps[3] * root_l / bb_norm,
            (false, false) => s4.amps[3] / bb_norm,
        };
    }
    Ok(out)
}

/// Exact `p(t)` from the full arc-space walk on the complete graph.
pub fn full_success_series<T: Real>(p: &SearchParams<T>, steps: usize) -> Result<Vec<T>> {
    let (g, mut s) = initial_full_state(p)?;
    let mut scratch = vec![czero(); g.arc_count()];
    let marked_block = g.arc_index().block(p.marked);
    let prob = |s: &ArcState<T>| marked_block.clone().map(|i| s[i].norm_sqr()).sum::<T>();
    let mut out = Vec::with_capacity(steps + 1);
    out.push(prob(&s));
    for _ in 0..steps {
        for i in marked_block.clone() {
            s[i] = -s[i];
        }
        coin_in_place(&g, s.as_mut_slice());
        shift_into(&g, s.as_slice(), &mut scratch, ShiftKind::FlipFlop);
        s.as_mut_slice().copy_from_slice(&scratch);
        out.push(prob(&s));
    }
    Ok(out)
}

/// Large-`N` closed form of `U'^t |ψ0>` (real amplitudes).
pub fn asymptotic_state<T: Real>(p: &SearchParams<T>, t: T) -> [T; 4] {
    let n = p.nf();
    let l = p.loop_weight;
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let alpha = SearchAngles::new(p).alpha();
    let (s, c) = (alpha * t).sin_cos();
    let root = (n + l - two).sqrt();
    let k = ((two * n + l - three) * (l + one)).sqrt();
    [
        (one - c) * (l * (n - one)).sqrt() / ((l + one) * root),
        (two * l + (l - one) * c + k * s) / (two * (l + one) * root),
        (two * l + (l - one) * c - k * s) / (two * (l + one) * root),
        (one + c) / (l + one),
    ]
}

/// Sum of squares of the first two asymptotic amplitudes.
pub fn asymptotic_probability<T: Real>(p: &SearchParams<T>, t: T) -> T {
    let a = asymptotic_state(p, t);
    a[0] * a[0] + a[1] * a[1]
}

/// Parameter regime of the runtime/success characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `l < 1/3`: the peak splits into two humps.
    Sub,
    /// `1/3 ≤ l = o(N)`.
    Mid,
    /// `l = c N`.
    Linear,
    /// `l = ω(N)`.
    Super,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Self::Sub => "sub",
            Self::Mid => "mid",
            Self::Linear => "linear",
            Self::Super => "super",
        }
    }
}

/// Classifies `(N, l)`. `l/N` in `[0.01, 100)` without an explicit `c` is
/// rejected as ambiguous.
pub fn classify<T: Real>(p: &SearchParams<T>) -> Result<Regime> {
    if p.linear_ratio.is_some() {
        return Ok(Regime::Linear);
    }
    let l = p.loop_weight;
    if l < T::one() / T::lit(3.0) {
        return Ok(Regime::Sub);
    }
    let ratio = l / p.nf();
    if ratio < T::lit(SMALL_RATIO) {
        Ok(Regime::Mid)
    } else if ratio >= T::lit(LARGE_RATIO) {
        Ok(Regime::Super)
    } else {
        Err(WalkError::AmbiguousRegime {
            n: p.n,
            loop_weight: l.to_f64_lossy(),
        })
    }
}

/// Predicted runtime and success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiecewisePrediction<T> {
    pub regime: Regime,
    pub t_star: T,
    pub p_star: T,
}

/// Asymptotic `t*` and `p*` for the regime of `p`.
///
/// Below `l = 1/3` the success probability is `1 / (2(1 - l))`, the branch
/// that joins the `4l/(l+1)²` branch continuously at `l = 1/3`.
pub fn predict<T: Real>(p: &SearchParams<T>) -> Result<PiecewisePrediction<T>> {
    let regime = classify(p)?;
    let n = p.nf();
    let l = p.loop_weight;
    let one = T::one();
    let two = T::lit(2.0);
    let (t_star, p_star) = match regime {
        Regime::Sub => (
            (two * l / (l - one)).acos() / (two * (l + one)).sqrt() * n.sqrt(),
            one / (two * (one - l)),
        ),
        Regime::Mid => (
            T::PI() * (n / (two * (l + one))).sqrt(),
            T::lit(4.0) * l / ((l + one) * (l + one)),
        ),
        Regime::Linear => {
            let c = p.linear_ratio.expect("linear regime carries c");
            (
                T::PI() / ((c * (c + two)).sqrt() / (c + one)).asin(),
                (T::lit(16.0) + T::lit(9.0) * c) / (T::lit(4.0) * c * (c + one) * n),
            )
        }
        Regime::Super => (two, T::lit(9.0) / (T::lit(4.0) * l)),
    };
    Ok(PiecewisePrediction {
        regime,
        t_star,
        p_star,
    })
}

/// Peak of the exact success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakReport<T> {
    pub t_peak: usize,
    pub p_peak: T,
    pub hump_count: usize,
    /// `ceil(2π/α)`: one full period of the slow rotation.
    pub period: usize,
}

/// Number of steps in one slow period, `ceil(2π/α)`.
pub fn slow_period<T: Real>(p: &SearchParams<T>) -> usize {
    let alpha = SearchAngles::new(p).alpha();
    (T::TAU() / alpha).ceil().to_usize().unwrap_or(usize::MAX)
}

/// Humps of `p(t)` over the first period, located on the even-step samples
/// `p(0), p(2), …` (consecutive steps alternate around the slow envelope).
/// Returns the times of the local maxima at or above half the period maximum,
/// and the envelope minimum between the first two humps.
fn humps<T: Real>(series: &[T], period: usize) -> (Vec<usize>, Option<usize>) {
    let even: Vec<T> = series[..=period.min(series.len() - 1)]
        .iter()
        .step_by(2)
        .copied()
        .collect();
    let top = even.iter().copied().fold(T::zero(), T::max);
    let half = top / T::lit(2.0);
    let maxima: Vec<usize> = (1..even.len().saturating_sub(1))
        .filter(|&j| even[j] > even[j - 1] && even[j] >= even[j + 1] && even[j] >= half)
        .collect();
    let split = match maxima.as_slice() {
        [first, second, ..] => (*first..=*second)
            .min_by(|&a, &b| even[a].partial_cmp(&even[b]).unwrap_or(std::cmp::Ordering::Equal))
            .map(|j| 2 * j),
        _ => None,
    };
    (maxima.into_iter().map(|j| 2 * j).collect(), split)
}

/// Scans the exact `p(t)` over `0..=max(horizon, ceil(2π/α))`.
///
/// `hump_count` counts humps in the first period; `t_peak` is the step of
/// highest `p(t)` within the first hump (everything up to the envelope
/// minimum after it, or the first period when there is one hump), and
/// `p_peak = p(t_peak)`.
pub fn find_peak<T: Real>(p: &SearchParams<T>, horizon: usize) -> PeakReport<T> {
    let period = slow_period(p);
    let series = success_series(p, horizon.max(period));
    peak_of_series(&series, period)
}

/// [`find_peak`] on a precomputed series.
pub fn peak_of_series<T: Real>(series: &[T], period: usize) -> PeakReport<T> {
    let (maxima, split) = humps(series, period);
    let end = split.unwrap_or(period).min(series.len() - 1);
    let (t_peak, p_peak) = series[..=end]
        .iter()
        .copied()
        .enumerate()
        .fold((0, T::neg_infinity()), |best, (t, v)| if v > best.1 { (t, v) } else { best });
    PeakReport {
        t_peak,
        p_peak,
        hump_count: maxima.len(),
        period,
    }
}

/// `p_peak` for each loop weight in `grid` at size `n`.
pub fn threshold_scan<T: Real>(n: usize, grid: &[T]) -> Result<Vec<(T, T)>> {
    grid.iter()
        .map(|&l| {
            let p = SearchParams::new(n, l)?;
            Ok((l, find_peak(&p, 0).p_peak))
        })
        .collect()
}

/// Bisects `p_peak(l) = 1/2` on `[lo, hi]` until the bracket is at most `width`.
/// Expects `p_peak(lo) > 1/2 > p_peak(hi)`.
pub fn locate_threshold<T: Real>(n: usize, lo: T, hi: T, width: T) -> Result<T> {
    let half = T::lit(0.5);
    let f = |l: T| -> Result<T> { Ok(find_peak(&SearchParams::new(n, l)?, 0).p_peak - half) };
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    assert!(flo > T::zero() && fhi < T::zero(), "threshold not bracketed");
    while hi - lo > width {
        let mid = (lo + hi) / T::lit(2.0);
        if f(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / T::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SearchParams<f64>;

    #[test]
    fn oracle_behaviour() {
        let g = WeightedGraph::<f64>::complete(4, 1.0).unwrap();
        let mut s = ArcState::zeros(g.arc_count());
        let i = g.arc_index().index_of(Arc::new(0, 2)).unwrap();
        s[i] = Complex::new(0.3, 0.4);
        let j = g.arc_index().index_of(Arc::new(1, 2)).unwrap();
        s[j] = creal(0.5);
        let q = apply_oracle(&g, &s, 0).unwrap();
        assert_eq!(q[i], Complex::new(-0.3, -0.4));
        assert_eq!(q[j], creal(0.5));
        assert_eq!(apply_oracle(&g, &q, 0).unwrap(), s);
        assert!(apply_oracle(&g, &s, 4).is_err());
    }

    #[test]
    fn initial_state_n4_l1() {
        let s = initial_state(&P::new(4, 1.0).unwrap());
        let want = [0.25, 3f64.sqrt() / 4.0, 3f64.sqrt() / 4.0, 0.75];
        for (a, b) in s.amps.iter().zip(want) {
            assert!((a - creal(b)).norm() < 1e-15);
        }
        assert_eq!(initial_state(&P::new(16, 0.0).unwrap()).amps[0], creal(0.0));
    }

    #[test]
    fn angles_n4_l1() {
        let a = SearchAngles::new(&P::new(4, 1.0).unwrap());
        assert!((a.cos_theta - 0.5).abs() < 1e-15);
        assert!((a.sin_theta - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((a.cos_phi - 0.5).abs() < 1e-15);
        assert!((a.sin_phi - 3f64.sqrt() / 2.0).abs() < 1e-15);
        for (c, s) in [(a.cos_theta, a.sin_theta), (a.cos_phi, a.sin_phi), (a.cos_alpha, a.sin_alpha)] {
            assert!((c * c + s * s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn p0_is_one_over_n() {
        for (n, l) in [(8, 0.0), (16, 0.3), (1024, 5.0), (3, 2.0)] {
            let p = P::new(n, l).unwrap();
            assert!((success_probability(&p, 0) - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn full_space_projection_matches_subspace_n16() {
        for l in [0.0, 0.5, 1.0, 5.0] {
            let p = P::new(16, l).unwrap();
            let (g, mut s) = initial_full_state(&p).unwrap();
            let traj = subspace_trajectory(&p, 100);
            for want in &traj {
                let (got, outside) = project_to_subspace(&g, &s, &p).unwrap();
                assert!(got.max_abs_diff(want) < 1e-12, "l = {l}");
                assert!(outside < 1e-12);
                s = full_search_step(&g, &s, 0).unwrap();
            }
        }
    }

    #[test]
    fn predict_branches() {
        let pr = predict(&P::new(1024, 0.0).unwrap()).unwrap();
        assert_eq!(pr.regime, Regime::Sub);
        assert!((pr.t_star - std::f64::consts::PI * 32.0 / (2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((pr.p_star - 0.5).abs() < 1e-15);

        let pr = predict(&P::new(1024, 1.0).unwrap()).unwrap();
        assert_eq!(pr.regime, Regime::Mid);
        assert!((pr.t_star - std::f64::consts::PI * 16.0).abs() < 1e-12);
        assert!((pr.p_star - 1.0).abs() < 1e-15);

        let below = predict(&P::new(1 << 20, 1.0 / 3.0 - 1e-13).unwrap()).unwrap();
        let above = predict(&P::new(1 << 20, 1.0 / 3.0).unwrap()).unwrap();
        assert_eq!((below.regime, above.regime), (Regime::Sub, Regime::Mid));
        assert!((below.p_star - 0.75).abs() < 1e-12);
        assert!((above.p_star - 0.75).abs() < 1e-15);
        assert!((below.t_star - above.t_star).abs() < 1e-3);

        assert!(matches!(
            predict(&P::new(100, 5.0).unwrap()),
            Err(WalkError::AmbiguousRegime { .. })
        ));
        assert_eq!(predict(&P::new(10, 1000.0).unwrap()).unwrap().regime, Regime::Super);
        assert_eq!(predict(&P::linear(100, 2.0).unwrap()).unwrap().regime, Regime::Linear);
    }

    #[test]
    fn asymptotic_full_success_at_l1() {
        let p = P::new(1 << 20, 1.0).unwrap();
        let alpha = SearchAngles::new(&p).alpha();
        let a = asymptotic_state(&p, std::f64::consts::PI / alpha);
        assert!((a[0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn find_peak_l1_n1024() {
        let r = find_peak(&P::new(1024, 1.0).unwrap(), 200);
        assert_eq!(r.hump_count, 1);
        assert!(r.p_peak >= 0.99);
        let r10 = find_peak(&P::new(1024, 10.0).unwrap(), 200);
        assert!(r10.p_peak < r.p_peak);
    }

    #[test]
    fn full_series_agrees_with_subspace() {
        let p = P::new(12, 0.7).unwrap();
        let a = full_success_series(&p, 40).unwrap();
        let b = success_series(&p, 40);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
