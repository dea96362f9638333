//! The coined walk step `U = S C` on weighted graphs.
//!
//! The coin reflects each vertex block about the weighted local superposition
//! `|s_v> ∝ Σ_u sqrt(w_vu) |u>`. It is applied as the rank-one update
//! `α_vu ↦ 2 ᾱ_v sqrt(w_vu) - α_vu` with `ᾱ_v = Σ_u sqrt(w_vu) α_vu / Σ_u w_vu`,
//! so a step costs O(arcs) and no operator matrix is ever formed.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Result, WalkError};
use crate::graph::{Arc, Topology, WeightedGraph};
use crate::scalar::{czero, creal, Real};

/// Amplitude magnitude above which a line boundary vertex counts as reached.
pub const BOUNDARY_TOL: f64 = 1e-15;

/// Complex amplitudes indexed by the arcs of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> ArcState<T> {
    pub fn zeros(len: usize) -> Self {
        Self {
            amps: vec![czero(); len],
        }
    }

    pub fn from_vec(amps: Vec<Complex<T>>) -> Self {
        Self { amps }
    }

    /// The basis state on arc `index`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut s = Self::zeros(len);
        s.amps[index] = creal(T::one());
        s
    }

    /// Normalized state with i.i.d. complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = Self::from_vec(
            (0..len)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(T::lit(re), T::lit(im))
                })
                .collect(),
        );
        s.normalize();
        s
    }

    /// `N^{-1/2} Σ_v |v> ⊗ |s_v>`: the walker spread evenly over vertices,
    /// each vertex block in its weighted local superposition.
    pub fn uniform_weighted(g: &WeightedGraph<T>) -> Self {
        let scale = T::one() / T::from_usize_lossy(g.vertex_count()).sqrt();
        let sums = g.weight_sums();
        let idx = g.arc_index();
        Self::from_vec(
            (0..g.arc_count())
                .map(|i| {
                    let v = idx.arc(i).from;
                    creal(scale * g.arc_sqrt_weight(i) / sums[v].sqrt())
                })
                .collect(),
        )
    }

    /// Walker at `v` with coin amplitudes given per target vertex.
    pub fn localized(
        g: &WeightedGraph<T>,
        v: usize,
        coin: &[(usize, Complex<T>)],
    ) -> Result<Self> {
        g.check_vertex(v)?;
        let mut s = Self::zeros(g.arc_count());
        for &(u, a) in coin {
            let i = g
                .arc_index()
                .index_of(Arc::new(v, u))
                .ok_or(WalkError::VertexOutOfRange {
                    vertex: u,
                    count: g.vertex_count(),
                })?;
            s.amps[i] = a;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > T::zero() {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(czero(), |acc, x| acc + x)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.len(), other.len(), "state length mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<usize> for ArcState<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.amps[i]
    }
}

impl<T> IndexMut<usize> for ArcState<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.amps[i]
    }
}

/// How the walker hops after the coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    /// `(v, u) ↦ (u, v)`: hop and turn around.
    FlipFlop,
    /// Line only: hop and keep pointing the same way.
    Moving,
}

impl std::str::FromStr for ShiftKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "flipflop" | "flip-flop" => Ok(Self::FlipFlop),
            "moving" => Ok(Self::Moving),
            other => Err(format!("unknown shift `{other}`")),
        }
    }
}

pub(crate) fn check_dim<T>(g: &WeightedGraph<T>, len: usize) -> Result<()>
where
    T: Real,
{
    if len == g.arc_count() {
        Ok(())
    } else {
        Err(WalkError::DimensionMismatch {
            expected: g.arc_count(),
            got: len,
        })
    }
}

/// Entries of `|s_v>` over the arcs leaving `v`, in arc-index order:
/// `sqrt(w_vu / Σ_t w_vt)`.
pub fn local_superposition<T: Real>(g: &WeightedGraph<T>, v: usize) -> Result<Vec<T>> {
    let total = g.vertex_weight_sum(v)?.sqrt();
    Ok(g
        .arc_index()
        .block(v)
        .map(|i| g.arc_sqrt_weight(i) / total)
        .collect())
}

/// `ᾱ_v` for every vertex.
pub fn vertex_means<T: Real>(g: &WeightedGraph<T>, state: &ArcState<T>) -> Result<Vec<Complex<T>>> {
    check_dim(g, state.len())?;
    let idx = g.arc_index();
    let sqrt_w = g.arc_sqrt_weights();
    Ok((0..g.vertex_count())
        .map(|v| {
            let acc = idx
                .block(v)
                .fold(czero::<T>(), |acc, i| acc + state[i] * sqrt_w[i]);
            acc / g.weight_sums()[v]
        })
        .collect())
}

/// In-place weighted Grover coin on a raw amplitude slice.
pub(crate) fn coin_in_place<T: Real>(g: &WeightedGraph<T>, amps: &mut [Complex<T>]) {
    let idx = g.arc_index();
    let sqrt_w = g.arc_sqrt_weights();
    let sums = g.weight_sums();
    let two = T::lit(2.0);
    for v in 0..g.vertex_count() {
        let block = idx.block(v);
        let mean = block
            .clone()
            .fold(czero::<T>(), |acc, i| acc + amps[i] * sqrt_w[i])
            / sums[v];
        for i in block {
            amps[i] = mean * (two * sqrt_w[i]) - amps[i];
        }
    }
}

/// Grover diffusion coin `C = Σ_v |v><v| ⊗ (2|s_v><s_v| - I)`.
pub fn apply_coin<T: Real>(g: &WeightedGraph<T>, state: &ArcState<T>) -> Result<ArcState<T>> {
    check_dim(g, state.len())?;
    let mut out = state.clone();
    coin_in_place(g, &mut out.amps);
    Ok(out)
}

/// Destination arc index of arc `i` under the shift.
pub(crate) fn shift_target<T: Real>(g: &WeightedGraph<T>, i: usize, kind: ShiftKind) -> usize {
    let idx = g.arc_index();
    match kind {
        ShiftKind::FlipFlop => idx.reverse_of(i),
        ShiftKind::Moving => {
            let a = idx.arc(i);
            if a.is_loop() {
                return i;
            }
            // Keep heading the same way; the two end arcs reflect so the shift
            // stays a permutation of the finite line.
            let next = (2 * a.to).checked_sub(a.from);
            match next.and_then(|n| idx.index_of(Arc::new(a.to, n))) {
                Some(j) => j,
                None => idx.reverse_of(i),
            }
        }
    }
}

fn check_shift<T: Real>(g: &WeightedGraph<T>, kind: ShiftKind) -> Result<()> {
    if kind == ShiftKind::Moving && !matches!(g.topology(), Topology::Line { .. }) {
        Err(WalkError::MovingShiftUnsupported)
    } else {
        Ok(())
    }
}

pub(crate) fn shift_into<T: Real>(
    g: &WeightedGraph<T>,
    src: &[Complex<T>],
    dst: &mut [Complex<T>],
    kind: ShiftKind,
) {
    match kind {
        ShiftKind::FlipFlop => {
            let idx = g.arc_index();
            for (i, a) in src.iter().enumerate() {
                dst[idx.reverse_of(i)] = *a;
            }
        }
        ShiftKind::Moving => {
            for (i, a) in src.iter().enumerate() {
                dst[shift_target(g, i, kind)] = *a;
            }
        }
    }
}

/// Moves the amplitude on each arc to its shifted arc. Loop arcs are fixed
/// by both shifts.
pub fn apply_shift<T: Real>(
    g: &WeightedGraph<T>,
    state: &ArcState<T>,
    kind: ShiftKind,
) -> Result<ArcState<T>> {
    check_dim(g, state.len())?;
    check_shift(g, kind)?;
    let mut out = ArcState::zeros(state.len());
    shift_into(g, &state.amps, &mut out.amps, kind);
    Ok(out)
}

/// One step `S C`.
pub fn step<T: Real>(g: &WeightedGraph<T>, state: &ArcState<T>, kind: ShiftKind) -> Result<ArcState<T>> {
    check_dim(g, state.len())?;
    check_shift(g, kind)?;
    let mut coined = state.clone();
    coin_in_place(g, &mut coined.amps);
    let mut out = ArcState::zeros(state.len());
    shift_into(g, &coined.amps, &mut out.amps, kind);
    Ok(out)
}

/// Reusable evolution buffers for repeated steps on one graph.
#[derive(Debug)]
pub struct Stepper<'g, T> {
    graph: &'g WeightedGraph<T>,
    kind: ShiftKind,
    scratch: Vec<Complex<T>>,
}

impl<'g, T: Real> Stepper<'g, T> {
    pub fn new(graph: &'g WeightedGraph<T>, kind: ShiftKind) -> Result<Self> {
        check_shift(graph, kind)?;
        Ok(Self {
            graph,
            kind,
            scratch: vec![czero(); graph.arc_count()],
        })
    }

    pub fn graph(&self) -> &'g WeightedGraph<T> {
        self.graph
    }

    /// Applies `S C` in place.
    pub fn step(&mut self, state: &mut ArcState<T>) -> Result<()> {
        check_dim(self.graph, state.len())?;
        coin_in_place(self.graph, &mut state.amps);
        shift_into(self.graph, &state.amps, &mut self.scratch, self.kind);
        std::mem::swap(&mut state.amps, &mut self.scratch);
        Ok(())
    }
}

/// Largest amplitude modulus at either end vertex of a line graph.
pub fn boundary_amplitude<T: Real>(g: &WeightedGraph<T>, state: &ArcState<T>) -> Option<(usize, T)> {
    let half = g.line_half_width()?;
    let ends = [0, 2 * half];
    ends.iter()
        .map(|&v| {
            let m = g
                .arc_index()
                .block(v)
                .map(|i| state[i].norm())
                .fold(T::zero(), T::max);
            (v, m)
        })
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
}

/// `(S C)^t` applied to `state`. On line graphs, fails with
/// `BoundaryContamination` as soon as an end vertex carries amplitude.
pub fn evolve<T: Real>(
    g: &WeightedGraph<T>,
    state: &ArcState<T>,
    kind: ShiftKind,
    steps: usize,
) -> Result<ArcState<T>> {
    check_dim(g, state.len())?;
    let mut stepper = Stepper::new(g, kind)?;
    let mut s = state.clone();
    let tol = T::lit(BOUNDARY_TOL);
    for t in 1..=steps {
        stepper.step(&mut s)?;
        if let Some((vertex, amp)) = boundary_amplitude(g, &s) {
            if amp > tol {
                return Err(WalkError::BoundaryContamination {
                    vertex,
                    step: t,
                    amplitude: amp.to_f64_lossy(),
                });
            }
        }
    }
    Ok(s)
}

/// `p(v) = Σ_u |α_vu|²`.
pub fn vertex_probabilities<T: Real>(g: &WeightedGraph<T>, state: &ArcState<T>) -> Result<Vec<T>> {
    check_dim(g, state.len())?;
    let idx = g.arc_index();
    Ok((0..g.vertex_count())
        .map(|v| idx.block(v).map(|i| state[i].norm_sqr()).sum())
        .collect())
}
