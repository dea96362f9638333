//! Collapsing `k` identically-evolving unit self-loops into one loop of weight `k`.
//!
//! The unreduced walk keeps `k` distinct loop slots per vertex and runs its own
//! coin (reflection about the unweighted-loop local superposition). The reduced
//! walk is the ordinary weighted walk on the base graph with a weight-`k` loop.
//! [`project`](LoopReduction::project) and [`lift`](LoopReduction::lift) map
//! between them through `|σ> = (|1> + … + |k>)/sqrt(k)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Result, WalkError};
use crate::graph::{Arc, WeightedGraph};
use crate::scalar::{czero, Real};
use crate::search::apply_oracle;
use crate::walk::{apply_coin, boundary_amplitude, shift_target, step, ArcState, ShiftKind};

/// Largest slot-to-slot spread tolerated by [`LoopReduction::project`].
pub const UNIFORMITY_TOL: f64 = 1e-10;

/// Which evolution both walks run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dynamics {
    /// `U = S C`.
    Walk(ShiftKind),
    /// `U' = S C Q` with the flip-flop shift and the oracle on `marked`.
    Search { marked: usize },
}

/// A base graph with `k` parallel unit self-loops at every vertex, together
/// with its reduced counterpart (one loop of weight `k`).
#[derive(Debug, Clone)]
pub struct LoopReduction<T> {
    base: WeightedGraph<T>,
    k: usize,
    reduced: WeightedGraph<T>,
    /// Reduced arc index of every base arc.
    base_to_reduced: Vec<usize>,
    /// Reduced arc index of the loop at each vertex (`k > 0` only).
    loop_reduced: Vec<usize>,
}

/// Builds the unreduced lackadaisical walk on a loopless `base`.
///
/// `k` must be a non-negative integer; `k = 0` leaves the base graph as is.
pub fn build_unreduced_lackadaisical<T: Real>(
    base: &WeightedGraph<T>,
    k: T,
) -> Result<LoopReduction<T>> {
    if k < T::zero() || k.fract() != T::zero() || !k.is_finite() {
        return Err(WalkError::NonIntegerMultiplicity(k.to_f64_lossy()));
    }
    let k_count = k.to_usize().ok_or(WalkError::NonIntegerMultiplicity(k.to_f64_lossy()))?;
    let reduced = base.with_uniform_loops(k)?;
    let ridx = reduced.arc_index();
    let base_to_reduced = base
        .arc_index()
        .arcs()
        .iter()
        .map(|&a| ridx.index_of(a).expect("reduced graph contains base arcs"))
        .collect();
    let loop_reduced = if k_count > 0 {
        (0..base.vertex_count())
            .map(|v| ridx.index_of(Arc::new(v, v)).expect("loop added"))
            .collect()
    } else {
        Vec::new()
    };
    Ok(LoopReduction {
        base: base.clone(),
        k: k_count,
        reduced,
        base_to_reduced,
        loop_reduced,
    })
}

impl<T: Real> LoopReduction<T> {
    pub fn multiplicity(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &WeightedGraph<T> {
        &self.base
    }

    pub fn reduced(&self) -> &WeightedGraph<T> {
        &self.reduced
    }

    /// Dimension of the unreduced arc space: base arcs then `k` slots per vertex.
    pub fn full_len(&self) -> usize {
        self.base.arc_count() + self.base.vertex_count() * self.k
    }

    /// Position of loop slot `j` (0-based) at vertex `v` in a full state.
    pub fn slot_index(&self, v: usize, j: usize) -> usize {
        debug_assert!(j < self.k);
        self.base.arc_count() + v * self.k + j
    }

    fn check_full(&self, state: &ArcState<T>) -> Result<()> {
        if state.len() == self.full_len() {
            Ok(())
        } else {
            Err(WalkError::DimensionMismatch {
                expected: self.full_len(),
                got: state.len(),
            })
        }
    }

    /// Full state → reduced state. Fails if some vertex's loop slots differ by
    /// more than [`UNIFORMITY_TOL`].
    pub fn project(&self, full: &ArcState<T>) -> Result<ArcState<T>> {
        self.check_full(full)?;
        let mut out = ArcState::zeros(self.reduced.arc_count());
        for (i, &r) in self.base_to_reduced.iter().enumerate() {
            out[r] = full[i];
        }
        if self.k > 0 {
            let tol = T::lit(UNIFORMITY_TOL);
            let root_k = T::from_usize_lossy(self.k).sqrt();
            for v in 0..self.base.vertex_count() {
                let slots = &full.as_slice()[self.slot_index(v, 0)..self.slot_index(v, 0) + self.k];
                let first = slots[0];
                let spread = slots
                    .iter()
                    .map(|a| (a - first).norm())
                    .fold(T::zero(), T::max);
                if spread > tol {
                    return Err(WalkError::NonUniformGroup {
                        vertex: v,
                        spread: spread.to_f64_lossy(),
                    });
                }
                let sum = slots.iter().fold(czero::<T>(), |acc, a| acc + a);
                out[self.loop_reduced[v]] = sum / root_k;
            }
        }
        Ok(out)
    }

    /// Reduced state → group-uniform full state.
    pub fn lift(&self, reduced: &ArcState<T>) -> Result<ArcState<T>> {
        if reduced.len() != self.reduced.arc_count() {
            return Err(WalkError::DimensionMismatch {
                expected: self.reduced.arc_count(),
                got: reduced.len(),
            });
        }
        let mut out = ArcState::zeros(self.full_len());
        for (i, &r) in self.base_to_reduced.iter().enumerate() {
            out[i] = reduced[r];
        }
        if self.k > 0 {
            let root_k = T::from_usize_lossy(self.k).sqrt();
            for v in 0..self.base.vertex_count() {
                let a = reduced[self.loop_reduced[v]] / root_k;
                for j in 0..self.k {
                    let s = self.slot_index(v, j);
                    out[s] = a;
                }
            }
        }
        Ok(out)
    }

    /// Grover coin of the unreduced walk: at each vertex, reflection about the
    /// local superposition over base arcs (weights `w`) and `k` unit loop slots.
    pub fn coin_full(&self, state: &mut ArcState<T>) -> Result<()> {
        self.check_full(state)?;
        let idx = self.base.arc_index();
        let two = T::lit(2.0);
        let k = T::from_usize_lossy(self.k);
        let amps = state.as_mut_slice();
        for v in 0..self.base.vertex_count() {
            let block = idx.block(v);
            let slots = self.base.arc_count() + v * self.k..self.base.arc_count() + (v + 1) * self.k;
            let mut overlap = czero::<T>();
            let mut total = k;
            for i in block.clone() {
                overlap += amps[i] * self.base.arc_sqrt_weight(i);
                total += self.base.arc_weight(i);
            }
            for s in slots.clone() {
                overlap += amps[s];
            }
            let mean = overlap / total;
            for i in block {
                amps[i] = mean * (two * self.base.arc_sqrt_weight(i)) - amps[i];
            }
            for s in slots {
                amps[s] = mean * two - amps[s];
            }
        }
        Ok(())
    }

    /// Shift of the unreduced walk; loop slots stay put.
    pub fn shift_full(&self, state: &ArcState<T>, kind: ShiftKind) -> Result<ArcState<T>> {
        self.check_full(state)?;
        if kind == ShiftKind::Moving && self.base.line_half_width().is_none() {
            return Err(WalkError::MovingShiftUnsupported);
        }
        let mut out = state.clone();
        for i in 0..self.base.arc_count() {
            out[shift_target(&self.base, i, kind)] = state[i];
        }
        Ok(out)
    }

    /// Oracle of the unreduced walk: negates base arcs and loop slots at `marked`.
    pub fn oracle_full(&self, state: &mut ArcState<T>, marked: usize) -> Result<()> {
        self.check_full(state)?;
        self.base.check_vertex(marked)?;
        for i in self.base.arc_index().block(marked) {
            state[i] = -state[i];
        }
        for j in 0..self.k {
            let s = self.slot_index(marked, j);
            state[s] = -state[s];
        }
        Ok(())
    }

    pub fn step_full(&self, state: &ArcState<T>, dynamics: Dynamics) -> Result<ArcState<T>> {
        let mut s = state.clone();
        let kind = match dynamics {
            Dynamics::Walk(kind) => kind,
            Dynamics::Search { marked } => {
                self.oracle_full(&mut s, marked)?;
                ShiftKind::FlipFlop
            }
        };
        self.coin_full(&mut s)?;
        self.shift_full(&s, kind)
    }

    pub fn step_reduced(&self, state: &ArcState<T>, dynamics: Dynamics) -> Result<ArcState<T>> {
        match dynamics {
            Dynamics::Walk(kind) => step(&self.reduced, state, kind),
            Dynamics::Search { marked } => {
                let q = apply_oracle(&self.reduced, state, marked)?;
                let c = apply_coin(&self.reduced, &q)?;
                crate::walk::apply_shift(&self.reduced, &c, ShiftKind::FlipFlop)
            }
        }
    }
}

/// Outcome of [`verify_reduction`].
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub base: String,
    pub k: usize,
    pub steps: usize,
    /// `max_t ‖project(full_t) - reduced_t‖`.
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Evolves the unreduced walk from `lift(initial)` and the reduced walk from
/// `initial` side by side, projecting the full state at every step.
pub fn verify_reduction<T: Real>(
    reduction: &LoopReduction<T>,
    label: &str,
    initial: &ArcState<T>,
    dynamics: Dynamics,
    steps: usize,
    tol: T,
) -> Result<ReductionReport> {
    let mut full = reduction.lift(initial)?;
    let mut reduced = initial.clone();
    let mut max_dev = reduction.project(&full)?.max_abs_diff(&reduced);
    let boundary_tol = T::lit(crate::walk::BOUNDARY_TOL);
    for t in 1..=steps {
        full = reduction.step_full(&full, dynamics)?;
        reduced = reduction.step_reduced(&reduced, dynamics)?;
        if let Some((vertex, amp)) = boundary_amplitude(reduction.reduced(), &reduced) {
            if amp > boundary_tol {
                return Err(WalkError::BoundaryContamination {
                    vertex,
                    step: t,
                    amplitude: amp.to_f64_lossy(),
                });
            }
        }
        let dev = reduction.project(&full)?.max_abs_diff(&reduced);
        max_dev = max_dev.max(dev);
    }
    Ok(ReductionReport {
        base: label.to_string(),
        k: reduction.multiplicity(),
        steps,
        max_dev: max_dev.to_f64_lossy(),
        tol: tol.to_f64_lossy(),
        pass: max_dev < tol,
    })
}

/// Line of half-width `steps + 1` with `k` loops per vertex, moving shift,
/// walker starting at the origin in `(|-1> + i|1>)/sqrt(2)`.
pub fn verify_line_reduction<T: Real>(k: usize, steps: usize, tol: T) -> Result<ReductionReport> {
    let half = steps + 1;
    let base = WeightedGraph::line(half, T::zero())?;
    let reduction = build_unreduced_lackadaisical(&base, T::from_usize_lossy(k))?;
    let h = T::FRAC_1_SQRT_2();
    let initial = ArcState::localized(
        reduction.reduced(),
        half,
        &[
            (half - 1, Complex::new(h, T::zero())),
            (half + 1, Complex::new(T::zero(), h)),
        ],
    )?;
    verify_reduction(
        &reduction,
        &format!("line(M={half})"),
        &initial,
        Dynamics::Walk(ShiftKind::Moving),
        steps,
        tol,
    )
}

/// Complete graph on `n` vertices with `k` loops per vertex, search operator
/// `S C Q` marking vertex 0, from the uniform weighted superposition.
pub fn verify_search_reduction<T: Real>(
    n: usize,
    k: usize,
    steps: usize,
    tol: T,
) -> Result<ReductionReport> {
    let base = WeightedGraph::complete(n, T::zero())?;
    let reduction = build_unreduced_lackadaisical(&base, T::from_usize_lossy(k))?;
    let initial = ArcState::uniform_weighted(reduction.reduced());
    verify_reduction(
        &reduction,
        &format!("complete(N={n})"),
        &initial,
        Dynamics::Search { marked: 0 },
        steps,
        tol,
    )
}
