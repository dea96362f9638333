//! Szegedy's walk on the bipartite double cover of a weighted graph, and the
//! check that two flip-flop coined steps equal one Szegedy step.
//!
//! The double cover is not built explicitly: the edge `(x ∈ X, y ∈ Y)` is
//! identified with the arc `(x, y)` of the original graph, so an
//! [`EdgeState`] shares the [`ArcIndex`](crate::graph::ArcIndex) layout.
//! The reflections here are built from the transition matrix `P` alone and
//! do not call into the coin code.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Result, WalkError};
use crate::graph::{Arc, WeightedGraph};
use crate::scalar::{czero, Real};
use crate::walk::{apply_coin, apply_shift, step, ArcState, ShiftKind};

/// Row-stochastic `P_vu = w_vu / Σ_t w_vt`, stored per arc.
#[derive(Debug, Clone)]
pub struct TransitionMatrix<T> {
    n: usize,
    /// `P` restricted to its support, indexed like the arcs.
    per_arc: Vec<T>,
    arcs: Vec<Arc>,
}

impl<T: Real> TransitionMatrix<T> {
    pub fn new(g: &WeightedGraph<T>) -> Self {
        let idx = g.arc_index();
        let per_arc = (0..g.arc_count())
            .map(|i| {
                let from = idx.arc(i).from;
                g.arc_weight(i) / g.vertex_weight_sum(from).expect("arc source in range")
            })
            .collect();
        Self {
            n: g.vertex_count(),
            per_arc,
            arcs: idx.arcs().to_vec(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `P_vu`; zero off the support.
    pub fn get(&self, v: usize, u: usize) -> T {
        self.arcs
            .binary_search(&Arc::new(v, u))
            .map_or(T::zero(), |i| self.per_arc[i])
    }

    pub fn dense(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.n]; self.n];
        for (a, p) in self.arcs.iter().zip(&self.per_arc) {
            m[a.from][a.to] = *p;
        }
        m
    }

    pub fn row_sums(&self) -> Vec<T> {
        let mut sums = vec![T::zero(); self.n];
        for (a, p) in self.arcs.iter().zip(&self.per_arc) {
            sums[a.from] += *p;
        }
        sums
    }
}

pub fn transition_matrix<T: Real>(g: &WeightedGraph<T>) -> TransitionMatrix<T> {
    TransitionMatrix::new(g)
}

/// Amplitudes over the edges `(x, y)` of the bipartite double cover.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeState<T>(ArcState<T>);

impl<T: Real> EdgeState<T> {
    /// Edge `(x, y)` ↔ coined walker at `x` pointing to `y`.
    pub fn from_arc_state(state: ArcState<T>) -> Self {
        Self(state)
    }

    pub fn to_arc_state(&self) -> ArcState<T> {
        self.0.clone()
    }

    pub fn into_arc_state(self) -> ArcState<T> {
        self.0
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        self.0.as_slice()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0.max_abs_diff(&other.0)
    }
}

fn check_edges<T: Real>(g: &WeightedGraph<T>, s: &EdgeState<T>) -> Result<()> {
    if s.len() == g.arc_count() {
        Ok(())
    } else {
        Err(WalkError::DimensionMismatch {
            expected: g.arc_count(),
            got: s.len(),
        })
    }
}

/// Reflects each group of edges about `Σ_j c_j |e_j>`; `groups` lists
/// `(edge index, c_j)` pairs for one reflection axis.
fn reflect_groups<T: Real>(
    amps: &[Complex<T>],
    groups: impl Iterator<Item = Vec<(usize, T)>>,
) -> Vec<Complex<T>> {
    let mut out = vec![czero(); amps.len()];
    let two = T::lit(2.0);
    for group in groups {
        let overlap = group
            .iter()
            .fold(czero::<T>(), |acc, &(e, c)| acc + amps[e] * c);
        for &(e, c) in &group {
            out[e] = overlap * (two * c) - amps[e];
        }
    }
    out
}

/// `R1 = 2 Σ_x |φ_x><φ_x| - I`, `|φ_x> = |x> ⊗ Σ_y sqrt(P_xy) |y>`.
pub fn apply_r1<T: Real>(g: &WeightedGraph<T>, state: &EdgeState<T>) -> Result<EdgeState<T>> {
    check_edges(g, state)?;
    let p = TransitionMatrix::new(g);
    let idx = g.arc_index();
    let groups = (0..g.vertex_count()).map(|x| {
        idx.block(x)
            .map(|e| (e, p.get(x, idx.arc(e).to).sqrt()))
            .collect::<Vec<_>>()
    });
    let out = reflect_groups(state.as_slice(), groups);
    Ok(EdgeState(ArcState::from_vec(out)))
}

/// `R2 = 2 Σ_y |ψ_y><ψ_y| - I`, `|ψ_y> = Σ_x sqrt(P_yx) |x> ⊗ |y>`.
pub fn apply_r2<T: Real>(g: &WeightedGraph<T>, state: &EdgeState<T>) -> Result<EdgeState<T>> {
    check_edges(g, state)?;
    let p = TransitionMatrix::new(g);
    let idx = g.arc_index();
    let groups = (0..g.vertex_count()).map(|y| {
        idx.block(y)
            .map(|i| {
                let x = idx.arc(i).to;
                let e = idx
                    .index_of(Arc::new(x, y))
                    .expect("double cover edge for every neighbour");
                (e, p.get(y, x).sqrt())
            })
            .collect::<Vec<_>>()
    });
    let out = reflect_groups(state.as_slice(), groups);
    Ok(EdgeState(ArcState::from_vec(out)))
}

/// `W = R2 R1`.
pub fn apply_w<T: Real>(g: &WeightedGraph<T>, state: &EdgeState<T>) -> Result<EdgeState<T>> {
    apply_r2(g, &apply_r1(g, state)?)
}

/// `W† = R1 R2`.
pub fn apply_w_adjoint<T: Real>(g: &WeightedGraph<T>, state: &EdgeState<T>) -> Result<EdgeState<T>> {
    apply_r1(g, &apply_r2(g, state)?)
}

/// Largest deviations found by [`verify_equivalence`].
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub graph: String,
    pub shift: String,
    pub trials: usize,
    #[serde(rename = "max_dev_C_R1")]
    pub max_dev_c_r1: f64,
    #[serde(rename = "max_dev_SCS_R2")]
    pub max_dev_scs_r2: f64,
    #[serde(rename = "max_dev_U2_W")]
    pub max_dev_u2_w: f64,
    /// Whether the exhaustive dense comparison also ran (graphs of ≤ 8 vertices).
    pub dense_checked: bool,
    pub tol: f64,
    pub pass: bool,
}

/// Graphs up to this many vertices also get the dense-matrix comparison.
pub const DENSE_CHECK_MAX_VERTICES: usize = 8;

struct Deviations<T> {
    c_r1: T,
    scs_r2: T,
    u2_w: T,
}

impl<T: Real> Deviations<T> {
    fn zero() -> Self {
        Self {
            c_r1: T::zero(),
            scs_r2: T::zero(),
            u2_w: T::zero(),
        }
    }

    fn merge(&mut self, c_r1: T, scs_r2: T, u2_w: T) {
        self.c_r1 = self.c_r1.max(c_r1);
        self.scs_r2 = self.scs_r2.max(scs_r2);
        self.u2_w = self.u2_w.max(u2_w);
    }
}

fn deviations_on<T: Real>(
    g: &WeightedGraph<T>,
    psi: &ArcState<T>,
    kind: ShiftKind,
) -> Result<(T, T, T)> {
    let edge = EdgeState::from_arc_state(psi.clone());
    let c = apply_coin(g, psi)?;
    let r1 = apply_r1(g, &edge)?;
    let scs = apply_shift(g, &apply_coin(g, &apply_shift(g, psi, kind)?)?, kind)?;
    let r2 = apply_r2(g, &edge)?;
    let u2 = step(g, &step(g, psi, kind)?, kind)?;
    let w = apply_w(g, &edge)?;
    Ok((
        c.max_abs_diff(&r1.0),
        scs.max_abs_diff(&r2.0),
        u2.max_abs_diff(&w.0),
    ))
}

/// Compares `C` with `R1`, `S C S` with `R2` and `U²` with `W` under the
/// arc ↔ edge bijection, on `trials` random normalized states and, for small
/// graphs, as full matrices. Report only; never fails on a deviation.
pub fn verify_equivalence<T: Real, R: Rng + ?Sized>(
    g: &WeightedGraph<T>,
    label: &str,
    kind: ShiftKind,
    trials: usize,
    tol: T,
    rng: &mut R,
) -> Result<EquivalenceReport> {
    let mut dev = Deviations::zero();
    for _ in 0..trials {
        let psi = ArcState::random(g.arc_count(), rng);
        let (a, b, c) = deviations_on(g, &psi, kind)?;
        dev.merge(a, b, c);
    }
    let dense_checked = g.vertex_count() <= DENSE_CHECK_MAX_VERTICES;
    if dense_checked {
        let (a, b, c) = dense_deviations(g, kind)?;
        dev.merge(a, b, c);
    }
    let pass = dev.c_r1 < tol && dev.scs_r2 < tol && dev.u2_w < tol;
    Ok(EquivalenceReport {
        graph: label.to_string(),
        shift: format!("{kind:?}"),
        trials,
        max_dev_c_r1: dev.c_r1.to_f64_lossy(),
        max_dev_scs_r2: dev.scs_r2.to_f64_lossy(),
        max_dev_u2_w: dev.u2_w.to_f64_lossy(),
        dense_checked,
        tol: tol.to_f64_lossy(),
        pass,
    })
}

fn probe<T: Real, F>(n: usize, f: F) -> Result<DenseMatrix<T>>
where
    F: Fn(ArcState<T>) -> Result<ArcState<T>>,
{
    let mut err = None;
    let m = DenseMatrix::from_operator(n, |x| match f(ArcState::from_vec(x.to_vec())) {
        Ok(s) => s.into_vec(),
        Err(e) => {
            err.get_or_insert(e);
            vec![czero(); n]
        }
    });
    err.map_or(Ok(m), Err)
}

fn dense_deviations<T: Real>(g: &WeightedGraph<T>, kind: ShiftKind) -> Result<(T, T, T)> {
    let n = g.arc_count();
    let c = probe(n, |s| apply_coin(g, &s))?;
    let r1 = probe(n, |s| Ok(apply_r1(g, &EdgeState(s))?.0))?;
    let scs = probe(n, |s| apply_shift(g, &apply_coin(g, &apply_shift(g, &s, kind)?)?, kind))?;
    let r2 = probe(n, |s| Ok(apply_r2(g, &EdgeState(s))?.0))?;
    let u = probe(n, |s| step(g, &s, kind))?;
    let w = probe(n, |s| Ok(apply_w(g, &EdgeState(s))?.0))?;
    Ok((
        c.max_abs_diff(&r1),
        scs.max_abs_diff(&r2),
        u.matmul(&u).max_abs_diff(&w),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_weighted_graph;
    use crate::scalar::creal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type G = WeightedGraph<f64>;

    fn star(w: f64) -> G {
        G::new(5, &[(0, 1, w), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]).unwrap()
    }

    #[test]
    fn star_transition_probabilities() {
        let w = 4.0;
        let p = transition_matrix(&star(w));
        assert_eq!(p.get(0, 1), w / (w + 3.0));
        for u in 2..5 {
            assert_eq!(p.get(0, u), 1.0 / (w + 3.0));
            assert_eq!(p.get(u, 0), 1.0);
        }
        assert_eq!(p.get(1, 0), 1.0);
        assert_eq!(p.get(1, 2), 0.0);
        for s in p.row_sums() {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn regular_and_loop_chains() {
        let p = transition_matrix(&G::complete(5, 0.0).unwrap());
        assert_eq!(p.get(3, 1), 0.25);
        assert_eq!(p.get(3, 3), 0.0);
        let single = G::new(1, &[(0, 0, 2.5)]).unwrap();
        assert_eq!(transition_matrix(&single).dense(), vec![vec![1.0]]);
    }

    #[test]
    fn r1_fixes_phi_0() {
        let w: f64 = 4.0;
        let g = star(w);
        let n = (w + 3.0).sqrt();
        let phi0 = ArcState::localized(
            &g,
            0,
            &[
                (1, creal(w.sqrt() / n)),
                (2, creal(1.0 / n)),
                (3, creal(1.0 / n)),
                (4, creal(1.0 / n)),
            ],
        )
        .unwrap();
        let e = EdgeState::from_arc_state(phi0);
        assert!(apply_r1(&g, &e).unwrap().max_abs_diff(&e) < 1e-15);
    }

    #[test]
    fn r1_negates_orthogonal_state() {
        let g = star(4.0);
        // (1, -2, 0, 0) at x=0 is orthogonal to (2, 1, 1, 1); every other x has
        // a single edge and the state is zero there.
        let mut s = ArcState::localized(&g, 0, &[(1, creal(1.0)), (2, creal(-2.0))]).unwrap();
        s.normalize();
        let e = EdgeState::from_arc_state(s.clone());
        let out = apply_r1(&g, &e).unwrap().into_arc_state();
        for i in 0..s.len() {
            assert!((out[i] + s[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn reflections_are_involutions_and_w_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g: WeightedGraph<f64> = random_weighted_graph(&mut rng, 8, 5.0);
            let e = EdgeState::from_arc_state(ArcState::random(g.arc_count(), &mut rng));
            let r1r1 = apply_r1(&g, &apply_r1(&g, &e).unwrap()).unwrap();
            let r2r2 = apply_r2(&g, &apply_r2(&g, &e).unwrap()).unwrap();
            assert!(r1r1.max_abs_diff(&e) < 1e-12);
            assert!(r2r2.max_abs_diff(&e) < 1e-12);
            let back = apply_w_adjoint(&g, &apply_w(&g, &e).unwrap()).unwrap();
            assert!(back.max_abs_diff(&e) < 1e-12);
        }
    }

    #[test]
    fn w_matches_dense_product_on_star() {
        let g = star(4.0);
        let n = g.arc_count();
        let r1 = probe(n, |s| Ok(apply_r1(&g, &EdgeState(s))?.0)).unwrap();
        let r2 = probe(n, |s| Ok(apply_r2(&g, &EdgeState(s))?.0)).unwrap();
        let w = r2.matmul(&r1);
        assert!(r1.unitarity_deviation() < 1e-12);
        assert!(r2.unitarity_deviation() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = ArcState::random(n, &mut rng);
        let got = apply_w(&g, &EdgeState::from_arc_state(psi.clone())).unwrap();
        let want = ArcState::from_vec(w.mul_vec(psi.as_slice()));
        assert!(got.into_arc_state().max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn cycle_two_coined_steps_equal_one_szegedy_step() {
        let g = G::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = verify_equivalence(&g, "C4", ShiftKind::FlipFlop, 10, 1e-12, &mut rng).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.dense_checked);
    }

    #[test]
    fn moving_shift_is_a_different_walk() {
        let g = G::line(5, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = verify_equivalence(&g, "line", ShiftKind::Moving, 5, 1e-12, &mut rng).unwrap();
        assert!(!r.pass);
        assert!(r.max_dev_c_r1 < 1e-12);
        assert!(r.max_dev_u2_w > 0.1, "{r:?}");
    }

    #[test]
    fn dimension_checked() {
        let g = star(1.0);
        let e = EdgeState::from_arc_state(ArcState::zeros(3));
        assert!(matches!(
            apply_w(&g, &e),
            Err(WalkError::DimensionMismatch { .. })
        ));
    }
}
