//! Discrete-time coined quantum walks on weighted graphs.
//!
//! The coin at each vertex reflects about the weighted local superposition
//! `|s_v> ∝ Σ_u sqrt(w_vu) |u>`. With the flip-flop shift two coined steps equal
//! one step of Szegedy's walk on the bipartite double cover; with the moving
//! shift on the line the walk is a different one. `k` identically-evolving
//! unit self-loops behave exactly like a single loop of weight `k`, which
//! extends lackadaisical walks to real loop weights.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`). The aliases
//! at the crate root fix `f64`, which all verification tolerances assume.
//!
//! ```
//! use wqwalk::{Graph, State, ShiftKind, walk};
//!
//! let g = Graph::complete(8, 1.0).unwrap();
//! let psi = State::uniform_weighted(&g);
//! let out = walk::evolve(&g, &psi, ShiftKind::FlipFlop, 10).unwrap();
//! assert!((out.norm() - 1.0).abs() < 1e-12);
//! ```

pub mod dense;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod line;
pub mod random;
pub mod reduction;
pub mod scalar;
pub mod search;
pub mod szegedy;
pub mod walk;

pub use error::{Result, WalkError};
pub use graph::{Arc, ArcIndex, Edge, Topology, WeightedGraph};
pub use scalar::Real;
pub use walk::{ArcState, ShiftKind};

/// Double-precision weighted graph.
pub type Graph = WeightedGraph<f64>;
/// Double-precision arc state.
pub type State = ArcState<f64>;
pub type EdgeState = szegedy::EdgeState<f64>;
pub type TransitionMatrix = szegedy::TransitionMatrix<f64>;
pub type LineCoin3 = line::LineCoin3<f64>;
pub type PositionDistribution = line::PositionDistribution<f64>;
pub type SearchParams = search::SearchParams<f64>;
pub type SubspaceState4 = search::SubspaceState4<f64>;
pub type PiecewisePrediction = search::PiecewisePrediction<f64>;
pub type LoopReduction = reduction::LoopReduction<f64>;
