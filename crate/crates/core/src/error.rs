use thiserror::Error;

/// Every failure mode of the walk library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("edge ({from}, {to}) has non-positive weight {weight}")]
    NonPositiveWeight { from: usize, to: usize, weight: f64 },
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("vertex {0} has no incident edges")]
    IsolatedVertex(usize),
    #[error("graph must have at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("loop weight must be non-negative, got {0}")]
    NegativeLoopWeight(f64),
    #[error("deformation parameter rho must lie in [0, 1], got {0}")]
    RhoOutOfRange(f64),
    #[error("state has {got} amplitudes but the graph has {expected} arcs")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("moving shift is only defined on line graphs")]
    MovingShiftUnsupported,
    #[error("amplitude {amplitude:e} reached boundary vertex {vertex} at step {step}")]
    BoundaryContamination { vertex: usize, step: usize, amplitude: f64 },
    #[error("loop multiplicity must be a non-negative integer, got {0}")]
    NonIntegerMultiplicity(f64),
    #[error("reduction base graph must be loopless (vertex {0} has a self-loop)")]
    BaseHasLoops(usize),
    #[error("loop group at vertex {vertex} is not uniform (spread {spread:e})")]
    NonUniformGroup { vertex: usize, spread: f64 },
    #[error("no peak above threshold on the {side} side")]
    NoPeakFound { side: &'static str },
    #[error("regime of l = {loop_weight} at N = {n} is ambiguous; supply the ratio c = l/N explicitly")]
    AmbiguousRegime { n: usize, loop_weight: f64 },
    #[error("state vector of {arcs} arcs exceeds the allocation limit")]
    TooLarge { arcs: u128 },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
