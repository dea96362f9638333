//! Weighted undirected graphs and the dense arc index used by every state vector.
//!
//! A graph stores each undirected edge once; a self-loop at `v` is the edge
//! `{v, v}` and contributes the single arc `(v, v)`. Arcs are enumerated in
//! `(from, to)` order so that the arcs leaving a vertex form one contiguous
//! block of the state vector.

use std::fmt;

use crate::error::{Result, WalkError};
use crate::scalar::Real;

/// Hard cap on the number of arcs any constructor will allocate.
pub const MAX_ARCS: usize = 1 << 28;

/// Undirected edge with a positive weight. `a <= b`; `a == b` is a self-loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub a: usize,
    pub b: usize,
    pub weight: T,
}

impl<T> Edge<T> {
    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// Directed arc: a walker at `from` pointing towards `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
}

impl Arc {
    pub const fn new(from: usize, to: usize) -> Self {
        Self { from, to }
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    pub fn reversed(self) -> Self {
        Self::new(self.to, self.from)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

/// Dense bijection between arcs and `0..arc_count`, sorted by `(from, to)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcIndex {
    arcs: Vec<Arc>,
    /// `offsets[v]..offsets[v + 1]` is the block of arcs leaving `v`.
    offsets: Vec<usize>,
    /// Index of the reversed arc; loop arcs map to themselves.
    reverse: Vec<usize>,
}

impl ArcIndex {
    fn from_sorted(vertex_count: usize, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = vec![0usize; vertex_count + 1];
        for arc in &arcs {
            offsets[arc.from + 1] += 1;
        }
        for v in 0..vertex_count {
            offsets[v + 1] += offsets[v];
        }
        let mut index = Self {
            arcs,
            offsets,
            reverse: Vec::new(),
        };
        index.reverse = index
            .arcs
            .iter()
            .map(|a| {
                index
                    .index_of(a.reversed())
                    .expect("undirected edge set yields both orientations")
            })
            .collect();
        index
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc(&self, index: usize) -> Arc {
        self.arcs[index]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Index range of the arcs leaving `v`.
    pub fn block(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn index_of(&self, arc: Arc) -> Option<usize> {
        if arc.from >= self.vertex_count() {
            return None;
        }
        let block = self.block(arc.from);
        self.arcs[block.clone()]
            .binary_search_by_key(&arc.to, |a| a.to)
            .ok()
            .map(|i| block.start + i)
    }

    pub fn reverse_of(&self, index: usize) -> usize {
        self.reverse[index]
    }
}

/// How a graph was built. Only line graphs support the moving shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    General,
    /// Path on positions `-half_width..=half_width`, vertex `x + half_width`.
    Line { half_width: usize },
    Complete,
}

/// Undirected graph with positive real edge weights and optional self-loops.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct WeightedGraph<T> {
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    index: ArcIndex,
    arc_weights: Vec<T>,
    arc_sqrt_weights: Vec<T>,
    weight_sums: Vec<T>,
    topology: Topology,
}

impl<T: Real> WeightedGraph<T> {
    /// Validates and builds a graph from `(v, u, weight)` triples.
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize, T)]) -> Result<Self> {
        Self::with_topology(vertex_count, edge_list, Topology::General)
    }

    fn with_topology(
        vertex_count: usize,
        edge_list: &[(usize, usize, T)],
        topology: Topology,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(WalkError::TooFewVertices { min: 1, got: 0 });
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(v, u, w) in edge_list {
            for x in [v, u] {
                if x >= vertex_count {
                    return Err(WalkError::VertexOutOfRange {
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            if !(w > T::zero()) || !w.is_finite() {
                return Err(WalkError::NonPositiveWeight {
                    from: v,
                    to: u,
                    weight: w.to_f64_lossy(),
                });
            }
            edges.push(Edge {
                a: v.min(u),
                b: v.max(u),
                weight: w,
            });
        }
        edges.sort_by_key(|e| (e.a, e.b));
        if let Some(pair) = edges.windows(2).find(|p| (p[0].a, p[0].b) == (p[1].a, p[1].b)) {
            return Err(WalkError::DuplicateEdge(pair[0].a, pair[0].b));
        }

        let arc_total: usize = edges.iter().map(|e| if e.is_loop() { 1 } else { 2 }).sum();
        if arc_total > MAX_ARCS {
            return Err(WalkError::TooLarge {
                arcs: arc_total as u128,
            });
        }
        let mut weighted_arcs: Vec<(Arc, T)> = Vec::with_capacity(arc_total);
        for e in &edges {
            weighted_arcs.push((Arc::new(e.a, e.b), e.weight));
            if !e.is_loop() {
                weighted_arcs.push((Arc::new(e.b, e.a), e.weight));
            }
        }
        weighted_arcs.sort_by_key(|(a, _)| *a);

        let index = ArcIndex::from_sorted(
            vertex_count,
            weighted_arcs.iter().map(|(a, _)| *a).collect(),
        );
        if let Some(v) = (0..vertex_count).find(|&v| index.degree(v) == 0) {
            return Err(WalkError::IsolatedVertex(v));
        }
        let arc_weights: Vec<T> = weighted_arcs.iter().map(|(_, w)| *w).collect();
        let arc_sqrt_weights = arc_weights.iter().map(|w| w.sqrt()).collect();
        let weight_sums = (0..vertex_count)
            .map(|v| index.block(v).map(|i| arc_weights[i]).sum())
            .collect();

        Ok(Self {
            vertex_count,
            edges,
            index,
            arc_weights,
            arc_sqrt_weights,
            weight_sums,
            topology,
        })
    }

    /// Complete graph on `n` vertices with unit edges and, when
    /// `loop_weight > 0`, a self-loop of that weight at every vertex.
    pub fn complete(n: usize, loop_weight: T) -> Result<Self> {
        if n < 2 {
            return Err(WalkError::TooFewVertices { min: 2, got: n });
        }
        check_loop_weight(loop_weight)?;
        let arcs = (n as u128) * (n as u128);
        if arcs > MAX_ARCS as u128 {
            return Err(WalkError::TooLarge { arcs });
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2 + n);
        for v in 0..n {
            if loop_weight > T::zero() {
                edges.push((v, v, loop_weight));
            }
            for u in v + 1..n {
                edges.push((v, u, T::one()));
            }
        }
        Self::with_topology(n, &edges, Topology::Complete)
    }

    /// Path on positions `-half_width..=half_width` with unit edges and an
    /// optional weight-`loop_weight` self-loop at every vertex.
    pub fn line(half_width: usize, loop_weight: T) -> Result<Self> {
        if half_width == 0 {
            return Err(WalkError::TooFewVertices { min: 3, got: 1 });
        }
        check_loop_weight(loop_weight)?;
        let n = 2 * half_width + 1;
        let mut edges = Vec::with_capacity(2 * n);
        for v in 0..n {
            if loop_weight > T::zero() {
                edges.push((v, v, loop_weight));
            }
            if v + 1 < n {
                edges.push((v, v + 1, T::one()));
            }
        }
        Self::with_topology(n, &edges, Topology::Line { half_width })
    }

    /// Same edges plus a weight-`loop_weight` self-loop at every vertex.
    /// The topology tag is kept. Fails if the graph already has a loop.
    pub fn with_uniform_loops(&self, loop_weight: T) -> Result<Self> {
        check_loop_weight(loop_weight)?;
        if let Some(e) = self.edges.iter().find(|e| e.is_loop()) {
            return Err(WalkError::BaseHasLoops(e.a));
        }
        let mut edges: Vec<_> = self.edges.iter().map(|e| (e.a, e.b, e.weight)).collect();
        if loop_weight > T::zero() {
            edges.extend((0..self.vertex_count).map(|v| (v, v, loop_weight)));
        }
        Self::with_topology(self.vertex_count, &edges, self.topology)
    }

    /// Parses the whitespace-separated `v u w` edge-list format.
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_vertex = None::<usize>;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |message: String| WalkError::Parse {
                line: lineno + 1,
                message,
            };
            if fields.len() != 3 {
                return Err(parse_err(format!("expected `v u w`, got {} fields", fields.len())));
            }
            let v: usize = fields[0]
                .parse()
                .map_err(|e| parse_err(format!("vertex `{}`: {e}", fields[0])))?;
            let u: usize = fields[1]
                .parse()
                .map_err(|e| parse_err(format!("vertex `{}`: {e}", fields[1])))?;
            let w: f64 = fields[2]
                .parse()
                .map_err(|e| parse_err(format!("weight `{}`: {e}", fields[2])))?;
            max_vertex = Some(max_vertex.map_or(v.max(u), |m| m.max(v).max(u)));
            edges.push((v, u, T::lit(w)));
        }
        let n = max_vertex.map_or(0, |m| m + 1);
        Self::new(n, &edges)
    }

    /// Inverse of [`parse_edge_list`](Self::parse_edge_list).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.a, e.b, e.weight));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.index.len()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn arc_index(&self) -> &ArcIndex {
        &self.index
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn line_half_width(&self) -> Option<usize> {
        match self.topology {
            Topology::Line { half_width } => Some(half_width),
            _ => None,
        }
    }

    /// Weight of the edge underlying arc `index`.
    pub fn arc_weight(&self, index: usize) -> T {
        self.arc_weights[index]
    }

    pub fn arc_sqrt_weight(&self, index: usize) -> T {
        self.arc_sqrt_weights[index]
    }

    pub(crate) fn arc_sqrt_weights(&self) -> &[T] {
        &self.arc_sqrt_weights
    }

    /// Weight of edge `{v, u}`, if present.
    pub fn weight(&self, v: usize, u: usize) -> Option<T> {
        self.index
            .index_of(Arc::new(v, u))
            .map(|i| self.arc_weights[i])
    }

    /// Sum of the weights of the edges incident on `v`; a self-loop counts once.
    pub fn vertex_weight_sum(&self, v: usize) -> Result<T> {
        self.check_vertex(v)?;
        Ok(self.weight_sums[v])
    }

    pub(crate) fn weight_sums(&self) -> &[T] {
        &self.weight_sums
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(WalkError::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop())
    }
}

fn check_loop_weight<T: Real>(loop_weight: T) -> Result<()> {
    if loop_weight < T::zero() || !loop_weight.is_finite() {
        Err(WalkError::NegativeLoopWeight(loop_weight.to_f64_lossy()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = WeightedGraph<f64>;

    fn star(w: f64) -> G {
        G::new(5, &[(0, 1, w), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]).unwrap()
    }

    #[test]
    fn star_graph() {
        let g = star(4.0);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.arc_count(), 8);
        assert_eq!(g.vertex_weight_sum(0).unwrap(), 7.0);
        assert_eq!(g.vertex_weight_sum(1).unwrap(), 4.0);
        assert_eq!(g.weight(1, 0), Some(4.0));
        assert_eq!(g.weight(1, 2), None);
    }

    #[test]
    fn single_weighted_loop() {
        let g = G::new(1, &[(0, 0, 2.5)]).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.arc_index().arc(0), Arc::new(0, 0));
        assert_eq!(g.arc_index().reverse_of(0), 0);
        assert_eq!(g.vertex_weight_sum(0).unwrap(), 2.5);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            G::new(2, &[(0, 1, 0.0)]),
            Err(WalkError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            G::new(2, &[(0, 1, -1.0)]),
            Err(WalkError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            G::new(2, &[(0, 1, f64::NAN)]),
            Err(WalkError::NonPositiveWeight { .. })
        ));
        assert_eq!(
            G::new(2, &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap_err(),
            WalkError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            G::new(2, &[(0, 2, 1.0)]).unwrap_err(),
            WalkError::VertexOutOfRange { vertex: 2, count: 2 }
        );
        assert_eq!(
            G::new(3, &[(0, 1, 1.0)]).unwrap_err(),
            WalkError::IsolatedVertex(2)
        );
        assert!(star(1.0).vertex_weight_sum(5).is_err());
    }

    #[test]
    fn complete_graph_arc_counts() {
        assert_eq!(G::complete(6, 0.0).unwrap().arc_count(), 30);
        assert_eq!(G::complete(6, 1.0).unwrap().arc_count(), 36);
        let k2 = G::complete(2, 3.0).unwrap();
        assert_eq!(k2.arc_count(), 4);
        assert_eq!(
            k2.arc_index().arcs(),
            &[Arc::new(0, 0), Arc::new(0, 1), Arc::new(1, 0), Arc::new(1, 1)]
        );
        let k6 = G::complete(6, 1.0).unwrap();
        for v in 0..6 {
            assert_eq!(k6.vertex_weight_sum(v).unwrap(), 6.0);
        }
        assert!(G::complete(1, 0.0).is_err());
        assert!(G::complete(4, -0.5).is_err());
    }

    #[test]
    fn line_graph_arc_counts() {
        assert_eq!(G::line(1, 0.0).unwrap().arc_count(), 4);
        let g = G::line(2, 10.0).unwrap();
        let loops = g.arc_index().arcs().iter().filter(|a| a.is_loop()).count();
        assert_eq!((g.arc_count() - loops, loops), (8, 5));
        let g = G::line(100, 0.5).unwrap();
        assert_eq!(g.arc_count(), 400 + 201);
        assert_eq!(g.line_half_width(), Some(100));
    }

    #[test]
    fn arc_index_round_trip_and_blocks() {
        let g = G::complete(5, 0.7).unwrap();
        let idx = g.arc_index();
        for i in 0..idx.len() {
            assert_eq!(idx.index_of(idx.arc(i)), Some(i));
            let r = idx.reverse_of(i);
            assert_eq!(idx.arc(r), idx.arc(i).reversed());
        }
        let total: usize = (0..5).map(|v| idx.degree(v)).sum();
        assert_eq!(total, idx.len());
        for v in 0..5 {
            assert!(idx.block(v).all(|i| idx.arc(i).from == v));
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# star\n0 1 4\n0 2 1 # inline\n\n0 3 1\n0 4 1\n2 2 0.5\n";
        let g = G::parse_edge_list(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.vertex_weight_sum(2).unwrap(), 1.5);
        let again = G::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(again.edges(), g.edges());
        assert!(matches!(
            G::parse_edge_list("0 1\n"),
            Err(WalkError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            G::parse_edge_list("0 1 x\n"),
            Err(WalkError::Parse { .. })
        ));
    }

    #[test]
    fn with_uniform_loops_keeps_topology() {
        let base = G::line(3, 0.0).unwrap();
        let g = base.with_uniform_loops(2.0).unwrap();
        assert_eq!(g.line_half_width(), Some(3));
        assert_eq!(g.arc_count(), base.arc_count() + 7);
        assert_eq!(
            g.with_uniform_loops(1.0).unwrap_err(),
            WalkError::BaseHasLoops(0)
        );
    }
}
