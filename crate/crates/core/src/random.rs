//! Seeded random graphs for fuzzing the operator identities.

use rand::Rng;

use crate::graph::WeightedGraph;
use crate::scalar::Real;

/// Weight uniform in `(0, max_weight]`.
pub fn random_weight<T: Real, R: Rng + ?Sized>(rng: &mut R, max_weight: f64) -> T {
    let u: f64 = rng.random();
    T::lit(max_weight * (1.0 - u))
}

/// Random connected-ish weighted graph on 2..=`max_vertices` vertices.
///
/// Each vertex pair is an edge with probability 1/2 and each vertex gets a
/// self-loop with probability 1/3; vertices left isolated are attached to a
/// random other vertex. Weights are uniform in `(0, max_weight]`.
pub fn random_weighted_graph<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    max_weight: f64,
) -> WeightedGraph<T> {
    assert!(max_vertices >= 2);
    let n = rng.random_range(2..=max_vertices);
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 0..n {
        if rng.random_bool(1.0 / 3.0) {
            adjacent[v][v] = true;
            edges.push((v, v, random_weight(rng, max_weight)));
        }
        for u in v + 1..n {
            if rng.random_bool(0.5) {
                adjacent[v][u] = true;
                adjacent[u][v] = true;
                edges.push((v, u, random_weight(rng, max_weight)));
            }
        }
    }
    for v in 0..n {
        if !adjacent[v].iter().any(|&a| a) {
            let mut u = rng.random_range(0..n - 1);
            if u >= v {
                u += 1;
            }
            adjacent[v][u] = true;
            adjacent[u][v] = true;
            edges.push((v, u, random_weight(rng, max_weight)));
        }
    }
    WeightedGraph::new(n, &edges).expect("generator produces valid graphs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_is_seeded_and_valid() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let g: WeightedGraph<f64> = random_weighted_graph(&mut a, 8, 5.0);
            let h: WeightedGraph<f64> = random_weighted_graph(&mut b, 8, 5.0);
            assert_eq!(g.edges(), h.edges());
            assert!(g.vertex_count() <= 8);
            assert!(g.edges().iter().all(|e| e.weight > 0.0 && e.weight <= 5.0));
        }
    }
}
