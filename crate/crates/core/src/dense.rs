//! Small dense complex matrices for exhaustive checks on desk-sized graphs.
//!
//! Nothing here is used on the fast path. The coin matrix is assembled from
//! the outer products `2|s_v><s_v| - I` directly, independently of the
//! rank-one update in [`crate::walk`].

use num_complex::Complex;

use crate::graph::WeightedGraph;
use crate::scalar::{czero, creal, Real};
use crate::walk::{local_superposition, shift_target, ShiftKind};

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![czero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = creal(T::one());
        }
        m
    }

    /// Matrix of a linear map, probed column by column on basis vectors.
    pub fn from_operator<F>(dim: usize, mut op: F) -> Self
    where
        F: FnMut(&[Complex<T>]) -> Vec<Complex<T>>,
    {
        let mut m = Self::zeros(dim);
        let mut e = vec![czero(); dim];
        for col in 0..dim {
            e[col] = creal(T::one());
            let image = op(&e);
            assert_eq!(image.len(), dim, "operator changed dimension");
            for (row, x) in image.into_iter().enumerate() {
                m.data[row * dim + col] = x;
            }
            e[col] = czero();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(x)
                    .fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == czero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// `max |(M† M - I)_ij|`.
    pub fn unitarity_deviation(&self) -> T {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }
}

/// Block-diagonal `Σ_v |v><v| ⊗ (2|s_v><s_v| - I)` over the arc basis.
pub fn coin_matrix<T: Real>(g: &WeightedGraph<T>) -> DenseMatrix<T> {
    let mut m = DenseMatrix::zeros(g.arc_count());
    let two = T::lit(2.0);
    for v in 0..g.vertex_count() {
        let s = local_superposition(g, v).expect("vertex in range");
        let block = g.arc_index().block(v);
        for (a, i) in block.clone().enumerate() {
            for (b, j) in block.clone().enumerate() {
                let delta = if i == j { T::one() } else { T::zero() };
                m.set(i, j, creal(two * s[a] * s[b] - delta));
            }
        }
    }
    m
}

/// Permutation matrix of the shift.
pub fn shift_matrix<T: Real>(g: &WeightedGraph<T>, kind: ShiftKind) -> DenseMatrix<T> {
    let mut m = DenseMatrix::zeros(g.arc_count());
    for i in 0..g.arc_count() {
        m.set(shift_target(g, i, kind), i, creal(T::one()));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_unitary() {
        assert_eq!(DenseMatrix::<f64>::identity(4).unitarity_deviation(), 0.0);
    }

    #[test]
    fn from_operator_recovers_matrix() {
        let g = WeightedGraph::<f64>::new(3, &[(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        let c = coin_matrix(&g);
        let again = DenseMatrix::from_operator(c.dim(), |x| c.mul_vec(x));
        assert_eq!(again, c);
    }
}
