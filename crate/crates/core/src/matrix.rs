//! Dense square f64 matrices for the assignment and relaxation solvers.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};

/// Row-major square matrix of `f64`.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// All entries `1/n`; the barycenter of the permutation polytope.
    pub fn barycenter(n: usize) -> Self {
        DenseMatrix { n, data: vec![1.0 / n as f64; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Panics unless `data.len() == n * n`.
    pub fn from_vec(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "expected {} entries, got {}", n * n, data.len());
        DenseMatrix { n, data }
    }

    /// Permutation matrix `P` with `P[i][p(i)] = 1`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let mut m = Self::zeros(p.n());
        for i in 0..p.n() {
            m.set(i, p.apply(i), 1.0);
        }
        m
    }

    /// Adjacency matrix of `g` as f64.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        DenseMatrix {
            n,
            data: (0..n).flat_map(|i| g.row(i).iter().map(|&b| b as f64)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `self * other`.
    pub fn matmul(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.n, other.n, "size mismatch: {} vs {}", self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for j in 0..n {
                    dst[j] += a * src[j];
                }
            }
        }
        out
    }

    /// `A * self` for a 0/1 adjacency matrix: row i of the result is the sum
    /// of the rows of `self` over the neighbors of i.
    pub fn premul_graph(&self, a: &Graph) -> Self {
        assert_eq!(self.n, a.n(), "size mismatch: {} vs {}", self.n, a.n());
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let arow = a.row(i);
            for k in 0..n {
                if arow[k] != 0 {
                    let src = self.row(k);
                    let dst = out.row_mut(i);
                    for j in 0..n {
                        dst[j] += src[j];
                    }
                }
            }
        }
        out
    }

    /// `self * B` for a 0/1 adjacency matrix: column sums over neighbors.
    pub fn postmul_graph(&self, b: &Graph) -> Self {
        assert_eq!(self.n, b.n(), "size mismatch: {} vs {}", self.n, b.n());
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let src = self.row(i);
            for k in 0..n {
                let v = src[k];
                if v == 0.0 {
                    continue;
                }
                let brow = b.row(k);
                let dst = out.row_mut(i);
                for j in 0..n {
                    if brow[j] != 0 {
                        dst[j] += v;
                    }
                }
            }
        }
        out
    }

    /// Frobenius inner product `⟨self, other⟩`.
    pub fn frob_inner(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.n, other.n, "size mismatch: {} vs {}", self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Squared Frobenius norm.
    pub fn frob_norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// `self - other`.
    pub fn sub(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.n, other.n, "size mismatch: {} vs {}", self.n, other.n);
        DenseMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        DenseMatrix { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// In-place `self += alpha * (other - self)`; the Frank-Wolfe update.
    pub fn blend(&mut self, other: &DenseMatrix, alpha: f64) {
        assert_eq!(self.n, other.n, "size mismatch: {} vs {}", self.n, other.n);
        for (d, &o) in self.data.iter_mut().zip(&other.data) {
            *d += alpha * (o - *d);
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for i in 0..self.n {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j);
            }
        }
        sums
    }

    /// Nonnegative with row and column sums within `tol` of 1.
    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        self.data.iter().all(|&v| v >= -tol)
            && self.row_sums().iter().all(|s| (s - 1.0).abs() <= tol)
            && self.col_sums().iter().all(|s| (s - 1.0).abs() <= tol)
    }
}

/// A [`DenseMatrix`] validated to lie in the Birkhoff polytope.
#[derive(Clone, PartialEq, Debug)]
pub struct DoublyStochastic(DenseMatrix);

impl DoublyStochastic {
    pub const TOL: f64 = 1e-9;

    /// `None` if `m` is not doubly stochastic within [`Self::TOL`].
    pub fn new(m: DenseMatrix) -> Option<Self> {
        m.is_doubly_stochastic(Self::TOL).then_some(DoublyStochastic(m))
    }

    pub fn barycenter(n: usize) -> Self {
        DoublyStochastic(DenseMatrix::barycenter(n))
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        DoublyStochastic(DenseMatrix::from_permutation(p))
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.0
    }
}

impl core::ops::Deref for DoublyStochastic {
    type Target = DenseMatrix;

    fn deref(&self) -> &DenseMatrix {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(n: usize, rng: &mut StdRng) -> DenseMatrix {
        DenseMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    #[test]
    fn matmul_identity() {
        let mut rng = StdRng::seed_from_u64(1);
        let m = random_matrix(8, &mut rng);
        let id = DenseMatrix::identity(8);
        assert_eq!(m.matmul(&id), m);
        assert_eq!(id.matmul(&m), m);
    }

    #[test]
    fn graph_mul_agrees_with_dense_matmul() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..10 {
            let g = random_graph(9, 0.4, &mut rng);
            let m = random_matrix(9, &mut rng);
            let a = DenseMatrix::from_graph(&g);
            let pre = m.premul_graph(&g);
            let post = m.postmul_graph(&g);
            let pre_ref = a.matmul(&m);
            let post_ref = m.matmul(&a);
            for i in 0..9 {
                for j in 0..9 {
                    assert!((pre.get(i, j) - pre_ref.get(i, j)).abs() < 1e-12);
                    assert!((post.get(i, j) - post_ref.get(i, j)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn barycenter_and_permutations_are_doubly_stochastic() {
        assert!(DenseMatrix::barycenter(7).is_doubly_stochastic(1e-12));
        let p = Permutation::from_vec(alloc::vec![2, 0, 1, 3]);
        assert!(DenseMatrix::from_permutation(&p).is_doubly_stochastic(0.0));
        assert!(DoublyStochastic::new(DenseMatrix::identity(4)).is_some());
        assert!(DoublyStochastic::new(DenseMatrix::zeros(4)).is_none());
    }

    #[test]
    fn blend_stays_in_polytope() {
        let mut rng = StdRng::seed_from_u64(3);
        let mut d = DenseMatrix::barycenter(6);
        for _ in 0..20 {
            let q = DenseMatrix::from_permutation(&Permutation::random(6, &mut rng));
            d.blend(&q, rng.gen_range(0.0..1.0));
            assert!(d.is_doubly_stochastic(1e-9));
        }
    }
}
