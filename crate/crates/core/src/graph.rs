//! Graphs, permutations, rankings and the alignment metrics.
//!
//! A [`Graph`] is a simple undirected graph stored as a dense symmetric 0/1
//! byte matrix with zero diagonal. Alignment quality between two graphs
//! under a candidate [`Permutation`] is measured by [`nce`] (number of
//! common edges) and [`acc`] (fraction of nodes mapped as in a reference
//! permutation). [`node_scores`] and [`ranking_from_scores`] compute the
//! per-node matched-edge counts and the score rankings used by the chained
//! refinement procedure.

use alloc::vec;
use alloc::vec::Vec;

/// Simple undirected graph on nodes `0..n` with dense adjacency storage.
///
/// Invariants: `adj[i][j] == adj[j][i]`, `adj[i][i] == 0`, entries in `{0,1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u8>,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![0; n * n] }
    }

    /// Builds a graph from an edge list. Self-loops are rejected, duplicate
    /// edges collapse.
    ///
    /// Panics if an endpoint is out of range or an edge is a self-loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j] != 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "edge ({i},{j}) out of range for n={}", self.n);
        assert!(i != j, "self-loop ({i},{i}) not allowed");
        self.adj[i * self.n + j] = 1;
        self.adj[j * self.n + i] = 1;
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        self.adj[i * self.n + j] = 0;
        self.adj[j * self.n + i] = 0;
    }

    /// Row `i` of the adjacency matrix as raw bytes.
    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.adj[i * self.n..(i + 1) * self.n]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|&b| b as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&b| b as usize).sum::<usize>() / 2
    }

    /// Edge list view `(i, j)` with `i < j`, derived on demand.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `Some(d)` if every node has degree exactly `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|i| self.degree(i) == d).then_some(d)
    }
}

/// Bijection on node indices; `map[i]` is the image of node `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Panics if `map` is not a bijection on `0..map.len()`.
    pub fn from_vec(map: Vec<usize>) -> Self {
        Self::try_from_vec(map).expect("not a permutation")
    }

    /// `None` if `map` is not a bijection on `0..map.len()`.
    pub fn try_from_vec(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Permutation { map })
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            map.swap(i, j);
        }
        Permutation { map }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// Composition `self ∘ other`: `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n(), "size mismatch in composition");
        Permutation { map: other.map.iter().map(|&i| self.map[i]).collect() }
    }
}

/// Node ordering; `order[k]` is the node ranked `k`-th (best first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ranking {
    order: Vec<usize>,
}

impl Ranking {
    /// Panics if `order` is not a bijection on `0..order.len()`.
    pub fn from_vec(order: Vec<usize>) -> Self {
        let p = Permutation::try_from_vec(order).expect("ranking is not a bijection");
        Ranking { order: p.map }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Node occupying rank `k`.
    #[inline]
    pub fn node_at(&self, k: usize) -> usize {
        self.order[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// `positions()[i]` is the rank of node `i` (0 = best).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (k, &node) in self.order.iter().enumerate() {
            pos[node] = k;
        }
        pos
    }
}

/// Relabels `g` by `p`: node `i` of the input becomes node `p(i)` of the
/// output, so `out[p(i)][p(j)] = g[i][j]`.
///
/// Panics on size mismatch.
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Graph {
    assert_eq!(g.n(), p.n(), "size mismatch: graph n={}, permutation n={}", g.n(), p.n());
    let mut out = Graph::empty(g.n());
    for (i, j) in g.edges() {
        out.add_edge(p.apply(i), p.apply(j));
    }
    out
}

/// Number of common edges under `p`: `½ Σ_ij A_ij B_{p(i)p(j)}`.
///
/// Panics on size mismatch.
pub fn nce(a: &Graph, b: &Graph, p: &Permutation) -> usize {
    assert!(
        a.n() == b.n() && a.n() == p.n(),
        "size mismatch: a.n={}, b.n={}, p.n={}",
        a.n(),
        b.n(),
        p.n()
    );
    let mut count = 0;
    for i in 0..a.n() {
        for j in (i + 1)..a.n() {
            if a.has_edge(i, j) && b.has_edge(p.apply(i), p.apply(j)) {
                count += 1;
            }
        }
    }
    count
}

/// Fraction of indices where `p` agrees with `p_star`.
///
/// Panics on size mismatch.
pub fn acc(p: &Permutation, p_star: &Permutation) -> f64 {
    assert_eq!(p.n(), p_star.n(), "size mismatch: p.n={}, p_star.n={}", p.n(), p_star.n());
    if p.n() == 0 {
        return 1.0;
    }
    let hits = p
        .as_slice()
        .iter()
        .zip(p_star.as_slice())
        .filter(|(a, b)| a == b)
        .count();
    hits as f64 / p.n() as f64
}

/// Per-node matched-edge counts: `score[i] = Σ_j A_ij B_{p(i)p(j)}`.
///
/// The scores sum to `2 · nce(a, b, p)`. Panics on size mismatch.
pub fn node_scores(a: &Graph, b: &Graph, p: &Permutation) -> Vec<usize> {
    assert!(
        a.n() == b.n() && a.n() == p.n(),
        "size mismatch: a.n={}, b.n={}, p.n={}",
        a.n(),
        b.n(),
        p.n()
    );
    let mut scores = vec![0; a.n()];
    for i in 0..a.n() {
        let pi = p.apply(i);
        scores[i] = (0..a.n())
            .filter(|&j| a.has_edge(i, j) && b.has_edge(pi, p.apply(j)))
            .count();
    }
    scores
}

/// Ranks nodes of the first graph by decreasing score (ties broken by
/// ascending node index) and derives the second ranking through `p`:
/// `r_b(k) = p(r_a(k))`.
///
/// Panics on size mismatch.
pub fn ranking_from_scores(scores: &[usize], p: &Permutation) -> (Ranking, Ranking) {
    assert_eq!(scores.len(), p.n(), "size mismatch: scores len={}, p.n={}", scores.len(), p.n());
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // stable sort keeps ascending index on equal scores
    order.sort_by(|&i, &j| scores[j].cmp(&scores[i]));
    let order_b: Vec<usize> = order.iter().map(|&i| p.apply(i)).collect();
    (Ranking { order }, Ranking { order: order_b })
}
