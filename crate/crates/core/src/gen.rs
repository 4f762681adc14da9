//! Correlated random graph pair generators with planted ground truth.
//!
//! Three families, all producing triplets `(G_A, G_B', π*)` where `G_B'` is
//! the second graph relabeled by the planted permutation `π*`:
//!
//! - **Bernoulli**: edge probabilities `Λ_ij` drawn uniformly in
//!   `[α, 1-α]`; `B ~ Bernoulli(Λ)` and, conditionally,
//!   `A ~ Bernoulli(ρB + (1-ρ)Λ)`, so the marginals of A and B coincide.
//! - **Erdős–Rényi**: joint per-slot law `P(A=B=1) = (d/n)(1-p_noise)`,
//!   `P(A=1,B=0) = P(A=0,B=1) = (d/n)·p_noise`, marginal `d/n` each.
//! - **Regular**: `G_A` a uniform d-regular graph; `G_B` derived by
//!   degree-preserving edge swaps `{i,j},{k,ℓ} → {i,ℓ},{k,j}`, each
//!   candidate pair attempted with probability `p_noise`.
//!
//! Each instance owns an RNG stream derived from `(seed, instance index)`,
//! so datasets can be produced in any order or in parallel and stay
//! bit-identical.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{apply_permutation, Graph, Permutation};

/// Generator family tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFamily {
    Bernoulli,
    ErdosRenyi,
    Regular,
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Bernoulli => "bernoulli",
            GraphFamily::ErdosRenyi => "erdos_renyi",
            GraphFamily::Regular => "regular",
        }
    }
}

/// Parameters of a correlated pair generator.
///
/// `d` is the mean (Erdős–Rényi) or exact (regular) degree and is unused by
/// the Bernoulli family, whose density comes from `alpha`. `rho` and
/// `alpha` apply to the Bernoulli family only.
#[derive(Clone, PartialEq, Debug)]
pub struct GenParams {
    pub family: GraphFamily,
    pub n: usize,
    pub d: usize,
    pub p_noise: f64,
    pub rho: f64,
    pub alpha: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn bernoulli(n: usize, rho: f64, alpha: f64, seed: u64) -> Self {
        GenParams { family: GraphFamily::Bernoulli, n, d: 0, p_noise: 1.0 - rho, rho, alpha, seed }
    }

    pub fn erdos_renyi(n: usize, d: usize, p_noise: f64, seed: u64) -> Self {
        GenParams { family: GraphFamily::ErdosRenyi, n, d, p_noise, rho: 0.0, alpha: 0.1, seed }
    }

    pub fn regular(n: usize, d: usize, p_noise: f64, seed: u64) -> Self {
        GenParams { family: GraphFamily::Regular, n, d, p_noise, rho: 0.0, alpha: 0.1, seed }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.p_noise) {
            return Err(GenError::InvalidParam("p_noise must be in [0,1]"));
        }
        match self.family {
            GraphFamily::Bernoulli => {
                if !(0.0..=1.0).contains(&self.rho) {
                    return Err(GenError::InvalidParam("rho must be in [0,1]"));
                }
                if !(0.0..0.5).contains(&self.alpha) {
                    return Err(GenError::InvalidParam("alpha must be in [0, 0.5)"));
                }
            }
            GraphFamily::ErdosRenyi => {
                if self.d >= self.n {
                    return Err(GenError::InvalidParam("d must be smaller than n"));
                }
                let lambda = self.d as f64 / self.n as f64;
                if lambda * (1.0 + self.p_noise) > 1.0 {
                    return Err(GenError::InvalidParam("(d/n)(1+p_noise) exceeds 1"));
                }
            }
            GraphFamily::Regular => {
                if self.d >= self.n {
                    return Err(GenError::InvalidParam("d must be smaller than n"));
                }
                if (self.n * self.d) % 2 != 0 {
                    return Err(GenError::InvalidParam("n*d must be even for a regular graph"));
                }
            }
        }
        Ok(())
    }

    /// RNG stream for instance `index`: one ChaCha stream per instance so
    /// generation order does not matter.
    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Generation failure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenError {
    InvalidParam(&'static str),
    /// The regular-graph sampler exhausted its restart budget.
    RejectionBudget,
}

impl core::fmt::Display for GenError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GenError::InvalidParam(msg) => write!(f, "invalid generator parameters: {msg}"),
            GenError::RejectionBudget => {
                write!(f, "regular graph sampler exhausted its restart budget")
            }
        }
    }
}

/// A generated instance: the pair, the planted permutation and its
/// provenance.
#[derive(Clone, PartialEq, Debug)]
pub struct InstanceTriplet {
    pub graph_a: Graph,
    pub graph_b_permuted: Graph,
    pub planted: Permutation,
    pub params: GenParams,
    pub index: u64,
}

impl InstanceTriplet {
    /// Common edges under the planted permutation.
    pub fn planted_nce(&self) -> usize {
        crate::graph::nce(&self.graph_a, &self.graph_b_permuted, &self.planted)
    }
}

/// Generates instance `index` of the stream defined by `params`.
pub fn generate(params: &GenParams, index: u64) -> Result<InstanceTriplet, GenError> {
    match params.family {
        GraphFamily::Bernoulli => gen_bernoulli_pair(params, index),
        GraphFamily::ErdosRenyi => gen_er_pair(params, index),
        GraphFamily::Regular => gen_regular_pair(params, index),
    }
}

/// ρ-correlated Bernoulli(Λ) pair; Λ entries i.i.d. uniform in `[α, 1-α]`.
pub fn gen_bernoulli_pair(params: &GenParams, index: u64) -> Result<InstanceTriplet, GenError> {
    assert_eq!(params.family, GraphFamily::Bernoulli, "family mismatch");
    params.validate()?;
    let mut rng = params.rng(index);
    let (a, b, _) = sample_bernoulli_aligned(params, &mut rng);
    let planted = Permutation::random(params.n, &mut rng);
    Ok(plant_permutation(a, b, planted, params.clone(), index))
}

/// Aligned Bernoulli pair together with the sampled Λ entries (upper
/// triangle, row-major); the triplet generator discards Λ but tests use it
/// to check conditional independence.
pub(crate) fn sample_bernoulli_aligned<R: Rng + ?Sized>(
    params: &GenParams,
    rng: &mut R,
) -> (Graph, Graph, Vec<f64>) {
    let n = params.n;
    let mut a = Graph::empty(n);
    let mut b = Graph::empty(n);
    let mut lambdas = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let lambda = rng.gen_range(params.alpha..=1.0 - params.alpha);
            lambdas.push(lambda);
            let b_edge = rng.gen::<f64>() < lambda;
            // A | B ~ Bernoulli(ρ·B + (1-ρ)·Λ)
            let p_a = params.rho * (b_edge as u8 as f64) + (1.0 - params.rho) * lambda;
            let a_edge = rng.gen::<f64>() < p_a;
            if b_edge {
                b.add_edge(i, j);
            }
            if a_edge {
                a.add_edge(i, j);
            }
        }
    }
    (a, b, lambdas)
}

/// Correlated Erdős–Rényi pair with marginal edge probability `d/n`.
pub fn gen_er_pair(params: &GenParams, index: u64) -> Result<InstanceTriplet, GenError> {
    assert_eq!(params.family, GraphFamily::ErdosRenyi, "family mismatch");
    params.validate()?;
    let n = params.n;
    let lambda = params.d as f64 / n as f64;
    // P(A=1 | B=1) and P(A=1 | B=0), matching the joint edge-slot table
    let p_given_edge = 1.0 - params.p_noise;
    let p_given_none = lambda * params.p_noise / (1.0 - lambda);
    let mut rng = params.rng(index);
    let mut a = Graph::empty(n);
    let mut b = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let b_edge = rng.gen::<f64>() < lambda;
            let a_edge = rng.gen::<f64>() < if b_edge { p_given_edge } else { p_given_none };
            if b_edge {
                b.add_edge(i, j);
            }
            if a_edge {
                a.add_edge(i, j);
            }
        }
    }
    Ok(plant_permutation(a, b, Permutation::random(n, &mut rng), params.clone(), index))
}

/// Exactly d-regular pair: `G_B` is `G_A` with degree-preserving edge swaps.
pub fn gen_regular_pair(params: &GenParams, index: u64) -> Result<InstanceTriplet, GenError> {
    assert_eq!(params.family, GraphFamily::Regular, "family mismatch");
    params.validate()?;
    let n = params.n;
    let mut rng = params.rng(index);
    let a = sample_regular(n, params.d, &mut rng)?;
    let b = edge_swap(&a, params.p_noise, &mut rng);
    Ok(plant_permutation(a, b, Permutation::random(n, &mut rng), params.clone(), index))
}

/// Pairs the edge list off in random disjoint pairs; each pair swaps
/// `{i,j},{k,ℓ} → {i,ℓ},{k,j}` with probability `p_noise`, rejecting swaps
/// that would create a self-loop or duplicate edge.
fn edge_swap<R: Rng + ?Sized>(g: &Graph, p_noise: f64, rng: &mut R) -> Graph {
    let mut edges = g.edges();
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    // randomize the orientation so the swap rule has no endpoint bias
    for e in edges.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    let mut out = g.clone();
    for pair in edges.chunks_exact(2) {
        if rng.gen::<f64>() >= p_noise {
            continue;
        }
        let ((i, j), (k, l)) = (pair[0], pair[1]);
        if i == l || k == j || (i, l) == (j, k) {
            continue;
        }
        out.remove_edge(i, j);
        out.remove_edge(k, l);
        if out.has_edge(i, l) || out.has_edge(k, j) || (i.min(l), i.max(l)) == (k.min(j), k.max(j)) {
            out.add_edge(i, j);
            out.add_edge(k, l);
        } else {
            out.add_edge(i, l);
            out.add_edge(k, j);
        }
    }
    out
}

/// Samples a uniform simple d-regular graph by stub pairing with per-pair
/// retries and up to 1000 full restarts.
pub fn gen_uniform_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_regular(n, d, &mut rng)
}

fn sample_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph, GenError> {
    if d >= n {
        return Err(GenError::InvalidParam("d must be smaller than n"));
    }
    if (n * d) % 2 != 0 {
        return Err(GenError::InvalidParam("n*d must be even for a regular graph"));
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    'restart: for _ in 0..1000 {
        let mut g = Graph::empty(n);
        let mut stubs: Vec<usize> = (0..n).flat_map(|i| core::iter::repeat(i).take(d)).collect();
        while !stubs.is_empty() {
            // draw random stub pairs until a legal one shows up; a bounded
            // number of misses means this pairing is stuck
            let mut misses = 0;
            loop {
                let x = rng.gen_range(0..stubs.len());
                let mut y = rng.gen_range(0..stubs.len() - 1);
                if y >= x {
                    y += 1;
                }
                let (u, v) = (stubs[x], stubs[y]);
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v);
                    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
                    stubs.swap_remove(hi);
                    stubs.swap_remove(lo);
                    break;
                }
                misses += 1;
                if misses > 100 + 10 * stubs.len() {
                    continue 'restart;
                }
            }
        }
        return Ok(g);
    }
    Err(GenError::RejectionBudget)
}

/// Relabels `b` by `planted` and packages the triplet. The common-edge
/// count under `planted` equals the aligned pair's count exactly.
pub fn plant_permutation(
    a: Graph,
    b: Graph,
    planted: Permutation,
    params: GenParams,
    index: u64,
) -> InstanceTriplet {
    let graph_b_permuted = apply_permutation(&b, &planted);
    InstanceTriplet { graph_a: a, graph_b_permuted, planted, params, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::nce;

    #[test]
    fn generation_is_deterministic() {
        let params = GenParams::erdos_renyi(60, 4, 0.15, 99);
        let t1 = generate(&params, 5).unwrap();
        let t2 = generate(&params, 5).unwrap();
        assert_eq!(t1, t2);
        let t3 = generate(&params, 6).unwrap();
        assert_ne!(t1.graph_a, t3.graph_a);
    }

    #[test]
    fn bernoulli_rho_one_is_isomorphic() {
        let params = GenParams::bernoulli(40, 1.0, 0.1, 7);
        let t = gen_bernoulli_pair(&params, 0).unwrap();
        assert_eq!(t.planted_nce(), t.graph_a.edge_count());
        assert_eq!(t.graph_a.edge_count(), t.graph_b_permuted.edge_count());
    }

    #[test]
    fn bernoulli_density_matches_lambda_mean() {
        // E[Λ] = 0.5, per-slot variance 1/4 ⇒ sd of the density mean over
        // 100 samples of C(150,2) slots is 0.5/sqrt(100·11175)
        let slots = (150 * 149 / 2) as f64;
        let sd_mean = 0.5 / (100.0 * slots).sqrt();
        let mut total = 0.0;
        for idx in 0..100 {
            let params = GenParams::bernoulli(150, 0.6, 0.1, 21);
            let t = gen_bernoulli_pair(&params, idx).unwrap();
            total += t.graph_a.edge_count() as f64 / slots;
        }
        let mean = total / 100.0;
        assert!((mean - 0.5).abs() <= 3.0 * sd_mean, "density mean {mean} too far from 0.5");
    }

    #[test]
    fn bernoulli_rho_zero_is_uncorrelated() {
        // pool ≥ 1e5 pair-entries and check the empirical correlation
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        let mut idx = 0;
        while xs.len() < 100_000 {
            let params = GenParams::bernoulli(150, 0.0, 0.1, 33);
            let t = gen_bernoulli_pair(&params, idx).unwrap();
            let b = apply_permutation(&t.graph_b_permuted, &t.planted.inverse());
            for i in 0..150 {
                for j in (i + 1)..150 {
                    xs.push(if t.graph_a.has_edge(i, j) { 1.0 } else { 0.0 });
                    ys.push(if b.has_edge(i, j) { 1.0 } else { 0.0 });
                }
            }
            idx += 1;
        }
        let m = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let cov = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / m;
        let vx = xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>() / m;
        let vy = ys.iter().map(|y| (y - my) * (y - my)).sum::<f64>() / m;
        let corr = cov / (vx * vy).sqrt();
        assert!(corr.abs() <= 3.0 / m.sqrt(), "correlation {corr} too far from 0");
    }

    #[test]
    fn er_zero_noise_is_isomorphic() {
        let params = GenParams::erdos_renyi(80, 4, 0.0, 11);
        let t = gen_er_pair(&params, 0).unwrap();
        let b = apply_permutation(&t.graph_b_permuted, &t.planted.inverse());
        assert_eq!(b, t.graph_a);
    }

    #[test]
    fn er_shared_and_total_edge_counts() {
        let n = 500usize;
        let d = 4usize;
        let p_noise = 0.2;
        let slots = (n * (n - 1) / 2) as f64;
        let q_shared = (d as f64 / n as f64) * (1.0 - p_noise);
        let q_edge = d as f64 / n as f64;
        let mut shared_sum = 0.0;
        let mut edges_sum = 0.0;
        for idx in 0..50 {
            let params = GenParams::erdos_renyi(n, d, p_noise, 123);
            let t = gen_er_pair(&params, idx).unwrap();
            shared_sum += t.planted_nce() as f64;
            edges_sum += t.graph_a.edge_count() as f64;
        }
        let shared_mean = shared_sum / 50.0;
        let edges_mean = edges_sum / 50.0;
        let sd_shared = (slots * q_shared * (1.0 - q_shared) / 50.0).sqrt();
        let sd_edges = (slots * q_edge * (1.0 - q_edge) / 50.0).sqrt();
        let expect_shared = (1.0 - p_noise) * (n * d) as f64 / 2.0;
        let expect_edges = (n * d) as f64 / 2.0;
        assert!(
            (shared_mean - expect_shared).abs() <= 3.0 * sd_shared,
            "shared mean {shared_mean} vs {expect_shared}"
        );
        assert!(
            (edges_mean - expect_edges).abs() <= 3.0 * sd_edges,
            "edge mean {edges_mean} vs {expect_edges}"
        );
    }

    #[test]
    fn er_rejects_impossible_noise() {
        let params = GenParams::erdos_renyi(10, 6, 0.9, 0);
        assert!(matches!(gen_er_pair(&params, 0), Err(GenError::InvalidParam(_))));
    }

    #[test]
    fn regular_outputs_are_exactly_regular() {
        for idx in 0..10 {
            let params = GenParams::regular(100, 10, 0.1, 5);
            let t = gen_regular_pair(&params, idx).unwrap();
            assert_eq!(t.graph_a.regular_degree(), Some(10));
            assert_eq!(t.graph_b_permuted.regular_degree(), Some(10));
        }
    }

    #[test]
    fn regular_zero_noise_is_isomorphic() {
        let params = GenParams::regular(60, 6, 0.0, 9);
        let t = gen_regular_pair(&params, 0).unwrap();
        assert_eq!(t.planted_nce(), 60 * 6 / 2);
    }

    #[test]
    fn regular_rejects_odd_product() {
        let params = GenParams::regular(9, 3, 0.0, 0);
        assert!(matches!(gen_regular_pair(&params, 0), Err(GenError::InvalidParam(_))));
    }

    #[test]
    fn uniform_regular_small_cases() {
        // n=4, d=3 is the complete graph
        let g = gen_uniform_regular(4, 3, 17).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.regular_degree(), Some(3));

        let g = gen_uniform_regular(10, 3, 18).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn two_regular_is_a_union_of_cycles() {
        let g = gen_uniform_regular(8, 2, 3).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        // walk each component and confirm it closes into a cycle of length ≥ 3
        let mut seen = [false; 8];
        for start in 0..8 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                seen[cur] = true;
                len += 1;
                let next = (0..8)
                    .find(|&j| g.has_edge(cur, j) && j != prev)
                    .expect("degree-2 node must continue the walk");
                prev = cur;
                cur = next;
                if cur == start {
                    break;
                }
            }
            assert!(len >= 3, "cycle of length {len}");
        }
    }

    #[test]
    fn planting_identity_is_noop() {
        let params = GenParams::erdos_renyi(30, 4, 0.1, 4);
        let t = generate(&params, 0).unwrap();
        let b = apply_permutation(&t.graph_b_permuted, &t.planted.inverse());
        let replanted = plant_permutation(
            t.graph_a.clone(),
            b.clone(),
            Permutation::identity(30),
            params,
            0,
        );
        assert_eq!(replanted.graph_b_permuted, b);
    }

    #[test]
    fn planting_conserves_common_edges() {
        for idx in 0..20 {
            let params = GenParams::erdos_renyi(50, 4, 0.3, 77);
            let t = generate(&params, idx).unwrap();
            let b = apply_permutation(&t.graph_b_permuted, &t.planted.inverse());
            let aligned_common = nce(&t.graph_a, &b, &Permutation::identity(50));
            assert_eq!(t.planted_nce(), aligned_common);
        }
    }

    #[test]
    fn different_streams_give_different_plants() {
        let params = GenParams::erdos_renyi(30, 4, 0.1, 4);
        let t0 = generate(&params, 0).unwrap();
        let t1 = generate(&params, 1).unwrap();
        assert_ne!(t0.planted, t1.planted);
    }

    #[test]
    fn low_noise_planted_quality() {
        let n = 200;
        let d = 6;
        let mut total = 0.0;
        for idx in 0..20 {
            let params = GenParams::erdos_renyi(n, d, 0.05, 55);
            let t = generate(&params, idx).unwrap();
            total += t.planted_nce() as f64;
        }
        let mean = total / 20.0;
        assert!(mean >= 0.9 * (n * d) as f64 / 2.0, "planted nce mean {mean} too low");
    }
}
