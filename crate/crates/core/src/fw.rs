//! Frank-Wolfe solvers for the two continuous relaxations of graph
//! alignment, plus an exhaustive oracle for tiny instances.
//!
//! Both solvers walk the Birkhoff polytope: at each iteration the gradient
//! is linearized, a linear assignment gives the best vertex direction, and
//! an exact line search picks the step. The convex solver minimizes
//! `‖AD - DB‖²_F`; the indefinite solver (the FAQ heuristic) maximizes
//! `⟨AD, DB⟩` and projects the final iterate to a permutation.

use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};
use crate::lap::{lap_max, proj};
use crate::matrix::{DenseMatrix, DoublyStochastic};

/// Starting point for a Frank-Wolfe solve.
#[derive(Clone, Debug)]
pub enum FwInit {
    /// The matrix with all entries `1/n`.
    Barycenter,
    /// An explicit (approximately) doubly stochastic matrix.
    Matrix(DenseMatrix),
    /// The permutation matrix of `p`.
    Permutation(Permutation),
}

/// How `faq_from_similarity` turns a similarity matrix into a starting point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SimilarityInit {
    /// Permutation matrix of `proj(S)` (default).
    ProjPermutation,
    /// Row-softmax of `S` followed by 10 alternating row/column rescalings.
    SoftmaxSinkhorn,
}

/// Frank-Wolfe iteration controls.
#[derive(Clone, Debug)]
pub struct FwConfig {
    pub max_iters: usize,
    pub rel_tol: f64,
    pub init: FwInit,
    pub sim_init: SimilarityInit,
}

impl FwConfig {
    /// Defaults for the convex relaxation: 100 iterations, tolerance 1e-6,
    /// barycenter start.
    pub fn convex() -> Self {
        FwConfig {
            max_iters: 100,
            rel_tol: 1e-6,
            init: FwInit::Barycenter,
            sim_init: SimilarityInit::ProjPermutation,
        }
    }

    /// Defaults for the indefinite relaxation: 30 iterations, tolerance 1e-6.
    pub fn faq() -> Self {
        FwConfig { max_iters: 30, ..Self::convex() }
    }

    fn validate(&self) {
        assert!(self.max_iters >= 1, "max_iters must be at least 1");
        assert!(self.rel_tol > 0.0, "rel_tol must be positive");
    }
}

/// Outcome of a Frank-Wolfe solve.
///
/// `objective_trace[k]` is the objective after the `k`-th gradient/LAP step,
/// so `iterations == objective_trace.len()` counts the linear assignment
/// solves performed. `initial_objective` holds the value at the starting
/// point (for a regular-degree pair started at the barycenter it is exactly
/// zero and the first step does not move).
#[derive(Clone, Debug)]
pub struct FwReport {
    pub iterations: usize,
    pub objective_trace: Vec<f64>,
    pub converged: bool,
    pub initial_objective: f64,
}

fn rel_change(prev: f64, cur: f64) -> f64 {
    (prev - cur).abs() / prev.abs().max(1.0)
}

/// `A · P` as a dense matrix: column `j` of the result is column `π⁻¹(j)` of A.
fn graph_times_perm(a: &Graph, p: &Permutation) -> DenseMatrix {
    let inv = p.inverse();
    DenseMatrix::from_fn(a.n(), |i, j| {
        if a.has_edge(i, inv.apply(j)) {
            1.0
        } else {
            0.0
        }
    })
}

/// `P · B` as a dense matrix: row `i` of the result is row `π(i)` of B.
fn perm_times_graph(p: &Permutation, b: &Graph) -> DenseMatrix {
    DenseMatrix::from_fn(b.n(), |i, j| {
        if b.has_edge(p.apply(i), j) {
            1.0
        } else {
            0.0
        }
    })
}

fn resolve_init(init: &FwInit, n: usize, tol: f64) -> DenseMatrix {
    match init {
        FwInit::Barycenter => DenseMatrix::barycenter(n),
        FwInit::Matrix(m) => {
            assert_eq!(m.n(), n, "init size {} does not match graphs n={}", m.n(), n);
            assert!(
                m.is_doubly_stochastic(tol),
                "init matrix is not doubly stochastic within {tol}"
            );
            m.clone()
        }
        FwInit::Permutation(p) => {
            assert_eq!(p.n(), n, "init size {} does not match graphs n={}", p.n(), n);
            DenseMatrix::from_permutation(p)
        }
    }
}

/// Solves `min_D ‖AD - DB‖²_F` over doubly stochastic matrices.
///
/// Gradient `2A(AD-DB) - 2(AD-DB)B`, direction from a linear assignment on
/// the negated gradient, exact line search (the objective is an explicit
/// quadratic in the step size). The trace is non-increasing.
///
/// Panics on size mismatch; non-convergence within `max_iters` is reported
/// via the `converged` flag.
pub fn convex_relax(a: &Graph, b: &Graph, cfg: &FwConfig) -> (DoublyStochastic, FwReport) {
    assert_eq!(a.n(), b.n(), "size mismatch: a.n={}, b.n={}", a.n(), b.n());
    cfg.validate();
    let n = a.n();
    let mut d = resolve_init(&cfg.init, n, 1e-9);

    let residual = |d: &DenseMatrix| d.premul_graph(a).sub(&d.postmul_graph(b));

    let mut r = residual(&d);
    let initial_objective = r.frob_norm_sq();
    let mut f_prev = initial_objective;
    let mut trace = Vec::new();
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        // ∇‖AD-DB‖² = 2A·R - 2R·B with R = AD - DB (A, B symmetric)
        let grad = r.premul_graph(a).sub(&r.postmul_graph(b)).scale(2.0);
        let (q, _) = lap_max(&grad.scale(-1.0));

        // objective along D + α(Q - D) is f + 2α⟨R, R_Δ⟩ + α²‖R_Δ‖²
        let r_q = graph_times_perm(a, &q).sub(&perm_times_graph(&q, b));
        let r_delta = r_q.sub(&r);
        let denom = r_delta.frob_norm_sq();
        let cross = r.frob_inner(&r_delta);
        let alpha = if denom > 0.0 { (-cross / denom).clamp(0.0, 1.0) } else { 0.0 };

        d.blend(&DenseMatrix::from_permutation(&q), alpha);
        r = residual(&d);
        let f = r.frob_norm_sq();
        debug_assert!(f <= f_prev + 1e-9 * f_prev.abs().max(1.0), "convex objective increased");
        trace.push(f);
        if rel_change(f_prev, f) < cfg.rel_tol {
            converged = true;
            break;
        }
        f_prev = f;
    }

    let iterations = trace.len();
    let d = DoublyStochastic::new(d).expect("Frank-Wolfe iterate left the Birkhoff polytope");
    (d, FwReport { iterations, objective_trace: trace, converged, initial_objective })
}

/// The FAQ heuristic: approximately solves `max_D ⟨AD, DB⟩` by Frank-Wolfe
/// from `init`, then projects the final iterate to a permutation.
///
/// One linear assignment per iteration (`report.iterations` counts them);
/// exact line search on the quadratic in the step size, comparing endpoints
/// when its curvature is non-negative. The trace is non-decreasing.
pub fn faq(a: &Graph, b: &Graph, init: &FwInit, cfg: &FwConfig) -> (Permutation, FwReport) {
    assert_eq!(a.n(), b.n(), "size mismatch: a.n={}, b.n={}", a.n(), b.n());
    cfg.validate();
    let n = a.n();
    let mut d = resolve_init(init, n, 1e-3);

    let mut ad = d.premul_graph(a);
    let mut db = d.postmul_graph(b);
    let initial_objective = ad.frob_inner(&db);
    let mut f_prev = initial_objective;
    let mut trace = Vec::new();
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        // ∇⟨AD, DB⟩ = 2·A·D·B for symmetric A, B; scaling is irrelevant to
        // the assignment step.
        let grad = ad.postmul_graph(b);
        let (q, _) = lap_max(&grad);

        let a_delta = graph_times_perm(a, &q).sub(&ad);
        let delta_b = perm_times_graph(&q, b).sub(&db);
        let c1 = a_delta.frob_inner(&db) + ad.frob_inner(&delta_b);
        let c2 = a_delta.frob_inner(&delta_b);
        let alpha = if c2 < 0.0 {
            (-c1 / (2.0 * c2)).clamp(0.0, 1.0)
        } else if c1 + c2 > 0.0 {
            1.0
        } else {
            0.0
        };

        d.blend(&DenseMatrix::from_permutation(&q), alpha);
        ad = d.premul_graph(a);
        db = d.postmul_graph(b);
        let f = ad.frob_inner(&db);
        debug_assert!(f >= f_prev - 1e-9 * f_prev.abs().max(1.0), "faq objective decreased");
        trace.push(f);
        if rel_change(f_prev, f) < cfg.rel_tol {
            converged = true;
            break;
        }
        f_prev = f;
    }

    let iterations = trace.len();
    let perm = proj(&d);
    (perm, FwReport { iterations, objective_trace: trace, converged, initial_objective })
}

/// Runs [`faq`] started from a learned similarity matrix, per
/// `cfg.sim_init`: either the permutation matrix of `proj(s)` (default) or
/// a row-softmax of `s` smoothed by alternating rescalings.
pub fn faq_from_similarity(
    a: &Graph,
    b: &Graph,
    s: &DenseMatrix,
    cfg: &FwConfig,
) -> (Permutation, FwReport) {
    assert_eq!(a.n(), s.n(), "size mismatch: a.n={}, s.n={}", a.n(), s.n());
    let init = match cfg.sim_init {
        SimilarityInit::ProjPermutation => FwInit::Permutation(proj(s)),
        SimilarityInit::SoftmaxSinkhorn => FwInit::Matrix(softmax_sinkhorn(s)),
    };
    faq(a, b, &init, cfg)
}

/// Row-softmax followed by 10 alternating column/row rescalings, ending on
/// rows so row sums are exact.
fn softmax_sinkhorn(s: &DenseMatrix) -> DenseMatrix {
    use num_traits::Float;
    let n = s.n();
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        let row = s.row(i);
        let max = row.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let mut sum = 0.0;
        for j in 0..n {
            let e = Float::exp(row[j] - max);
            m.set(i, j, e);
            sum += e;
        }
        for j in 0..n {
            m.set(i, j, m.get(i, j) / sum);
        }
    }
    for _ in 0..10 {
        let cols = m.col_sums();
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, m.get(i, j) / cols[j]);
            }
        }
        for i in 0..n {
            let sum: f64 = m.row(i).iter().sum();
            for j in 0..n {
                m.set(i, j, m.get(i, j) / sum);
            }
        }
    }
    m
}

/// Instance too large for exhaustive search.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InstanceTooLarge {
    pub n: usize,
    pub max: usize,
}

impl core::fmt::Display for InstanceTooLarge {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "instance has {} nodes, exhaustive search is capped at {}", self.n, self.max)
    }
}

/// Exhaustive maximizer of the common-edge count over all permutations.
/// Only for `n ≤ 10`.
pub fn gap_bruteforce(a: &Graph, b: &Graph) -> Result<(Permutation, usize), InstanceTooLarge> {
    assert_eq!(a.n(), b.n(), "size mismatch: a.n={}, b.n={}", a.n(), b.n());
    const MAX_N: usize = 10;
    let n = a.n();
    if n > MAX_N {
        return Err(InstanceTooLarge { n, max: MAX_N });
    }
    let edges_a = a.edges();
    let mut best_perm: Vec<usize> = (0..n).collect();
    let mut best = 0usize;
    let mut first = true;
    crate::enumerate::for_each_permutation(n, |p| {
        let count = edges_a.iter().filter(|&&(i, j)| b.has_edge(p[i], p[j])).count();
        if first || count > best {
            best = count;
            best_perm.copy_from_slice(p);
            first = false;
        }
    });
    Ok((Permutation::from_vec(best_perm), best))
}
