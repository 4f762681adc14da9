//! Exact linear assignment and the projection to the nearest permutation.
//!
//! Maximization is the primitive: both the projection `max_P ⟨P, D⟩` and the
//! Frank-Wolfe direction steps are maximizations. The solver is the
//! O(n³) shortest-augmenting-path algorithm on reduced costs; degenerate
//! ties resolve by its fixed scan order, so results are reproducible.

use alloc::vec;

use crate::graph::Permutation;
use crate::matrix::DenseMatrix;

/// Returns the permutation maximizing `Σ_i w[i, π(i)]` together with that
/// optimal total.
///
/// Panics if `weights` contains non-finite entries.
pub fn lap_max(weights: &DenseMatrix) -> (Permutation, f64) {
    assert!(weights.is_finite(), "non-finite entries in assignment weights");
    let n = weights.n();
    if n == 0 {
        return (Permutation::identity(0), 0.0);
    }

    // Shortest augmenting paths on the negated (minimization) problem,
    // 1-indexed with column 0 as the virtual start.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut assigned_row = vec![0usize; n + 1]; // column j -> row, 0 = free
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        assigned_row[0] = i;
        let mut j0 = 0usize;
        let mut min_to = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = assigned_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = -weights.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < min_to[j] {
                    min_to[j] = cur;
                    way[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[assigned_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if assigned_row[j0] == 0 {
                break;
            }
        }
        // augment along the recorded path
        while j0 != 0 {
            let j1 = way[j0];
            assigned_row[j0] = assigned_row[j1];
            j0 = j1;
        }
    }

    let mut map = vec![0usize; n];
    for j in 1..=n {
        map[assigned_row[j] - 1] = j - 1;
    }
    let perm = Permutation::from_vec(map);
    let total = (0..n).map(|i| weights.get(i, perm.apply(i))).sum();
    (perm, total)
}

/// Projection of a real matrix to the permutation with the largest inner
/// product: `Proj(S) = argmax_P ⟨P, S⟩`.
pub fn proj(s: &DenseMatrix) -> Permutation {
    lap_max(s).0
}
