//! Alignment of unlabeled graphs: find the node permutation that matches as
//! many edges as possible between two graphs of the same size.
//!
//! The crate provides the full solver stack on top of a small dense-matrix
//! core:
//!
//! - [`graph`]: graphs, permutations, rankings and the alignment metrics
//!   `nce` (number of common edges) and `acc` (fraction of correctly matched
//!   nodes), plus per-node match scores and score rankings.
//! - [`gen`]: correlated random graph pair generators (Bernoulli,
//!   Erdős–Rényi, regular with edge swaps) with a planted ground-truth
//!   permutation.
//! - [`lap`]: exact linear assignment (maximization) and the `proj`
//!   operator from a real matrix to the nearest permutation.
//! - [`fw`]: Frank-Wolfe solvers for the convex and indefinite relaxations
//!   of the alignment objective, and an exhaustive oracle for tiny
//!   instances.
//! - [`tensor`] / [`optim`]: a minimal dense-tensor engine with
//!   reverse-mode differentiation, Adam and a plateau scheduler.
//! - [`fgnn`]: the pair-state GNN (node-pair hidden states, residual
//!   contraction layers, max-pool readout, rank positional encodings).
//! - [`chain`]: sequential training of a chain of networks and iterative
//!   inference with ranking steps and looping.
//!
//! Everything is `no_std` + `alloc`; IO, file formats and the CLI live in
//! the companion `gapalign-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod chain;
mod enumerate;
pub mod fgnn;
pub mod fw;
pub mod gen;
pub mod graph;
pub mod lap;
pub mod matrix;
pub mod optim;
pub mod tensor;

pub use fw::{FwConfig, FwReport};
pub use gen::{GenParams, GraphFamily, InstanceTriplet};
pub use graph::{Graph, Permutation, Ranking};
pub use lap::{lap_max, proj};
pub use matrix::{DenseMatrix, DoublyStochastic};
