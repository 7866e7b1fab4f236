//! Minimum rank of graph-patterned symmetric matrices over finite fields.
//!
//! For a graph `G` on `n` vertices and a finite field `F`, let `S(F, G)` be
//! the set of symmetric `n x n` matrices over `F` whose off-diagonal zero
//! pattern is exactly the non-adjacency pattern of `G` (diagonal entries are
//! unconstrained). The *minimum rank* `mr(F, G)` is the smallest rank
//! attained on `S(F, G)`.
//!
//! The crate provides:
//!
//! * [`field`] — exact arithmetic in `F_{p^m}`, `q <= 2^16`;
//! * [`linalg`] — dense matrices over those fields: rank, inverse,
//!   determinant, Schur complements, and symmetric congruence decompositions
//!   into canonical low-rank forms;
//! * [`f2`] — bit-packed word-parallel kernels for `F_2`;
//! * [`graph`] — small labeled graphs, edge-list and graph6 I/O, clique
//!   search, pattern matching between matrices and graphs;
//! * [`minrank`] — three exact solvers for `mr(F, G)` that cross-check each
//!   other, producing verifiable certificates;
//! * [`census`] — exact counts of symmetric matrices over `F_2` by rank
//!   (group orders, rank censuses, bounds), and the scaled average minimum
//!   rank `alpha_n` both exactly and by seeded Monte Carlo;
//! * [`construct`] — explicit low-rank matrix constructions for graphs that
//!   contain large cliques, including the field-sensitive family whose
//!   minimum rank over `F_3` exceeds its minimum rank over larger fields;
//! * [`verify`] — the self-check suite tying formulas to brute-force oracles
//!   and constructions to independent solvers.

pub mod census;
pub mod construct;
pub mod f2;
pub mod field;
pub mod graph;
pub mod linalg;
pub mod minrank;
pub mod verify;
