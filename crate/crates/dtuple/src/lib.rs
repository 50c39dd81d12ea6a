//! Verification and search toolkit for Diophantine tuples and their
//! perfect-power variants.
//!
//! A set of positive integers has property D_k(n) when every pairwise
//! product of distinct elements, shifted by n, is a perfect k-th power;
//! relaxations allow any exponent up to a bound, or any perfect power at
//! all. This crate decides those properties exactly on explicit sets,
//! runs exhaustive desk-scale searches for extremal configurations
//! (maximum cliques in tuple graphs, bipartite variants, four-cycle
//! power patterns, equal sums of like powers), evaluates the sieve and
//! extremal-graph bounds those searches are measured against, and
//! cross-checks every computable inequality against brute-force
//! enumeration.
//!
//! Organization:
//!
//! - [`arith`] — integer k-th roots, perfect-power detection, primes.
//! - [`predicate`] — the pairwise and bipartite property checks.
//! - [`search`] — tuple graphs, exact clique/biclique search, f(x),
//!   four-cycle patterns.
//! - [`ffmodel`] — finite-field analogues and character-sum verifiers.
//! - [`sieve`] — larger-sieve bounds, theta constants, residue images.
//! - [`extremal`] — Turán/Kővári–Sós–Turán-type bounds and subgraph
//!   detection.
//! - [`conjectures`] — equal power sums and the greedy distinct-factor
//!   construction.
//! - [`cli`] — the command-line surface with JSON result envelopes.
//!
//! Every search is deterministic: fixed vertex orders, lexicographic
//! tie-breaking, and worker-count-independent folds. Start with the
//! examples directory for runnable entry points per capability.

pub mod arith;
pub mod cli;
pub mod conjectures;
mod error;
pub mod extremal;
pub mod ffmodel;
pub mod predicate;
pub mod report;
pub mod search;
pub mod sieve;

pub use error::{Error, Result};
pub use predicate::{PairWitness, PowerTarget, Shift};
pub use report::{BoundReport, Verdict};
pub use search::{CliqueResult, TupleGraph};
