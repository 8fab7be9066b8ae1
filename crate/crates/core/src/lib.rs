//! Exact combinatorics of the `(s,t)`-property.
//!
//! A graph has the `(s,t)`-property when every induced subgraph on `s`
//! vertices contains an independent set of size `t`. This crate implements
//! the machinery needed to study `f(n,s,t)` — the guaranteed independence
//! number over all n-vertex graphs with the property — at desk scale:
//!
//! - [`graph`]: immutable bitset graphs, seeded `G(n,p)` generation, the
//!   edge-list file format, and exact solvers (independence number, maximum
//!   clique, triangle counts, greedy maximal independent sets).
//! - [`property`]: exhaustive, sampled, and Turán-certificate checks of the
//!   `(s,t)`-property itself.
//! - [`bounds`]: exact, non-asymptotic evaluation of every closed-form
//!   quantity in the underlying theorems (`k`, the Ramsey guarantee, the
//!   peeling round count `r`, the edge probabilities, the upper-bound
//!   formulas, the special-case parameterizations).
//! - [`extraction`]: the constructive procedures inside the lower-bound
//!   proofs (clique removal, `X_i`/`V_i` peeling, repeated-MIS peeling).
//! - [`constructions`]: random upper-bound witnesses and the iterated-greedy
//!   machinery, with edge-budget, triangle-sparsity, and degree-pruning
//!   verification.
//! - [`oracle`]: exact `f(n,s,t)` by exhaustive graph enumeration, and
//!   direct verification of the peeling proof's counting inequalities.
//!
//! All randomness flows through [`rng::RngSpec`]; identical specs yield
//! identical results regardless of thread count or platform. Data-parallel
//! scans use rayon when the `parallel` feature (default) is enabled and a
//! sequential fallback otherwise; see [`exec`].

pub mod bitset;
pub mod bounds;
pub mod combin;
pub mod constructions;
pub mod exec;
pub mod extraction;
pub mod graph;
pub mod oracle;
pub mod property;
pub mod rng;
pub mod small;
pub mod solver;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
