//! Exact lattice invariants and upper bounds for Euclidean minima of
//! abelian number fields of prime-power conductor.
//!
//! The crate builds the trace-form lattices of these fields from closed-form
//! root-of-unity traces, computes their exact determinants, covering radii
//! (where analytic) and Hermite-like thickness, and evaluates every bound on
//! the Euclidean minimum `M(K)` exactly, including the decision procedure for
//! the Minkowski-conjecture criterion `4 tau <= n`.
//!
//! All number-theoretic verdicts are decided in exact arithmetic: rationals,
//! factored integers, and products of rational prime powers, with certified
//! log intervals used only to separate values that are provably distinct.
//!
//! Modules:
//!
//! - [`exact`]: rationals, factored integers, [`exact::PowerProduct`],
//!   certified [`exact::LogInterval`] bounds, symmetric matrices and
//!   fraction-free determinants.
//! - [`lattice`]: Gram-matrix lattices and the constructors for the diagonal,
//!   `L_(b,m)` and scaled dual-root-lattice families.
//! - [`enumerate`]: exact closest-vector search, vector counts by norm,
//!   deep-hole checks and sampled covering-radius lower bounds.
//! - [`fields`]: field descriptors and their trace-form Gram matrices.
//! - [`bounds`]: the bound formulas, exact comparison verdicts, and the
//!   best-known-bound selector keyed on the conductor factorization.
//! - [`cli`]: the `bound` / `scan` / `verify` command-line surface.
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --example bound_report`.

pub mod bounds;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod fields;
pub mod lattice;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
