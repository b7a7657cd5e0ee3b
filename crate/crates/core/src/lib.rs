//! Exact enumeration toolkit for k-protected vertices in unlabeled rooted
//! plane trees.
//!
//! A vertex is k-protected when every downward path from it to a leaf has
//! at least `k` edges; its rank is the largest such `k`. The crate provides:
//!
//! * [`series`]: exact polynomials and truncated power series over
//!   [`BigRational`](series::BigRational).
//! * [`genfun`]: the tree, vertex, leaf and root-protected generating
//!   functions, the protected-vertex series `T_k = L R_k`, rank-sum series,
//!   and exact checks of the `n_k`/`d_k` polynomial identities.
//! * [`oracle`]: brute-force enumeration of plane trees with direct rank
//!   tallies, cross-checked against the series.
//! * [`asymptotics`]: limiting fractions and expected-rank constants with
//!   certified tail bounds, and convergence tables of exact ratios.
//! * [`verify`]: the named verification suites.
//! * [`cli`]: the `rankgen` command-line front end.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod asymptotics;
pub mod cli;
pub mod decimal;
pub mod genfun;
pub mod oracle;
pub mod report;
pub mod series;
pub mod verify;

pub use asymptotics::{LimitFamily, LimitValue};
pub use genfun::{RootMethod, SeriesFamily};
pub use oracle::{Enumerator, PlaneTree, RankTally};
pub use report::VerificationReport;
pub use series::{BigRational, Polynomial, TruncatedSeries};
