//! Exact computation of coset weight distributions for generalized doubly
//! extended Reed-Solomon (GDRS) codes, together with the subset-product and
//! subset-sum counting problems they reduce to.
//!
//! The crate is organised in layers:
//!
//! - [`fields`]: arithmetic in small finite fields `F_q`, discrete logarithms,
//!   and the brute-force count of `mu`-subsets of `F_q*` with a prescribed
//!   product.
//! - [`ring_orbits`]: the ring `Z_R`, the group of affine maps
//!   `lambda -> lambda*l + u*mu` acting on it, its orbit partition, and the
//!   residue-profile machinery used by the fast counting route.
//! - [`peculiarity`]: the count `P+(lambda)` of `mu`-subsets of `Z_R` summing
//!   to `lambda`, computed by three independent routes (exhaustive
//!   enumeration, the orbit/profile engine, and closed forms for the solved
//!   parameter families) plus a reconciler that cross-checks them.
//! - [`gdrs`]: GDRS code construction, MDS weight distributions, the
//!   transformed Bonneau extension from a known prefix to a full coset weight
//!   distribution, the weight-1 and weight-2 coset formulas, and exhaustive
//!   small-`q` coset oracles used as ground truth.
//! - [`verify`]: named verification suites (closed-form table sweeps,
//!   formula-vs-oracle comparisons, and empirical conjecture sweeps) shared
//!   by the test suite and the CLI.
//!
//! All counts are exact big integers; nothing in this crate is approximate.

pub mod combinatorics;
pub mod fields;
pub mod gdrs;
pub mod peculiarity;
pub mod ring_orbits;
pub mod verify;

/// Default ceiling on the number of subset/codeword visits an exhaustive
/// enumeration may perform before refusing to run. Override per call, with
/// the CLI `--budget` flag, or the `GDRS_BUDGET` environment variable.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 100_000_000;
