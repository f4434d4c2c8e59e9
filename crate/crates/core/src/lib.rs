//! Exact computation of the limit points of quasi-components of
//! one-dimensional regular chains.
//!
//! A regular chain `R = {r_1, ..., r_{s-1}}` in variables `X1 < ... < Xs`
//! describes a quasi-component `W(R) = V(R) \ V(h_R)`, the common zeros of
//! the chain away from the zeros of the product `h_R` of its initials.
//! When the chain is one-dimensional and strongly normalized (every initial
//! depends on `X1` only), the closure of `W(R)` adds finitely many points:
//! the limits of branches of `W(R)` as `X1` approaches a root of `h_R`.
//!
//! This crate computes those limit points exactly:
//!
//! * [`mpoly`], [`upoly`], [`elim`] — sparse multivariate and dense
//!   univariate polynomial arithmetic over the rationals: pseudo-division,
//!   resultants, square-free parts, contents.
//! * [`tower`] — dynamic evaluation (D5-style) towers of simple algebraic
//!   extensions; roots are represented by square-free moduli and towers
//!   split lazily when a zero-test or inversion meets a zero divisor.
//! * [`series`], [`puiseux`] — truncated power series with explicit
//!   accuracy tracking and a finite-accuracy Newton–Puiseux expansion that
//!   never reads coefficients beyond what is known.
//! * [`accuracy`] — accuracy planning: how many series terms each level of
//!   a chain needs so that the composed expansions determine the limits.
//! * [`chain`] — the limit-point engine itself: validation, shifting,
//!   per-level expansion and composition, and evaluation at the origin.
//! * [`closure`] — closure descriptions, inclusion tests between chains,
//!   and removal of redundant components from a decomposition.
//! * [`numeric`] — a floating-point oracle that follows branches along a
//!   shrinking parameter ladder and cross-checks the exact output.
//!
//! Everything is deterministic and single-threaded; all public containers
//! are plain data, so callers may parallelize over independent chains.

pub mod accuracy;
pub mod chain;
pub mod closure;
pub mod numeric;
pub mod elim;
pub mod series;
pub mod tower;
pub mod mpoly;
pub mod puiseux;
pub mod rat;
pub mod upoly;
pub mod vars;

pub use chain::{limit_points, limit_points_at, limit_points_at_zero, LimitConfig, LimitPoint, RegularChain};
pub use closure::{chain_inclusion, closure, point_in_quasi_component, remove_redundant, ClosureDescription};
pub use numeric::{cross_check, numeric_branch_limits, CrossCheckReport, NumericPoint};
pub use mpoly::MPoly;
pub use tower::{SplitResult, Tower, TowerElement};
pub use rat::Rational;
pub use vars::VarOrder;
