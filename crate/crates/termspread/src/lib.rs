//! Term-spread models of GDP growth and recession risk.
//!
//! The crate links a quarterly yield-curve spread (long rate minus short
//! rate) to subsequent real activity in two ways:
//!
//! * **Growth regressions** — k-quarter GDP growth regressed on the spread
//!   at a predictor quarter, in four variants that differ in the growth
//!   transform (simple percent vs annualized log) and in whether the growth
//!   window starts at the predictor quarter or the one after it
//!   ([`models::GrowthModelKind`]).
//! * **Recession probits** — a binary recession indicator h quarters ahead
//!   explained by the current spread (plus optional extra regressors) through
//!   a maximum-likelihood probit ([`models::fit_recession_probit`]).
//!
//! Supporting layers: quarterly series and alignment ([`series`]), CSV
//! ingestion with precise error positions ([`ingest`]), self-contained
//! numerics — normal distribution kernels and SPD linear algebra
//! ([`numerics`]) — the OLS and probit estimators ([`estimators`]),
//! in-sample and rolling out-of-sample evaluation ([`evaluate`]), and a
//! deterministic synthetic-scenario generator with known ground truth
//! ([`synthgen`]). The [`cli`] module implements the `termspread` binary.
//!
//! Everything is deterministic: no global state, no environment-dependent
//! numerics, and a fully specified random source for synthetic data.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod evaluate;
pub mod ingest;
pub mod models;
pub mod numerics;
pub mod series;
pub mod synthgen;

pub use error::{Error, Result};
