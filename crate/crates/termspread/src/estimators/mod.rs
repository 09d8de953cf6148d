//! Statistical engines: ordinary least squares with classical inference and
//! probit maximum likelihood via Newton–Raphson.

mod ols;
mod probit;

pub use ols::ols_fit;
pub use probit::{probit_fit, probit_log_likelihood, probit_marginal_effect, probit_score};

use crate::series::Series;

/// Result of one OLS estimation.
///
/// `coefficients[0]` is the intercept whenever the design matrix carries a
/// leading intercept column, which every model in this crate does.
#[derive(Debug, Clone)]
pub struct RegressionFit {
    pub coefficient_names: Vec<String>,
    pub coefficients: Vec<f64>,
    /// Classical homoskedastic standard errors from σ̂²(XᵀX)⁻¹.
    pub std_errors: Vec<f64>,
    /// coefficient / std_error; NaN where the standard error is zero.
    pub t_stats: Vec<f64>,
    /// Coefficient of determination about the mean, clamped to [0, 1].
    pub r_squared: f64,
    pub n_obs: usize,
    /// Residuals y − Xβ̂, indexed at each row's quarter.
    pub residuals: Series,
}

/// Result of one probit maximum-likelihood estimation.
#[derive(Debug, Clone)]
pub struct ProbitFit {
    pub coefficient_names: Vec<String>,
    pub coefficients: Vec<f64>,
    /// Standard errors from the inverse negative Hessian at the optimum.
    pub std_errors: Vec<f64>,
    pub log_likelihood: f64,
    /// Newton iterations performed before the convergence test passed.
    pub iterations: usize,
    /// Always true on a successful return; non-convergence is an error.
    pub converged: bool,
    /// Φ(xᵀβ̂) per row, indexed at each row's quarter, kept in (0, 1).
    pub fitted_probabilities: Series,
}
