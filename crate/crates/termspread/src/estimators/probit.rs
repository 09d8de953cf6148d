//! Probit maximum likelihood via Newton–Raphson with step-halving.
//!
//! The log-likelihood is ℓ(β) = Σ yᵢ ln Φ(zᵢ) + (1−yᵢ) ln Φ(−zᵢ) with
//! zᵢ = xᵢᵀβ. Score and negative Hessian use the standard inverse Mills
//! ratios λᵢ, computed through log-space differences so deep-tail rows do not
//! underflow. The line search accepts a step when the likelihood does not
//! decrease (weak inequality): near the optimum the true improvement drops
//! below the floating-point resolution of ℓ, and demanding strict increase
//! would stall the iteration with the gradient still above tolerance.

use crate::error::{Error, Result};
use crate::estimators::ProbitFit;
use crate::numerics::{
    inverse_spd, solve_spd, std_normal_cdf, std_normal_inv_cdf, std_normal_ln_cdf,
    std_normal_ln_pdf, std_normal_pdf, Matrix,
};
use crate::series::{QuarterId, Series, Unit};

const GRADIENT_TOL: f64 = 1e-8;
const STEP_TOL: f64 = 1e-6;
const MAX_ITERATIONS: usize = 100;
const MAX_HALVINGS: usize = 60;
/// A coefficient this large means the likelihood is still climbing toward an
/// infinite MLE — the classic signature of linearly separable classes.
const DIVERGENCE_LIMIT: f64 = 1e4;

/// Probit log-likelihood at `beta`.
pub fn probit_log_likelihood(y: &[f64], x: &Matrix, beta: &[f64]) -> f64 {
    let z = x.mul_vec(beta);
    y.iter()
        .zip(&z)
        .map(|(&yi, &zi)| {
            if yi == 1.0 {
                std_normal_ln_cdf(zi)
            } else {
                std_normal_ln_cdf(-zi)
            }
        })
        .sum()
}

/// Analytic score (gradient of the log-likelihood) at `beta`.
pub fn probit_score(y: &[f64], x: &Matrix, beta: &[f64]) -> Vec<f64> {
    let lambda = mills(y, &x.mul_vec(beta));
    x.transpose_mul_vec(&lambda)
}

/// Inverse Mills ratio per observation: φ(z)/Φ(z) for successes,
/// −φ(z)/Φ(−z) for failures, via log-space subtraction.
fn mills(y: &[f64], z: &[f64]) -> Vec<f64> {
    y.iter()
        .zip(z)
        .map(|(&yi, &zi)| {
            if yi == 1.0 {
                (std_normal_ln_pdf(zi) - std_normal_ln_cdf(zi)).exp()
            } else {
                -(std_normal_ln_pdf(zi) - std_normal_ln_cdf(-zi)).exp()
            }
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
}

/// Keep a fitted probability inside the open interval (0, 1).
fn open_unit(p: f64) -> f64 {
    p.max(f64::MIN_POSITIVE).min(1.0 - f64::EPSILON / 2.0)
}

/// Fit a probit model by Newton–Raphson.
///
/// `y` must be a 0/1 vector with both classes present; `X` carries a leading
/// intercept column. Starts from β = 0 with the intercept at Φ⁻¹(mean y).
/// Converged means the score max-norm fell below 1e−8 *and* the Newton step
/// below 1e−6 — the step condition stops separated data, whose score can
/// underflow at large but finite coefficients, from passing as converged.
/// Steps are backtracked until the log-likelihood does not decrease, except
/// that sub-tolerance steps are taken outright: their true likelihood gain
/// sits below floating-point resolution, where an ascent test only measures
/// rounding noise. Divergence past |β| = 1e4, a failed line search, or 100
/// iterations without convergence all report a separation error.
pub fn probit_fit(
    y: &[f64],
    x: &Matrix,
    names: &[&str],
    index: &[QuarterId],
) -> Result<ProbitFit> {
    let n = x.rows();
    let k = x.cols();
    if y.len() != n || index.len() != n {
        return Err(Error::Validation {
            msg: format!(
                "probit_fit: design matrix has {n} rows but y has {} and index has {}",
                y.len(),
                index.len()
            ),
        });
    }
    if names.len() != k {
        return Err(Error::Validation {
            msg: format!("probit_fit: {k} columns but {} coefficient names", names.len()),
        });
    }
    if let Some(bad) = y.iter().find(|v| **v != 0.0 && **v != 1.0) {
        return Err(Error::Validation {
            msg: format!("probit_fit: response value {bad} is not 0 or 1"),
        });
    }
    if n <= k {
        return Err(Error::InsufficientData {
            msg: format!("probit_fit needs more rows than coefficients, got {n} rows for {k}"),
        });
    }
    let ones = y.iter().filter(|v| **v == 1.0).count();
    if ones == 0 || ones == n {
        return Err(Error::DegenerateData {
            msg: format!(
                "probit response is single-class ({ones} of {n} observations are 1); \
                 both outcomes are required"
            ),
        });
    }

    let mut beta = vec![0.0; k];
    beta[0] = std_normal_inv_cdf(ones as f64 / n as f64)?;
    let mut current_ll = probit_log_likelihood(y, x, &beta);

    for iteration in 0..MAX_ITERATIONS {
        let z = x.mul_vec(&beta);
        let lambda = mills(y, &z);
        let gradient = x.transpose_mul_vec(&lambda);
        // Negative Hessian Σ wᵢ xᵢxᵢᵀ with wᵢ = λᵢ(λᵢ + zᵢ) > 0.
        let weights: Vec<f64> = lambda.iter().zip(&z).map(|(&l, &zi)| l * (l + zi)).collect();
        let neg_hessian = x.weighted_gram(&weights);
        let delta = solve_spd(&neg_hessian, &gradient)?;

        if max_abs(&gradient) < GRADIENT_TOL && max_abs(&delta) < STEP_TOL {
            let covariance = inverse_spd(&neg_hessian)?;
            let std_errors: Vec<f64> =
                (0..k).map(|i| covariance.get(i, i).sqrt()).collect();
            let fitted_probabilities = Series::new(
                "fitted_probability",
                Unit::Level,
                index
                    .iter()
                    .copied()
                    .zip(z.iter().map(|&zi| open_unit(std_normal_cdf(zi))))
                    .collect(),
            )?;
            return Ok(ProbitFit {
                coefficient_names: names.iter().map(|s| s.to_string()).collect(),
                coefficients: beta,
                std_errors,
                log_likelihood: current_ll,
                iterations: iteration,
                converged: true,
                fitted_probabilities,
            });
        }

        if max_abs(&beta) > DIVERGENCE_LIMIT {
            return Err(Error::Separation {
                msg: format!(
                    "coefficient magnitude exceeded {DIVERGENCE_LIMIT:.0e} after \
                     {iteration} iterations"
                ),
            });
        }

        if max_abs(&delta) < STEP_TOL {
            // Inside this ball the true likelihood gain from a step is far
            // below the rounding resolution of ℓ itself, so demanding an
            // observed increase would stall on summation noise one ulp deep.
            // Newton contracts locally on a concave likelihood; take the
            // full step and let the gradient test settle convergence.
            beta = beta.iter().zip(&delta).map(|(b, d)| b + d).collect();
            current_ll = probit_log_likelihood(y, x, &beta);
            continue;
        }

        let mut accepted = false;
        let mut step = 1.0;
        for _ in 0..MAX_HALVINGS {
            let candidate: Vec<f64> =
                beta.iter().zip(&delta).map(|(b, d)| b + step * d).collect();
            let candidate_ll = probit_log_likelihood(y, x, &candidate);
            if candidate_ll >= current_ll {
                beta = candidate;
                current_ll = candidate_ll;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(Error::Separation {
                msg: format!("line search failed to improve the log-likelihood at \
                     iteration {iteration}"),
            });
        }
    }

    Err(Error::Separation {
        msg: format!("no convergence after {MAX_ITERATIONS} iterations"),
    })
}

/// Marginal effect of regressor `coefficient_index` on the fitted probability
/// at evaluation point `at`: β_j · φ(atᵀβ̂).
pub fn probit_marginal_effect(fit: &ProbitFit, at: &[f64], coefficient_index: usize) -> Result<f64> {
    let k = fit.coefficients.len();
    if at.len() != k {
        return Err(Error::Domain {
            msg: format!(
                "marginal effect evaluation point has {} entries, model has {k} coefficients",
                at.len()
            ),
        });
    }
    if coefficient_index >= k {
        return Err(Error::Domain {
            msg: format!("coefficient index {coefficient_index} out of range for {k} coefficients"),
        });
    }
    let z: f64 = at.iter().zip(&fit.coefficients).map(|(a, b)| a * b).sum();
    Ok(fit.coefficients[coefficient_index] * std_normal_pdf(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarters(n: usize) -> Vec<QuarterId> {
        let start = QuarterId::new(2000, 1).unwrap();
        (0..n).map(|i| start.add(i as i32)).collect()
    }

    fn intercept_and(x_col: &[f64]) -> Matrix {
        Matrix::from_columns(&[vec![1.0; x_col.len()], x_col.to_vec()]).unwrap()
    }

    fn dummy_fit(coefficients: Vec<f64>) -> ProbitFit {
        let k = coefficients.len();
        ProbitFit {
            coefficient_names: (0..k).map(|i| format!("b{i}")).collect(),
            coefficients,
            std_errors: vec![0.0; k],
            log_likelihood: -1.0,
            iterations: 0,
            converged: true,
            fitted_probabilities: Series::new(
                "fitted_probability",
                Unit::Level,
                vec![(QuarterId::new(2000, 1).unwrap(), 0.5)],
            )
            .unwrap(),
        }
    }

    #[test]
    fn constant_only_intercept_is_quantile_of_mean() {
        let y = [0.0, 1.0, 1.0, 1.0];
        let x = Matrix::from_columns(&[vec![1.0; 4]]).unwrap();
        let fit = probit_fit(&y, &x, &["intercept"], &quarters(4)).unwrap();
        assert!((fit.coefficients[0] - 0.6744897501960817).abs() < 1e-6);
        assert!(fit.converged);
        assert!(fit.log_likelihood <= 0.0);
        for (_, p) in fit.fitted_probabilities.iter() {
            assert!((p - 0.75).abs() < 1e-6);
        }
    }

    #[test]
    fn separated_classes_are_an_error() {
        let y = [0.0, 0.0, 1.0, 1.0];
        let x = intercept_and(&[-1.0, -1.0, 1.0, 1.0]);
        match probit_fit(&y, &x, &["intercept", "x"], &quarters(4)) {
            Err(Error::Separation { .. }) => {}
            other => panic!("expected separation error, got {other:?}"),
        }
    }

    #[test]
    fn single_class_is_degenerate() {
        let y = [1.0; 5];
        let x = intercept_and(&[0.1, -0.4, 0.9, 0.3, -0.2]);
        assert!(matches!(
            probit_fit(&y, &x, &["intercept", "x"], &quarters(5)),
            Err(Error::DegenerateData { .. })
        ));
    }

    #[test]
    fn non_indicator_response_rejected() {
        let y = [0.0, 0.5, 1.0, 1.0];
        let x = intercept_and(&[0.1, -0.4, 0.9, 0.3]);
        assert!(matches!(
            probit_fit(&y, &x, &["intercept", "x"], &quarters(4)),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let y = [0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let xc = [-1.2, 0.4, -0.3, 1.8, 0.9, -2.0, 0.1];
        let x = intercept_and(&xc);
        for beta in [[0.1, 0.4], [-0.3, 1.0], [0.6, -0.8]] {
            let analytic = probit_score(&y, &x, &beta);
            let h = 1e-6;
            for j in 0..2 {
                let mut up = beta.to_vec();
                let mut down = beta.to_vec();
                up[j] += h;
                down[j] -= h;
                let numeric = (probit_log_likelihood(&y, &x, &up)
                    - probit_log_likelihood(&y, &x, &down))
                    / (2.0 * h);
                let scale = numeric.abs().max(1.0);
                assert!(
                    (analytic[j] - numeric).abs() / scale < 1e-5,
                    "beta={beta:?} j={j}: {} vs {numeric}",
                    analytic[j]
                );
            }
        }
    }

    #[test]
    fn shifting_a_regressor_moves_only_the_intercept() {
        // Fixed small dataset with both classes spread over the regressor.
        let y = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0];
        let xc = [-1.5, -1.1, -0.4, -0.3, 0.2, 0.6, 0.7, 1.0, 1.3, 1.8];
        let base = probit_fit(&y, &intercept_and(&xc), &["intercept", "x"], &quarters(10))
            .unwrap();
        let c = 3.7;
        let shifted_x: Vec<f64> = xc.iter().map(|v| v + c).collect();
        let shifted = probit_fit(
            &y,
            &intercept_and(&shifted_x),
            &["intercept", "x"],
            &quarters(10),
        )
        .unwrap();
        assert!((shifted.coefficients[1] - base.coefficients[1]).abs() < 1e-6);
        assert!(
            (shifted.coefficients[0] - (base.coefficients[0] - c * base.coefficients[1])).abs()
                < 1e-6
        );
        for (q, p) in base.fitted_probabilities.iter() {
            let p2 = shifted.fitted_probabilities.get(q).unwrap();
            assert!((p - p2).abs() < 1e-8);
        }
    }

    #[test]
    fn optimum_beats_starting_point() {
        let y = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let xc = [-1.5, -1.1, -0.4, -0.3, 0.2, 0.6, 0.7, 1.0];
        let x = intercept_and(&xc);
        let fit = probit_fit(&y, &x, &["intercept", "x"], &quarters(8)).unwrap();
        let mut start = vec![0.0, 0.0];
        start[0] = std_normal_inv_cdf(5.0 / 8.0).unwrap();
        assert!(fit.log_likelihood >= probit_log_likelihood(&y, &x, &start));
        assert!(fit.log_likelihood <= 0.0);
    }

    #[test]
    fn recovers_generating_coefficients_roughly() {
        // Simulate from Φ(0.3 + 0.8 x) with a throwaway congruential stream.
        let mut state = 987654321_u64;
        let mut uniform = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let n = 400;
        let mut xc = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for _ in 0..n {
            let xi = uniform() * 4.0 - 2.0;
            let p = std_normal_cdf(0.3 + 0.8 * xi);
            y.push(if uniform() < p { 1.0 } else { 0.0 });
            xc.push(xi);
        }
        let fit = probit_fit(&y, &intercept_and(&xc), &["intercept", "x"], &quarters(n))
            .unwrap();
        assert!((fit.coefficients[0] - 0.3).abs() < 0.3, "{:?}", fit.coefficients);
        assert!((fit.coefficients[1] - 0.8).abs() < 0.3, "{:?}", fit.coefficients);
        assert!(fit.iterations < 20);
        assert!(fit.std_errors.iter().all(|s| *s > 0.0));
    }

    #[test]
    fn marginal_effect_closed_form() {
        let fit = dummy_fit(vec![0.0, -0.5]);
        let me = probit_marginal_effect(&fit, &[1.0, 0.0], 1).unwrap();
        assert!((me - (-0.19947114020071635)).abs() < 1e-12);
        // Zero coefficient → zero effect regardless of the point.
        let me0 = probit_marginal_effect(&fit, &[1.0, 0.3], 0).unwrap();
        assert_eq!(me0, 0.0);
    }

    #[test]
    fn marginal_effect_shrinks_away_from_zero_index() {
        let fit = dummy_fit(vec![0.0, 1.5]);
        // atᵀβ = 0 vs atᵀβ = ±2.
        let at_zero = probit_marginal_effect(&fit, &[1.0, 0.0], 1).unwrap();
        let at_plus = probit_marginal_effect(&fit, &[1.0, 2.0 / 1.5], 1).unwrap();
        let at_minus = probit_marginal_effect(&fit, &[1.0, -2.0 / 1.5], 1).unwrap();
        assert!(at_zero.abs() > at_plus.abs());
        assert!(at_zero.abs() > at_minus.abs());
    }

    #[test]
    fn marginal_effect_validates_dimensions() {
        let fit = dummy_fit(vec![0.0, -0.5]);
        assert!(matches!(
            probit_marginal_effect(&fit, &[1.0], 1),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            probit_marginal_effect(&fit, &[1.0, 0.0], 5),
            Err(Error::Domain { .. })
        ));
    }
}
