//! Ordinary least squares through the normal equations.

use crate::error::{Error, Result};
use crate::estimators::RegressionFit;
use crate::numerics::{inverse_spd, solve_spd, Matrix};
use crate::series::{QuarterId, Series, Unit};

/// Fit `y = Xβ + ε` by least squares with classical inference.
///
/// `X` must carry rows matching `y` and `index` and more rows than columns;
/// `names` labels the coefficients in column order. Collinear columns surface
/// as a singularity error from the normal-equations solve.
///
/// Standard errors use σ̂² = RSS/(n − k) with k counting all columns
/// (intercept included); R² is computed about the mean of `y` and clamped to
/// [0, 1] against roundoff.
pub fn ols_fit(
    y: &[f64],
    x: &Matrix,
    names: &[&str],
    index: &[QuarterId],
) -> Result<RegressionFit> {
    let n = x.rows();
    let k = x.cols();
    if y.len() != n || index.len() != n {
        return Err(Error::Validation {
            msg: format!(
                "ols_fit: design matrix has {n} rows but y has {} and index has {}",
                y.len(),
                index.len()
            ),
        });
    }
    if names.len() != k {
        return Err(Error::Validation {
            msg: format!("ols_fit: {k} columns but {} coefficient names", names.len()),
        });
    }
    if n <= k {
        return Err(Error::InsufficientData {
            msg: format!("ols_fit needs more rows than coefficients, got {n} rows for {k}"),
        });
    }

    let xtx = x.gram();
    let xty = x.transpose_mul_vec(y);
    let coefficients = solve_spd(&xtx, &xty)?;

    let fitted = x.mul_vec(&coefficients);
    let residual_values: Vec<f64> = y.iter().zip(&fitted).map(|(yi, fi)| yi - fi).collect();
    let rss: f64 = residual_values.iter().map(|e| e * e).sum();

    let sigma2 = rss / (n - k) as f64;
    let xtx_inv = inverse_spd(&xtx)?;
    let std_errors: Vec<f64> = (0..k).map(|i| (sigma2 * xtx_inv.get(i, i)).sqrt()).collect();
    let t_stats: Vec<f64> = coefficients
        .iter()
        .zip(&std_errors)
        .map(|(&b, &se)| if se > 0.0 { b / se } else { f64::NAN })
        .collect();

    let y_mean = y.iter().sum::<f64>() / n as f64;
    let tss: f64 = y.iter().map(|yi| (yi - y_mean) * (yi - y_mean)).sum();
    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        0.0
    };

    let residuals = Series::new(
        "residuals",
        Unit::Level,
        index.iter().copied().zip(residual_values).collect(),
    )?;

    Ok(RegressionFit {
        coefficient_names: names.iter().map(|s| s.to_string()).collect(),
        coefficients,
        std_errors,
        t_stats,
        r_squared,
        n_obs: n,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarters(n: usize) -> Vec<QuarterId> {
        let start = QuarterId::new(2000, 1).unwrap();
        (0..n).map(|i| start.add(i as i32)).collect()
    }

    fn design(x_col: &[f64]) -> Matrix {
        Matrix::from_columns(&[vec![1.0; x_col.len()], x_col.to_vec()]).unwrap()
    }

    #[test]
    fn exact_line_recovered() {
        let y = [1.0, 3.0, 5.0];
        let x = design(&[0.0, 1.0, 2.0]);
        let fit = ols_fit(&y, &x, &["intercept", "x"], &quarters(3)).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        for (_, e) in fit.residuals.iter() {
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn textbook_four_point_fit() {
        // By direct summation: Sxy = 3.0, Sxx = 5.0 → slope 0.6, intercept 1.0;
        // RSS = 3.2, TSS = 5.0 → R² = 0.36; σ̂² = 1.6,
        // (XᵀX)⁻¹ diag = (1.5, 0.2) → SEs √2.4, √0.32.
        let y = [2.0, 1.0, 4.0, 3.0];
        let x = design(&[1.0, 2.0, 3.0, 4.0]);
        let fit = ols_fit(&y, &x, &["intercept", "x"], &quarters(4)).unwrap();
        assert!((fit.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 0.6).abs() < 1e-12);
        assert!((fit.r_squared - 0.36).abs() < 1e-12);
        assert!((fit.std_errors[0] - 2.4_f64.sqrt()).abs() < 1e-12);
        assert!((fit.std_errors[1] - 0.32_f64.sqrt()).abs() < 1e-12);
        assert!((fit.t_stats[1] - 0.6 / 0.32_f64.sqrt()).abs() < 1e-12);
        assert_eq!(fit.n_obs, 4);
    }

    #[test]
    fn residuals_sum_to_zero_with_intercept() {
        let y = [2.3, -1.1, 0.7, 4.2, 3.3, -0.5, 1.9];
        let x = design(&[0.2, 1.4, -0.7, 2.2, 1.1, -1.3, 0.4]);
        let fit = ols_fit(&y, &x, &["intercept", "x"], &quarters(7)).unwrap();
        let sum: f64 = fit.residuals.iter().map(|(_, e)| e).sum();
        assert!(sum.abs() < 1e-8 * 7.0);
    }

    #[test]
    fn orthogonality_of_residuals() {
        let y = [2.3, -1.1, 0.7, 4.2, 3.3, -0.5, 1.9, 0.0];
        let xc = [0.2, 1.4, -0.7, 2.2, 1.1, -1.3, 0.4, 0.9];
        let x = design(&xc);
        let fit = ols_fit(&y, &x, &["intercept", "x"], &quarters(8)).unwrap();
        let e: Vec<f64> = fit.residuals.iter().map(|(_, v)| v).collect();
        let xte = x.transpose_mul_vec(&e);
        for v in xte {
            assert!(v.abs() < 1e-8);
        }
    }

    #[test]
    fn scale_equivariance() {
        let y = [2.0, 1.0, 4.0, 3.0, 5.0];
        let x = design(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let idx = quarters(5);
        let base = ols_fit(&y, &x, &["intercept", "x"], &idx).unwrap();
        let scaled_y: Vec<f64> = y.iter().map(|v| v * 7.5).collect();
        let scaled = ols_fit(&scaled_y, &x, &["intercept", "x"], &idx).unwrap();
        for i in 0..2 {
            assert!((scaled.coefficients[i] - 7.5 * base.coefficients[i]).abs() < 1e-10);
            assert!((scaled.std_errors[i] - 7.5 * base.std_errors[i]).abs() < 1e-10);
        }
        assert!((scaled.r_squared - base.r_squared).abs() < 1e-10);
    }

    #[test]
    fn constant_y_gives_zero_r_squared() {
        let y = [3.0; 5];
        let x = design(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let fit = ols_fit(&y, &x, &["intercept", "x"], &quarters(5)).unwrap();
        assert_eq!(fit.r_squared, 0.0);
        assert!(fit.coefficients[1].abs() < 1e-12);
    }

    #[test]
    fn too_few_rows_rejected() {
        let y = [1.0, 2.0];
        let x = design(&[0.0, 1.0]);
        assert!(matches!(
            ols_fit(&y, &x, &["intercept", "x"], &quarters(2)),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn collinear_columns_rejected() {
        let x = Matrix::from_columns(&[
            vec![1.0; 5],
            vec![2.0; 5], // multiple of the intercept column
        ])
        .unwrap();
        let y = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert!(matches!(
            ols_fit(&y, &x, &["intercept", "x"], &quarters(5)),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn dimension_mismatches_rejected() {
        let y = [1.0, 2.0, 3.0];
        let x = design(&[0.0, 1.0, 2.0]);
        assert!(ols_fit(&y, &x, &["intercept"], &quarters(3)).is_err());
        assert!(ols_fit(&y, &x, &["intercept", "x"], &quarters(2)).is_err());
    }
}
