//! Forecast evaluation: in-sample fit, rolling out-of-sample forecasts, and
//! recession classification metrics.

use crate::error::{Error, Result};
use crate::estimators::ProbitFit;
use crate::models::{build_growth_regression, GrowthModelSpec};
use crate::numerics::{solve_spd, Matrix};
use crate::series::{Dataset, Series, Unit};

/// How a forecast report was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    InSample,
    RollingOos,
}

/// Training-window policy for rolling forecasts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowStyle {
    /// Use all available training rows.
    Expanding,
    /// Use at most the given number of most recent training rows.
    Rolling(usize),
}

/// Actual and predicted growth paths with summary accuracy measures.
#[derive(Debug, Clone)]
pub struct ForecastReport {
    pub actual: Series,
    pub predicted: Series,
    pub scheme: Scheme,
    /// First forecast origin (row position); 0 for in-sample reports.
    pub min_train: usize,
    /// Out-of-sample R² for rolling reports; the in-sample R² for in-sample
    /// reports.
    pub r_squared_oos: f64,
    pub rmse: f64,
}

/// Hit and false-alarm rates of thresholded recession probabilities.
#[derive(Debug, Clone)]
pub struct ClassificationMetrics {
    /// Share of recession quarters flagged; absent when the evaluation span
    /// contains no recession quarter.
    pub hit_rate: Option<f64>,
    /// Share of non-recession quarters flagged; absent when the span contains
    /// no non-recession quarter.
    pub false_alarm_rate: Option<f64>,
    pub n_recession_quarters: usize,
    pub n_obs: usize,
}

/// Fit the growth model on the full aligned sample and report fitted values.
///
/// Both series are indexed at the predictor quarter. `r_squared_oos` carries
/// the in-sample R² under this scheme, and `rmse` is `sqrt(RSS / n)`.
pub fn in_sample_forecast(ds: &Dataset, spec: &GrowthModelSpec) -> Result<ForecastReport> {
    let (y, x, index) = build_growth_regression(ds, spec)?;
    let fit = crate::estimators::ols_fit(&y, &x, &["intercept", "spread"], &index)?;
    let predicted_vals = x.mul_vec(&fit.coefficients);
    let rss: f64 = y
        .iter()
        .zip(&predicted_vals)
        .map(|(yi, pi)| (yi - pi) * (yi - pi))
        .sum();
    let pair = |vals: &[f64]| {
        index
            .iter()
            .zip(vals)
            .map(|(&t, &v)| (t, v))
            .collect::<Vec<_>>()
    };
    Ok(ForecastReport {
        actual: Series::new("actual_growth", Unit::PercentGrowth, pair(&y))?,
        predicted: Series::new("predicted_growth", Unit::PercentGrowth, pair(&predicted_vals))?,
        scheme: Scheme::InSample,
        min_train: 0,
        r_squared_oos: fit.r_squared,
        rmse: (rss / y.len() as f64).sqrt(),
    })
}

/// Rolling out-of-sample forecasts with an expanding training window.
pub fn rolling_oos_forecast(
    ds: &Dataset,
    spec: &GrowthModelSpec,
    min_train: usize,
) -> Result<ForecastReport> {
    rolling_oos_forecast_with(ds, spec, min_train, WindowStyle::Expanding)
}

/// Rolling out-of-sample forecasts.
///
/// Rows are the growth-regression rows in predictor-quarter order. For each
/// forecast origin `i` from `min_train` onward, the model is re-estimated on
/// the rows whose growth windows are fully observed by the origin quarter —
/// rows `j < i − lead − k + 1` — optionally truncated to a fixed-width recent
/// window; the origin's growth is then predicted from the origin's spread.
/// Holding out the `lead + k − 1` rows nearest the origin keeps every
/// training observation computable in real time at the origin quarter.
///
/// Output series are indexed at the target quarter (predictor quarter plus
/// the model's lead). R² compares forecast errors against deviations from
/// each origin's own training mean, so it can be negative when the model
/// forecasts worse than that mean.
pub fn rolling_oos_forecast_with(
    ds: &Dataset,
    spec: &GrowthModelSpec,
    min_train: usize,
    style: WindowStyle,
) -> Result<ForecastReport> {
    if min_train < 8 {
        return Err(Error::Validation {
            msg: format!("min_train must be at least 8 rows, got {min_train}"),
        });
    }
    if let WindowStyle::Rolling(width) = style {
        if width < 3 {
            return Err(Error::Validation {
                msg: format!("rolling window width must be at least 3 rows, got {width}"),
            });
        }
    }
    let (y, x, index) = build_growth_regression(ds, spec)?;
    let n = y.len();
    if n < min_train + 4 {
        return Err(Error::InsufficientData {
            msg: format!(
                "rolling evaluation needs at least {} rows (min_train {min_train} + 4), \
                 found {n}",
                min_train + 4
            ),
        });
    }

    let holdout = (spec.kind.lead() + spec.horizon_k - 1) as i64;
    let mut sum_sq_err = 0.0;
    let mut sum_sq_dev = 0.0;
    let mut actual = Vec::with_capacity(n - min_train);
    let mut predicted = Vec::with_capacity(n - min_train);
    for i in min_train..n {
        let hi = i as i64 - holdout;
        let lo = match style {
            WindowStyle::Expanding => 0,
            WindowStyle::Rolling(width) => (hi - width as i64).max(0),
        };
        if hi - lo < 3 {
            return Err(Error::InsufficientData {
                msg: format!(
                    "origin {} leaves only {} completed training rows (need 3); \
                     increase min_train past {}",
                    index[i],
                    (hi - lo).max(0),
                    min_train
                ),
            });
        }
        let (lo, hi) = (lo as usize, hi as usize);

        let mut sub = Matrix::zeros(hi - lo, x.cols())?;
        for r in lo..hi {
            for c in 0..x.cols() {
                sub.set(r - lo, c, x.get(r, c));
            }
        }
        let beta = solve_spd(&sub.gram(), &sub.transpose_mul_vec(&y[lo..hi]))?;

        let forecast: f64 = (0..x.cols()).map(|c| x.get(i, c) * beta[c]).sum();
        let err = y[i] - forecast;
        let train_mean = y[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
        let dev = y[i] - train_mean;
        sum_sq_err += err * err;
        sum_sq_dev += dev * dev;

        let target = index[i].add(spec.kind.lead() as i32);
        actual.push((target, y[i]));
        predicted.push((target, forecast));
    }

    let m = actual.len() as f64;
    let r_squared_oos = if sum_sq_dev > 0.0 {
        1.0 - sum_sq_err / sum_sq_dev
    } else if sum_sq_err == 0.0 {
        1.0
    } else {
        f64::NEG_INFINITY
    };
    Ok(ForecastReport {
        actual: Series::new("actual_growth", Unit::PercentGrowth, actual)?,
        predicted: Series::new("predicted_growth", Unit::PercentGrowth, predicted)?,
        scheme: Scheme::RollingOos,
        min_train,
        r_squared_oos,
        rmse: (sum_sq_err / m).sqrt(),
    })
}

/// Score thresholded probit probabilities against actual labels.
///
/// Quarters are matched by identity: the caller is responsible for shifting
/// the actual indicator so that labels and probabilities refer to the same
/// quarter. A probability at or above the threshold counts as a recession
/// call (the threshold itself is inclusive).
pub fn recession_classification(
    fit: &ProbitFit,
    actual: &Series,
    threshold: f64,
) -> Result<ClassificationMetrics> {
    if actual.unit() != Unit::Indicator {
        return Err(Error::Validation {
            msg: format!(
                "classification labels must have indicator unit; '{}' is {}",
                actual.name(),
                actual.unit()
            ),
        });
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Validation {
            msg: format!("classification threshold must be in [0, 1], got {threshold}"),
        });
    }

    let mut n_obs = 0usize;
    let mut n_recession = 0usize;
    let mut hits = 0usize;
    let mut false_alarms = 0usize;
    for (t, p) in fit.fitted_probabilities.iter() {
        let Some(label) = actual.get(t) else {
            continue;
        };
        n_obs += 1;
        let flagged = p >= threshold;
        if label == 1.0 {
            n_recession += 1;
            if flagged {
                hits += 1;
            }
        } else if flagged {
            false_alarms += 1;
        }
    }
    if n_obs == 0 {
        let span = |s: &Series| match (s.first_quarter(), s.last_quarter()) {
            (Some(a), Some(b)) => format!("{a}..{b}"),
            _ => "empty".to_string(),
        };
        return Err(Error::Alignment {
            msg: format!(
                "fitted probabilities ({}) share no quarters with labels '{}' ({})",
                span(&fit.fitted_probabilities),
                actual.name(),
                span(actual)
            ),
        });
    }
    let n_normal = n_obs - n_recession;
    Ok(ClassificationMetrics {
        hit_rate: (n_recession > 0).then(|| hits as f64 / n_recession as f64),
        false_alarm_rate: (n_normal > 0).then(|| false_alarms as f64 / n_normal as f64),
        n_recession_quarters: n_recession,
        n_obs,
    })
}
