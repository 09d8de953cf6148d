//! Model catalog: spread construction, curve classification, the growth
//! regressions, the recession probit, and marginal contribution.
//!
//! Every model here reduces to "assemble (y, X, quarter index) from a
//! Dataset, hand it to an estimator". The four growth-model kinds differ
//! only in the growth transform (simple percent vs annualized log) and in
//! whether the growth window starts at the predictor quarter or one quarter
//! after it.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimators::{ols_fit, probit_fit, ProbitFit, RegressionFit};
use crate::numerics::Matrix;
use crate::series::{annualized_log_growth, pct_growth, Dataset, QuarterId, Series, Unit};

/// Yield-curve shape implied by the sign of the spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    Normal,
    Flat,
    Inverted,
}

impl CurveClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveClass::Normal => "normal",
            CurveClass::Flat => "flat",
            CurveClass::Inverted => "inverted",
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which two yield series form the spread.
#[derive(Debug, Clone)]
pub struct SpreadSpec {
    pub long_series: String,
    pub short_series: String,
}

impl SpreadSpec {
    pub fn new(long_series: impl Into<String>, short_series: impl Into<String>) -> Result<Self> {
        let spec = SpreadSpec {
            long_series: long_series.into(),
            short_series: short_series.into(),
        };
        if spec.long_series == spec.short_series {
            return Err(Error::Validation {
                msg: format!(
                    "spread needs two distinct series, got '{}' twice",
                    spec.long_series
                ),
            });
        }
        Ok(spec)
    }
}

/// The four growth-regression variants.
///
/// All regress a k-quarter GDP growth measure on the spread at a predictor
/// quarter t; they differ in transform and pairing:
///
/// * `HaubrichPct` — simple percent growth over [t, t+k].
/// * `HarveyWindow` — simple percent growth over [t+1, t+1+k].
/// * `DotseyLog` — annualized log growth over [t, t+k].
/// * `TurkishNext` — simple percent growth over [t+1, t+1+k]; the default
///   configuration of this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthModelKind {
    HaubrichPct,
    HarveyWindow,
    DotseyLog,
    TurkishNext,
}

impl GrowthModelKind {
    /// Quarters between the predictor quarter and the start of the growth
    /// window.
    pub fn lead(self) -> u32 {
        match self {
            GrowthModelKind::HaubrichPct | GrowthModelKind::DotseyLog => 0,
            GrowthModelKind::HarveyWindow | GrowthModelKind::TurkishNext => 1,
        }
    }

    /// Whether the growth measure is annualized log growth rather than
    /// simple percent growth.
    pub fn uses_log_growth(self) -> bool {
        matches!(self, GrowthModelKind::DotseyLog)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GrowthModelKind::HaubrichPct => "haubrich_pct",
            GrowthModelKind::HarveyWindow => "harvey_window",
            GrowthModelKind::DotseyLog => "dotsey_log",
            GrowthModelKind::TurkishNext => "turkish_next",
        }
    }
}

impl fmt::Display for GrowthModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GrowthModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haubrich_pct" => Ok(GrowthModelKind::HaubrichPct),
            "harvey_window" => Ok(GrowthModelKind::HarveyWindow),
            "dotsey_log" => Ok(GrowthModelKind::DotseyLog),
            "turkish_next" => Ok(GrowthModelKind::TurkishNext),
            other => Err(Error::Validation {
                msg: format!(
                    "unknown model kind '{other}' (expected haubrich_pct, harvey_window, \
                     dotsey_log, or turkish_next)"
                ),
            }),
        }
    }
}

/// A fully specified growth regression.
#[derive(Debug, Clone)]
pub struct GrowthModelSpec {
    pub kind: GrowthModelKind,
    /// Growth horizon in quarters, ≥ 1; default 4 (year-on-year).
    pub horizon_k: u32,
    pub gdp_series: String,
    pub spread: SpreadSpec,
}

impl GrowthModelSpec {
    pub fn new(
        kind: GrowthModelKind,
        horizon_k: u32,
        gdp_series: impl Into<String>,
        spread: SpreadSpec,
    ) -> Result<Self> {
        if horizon_k == 0 {
            return Err(Error::Validation {
                msg: "growth horizon must be at least 1 quarter".into(),
            });
        }
        Ok(GrowthModelSpec {
            kind,
            horizon_k,
            gdp_series: gdp_series.into(),
            spread,
        })
    }
}

/// A fully specified recession probit.
#[derive(Debug, Clone)]
pub struct ProbitModelSpec {
    pub recession_series: String,
    /// Quarters ahead at which recession is predicted, ≤ 8.
    pub lead_h: u32,
    pub spread: SpreadSpec,
    /// Additional regressors (by series name) entering at the predictor
    /// quarter, such as a funds-rate level.
    pub extra_regressors: Vec<String>,
}

impl ProbitModelSpec {
    pub fn new(
        recession_series: impl Into<String>,
        lead_h: u32,
        spread: SpreadSpec,
        extra_regressors: Vec<String>,
    ) -> Result<Self> {
        if lead_h > 8 {
            return Err(Error::Validation {
                msg: format!("probit lead must be at most 8 quarters, got {lead_h}"),
            });
        }
        Ok(ProbitModelSpec {
            recession_series: recession_series.into(),
            lead_h,
            spread,
            extra_regressors,
        })
    }
}

/// Pointwise long − short, in percentage points.
pub fn compute_spread(ds: &Dataset, spec: &SpreadSpec) -> Result<Series> {
    let long = ds.get(&spec.long_series)?;
    let short = ds.get(&spec.short_series)?;
    for s in [long, short] {
        if s.unit() != Unit::PercentPerAnnum {
            return Err(Error::Validation {
                msg: format!(
                    "spread inputs must be percent_per_annum yields; '{}' is {}",
                    s.name(),
                    s.unit()
                ),
            });
        }
    }
    let observations = long
        .iter()
        .map(|(q, l)| (q, l - short.get(q).expect("aligned dataset")))
        .collect();
    Series::new(
        format!("SPREAD({}-{})", spec.long_series, spec.short_series),
        Unit::PercentGrowth,
        observations,
    )
}

/// Classify a spread value into the curve taxonomy: above the flat band is
/// normal, below its negative is inverted, inside it is flat. `flat_band`
/// must be nonnegative.
pub fn classify_curve(spread_value: f64, flat_band: f64) -> CurveClass {
    if spread_value > flat_band {
        CurveClass::Normal
    } else if spread_value < -flat_band {
        CurveClass::Inverted
    } else {
        CurveClass::Flat
    }
}

/// Assemble the regression system for a growth model: `y` holds the growth
/// values, `X = [intercept, spread at t]`, and the index records each row's
/// predictor quarter t.
pub fn build_growth_regression(
    ds: &Dataset,
    spec: &GrowthModelSpec,
) -> Result<(Vec<f64>, Matrix, Vec<QuarterId>)> {
    let spread = compute_spread(ds, &spec.spread)?;
    let gdp = ds.get(&spec.gdp_series)?;
    let growth = if spec.kind.uses_log_growth() {
        annualized_log_growth(gdp, spec.horizon_k)?
    } else {
        pct_growth(gdp, spec.horizon_k)?
    };
    let lead = spec.kind.lead() as i32;

    let mut y = Vec::new();
    let mut x_col = Vec::new();
    let mut index = Vec::new();
    for t in ds.quarters() {
        let (Some(s), Some(g)) = (spread.get(t), growth.get(t.add(lead))) else {
            continue;
        };
        y.push(g);
        x_col.push(s);
        index.push(t);
    }
    if y.len() < 3 {
        return Err(Error::InsufficientData {
            msg: format!(
                "{} with horizon {} consumes {} quarters per row; only {} usable rows \
                 from {} aligned quarters (need at least 3)",
                spec.kind,
                spec.horizon_k,
                spec.horizon_k + spec.kind.lead(),
                y.len(),
                ds.n_quarters()
            ),
        });
    }
    let x = Matrix::from_columns(&[vec![1.0; x_col.len()], x_col])?;
    Ok((y, x, index))
}

/// Fit a growth regression by OLS. Coefficients are named
/// `["intercept", "spread"]`.
pub fn fit_growth_model(ds: &Dataset, spec: &GrowthModelSpec) -> Result<RegressionFit> {
    let (y, x, index) = build_growth_regression(ds, spec)?;
    ols_fit(&y, &x, &["intercept", "spread"], &index)
}

/// Fit a recession probit: response `recession(t + lead_h)`, regressors
/// `[intercept, spread(t), extras at t]`, fitted probabilities indexed at the
/// predictor quarter t.
pub fn fit_recession_probit(ds: &Dataset, spec: &ProbitModelSpec) -> Result<ProbitFit> {
    if spec.lead_h > 8 {
        return Err(Error::Validation {
            msg: format!("probit lead must be at most 8 quarters, got {}", spec.lead_h),
        });
    }
    let spread = compute_spread(ds, &spec.spread)?;
    let recession = ds.get(&spec.recession_series)?;
    if recession.unit() != Unit::Indicator {
        return Err(Error::Validation {
            msg: format!(
                "recession series '{}' must have indicator unit, found {}",
                spec.recession_series,
                recession.unit()
            ),
        });
    }
    let extras: Vec<&Series> = spec
        .extra_regressors
        .iter()
        .map(|name| ds.get(name))
        .collect::<Result<_>>()?;

    let lead = spec.lead_h as i32;
    let mut y = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); 2 + extras.len()];
    let mut index = Vec::new();
    'rows: for t in ds.quarters() {
        let (Some(s), Some(r)) = (spread.get(t), recession.get(t.add(lead))) else {
            continue;
        };
        let mut extra_vals = Vec::with_capacity(extras.len());
        for e in &extras {
            match e.get(t) {
                Some(v) => extra_vals.push(v),
                None => continue 'rows,
            }
        }
        y.push(r);
        columns[0].push(1.0);
        columns[1].push(s);
        for (c, v) in extra_vals.into_iter().enumerate() {
            columns[2 + c].push(v);
        }
        index.push(t);
    }

    if y.len() < 3 {
        return Err(Error::InsufficientData {
            msg: format!(
                "probit with lead {} has only {} usable rows from {} aligned quarters \
                 (need at least 3)",
                spec.lead_h,
                y.len(),
                ds.n_quarters()
            ),
        });
    }
    let mut names: Vec<&str> = vec!["intercept", "spread"];
    names.extend(spec.extra_regressors.iter().map(String::as_str));
    let x = Matrix::from_columns(&columns)?;
    probit_fit(&y, &x, &names, &index)
}

/// R² gain from adding the spread to an autoregressive growth baseline, with
/// the default one-lag baseline.
pub fn marginal_contribution(ds: &Dataset, spec: &GrowthModelSpec) -> Result<f64> {
    marginal_contribution_with_lags(ds, spec, 1)
}

/// As [`marginal_contribution`], with a configurable number of own-growth
/// lags in the baseline.
///
/// Both models run on the identical row set (targets with all lags and the
/// spread available), so the restricted model is nested in the full one and
/// the returned difference is nonnegative up to roundoff.
pub fn marginal_contribution_with_lags(
    ds: &Dataset,
    spec: &GrowthModelSpec,
    lags: u32,
) -> Result<f64> {
    if lags == 0 {
        return Err(Error::Validation {
            msg: "marginal contribution baseline needs at least one growth lag".into(),
        });
    }
    let spread = compute_spread(ds, &spec.spread)?;
    let gdp = ds.get(&spec.gdp_series)?;
    let growth = if spec.kind.uses_log_growth() {
        annualized_log_growth(gdp, spec.horizon_k)?
    } else {
        pct_growth(gdp, spec.horizon_k)?
    };
    let lead = spec.kind.lead() as i32;

    let mut y = Vec::new();
    let mut lag_cols: Vec<Vec<f64>> = vec![Vec::new(); lags as usize];
    let mut spread_col = Vec::new();
    let mut index = Vec::new();
    'rows: for t in ds.quarters() {
        let (Some(s), Some(g)) = (spread.get(t), growth.get(t.add(lead))) else {
            continue;
        };
        let mut lag_vals = Vec::with_capacity(lags as usize);
        for ell in 1..=lags as i32 {
            match growth.get(t.add(lead - ell)) {
                Some(v) => lag_vals.push(v),
                None => continue 'rows,
            }
        }
        y.push(g);
        for (c, v) in lag_vals.into_iter().enumerate() {
            lag_cols[c].push(v);
        }
        spread_col.push(s);
        index.push(t);
    }
    let n = y.len();
    if n < lags as usize + 3 {
        return Err(Error::InsufficientData {
            msg: format!(
                "marginal contribution with {lags} lag(s) has only {n} usable rows"
            ),
        });
    }

    let mut restricted_cols = vec![vec![1.0; n]];
    restricted_cols.extend(lag_cols.iter().cloned());
    let mut full_cols = restricted_cols.clone();
    full_cols.push(spread_col);

    let lag_names: Vec<String> = (1..=lags).map(|l| format!("growth_lag{l}")).collect();
    let mut restricted_names: Vec<&str> = vec!["intercept"];
    restricted_names.extend(lag_names.iter().map(String::as_str));
    let mut full_names = restricted_names.clone();
    full_names.push("spread");

    let restricted = ols_fit(
        &y,
        &Matrix::from_columns(&restricted_cols)?,
        &restricted_names,
        &index,
    )?;
    let full = ols_fit(&y, &Matrix::from_columns(&full_cols)?, &full_names, &index)?;

    let contribution = full.r_squared - restricted.r_squared;
    debug_assert!(contribution >= -1e-10, "nested R² decreased: {contribution}");
    Ok(contribution)
}
