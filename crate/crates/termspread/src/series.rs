//! Calendar-quarter time axis, observation series, alignment, and growth
//! transforms.
//!
//! Everything downstream works on [`Series`] values indexed by [`QuarterId`].
//! Growth transforms index their output at the *start* quarter of the growth
//! window (predictor-aligned); the model layer performs any t -> t+k pairing
//! explicitly so there is no hidden double shifting.

use std::fmt;

use crate::error::{Error, Result};

/// A calendar quarter: year plus quarter number in 1..=4.
///
/// Ordered chronologically; ordering is derived from the `(year, quarter)`
/// field order, which coincides with calendar order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarterId {
    year: i32,
    quarter: u8,
}

impl QuarterId {
    /// Build a quarter id, rejecting quarter numbers outside 1..=4.
    pub fn new(year: i32, quarter: u8) -> Result<Self> {
        if !(1..=4).contains(&quarter) {
            return Err(Error::Validation {
                msg: format!("quarter must be 1..=4, got {quarter}"),
            });
        }
        Ok(QuarterId { year, quarter })
    }

    pub fn year(self) -> i32 {
        self.year
    }

    pub fn quarter(self) -> u8 {
        self.quarter
    }

    /// Position on the integer quarter axis; used for all arithmetic.
    fn index(self) -> i64 {
        self.year as i64 * 4 + (self.quarter as i64 - 1)
    }

    fn from_index(i: i64) -> Self {
        QuarterId {
            year: i.div_euclid(4) as i32,
            quarter: (i.rem_euclid(4) + 1) as u8,
        }
    }

    /// The quarter exactly `n` quarters after `self`; negative `n` moves
    /// backward. Total: never fails for in-range years.
    pub fn add(self, n: i32) -> Self {
        Self::from_index(self.index() + n as i64)
    }

    /// Signed number of quarters from `other` to `self`.
    pub fn diff(self, other: QuarterId) -> i32 {
        (self.index() - other.index()) as i32
    }
}

impl fmt::Display for QuarterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Q{}", self.year, self.quarter)
    }
}

/// Measurement unit of a series; constrains validation and which transforms
/// make sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// Interest rate in percent per annum.
    PercentPerAnnum,
    /// Raw level (e.g. a GDP index).
    Level,
    /// Growth rate or spread in percent / percentage points.
    PercentGrowth,
    /// 0/1 indicator.
    Indicator,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::PercentPerAnnum => "percent_per_annum",
            Unit::Level => "level",
            Unit::PercentGrowth => "percent_growth",
            Unit::Indicator => "indicator",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "percent_per_annum" => Ok(Unit::PercentPerAnnum),
            "level" => Ok(Unit::Level),
            "percent_growth" => Ok(Unit::PercentGrowth),
            "indicator" => Ok(Unit::Indicator),
            other => Err(Error::Validation {
                msg: format!(
                    "unknown unit '{other}' (expected percent_per_annum, level, \
                     percent_growth, or indicator)"
                ),
            }),
        }
    }
}

/// A named, unit-tagged series of quarterly observations.
///
/// Observations are stored strictly increasing in quarter with no duplicates.
/// Gaps are permitted in storage (see [`Series::is_contiguous`]); alignment
/// into a [`Dataset`] is what establishes gap-free ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    name: String,
    unit: Unit,
    observations: Vec<(QuarterId, f64)>,
}

impl Series {
    /// Build a series from observations already sorted strictly increasing by
    /// quarter. Rejects unsorted/duplicate quarters, non-finite values, and
    /// indicator values outside {0, 1}.
    pub fn new(
        name: impl Into<String>,
        unit: Unit,
        observations: Vec<(QuarterId, f64)>,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Validation {
                msg: "series name must be nonempty".into(),
            });
        }
        for pair in observations.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::Validation {
                    msg: format!(
                        "series '{name}': observations must be strictly increasing, \
                         got {} before {}",
                        pair[0].0, pair[1].0
                    ),
                });
            }
        }
        for &(q, v) in &observations {
            if !v.is_finite() {
                return Err(Error::Validation {
                    msg: format!("series '{name}': non-finite value at {q}"),
                });
            }
            if unit == Unit::Indicator && v != 0.0 && v != 1.0 {
                return Err(Error::Validation {
                    msg: format!("series '{name}': indicator value {v} at {q} is not 0 or 1"),
                });
            }
        }
        Ok(Series { name, unit, observations })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn first_quarter(&self) -> Option<QuarterId> {
        self.observations.first().map(|&(q, _)| q)
    }

    pub fn last_quarter(&self) -> Option<QuarterId> {
        self.observations.last().map(|&(q, _)| q)
    }

    /// Value at `q`, if observed.
    pub fn get(&self, q: QuarterId) -> Option<f64> {
        self.observations
            .binary_search_by(|&(oq, _)| oq.cmp(&q))
            .ok()
            .map(|i| self.observations[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (QuarterId, f64)> + '_ {
        self.observations.iter().copied()
    }

    /// True when the stored quarters form one unbroken run.
    pub fn is_contiguous(&self) -> bool {
        match (self.first_quarter(), self.last_quarter()) {
            (Some(first), Some(last)) => {
                last.diff(first) as usize + 1 == self.observations.len()
            }
            _ => true,
        }
    }

    /// Re-index every observation `n` quarters later (earlier for negative
    /// `n`): the value previously at quarter `t` appears at `t + n`. A pure
    /// re-labelling, so `shift(n)` then `shift(-n)` restores the original.
    pub fn shift(&self, n: i32) -> Series {
        Series {
            name: self.name.clone(),
            unit: self.unit,
            observations: self
                .observations
                .iter()
                .map(|&(q, v)| (q.add(n), v))
                .collect(),
        }
    }

    /// Restrict to observations with quarters in `[first, last]`.
    pub fn window(&self, first: QuarterId, last: QuarterId) -> Series {
        Series {
            name: self.name.clone(),
            unit: self.unit,
            observations: self
                .observations
                .iter()
                .copied()
                .filter(|&(q, _)| q >= first && q <= last)
                .collect(),
        }
    }
}

fn check_positive_level(series: &Series, q: QuarterId, v: f64) -> Result<f64> {
    if v <= 0.0 {
        return Err(Error::Domain {
            msg: format!(
                "series '{}': level must be strictly positive for growth transforms, \
                 got {v} at {q}",
                series.name()
            ),
        });
    }
    Ok(v)
}

/// Simple k-quarter percent growth of a level series.
///
/// The value at quarter `t` is `100 * (level(t+k) - level(t)) / level(t)`,
/// i.e. the growth realized over `[t, t+k]`, indexed at the start quarter.
/// Only quarters where both endpoints are observed produce output, so the
/// result is `k` observations shorter on a contiguous input.
pub fn pct_growth(level: &Series, k: u32) -> Result<Series> {
    growth_transform(level, k, |l0, l1| 100.0 * (l1 - l0) / l0, "pct_growth")
}

/// Annualized k-quarter log growth of a level series.
///
/// The value at quarter `t` is `(400 / k) * ln(level(t+k) / level(t))`,
/// expressing k-quarter log growth at an annual percent rate, indexed at the
/// start quarter like [`pct_growth`].
pub fn annualized_log_growth(level: &Series, k: u32) -> Result<Series> {
    let scale = 400.0 / k as f64;
    growth_transform(level, k, move |l0, l1| scale * (l1 / l0).ln(), "annualized_log_growth")
}

fn growth_transform(
    level: &Series,
    k: u32,
    f: impl Fn(f64, f64) -> f64,
    label: &str,
) -> Result<Series> {
    if k == 0 {
        return Err(Error::Domain {
            msg: format!("{label}: horizon k must be at least 1"),
        });
    }
    if level.unit() != Unit::Level {
        return Err(Error::Domain {
            msg: format!(
                "{label}: series '{}' has unit {}, expected level",
                level.name(),
                level.unit()
            ),
        });
    }
    let mut out = Vec::new();
    for (q, v0) in level.iter() {
        let q_end = q.add(k as i32);
        if let Some(v1) = level.get(q_end) {
            let v0 = check_positive_level(level, q, v0)?;
            let v1 = check_positive_level(level, q_end, v1)?;
            out.push((q, f(v0, v1)));
        }
    }
    Series::new(
        format!("{label}({},{k})", level.name()),
        Unit::PercentGrowth,
        out,
    )
}

/// An aligned collection of named series sharing one contiguous quarter range.
///
/// Inner-join semantics: every member series has an observation at every
/// quarter of `[first, last]`. Construct through [`align`].
#[derive(Debug, Clone)]
pub struct Dataset {
    series: Vec<Series>,
    first: QuarterId,
    last: QuarterId,
}

impl Dataset {
    pub fn first_quarter(&self) -> QuarterId {
        self.first
    }

    pub fn last_quarter(&self) -> QuarterId {
        self.last
    }

    /// Number of quarters in the common range.
    pub fn n_quarters(&self) -> usize {
        self.last.diff(self.first) as usize + 1
    }

    pub fn series(&self) -> impl Iterator<Item = &Series> {
        self.series.iter()
    }

    pub fn get(&self, name: &str) -> Result<&Series> {
        self.series
            .iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::MissingSeries { name: name.to_string() })
    }

    /// Quarters of the common range in ascending order.
    pub fn quarters(&self) -> impl Iterator<Item = QuarterId> + '_ {
        let n = self.n_quarters();
        (0..n).map(move |i| self.first.add(i as i32))
    }
}

/// Align series onto the longest quarter interval on which all of them are
/// jointly contiguous; observations outside that interval are dropped.
///
/// Interior quarters missing from any series split the candidate interval —
/// nothing is interpolated — and the longest surviving run wins (earliest on
/// ties). Fails if no quarter is common to all series or if names collide.
pub fn align(series_list: Vec<Series>) -> Result<Dataset> {
    if series_list.is_empty() {
        return Err(Error::Alignment {
            msg: "no series given".into(),
        });
    }
    for (i, a) in series_list.iter().enumerate() {
        for b in &series_list[i + 1..] {
            if a.name() == b.name() {
                return Err(Error::Validation {
                    msg: format!("duplicate series name '{}'", a.name()),
                });
            }
        }
    }

    // Quarters present in every series, as integer indices.
    let mut common: Vec<i64> = series_list[0].iter().map(|(q, _)| q.index()).collect();
    for s in &series_list[1..] {
        common.retain(|&qi| s.get(QuarterId::from_index(qi)).is_some());
    }
    if common.is_empty() {
        let spans: Vec<String> = series_list
            .iter()
            .map(|s| match (s.first_quarter(), s.last_quarter()) {
                (Some(f), Some(l)) => format!("'{}' ({f}..{l})", s.name()),
                _ => format!("'{}' (empty)", s.name()),
            })
            .collect();
        return Err(Error::Alignment {
            msg: format!("no quarter is common to all series: {}", spans.join(", ")),
        });
    }

    // Longest contiguous run of common quarters, earliest on ties.
    let (mut best_start, mut best_len) = (0usize, 1usize);
    let (mut run_start, mut run_len) = (0usize, 1usize);
    for i in 1..common.len() {
        if common[i] == common[i - 1] + 1 {
            run_len += 1;
        } else {
            run_start = i;
            run_len = 1;
        }
        if run_len > best_len {
            best_start = run_start;
            best_len = run_len;
        }
    }
    let first = QuarterId::from_index(common[best_start]);
    let last = QuarterId::from_index(common[best_start + best_len - 1]);

    let series = series_list
        .into_iter()
        .map(|s| s.window(first, last))
        .collect();
    Ok(Dataset { series, first, last })
}
