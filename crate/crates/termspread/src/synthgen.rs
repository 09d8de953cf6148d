//! Deterministic synthetic scenario generator.
//!
//! Produces long-yield, short-yield, GDP-level, and recession-indicator
//! series from a fully documented generating process, so every downstream
//! estimate has a known ground truth. The random source is specified
//! bit-exactly (xorshift64* seeded through splitmix64, Box–Muller normals)
//! so other implementations can reproduce identical streams; nothing here
//! depends on an external RNG crate.
//!
//! Generating process, in draw order:
//!
//! 1. Spread: an AR(1) in percentage points, `s_i = mean + ρ(s_{i-1} − mean)
//!    + shock·ε_i`, initialized from its stationary distribution
//!    (`s_0 = mean + ε_0·shock/√(1−ρ²)`). `lead` extra quarters are generated
//!    before the output window so early recession labels have well-defined
//!    drivers. One normal deviate per quarter, always consumed.
//! 2. Yields: short ≡ 10.0 % p.a.; long = short + s. The spread used
//!    everywhere below is recomputed as long − short, which makes the
//!    generated spread and any downstream long-minus-short computation agree
//!    bit-exactly.
//! 3. GDP: four-quarter growth `g(t) = a + b·spread(t−1) + noise·ε`, one
//!    normal per driven quarter, always consumed; levels start at 100 for
//!    five quarters and integrate `L(t+4) = L(t)·(1 + g(t)/100)`.
//! 4. Recession: `rec(t) = 1` iff `spread(t − lead) < trigger`, then each
//!    label flips independently with probability `flip_prob`. One uniform per
//!    quarter, always consumed.
//!
//! "Always consumed" keeps the stream layout independent of parameter
//! values, so e.g. `noise_sigma = 0` changes values but not the alignment of
//! later draws.

use crate::error::{Error, Result};
use crate::series::{align, Dataset, QuarterId, Series, Unit};

/// AR(1) parameters for the spread path.
#[derive(Debug, Clone, Copy)]
pub struct SpreadProcess {
    /// Unconditional mean, percentage points.
    pub mean: f64,
    /// AR(1) coefficient, in [0, 1).
    pub persistence: f64,
    /// Innovation standard deviation, percentage points; ≥ 0.
    pub shock_sigma: f64,
}

/// Rule mapping the spread path to recession labels.
#[derive(Debug, Clone, Copy)]
pub struct RecessionRule {
    /// A quarter is labeled recession when the spread `lead` quarters earlier
    /// is below this value.
    pub trigger_spread: f64,
    /// Quarters between the driving spread and the label; ≤ 8.
    pub lead: u32,
    /// Independent label-flip probability, in [0, 0.5).
    pub flip_prob: f64,
}

/// Complete description of one synthetic scenario.
#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub seed: u64,
    /// Output length in quarters; ≥ 16.
    pub n_quarters: usize,
    /// First output quarter.
    pub start: QuarterId,
    /// Spread-to-growth slope, percent growth per percentage point.
    pub true_b: f64,
    /// Growth intercept, percent.
    pub true_a: f64,
    /// Growth noise standard deviation, percent; ≥ 0.
    pub noise_sigma: f64,
    pub spread_process: SpreadProcess,
    pub recession_rule: RecessionRule,
}

impl Default for ScenarioSpec {
    /// The scenario behind the repository's checked-in sample data: noiseless
    /// growth (so the slope is exactly recoverable) over a persistent spread,
    /// with the recession trigger at the spread mean so both label classes
    /// are plentiful.
    fn default() -> Self {
        ScenarioSpec {
            seed: 7,
            n_quarters: 200,
            start: QuarterId::new(1990, 1).expect("valid quarter"),
            true_b: 1.0445,
            true_a: 2.0,
            noise_sigma: 0.0,
            spread_process: SpreadProcess {
                mean: 0.5,
                persistence: 0.8,
                shock_sigma: 0.75,
            },
            recession_rule: RecessionRule {
                trigger_spread: 0.5,
                lead: 4,
                flip_prob: 0.05,
            },
        }
    }
}

impl ScenarioSpec {
    fn validate(&self) -> Result<()> {
        if self.n_quarters < 16 {
            return Err(Error::Validation {
                msg: format!("n_quarters must be at least 16, got {}", self.n_quarters),
            });
        }
        if !(0.0..1.0).contains(&self.spread_process.persistence) {
            return Err(Error::Validation {
                msg: format!(
                    "spread persistence must be in [0, 1), got {}",
                    self.spread_process.persistence
                ),
            });
        }
        if !(self.spread_process.shock_sigma >= 0.0) {
            return Err(Error::Validation {
                msg: format!(
                    "shock_sigma must be nonnegative, got {}",
                    self.spread_process.shock_sigma
                ),
            });
        }
        if !(self.noise_sigma >= 0.0) {
            return Err(Error::Validation {
                msg: format!("noise_sigma must be nonnegative, got {}", self.noise_sigma),
            });
        }
        if !(0.0..0.5).contains(&self.recession_rule.flip_prob) {
            return Err(Error::Validation {
                msg: format!(
                    "flip_prob must be in [0, 0.5), got {}",
                    self.recession_rule.flip_prob
                ),
            });
        }
        if self.recession_rule.lead > 8 {
            return Err(Error::Validation {
                msg: format!("recession lead must be at most 8, got {}", self.recession_rule.lead),
            });
        }
        for (name, v) in [
            ("true_a", self.true_a),
            ("true_b", self.true_b),
            ("spread mean", self.spread_process.mean),
            ("trigger_spread", self.recession_rule.trigger_spread),
        ] {
            if !v.is_finite() {
                return Err(Error::Validation {
                    msg: format!("{name} must be finite, got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// xorshift64* pseudo-random generator, seeded through one splitmix64 step so
/// that small consecutive seeds give unrelated streams.
///
/// Update: `x ^= x >> 12; x ^= x << 25; x ^= x >> 27`; output is the new
/// state times the 64-bit constant `0x2545F4914F6CDD1D`.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let s = splitmix64(seed);
        XorShift64Star {
            // xorshift state must be nonzero; remap the one bad value.
            state: if s == 0 { 0x9E3779B97F4A7C15 } else { s },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * 2.0_f64.powi(-53)
    }

    /// Standard normal deviate via the Box–Muller cosine branch, consuming
    /// exactly two uniforms; the sine branch is discarded so that consumption
    /// stays fixed at two draws per deviate. The first uniform is shifted
    /// into (0, 1] so the logarithm is always finite.
    pub fn normal(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * 2.0_f64.powi(-53);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// One mixing step of splitmix64; decorrelates user-chosen seeds.
fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Generate the four scenario series as an aligned dataset: `long_yield`,
/// `short_yield` (percent per annum), `gdp` (level), `recession` (indicator),
/// all spanning `n_quarters` from `start`. Deterministic in the spec.
pub fn generate(spec: &ScenarioSpec) -> Result<Dataset> {
    spec.validate()?;
    let n = spec.n_quarters;
    let lead = spec.recession_rule.lead as usize;
    let total = lead + n;
    let p = spec.spread_process;

    let mut rng = XorShift64Star::new(spec.seed);

    // Spread path, including `lead` pre-window quarters.
    let sigma_stationary = p.shock_sigma / (1.0 - p.persistence * p.persistence).sqrt();
    let mut raw = Vec::with_capacity(total);
    raw.push(p.mean + rng.normal() * sigma_stationary);
    for i in 1..total {
        raw.push(p.mean + p.persistence * (raw[i - 1] - p.mean) + rng.normal() * p.shock_sigma);
    }

    const SHORT_LEVEL: f64 = 10.0;
    let long: Vec<f64> = raw.iter().map(|r| SHORT_LEVEL + r).collect();
    // Canonical spread: exactly what long − short reproduces downstream.
    let spread: Vec<f64> = long.iter().map(|l| l - SHORT_LEVEL).collect();

    // Four-quarter growth, driven one quarter ahead of the spread.
    let mut growth = vec![f64::NAN; n];
    for (j, g) in growth.iter_mut().enumerate().take(n - 4).skip(1) {
        *g = spec.true_a + spec.true_b * spread[lead + j - 1] + spec.noise_sigma * rng.normal();
    }

    // GDP levels integrated from the growth path.
    let mut level = vec![0.0; n];
    for l in level.iter_mut().take(5) {
        *l = 100.0;
    }
    for j in 1..=(n - 5) {
        let factor = 1.0 + growth[j] / 100.0;
        if !(factor > 0.0) {
            return Err(Error::Validation {
                msg: format!(
                    "scenario produces a nonpositive GDP level: growth {} percent at \
                     quarter offset {j}",
                    growth[j]
                ),
            });
        }
        level[j + 4] = level[j] * factor;
    }

    // Recession labels; the uniform is drawn for every quarter regardless of
    // the flip outcome.
    let mut recession = Vec::with_capacity(n);
    for s in spread.iter().take(n) {
        let mut label = if *s < spec.recession_rule.trigger_spread { 1.0 } else { 0.0 };
        if rng.uniform() < spec.recession_rule.flip_prob {
            label = 1.0 - label;
        }
        recession.push(label);
    }

    let quarter = |j: usize| spec.start.add(j as i32);
    let window = |values: &[f64]| -> Vec<(QuarterId, f64)> {
        values.iter().enumerate().map(|(j, &v)| (quarter(j), v)).collect()
    };

    let long_series = Series::new(
        "long_yield",
        Unit::PercentPerAnnum,
        long[lead..].iter().enumerate().map(|(j, &v)| (quarter(j), v)).collect(),
    )?;
    let short_series = Series::new(
        "short_yield",
        Unit::PercentPerAnnum,
        (0..n).map(|j| (quarter(j), SHORT_LEVEL)).collect(),
    )?;
    let gdp_series = Series::new("gdp", Unit::Level, window(&level))?;
    let recession_series = Series::new("recession", Unit::Indicator, window(&recession))?;

    align(vec![long_series, short_series, gdp_series, recession_series])
}
