//! Brute-force oracles and deterministic fixtures shared by the integration
//! suites. Everything here favours obviousness over speed: the estimators are
//! cross-checked against implementations simple enough to audit at a glance,
//! written without reusing the library's linear algebra or optimizers.
#![allow(dead_code)]

use std::f64::consts::PI;

use termspread::numerics::std_normal_ln_cdf;
use termspread::synthgen::{RecessionRule, ScenarioSpec, SpreadProcess};

/// Deterministic generator for test instances, driven by splitmix64 — a
/// different stream family from the library's scenario generator, so test
/// randomness never mirrors the code under test.
pub struct TestRng {
    state: u64,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform deviate in [0, 1) with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Approximately standard-normal deviate (Irwin–Hall sum of 12 uniforms).
    /// Bounded in [−6, 6]; plenty for generating regression fixtures.
    pub fn normal(&mut self) -> f64 {
        let mut s = 0.0;
        for _ in 0..12 {
            s += self.uniform();
        }
        s - 6.0
    }

    /// Integer in [lo, hi] inclusive.
    pub fn int_range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.uniform() * (hi - lo + 1) as f64) as usize
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least-squares coefficients by forming the normal equations XᵀX·b = Xᵀy
/// explicitly and solving with Gauss–Jordan elimination under partial
/// pivoting. No factorizations, no shared code with the library solver.
pub fn ols_normal_equations_oracle(y: &[f64], columns: &[Vec<f64>]) -> Vec<f64> {
    let k = columns.len();
    assert!(k >= 1, "oracle needs at least one regressor");
    for c in columns {
        assert_eq!(c.len(), y.len(), "oracle: ragged design matrix");
    }
    let mut aug = vec![vec![0.0; k + 1]; k];
    for r in 0..k {
        for c in 0..k {
            aug[r][c] = dot(&columns[r], &columns[c]);
        }
        aug[r][k] = dot(&columns[r], y);
    }
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs()))
            .expect("nonempty pivot search");
        assert!(
            aug[pivot_row][col].abs() > 1e-10,
            "oracle: near-singular normal equations (pivot {})",
            aug[pivot_row][col]
        );
        aug.swap(col, pivot_row);
        let d = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= d;
        }
        for r in 0..k {
            if r == col {
                continue;
            }
            let f = aug[r][col];
            if f != 0.0 {
                for c2 in 0..=k {
                    let delta = f * aug[col][c2];
                    aug[r][c2] -= delta;
                }
            }
        }
    }
    (0..k).map(|r| aug[r][k]).collect()
}

/// Probit log-likelihood for the two-parameter model P(y=1) = Φ(b0 + b1·z).
pub fn probit_ll_2(y: &[f64], z: &[f64], b0: f64, b1: f64) -> f64 {
    y.iter()
        .zip(z)
        .map(|(&yi, &zi)| {
            let index = b0 + b1 * zi;
            if yi > 0.5 {
                std_normal_ln_cdf(index)
            } else {
                std_normal_ln_cdf(-index)
            }
        })
        .sum()
}

fn grid_scan(
    y: &[f64],
    z: &[f64],
    center0: f64,
    center1: f64,
    half_width: f64,
    step: f64,
) -> (f64, f64, f64) {
    let m = (2.0 * half_width / step).round() as i64;
    let mut best = (f64::NAN, f64::NAN, f64::NEG_INFINITY);
    for i in 0..=m {
        let b0 = center0 - half_width + i as f64 * step;
        for j in 0..=m {
            let b1 = center1 - half_width + j as f64 * step;
            let ll = probit_ll_2(y, z, b0, b1);
            if ll > best.2 {
                best = (b0, b1, ll);
            }
        }
    }
    best
}

/// Maximizes the two-parameter probit likelihood by exhaustive grid search:
/// coarse 0.1 grid over [−3, 3]², then 0.01 and 0.001 refinements around the
/// incumbent. Returns (b0, b1, log-likelihood). Resolves the optimum to about
/// half a final grid step per coordinate — no derivatives involved.
pub fn probit_grid_oracle(y: &[f64], z: &[f64]) -> (f64, f64, f64) {
    let coarse = grid_scan(y, z, 0.0, 0.0, 3.0, 0.1);
    let mid = grid_scan(y, z, coarse.0, coarse.1, 0.15, 0.01);
    grid_scan(y, z, mid.0, mid.1, 0.015, 0.001)
}

/// Central finite-difference partial derivative of `f` at `at` in
/// coordinate `j`.
pub fn central_difference(f: &dyn Fn(&[f64]) -> f64, at: &[f64], j: usize, h: f64) -> f64 {
    let mut up = at.to_vec();
    up[j] += h;
    let mut down = at.to_vec();
    down[j] -= h;
    (f(&up) - f(&down)) / (2.0 * h)
}

/// Standard normal density, written out directly.
pub fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Lower-tail normal mass below `lo` (requires lo ≤ −6) via the asymptotic
/// Mills-ratio expansion; the truncation error at |lo| ≥ 6 is below 1e−13
/// relative, on a mass that is itself under 1e−9.
fn lower_tail_mass(lo: f64) -> f64 {
    assert!(lo <= -6.0, "tail expansion only valid deep in the tail");
    let a = -lo;
    let a2 = a * a;
    let series = 1.0 - 1.0 / a2 + 3.0 / (a2 * a2) - 15.0 / (a2 * a2 * a2)
        + 105.0 / (a2 * a2 * a2 * a2);
    normal_density(a) / a * series
}

/// Cumulative standard-normal CDF at `points` evenly spaced grid values over
/// [lo, hi], by composite Simpson integration of the density with `panels`
/// (even) subintervals per grid step, anchored at the asymptotic lower-tail
/// mass. Quadrature error is far below 1e−10 at the resolutions used here.
pub fn simpson_cdf_grid(lo: f64, hi: f64, points: usize, panels: usize) -> Vec<(f64, f64)> {
    assert!(points >= 2, "need at least two grid points");
    assert!(panels >= 2 && panels % 2 == 0, "Simpson needs an even panel count");
    let h = (hi - lo) / (points - 1) as f64;
    let mut out = Vec::with_capacity(points);
    let mut mass = lower_tail_mass(lo);
    out.push((lo, mass));
    for i in 1..points {
        let a = lo + (i - 1) as f64 * h;
        let w = h / panels as f64;
        let mut s = normal_density(a) + normal_density(a + h);
        for p in 1..panels {
            let weight = if p % 2 == 1 { 4.0 } else { 2.0 };
            s += weight * normal_density(a + p as f64 * w);
        }
        mass += s * w / 3.0;
        out.push((lo + i as f64 * h, mass));
    }
    out
}

/// Scenario constructor covering every knob the suites vary, in one line per
/// test site.
#[allow(clippy::too_many_arguments)]
pub fn scenario(
    seed: u64,
    n_quarters: usize,
    true_a: f64,
    true_b: f64,
    noise_sigma: f64,
    mean: f64,
    persistence: f64,
    shock_sigma: f64,
    trigger: f64,
    lead: u32,
    flip_prob: f64,
) -> ScenarioSpec {
    ScenarioSpec {
        seed,
        n_quarters,
        true_a,
        true_b,
        noise_sigma,
        spread_process: SpreadProcess { mean, persistence, shock_sigma },
        recession_rule: RecessionRule { trigger_spread: trigger, lead, flip_prob },
        ..ScenarioSpec::default()
    }
}

/// Median of a sample; averages the two central order statistics on even
/// lengths.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty sample");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
