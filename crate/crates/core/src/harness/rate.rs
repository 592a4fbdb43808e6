//! Monte Carlo risk curves and log-log slope fitting.
//!
//! Replicate `r` at sample size `N` is seeded by [`replicate_seed`], so a
//! table depends only on its configuration and never on how replicates are
//! scheduled across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scenario::{simulate, ScenarioConfig};
use crate::error::{ensure, Error, Result};
use crate::maps::WeightingMeasure;
use crate::regression::{fit_with, risk};

/// Measure under which the squared L² risk is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskWeighting {
    /// `Q̂ = N⁻¹ Σ μ_i` of each simulated dataset.
    #[default]
    Empirical,
    /// Uniform density on the domain.
    Uniform,
}

fn default_clamp() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateConfig {
    /// `n` is overridden by each entry of `n_grid`; `seed` is the master seed.
    #[serde(flatten)]
    pub scenario: ScenarioConfig,
    pub n_grid: Vec<usize>,
    pub replicates: usize,
    #[serde(default)]
    pub weighting: RiskWeighting,
    #[serde(default = "default_clamp")]
    pub clamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub n: usize,
    pub replicates: usize,
    pub mean_sq_risk: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateTable {
    pub rows: Vec<RateRow>,
    /// `None` when the table is degenerate.
    pub fit: Option<SlopeFit>,
    /// Set when some mean risk is zero, so no log-log fit exists.
    pub degenerate: bool,
}

const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `replicate` at sample size `n`.
pub fn replicate_seed(master: u64, n: u64, replicate: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ n) ^ replicate)
}

/// Ordinary least squares of `ln risk` on `ln N`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    ensure!(points.len() >= 3, Argument, "need at least 3 points, got {}", points.len());
    for &(n, r) in points {
        ensure!(
            n > 0.0 && r > 0.0 && n.is_finite() && r.is_finite(),
            Argument,
            "log-log fit needs positive finite values, got ({n}, {r})"
        );
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    ensure!(sxx > 0.0, Argument, "all sample sizes are equal");
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        intercept,
        slope_stderr: (ssr / (m - 2.0) / sxx).sqrt(),
    })
}

impl RateConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(self.replicates >= 2, Argument, "need at least 2 replicates");
        ensure!(self.n_grid.len() >= 3, Argument, "need at least 3 sample sizes for a slope");
        ensure!(self.n_grid[0] >= 1, Argument, "sample sizes must be positive");
        ensure!(
            self.n_grid.windows(2).all(|w| w[0] < w[1]),
            Argument,
            "sample sizes must be strictly increasing"
        );
        self.scenario_for(self.n_grid[0], 0).validate()
    }

    fn scenario_for(&self, n: usize, replicate: usize) -> ScenarioConfig {
        ScenarioConfig {
            n,
            seed: replicate_seed(self.scenario.seed, n as u64, replicate as u64),
            ..self.scenario.clone()
        }
    }
}

/// Squared L² risk of one simulate → fit replicate.
pub fn replicate_risk(cfg: &RateConfig, n: usize, replicate: usize) -> Result<f64> {
    let scenario = cfg.scenario_for(n, replicate);
    let sim = simulate(&scenario)?;
    let estimate = fit_with(&sim.dataset, cfg.clamp)?;
    match cfg.weighting {
        RiskWeighting::Empirical => {
            let q = WeightingMeasure::Discrete(sim.dataset.empirical_design());
            risk(&estimate, &sim.true_map, &q)
        }
        RiskWeighting::Uniform => {
            let q = WeightingMeasure::Uniform(scenario.domain);
            let truth = scenario.true_map.to_map(scenario.domain, estimate.knot_locations())?;
            risk(&estimate, &truth, &q)
        }
    }
}

/// Runs every replicate on a pool of `workers` threads (`0` = rayon default).
pub fn rate_experiment(cfg: &RateConfig, workers: usize) -> Result<RateTable> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Argument(format!("thread pool: {e}")))?;

    let mut rows = Vec::with_capacity(cfg.n_grid.len());
    for &n in &cfg.n_grid {
        let risks: Vec<f64> = pool.install(|| {
            (0..cfg.replicates)
                .into_par_iter()
                .map(|r| replicate_risk(cfg, n, r))
                .collect::<Result<Vec<_>>>()
        })?;
        rows.push(summarize(n, &risks));
    }

    let degenerate = rows.iter().any(|r| r.mean_sq_risk <= 0.0);
    let fit = if degenerate {
        None
    } else {
        let pts: Vec<_> = rows.iter().map(|r| (r.n as f64, r.mean_sq_risk)).collect();
        Some(loglog_slope(&pts)?)
    };
    Ok(RateTable { rows, fit, degenerate })
}

/// Mean and standard error, summed in replicate order.
fn summarize(n: usize, risks: &[f64]) -> RateRow {
    let r = risks.len() as f64;
    let mean = risks.iter().sum::<f64>() / r;
    let var = risks.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1.0);
    RateRow {
        n,
        replicates: risks.len(),
        mean_sq_risk: mean,
        stderr: (var / r).sqrt(),
    }
}
