//! Monte Carlo risk curve of the Fréchet least-squares estimator.
//!
//! Point-mass covariates `X ~ Unif[0, 1]`, `T₀(x) = x²`, Gaussian-shift
//! noise with σ = 0.3. The squared L²(Q̂) risk should decay like `N^{-2/3}`.
//!
//! ```bash
//! cargo run --release -p otreg --example rate_curve -- [replicates] [workers]
//! ```

use otreg::harness::output::rate_csv;
use otreg::harness::{rate_experiment, RateConfig, RiskWeighting, ScenarioConfig, TrueMap};
use otreg::Interval;

fn main() -> otreg::Result<()> {
    let mut args = std::env::args().skip(1);
    let replicates = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let workers = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let cfg = RateConfig {
        scenario: ScenarioConfig::dirac(Interval::unit(), TrueMap::Power { gamma: 2.0 }, 0.3, 0, 2024),
        n_grid: (8..=13).map(|p| 1usize << p).collect(),
        replicates,
        weighting: RiskWeighting::Empirical,
        clamp: true,
    };
    let start = std::time::Instant::now();
    let table = rate_experiment(&cfg, workers)?;
    print!("{}", rate_csv(&table));
    if let Some(f) = table.fit {
        println!(
            "# fitted slope {:.3} ± {:.3} (squared-risk rate -2/3 ≈ -0.667), {:.1?}",
            f.slope,
            f.slope_stderr,
            start.elapsed()
        );
    }
    Ok(())
}
