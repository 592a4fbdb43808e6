//! Fréchet least-squares fit on a simulated general-measure dataset.
//!
//! Each covariate is a 4-atom measure on [0, 1]; responses are
//! `T_ε # (T₀ # μ)` with a piecewise-linear `T₀` and random affine noise.
//! The fit minimises the transport objective, which is checked against the
//! truth and against the pooled quadratic form.
//!
//! ```bash
//! cargo run -p otreg --example frechet_fit
//! ```

use otreg::harness::{simulate, Design, NoiseModel, ScenarioConfig, TrueMap, WeightScheme};
use otreg::{fit, objective, pool, risk, Interval, WeightingMeasure};

fn main() -> otreg::Result<()> {
    let cfg = ScenarioConfig {
        domain: Interval::unit(),
        design: Design::General {
            atoms: 4,
            weights: WeightScheme::Dirichlet,
        },
        true_map: TrueMap::PiecewiseLinear {
            knots: vec![[0.0, 0.0], [0.5, 0.2], [1.0, 1.0]],
        },
        noise: NoiseModel::Affine { a: 0.3, sigma_b: 0.2 },
        n: 500,
        seed: 7,
    };
    let sim = simulate(&cfg)?;
    let data = &sim.dataset;

    let estimate = fit(data)?;
    let pooled = pool(data)?;
    println!("pairs: {}, pooled design points: {}", data.len(), pooled.points.len());
    println!("objective at estimate: {:.6}", objective(&estimate, data)?);
    println!("objective at truth:    {:.6}", objective(&sim.true_map, data)?);
    println!(
        "pooled form / 2N:      {:.6}",
        pooled.quadratic_form(&estimate)? / (2.0 * data.len() as f64)
    );

    let q_hat = WeightingMeasure::Discrete(data.empirical_design());
    let q_unif = WeightingMeasure::Uniform(data.domain());
    println!("||T_hat - T0||^2 under Q_hat:     {:.6}", risk(&estimate, &sim.true_map, &q_hat)?);
    println!("||T_hat - T0||^2 under Unif[0,1]: {:.6}", risk(&estimate, &sim.true_map, &q_unif)?);

    for x in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!("x = {x}: T0 = {:.3}, T_hat = {:.3}", sim.true_map.eval(x)?, estimate.eval(x)?);
    }
    Ok(())
}
