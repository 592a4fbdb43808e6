//! Discrete measures: CDF, quantiles, pushforward and exact W₂².
//!
//! ```bash
//! cargo run -p otreg --example measures_w2
//! ```

use otreg::{average_measure, wasserstein2_sq, DiscreteMeasure, Interval, MonotoneMap};

fn main() -> otreg::Result<()> {
    // duplicate atoms are merged, weights renormalized
    let mu = DiscreteMeasure::new(vec![0.0, 1.0, 0.0], vec![0.25, 0.5, 0.25])?;
    let nu = DiscreteMeasure::new(vec![0.0, 1.0], vec![0.25, 0.75])?;
    println!("mu = {}", mu.to_json()?);
    println!("F_mu(0.3) = {}", mu.cdf(0.3));
    println!("F_mu^-1(0.5) = {}  (left-continuous inverse)", mu.quantile(0.5)?);

    println!("W2^2(mu, nu) = {}", wasserstein2_sq(&mu, &nu));

    let shift = MonotoneMap::affine(Interval::new(-1.0, 2.0)?, 1.0, 2.0)?;
    let shifted = mu.pushforward(&shift)?;
    println!("T # mu with T(x) = x + 2: {}", shifted.to_json()?);
    println!("W2^2(mu, T # mu) = {}", wasserstein2_sq(&mu, &shifted));

    let q = average_measure(&[mu, nu])?;
    println!("average measure = {}", q.to_json()?);
    Ok(())
}
