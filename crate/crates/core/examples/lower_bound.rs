//! Pieces of the minimax lower bound: Gaussian KL, a packing family and the
//! Fano / Yang–Barron bound under the `ε = δ = N^{-1/3}` scaling.
//!
//! ```bash
//! cargo run --release -p otreg --example lower_bound
//! ```

use otreg::theory::{fano_bound, kl_conditional, packing_family, FanoInputs, PackingConfig};
use otreg::{l2_distance_sq, Interval, MonotoneMap, WeightingMeasure};

fn main() -> otreg::Result<()> {
    let unit = Interval::unit();
    let p = WeightingMeasure::Uniform(unit);
    let id = MonotoneMap::identity(unit);
    let double = MonotoneMap::affine(unit, 2.0, 0.0)?;
    println!(
        "KL(P_id || P_2x), sigma = 1: {} (half the squared L2 distance: {})",
        kl_conditional(&id, &double, 1.0, &p)?,
        0.5 * l2_distance_sq(&id, &double, &p)?
    );

    let family = packing_family(&PackingConfig::new(32, 1.0 / 32.0, 1))?;
    println!(
        "packing k = 32, h = 1/32: {} members, ln M = {:.3}, min Hamming {}, min distance {:.5}",
        family.len(),
        family.log_cardinality,
        family.min_hamming,
        family.min_pairwise_dist
    );

    println!("{:>9} {:>12} {:>14}", "N", "bound", "bound*N^(1/3)");
    for e in 2..=6 {
        let n = 10f64.powi(e);
        let b = fano_bound(&FanoInputs::at_sample_size(n, 1.0, 30.0))?;
        println!("{:>9} {:>12.6} {:>14.6}", n, b, b * n.cbrt());
    }
    Ok(())
}
