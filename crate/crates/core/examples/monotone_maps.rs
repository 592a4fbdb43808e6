//! Monotone maps: evaluation, exact L² distances and clamping.
//!
//! ```bash
//! cargo run -p otreg --example monotone_maps
//! ```

use otreg::{l2_distance_sq, DiscreteMeasure, Interval, MonotoneMap, WeightingMeasure};

fn main() -> otreg::Result<()> {
    let unit = Interval::unit();
    let id = MonotoneMap::identity(unit);
    let half = MonotoneMap::constant(unit, 0.5);
    let step = MonotoneMap::step(unit, vec![(0.0, 0.0), (0.5, 1.0)])?;

    for x in [0.25, 0.49, 0.5, 0.75] {
        println!("x = {x:<5} identity {:<5} step {}", id.eval(x)?, step.eval(x)?);
    }

    let uniform = WeightingMeasure::Uniform(unit);
    let two_points = WeightingMeasure::Discrete(DiscreteMeasure::uniform_on(&[0.0, 1.0])?);
    println!("||id - 1/2||^2 under Unif[0,1]   = {}", l2_distance_sq(&id, &half, &uniform)?);
    println!("||id - 1/2||^2 under {{0:1/2,1:1/2}} = {}", l2_distance_sq(&id, &half, &two_points)?);

    // 3x - 1 leaves [0, 1]; clamping inserts the crossings at 1/3 and 2/3
    let steep = MonotoneMap::linear(unit, vec![(0.0, -1.0), (1.0, 2.0)])?;
    let clamped = steep.clamp_to(unit);
    println!("clamped knots: {:?}", clamped.knots().collect::<Vec<_>>());
    println!("as JSON: {}", clamped.to_json()?);
    Ok(())
}
