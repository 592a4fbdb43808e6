//! Weighted isotonic regression by pool-adjacent-violators.
//!
//! ```bash
//! cargo run -p otreg --example isotonic_pava
//! ```

use otreg::{merge_ties, pava, WeightedPoint};

fn main() -> otreg::Result<()> {
    let raw = [
        WeightedPoint::new(0.1, 1.0, 1.0)?,
        WeightedPoint::new(0.2, 3.0, 1.0)?,
        WeightedPoint::new(0.3, 2.0, 1.0)?,
        WeightedPoint::new(0.3, 0.0, 1.0)?, // tie at x = 0.3
        WeightedPoint::new(0.4, 4.0, 2.0)?,
    ];
    let points = merge_ties(&raw)?;
    let fitted = pava(&points)?;
    println!("{:>5} {:>6} {:>4} {:>8}", "x", "y", "w", "fitted");
    for (p, g) in points.iter().zip(&fitted) {
        println!("{:>5} {:>6.3} {:>4} {:>8.4}", p.x, p.y, p.w, g);
    }
    Ok(())
}
