//! Weighted isotonic least squares via pool-adjacent-violators.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

impl WeightedPoint {
    pub fn new(x: f64, y: f64, w: f64) -> Result<Self> {
        let p = Self { x, y, w };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        ensure!(
            self.x.is_finite() && self.y.is_finite() && self.w.is_finite(),
            Argument,
            "non-finite point ({}, {}, {})",
            self.x,
            self.y,
            self.w
        );
        ensure!(self.w > 0.0, Argument, "weight {} at x = {} is not positive", self.w, self.x);
        Ok(())
    }
}

/// Sorts by `x` and replaces every group of equal `x` by a single point
/// carrying the summed weight and the weighted mean of `y`.
pub fn merge_ties(points: &[WeightedPoint]) -> Result<Vec<WeightedPoint>> {
    Ok(merge_ties_with_dispersion(points)?.0)
}

/// Like [`merge_ties`], also returning `Σ w (y − ȳ)²` summed over the merged
/// groups (the part of the squared loss no function of `x` can remove).
///
/// Points are ordered by `(x, y, w)` before grouping, so the result does not
/// depend on the input order.
pub(crate) fn merge_ties_with_dispersion(points: &[WeightedPoint]) -> Result<(Vec<WeightedPoint>, f64)> {
    for p in points {
        p.validate()?;
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| {
        a.x.total_cmp(&b.x)
            .then(a.y.total_cmp(&b.y))
            .then(a.w.total_cmp(&b.w))
    });

    let mut merged = Vec::with_capacity(sorted.len());
    let mut dispersion = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let x = sorted[start].x;
        let end = start + sorted[start..].partition_point(|p| p.x == x);
        let group = &sorted[start..end];
        if let [single] = group {
            merged.push(*single);
        } else {
            let w: f64 = group.iter().map(|p| p.w).sum();
            let y = group.iter().map(|p| p.w * p.y).sum::<f64>() / w;
            dispersion += group.iter().map(|p| p.w * (p.y - y) * (p.y - y)).sum::<f64>();
            merged.push(WeightedPoint { x, y, w });
        }
        start = end;
    }
    Ok((merged, dispersion))
}

#[derive(Debug, Clone, Copy)]
struct Block {
    sum_wy: f64,
    sum_w: f64,
    len: usize,
    /// `y` of a block that has not been pooled, returned verbatim.
    single: f64,
}

impl Block {
    fn mean(&self) -> f64 {
        if self.len == 1 {
            self.single
        } else {
            self.sum_wy / self.sum_w
        }
    }

    fn absorb(&mut self, other: Block) {
        self.sum_wy += other.sum_wy;
        self.sum_w += other.sum_w;
        self.len += other.len;
    }
}

/// Minimizer of `Σ w_j (g_j − y_j)²` over nondecreasing sequences `g`.
///
/// Requires `x` strictly increasing (run [`merge_ties`] first). Each maximal
/// constant block of the output equals the weighted mean of its targets.
pub fn pava(points: &[WeightedPoint]) -> Result<Vec<f64>> {
    for (k, p) in points.iter().enumerate() {
        p.validate()?;
        if k > 0 {
            ensure!(
                points[k - 1].x < p.x,
                Argument,
                "locations must be strictly increasing (index {k}); merge ties first"
            );
        }
    }

    let mut blocks: Vec<Block> = Vec::with_capacity(points.len());
    for p in points {
        let mut cur = Block {
            sum_wy: p.w * p.y,
            sum_w: p.w,
            len: 1,
            single: p.y,
        };
        while let Some(prev) = blocks.last() {
            if prev.mean() <= cur.mean() {
                break;
            }
            let mut prev = blocks.pop().unwrap();
            prev.absorb(cur);
            cur = prev;
        }
        blocks.push(cur);
    }

    let mut fitted = Vec::with_capacity(points.len());
    for b in &blocks {
        fitted.extend(std::iter::repeat_n(b.mean(), b.len));
    }
    Ok(fitted)
}
