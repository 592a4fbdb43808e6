//! Nondecreasing maps on a closed interval.
//!
//! A [`MonotoneMap`] is stored as knots `(x_k, t_k)` with `x` strictly
//! increasing and `t` nondecreasing. Two interpolation modes are supported:
//! right-continuous steps and piecewise-linear interpolation. Both extend
//! constantly beyond the extreme knots.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::measures::DiscreteMeasure;

/// Largest knot-value decrease tolerated (and flattened) at construction.
pub const MONOTONE_TOLERANCE: f64 = 1e-12;

/// Nondegenerate closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        ensure!(
            lo.is_finite() && hi.is_finite() && lo < hi,
            Argument,
            "[{lo}, {hi}] is not a nondegenerate finite interval"
        );
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn clip(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    /// Right-continuous, constant between knots.
    Step,
    /// Piecewise-linear between knots.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct MonotoneMap {
    domain: Interval,
    mode: Interpolation,
    xs: Vec<f64>,
    ts: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    domain: Interval,
    mode: Interpolation,
    knots: Vec<[f64; 2]>,
}

impl TryFrom<MapRepr> for MonotoneMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        MonotoneMap::new(r.domain, r.mode, r.knots.into_iter().map(|[x, t]| (x, t)).collect())
    }
}

impl From<MonotoneMap> for MapRepr {
    fn from(m: MonotoneMap) -> Self {
        MapRepr {
            domain: m.domain,
            mode: m.mode,
            knots: m.xs.into_iter().zip(m.ts).map(|(x, t)| [x, t]).collect(),
        }
    }
}

impl MonotoneMap {
    pub fn new(domain: Interval, mode: Interpolation, knots: Vec<(f64, f64)>) -> Result<Self> {
        ensure!(!knots.is_empty(), Argument, "a map needs at least one knot");
        let mut xs = Vec::with_capacity(knots.len());
        let mut ts: Vec<f64> = Vec::with_capacity(knots.len());
        for (k, (x, t)) in knots.into_iter().enumerate() {
            ensure!(
                x.is_finite() && t.is_finite(),
                Argument,
                "knot {k} ({x}, {t}) is not finite"
            );
            ensure!(
                domain.contains(x),
                Domain,
                "knot {k} at x = {x} lies outside [{}, {}]",
                domain.lo,
                domain.hi
            );
            let t = match (xs.last(), ts.last()) {
                (Some(&px), Some(&pt)) => {
                    ensure!(x > px, Argument, "knot locations not strictly increasing at {k}");
                    ensure!(
                        t >= pt - MONOTONE_TOLERANCE,
                        Argument,
                        "map decreases from {pt} to {t} at knot {k}"
                    );
                    t.max(pt)
                }
                _ => t,
            };
            xs.push(x);
            ts.push(t);
        }
        Ok(Self { domain, mode, xs, ts })
    }

    pub fn step(domain: Interval, knots: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(domain, Interpolation::Step, knots)
    }

    pub fn linear(domain: Interval, knots: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(domain, Interpolation::Linear, knots)
    }

    pub fn identity(domain: Interval) -> Self {
        Self {
            domain,
            mode: Interpolation::Linear,
            xs: vec![domain.lo, domain.hi],
            ts: vec![domain.lo, domain.hi],
        }
    }

    pub fn constant(domain: Interval, value: f64) -> Self {
        Self {
            domain,
            mode: Interpolation::Step,
            xs: vec![domain.lo],
            ts: vec![value],
        }
    }

    /// `x ↦ slope · x + intercept` on `domain`; requires `slope ≥ 0`.
    pub fn affine(domain: Interval, slope: f64, intercept: f64) -> Result<Self> {
        ensure!(slope >= 0.0, Argument, "affine slope {slope} is negative");
        Self::linear(
            domain,
            vec![
                (domain.lo, slope * domain.lo + intercept),
                (domain.hi, slope * domain.hi + intercept),
            ],
        )
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn mode(&self) -> Interpolation {
        self.mode
    }

    pub fn knot_locations(&self) -> &[f64] {
        &self.xs
    }

    pub fn knot_values(&self) -> &[f64] {
        &self.ts
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ts.iter().copied())
    }

    /// Smallest and largest value the map takes.
    pub fn range(&self) -> (f64, f64) {
        (self.ts[0], self.ts[self.ts.len() - 1])
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        ensure!(
            self.domain.contains(x),
            Domain,
            "x = {x} outside map domain [{}, {}]",
            self.domain.lo,
            self.domain.hi
        );
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        // number of knots at or left of x
        let k = self.xs.partition_point(|&xk| xk <= x);
        if k == 0 {
            return self.ts[0];
        }
        let last = self.xs.len() - 1;
        match self.mode {
            Interpolation::Step => self.ts[k - 1],
            Interpolation::Linear if k > last => self.ts[last],
            Interpolation::Linear => {
                let (x0, x1) = (self.xs[k - 1], self.xs[k]);
                let (t0, t1) = (self.ts[k - 1], self.ts[k]);
                // convex combination keeps the result inside [t0, t1]
                let s = (x - x0) / (x1 - x0);
                (t0 + s * (t1 - t0)).clamp(t0, t1)
            }
        }
    }

    /// Values at the two ends of `[s, e]`, taken from inside the segment.
    /// `[s, e]` must contain no knot in its interior.
    fn segment_values(&self, s: f64, e: f64) -> (f64, f64) {
        let start = self.eval_unchecked(s);
        match self.mode {
            Interpolation::Step => (start, start),
            Interpolation::Linear => (start, self.eval_unchecked(e)),
        }
    }

    /// Clips every value into `interval`. Linear maps gain knots where they
    /// cross the interval ends so the clipped function is represented exactly.
    pub fn clamp_to(&self, interval: Interval) -> MonotoneMap {
        let (a, b) = (interval.lo, interval.hi);
        let mut knots: Vec<(f64, f64)> = Vec::with_capacity(self.xs.len() + 2);
        for k in 0..self.xs.len() {
            knots.push((self.xs[k], interval.clip(self.ts[k])));
            if self.mode == Interpolation::Linear && k + 1 < self.xs.len() {
                let (x0, x1) = (self.xs[k], self.xs[k + 1]);
                let (t0, t1) = (self.ts[k], self.ts[k + 1]);
                for level in [a, b] {
                    if t0 < level && level < t1 {
                        let x = x0 + (level - t0) / (t1 - t0) * (x1 - x0);
                        if x0 < x && x < x1 {
                            knots.push((x, level));
                        }
                    }
                }
            }
        }
        Self {
            domain: self.domain,
            mode: self.mode,
            xs: knots.iter().map(|k| k.0).collect(),
            ts: knots.iter().map(|k| k.1).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Measure under which map distances are taken.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightingMeasure {
    Discrete(DiscreteMeasure),
    /// Uniform density on the interval.
    Uniform(Interval),
}

impl From<DiscreteMeasure> for WeightingMeasure {
    fn from(m: DiscreteMeasure) -> Self {
        WeightingMeasure::Discrete(m)
    }
}

impl From<Interval> for WeightingMeasure {
    fn from(i: Interval) -> Self {
        WeightingMeasure::Uniform(i)
    }
}

/// `∫ (T1 − T2)² dq`, computed exactly.
///
/// Discrete weightings sum over atoms in ascending order. Uniform weightings
/// integrate the (piecewise-linear) difference segment by segment between the
/// merged knots of both maps.
pub fn l2_distance_sq(t1: &MonotoneMap, t2: &MonotoneMap, q: &WeightingMeasure) -> Result<f64> {
    match q {
        WeightingMeasure::Discrete(m) => {
            let mut total = 0.0;
            for (&x, &w) in m.atoms().iter().zip(m.weights()) {
                let d = t1.eval(x)? - t2.eval(x)?;
                total += w * d * d;
            }
            Ok(total)
        }
        WeightingMeasure::Uniform(support) => {
            for t in [t1, t2] {
                ensure!(
                    t.domain.contains_interval(support),
                    Domain,
                    "uniform support [{}, {}] not inside map domain [{}, {}]",
                    support.lo,
                    support.hi,
                    t.domain.lo,
                    t.domain.hi
                );
            }
            let mut cuts: Vec<f64> = t1
                .xs
                .iter()
                .chain(&t2.xs)
                .copied()
                .filter(|&x| support.lo < x && x < support.hi)
                .collect();
            cuts.push(support.lo);
            cuts.push(support.hi);
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();

            let mut total = 0.0;
            for seg in cuts.windows(2) {
                let (s, e) = (seg[0], seg[1]);
                let (a0, a1) = t1.segment_values(s, e);
                let (b0, b1) = t2.segment_values(s, e);
                let (d0, d1) = (a0 - b0, a1 - b1);
                total += (e - s) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
            }
            Ok(total / support.width())
        }
    }
}
