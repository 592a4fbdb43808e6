//! Quantities from the minimax lower-bound argument.
//!
//! With point-mass covariates and Gaussian-shift noise the observations are
//! pairs `(X, Y)` with `Y | X ~ N(T(X), σ²)`, so
//!
//! - the KL divergence between the laws induced by two maps is
//!   `∫ (T₁ − T₂)² / (2σ²) dp` ([`kl_conditional`]);
//! - a staircase family with binary perturbations gives well-separated
//!   monotone maps ([`packing_family`]);
//! - Fano's inequality with the Yang–Barron mutual-information bound gives
//!   the lower bound evaluated by [`fano_bound`].
//!
//! Logarithms are natural throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::maps::{l2_distance_sq, Interval, MonotoneMap, WeightingMeasure};

/// KL divergence of the Gaussian-response laws induced by `t1` and `t2`,
/// integrated over the design `p`.
pub fn kl_conditional(t1: &MonotoneMap, t2: &MonotoneMap, sigma: f64, p: &WeightingMeasure) -> Result<f64> {
    ensure!(sigma > 0.0 && sigma.is_finite(), Argument, "sigma = {sigma} must be positive");
    Ok(l2_distance_sq(t1, t2, p)? / (2.0 * sigma * sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackingConfig {
    /// Number of bins `k` of the staircase on `[0, 1]`.
    pub bins: usize,
    /// Perturbation height `h ≤ 1/k`.
    pub step_height: f64,
    /// Required pairwise Hamming distance as a fraction of `k`.
    pub target_hamming_frac: f64,
    pub seed: u64,
    /// Stop once this many members have been accepted.
    pub max_members: usize,
    /// Stop after this many consecutive rejected candidates.
    pub max_rejections: usize,
}

impl PackingConfig {
    pub fn new(bins: usize, step_height: f64, seed: u64) -> Self {
        Self {
            bins,
            step_height,
            target_hamming_frac: 0.25,
            seed,
            max_members: 1024,
            max_rejections: 2000,
        }
    }

    pub fn min_hamming(&self) -> usize {
        (self.target_hamming_frac * self.bins as f64).ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingFamily {
    pub maps: Vec<MonotoneMap>,
    /// Binary perturbation pattern of each member.
    pub codewords: Vec<Vec<bool>>,
    pub bins: usize,
    pub step_height: f64,
    /// Smallest pairwise Hamming distance among the codewords.
    pub min_hamming: usize,
    /// Exact minimum over pairs of `‖T_a − T_b‖_{L²(Unif[0,1])}`.
    pub min_pairwise_dist: f64,
    /// `ln M`.
    pub log_cardinality: f64,
    pub seed: u64,
}

/// Summary record written next to the family's maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingSummary {
    pub k: usize,
    pub h: f64,
    pub members: usize,
    pub min_hamming: usize,
    pub min_pairwise_dist: f64,
    pub log_cardinality: f64,
    pub seed: u64,
}

impl PackingFamily {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn summary(&self) -> PackingSummary {
        PackingSummary {
            k: self.bins,
            h: self.step_height,
            members: self.maps.len(),
            min_hamming: self.min_hamming,
            min_pairwise_dist: self.min_pairwise_dist,
            log_cardinality: self.log_cardinality,
            seed: self.seed,
        }
    }

    /// `{"maps": [...], "summary": {...}}`.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Out<'a> {
            maps: &'a [MonotoneMap],
            summary: PackingSummary,
        }
        Ok(serde_json::to_string_pretty(&Out {
            maps: &self.maps,
            summary: self.summary(),
        })?)
    }
}

pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Step map on `[0, 1]` taking the value `j/k + h·ω_j` on bin `[j/k, (j+1)/k)`.
pub fn staircase_member(codeword: &[bool], step_height: f64) -> Result<MonotoneMap> {
    let k = codeword.len();
    ensure!(k > 0, Argument, "codeword is empty");
    let knots = codeword
        .iter()
        .enumerate()
        .map(|(j, &bit)| {
            let base = j as f64 / k as f64;
            (base, base + if bit { step_height } else { 0.0 })
        })
        .collect();
    MonotoneMap::step(Interval::unit(), knots)
}

/// Randomized greedy packing of perturbed staircases.
///
/// Candidates `ω ∈ {0,1}^k` are drawn uniformly and kept when their Hamming
/// distance to every kept codeword is at least `⌈frac · k⌉`, until
/// `max_members` are kept or `max_rejections` candidates in a row fail.
/// Pairwise distances satisfy `dist² = h² · Hamming / k`.
pub fn packing_family(cfg: &PackingConfig) -> Result<PackingFamily> {
    let k = cfg.bins;
    let h = cfg.step_height;
    ensure!(k >= 1, Argument, "need at least one bin");
    ensure!(h > 0.0 && h.is_finite(), Argument, "step height {h} must be positive");
    ensure!(
        h <= 1.0 / k as f64,
        Argument,
        "step height {h} exceeds 1/k = {}; members would not be monotone",
        1.0 / k as f64
    );
    ensure!(
        cfg.target_hamming_frac > 0.0 && cfg.target_hamming_frac <= 0.5,
        Argument,
        "target Hamming fraction {} outside (0, 1/2]",
        cfg.target_hamming_frac
    );
    ensure!(cfg.max_members >= 2, Argument, "max_members must be at least 2");

    let d_min = cfg.min_hamming();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut codes: Vec<Vec<bool>> = Vec::new();
    let mut rejections = 0;
    let mut draws = 0usize;
    while codes.len() < cfg.max_members && rejections < cfg.max_rejections {
        let cand: Vec<bool> = (0..k).map(|_| rng.random::<bool>()).collect();
        draws += 1;
        if codes.iter().all(|c| hamming(c, &cand) >= d_min) {
            codes.push(cand);
            rejections = 0;
        } else {
            rejections += 1;
        }
    }
    if codes.len() < 2 {
        return Err(Error::Construction(format!(
            "only {} codeword(s) with pairwise Hamming distance ≥ {d_min} after {draws} draws \
             (k = {k}, {} consecutive rejections)",
            codes.len(),
            rejections
        )));
    }

    let maps = codes
        .iter()
        .map(|c| staircase_member(c, h))
        .collect::<Result<Vec<_>>>()?;
    let uniform = WeightingMeasure::Uniform(Interval::unit());
    let mut min_sq = f64::INFINITY;
    let mut min_hamming = usize::MAX;
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            min_sq = min_sq.min(l2_distance_sq(&maps[a], &maps[b], &uniform)?);
            min_hamming = min_hamming.min(hamming(&codes[a], &codes[b]));
        }
    }

    Ok(PackingFamily {
        log_cardinality: (maps.len() as f64).ln(),
        maps,
        codewords: codes,
        bins: k,
        step_height: h,
        min_hamming,
        min_pairwise_dist: min_sq.sqrt(),
        seed: cfg.seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoInputs {
    /// Separation scale `δ`; the loss is `Φ(δ) = δ`.
    pub delta: f64,
    /// Covering scale `ε`.
    pub epsilon: f64,
    /// Bracketing constant: `log N_[](ε) ≤ K / ε`.
    pub bracketing: f64,
    /// Packing constant: `log M = c / δ`.
    pub packing: f64,
    /// Factor on the `ε²` KL term; `N` models `N` i.i.d. observations.
    pub kl_multiplier: f64,
}

impl FanoInputs {
    pub fn new(delta: f64, epsilon: f64, bracketing: f64, packing: f64) -> Self {
        Self {
            delta,
            epsilon,
            bracketing,
            packing,
            kl_multiplier: 1.0,
        }
    }

    pub fn with_kl_multiplier(mut self, m: f64) -> Self {
        self.kl_multiplier = m;
        self
    }

    /// `ε = δ = N^{-1/3}` with the KL term scaled by `N`.
    pub fn at_sample_size(n: f64, bracketing: f64, packing: f64) -> Self {
        let scale = n.powf(-1.0 / 3.0);
        Self::new(scale, scale, bracketing, packing).with_kl_multiplier(n)
    }
}

/// `(δ/2) · (1 − (K/ε + m·ε² + ln 2) / (c/δ))`.
///
/// The value is returned as computed, so a negative (vacuous) bound is
/// possible.
pub fn fano_bound(inp: &FanoInputs) -> Result<f64> {
    for (name, v) in [
        ("delta", inp.delta),
        ("epsilon", inp.epsilon),
        ("K", inp.bracketing),
        ("c", inp.packing),
        ("kl_multiplier", inp.kl_multiplier),
    ] {
        ensure!(v > 0.0 && v.is_finite(), Argument, "{name} = {v} must be positive and finite");
    }
    let mutual_info = inp.bracketing / inp.epsilon + inp.kl_multiplier * inp.epsilon * inp.epsilon;
    let log_m = inp.packing / inp.delta;
    Ok(inp.delta / 2.0 * (1.0 - (mutual_info + std::f64::consts::LN_2) / log_m))
}
