//! Synthetic datasets drawn from `ν_i = T_{ε_i} # (T₀ # μ_i)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::maps::{Interval, MonotoneMap};
use crate::measures::DiscreteMeasure;
use crate::regression::{Pair, RegressionDataset};

/// Grid resolution used when a smooth true map has to be stored as knots.
pub const SMOOTH_MAP_GRID: usize = 4096;

/// Law of the point-mass locations on the domain.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Density {
    #[default]
    Uniform,
    /// Affine image of `Beta(alpha, beta)` onto the domain.
    Beta { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    #[default]
    Uniform,
    /// Flat Dirichlet weights.
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Design {
    /// `μ_i = δ_{X_i}` with `X_i` i.i.d. from `density`.
    Dirac {
        #[serde(default)]
        density: Density,
    },
    /// `μ_i` has `atoms` uniform locations on the domain.
    General {
        atoms: usize,
        #[serde(default)]
        weights: WeightScheme,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TrueMap {
    Identity,
    /// `a + w·((x − a)/w)^γ` on `[a, a + w]`.
    Power { gamma: f64 },
    PiecewiseLinear { knots: Vec<[f64; 2]> },
    /// `steps` equal-width steps climbing from `a` in increments of `w/steps`.
    Staircase { steps: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NoiseModel {
    /// `T(x) = x + σZ`.
    GaussianShift { sigma: f64 },
    /// `T(x) = A x + B`, `A ~ Unif[1 − a, 1 + a]`, `B ~ N(0, σ_b²)`.
    Affine { a: f64, sigma_b: f64 },
}

fn default_n() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub domain: Interval,
    pub design: Design,
    pub true_map: TrueMap,
    pub noise: NoiseModel,
    #[serde(default = "default_n", alias = "N")]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

impl ScenarioConfig {
    /// Point-mass design with uniform locations and Gaussian-shift noise.
    pub fn dirac(domain: Interval, true_map: TrueMap, sigma: f64, n: usize, seed: u64) -> Self {
        Self {
            domain,
            design: Design::Dirac {
                density: Density::Uniform,
            },
            true_map,
            noise: NoiseModel::GaussianShift { sigma },
            n,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.n >= 1, Argument, "sample size must be at least 1");
        match self.design {
            Design::Dirac {
                density: Density::Beta { alpha, beta },
            } => ensure!(
                alpha > 0.0 && beta > 0.0,
                Argument,
                "beta shape parameters ({alpha}, {beta}) must be positive"
            ),
            Design::General { atoms, .. } => ensure!(atoms >= 1, Argument, "general design needs at least one atom"),
            _ => {}
        }
        match self.noise {
            NoiseModel::GaussianShift { sigma } => {
                ensure!(sigma >= 0.0 && sigma.is_finite(), Argument, "sigma = {sigma} must be ≥ 0")
            }
            NoiseModel::Affine { a, sigma_b } => {
                ensure!((0.0..=1.0).contains(&a), Argument, "affine half-width a = {a} outside [0, 1]");
                ensure!(
                    sigma_b >= 0.0 && sigma_b.is_finite(),
                    Argument,
                    "sigma_b = {sigma_b} must be ≥ 0"
                );
            }
        }
        self.true_map.validate(self.domain)
    }
}

impl TrueMap {
    fn validate(&self, domain: Interval) -> Result<()> {
        match self {
            TrueMap::Power { gamma } => {
                ensure!(*gamma > 0.0 && gamma.is_finite(), Argument, "power exponent {gamma} must be positive")
            }
            TrueMap::Staircase { steps } => ensure!(*steps >= 1, Argument, "staircase needs at least one step"),
            TrueMap::PiecewiseLinear { .. } => {
                self.exact_map(domain)?;
            }
            TrueMap::Identity => {}
        }
        Ok(())
    }

    /// Knot representation when the family is itself piecewise linear or constant.
    fn exact_map(&self, domain: Interval) -> Result<Option<MonotoneMap>> {
        Ok(match self {
            TrueMap::Identity => Some(MonotoneMap::identity(domain)),
            TrueMap::PiecewiseLinear { knots } => Some(MonotoneMap::linear(
                domain,
                knots.iter().map(|&[x, t]| (x, t)).collect(),
            )?),
            TrueMap::Staircase { steps } => {
                let s = *steps as f64;
                let knots = (0..*steps)
                    .map(|j| {
                        let level = domain.lo() + domain.width() * j as f64 / s;
                        (level, level)
                    })
                    .collect();
                Some(MonotoneMap::step(domain, knots)?)
            }
            TrueMap::Power { .. } => None,
        })
    }

    /// Exact value at `x ∈ domain`.
    pub fn eval(&self, domain: Interval, x: f64) -> Result<f64> {
        match self {
            TrueMap::Power { gamma } => {
                ensure!(domain.contains(x), Domain, "x = {x} outside [{}, {}]", domain.lo(), domain.hi());
                let u = (x - domain.lo()) / domain.width();
                Ok(domain.lo() + domain.width() * u.powf(*gamma))
            }
            _ => self.exact_map(domain)?.expect("piecewise family").eval(x),
        }
    }

    /// A [`MonotoneMap`] agreeing with the true map at every point of
    /// `anchors`. Piecewise families are represented exactly; smooth ones are
    /// interpolated linearly on a uniform grid refined by the anchors.
    pub fn to_map(&self, domain: Interval, anchors: &[f64]) -> Result<MonotoneMap> {
        if let Some(m) = self.exact_map(domain)? {
            return Ok(m);
        }
        let mut xs: Vec<f64> = (0..=SMOOTH_MAP_GRID)
            .map(|i| domain.lo() + domain.width() * i as f64 / SMOOTH_MAP_GRID as f64)
            .map(|x| domain.clip(x))
            .chain(anchors.iter().copied())
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let knots = xs
            .into_iter()
            .map(|x| Ok((x, self.eval(domain, x)?)))
            .collect::<Result<Vec<_>>>()?;
        MonotoneMap::linear(domain, knots)
    }
}

/// Slope and intercept of one affine noise map.
#[derive(Debug, Clone, Copy, PartialEq)]
struct NoiseDraw {
    slope: f64,
    intercept: f64,
}

impl NoiseModel {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<NoiseDraw> {
        match *self {
            NoiseModel::GaussianShift { sigma } => {
                ensure!(sigma >= 0.0 && sigma.is_finite(), Argument, "sigma = {sigma} must be ≥ 0");
                let z: f64 = StandardNormal.sample(rng);
                Ok(NoiseDraw {
                    slope: 1.0,
                    intercept: sigma * z,
                })
            }
            NoiseModel::Affine { a, sigma_b } => {
                ensure!((0.0..=1.0).contains(&a), Argument, "affine half-width a = {a} outside [0, 1]");
                ensure!(sigma_b >= 0.0 && sigma_b.is_finite(), Argument, "sigma_b = {sigma_b} must be ≥ 0");
                let u: f64 = rng.random();
                let z: f64 = StandardNormal.sample(rng);
                Ok(NoiseDraw {
                    slope: 1.0 + a * (2.0 * u - 1.0),
                    intercept: sigma_b * z,
                })
            }
        }
    }
}

/// Draws one noise map on `domain`. Both families are nondecreasing with
/// pointwise mean equal to the identity.
pub fn sample_noise_map<R: Rng + ?Sized>(noise: &NoiseModel, domain: Interval, rng: &mut R) -> Result<MonotoneMap> {
    let d = noise.draw(rng)?;
    MonotoneMap::affine(domain, d.slope, d.intercept)
}

fn sample_covariate<R: Rng + ?Sized>(design: &Design, domain: Interval, rng: &mut R) -> Result<DiscreteMeasure> {
    let place = |u: f64| domain.clip(domain.lo() + domain.width() * u);
    match *design {
        Design::Dirac { density } => {
            let u: f64 = match density {
                Density::Uniform => rng.random(),
                Density::Beta { alpha, beta } => Beta::new(alpha, beta)
                    .map_err(|e| Error::Argument(format!("beta density: {e}")))?
                    .sample(rng),
            };
            DiscreteMeasure::dirac(place(u))
        }
        Design::General { atoms, weights } => {
            let xs: Vec<f64> = (0..atoms).map(|_| place(rng.random())).collect();
            let raw: Vec<f64> = match weights {
                WeightScheme::Uniform => vec![1.0; atoms],
                WeightScheme::Dirichlet => (0..atoms).map(|_| Exp1.sample(rng)).collect::<Vec<f64>>(),
            };
            let total: f64 = raw.iter().sum();
            DiscreteMeasure::new(xs, raw.into_iter().map(|w| w / total).collect())
        }
    }
}

/// A simulated dataset together with the maps that produced it.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub dataset: RegressionDataset,
    /// `T₀`, exact at every covariate atom.
    pub true_map: MonotoneMap,
    /// `T_{ε_i}`, one per pair.
    pub noise_maps: Vec<MonotoneMap>,
}

/// Runs the generative model; the result is a pure function of `cfg`.
pub fn simulate(cfg: &ScenarioConfig) -> Result<Simulation> {
    cfg.validate()?;
    let domain = cfg.domain;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut covariates = Vec::with_capacity(cfg.n);
    let mut draws = Vec::with_capacity(cfg.n);
    for _ in 0..cfg.n {
        covariates.push(sample_covariate(&cfg.design, domain, &mut rng)?);
        draws.push(cfg.noise.draw(&mut rng)?);
    }

    let anchors: Vec<f64> = covariates.iter().flat_map(|m| m.atoms().iter().copied()).collect();
    let true_map = cfg.true_map.to_map(domain, &anchors)?;
    let (t_lo, t_hi) = true_map.range();
    let noise_domain = match Interval::new(t_lo, t_hi) {
        Ok(r) => domain.hull(&r),
        Err(_) => domain.hull(&Interval::new(t_lo, t_lo + domain.width())?),
    };

    let mut pairs = Vec::with_capacity(cfg.n);
    let mut noise_maps = Vec::with_capacity(cfg.n);
    // noise maps act on the range of T₀, which may leave the domain
    for (mu, d) in covariates.into_iter().zip(draws) {
        let noise = MonotoneMap::affine(noise_domain, d.slope, d.intercept)?;
        let nu = mu.pushforward(&true_map)?.pushforward(&noise)?;
        pairs.push(Pair {
            covariate: mu,
            response: nu,
        });
        noise_maps.push(noise);
    }
    Ok(Simulation {
        dataset: RegressionDataset::new(domain, pairs)?,
        true_map,
        noise_maps,
    })
}

pub fn simulate_dataset(cfg: &ScenarioConfig) -> Result<RegressionDataset> {
    Ok(simulate(cfg)?.dataset)
}
