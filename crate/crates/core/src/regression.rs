//! Fréchet least-squares regression of response measures on covariate measures.
//!
//! For a nondecreasing `T`, the quantile function of `T # μ` is `T ∘ F_μ⁻¹`,
//! so on the `u`-interval `(u₀, u₁]` occupied by an atom `x` of `μ` the
//! squared W₂ integrand is `(T(x) − F_ν⁻¹(u))²`. Expanding around the
//! segment mean `ȳ` of `F_ν⁻¹` turns the whole objective into
//!
//! ```text
//! Σ_i d²_W(T # μ_i, ν_i) = Σ_j w_j (T(x_j) − ȳ_j)² + constant
//! ```
//!
//! which is a weighted isotonic regression in the values `T(x_j)`. The
//! [`PooledProblem`] holds that quadratic form.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::isotonic::{merge_ties_with_dispersion, pava, WeightedPoint};
use crate::maps::{l2_distance_sq, Interval, MonotoneMap, WeightingMeasure};
use crate::measures::{average_measure, for_each_quantile_segment, wasserstein2_sq, DiscreteMeasure};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub covariate: DiscreteMeasure,
    pub response: DiscreteMeasure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DatasetRepr", into = "DatasetRepr")]
pub struct RegressionDataset {
    domain: Interval,
    pairs: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
struct DatasetRepr {
    domain: Interval,
    pairs: Vec<PairRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PairRepr {
    Measures { mu: DiscreteMeasure, nu: DiscreteMeasure },
    Dirac { x: f64, y: f64 },
}

impl TryFrom<DatasetRepr> for RegressionDataset {
    type Error = Error;

    fn try_from(r: DatasetRepr) -> Result<Self> {
        let pairs = r
            .pairs
            .into_iter()
            .map(|p| match p {
                PairRepr::Measures { mu, nu } => Ok(Pair {
                    covariate: mu,
                    response: nu,
                }),
                PairRepr::Dirac { x, y } => Ok(Pair {
                    covariate: DiscreteMeasure::dirac(x)?,
                    response: DiscreteMeasure::dirac(y)?,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        RegressionDataset::new(r.domain, pairs)
    }
}

impl From<RegressionDataset> for DatasetRepr {
    fn from(d: RegressionDataset) -> Self {
        DatasetRepr {
            domain: d.domain,
            pairs: d
                .pairs
                .into_iter()
                .map(|p| PairRepr::Measures {
                    mu: p.covariate,
                    nu: p.response,
                })
                .collect(),
        }
    }
}

impl RegressionDataset {
    pub fn new(domain: Interval, pairs: Vec<Pair>) -> Result<Self> {
        ensure!(!pairs.is_empty(), Argument, "dataset has no pairs");
        for (i, p) in pairs.iter().enumerate() {
            ensure!(
                domain.contains(p.covariate.min_atom()) && domain.contains(p.covariate.max_atom()),
                Domain,
                "covariate {i} not supported inside [{}, {}]",
                domain.lo(),
                domain.hi()
            );
        }
        Ok(Self { domain, pairs })
    }

    /// Dataset of point-mass pairs `(δ_x, δ_y)`.
    pub fn from_dirac(domain: Interval, xy: &[(f64, f64)]) -> Result<Self> {
        let pairs = xy
            .iter()
            .map(|&(x, y)| {
                Ok(Pair {
                    covariate: DiscreteMeasure::dirac(x)?,
                    response: DiscreteMeasure::dirac(y)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, pairs)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn covariates(&self) -> impl Iterator<Item = &DiscreteMeasure> {
        self.pairs.iter().map(|p| &p.covariate)
    }

    /// `Q̂ = N⁻¹ Σ μ_i`.
    pub fn empirical_design(&self) -> DiscreteMeasure {
        let covs: Vec<_> = self.covariates().cloned().collect();
        average_measure(&covs).expect("dataset is nonempty")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Weighted isotonic problem equivalent to the transport objective.
#[derive(Debug, Clone, PartialEq)]
pub struct PooledProblem {
    /// Sorted, strictly increasing in `x`.
    pub points: Vec<WeightedPoint>,
    /// Part of `Σ_i d²_W` that does not depend on `T`.
    pub constant: f64,
}

impl PooledProblem {
    /// `Σ_j w_j (T(x_j) − ȳ_j)² + constant`, i.e. `Σ_i d²_W(T # μ_i, ν_i)`.
    pub fn quadratic_form(&self, map: &MonotoneMap) -> Result<f64> {
        let mut total = 0.0;
        for p in &self.points {
            let d = map.eval(p.x)? - p.y;
            total += p.w * d * d;
        }
        Ok(total + self.constant)
    }
}

/// Reduces the dataset to a [`PooledProblem`].
pub fn pool(data: &RegressionDataset) -> Result<PooledProblem> {
    let mut points = Vec::new();
    let mut constant = 0.0;
    for pair in &data.pairs {
        let (mu, nu) = (&pair.covariate, &pair.response);
        // segments (length, response atom) per covariate atom
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new(); mu.len()];
        for_each_quantile_segment(mu, nu, |len, i, j| segments[i].push((len, nu.atoms()[j])));
        for (x, segs) in mu.atoms().iter().zip(&segments) {
            let w: f64 = segs.iter().map(|s| s.0).sum();
            if w <= 0.0 {
                continue;
            }
            let y = segs.iter().map(|&(len, v)| len * v).sum::<f64>() / w;
            constant += segs.iter().map(|&(len, v)| len * (v - y) * (v - y)).sum::<f64>();
            points.push(WeightedPoint { x: *x, y, w });
        }
    }
    let (points, dispersion) = merge_ties_with_dispersion(&points)?;
    Ok(PooledProblem {
        points,
        constant: constant + dispersion,
    })
}

/// `M_N(T) = (1/2N) Σ_i d²_W(T # μ_i, ν_i)`, evaluated directly.
pub fn objective(map: &MonotoneMap, data: &RegressionDataset) -> Result<f64> {
    let mut total = 0.0;
    for pair in &data.pairs {
        total += wasserstein2_sq(&pair.covariate.pushforward(map)?, &pair.response);
    }
    Ok(total / (2.0 * data.len() as f64))
}

/// Fréchet least-squares estimate with values clipped to the domain.
pub fn fit(data: &RegressionDataset) -> Result<MonotoneMap> {
    fit_with(data, true)
}

/// Fréchet least-squares estimate: a right-continuous step map with knots at
/// the pooled design points. With `clamp`, values are clipped to the domain,
/// which gives the minimizer over monotone maps ranging in the domain.
pub fn fit_with(data: &RegressionDataset, clamp: bool) -> Result<MonotoneMap> {
    let problem = pool(data)?;
    let fitted = pava(&problem.points)?;
    let domain = data.domain;
    let knots = problem
        .points
        .iter()
        .zip(fitted)
        .map(|(p, g)| (p.x, if clamp { domain.clip(g) } else { g }))
        .collect();
    MonotoneMap::step(domain, knots)
}

/// `‖T̂ − T₀‖²_{L²(q)}`.
pub fn risk(estimate: &MonotoneMap, truth: &MonotoneMap, q: &WeightingMeasure) -> Result<f64> {
    l2_distance_sq(estimate, truth, q)
}
