//! Optimal-transport regression between one-dimensional probability measures.
//!
//! The regression model links a covariate measure `μ` to a response measure
//! `ν` through an unknown nondecreasing map `T₀` and a random, mean-identity
//! noise map `T_ε`:
//!
//! ```text
//! ν = T_ε # (T₀ # μ)
//! ```
//!
//! `T₀` is estimated by Fréchet least squares, minimising the average squared
//! 2-Wasserstein distance between `T # μ_i` and `ν_i` over nondecreasing `T`.
//! On the line this objective reduces exactly to a weighted isotonic
//! regression, which [`isotonic::pava`] solves.
//!
//! Crate layout:
//!
//! - [`measures`]: finitely supported measures, quantiles, pushforwards, exact W₂².
//! - [`maps`]: monotone step / piecewise-linear maps and exact L² distances.
//! - [`isotonic`]: weighted pool-adjacent-violators.
//! - [`regression`]: datasets, the pooled reduction, objective, fit and risk.
//! - [`theory`]: Gaussian KL, packing families and the Fano / Yang–Barron bound.
//! - [`harness`]: scenario simulation, seeded parallel rate experiments, output writers.

pub mod error;
pub mod harness;
pub mod isotonic;
pub mod maps;
pub mod measures;
pub mod regression;
pub mod theory;

pub use error::{Error, Result};
pub use isotonic::{merge_ties, pava, WeightedPoint};
pub use maps::{l2_distance_sq, Interpolation, Interval, MonotoneMap, WeightingMeasure};
pub use measures::{average_measure, wasserstein2_sq, DiscreteMeasure};
pub use regression::{fit, fit_with, objective, pool, risk, PooledProblem, RegressionDataset};
