//! Simulation from the regression model and Monte Carlo rate experiments.

pub mod output;
pub mod rate;
pub mod scenario;

pub use rate::{loglog_slope, rate_experiment, replicate_seed, RateConfig, RateRow, RateTable, RiskWeighting, SlopeFit};
pub use scenario::{
    sample_noise_map, simulate, simulate_dataset, Density, Design, NoiseModel, ScenarioConfig, Simulation, TrueMap,
    WeightScheme,
};
