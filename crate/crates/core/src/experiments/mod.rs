//! Reproducible experiment pipelines: survival estimates, extinction-time
//! scaling, slope fits, configuration and CSV output.

mod config;
mod extinction;
mod gamma;
mod output;
mod pipeline;

pub use crate::rng::derive_stream_seed;
pub use config::{Config, KNOWN_KEYS};
pub use extinction::{
    extinction_scaling, median_tau_by_volume, super_logarithmic_growth, ExtinctionRecord, ExtinctionRules,
};
pub use gamma::{estimate_gamma, gamma_replica, GammaEstimateRecord, GammaRules};
pub use output::{
    bounds_table, default_mark_grid, fit_loglog_slope, write_bounds_csv, write_boxes_csv, write_chain_csv,
    write_extinction_csv, write_gamma_csv, BoundsRow,
};
pub use pipeline::{kernel_from_config, run_config, run_pipeline, Artifacts, PIPELINES};
