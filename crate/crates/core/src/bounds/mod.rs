//! Numerical evaluation of the analytic objects behind the survival bounds:
//! the truncated mark-convolution densities ν, the α/β sequences, ordered
//! trace sets, and closed-form rates.

mod nu;
mod rates;
mod sequences;
mod traces;

pub use nu::{nu_value, nu_value_tol};
pub use rates::{gamma_envelope, optimal_t, rho_tau_rate, survival_upper_bound, survival_upper_bound_optimal};
pub use sequences::{
    alpha_beta, alpha_beta_log, alpha_closed_bound, bound_ratio, fit_constant_c, window_holds, BoundsParams,
    NuBoundCheck,
};
pub use traces::{enumerate_traces, trace_weight_sum, TraceQuery, TraceSets, MAX_TRACE_GRAPH, MAX_TRACE_LENGTH};
