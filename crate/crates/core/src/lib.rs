//! Contact process on scale-free geometric random graphs.

pub mod bounds;
pub mod contact;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod kernels;
pub mod point_process;
pub mod quad;
pub mod rng;
pub mod stats;
pub mod structure;

pub use error::{Error, Result};
