//! curvlab: numerical verification for reproducing-kernel Hilbert spaces.
//!
//! Computes the curvature of the line bundle attached to a kernel, decides
//! positivity, contractivity, curvature inequalities and infinite divisibility
//! numerically at desk scale, and ships a small expression DSL plus a CLI for
//! running named scenarios. Start with the `examples/` directory: each example
//! is a runnable walkthrough of one capability.

pub mod curvature;
pub mod divisibility;
pub mod dsl;
pub mod eigen;
pub mod error;
pub mod kernel;
pub mod operator;
pub mod points;
pub mod posdef;
pub mod report;
pub mod scenario;
pub mod series;

pub mod cli;

pub use error::{Error, Result};
pub use kernel::{Domain, KernelSpec};
pub use posdef::{PosDefVerdict, Verdict};

pub use series::{HermitianSeries, MultiIndex};
