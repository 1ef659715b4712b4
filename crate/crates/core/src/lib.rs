//! Sup-norm geometry of the automorphism group of the unit disk.
//!
//! - [`group`]: the chart `f_{xi,u}`, composition, inverse, pseudo-hyperbolic `rho`.
//! - [`metric`]: closed-form distance and a brute-force boundary oracle.
//! - [`finsler`]: the induced norm, its strata, fundamental tensor and kernel.
//! - [`randers`]: the rotation-free slice `{phi_u}` and its Randers form.
//! - [`curves`]: curve lengths and the non-geodesic witness.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod curves;
pub mod error;
pub mod finsler;
pub mod group;
pub mod maximize;
pub mod metric;
pub mod numdiff;
pub mod randers;
pub mod sampling;
pub mod selftest;

pub use error::{Error, Result};
pub use finsler::{finsler_norm, fundamental_tensor, kernel_direction, stratum_of, Stratum, TangentVector};
pub use group::{rho, AutElement, BoundaryAngle, DiskPoint};
pub use metric::{dist_closed, dist_oracle, lambda_of, CaseTag, DistanceResult, Lambda, OracleConfig};
