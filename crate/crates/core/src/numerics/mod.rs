//! Complex-analytic engine: elliptic lattices, SW1 periods and monodromy.

pub mod elliptic;
pub mod quad;
pub mod sw1;

pub use elliptic::{elliptic_periods, AnalyticEllipticData};
pub use sw1::{gamma2_membership, kahler_potential, monodromy, sw1_periods, Loop, MonodromyMatrix, PeriodFrame};
