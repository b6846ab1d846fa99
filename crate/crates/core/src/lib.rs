//! Exact and numeric tools for Seiberg–Witten curves of elliptic integrable
//! systems.

pub mod error;
pub mod exact;
pub mod numerics;
pub mod report;
pub mod su_adjoint;
pub mod suite;
pub mod symplectic;
pub mod tables;
pub mod toda;
pub mod vacua;
pub mod weierstrass;

pub use error::{Error, Result};
