//! Exact algebra substrate: rationals, sparse polynomials, series and
//! elimination tools shared by the geometric modules.

pub mod elim;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod ring;
pub mod series;
pub mod univariate;

pub use parse::parse_poly;
pub use elim::{discriminant, discriminant_q, resultant, resultant_q};
pub use poly::{Poly, SparsePoly};
pub use puiseux::{puiseux_branches, puiseux_roots, PuiseuxBranch};
pub use ring::{int, rat, ExactScalar, Ring, Q};
pub use series::{r64, PuiseuxSeries, Series, SeriesCoeff};
