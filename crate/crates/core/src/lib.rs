//! Exact arithmetic for the family of products on `Z x Z`-graded homotopy
//! rings obtained by twisting a reference product with a unit-valued
//! 2-cocycle.
//!
//! * [`units`]: the four-group `{1, -1, eps, -eps}` and `Z[eps]/(eps^2 - 1)`.
//! * [`cocycles`]: bilinear twists, coboundaries and class counts.
//! * [`conventions`]: named twists and their commutation laws.
//! * [`algebra`]: presented algebras, normal forms and convention transport.
//! * [`realize`]: grading-collapse realizations and ring-map decisions.
//! * [`catalog`]: universal elements, their degrees and relations.
//! * [`scan`]: tabulated homotopy data and the odd-weight scanner.

pub mod algebra;
pub mod catalog;
pub mod cocycles;
pub mod conventions;
pub mod error;
pub mod realize;
pub mod scan;
pub mod units;

pub use algebra::{Element, Presentation, ProductExpr};
pub use cocycles::{BilinearCocycle, Grid, QuadraticCochain, UnitSubgroup};
pub use conventions::Convention;
pub use error::{Error, Result};
pub use units::{Bidegree, Coef, CoefMode, EpsImage, UnitExp};
