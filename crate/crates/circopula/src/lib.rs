//! Copulas of circular random vectors.
//!
//! Tools for dependence modeling on the circle and the torus:
//! circular distribution functions with re-anchorable zero directions,
//! the sharp upper and lower dependence bounds attainable by circular
//! pairs (two-parameter families of singular copulas), joint
//! distributions assembled via Sklar composition and extended across
//! the seam, exact samplers for the singular-mixture model, and
//! decision procedures for monotone support on the torus.
//!
//! The [`copula`] module has the parametric families, [`circ_dist`]
//! the marginals, [`joint`] the shift machinery, [`sampling`] the
//! generators, and [`dependence`] the support classification.
//!
//! ```
//! use circopula::sampling::{simulate, SimulationConfig};
//!
//! let sample = simulate(&SimulationConfig::default()).unwrap();
//! assert_eq!(sample.pairs.len(), 500);
//! ```

mod angle;
mod error;

pub mod circ_dist;
pub mod copula;
pub mod dependence;
pub mod joint;
pub mod sampling;

pub use angle::{Angle, UnitValue};
pub use error::Error;

/// Keeps the guide's code snippets compiling: each chapter of the book
/// is attached here as documentation, so its fenced Rust blocks run
/// under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/distributions.md")]
    pub struct Distributions;

    #[doc = include_str!("../../../book/src/copulas.md")]
    pub struct Copulas;

    #[doc = include_str!("../../../book/src/shifts.md")]
    pub struct Shifts;

    #[doc = include_str!("../../../book/src/sampling.md")]
    pub struct Sampling;

    #[doc = include_str!("../../../book/src/dependence.md")]
    pub struct Dependence;
}
