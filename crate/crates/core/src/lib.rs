//! Laplace maps of sampled curves and surfaces in Euclidean space.
//!
//! The numerical core is generic over the scalar (`f32` or `f64`); the aliases
//! at the crate root fix it to `f64`.

pub mod error;
pub mod fit;
pub mod fourier;
pub mod frenet;
pub mod generators;
pub mod geometry;
pub mod grid;
pub mod immersion;
pub mod laplace;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod stencil;
pub mod tol;

pub use error::{GeoError, Result};
pub use scalar::Real;
pub use tol::{FdOrder, Settings, Tolerances};

pub type Grid = grid::Grid<f64>;
pub type Axis = grid::Axis<f64>;
pub type Immersion = immersion::SampledImmersion<f64>;
pub type Fields = geometry::GeometryFields<f64>;
