//! Midpoint iteration of planar polygons.
//!
//! * [`exact_poly`]: exact rational polygons, the midpoint map and the
//!   shoelace quantities (signed area, `Z` moment, centroid).
//! * [`spectral`]: discrete Fourier modes, eigenvalues of the midpoint map and
//!   the modal formulas for `Z`, the area and the hexagon centroid orbit.
//! * [`verify`]: exact colinearity checks for hexagon centroids, small-`m`
//!   invariance, the `m = 5` / `m ≥ 7` counterexamples and a seeded campaign.
//! * [`cli`]: document I/O, JSON reports and SVG figures.

pub mod cli;
pub mod error;
pub mod exact_poly;
pub mod rational;
pub mod spectral;
pub mod verify;

pub use error::{GeometryError, ParseError};
pub use exact_poly::{PlanePoint, Polygon};
pub use rational::Rational;
pub use spectral::{ComplexValue, FloatPolygon, ModeVector};
