//! Extremal lattice quantities of planar Minkowski balls |x|^p + |y|^p < 1.
//!
//! The crate computes the closed-form extremal functions attached to these
//! bodies and their 2^m scalings: critical determinants and critical
//! lattices with their shells, optimal packing densities, Hermite and
//! Diophantine constants, minimal areas of inscribed and circumscribed
//! hexagons, theta-series coefficients, and integer-point counts on dilated
//! curves. Every closed form is certified by an independent brute-force
//! search over admissible lattices with three pairs of boundary points.
//!
//! Module map:
//!
//! - [`scalar`] - root finding, quadrature, and the sigma/tau parameters
//! - [`geometry`] - balls, lattices, admissibility, shells, critical lattices
//! - [`extremal`] - the moduli surface and all closed-form extremal functions
//! - [`counting`] - theta coefficients, point counts, genus
//! - [`oracle`] - the grid-search verification engine

pub mod counting;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod oracle;
pub mod scalar;

pub use counting::{GramForm, ThetaPrefix};
pub use error::{Error, Result};
pub use extremal::{Branch, DomainClass, ModuliPoint};
pub use geometry::{Ball, Lattice2, Point2, Shell};
pub use oracle::{SearchCertificate, VerifyReport};
