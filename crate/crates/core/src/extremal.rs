//! Closed-form extremal functions: the moduli surface of admissible
//! lattices, critical determinants of balls and their 2^m scalings, packing
//! densities, Hermite and Diophantine constants, hexagon area minima, and
//! the domain classification by exponent.

use crate::error::{Error, Result};
use crate::scalar::{ball_area, delta_branch_one, delta_branch_sigma, find_p0, tau_of_sigma};

/// A point of the moduli surface: the determinant of the admissible lattice
/// with boundary parameters (tau, sigma) at exponent p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliPoint {
    pub p: f64,
    pub sigma: f64,
    pub tau: f64,
    pub delta: f64,
}

/// Domain class of a scaled ball 2^m D_p by exponent range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainClass {
    /// 1 <= p < 2.
    Watson,
    /// 2 <= p < p0.
    Davis,
    /// p >= p0.
    ChebyshevMordell,
}

impl std::fmt::Display for DomainClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainClass::Watson => write!(f, "Watson"),
            DomainClass::Davis => write!(f, "Davis"),
            DomainClass::ChebyshevMordell => write!(f, "ChebyshevMordell"),
        }
    }
}

/// Which piece of the piecewise critical determinant applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The sigma = 1 family: 4^(-1/p) (1 + tau_p) / (1 - tau_p).
    SigmaOne,
    /// The sigma = sigma_p family: sigma_p / 2.
    SigmaMax,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::SigmaOne => write!(f, "sigma=1"),
            Branch::SigmaMax => write!(f, "sigma=sigma_p"),
        }
    }
}

/// Evaluate the moduli surface at (p, sigma):
/// delta = (tau + sigma) (1 + tau^p)^(-1/p) (1 + sigma^p)^(-1/p)
/// with tau the paired boundary parameter.
pub fn delta_moduli(p: f64, sigma: f64) -> Result<ModuliPoint> {
    let tau = tau_of_sigma(p, sigma)?;
    let delta =
        (tau + sigma) * (1.0 + tau.powf(p)).powf(-1.0 / p) * (1.0 + sigma.powf(p)).powf(-1.0 / p);
    Ok(ModuliPoint { p, sigma, tau, delta })
}

/// The branch of the critical determinant that applies at p (the
/// sigma = sigma_p piece on [2, p0], the sigma = 1 piece elsewhere).
pub fn critical_branch(p: f64) -> Result<Branch> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("critical determinant requires p > 1, got {p}")));
    }
    let p0 = find_p0()?;
    if (2.0..=p0).contains(&p) {
        Ok(Branch::SigmaMax)
    } else {
        Ok(Branch::SigmaOne)
    }
}

/// The critical determinant of the unit ball: the smaller of the two branch
/// values, selected piecewise in p. At p = 2 and p = p0 the branches agree.
pub fn critical_determinant(p: f64) -> Result<f64> {
    match critical_branch(p)? {
        Branch::SigmaMax => delta_branch_sigma(p),
        Branch::SigmaOne => delta_branch_one(p),
    }
}

/// The critical determinant of the scaled ball 2^m D_p: 4^m times the unit
/// value, with the same branch structure.
pub fn critical_determinant_scaled(p: f64, m: u32) -> Result<f64> {
    Ok(4f64.powi(m as i32) * critical_determinant(p)?)
}

/// Classify the scaled ball 2^m D_p by exponent. Accepts p = 1 (the boundary
/// of the first class); requires m >= 1.
pub fn classify_domain(p: f64, m: u32) -> Result<DomainClass> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("classification requires p >= 1, got {p}")));
    }
    if m < 1 {
        return Err(Error::domain("classification requires m >= 1".to_string()));
    }
    if p < 2.0 {
        Ok(DomainClass::Watson)
    } else if p < find_p0()? {
        Ok(DomainClass::Davis)
    } else {
        Ok(DomainClass::ChebyshevMordell)
    }
}

/// Optimal lattice packing density of the unit ball: area / (4 delta).
/// Translates of D_p packed by a lattice admissible for 2 D_p.
pub fn packing_density(p: f64) -> Result<f64> {
    Ok(ball_area(p)? / critical_determinant_scaled(p, 1)?)
}

/// The two-dimensional Hermite constant of the p-norm distance function,
/// taken with the first power of the minimum: delta^(-1/2).
///
/// The classical squared-form convention, delta^(-1), is exposed separately
/// as [`hermite_constant_2d_squared`].
pub fn hermite_constant_2d(p: f64) -> Result<f64> {
    Ok(critical_determinant(p)?.powf(-0.5))
}

/// The squared-form convention of the Hermite constant: delta^(-1).
pub fn hermite_constant_2d_squared(p: f64) -> Result<f64> {
    Ok(critical_determinant(p)?.recip())
}

/// The optimal universal constant in the binary form inequality
/// |ax + by|^p + |cx + dy|^p <= c |det|^(p/2): delta^(-p/2).
pub fn diophantine_constant(p: f64) -> Result<f64> {
    Ok(critical_determinant(p)?.powf(-0.5 * p))
}

/// Area of the inscribed hexagon of the admissible lattice at (p, sigma):
/// exactly 3x the moduli determinant.
pub fn hexagon_area_moduli(p: f64, sigma: f64) -> Result<f64> {
    Ok(3.0 * delta_moduli(p, sigma)?.delta)
}

/// Minimal area over hexagons inscribed in the unit ball: 3 delta.
pub fn min_inscribed_hexagon_area(p: f64) -> Result<f64> {
    Ok(3.0 * critical_determinant(p)?)
}

/// Minimal area over hexagons circumscribed about the unit ball: 4 delta.
pub fn min_circumscribed_hexagon_area(p: f64) -> Result<f64> {
    Ok(4.0 * critical_determinant(p)?)
}
