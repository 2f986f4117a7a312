//! Theta-series coefficients of lattice quadratic forms, integer-point
//! counts on dilated Minkowski curves, and the genus of the even-exponent
//! algebraic curves.

use crate::error::{Error, Result};
use crate::geometry::Lattice2;

/// A binary quadratic form Q(x, y) = a x^2 + b xy + c y^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GramForm {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        GramForm { a, b, c }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0.0 && 4.0 * self.a * self.c - self.b * self.b > 0.0
    }

    pub fn eval(&self, x: i64, y: i64) -> f64 {
        let (x, y) = (x as f64, y as f64);
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Smaller eigenvalue of the associated symmetric matrix; positive for
    /// positive definite forms and a lower bound Q(x,y) >= lambda (x^2+y^2).
    pub fn min_eigenvalue(&self) -> f64 {
        let half_trace = 0.5 * (self.a + self.c);
        let disc = (0.25 * (self.a - self.c) * (self.a - self.c) + 0.25 * self.b * self.b).sqrt();
        half_trace - disc
    }
}

/// The Euclidean Gram form of a lattice basis: a = <a1,a1>, b = 2<a1,a2>,
/// c = <a2,a2>, so that Q(x, y) = ||x a1 + y a2||^2.
pub fn gram_of_lattice(lat: &Lattice2) -> Result<GramForm> {
    lat.det()?;
    Ok(GramForm::new(
        lat.a1.dot(&lat.a1),
        2.0 * lat.a1.dot(&lat.a2),
        lat.a2.dot(&lat.a2),
    ))
}

/// The first coefficients N_0..N_max of the theta series of a form: N_m is
/// the number of integer pairs representing m. N_0 = 1 and every later
/// coefficient is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPrefix {
    pub coefficients: Vec<u64>,
}

impl ThetaPrefix {
    pub fn max_index(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Representation counts of 0..=m_max by a positive definite form.
///
/// Enumerates the box |x|, |y| <= ceil(sqrt(m_max / lambda_min)), which is
/// complete because Q(x,y) >= lambda_min (x^2 + y^2). Values are snapped to
/// the nearest integer with relative tolerance 1e-9, so forms recovered from
/// floating-point bases count exactly like their integer counterparts.
pub fn theta_coefficients(form: &GramForm, m_max: usize) -> Result<ThetaPrefix> {
    if !form.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let lambda = form.min_eigenvalue();
    let bound = (m_max as f64 / lambda).sqrt().ceil() as i64;
    if (2 * bound + 1).pow(2) > 200_000_000 {
        return Err(Error::domain(
            "theta enumeration box too large for the given form".to_string(),
        ));
    }
    let mut coeffs = vec![0u64; m_max + 1];
    for x in -bound..=bound {
        for y in -bound..=bound {
            let q = form.eval(x, y);
            let m = q.round();
            if (q - m).abs() <= 1e-9 * q.abs().max(1.0) && m >= 0.0 && m <= m_max as f64 {
                coeffs[m as usize] += 1;
            }
        }
    }
    Ok(ThetaPrefix { coefficients: coeffs })
}

/// Number of integer points within relative tolerance tol of the curve
/// |x|^p + |y|^p = N^p.
///
/// For p = 1, p = 2, and even integer p the count is done in exact integer
/// arithmetic (tol is ignored); otherwise membership is tested as
/// | (|x|^p + |y|^p)^(1/p) - N | <= tol * N.
pub fn count_points_on_dilate(p: f64, n: u64, tol: f64) -> Result<u64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("counting requires p >= 1, got {p}")));
    }
    if n == 0 {
        return Err(Error::domain("dilation factor must be >= 1".to_string()));
    }
    if !(0.0..1.0).contains(&tol) {
        return Err(Error::domain(format!("tolerance must be in [0, 1), got {tol}")));
    }
    let is_integer = p.fract() == 0.0 && p <= 60.0;
    if is_integer && (p == 1.0 || p == 2.0 || (p as u64) % 2 == 0) {
        return count_exact(p as u32, n);
    }
    Ok(count_with_tolerance(p, n, tol))
}

/// Exact count of solutions of |x|^p + |y|^p = n^p over the integers.
fn count_exact(p: u32, n: u64) -> Result<u64> {
    let target = (n as u128)
        .checked_pow(p)
        .ok_or_else(|| Error::domain(format!("{n}^{p} overflows the exact counter")))?;
    let mut count = 0u64;
    for x in 0..=n {
        let xp = (x as u128).pow(p);
        let rest = target - xp;
        if let Some(y) = integer_root(rest, p) {
            count += multiplicity(x, y);
        }
    }
    Ok(count)
}

/// The y >= 0 with y^p == value, if it exists.
fn integer_root(value: u128, p: u32) -> Option<u64> {
    if value == 0 {
        return Some(0);
    }
    let guess = (value as f64).powf(1.0 / p as f64).round() as u64;
    for y in guess.saturating_sub(1)..=guess + 1 {
        if (y as u128).checked_pow(p) == Some(value) {
            return Some(y);
        }
    }
    None
}

fn multiplicity(x: u64, y: u64) -> u64 {
    let sx = if x > 0 { 2 } else { 1 };
    let sy = if y > 0 { 2 } else { 1 };
    sx * sy
}

fn count_with_tolerance(p: f64, n: u64, tol: f64) -> u64 {
    let n_f = n as f64;
    let hi_pow = (n_f * (1.0 + tol)).powf(p);
    let lo_pow = (n_f * (1.0 - tol)).powf(p);
    let x_max = (n_f * (1.0 + tol)).ceil() as u64;
    let mut count = 0u64;
    for x in 0..=x_max {
        let xp = (x as f64).powf(p);
        let y_hi = if hi_pow > xp { (hi_pow - xp).powf(1.0 / p) } else { 0.0 };
        let y_lo = if lo_pow > xp { (lo_pow - xp).powf(1.0 / p) } else { 0.0 };
        let y_first = (y_lo.floor() as i64 - 1).max(0) as u64;
        let y_last = y_hi.ceil() as u64 + 1;
        for y in y_first..=y_last {
            let norm = (xp + (y as f64).powf(p)).powf(1.0 / p);
            if (norm - n_f).abs() <= tol * n_f {
                count += multiplicity(x, y);
            }
        }
    }
    count
}

/// Leading term of the Jarnik bound for integer points on a convex curve of
/// the given length: 3 (4 pi)^(-1/3) length^(2/3). Requires length > 3.
pub fn jarnik_main_term(length: f64) -> Result<f64> {
    if !(length > 3.0) {
        return Err(Error::domain(format!("Jarnik bound requires length > 3, got {length}")));
    }
    Ok(3.0 * (4.0 * std::f64::consts::PI).powf(-1.0 / 3.0) * length.powf(2.0 / 3.0))
}

/// Genus of the projectivized curve x^(2d) + y^(2d) = z^(2d): (2d-1)(d-1).
pub fn genus(d: u64) -> Result<u64> {
    if d < 1 {
        return Err(Error::domain("genus requires d >= 1".to_string()));
    }
    Ok((2 * d - 1) * (d - 1))
}
