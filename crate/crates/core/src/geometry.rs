//! Planar Minkowski balls, rank-2 lattices, admissibility, arithmetic
//! minima, shells, and the two canonical families of critical lattices.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{sigma_p, tau_p};

/// Relative slack applied when testing membership of boundary points; keeps
/// points that sit exactly on a curve from being dropped by rounding.
const BOUNDARY_SLACK: f64 = 1e-9;

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// The p-norm (|x|^p + |y|^p)^(1/p). Requires p >= 1.
    pub fn norm_p(&self, p: f64) -> f64 {
        self.norm_p_pow(p).powf(1.0 / p)
    }

    /// The p-th power of the p-norm: |x|^p + |y|^p.
    pub fn norm_p_pow(&self, p: f64) -> f64 {
        self.x.abs().powf(p) + self.y.abs().powf(p)
    }

    pub fn dot(&self, other: &Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm2_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, t: f64) -> Point2 {
        Point2::new(t * self.x, t * self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A scaled Minkowski ball: the body 2^m * {|x|^p + |y|^p < 1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    p: f64,
    m: u32,
}

impl Ball {
    /// Requires p >= 1; the body is convex and centrally symmetric for all
    /// valid (p, m).
    pub fn new(p: f64, m: u32) -> Result<Ball> {
        if !(p >= 1.0) {
            return Err(Error::domain(format!("ball requires p >= 1, got {p}")));
        }
        Ok(Ball { p, m })
    }

    /// The unit ball (m = 0).
    pub fn unit(p: f64) -> Result<Ball> {
        Ball::new(p, 0)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Linear scale factor 2^m.
    pub fn scale(&self) -> f64 {
        2f64.powi(self.m as i32)
    }
}

/// A rank-2 lattice given by two basis vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice2 {
    pub a1: Point2,
    pub a2: Point2,
}

impl Lattice2 {
    pub fn new(a1: Point2, a2: Point2) -> Self {
        Lattice2 { a1, a2 }
    }

    /// |det(a1, a2)|. Errors on a degenerate basis.
    pub fn det(&self) -> Result<f64> {
        let d = (self.a1.x * self.a2.y - self.a1.y * self.a2.x).abs();
        if d == 0.0 {
            return Err(Error::DegenerateLattice);
        }
        Ok(d)
    }

    /// The lattice scaled by t.
    pub fn scaled(&self, t: f64) -> Lattice2 {
        Lattice2::new(self.a1.scale(t), self.a2.scale(t))
    }

    /// Lagrange-Gauss reduction: an equivalent basis with the Euclidean
    /// shortest vector first and the second vector size-reduced against it.
    pub fn reduce(&self) -> Result<Lattice2> {
        self.det()?;
        let (mut b1, mut b2) = (self.a1, self.a2);
        if b1.norm2_sq() > b2.norm2_sq() {
            std::mem::swap(&mut b1, &mut b2);
        }
        for _ in 0..64 {
            let mu = (b2.dot(&b1) / b1.norm2_sq()).round();
            if mu != 0.0 {
                let shorter = b2 - b1.scale(mu);
                // At a half-integer projection the swap would oscillate;
                // only take the step when it strictly shortens.
                if shorter.norm2_sq() < b2.norm2_sq() {
                    b2 = shorter;
                }
            }
            if b2.norm2_sq() < b1.norm2_sq() {
                std::mem::swap(&mut b1, &mut b2);
            } else {
                break;
            }
        }
        Ok(Lattice2::new(b1, b2))
    }

    /// All nonzero lattice points with p-norm <= radius (up to a 1e-9
    /// relative slack for boundary points), each listed once, sorted by
    /// (x, y). The integer coefficient box comes from the reduced basis with
    /// a 1.5 safety factor.
    pub fn points_within(&self, radius: f64, p: f64) -> Result<Vec<Point2>> {
        if !(radius > 0.0) {
            return Err(Error::domain(format!("radius must be positive, got {radius}")));
        }
        let red = self.reduce()?;
        let (b1, b2) = (red.a1, red.a2);
        let mu = b2.dot(&b1) / b1.norm2_sq();
        let b2_star = b2 - b1.scale(mu);

        // Euclidean radius covering the p-ball: ||v||_2 <= 2^(1/2-1/p) ||v||_p
        // for p >= 2 and ||v||_2 <= ||v||_p for p <= 2.
        let cover = if p >= 2.0 { 2f64.powf(0.5 - 1.0 / p) } else { 1.0 };
        let r2 = 1.5 * cover * radius;
        let j_half = r2 / b2_star.norm2_sq().sqrt();
        let i_half = r2 / b1.norm2_sq().sqrt();
        if (2.0 * j_half + 1.0) * (2.0 * i_half + 3.0) > 2e8 {
            return Err(Error::domain(
                "enumeration box too large for the given radius and basis".to_string(),
            ));
        }
        let j_max = j_half.floor() as i64 + 1;

        let inclusion = radius * (1.0 + BOUNDARY_SLACK);
        let mut points = Vec::new();
        for j in -j_max..=j_max {
            let center = -(j as f64) * mu;
            let i_lo = (center - i_half).floor() as i64 - 1;
            let i_hi = (center + i_half).ceil() as i64 + 1;
            for i in i_lo..=i_hi {
                if i == 0 && j == 0 {
                    continue;
                }
                let v = b1.scale(i as f64) + b2.scale(j as f64);
                if v.norm_p(p) <= inclusion {
                    points.push(v);
                }
            }
        }
        points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        Ok(points)
    }

    /// Minimum p-norm over nonzero lattice points.
    pub fn arithmetic_minimum(&self, p: f64) -> Result<f64> {
        let red = self.reduce()?;
        let bound = red.a1.norm_p(p).min(red.a2.norm_p(p));
        let candidates = self.points_within(bound, p)?;
        Ok(candidates
            .iter()
            .map(|v| v.norm_p(p))
            .fold(f64::INFINITY, f64::min))
    }

    /// True iff no nonzero lattice point lies strictly inside the ball,
    /// i.e. the arithmetic minimum is >= 2^m (1 - tol).
    pub fn is_admissible(&self, ball: &Ball, tol: f64) -> Result<bool> {
        let min = self.arithmetic_minimum(ball.p())?;
        Ok(min >= ball.scale() * (1.0 - tol))
    }

    /// All lattice points with |x|^p + |y|^p within tol of level^p, in +/-
    /// pairs, sorted by (x, y).
    pub fn shell(&self, p: f64, level: f64, tol: f64) -> Result<Shell> {
        if !(level > 0.0) {
            return Err(Error::domain(format!("shell level must be positive, got {level}")));
        }
        let target = level.powf(p);
        let candidates = self.points_within(level * (1.0 + 1e-6), p)?;
        let points: Vec<Point2> = candidates
            .into_iter()
            .filter(|v| (v.norm_p_pow(p) - target).abs() <= tol)
            .collect();
        Ok(Shell {
            points,
            norm_value: target,
        })
    }
}

/// The set of lattice points on a fixed Minkowski curve: every point
/// satisfies |x|^p + |y|^p = norm_value to the tolerance used to build it.
#[derive(Debug, Clone)]
pub struct Shell {
    /// Points on the curve, closed under negation, sorted by (x, y).
    pub points: Vec<Point2>,
    /// The shared value of |x|^p + |y|^p (that is, level^p).
    pub norm_value: f64,
}

impl Shell {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when the point set is closed under negation.
    pub fn is_negation_closed(&self, tol: f64) -> bool {
        self.points.iter().all(|&q| {
            self.points
                .iter()
                .any(|&r| (r.x + q.x).abs() <= tol && (r.y + q.y).abs() <= tol)
        })
    }
}

/// The critical lattice normalized by containing (1, 0): spanned by (1, 0)
/// and (1/2, sigma_p/2). Its determinant is sigma_p/2.
pub fn critical_lattice_0(p: f64) -> Result<Lattice2> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("critical lattice requires p > 1, got {p}")));
    }
    let s = sigma_p(p)?;
    Ok(Lattice2::new(Point2::new(1.0, 0.0), Point2::new(0.5, 0.5 * s)))
}

/// The critical lattice normalized by containing (-2^(-1/p), 2^(-1/p)):
/// spanned by that vector and (1 + tau_p^p)^(-1/p) (1, tau_p). Both basis
/// vectors and their sum lie on the unit curve; the determinant is
/// 4^(-1/p) (1 + tau_p) / (1 - tau_p).
pub fn critical_lattice_1(p: f64) -> Result<Lattice2> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("critical lattice requires p > 1, got {p}")));
    }
    let half = 2f64.powf(-1.0 / p);
    let t = tau_p(p)?;
    let u = (1.0 + t.powf(p)).powf(-1.0 / p);
    Ok(Lattice2::new(
        Point2::new(-half, half),
        Point2::new(u, u * t),
    ))
}
