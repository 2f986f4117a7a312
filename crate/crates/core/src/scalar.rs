//! Scalar kernels: bracketed root finding, adaptive quadrature, and the
//! closed-form scalar parameters (sigma, tau, the branch crossover exponent)
//! that every extremal formula is built from.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Iteration cap for bracketed root solves.
pub const MAX_ROOT_ITER: usize = 200;

/// A one-dimensional root problem on a sign-changing bracket.
pub struct RootProblem<F> {
    /// Function whose root is sought. Must be continuous on the bracket.
    pub objective: F,
    /// Left end of the bracket.
    pub bracket_lo: f64,
    /// Right end of the bracket.
    pub bracket_hi: f64,
    /// Absolute tolerance on the argument; must be positive.
    pub tolerance: f64,
}

/// Solve a bracketed root problem by bisection with secant acceleration.
///
/// The bracket invariant (opposite signs at the ends, or an exact zero at an
/// end) is checked up front. A secant step is taken whenever it lands inside
/// the current bracket; a bisection step is forced whenever the previous step
/// failed to halve the bracket, so the width at least halves every other
/// iteration. Deterministic for fixed inputs.
pub fn solve_root<F: Fn(f64) -> f64>(problem: RootProblem<F>) -> Result<f64> {
    let RootProblem {
        objective: f,
        bracket_lo: mut lo,
        bracket_hi: mut hi,
        tolerance: tol,
    } = problem;

    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    if !(lo < hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }

    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }

    let mut force_bisect = false;
    for _ in 0..MAX_ROOT_ITER {
        let width = hi - lo;
        if width <= tol {
            return Ok(0.5 * (lo + hi));
        }

        let mid = 0.5 * (lo + hi);
        let x = if force_bisect {
            mid
        } else {
            let secant = hi - f_hi * width / (f_hi - f_lo);
            if secant > lo && secant < hi {
                secant
            } else {
                mid
            }
        };

        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::domain(format!("objective is not finite at {x}")));
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == (f_lo > 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        force_bisect = (hi - lo) > 0.5 * width;
    }
    Err(Error::NoConvergence { max_iter: MAX_ROOT_ITER })
}

/// Argument tolerance used by the internal parameter solves.
const PARAM_TOL: f64 = 1e-14;

/// sigma parameter: (2^p - 1)^(1/p).
///
/// Defined for p >= 1; the value at p = 1 is exactly 1 and is admitted as a
/// boundary probe for counting and classification. Lies in (1, 2) for p > 1.
pub fn sigma_p(p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("sigma requires p >= 1, got {p}")));
    }
    Ok((2f64.powf(p) - 1.0).powf(1.0 / p))
}

/// tau parameter: the unique root in [0, 1) of 2(1 - t)^p = 1 + t^p.
pub fn tau_p(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("tau requires p > 1, got {p}")));
    }
    solve_root(RootProblem {
        objective: |t: f64| 2.0 * (1.0 - t).powf(p) - 1.0 - t.powf(p),
        bracket_lo: 0.0,
        bracket_hi: 1.0,
        tolerance: PARAM_TOL,
    })
}

/// The tau coordinate paired with a sigma coordinate on the moduli surface.
///
/// With A = (1 + t^p)^(-1/p) (1, t) and B = (1 + sigma^p)^(-1/p) (-1, sigma),
/// returns the t in [0, 1) for which A + B lies on the unit curve
/// |x|^p + |y|^p = 1. Endpoints: t = 0 at sigma = sigma_p, t = tau_p at
/// sigma = 1.
pub fn tau_of_sigma(p: f64, sigma: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("tau_of_sigma requires p > 1, got {p}")));
    }
    let sigma_max = sigma_p(p)?;
    // Tiny relative slack so that callers may pass a recomputed sigma_p.
    if !(sigma >= 1.0 - 1e-12 && sigma <= sigma_max * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "sigma {sigma} outside [1, {sigma_max}] for p = {p}"
        )));
    }
    let sigma = sigma.clamp(1.0, sigma_max);

    let g = third_point_residual(p, sigma);
    let g0 = g(0.0);
    if g0 >= 0.0 {
        // Happens only at sigma = sigma_p where the root sits at t = 0.
        if g0 <= 1e-12 {
            return Ok(0.0);
        }
        return Err(Error::domain(format!(
            "no boundary solution for sigma = {sigma} at p = {p}"
        )));
    }
    solve_root(RootProblem {
        objective: g,
        bracket_lo: 0.0,
        bracket_hi: 1.0,
        tolerance: PARAM_TOL,
    })
}

/// Residual of the third-shell-point condition: |A + B|_p^p - 1 as a function
/// of t, for fixed (p, sigma).
fn third_point_residual(p: f64, sigma: f64) -> impl Fn(f64) -> f64 {
    let w = (1.0 + sigma.powf(p)).powf(-1.0 / p);
    move |t: f64| {
        let u = (1.0 + t.powf(p)).powf(-1.0 / p);
        let x = u - w;
        let y = u * t + w * sigma;
        x.abs().powf(p) + y.abs().powf(p) - 1.0
    }
}

/// Determinant branch at sigma = 1: 4^(-1/p) (1 + tau_p) / (1 - tau_p).
pub(crate) fn delta_branch_one(p: f64) -> Result<f64> {
    let t = tau_p(p)?;
    Ok(4f64.powf(-1.0 / p) * (1.0 + t) / (1.0 - t))
}

/// Determinant branch at sigma = sigma_p: sigma_p / 2.
pub(crate) fn delta_branch_sigma(p: f64) -> Result<f64> {
    Ok(sigma_p(p)? / 2.0)
}

static P0: OnceLock<f64> = OnceLock::new();

/// The exponent where the two determinant branches cross, bracketed in
/// [2.57, 2.58]. Computed once and cached.
pub fn find_p0() -> Result<f64> {
    if let Some(&p0) = P0.get() {
        return Ok(p0);
    }
    let gap = |p: f64| match (delta_branch_one(p), delta_branch_sigma(p)) {
        (Ok(d1), Ok(d0)) => d1 - d0,
        _ => f64::NAN,
    };
    let p0 = solve_root(RootProblem {
        objective: gap,
        bracket_lo: 2.57,
        bracket_hi: 2.58,
        tolerance: 1e-13,
    })?;
    Ok(*P0.get_or_init(|| p0))
}

/// Area enclosed by the curve |x|^p + |y|^p = 1, i.e. the value of
/// 4 * Integral_0^1 (1 - y^p)^(1/p) dy.
///
/// Integrated as 8x the slice between the curve and the diagonal, which has a
/// smooth integrand (the direct form has a vertical tangent at y = 1).
pub fn ball_area(p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("area requires p >= 1, got {p}")));
    }
    let y_diag = 2f64.powf(-1.0 / p);
    let f = |y: f64| (1.0 - y.powf(p)).powf(1.0 / p) - y;
    Ok(8.0 * integrate(&f, 0.0, y_diag, 1e-12))
}

/// Arc length of the curve |x|^p + |y|^p = 1.
///
/// Computed as 8x the arc from the x-axis to the diagonal point
/// y = 2^(-1/p); on that piece 1 - y^p >= 1/2, so the slope integrand has no
/// endpoint singularity.
pub fn perimeter(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("perimeter requires p > 1, got {p}")));
    }
    let y_diag = 2f64.powf(-1.0 / p);
    let f = |y: f64| {
        let dxdy = y.powf(p - 1.0) * (1.0 - y.powf(p)).powf(1.0 / p - 1.0);
        (1.0 + dxdy * dxdy).sqrt()
    };
    Ok(8.0 * integrate(&f, 0.0, y_diag, 1e-10))
}

/// Adaptive Simpson quadrature with the Richardson correction term.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, fm, b, fb);
    let eps = rel_tol * whole.abs().max(1e-12);
    adapt(f, a, fa, m, fm, b, fb, whole, eps, 60)
}

fn simpson(a: f64, fa: f64, fm: f64, b: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, flm, m, fm);
    let right = simpson(m, fm, frm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1)
        + adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const P_GRID: [f64; 7] = [1.1, 1.5, 2.0, 2.5725, 3.0, 5.0, 10.0];

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual} (|diff| = {:e})",
            (actual - expected).abs()
        );
    }

    #[test]
    fn solve_root_sqrt3() {
        let r = solve_root(RootProblem {
            objective: |x: f64| x * x - 3.0,
            bracket_lo: 1.0,
            bracket_hi: 2.0,
            tolerance: 1e-12,
        })
        .unwrap();
        assert_close(r, 1.7320508075688772, 1e-12);
    }

    #[test]
    fn solve_root_odd_function() {
        let r = solve_root(RootProblem {
            objective: |x: f64| x,
            bracket_lo: -1.0,
            bracket_hi: 1.0,
            tolerance: 1e-12,
        })
        .unwrap();
        assert_close(r, 0.0, 1e-12);
    }

    #[test]
    fn solve_root_tau_quadratic() {
        // 2(1-t)^2 - (1+t^2) = 0 has the root 2 - sqrt(3) in [0, 1).
        let r = solve_root(RootProblem {
            objective: |t: f64| 2.0 * (1.0 - t) * (1.0 - t) - (1.0 + t * t),
            bracket_lo: 0.0,
            bracket_hi: 1.0,
            tolerance: 1e-12,
        })
        .unwrap();
        assert_close(r, 0.2679491924311227, 1e-12);
    }

    #[test]
    fn solve_root_rejects_same_sign_bracket() {
        let err = solve_root(RootProblem {
            objective: |x: f64| x * x + 1.0,
            bracket_lo: -1.0,
            bracket_hi: 1.0,
            tolerance: 1e-12,
        })
        .unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn solve_root_invariant_under_bracket_refinement() {
        let f = |x: f64| x * x * x - 2.0 * x - 5.0;
        let wide = solve_root(RootProblem {
            objective: f,
            bracket_lo: 0.0,
            bracket_hi: 4.0,
            tolerance: 1e-12,
        })
        .unwrap();
        let narrow = solve_root(RootProblem {
            objective: f,
            bracket_lo: 2.0,
            bracket_hi: 2.2,
            tolerance: 1e-12,
        })
        .unwrap();
        assert_close(wide, narrow, 1e-11);
    }

    #[test]
    fn sigma_examples() {
        assert_close(sigma_p(2.0).unwrap(), 1.7320508075688772, 1e-12);
        assert_close(sigma_p(1.0).unwrap(), 1.0, 0.0);
        assert_close(sigma_p(3.0).unwrap(), 1.9129311827723892, 1e-12);
        assert!(sigma_p(0.99).is_err());
    }

    #[test]
    fn sigma_stays_in_range() {
        for &p in &P_GRID {
            let s = sigma_p(p).unwrap();
            assert!(s > 1.0 && s < 2.0, "sigma({p}) = {s} out of (1,2)");
        }
    }

    #[test]
    fn tau_examples() {
        assert_close(tau_p(2.0).unwrap(), 0.2679491924311227, 1e-12);
        let t = tau_p(2.5725).unwrap();
        let residual = 2.0 * (1.0 - t).powf(2.5725) - 1.0 - t.powf(2.5725);
        assert!(residual.abs() <= 1e-10, "residual {residual:e}");
        assert!(tau_p(1.0).is_err());
    }

    #[test]
    fn tau_monotone_decreasing_and_bounded() {
        let mut grid = vec![1.05];
        let mut p = 1.5;
        while p <= 64.0 {
            grid.push(p);
            p += 2.5;
        }
        let mut prev = f64::INFINITY;
        for &p in &grid {
            let t = tau_p(p).unwrap();
            assert!((0.0..1.0).contains(&t), "tau({p}) = {t} out of [0,1)");
            assert!(t < prev, "tau not decreasing at p = {p}");
            prev = t;
        }
    }

    #[test]
    fn tau_of_sigma_endpoint_identities() {
        for &p in &P_GRID {
            let s_max = sigma_p(p).unwrap();
            let at_max = tau_of_sigma(p, s_max).unwrap();
            assert!(at_max.abs() <= 1e-10, "tau(p={p}, sigma_p) = {at_max}");
            let at_one = tau_of_sigma(p, 1.0).unwrap();
            assert_close(at_one, tau_p(p).unwrap(), 1e-10);
        }
    }

    #[test]
    fn tau_of_sigma_disk_cases() {
        let s3 = 3f64.sqrt();
        assert!(tau_of_sigma(2.0, s3).unwrap().abs() <= 1e-10);
        assert_close(tau_of_sigma(2.0, 1.0).unwrap(), 0.2679491924311227, 1e-10);
    }

    #[test]
    fn tau_of_sigma_third_point_residual() {
        let (p, sigma) = (2.5, 1.2);
        let t = tau_of_sigma(p, sigma).unwrap();
        let u = (1.0 + t.powf(p)).powf(-1.0 / p);
        let w = (1.0 + sigma.powf(p)).powf(-1.0 / p);
        let (x, y) = (u - w, u * t + w * sigma);
        let norm = (x.abs().powf(p) + y.abs().powf(p)).powf(1.0 / p);
        assert_close(norm, 1.0, 1e-10);
    }

    #[test]
    fn tau_of_sigma_domain_checks() {
        assert!(tau_of_sigma(2.0, 0.5).is_err());
        assert!(tau_of_sigma(2.0, 1.8).is_err());
        assert!(tau_of_sigma(1.0, 1.0).is_err());
    }

    #[test]
    fn p0_bracket_and_residual() {
        let p0 = find_p0().unwrap();
        assert!(p0 > 2.57 && p0 < 2.58);
        assert!((p0 - 2.5725).abs() < 5e-4);
        // Independently recomputed crossover to 15 digits.
        assert_close(p0, 2.572495154330201, 1e-9);
        let gap = delta_branch_one(p0).unwrap() - delta_branch_sigma(p0).unwrap();
        assert!(gap.abs() <= 1e-10, "branch gap {gap:e}");
    }

    #[test]
    fn area_examples() {
        assert_close(ball_area(2.0).unwrap(), PI, 1e-9);
        assert_close(ball_area(1.0).unwrap(), 2.0, 1e-11);
        // 4*Gamma(1+1/p)^2 / Gamma(1+2/p), evaluated independently.
        assert_close(ball_area(4.0).unwrap(), 3.708149354602744, 1e-9);
        assert_close(ball_area(1.5).unwrap(), 2.737853623918903, 1e-9);
        assert!(ball_area(0.5).is_err());
    }

    #[test]
    fn area_matches_direct_integral_route() {
        // Same value as adaptive quadrature applied to the literal
        // 4 * Integral_0^1 (1-y^p)^(1/p) dy despite the endpoint tangent.
        for &p in &[1.5, 2.0, 3.0] {
            let direct = 4.0 * integrate(&|y: f64| (1.0 - y.powf(p)).powf(1.0 / p), 0.0, 1.0, 1e-9);
            assert_close(ball_area(p).unwrap(), direct, 1e-6);
        }
    }

    #[test]
    fn perimeter_examples() {
        assert_close(perimeter(2.0).unwrap(), 2.0 * PI, 1e-7);
        // Near the rhombus limit 4*sqrt(2); reference value recomputed
        // independently at high precision.
        assert_close(perimeter(1.01).unwrap(), 5.657083913674439, 1e-6);
        assert!(perimeter(1.0).is_err());
    }

    #[test]
    fn perimeter_trends_to_square() {
        let p40 = perimeter(40.0).unwrap();
        assert_close(p40, 7.890599736933080, 1e-6);
        assert!(p40 < 8.0);
        assert!(perimeter(10.0).unwrap() < p40);
    }
}
