//! Quadrature on the hyperbolic disk.
//!
//! The invariant volume element factorizes as dV_g = ¼ dρ dφ in the
//! coordinates (ρ, φ) with ρ = (1+r²)/(1−r²), so radial integrals use
//! Gauss–Legendre nodes in ρ (the measure is handled exactly) and the
//! angular direction uses the periodic trapezoid rule. Orders double until
//! two successive refinements agree.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::geometry::DiskPoint;

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("quadrature did not converge to {tol:e} (last refinement changed by {change:e})")]
    NoConvergence { tol: f64, change: f64 },
    #[error("invalid integration radius {0}")]
    InvalidRadius(f64),
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// r(ρ) = √((ρ−1)/(ρ+1)).
pub fn radius_from_rho(rho: f64) -> f64 {
    ((rho - 1.0) / (rho + 1.0)).sqrt()
}

fn rho_max(l: f64) -> f64 {
    (1.0 + l * l) / (1.0 - l * l)
}

fn grid_integral(
    f: &dyn Fn(DiskPoint) -> Complex64,
    l: f64,
    n_r: usize,
    n_phi: usize,
) -> Complex64 {
    let (nodes, weights) = gauss_legendre(n_r);
    let (a, b) = (1.0, rho_max(l));
    let mut total = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights) {
        let rho = 0.5 * (b - a) * x + 0.5 * (a + b);
        let r = radius_from_rho(rho);
        let mut ring = Complex64::new(0.0, 0.0);
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            let z = DiskPoint::from_polar(r, phi).expect("r < L < 1");
            ring += f(z);
        }
        total += w * ring * (2.0 * PI / n_phi as f64);
    }
    total * 0.25 * 0.5 * (b - a)
}

/// ∫_{|z|≤L} dV_g f(z) to the requested tolerance by order doubling.
pub fn disk_integral(
    f: &dyn Fn(DiskPoint) -> Complex64,
    l: f64,
    tol: f64,
) -> Result<Complex64, QuadratureError> {
    if !(0.0..1.0).contains(&l) {
        return Err(QuadratureError::InvalidRadius(l));
    }
    let (mut n_r, mut n_phi) = (16usize, 32usize);
    let mut prev = grid_integral(f, l, n_r, n_phi);
    for _ in 0..8 {
        n_r *= 2;
        n_phi *= 2;
        let cur = grid_integral(f, l, n_r, n_phi);
        let change = (cur - prev).norm();
        if change <= tol * (1.0 + cur.norm()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(QuadratureError::NoConvergence {
        tol,
        change: f64::NAN,
    })
}

/// Radial integral 2π ∫_0^L f(r) r dr/(1−r²)² = (π/2) ∫_1^{ρ_L} f(r(ρ)) dρ.
pub fn radial_hyperbolic_integral(
    f: &dyn Fn(f64) -> f64,
    l: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    if !(0.0..1.0).contains(&l) {
        return Err(QuadratureError::InvalidRadius(l));
    }
    let (a, b) = (1.0, rho_max(l));
    let eval = |n: usize| -> f64 {
        let (nodes, weights) = gauss_legendre(n);
        let mut total = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            let rho = 0.5 * (b - a) * x + 0.5 * (a + b);
            total += w * f(radius_from_rho(rho));
        }
        total * 0.5 * (b - a) * PI / 2.0
    };
    let mut n = 24;
    let mut prev = eval(n);
    for _ in 0..8 {
        n *= 2;
        let cur = eval(n);
        if (cur - prev).abs() <= tol * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(QuadratureError::NoConvergence {
        tol,
        change: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        // degree ≤ 15 is exact for n = 8
        let value: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * (x.powi(10) + 3.0 * x.powi(3)))
            .sum();
        assert!((value - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn hyperbolic_disk_volume() {
        // ∫ dV_g over |z| ≤ L is πL²/(1−L²)
        let l = 0.894f64;
        let vol = disk_integral(&|_| Complex64::new(1.0, 0.0), l, 1e-12).unwrap();
        let expect = PI * l * l / (1.0 - l * l);
        assert!((vol.re - expect).abs() < 1e-9 * expect);
        assert!(vol.im.abs() < 1e-12);
    }

    #[test]
    fn radial_form_matches_two_dimensional_form() {
        let l = 0.745;
        let f = |r: f64| 1.0 / ((1.0 + r * r) / (1.0 - r * r)).powi(2);
        let radial = radial_hyperbolic_integral(&f, l, 1e-12).unwrap();
        let full = disk_integral(
            &|z| Complex64::new(f(z.radius()), 0.0),
            l,
            1e-12,
        )
        .unwrap();
        assert!((radial - full.re).abs() < 1e-10 * radial.abs());
    }
}
