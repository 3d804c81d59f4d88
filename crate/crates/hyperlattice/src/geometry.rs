//! Poincaré-disk primitives.
//!
//! The hyperbolic plane is modeled on the open unit disk 𝔻 = {z ∈ ℂ, |z| < 1}
//! with metric ds² = (dx² + dy²)/(1 − |z|²)². Distances are
//!
//!   d(z, z') = ½ arcosh(1 + 2|z − z'|² / ((1 − |z|²)(1 − |z'|²)))
//!            = artanh |(z − z')/(1 − z̄' z)|,
//!
//! and the orientation-preserving isometries are the conformal automorphisms
//! w(z) = e^{iη} (a − z)/(1 − z ā). Everything downstream (lattice generation,
//! Laplace–Beltrami spectra, Green functions) is built on these few maps.

use num_complex::Complex64;
use thiserror::Error;

/// Largest admissible |z|; construction closer to the unit circle is rejected
/// so the conformal factor (1 − |z|²)² cannot underflow.
pub const MAX_RADIUS: f64 = 1.0 - 1e-15;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("point with |z| = {0} is not strictly inside the unit disk")]
    OutsideDisk(f64),
    #[error("radius {0} is outside [0, 1)")]
    InvalidRadius(f64),
}

/// A point strictly inside the Poincaré disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self, GeometryError> {
        if !(z.norm() < MAX_RADIUS) {
            return Err(GeometryError::OutsideDisk(z.norm()));
        }
        Ok(DiskPoint(z))
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self, GeometryError> {
        Self::new(Complex64::new(re, im))
    }

    pub fn from_polar(r: f64, phi: f64) -> Result<Self, GeometryError> {
        if !(0.0..1.0).contains(&r) {
            return Err(GeometryError::InvalidRadius(r));
        }
        Self::new(Complex64::from_polar(r, phi))
    }

    pub const fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn radius(&self) -> f64 {
        self.0.norm()
    }

    pub fn angle(&self) -> f64 {
        self.0.arg()
    }
}

/// Conformal automorphism w(z) = e^{iη} (a − z)/(1 − z ā).
///
/// Swaps `a` with the origin; with η = 0 it is an involution.
#[derive(Debug, Clone, Copy)]
pub struct Automorphism {
    pub a: DiskPoint,
    pub eta: f64,
}

impl Automorphism {
    pub fn new(a: DiskPoint, eta: f64) -> Self {
        Automorphism { a, eta }
    }

    /// Centering map at `a` (η = 0), the involution exchanging `a` and 0.
    pub fn centering(a: DiskPoint) -> Self {
        Automorphism { a, eta: 0.0 }
    }

    pub fn apply(&self, z: DiskPoint) -> DiskPoint {
        let a = self.a.z();
        let w = (a - z.z()) / (Complex64::new(1.0, 0.0) - z.z() * a.conj());
        let w = Complex64::from_polar(1.0, self.eta) * w;
        // An isometry cannot leave the disk; clamp only guards rounding at the rim.
        DiskPoint(if w.norm() >= MAX_RADIUS {
            w * (MAX_RADIUS / w.norm())
        } else {
            w
        })
    }
}

/// Hyperbolic distance between two disk points.
///
/// Uses the arcosh form except for nearly coincident points, where
/// arcosh(1 + ε) loses half the significant digits and the artanh of the
/// Möbius cross-ratio is exact.
pub fn hyp_distance(z: DiskPoint, zp: DiskPoint) -> f64 {
    let (a, b) = (z.z(), zp.z());
    let diff = (a - b).norm();
    if diff == 0.0 {
        return 0.0;
    }
    if diff < 1e-8 {
        let t = (a - b).norm() / (Complex64::new(1.0, 0.0) - b.conj() * a).norm();
        return t.atanh();
    }
    let u = 2.0 * diff * diff / ((1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr()));
    0.5 * (1.0 + u).acosh()
}

/// The invariant ρ(r) = (1 + r²)/(1 − r²) = cosh(2 d(0, r)).
///
/// This is the natural argument of the Legendre functions in the radial
/// problems on the disk.
pub fn rho_invariant(r: f64) -> Result<f64, GeometryError> {
    if !(0.0..1.0).contains(&r) {
        return Err(GeometryError::InvalidRadius(r));
    }
    Ok((1.0 + r * r) / (1.0 - r * r))
}

/// ρ as a function of a disk point's radius.
pub fn rho_of_point(z: DiskPoint) -> f64 {
    let r2 = z.z().norm_sqr();
    (1.0 + r2) / (1.0 - r2)
}

/// Conformal factor (1 − |z|²)² relating the Euclidean and hyperbolic metrics;
/// the hyperbolic Laplacian is Δ_g = (1 − |z|²)² (∂_x² + ∂_y²).
pub fn metric_factor(z: DiskPoint) -> f64 {
    let f = 1.0 - z.z().norm_sqr();
    f * f
}

/// cosh(2 d(z, z')), the pairwise invariant used by the closed-form Green
/// functions: y = 1 + 2|z − z'|²/((1 − |z|²)(1 − |z'|²)).
pub fn pair_invariant(z: DiskPoint, zp: DiskPoint) -> f64 {
    let (a, b) = (z.z(), zp.z());
    1.0 + 2.0 * (a - b).norm_sqr() / ((1.0 - a.norm_sqr()) * (1.0 - b.norm_sqr()))
}
