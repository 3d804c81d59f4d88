//! Legendre functions of the first and second kind on (1, ∞) for complex
//! degree ν and integer order m ≥ 0.
//!
//! Conventions. P_ν^m(x) is the standard first-kind function on the cut
//! (real for conical degrees ν = −½ + iμ and real x > 1). The second-kind
//! function used here is
//!
//!   Q_ν^m(x) = (−1)^m (x² − 1)^{m/2} (d/dx)^m Q_ν(x),
//!
//! i.e. the classical real function with the order factor chosen so the
//! Wronskian reads (1 − x²)[Q' P − Q P'] = Γ(ν+m+1)/Γ(ν−m+1). With this
//! normalization the separated Green-function formulas and the addition
//! theorem Q_ν(y) = Σ_m C_m e^{imψ} Q_ν^{|m|}(ρ_>) P_ν^{|m|}(ρ_<) hold with
//! C_m = Γ(ν−m+1)/Γ(ν+m+1).
//!
//! Evaluation. Both kinds reduce to the two Frobenius solutions at infinity,
//!
//!   w₁ = x^{ν−m} (x²−1)^{m/2} F((m−ν)/2, (m−ν+1)/2; ½−ν; x⁻²),
//!   w₂ = x^{−ν−1−m} (x²−1)^{m/2} F((ν+m+1)/2, (ν+m+2)/2; ν+3/2; x⁻²),
//!
//! whose hypergeometric series converge for every x > 1. Q is proportional
//! to w₂; P connects as c_ν w₁ + c_{−ν−1} w₂ with
//! c_ν = 2^ν Γ(ν+½)/(√π Γ(ν−m+1)). Near x = 1 (or at half-integer ν where
//! the connection degenerates) P switches to the ascending series in
//! (1−x)/2. All prefactors are carried in log space so large orders and
//! large arguments cannot overflow intermediate products.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{ln_gamma, near_gamma_pole};
use super::SpecfunError;

const SERIES_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 50_000_000;

/// A complex value stored as `factor · exp(ln_scale)` with `factor` kept O(1).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub factor: Complex64,
    pub ln_scale: f64,
}

impl Scaled {
    pub fn zero() -> Self {
        Scaled { factor: Complex64::new(0.0, 0.0), ln_scale: 0.0 }
    }

    pub fn from_value(v: Complex64) -> Self {
        Scaled { factor: v, ln_scale: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.factor.norm() == 0.0
    }

    /// Collapse to a plain complex number, reporting overflow instead of
    /// silently returning infinity.
    pub fn collapse(&self) -> Result<Complex64, SpecfunError> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let ln_mag = self.ln_scale + self.factor.norm().ln();
        if ln_mag > 705.0 {
            return Err(SpecfunError::Overflow { ln_magnitude: ln_mag });
        }
        if ln_mag < -745.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.factor * self.ln_scale.exp())
    }

    /// Natural log of the value (principal imaginary part).
    pub fn ln(&self) -> Complex64 {
        self.factor.ln() + self.ln_scale
    }

    pub fn add(&self, other: &Scaled) -> Scaled {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let s = self.ln_scale.max(other.ln_scale);
        let f = self.factor * (self.ln_scale - s).exp() + other.factor * (other.ln_scale - s).exp();
        Scaled { factor: f, ln_scale: s }
    }

    pub fn mul_complex(&self, c: Complex64) -> Scaled {
        Scaled { factor: self.factor * c, ln_scale: self.ln_scale }
    }

    pub fn mul(&self, other: &Scaled) -> Scaled {
        Scaled { factor: self.factor * other.factor, ln_scale: self.ln_scale + other.ln_scale }
    }

    pub fn div(&self, other: &Scaled) -> Scaled {
        Scaled { factor: self.factor / other.factor, ln_scale: self.ln_scale - other.ln_scale }
    }

    /// Renormalize so |factor| = 1.
    fn normalized(self) -> Scaled {
        let n = self.factor.norm();
        if n == 0.0 || !n.is_finite() {
            return self;
        }
        Scaled { factor: self.factor / n, ln_scale: self.ln_scale + n.ln() }
    }
}

/// Value and d/dx derivative of a function at a point, in scaled form.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledPair {
    pub value: Scaled,
    pub derivative: Scaled,
}

/// Gauss series F(a,b;c;u) together with dF/du.
fn hyp2f1_with_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u: f64,
) -> Result<(Complex64, Complex64), SpecfunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut small_streak = 0u32;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let denom = (c + nf) * (nf + 1.0);
        if denom.norm() < 1e-280 {
            return Err(SpecfunError::DegenerateDegree);
        }
        term = term * (a + nf) * (b + nf) / denom * u;
        sum += term;
        dsum += term * (nf + 1.0) / u;
        if term.norm() <= SERIES_TOL * sum.norm().max(1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok((sum, dsum));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecfunError::NoConvergence { terms: MAX_TERMS })
}

enum Branch {
    W1,
    W2,
}

/// One Frobenius solution at infinity, with derivative, in scaled form.
fn w_series(nu: Complex64, m: u32, x: f64, which: Branch) -> Result<ScaledPair, SpecfunError> {
    let mf = m as f64;
    let (a, b, c, e) = match which {
        Branch::W1 => (
            (mf - nu) / 2.0,
            (mf - nu + 1.0) / 2.0,
            Complex64::new(0.5, 0.0) - nu,
            nu - mf,
        ),
        Branch::W2 => (
            (nu + mf + 1.0) / 2.0,
            (nu + mf + 2.0) / 2.0,
            nu + 1.5,
            -nu - 1.0 - mf,
        ),
    };
    let u = 1.0 / (x * x);
    let (f, fp) = hyp2f1_with_derivative(a, b, c, u)?;
    // prefactor x^e (x²−1)^{m/2}, kept in log space
    let ln_pref = e * x.ln() + Complex64::new(0.5 * mf * (x * x - 1.0).ln(), 0.0);
    let phase = Complex64::from_polar(1.0, ln_pref.im);
    let g_prime = e / x + mf * x / (x * x - 1.0);
    let u_prime = -2.0 / (x * x * x);
    let value = Scaled { factor: phase * f, ln_scale: ln_pref.re }.normalized();
    let derivative = Scaled {
        factor: phase * (f * g_prime + fp * u_prime),
        ln_scale: ln_pref.re,
    };
    Ok(ScaledPair { value, derivative })
}

/// Ascending series for P_ν^m around x = 1 (argument (1−x)/2); valid for all
/// degrees, used when the connection form degenerates or x is close to 1.
fn p_forward_series(nu: Complex64, m: u32, x: f64) -> Result<ScaledPair, SpecfunError> {
    let mf = m as f64;
    let u = (1.0 - x) / 2.0;
    // ln prefactor: (x²−1)^{m/2} / (2^m m!) · Π_{j<m} (ν−j)(ν+j+1)
    let mut ln_pref = Complex64::new(
        0.5 * mf * (x * x - 1.0).ln() - mf * 2.0f64.ln(),
        0.0,
    ) - ln_gamma(Complex64::new(mf + 1.0, 0.0));
    for j in 0..m {
        let jf = j as f64;
        let factor = (nu - jf) * (nu + jf + 1.0);
        if factor.norm() < 1e-250 {
            // integer degree with order > degree: P vanishes identically
            return Ok(ScaledPair { value: Scaled::zero(), derivative: Scaled::zero() });
        }
        ln_pref += factor.ln();
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut small_streak = 0u32;
    let mut converged = false;
    for n in 0..1_000_000 {
        let nf = n as f64;
        term = term * (mf - nu + nf) * (mf + 1.0 + nu + nf) / ((nf + 1.0) * (mf + nf + 1.0)) * u;
        sum += term;
        dsum += term * (nf + 1.0) / u;
        if term.norm() <= SERIES_TOL * sum.norm().max(1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    if !converged {
        return Err(SpecfunError::NoConvergence { terms: 1_000_000 });
    }
    let phase = Complex64::from_polar(1.0, ln_pref.im);
    let value = Scaled { factor: phase * sum, ln_scale: ln_pref.re }.normalized();
    // dP/dx = pref·[S·m x/(x²−1) − S'/2]
    let extra = if m == 0 { 0.0 } else { mf * x / (x * x - 1.0) };
    let derivative = Scaled {
        factor: phase * (sum * extra - dsum / 2.0),
        ln_scale: ln_pref.re,
    };
    Ok(ScaledPair { value, derivative })
}

/// ln of the connection coefficient c_ν = 2^ν Γ(ν+½)/(√π Γ(ν−m+1)), or None
/// when the coefficient vanishes (Γ pole in the denominator).
fn ln_connection(nu: Complex64, m: u32) -> Option<Complex64> {
    let denom_arg = nu - m as f64 + 1.0;
    if near_gamma_pole(denom_arg, 1e-12) {
        return None;
    }
    Some(nu * 2.0f64.ln() + ln_gamma(nu + 0.5) - 0.5 * PI.ln() - ln_gamma(denom_arg))
}

fn scaled_from_ln(ln: Complex64) -> Scaled {
    Scaled { factor: Complex64::from_polar(1.0, ln.im), ln_scale: ln.re }
}

/// Degrees where the connection form c_ν w₁ + c_{−ν−1} w₂ degenerates:
/// real half-integer ν (log case) and the immediate vicinity of ν = −½.
fn is_degenerate_degree(nu: Complex64) -> bool {
    if nu.im.abs() > 1e-9 {
        return false;
    }
    let two_nu_plus_1 = 2.0 * nu.re + 1.0;
    if two_nu_plus_1.abs() < 2e-4 {
        return true; // ν ≈ −½: c_ν and c_{−ν−1} both blow up
    }
    let nearest_even = (two_nu_plus_1 / 2.0).round() * 2.0;
    (two_nu_plus_1 - nearest_even).abs() < 1e-9 && two_nu_plus_1.abs() > 1.5
}

fn is_conical(nu: Complex64) -> bool {
    (nu.re + 0.5).abs() < 1e-14 && nu.im != 0.0
}

/// P_ν^m(x) with derivative, scaled. Requires x ≥ 1.
pub(crate) fn legendre_p_scaled(
    nu: Complex64,
    m: u32,
    x: f64,
) -> Result<ScaledPair, SpecfunError> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(SpecfunError::ArgumentOutOfDomain { x, requires: "x >= 1" });
    }
    if x == 1.0 {
        let value = if m == 0 {
            Scaled::from_value(Complex64::new(1.0, 0.0))
        } else {
            Scaled::zero()
        };
        // P'_ν(1) = ν(ν+1)/2; for m ≥ 1 the derivative is singular at x = 1.
        let derivative = if m == 0 {
            Scaled::from_value(nu * (nu + 1.0) / 2.0)
        } else {
            Scaled::from_value(Complex64::new(f64::NAN, 0.0))
        };
        return Ok(ScaledPair { value, derivative });
    }
    let cancellation = nu.norm_sqr() * (x - 1.0) / 2.0;
    if cancellation < 0.25 && x < 2.9 {
        return p_forward_series(nu, m, x);
    }
    if is_degenerate_degree(nu) {
        if x < 2.9 {
            return p_forward_series(nu, m, x);
        }
        // Log case at large argument: average over a small degree offset.
        let delta = 1e-5;
        let lo = legendre_p_scaled(nu - delta, m, x)?;
        let hi = legendre_p_scaled(nu + delta, m, x)?;
        return Ok(ScaledPair {
            value: lo.value.add(&hi.value).mul_complex(Complex64::new(0.5, 0.0)),
            derivative: lo
                .derivative
                .add(&hi.derivative)
                .mul_complex(Complex64::new(0.5, 0.0)),
        });
    }
    let w1 = w_series(nu, m, x, Branch::W1)?;
    if is_conical(nu) {
        // c_{−ν−1} w₂ is the complex conjugate of c_ν w₁ on the real axis.
        let c = scaled_from_ln(ln_connection(nu, m).expect("conical coefficient"));
        let real_twice = |s: Scaled| Scaled {
            factor: Complex64::new(2.0 * s.factor.re, 0.0),
            ln_scale: s.ln_scale,
        };
        return Ok(ScaledPair {
            value: real_twice(w1.value.mul(&c)),
            derivative: real_twice(w1.derivative.mul(&c)),
        });
    }
    let w2 = w_series(nu, m, x, Branch::W2)?;
    let term1 = match ln_connection(nu, m) {
        Some(ln_c) => {
            let c = scaled_from_ln(ln_c);
            Some((w1.value.mul(&c), w1.derivative.mul(&c)))
        }
        None => None,
    };
    let term2 = match ln_connection(-nu - 1.0, m) {
        Some(ln_c) => {
            let c = scaled_from_ln(ln_c);
            Some((w2.value.mul(&c), w2.derivative.mul(&c)))
        }
        None => None,
    };
    let (value, derivative) = match (term1, term2) {
        (Some((v1, d1)), Some((v2, d2))) => (v1.add(&v2), d1.add(&d2)),
        (Some(t), None) => t,
        (None, Some(t)) => t,
        (None, None) => (Scaled::zero(), Scaled::zero()),
    };
    Ok(ScaledPair { value, derivative })
}

/// Q_ν^m(x) with derivative, scaled. Requires x > 1 and ν away from the
/// poles of Γ(ν+m+1).
pub(crate) fn legendre_q_scaled(
    nu: Complex64,
    m: u32,
    x: f64,
) -> Result<ScaledPair, SpecfunError> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(SpecfunError::ArgumentOutOfDomain { x, requires: "x > 1" });
    }
    let num_arg = nu + m as f64 + 1.0;
    if near_gamma_pole(num_arg, 1e-12) {
        return Err(SpecfunError::DegreePole { nu });
    }
    if near_gamma_pole(nu + 1.5, 1e-12) {
        return Err(SpecfunError::DegenerateDegree);
    }
    let ln_q = 0.5 * PI.ln() + ln_gamma(num_arg) - (nu + 1.0) * 2.0f64.ln() - ln_gamma(nu + 1.5);
    let q = scaled_from_ln(ln_q);
    let w2 = w_series(nu, m, x, Branch::W2)?;
    Ok(ScaledPair {
        value: w2.value.mul(&q),
        derivative: w2.derivative.mul(&q),
    })
}

/// lim_{ν→0} P_ν^m(x)/ν for m ≥ 1, scaled. These limits replace the
/// indeterminate products C_m P_ν^m(ρ) P_ν^m(ρ')/P_ν^m(ρ_L) of the
/// Dirichlet Green function at λ = 0, where P_0^m ≡ 0 and C_m has a pole.
pub(crate) fn legendre_p_nu_derivative_at_zero(
    m: u32,
    x: f64,
) -> Result<Scaled, SpecfunError> {
    assert!(m >= 1, "limit form only defined for m >= 1");
    if !(x > 1.0) {
        return Err(SpecfunError::ArgumentOutOfDomain { x, requires: "x > 1" });
    }
    let zero = Complex64::new(0.0, 0.0);
    let w1 = w_series(zero, m, x, Branch::W1)?;
    let w2 = w_series(zero, m, x, Branch::W2)?;
    // (−1)^{m−1}(m−1)! w₁ + (−1)^m m! w₂
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let ln_fact_m1 = ln_gamma(Complex64::new(m as f64, 0.0)).re;
    let ln_fact_m = ln_gamma(Complex64::new(m as f64 + 1.0, 0.0)).re;
    let t1 = Scaled { factor: w1.value.factor * sign, ln_scale: w1.value.ln_scale + ln_fact_m1 };
    let t2 = Scaled { factor: w2.value.factor * (-sign), ln_scale: w2.value.ln_scale + ln_fact_m };
    Ok(t1.add(&t2))
}
