//! Special functions for the spectral theory of the hyperbolic Laplacian:
//! Legendre functions P_ν^m, Q_ν^m on (1, ∞) for complex degree, the
//! Wronskian constants C_m, the radial eigenfunctions g_{km}, and the
//! hyperbolic plane waves ψ_K.

use num_complex::Complex64;
use thiserror::Error;

pub mod gamma;
mod legendre;

pub(crate) use legendre::{
    legendre_p_nu_derivative_at_zero, legendre_p_scaled, legendre_q_scaled, Scaled,
};

use crate::geometry::DiskPoint;

#[derive(Debug, Error)]
pub enum SpecfunError {
    #[error("argument x = {x} outside domain ({requires})")]
    ArgumentOutOfDomain { x: f64, requires: &'static str },
    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },
    #[error("result overflows f64 (ln|value| = {ln_magnitude:.1})")]
    Overflow { ln_magnitude: f64 },
    #[error("degree nu = {nu} is at a pole of the second-kind function")]
    DegreePole { nu: Complex64 },
    #[error("degenerate degree: the two Frobenius solutions coincide")]
    DegenerateDegree,
    #[error("lambda = {lambda} is a pole of the Wronskian constant C_{m}")]
    WronskianPole { lambda: Complex64, m: u32 },
    #[error("invalid radius {0}: must lie in [0, 1)")]
    InvalidRadius(f64),
}

/// Degree ν of the radial Legendre problem, tied to the spectral parameter by
/// λ/4 = −ν(ν+1).
///
/// Construction normalizes to the branch Re ν ≥ −½ (Im ν ≥ 0 on the boundary),
/// the one for which Q_ν decays at infinity; P_ν and the constants C_m are
/// invariant under ν ↔ −ν−1, and the full Dirichlet Green function is too, so
/// the choice only fixes which solution plays the role of the singular part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degree {
    nu: Complex64,
    lambda: Complex64,
}

impl Degree {
    pub fn from_lambda(lambda: Complex64) -> Self {
        let s = (lambda - 1.0).sqrt();
        let mut nu = (Complex64::new(-1.0, 0.0) + Complex64::i() * s) / 2.0;
        if nu.re < -0.5 || (nu.re == -0.5 && nu.im < 0.0) {
            nu = -nu - 1.0;
        }
        Degree { nu, lambda }
    }

    /// Conical degree ν = ½(−1 + ik) for real momentum k ≥ 0 (λ = 1 + k²).
    pub fn from_momentum(k: f64) -> Self {
        Degree {
            nu: Complex64::new(-0.5, 0.5 * k),
            lambda: Complex64::new(1.0 + k * k, 0.0),
        }
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }
}

/// Legendre function of the first kind P_ν^m(x), x ≥ 1.
pub fn legendre_p(degree: &Degree, m: u32, x: f64) -> Result<Complex64, SpecfunError> {
    legendre_p_scaled(degree.nu, m, x)?.value.collapse()
}

/// P together with its x-derivative (x > 1 for m ≥ 1).
pub fn legendre_p_with_derivative(
    degree: &Degree,
    m: u32,
    x: f64,
) -> Result<(Complex64, Complex64), SpecfunError> {
    let pair = legendre_p_scaled(degree.nu, m, x)?;
    Ok((pair.value.collapse()?, pair.derivative.collapse()?))
}

/// Legendre function of the second kind Q_ν^m(x), x > 1 strictly, in the
/// real convention Q_ν^m = (−1)^m (x²−1)^{m/2} (d/dx)^m Q_ν.
pub fn legendre_q(degree: &Degree, m: u32, x: f64) -> Result<Complex64, SpecfunError> {
    legendre_q_scaled(degree.nu, m, x)?.value.collapse()
}

pub fn legendre_q_with_derivative(
    degree: &Degree,
    m: u32,
    x: f64,
) -> Result<(Complex64, Complex64), SpecfunError> {
    let pair = legendre_q_scaled(degree.nu, m, x)?;
    Ok((pair.value.collapse()?, pair.derivative.collapse()?))
}

/// First-kind conical value P_{−½+ik/2}^m(x) as a real number.
///
/// Conical functions are real on (1, ∞); the imaginary part of the evaluated
/// expression is rounding noise and is dropped.
pub fn conical_p(k: f64, m: u32, x: f64) -> Result<f64, SpecfunError> {
    let pair = legendre_p_scaled(Complex64::new(-0.5, 0.5 * k), m, x)?;
    Ok(pair.value.collapse()?.re)
}

/// Wronskian constant C_m = Γ(ν−m+1)/Γ(ν+m+1), computed from the product
/// form C_m = (−1)^m / Π_{n=0}^{m−1} [(n+½)² + (λ−1)/4].
///
/// C_0 = 1 identically. The constant has poles at λ = 1 − (2n+1)², n ≥ 0;
/// hitting one (for some n < m) is reported as an error.
pub fn wronskian_constant(degree: &Degree, m: u32) -> Result<Complex64, SpecfunError> {
    match inverse_wronskian_constant(degree, m) {
        inv if inv.norm() < 1e-13 => Err(SpecfunError::WronskianPole {
            lambda: degree.lambda(),
            m,
        }),
        inv => Ok(1.0 / inv),
    }
}

/// 1/C_m = (−1)^m Π_{n<m} [(n+½)² + (λ−1)/4]; finite everywhere, zero at the
/// poles of C_m.
pub fn inverse_wronskian_constant(degree: &Degree, m: u32) -> Complex64 {
    let quarter = (degree.lambda() - 1.0) / 4.0;
    let mut prod = Complex64::new(1.0, 0.0);
    for n in 0..m {
        let half = n as f64 + 0.5;
        prod *= Complex64::new(half * half, 0.0) + quarter;
    }
    if m % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// Radial eigenfunction g_{km}(r) of −Δ_g with eigenvalue 1 + k², normalized
/// so that the plane wave resums as ψ_K = Σ_m i^m g_{km}(r) e^{im(φ−β)}:
///
///   g_{km}(r) = (−i)^{|m|} P_ν^{|m|}(ρ) / Π_{n<|m|}(ν−n),  ν = ½(−1+ik),
///
/// with ρ = (1+r²)/(1−r²), and g_{k,−m} = (−1)^m g_{k,m}. Real for even m;
/// for odd m the value carries an intrinsic phase (its Fourier definition
/// makes it complex), approaching the real Bessel limit J_m(kr) as k → ∞.
pub fn radial_eigenfunction(k: f64, m: i32, r: f64) -> Result<Complex64, SpecfunError> {
    if !(0.0..1.0).contains(&r) {
        return Err(SpecfunError::InvalidRadius(r));
    }
    let mm = m.unsigned_abs();
    let nu = Complex64::new(-0.5, 0.5 * k);
    let rho = (1.0 + r * r) / (1.0 - r * r);
    let p = legendre_p_scaled(nu, mm, rho)?.value.collapse()?;
    let mut denom = Complex64::new(1.0, 0.0);
    for n in 0..mm {
        denom *= nu - n as f64;
    }
    let minus_i_pow = Complex64::i().powu(mm).conj(); // (−i)^mm = conj(i^mm)
    let mut g = minus_i_pow * p / denom;
    if m < 0 && mm % 2 == 1 {
        g = -g;
    }
    Ok(g)
}

/// Hyperbolic plane wave ψ_K(z) = [(1−|z|²)/|1−z e^{−iβ}|²]^{(1+ik)/2},
/// an eigenfunction of Δ_g with eigenvalue −(1+k²); ψ_K(0) = 1.
pub fn plane_wave(k: f64, beta: f64, z: DiskPoint) -> Complex64 {
    let zc = z.z();
    let denom = (Complex64::new(1.0, 0.0) - zc * Complex64::from_polar(1.0, -beta)).norm_sqr();
    let base = (1.0 - zc.norm_sqr()) / denom;
    (Complex64::new(1.0, k) / 2.0 * base.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DiskPoint;

    #[test]
    fn degree_is_consistent_with_lambda() {
        for &lambda in &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.8766, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(8.765, 1.754),
            Complex64::new(5.0, 0.0),
        ] {
            let d = Degree::from_lambda(lambda);
            let back = -4.0 * d.nu() * (d.nu() + 1.0);
            assert!((back - lambda).norm() < 1e-12 * (1.0 + lambda.norm()));
            assert!(d.nu().re >= -0.5 - 1e-15);
        }
        let d = Degree::from_momentum(3.0);
        assert!((d.lambda() - Complex64::new(10.0, 0.0)).norm() < 1e-14);
        assert!((d.nu() - Complex64::new(-0.5, 1.5)).norm() < 1e-14);
    }

    #[test]
    fn wronskian_constants() {
        // C_0 = 1 for any λ
        let d = Degree::from_lambda(Complex64::new(0.37, -2.2));
        assert_eq!(wronskian_constant(&d, 0).unwrap(), Complex64::new(1.0, 0.0));
        // m = 1, λ = 1 → −4
        let d = Degree::from_lambda(Complex64::new(1.0, 0.0));
        assert!((wronskian_constant(&d, 1).unwrap() - Complex64::new(-4.0, 0.0)).norm() < 1e-12);
        // λ = 0 is a pole for every m ≥ 1
        let d = Degree::from_lambda(Complex64::new(0.0, 0.0));
        assert!(wronskian_constant(&d, 1).is_err());
        assert!(wronskian_constant(&d, 3).is_err());
    }

    #[test]
    fn gamma_and_product_forms_agree() {
        // Compare 1/C_m: finite for every λ, including the poles of C_m.
        use gamma::ln_gamma;
        for &lambda in &[
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.1),
        ] {
            let d = Degree::from_lambda(lambda);
            let nu = d.nu();
            for m in 1..=6u32 {
                let product = inverse_wronskian_constant(&d, m);
                let gamma_form = if gamma::near_gamma_pole(nu - m as f64 + 1.0, 1e-9) {
                    Complex64::new(0.0, 0.0)
                } else {
                    (ln_gamma(nu + m as f64 + 1.0) - ln_gamma(nu - m as f64 + 1.0)).exp()
                };
                assert!(
                    (product - gamma_form).norm() <= 1e-12 * (1.0 + gamma_form.norm()),
                    "lambda={lambda} m={m}: {product} vs {gamma_form}"
                );
            }
        }
    }

    #[test]
    fn plane_wave_normalization_and_eigenrelation() {
        let k = 3.0;
        let beta = std::f64::consts::PI / 5.0;
        assert!((plane_wave(k, beta, DiskPoint::origin()) - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        // finite-difference Laplacian check: (1−|z|²)² ∇²ψ / ψ = −(1+k²)
        let z = DiskPoint::from_re_im(0.3, 0.2).unwrap();
        let s = 1e-4;
        let at = |dx: f64, dy: f64| {
            plane_wave(k, beta, DiskPoint::from_re_im(0.3 + dx, 0.2 + dy).unwrap())
        };
        let lap = (at(s, 0.0) + at(-s, 0.0) + at(0.0, s) + at(0.0, -s) - 4.0 * at(0.0, 0.0))
            / (s * s);
        let factor = {
            let f = 1.0 - z.z().norm_sqr();
            f * f
        };
        let ratio = factor * lap / at(0.0, 0.0);
        assert!(
            (ratio - Complex64::new(-(1.0 + k * k), 0.0)).norm() < 1e-6,
            "eigenrelation violated: {ratio}"
        );
    }

    #[test]
    fn radial_eigenfunction_basics() {
        // g_{k,0}(0) = P_ν(1) = 1
        let g = radial_eigenfunction(2.0, 0, 0.0).unwrap();
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        // parity g_{k,−m} = (−1)^m g_{k,m}
        for m in 1..=3 {
            let plus = radial_eigenfunction(2.0, m, 0.3).unwrap();
            let minus = radial_eigenfunction(2.0, -m, 0.3).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((minus - sign * plus).norm() < 1e-14);
        }
    }

    #[test]
    fn radial_eigenfunction_reference_values() {
        // Frozen from the Fourier-integral definition (adaptive quadrature).
        let cases = [
            (0, Complex64::new(0.885_576_226_525_271_42, 0.0)),
            (
                1,
                Complex64::new(0.282_393_745_768_003_02, -0.141_196_872_884_001_51),
            ),
            (
                2,
                Complex64::new(0.010_804_183_315_267_144, -0.086_433_466_522_137_151),
            ),
        ];
        for (m, expect) in cases {
            let g = radial_eigenfunction(2.0, m, 0.3).unwrap();
            assert!(
                (g - expect).norm() < 1e-12,
                "g(2,{m},0.3) = {g}, expected {expect}"
            );
        }
    }

    #[test]
    fn euclidean_limit_approaches_bessel() {
        // g_{k,0}(r) ≈ J_0(kr) for r ≪ 1, k ≫ 1; J_0(1) = 0.7651976866
        let g = radial_eigenfunction(100.0, 0, 0.01).unwrap();
        assert!((g.re - 0.765_197_686_6).abs() < 1e-2);
        assert!(g.im.abs() < 1e-10);
    }

    #[test]
    fn partial_wave_resummation() {
        // ψ_K(z) = Σ_{|m|≤40} i^m g_{km}(r) e^{im(φ−β)} at r = 0.5
        let (k, beta) = (2.0, 0.9);
        let (r, phi) = (0.5, 2.2);
        let z = DiskPoint::from_polar(r, phi).unwrap();
        let direct = plane_wave(k, beta, z);
        let mut sum = Complex64::new(0.0, 0.0);
        for m in -40i32..=40 {
            let g = radial_eigenfunction(k, m, r).unwrap();
            let i_pow = Complex64::i().powi(m);
            sum += i_pow * g * Complex64::from_polar(1.0, m as f64 * (phi - beta));
        }
        assert!(
            (sum - direct).norm() < 1e-8,
            "resummation {sum} vs direct {direct}"
        );
    }

    #[test]
    fn q_log_divergence_near_one() {
        // Q_ν(y→1) ~ −ln(½ arcosh y) + const: the difference of the two
        // sides must be the same constant at two small offsets.
        let d = Degree::from_lambda(Complex64::new(0.5, 0.0));
        let probe = |eps: f64| {
            let y = 1.0 + eps;
            let q = legendre_q(&d, 0, y).unwrap();
            q.re + (0.5 * y.acosh()).ln()
        };
        let c1 = probe(1e-3);
        let c2 = probe(1e-4);
        assert!(
            (c1 - c2).abs() < 2e-4,
            "log-divergence constants differ: {c1} vs {c2}"
        );
    }

    #[test]
    fn large_x_conical_decay_envelope() {
        // |Q_ν(x)| for conical ν decays like x^{−1/2} with an oscillatory
        // modulation: compare against the two-term large-x form at x = 10³.
        let k = 2.0;
        let d = Degree::from_momentum(k);
        let x = 1.0e3;
        let q = legendre_q(&d, 0, x).unwrap();
        use gamma::ln_gamma;
        let nu = d.nu();
        // Q̂ ~ √π Γ(ν+1)/(Γ(ν+3/2) 2^{ν+1}) x^{−ν−1}
        let ln_amp = 0.5 * std::f64::consts::PI.ln() + ln_gamma(nu + 1.0)
            - ln_gamma(nu + 1.5)
            - (nu + 1.0) * 2.0f64.ln()
            + (-nu - 1.0) * x.ln();
        let leading = ln_amp.exp();
        assert!(
            (q - leading).norm() < 1e-5 * leading.norm(),
            "two-term asymptote mismatch: {q} vs {leading}"
        );
    }
}
