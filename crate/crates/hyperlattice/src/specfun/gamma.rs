//! Complex log-gamma via the Lanczos approximation (Godfrey's 15-term
//! coefficient set, g = 607/128), good to ~15 significant digits on the
//! half-plane Re z ≥ 0.5 and extended by reflection elsewhere.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEFF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_188_9e-5,
    4.652_362_892_704_857_5e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_048_8e-4,
    2.174_396_181_152_126_4e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_14e-5,
    3.689_918_265_953_162e-6,
];

/// log Γ(z) for complex z (principal value up to multiples of 2πi on the
/// reflected half-plane, which is irrelevant once exponentiated).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: Γ(z) Γ(1−z) = π / sin(πz).
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let zz = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEFF[0], 0.0);
    for (k, c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        sum += c / (zz + k as f64);
    }
    let t = zz + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zz + 0.5) * t.ln() - t + sum.ln()
}

/// log sin(πz), factored to avoid overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let im = z.im;
    if im.abs() < 20.0 {
        return (PI * z).sin().ln();
    }
    // sin(πz) = ∓(i/2) e^{∓iπz} (1 − e^{±2iπz}) with the sign chosen so the
    // exponentials stay bounded.
    let i = Complex64::i();
    if im > 0.0 {
        (i / 2.0).ln() - i * PI * z + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else {
        (-i / 2.0).ln() + i * PI * z + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    }
}

/// Γ(z); overflows to infinity like `exp` would.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// 1/Γ(z), entire: returns exactly 0.0 at the poles of Γ.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π: the sine factor supplies the zeros.
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return (PI * z).sin() * gamma(one_minus) / PI;
    }
    (-ln_gamma(z)).exp()
}

/// True when z is within `tol` of a pole of Γ (a nonpositive integer).
pub fn near_gamma_pole(z: Complex64, tol: f64) -> bool {
    z.im.abs() < tol && z.re < 0.5 && (z.re - z.re.round()).abs() < tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!(
            (a - b).norm() <= tol * (1.0 + b.norm()),
            "{a} vs {b}"
        );
    }

    #[test]
    fn real_values() {
        assert_close(gamma(Complex64::new(0.5, 0.0)), Complex64::new(PI.sqrt(), 0.0), 1e-14);
        assert_close(gamma(Complex64::new(5.0, 0.0)), Complex64::new(24.0, 0.0), 1e-14);
        assert_close(
            gamma(Complex64::new(-1.5, 0.0)),
            Complex64::new(4.0 * PI.sqrt() / 3.0, 0.0),
            1e-13,
        );
    }

    #[test]
    fn functional_equation() {
        let zs = [
            Complex64::new(0.3, 2.7),
            Complex64::new(-2.2, 0.4),
            Complex64::new(-0.5, 15.0),
            Complex64::new(4.1, -9.3),
        ];
        for &z in &zs {
            assert_close(gamma(z + 1.0), z * gamma(z), 1e-12);
        }
    }

    #[test]
    fn reflection_and_reciprocal() {
        let zs = [Complex64::new(0.2, 1.0), Complex64::new(-3.7, -2.0)];
        for &z in &zs {
            let lhs = gamma(z) * gamma(Complex64::new(1.0, 0.0) - z);
            let rhs = PI / (PI * z).sin();
            assert_close(lhs, rhs, 1e-12);
            assert_close(gamma(z) * reciprocal_gamma(z), Complex64::new(1.0, 0.0), 1e-12);
        }
        for n in 0..5 {
            assert_eq!(reciprocal_gamma(Complex64::new(-(n as f64), 0.0)).norm(), 0.0);
        }
    }

    #[test]
    fn large_imaginary_part() {
        // |Γ(iy)|² = π / (y sinh(πy))
        let y = 30.0;
        let g = gamma(Complex64::new(0.0, y));
        let expect = (PI / (y * (PI * y).sinh())).sqrt();
        assert!((g.norm() - expect).abs() < 1e-12 * expect);
    }
}
