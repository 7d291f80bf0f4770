use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_ln(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// Log-gamma of a complex argument.
///
/// For `Re z >= 1/2` this is the branch that is real on the positive real
/// axis and continuous in the right half plane; for smaller real parts the
/// value is continued with `ln Γ(z) = ln Γ(z + n) - Σ ln(z + k)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z.re));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut acc = lanczos_ln(z + shift as f64);
    for k in 0..shift {
        acc -= (z + k as f64).ln();
    }
    Ok(acc)
}

/// Real gamma function; poles return `±inf`.
pub fn gamma_real(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return f64::INFINITY;
    }
    if x >= 0.5 {
        lanczos_ln(Complex64::new(x, 0.0)).re.exp()
    } else {
        PI / ((PI * x).sin() * gamma_real(1.0 - x))
    }
}

/// `1 / Γ(x)`, with zeros at the non-positive integers.
pub fn rgamma_real(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    if x >= 0.5 {
        (-lanczos_ln(Complex64::new(x, 0.0)).re).exp()
    } else {
        (PI * x).sin() * gamma_real(1.0 - x) / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_and_half() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let h = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((h.re - PI.sqrt().ln()).abs() < 1e-15);
        assert!(h.im.abs() < 1e-15);
    }

    #[test]
    fn poles_are_errors() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(Error::Pole(0.0)));
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(-3.0)));
        assert!(log_gamma(c(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn recurrence_holds_across_the_shift_boundary() {
        for z in [c(0.3, 1.2), c(-2.7, 0.4), c(-0.2, -3.0)] {
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            let d = lhs - rhs;
            assert!(d.re.abs() < 1e-12, "{z}");
            let wrapped = (d.im / (2.0 * PI)).round() * 2.0 * PI;
            assert!((d.im - wrapped).abs() < 1e-12, "{z}");
        }
    }

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..20 {
            f *= n as f64;
            let lg = log_gamma(c(n as f64 + 1.0, 0.0)).unwrap().re;
            assert!((lg - f.ln()).abs() < 1e-13 * f.ln().max(1.0));
            assert!((gamma_real(n as f64 + 1.0) / f - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn reflection_real() {
        // Γ(-1/2) = -2√π
        assert!((gamma_real(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(rgamma_real(-2.0), 0.0);
        assert!((rgamma_real(-1.5) * gamma_real(-1.5) - 1.0).abs() < 1e-14);
    }
}
