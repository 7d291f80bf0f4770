use std::f64::consts::PI;

const CF_SWITCH: f64 = 5.0;

/// Scaled complementary error function `exp(x²)·erfc(x)`.
///
/// Finite for all `x >= -26`; for large positive `x` it behaves like
/// `1/(x√π)` and never overflows.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < CF_SWITCH {
        return (x * x).exp() * libm::erfc(x);
    }
    // Laplace continued fraction, evaluated with modified Lentz.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let an = 0.5 * k as f64;
        d = x + an * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < CF_SWITCH {
        libm::erfc(x)
    } else {
        erfcx(x) * (-x * x).exp()
    }
}
