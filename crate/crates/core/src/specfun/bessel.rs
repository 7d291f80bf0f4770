//! Bessel functions of the first kind `J_ν(x)` for real order (bound-state
//! problems) and purely imaginary order `ν = iβ` (scattering problems).
//!
//! Real order, `x < 2`: ascending power series (no cancellation there).
//! Real order, `x >= 2`: Steed's method, i.e. the continued fraction for
//! `J'_ν/J_ν`, downward recurrence to a small order `μ`, the complex continued
//! fraction for `(J'_μ + iY'_μ)/(J_μ + iY_μ)` and the Wronskian to fix the
//! normalization. Negative non-integer orders use
//! `J_{-ν} = J_ν cos νπ - Y_ν sin νπ`.
//! Imaginary order: power series with complex log-gamma up to
//! `x = IMAGINARY_SERIES_LIMIT`, beyond that the Bessel equation is integrated
//! numerically starting from the series values at the crossover.
//!
//! The validated box is `|ν| <= 64`, `0 < x <= 64`; requests outside it
//! return [`Error::AccuracyLoss`].

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{log_gamma, rgamma_real};
use crate::error::{Error, Result};
use crate::numerics::ode::{self, OdeOptions};

pub const MAX_ORDER: f64 = 64.0;
pub const MAX_ARG: f64 = 64.0;
/// Argument above which imaginary orders switch from the series to ODE integration.
pub const IMAGINARY_SERIES_LIMIT: f64 = 12.0;
const REAL_SERIES_LIMIT: f64 = 2.0;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

/// Order of a Bessel function: real (`b` for bound states) or purely
/// imaginary (`b = iβ` for scattering states).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselOrder {
    Real(f64),
    Imaginary(f64),
}

impl BesselOrder {
    pub fn as_complex(self) -> Complex64 {
        match self {
            BesselOrder::Real(v) => Complex64::new(v, 0.0),
            BesselOrder::Imaginary(b) => Complex64::new(0.0, b),
        }
    }

    pub fn negated(self) -> Self {
        match self {
            BesselOrder::Real(v) => BesselOrder::Real(-v),
            BesselOrder::Imaginary(b) => BesselOrder::Imaginary(-b),
        }
    }

    fn magnitude(self) -> f64 {
        match self {
            BesselOrder::Real(v) | BesselOrder::Imaginary(v) => v.abs(),
        }
    }
}

fn check_range(order: f64, x: f64) -> Result<()> {
    if !order.is_finite() || !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Bessel J requires x > 0 and finite order (order {order}, x {x})")));
    }
    if order.abs() > MAX_ORDER || x > MAX_ARG {
        return Err(Error::AccuracyLoss { order, arg: x });
    }
    Ok(())
}

/// `J_ν(x)` for a real or imaginary order.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<Complex64> {
    Ok(bessel_pair(order, x)?.0)
}

/// `dJ_ν(x)/dx` for a real or imaginary order.
pub fn bessel_j_dx(order: BesselOrder, x: f64) -> Result<Complex64> {
    Ok(bessel_pair(order, x)?.1)
}

fn bessel_pair(order: BesselOrder, x: f64) -> Result<(Complex64, Complex64)> {
    check_range(order.magnitude(), x)?;
    match order {
        BesselOrder::Real(nu) => {
            let (j, jp) = real_pair(nu, x)?;
            Ok((Complex64::new(j, 0.0), Complex64::new(jp, 0.0)))
        }
        BesselOrder::Imaginary(beta) => imaginary_pair(beta, x),
    }
}

/// `J_ν(x)` for real order.
pub fn bessel_j_real(nu: f64, x: f64) -> Result<f64> {
    check_range(nu, x)?;
    Ok(real_pair(nu, x)?.0)
}

/// `(J_ν(x), J'_ν(x))` for real order.
pub fn bessel_j_real_with_derivative(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_range(nu, x)?;
    real_pair(nu, x)
}

/// Ratio `J_{ν+1}(x) / J_ν(x)` for `ν >= 0` from its continued fraction.
///
/// Never underflows, so it stays usable deep in the classically forbidden
/// tail where `J_ν` itself is below the smallest double.
pub fn bessel_ratio(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel ratio needs nu >= 0 and x > 0 (nu {nu}, x {x})")));
    }
    if nu > MAX_ORDER || x > MAX_ARG {
        return Err(Error::AccuracyLoss { order: nu, arg: x });
    }
    // g = J_ν / J_{ν+1} = b1 - 1/(b2 - 1/(b3 - ...)),  b_k = 2(ν + k)/x
    let b = |k: usize| 2.0 * (nu + k as f64) / x;
    let mut f = b(1);
    if f.abs() < FPMIN {
        f = FPMIN;
    }
    let mut c = f;
    let mut d = 0.0;
    for k in 2..MAXIT {
        let bk = b(k);
        d = bk - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = bk - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(1.0 / f);
        }
    }
    Err(Error::Convergence(format!("Bessel ratio continued fraction, nu {nu}, x {x}")))
}

/// Logarithmic derivative `J'_ν(x)/J_ν(x) = ν/x - J_{ν+1}/J_ν` for `ν >= 0`.
pub fn bessel_log_derivative(nu: f64, x: f64) -> Result<f64> {
    Ok(nu / x - bessel_ratio(nu, x)?)
}

fn real_pair(nu: f64, x: f64) -> Result<(f64, f64)> {
    if nu >= 0.0 {
        if x < REAL_SERIES_LIMIT {
            return Ok(series_real(nu, x));
        }
        let s = steed(nu, x)?;
        return Ok((s.j, s.jp));
    }
    let mu = -nu;
    if mu == mu.round() {
        let sign = if (mu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let (j, jp) = real_pair(mu, x)?;
        return Ok((sign * j, sign * jp));
    }
    if x < REAL_SERIES_LIMIT {
        return Ok(series_real(nu, x));
    }
    let s = steed(mu, x)?;
    let (sn, cs) = (mu * PI).sin_cos();
    Ok((cs * s.j - sn * s.y, cs * s.jp - sn * s.yp))
}

/// Ascending series, any real order; used for small arguments.
fn series_real(nu: f64, x: f64) -> (f64, f64) {
    let q = -0.25 * x * x;
    let half = 0.5 * x;
    if nu >= 0.0 {
        let pref = (nu * half.ln() - log_gamma(Complex64::new(nu + 1.0, 0.0)).expect("nu + 1 > 0").re).exp();
        let mut t = 1.0;
        let mut sum = 1.0;
        let mut dsum = nu;
        for k in 1..500 {
            let kf = k as f64;
            t *= q / (kf * (kf + nu));
            sum += t;
            dsum += t * (2.0 * kf + nu);
            if t.abs() < 1e-17 * sum.abs() && t.abs() * (2.0 * kf + nu) < 1e-17 * dsum.abs().max(1e-300) {
                break;
            }
        }
        (pref * sum, pref * dsum / x)
    } else {
        // negative non-integer order: 1/Γ(k + ν + 1) changes sign for small k
        let base = half.powf(nu);
        let mut sum = 0.0;
        let mut dsum = 0.0;
        let mut pow = 1.0; // (−x²/4)^k / k!
        for k in 0..500 {
            let kf = k as f64;
            if k > 0 {
                pow *= q / kf;
            }
            let term = pow * rgamma_real(kf + nu + 1.0);
            sum += term;
            dsum += term * (2.0 * kf + nu);
            if kf > -nu + 2.0 && term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        (base * sum, base * dsum / x)
    }
}

struct SteedValues {
    j: f64,
    jp: f64,
    y: f64,
    yp: f64,
}

/// Steed's method for `ν >= 0`, `x >= 2`.
fn steed(nu: f64, x: f64) -> Result<SteedValues> {
    let nl = ((nu - x + 1.5).floor()).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f_ν = J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = nu * xi;
    if h < FPMIN {
        h = FPMIN;
    }
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("Steed CF1, nu {nu}, x {x}")));
    }

    // downward recurrence from ν to μ on an unnormalized J
    let mut rjl = isign * 1e-200;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > 1e200 {
            rjl *= 1e-200;
            rjpl *= 1e-200;
            rjl1 *= 1e-200;
            rjp1 *= 1e-200;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J'_μ + iY'_μ) / (J_μ + iY_μ)
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    converged = false;
    for i in 1..MAXIT {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("Steed CF2, nu {nu}, x {x}")));
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    rjmu = rjmu.copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;
    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok(SteedValues { j, jp, y: rymu, yp: nu * xi * rymu - ry1 })
}

fn imaginary_pair(beta: f64, x: f64) -> Result<(Complex64, Complex64)> {
    if x <= IMAGINARY_SERIES_LIMIT {
        return series_imaginary(beta, x);
    }
    let (j0, jp0) = series_imaginary(beta, IMAGINARY_SERIES_LIMIT)?;
    let scale = j0.norm().max(jp0.norm());
    let opts = OdeOptions {
        rel_tol: 1e-13,
        abs_tol: 1e-16 * scale,
        initial_step: 1e-3,
        min_step: 1e-12,
        max_steps: 1_000_000,
    };
    let b2 = beta * beta;
    // J'' = -J'/x - (1 + β²/x²) J; real and imaginary parts decouple
    let rhs = |t: f64, y: &[f64; 4]| {
        let k = 1.0 + b2 / (t * t);
        [y[2], y[3], -y[2] / t - k * y[0], -y[3] / t - k * y[1]]
    };
    let y = ode::integrate(rhs, IMAGINARY_SERIES_LIMIT, [j0.re, j0.im, jp0.re, jp0.im], x, &opts)?;
    Ok((Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3])))
}

fn series_imaginary(beta: f64, x: f64) -> Result<(Complex64, Complex64)> {
    let nu = Complex64::new(0.0, beta);
    let half = 0.5 * x;
    let mut t = (nu * half.ln() - log_gamma(nu + 1.0)?).exp();
    let q = -half * half;
    let mut sum = t;
    let mut dsum = t * nu;
    for k in 1..1000 {
        let kf = k as f64;
        t *= q / (kf * (nu + kf));
        sum += t;
        dsum += t * (nu + 2.0 * kf);
        if kf > x && t.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    Ok((sum, dsum / x))
}
