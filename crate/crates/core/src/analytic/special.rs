//! Generalized Laguerre polynomials and Bessel functions of the first kind of
//! orders 0 and 1.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::{Error, Result};

/// Largest polynomial degree accepted by [`laguerre_gen`].
pub const MAX_LAGUERRE_DEGREE: usize = 1_000_000;

/// Generalized Laguerre polynomial `L_n^(α)(x)` by the upward three-term
/// recurrence
///
/// `(k + 1) L_{k+1} = (2k + α + 1 - x) L_k - (k + α) L_{k-1}`.
///
/// Fails with [`Error::LaguerreOverflow`] when the value leaves the range of
/// `f64`; [`laguerre_weighted`] handles that regime.
pub fn laguerre_gen(n: usize, alpha: u32, x: f64) -> Result<f64> {
    check_laguerre_args(n, x)?;
    let a = f64::from(alpha);
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * cur - (kf + a) * prev) / (kf + 1.0);
        if !next.is_finite() {
            return Err(Error::LaguerreOverflow { n, x });
        }
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(Error::LaguerreOverflow { n, x })
    }
}

fn check_laguerre_args(n: usize, x: f64) -> Result<()> {
    if n > MAX_LAGUERRE_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "Laguerre degree {n} exceeds {MAX_LAGUERRE_DEGREE}"
        )));
    }
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("Laguerre argument {x} is not finite")));
    }
    Ok(())
}

/// `e^{-x/2} L_n^(α)(x)`, evaluated without intermediate overflow.
///
/// The recurrence is linear and homogeneous, so the running pair is rescaled
/// whenever it grows large and the accumulated scale is recombined with the
/// exponential weight in the log domain at the end.
pub fn laguerre_weighted(n: usize, alpha: u32, x: f64) -> Result<f64> {
    const RESCALE_AT: f64 = 1e150;
    check_laguerre_args(n, x)?;
    let a = f64::from(alpha);
    let mut log_scale = 0.0;
    let mut prev = 1.0;
    let mut cur = if n == 0 { 1.0 } else { 1.0 + a - x };
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
    }
    let value = if log_scale == 0.0 {
        cur * (-0.5 * x).exp()
    } else if cur == 0.0 {
        0.0
    } else {
        cur.signum() * (cur.abs().ln() + log_scale - 0.5 * x).exp()
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::LaguerreOverflow { n, x })
    }
}

const SERIES_LIMIT: f64 = 4.0;
const HANKEL_LIMIT: f64 = 25.0;

/// `J_0(x)`.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        power_series(0, ax)
    } else if ax <= HANKEL_LIMIT {
        miller(ax).0
    } else {
        hankel(0, ax)
    }
}

/// `J_1(x)`.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= SERIES_LIMIT {
        power_series(1, ax)
    } else if ax <= HANKEL_LIMIT {
        miller(ax).1
    } else {
        hankel(1, ax)
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// Bessel function of the first kind for integer order 0 or 1.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    match order {
        0 => Ok(bessel_j0(x)),
        1 => Ok(bessel_j1(x)),
        other => Err(Error::UnsupportedBesselOrder(other)),
    }
}

/// `2 J_1(x) / x`, continuous at `x = 0` where it equals 1.
pub fn bessel_j1_ratio(x: f64) -> f64 {
    if x.abs() <= SERIES_LIMIT {
        // 2 J_1(x)/x = Σ (-(x/2)²)^k / (k! (k+1)!)
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            term *= q / (k as f64 * (k + 1) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        2.0 * bessel_j1(x) / x
    }
}

fn power_series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = if order == 0 { 1.0 } else { half };
    let mut sum = term;
    let nu = f64::from(order);
    for k in 1..80 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `(J_0, J_1)` by Miller's backward recurrence normalized with
/// `J_0 + 2 Σ J_{2k} = 1`.
fn miller(x: f64) -> (f64, f64) {
    const BIG: f64 = 1e250;
    let start = 2 * ((1.2 * x) as usize / 2 + 20);
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next; // J_{k-1}
        next = cur;
        cur = prev;
        if k - 1 == 1 {
            j1 = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > BIG {
            cur /= BIG;
            next /= BIG;
            norm /= BIG;
            j1 /= BIG;
        }
    }
    norm += cur;
    (cur / norm, j1 / norm)
}

/// Hankel asymptotic expansion, accurate to roundoff for `x > 25`.
fn hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(order * order);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= last || term == 0.0 {
            break;
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let omega = x - (0.5 * f64::from(order)) * PI - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}
