//! Reference results for the uniform clamped membrane.
//!
//! Everything here is self-contained: Bessel functions of the first kind are
//! evaluated from their power series or by Miller's backward recurrence, and
//! their zeros are located by bracketing and bisection. Nothing in this module
//! touches the collocation machinery, so it can be used to check it.

use crate::error::{Error, Result};

/// Largest Bessel order supported by [`bessel_j`] and [`bessel_zero`].
pub const MAX_ORDER: u32 = 12;
/// Largest argument supported by [`bessel_j`].
pub const MAX_ARGUMENT: f64 = 60.0;
/// Largest number of modes [`uniform_reference`] will return.
pub const MAX_REFERENCE_MODES: usize = 25;

const SERIES_CUTOFF: f64 = 2.0;
const BISECTION_TOL: f64 = 1e-12;
const BRACKET_STEP: f64 = 0.05;

/// Bessel function of the first kind `J_m(x)` for `0 <= m <= 12`, `0 <= x <= 60`.
///
/// Absolute accuracy is better than `1e-12` over the supported range.
pub fn bessel_j(m: u32, x: f64) -> Result<f64> {
    if m > MAX_ORDER {
        return Err(Error::invalid(format!(
            "Bessel order {m} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::invalid(format!(
            "Bessel argument {x} outside [0, {MAX_ARGUMENT}]"
        )));
    }
    if x <= SERIES_CUTOFF {
        Ok(series(m, x))
    } else {
        Ok(miller(m, x))
    }
}

// J_m(x) = sum_k (-1)^k (x/2)^(2k+m) / (k! (k+m)!)
fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=m {
        term *= half / i as f64;
    }
    let mut sum = term;
    let q = -half * half;
    for k in 1..60 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

// Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
// J_0 + 2 sum J_{2k} = 1.
fn miller(m: u32, x: f64) -> f64 {
    let start = {
        let base = (x.max(m as f64) + 30.0 + 8.0 * x.cbrt()) as usize;
        base + base % 2
    };
    let mut next = 0.0_f64; // J_{k+1}
    let mut current = 1e-30_f64; // J_k
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let previous = (2.0 * k as f64 / x) * current - next;
        next = current;
        current = previous;
        // `current` now holds J_{k-1}.
        let order = k - 1;
        if order == m as usize {
            wanted = current;
        }
        if order > 0 && order % 2 == 0 {
            norm += 2.0 * current;
        }
        if current.abs() > 1e200 {
            current *= 1e-200;
            next *= 1e-200;
            norm *= 1e-200;
            wanted *= 1e-200;
        }
    }
    norm += current;
    if m == 0 {
        wanted = current;
    }
    wanted / norm
}

/// The `n`-th positive zero `j_{m,n}` of `J_m`, for `1 <= n` and zeros below the
/// supported argument range.
pub fn bessel_zero(m: u32, n: u32) -> Result<f64> {
    if m > MAX_ORDER {
        return Err(Error::invalid(format!(
            "Bessel order {m} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("Bessel zero index starts at 1"));
    }
    // j_{m,1} > m, and consecutive zeros are at least ~pi apart, so a fixed
    // step of 0.05 cannot step over a pair of roots.
    let mut lo = (m as f64).max(BRACKET_STEP);
    let mut f_lo = bessel_j(m, lo)?;
    let mut found = 0;
    while lo + BRACKET_STEP <= MAX_ARGUMENT {
        let hi = lo + BRACKET_STEP;
        let f_hi = bessel_j(m, hi)?;
        if f_lo == 0.0 || f_lo.signum() != f_hi.signum() {
            found += 1;
            if found == n {
                return bisect(m, lo, hi, f_lo);
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::invalid(format!(
        "zero j_({m},{n}) lies beyond the supported argument range"
    )))
}

fn bisect(m: u32, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64> {
    if f_lo == 0.0 {
        return Ok(lo);
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = bessel_j(m, mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One eigenvalue of the uniform unit membrane with its nodal labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceMode {
    pub lambda: f64,
    /// Number of nodal diameters.
    pub m: u32,
    /// Number of nodal circles, counting the rim.
    pub n: u32,
}

/// The smallest `count` eigenvalues `j_{m,n}` of the uniform clamped membrane,
/// ascending, with modes `m >= 1` listed twice (cosine and sine partners).
pub fn uniform_reference(count: usize) -> Result<Vec<ReferenceMode>> {
    if count > MAX_REFERENCE_MODES {
        return Err(Error::invalid(format!(
            "at most {MAX_REFERENCE_MODES} reference modes are available"
        )));
    }
    // Every zero below 14 is covered by m <= 12, n <= 4; the 25th eigenvalue
    // with multiplicity is j_{4,2} ~ 11.06.
    let mut zeros = Vec::new();
    for m in 0..=MAX_ORDER {
        for n in 1..=4 {
            let lambda = bessel_zero(m, n)?;
            if lambda < 14.0 {
                zeros.push(ReferenceMode { lambda, m, n });
            }
        }
    }
    zeros.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let mut out = Vec::with_capacity(count);
    for z in zeros {
        let copies = if z.m == 0 { 1 } else { 2 };
        for _ in 0..copies {
            if out.len() == count {
                return Ok(out);
            }
            out.push(z);
        }
    }
    Ok(out)
}
