use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Magnitudes `|u_{k,m}(ζ^b)|` for `0 ≤ b ≤ (p-1)/2` and the extreme indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenData {
    pub p: u64,
    pub k: u64,
    pub m: u64,
    pub values: Vec<f64>,
    /// `ln` of `values`, usable when the magnitudes overflow.
    pub log_values: Vec<f64>,
    pub b_plus: u64,
    pub b_minus: u64,
}

pub const MIN_RELATIVE_GAP: f64 = 1e-6;

/// For `b ≠ 0` the `ĝ` term vanishes at `ζ^b` and
/// `|u_{k,m}(ζ^b)| = |sin(πkb/p)/sin(πb/p)|^m`; at `b = 0` the value is 1.
pub fn eigen_data(p: u64, k: u64, m: u64) -> Result<EigenData> {
    if !arith::is_prime(p) || p < 5 {
        return Err(Error::InvalidSpec(format!("p = {p} must be a prime at least 5")));
    }
    let kr = k % p;
    if kr == 0 || kr == 1 || kr == p - 1 {
        return Err(Error::InvalidSpec(format!("k = {k} must not be 0 or ±1 modulo {p}")));
    }
    if m == 0 || m % p != 0 {
        return Err(Error::InvalidSpec(format!("p = {p} must divide m = {m}")));
    }
    if arith::pow_mod(k, m, p) != 1 {
        return Err(Error::InvalidSpec(format!("{k}^{m} is not 1 modulo {p}")));
    }
    let half = (p - 1) / 2;
    let mut log_values = vec![0.0];
    for b in 1..=half {
        let x = PI * b as f64 / p as f64;
        let r = ((kr as f64 * x).sin() / x.sin()).abs();
        log_values.push(m as f64 * r.ln());
    }
    for i in 0..log_values.len() {
        for j in 0..i {
            let gap = 1.0 - (-(log_values[i] - log_values[j]).abs()).exp();
            if gap <= MIN_RELATIVE_GAP {
                return Err(Error::InvalidSpec(format!("magnitudes at b = {j} and b = {i} coincide")));
            }
        }
    }
    let arg = |better: fn(f64, f64) -> bool| {
        (1..=half as usize).fold(1, |best, b| if better(log_values[b], log_values[best]) { b } else { best }) as u64
    };
    let b_plus = arg(|a, b| a > b);
    let b_minus = arg(|a, b| a < b);
    // b = 0 must be neither extreme
    if log_values[0] >= log_values[b_plus as usize] || log_values[0] <= log_values[b_minus as usize] {
        return Err(Error::InvalidSpec("the trivial eigenvalue is extremal".into()));
    }
    let values = log_values.iter().map(|l| l.exp()).collect();
    Ok(EigenData { p, k, m, values, log_values, b_plus, b_minus })
}

/// `u_{k,m}(ζ^b)` evaluated from its defining formula with `n = p`.
pub fn bass_eigenvalue(p: u64, k: u64, m: u64, b: u64) -> Complex64 {
    if b % p == 0 {
        // k^m + (1 - k^m)
        return Complex64::new(1.0, 0.0);
    }
    let z = Complex64::from_polar(1.0, 2.0 * PI * (b % p) as f64 / p as f64);
    let geo: Complex64 = (0..k).map(|i| z.powu(i as u32)).sum();
    geo.powu(m as u32)
}
