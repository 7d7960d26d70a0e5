//! Bessel functions `J_n`, `Y_n` for `n ∈ {0, 1}` and their positive zeros.
//!
//! Ascending power series up to [`SERIES_LIMIT`] (with the Neumann
//! logarithmic form for `Y_n`), Hankel asymptotic expansion beyond it,
//! truncated at its smallest term.

use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Switch point between the power series and the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 12.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Zeros below this bound are computed once and shared.
const ZERO_TABLE_LIMIT: f64 = 1000.0;
const SCAN_START: f64 = 1e-3;
const SCAN_STEP: f64 = 0.1;

fn check_order(n: u32) -> Result<()> {
    if n <= 1 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Bessel order {n} not supported (only 0 and 1)"
        )))
    }
}

/// `J_n(x)`, `n ∈ {0, 1}`. Negative `x` is handled by parity.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    check_order(n)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j at non-finite x = {x}")));
    }
    let ax = x.abs();
    let v = if ax <= SERIES_LIMIT {
        j_series(n, ax)
    } else {
        asymptotic(n, ax).0
    };
    Ok(if n == 1 && x < 0.0 { -v } else { v })
}

/// `Y_n(x)`, `n ∈ {0, 1}`, for `x > 0`.
pub fn bessel_y(n: u32, x: f64) -> Result<f64> {
    check_order(n)?;
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("bessel_y requires x > 0, got {x}")));
    }
    Ok(if x <= SERIES_LIMIT {
        y_series(n, x)
    } else {
        asymptotic(n, x).1
    })
}

// Σ (−1)^k (x²/4)^k / (k! (k+n)!), times (x/2)^n
fn j_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if n == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let n = n as f64;
    for k in 1..200 {
        let k = k as f64;
        term *= -q / (k * (k + n));
        sum += term;
        if term.abs() <= f64::EPSILON * 1e-3 * sum.abs().max(1e-300) && k > x {
            break;
        }
    }
    sum
}

fn y_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let log_term = FRAC_2_PI * (0.5 * x).ln() * j_series(n, x);
    if n == 0 {
        // (2/π)(ln(x/2) + γ) J0 + (2/π) Σ_{k≥1} (−1)^{k+1} H_k q^k / (k!)²
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut sum = 0.0;
        for k in 1..200 {
            let kf = k as f64;
            term *= -q / (kf * kf);
            harmonic += 1.0 / kf;
            let add = -term * harmonic;
            sum += add;
            if add.abs() <= f64::EPSILON * 1e-3 * sum.abs().max(1e-300) && kf > x {
                break;
            }
        }
        log_term + FRAC_2_PI * EULER_GAMMA * j_series(0, x) + FRAC_2_PI * sum
    } else {
        // −2/(πx) + (2/π) ln(x/2) J1
        //   − (1/π)(x/2) Σ_{k≥0} (−q)^k [ψ(k+1) + ψ(k+2)] / (k!(k+1)!)
        let mut term = 1.0;
        let mut h_k = 0.0;
        let mut sum = (-EULER_GAMMA) + (1.0 - EULER_GAMMA);
        for k in 1..200 {
            let kf = k as f64;
            term *= -q / (kf * (kf + 1.0));
            h_k += 1.0 / kf;
            let psi_sum = (h_k - EULER_GAMMA) + (h_k + 1.0 / (kf + 1.0) - EULER_GAMMA);
            let add = term * psi_sum;
            sum += add;
            if add.abs() <= f64::EPSILON * 1e-3 * sum.abs().max(1e-300) && kf > x {
                break;
            }
        }
        -FRAC_2_PI / x + log_term - 0.5 * x * sum / PI
    }
}

/// Hankel expansion; returns `(J_n(x), Y_n(x))`.
fn asymptotic(n: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (n * n) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..100 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = a * (mu - odd * odd) / (kf * 8.0 * x);
        if next.abs() >= last || next == 0.0 {
            break;
        }
        a = next;
        last = next.abs();
        // signs: Q gets +a1 −a3 +a5…, P gets −a2 +a4 …
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * n as f64 + 0.25) * PI;
    let amp = (FRAC_2_PI / x).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

#[derive(Clone, Copy)]
enum Kind {
    J,
    Y,
}

fn eval(kind: Kind, n: u32, x: f64) -> f64 {
    match kind {
        Kind::J => bessel_j(n, x),
        Kind::Y => bessel_y(n, x),
    }
    .expect("order and argument validated by caller")
}

fn bisect(kind: Kind, n: u32, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = eval(kind, n, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = eval(kind, n, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Zeros in `(from, to]` bracketed by a sign change on a uniform scan.
fn scan_zeros(kind: Kind, n: u32, from: f64, to: f64, out: &mut Vec<f64>) {
    let mut a = from;
    let mut fa = eval(kind, n, a);
    while a < to {
        let b = (a + SCAN_STEP).min(to);
        let fb = eval(kind, n, b);
        if fa == 0.0 {
            if a > from {
                out.push(a);
            }
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            out.push(bisect(kind, n, a, b));
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 && a > from {
        out.push(a);
    }
}

fn table(kind: Kind, n: u32) -> &'static [f64] {
    static TABLES: [OnceLock<Vec<f64>>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let slot = match kind {
        Kind::J => 0,
        Kind::Y => 2,
    } + n as usize;
    TABLES[slot].get_or_init(|| {
        let mut zeros = Vec::new();
        scan_zeros(kind, n, SCAN_START, ZERO_TABLE_LIMIT, &mut zeros);
        zeros
    })
}

fn zeros_up_to(kind: Kind, n: u32, x_max: f64) -> Vec<f64> {
    let t = table(kind, n);
    if x_max <= ZERO_TABLE_LIMIT {
        let end = t.partition_point(|&z| z <= x_max);
        t[..end].to_vec()
    } else {
        let mut zeros = t.to_vec();
        scan_zeros(kind, n, ZERO_TABLE_LIMIT, x_max, &mut zeros);
        zeros
    }
}

/// Number of zeros of `kind_n` in `(0, x)`.
fn count_below(kind: Kind, n: u32, x: f64) -> usize {
    if x <= ZERO_TABLE_LIMIT {
        table(kind, n).partition_point(|&z| z < x)
    } else {
        zeros_up_to(kind, n, x).iter().filter(|&&z| z < x).count()
    }
}

/// All zeros of `Y_n` in `(0, x_max]`, increasing.
pub fn y_zeros(n: u32, x_max: f64) -> Result<Vec<f64>> {
    check_order(n)?;
    if !x_max.is_finite() {
        return Err(Error::Domain(format!(
            "y_zeros bound must be finite, got {x_max}"
        )));
    }
    Ok(zeros_up_to(Kind::Y, n, x_max))
}

/// All positive zeros of `J_n` in `(0, x_max]`, increasing. `J_1(0) = 0` is
/// not included.
pub fn j_zeros(n: u32, x_max: f64) -> Result<Vec<f64>> {
    check_order(n)?;
    if !x_max.is_finite() {
        return Err(Error::Domain(format!(
            "j_zeros bound must be finite, got {x_max}"
        )));
    }
    Ok(zeros_up_to(Kind::J, n, x_max))
}

pub(crate) fn j_zeros_below(n: u32, x: f64) -> usize {
    count_below(Kind::J, n, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_j0_zero() {
        let z = 2.404_825_557_695_773;
        assert!(bessel_j(0, z).unwrap().abs() < 1e-8);
        let zs = j_zeros(0, 3.0).unwrap();
        assert_eq!(zs.len(), 1);
        assert!((zs[0] - z).abs() < 1e-12);
    }

    #[test]
    fn y0_negative_near_origin() {
        for i in 1..=500 {
            let x = i as f64 * 1e-3;
            assert!(bessel_y(0, x).unwrap() < 0.0, "Y0({x})");
            assert!(bessel_y(1, x).unwrap() < 0.0, "Y1({x})");
        }
    }

    #[test]
    fn tabulated_values() {
        // Abramowitz & Stegun table 9.1
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6, 0.088_256_964_215_676_96),
            (1, 1.0, 0.440_050_585_744_933_5, -0.781_212_821_300_288_7),
            (0, 10.0, -0.245_935_764_451_348_3, 0.055_671_167_283_599_4),
            (1, 10.0, 0.043_472_746_168_861_44, 0.249_015_424_206_953_9),
        ];
        for (n, x, j, y) in cases {
            assert!((bessel_j(n, x).unwrap() - j).abs() < 1e-13, "J{n}({x})");
            assert!((bessel_y(n, x).unwrap() - y).abs() < 1e-13, "Y{n}({x})");
        }
    }

    #[test]
    fn series_and_asymptotic_agree_at_switch() {
        for n in 0..=1 {
            for x in [11.5, 12.0, 12.5, 14.0] {
                let (ja, ya) = asymptotic(n, x);
                assert!((j_series(n, x) - ja).abs() < 1e-10, "J{n}({x})");
                assert!((y_series(n, x) - ya).abs() < 1e-10, "Y{n}({x})");
            }
        }
    }

    #[test]
    fn y0_zero_table() {
        let zs = y_zeros(0, 10.0).unwrap();
        let expected = [
            0.893_576_966_279_167_5,
            3.957_678_419_314_858,
            7.086_051_060_301_773,
        ];
        assert_eq!(zs.len(), 3);
        for (z, e) in zs.iter().zip(expected) {
            assert!((z - e).abs() < 1e-10, "{z} vs {e}");
        }
        assert!(y_zeros(0, 0.5).unwrap().is_empty());
        let many = y_zeros(1, 1500.0).unwrap();
        assert!(many.windows(2).all(|w| w[0] < w[1]));
        assert!(many.len() > 400);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_y(0, 0.0).is_err());
        assert!(bessel_y(1, -1.0).is_err());
        assert!(bessel_j(2, 1.0).is_err());
        assert!(y_zeros(3, 1.0).is_err());
    }
}
