//! Exponential-polynomial interpolation.
//!
//! An exponential polynomial of degree `< n` is `p(x) = exp(Σ_{j<n} a_j x^j)`.
//! Through `log` these are ordinary polynomials, so `n` lifted samples at
//! distinct nodes determine the coefficients uniquely. A plane wave
//! `exp(ikx)` has degree 1 for every `k`: two lifted samples recover it
//! exactly, however coarse the spacing relative to the wavelength.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surface::{exp_lift, SurfacePoint};

/// Above this estimated condition number a fit logs a warning.
pub const CONDITION_WARNING_THRESHOLD: f64 = 1e12;

/// `exp(Σ a_j x^j)` with complex coefficients `a_0 … a_{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolynomial {
    coeffs: Vec<Complex64>,
}

impl ExpPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(
                "exponential polynomial coefficients must be finite".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The exponent `Σ a_j x^j`.
    pub fn log_at(&self, x: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
    }

    pub fn eval(&self, x: f64) -> Result<SurfacePoint> {
        exp_lift(self.log_at(x))
    }
}

pub fn eval_exp_poly(p: &ExpPolynomial, x: f64) -> Result<SurfacePoint> {
    p.eval(x)
}

/// Upper estimate of the ∞-norm condition number of the Vandermonde matrix
/// on `xs`, from the Gautschi bound on its inverse.
pub fn vandermonde_condition_estimate(xs: &[f64]) -> f64 {
    let n = xs.len();
    let norm_v = xs
        .iter()
        .map(|&x| (0..n).map(|k| x.abs().powi(k as i32)).sum::<f64>())
        .fold(0.0, f64::max);
    let norm_inv = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| k != j)
                .map(|k| (1.0 + xs[k].abs()) / (xs[j] - xs[k]).abs())
                .product::<f64>()
        })
        .fold(0.0, f64::max);
    norm_v * norm_inv
}

/// Newton divided-difference coefficients of the data `(xs, ys)`.
fn divided_differences(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut table = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    table
}

/// Fits the unique exponential polynomial of degree `< n` through `n` lifted
/// samples. The sheet of every sample matters: the fit interpolates
/// `log w_j`, not the projection.
pub fn fit_exp_poly(xs: &[f64], ws: &[SurfacePoint]) -> Result<ExpPolynomial> {
    if xs.len() != ws.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ws.len(),
        });
    }
    if xs.is_empty() {
        return ExpPolynomial::new(Vec::new());
    }
    if let Some(&x) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("non-finite interpolation node {x}")));
    }
    for (i, a) in xs.iter().enumerate() {
        if xs[..i].contains(a) {
            return Err(Error::DuplicateNode(*a));
        }
    }
    let cond = vandermonde_condition_estimate(xs);
    if cond > CONDITION_WARNING_THRESHOLD {
        log::warn!("exponential-polynomial fit is ill-conditioned (estimate {cond:.3e})");
    }

    let logs: Vec<Complex64> = ws.iter().map(|w| w.log()).collect();
    let newton = divided_differences(xs, &logs);

    // Expand c0 + (x − x0)(c1 + (x − x1)(c2 + …)) into monomials.
    let n = xs.len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    coeffs[0] = newton[n - 1];
    let mut degree = 0;
    for k in (0..n - 1).rev() {
        // coeffs ← coeffs · (x − x_k) + newton[k]
        degree += 1;
        for i in (1..=degree).rev() {
            coeffs[i] = coeffs[i - 1] - coeffs[i] * xs[k];
        }
        coeffs[0] = newton[k] - coeffs[0] * xs[k];
    }
    ExpPolynomial::new(coeffs)
}

/// Partial product `∏_{m=1}^{n_terms} exp(e^{imx})^{−a^m/m}`, the truncated
/// lift of `1 − a e^{ix}` obtained from the series of `log(1 − z)`.
pub fn truncated_log_lift(a: f64, x: f64, n_terms: usize) -> Result<SurfacePoint> {
    if a.is_nan() || a.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "truncated_log_lift requires |a| < 1, got {a}"
        )));
    }
    let mut acc = SurfacePoint::ONE;
    let mut a_pow = 1.0;
    for m in 1..=n_terms {
        a_pow *= a;
        let mode = exp_lift(Complex64::from_polar(1.0, m as f64 * x))?;
        acc = acc.checked_mul(mode.pow_real(-a_pow / m as f64)?)?;
    }
    Ok(acc)
}
