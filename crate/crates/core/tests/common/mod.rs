//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the code under test except to build
//! inputs.

#![allow(dead_code)]

use geocalc::{exp_lift, Complex64, SurfacePoint, SurfaceVector};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Surface point with `ln r` and `θ` uniform in `[−2, 2]`.
pub fn random_point<R: Rng>(rng: &mut R) -> SurfacePoint {
    exp_lift(c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).unwrap()
}

/// Vector of dimension 1 to 8 with components from [`random_point`].
pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> SurfaceVector {
    SurfaceVector::new((0..n).map(|_| random_point(rng)).collect()).unwrap()
}

pub fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// One periodic step of `u_j^{n+1} = u_j^{n−1} − ν_j (u_{j+1}^n − u_{j−1}^n)`,
/// with `u(x + L) = u(x) + jump`.
pub fn additive_leapfrog(
    prev: &[Complex64],
    curr: &[Complex64],
    nu: &[f64],
    jump: Complex64,
) -> Vec<Complex64> {
    let n = curr.len();
    (0..n)
        .map(|j| {
            let left = if j == 0 {
                curr[n - 1] - jump
            } else {
                curr[j - 1]
            };
            let right = if j == n - 1 {
                curr[0] + jump
            } else {
                curr[j + 1]
            };
            prev[j] - nu[j] * (right - left)
        })
        .collect()
}

/// Foot of the characteristic through `(x, t)` for `dx/dt = c(x)`: the point
/// `x0` with `X(t; x0) = x`, by classical RK4 run backward in time.
pub fn characteristic_foot(c: impl Fn(f64) -> f64, x: f64, t: f64, steps: usize) -> f64 {
    let h = -t / steps as f64;
    let mut y = x;
    for _ in 0..steps {
        let k1 = c(y);
        let k2 = c(y + 0.5 * h * k1);
        let k3 = c(y + 0.5 * h * k2);
        let k4 = c(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// Solves the Vandermonde system `Σ_k a_k x_j^k = y_j` by LU.
pub fn vandermonde_solve(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let v = DMatrix::from_fn(n, n, |j, k| c(xs[j].powi(k as i32), 0.0));
    let rhs = DVector::from_column_slice(ys);
    v.lu()
        .solve(&rhs)
        .expect("singular Vandermonde")
        .as_slice()
        .to_vec()
}

/// `|log a − log b|`, the log of the multiplicative absolute value of `a/b`.
pub fn log_gap(a: SurfacePoint, b: SurfacePoint) -> f64 {
    (a.log() - b.log()).norm()
}

// --- Bessel oracle: exact rational power series -----------------------

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_TERMS: u64 = 90;

/// Integer coefficients of the `J0` and `Y0` series at `x = m/100`, scaled
/// to a common denominator so that evaluation is Horner with small factors.
pub struct BesselSeriesOracle {
    j_coeffs: Vec<BigInt>,
    s_coeffs: Vec<BigInt>,
    j_denom: BigInt,
    s_denom: BigInt,
}

impl Default for BesselSeriesOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl BesselSeriesOracle {
    /// With `q = x²/4 = m²/40000` and `K` terms:
    /// `J0 = Σ (−q)^k / (k!)²` and
    /// `S = Σ_{k≥1} (−1)^{k+1} H_k q^k / (k!)²`,
    /// so that `Y0 = (2/π)((ln(x/2) + γ) J0 + S)`.
    pub fn new() -> Self {
        let k_max = SERIES_TERMS;
        let mut fact = BigInt::one();
        for i in 1..=k_max {
            fact *= i;
        }
        // b_k = 40000^{K−k} (K!/k!)², built downward from b_K = 1.
        let mut b = vec![BigInt::zero(); k_max as usize + 1];
        b[k_max as usize] = BigInt::one();
        for k in (1..=k_max).rev() {
            b[k as usize - 1] = &b[k as usize] * 40000u64 * k * k;
        }
        // H_k K! as integers.
        let mut harmonic = vec![BigInt::zero(); k_max as usize + 1];
        for k in 1..=k_max as usize {
            harmonic[k] = &harmonic[k - 1] + &fact / k as u64;
        }
        let mut j_coeffs = Vec::with_capacity(b.len());
        let mut s_coeffs = Vec::with_capacity(b.len());
        for (k, bk) in b.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            j_coeffs.push(bk * sign);
            s_coeffs.push(bk * &harmonic[k] * -sign);
        }
        let j_denom = &b[0];
        let s_denom = j_denom * &fact;
        Self {
            j_denom: j_denom.clone(),
            s_denom,
            j_coeffs,
            s_coeffs,
        }
    }

    fn horner(coeffs: &[BigInt], y: u64) -> BigInt {
        coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * y + a)
    }

    /// `(J0(m/100), Y0(m/100))`, `m ≥ 1`, accurate to double precision for
    /// `m/100 ≤ 40`.
    pub fn j0_y0(&self, m: u64) -> (f64, f64) {
        assert!((1..=4000).contains(&m), "oracle range");
        let y = m * m;
        let j = ratio(&Self::horner(&self.j_coeffs, y), &self.j_denom);
        let s = ratio(&Self::horner(&self.s_coeffs, y), &self.s_denom);
        let x_half = m as f64 / 200.0;
        let y0 = std::f64::consts::FRAC_2_PI * ((x_half.ln() + EULER_GAMMA) * j + s);
        (j, y0)
    }

    /// Zero of `Y0` bracketed by `[lo, hi]`: bisection over hundredths to
    /// find the sign change, then bisection on the cubic through the four
    /// surrounding oracle values.
    pub fn y0_zero(&self, lo: f64, hi: f64) -> f64 {
        let mut a = (lo * 100.0).floor() as u64;
        let mut b = (hi * 100.0).ceil() as u64;
        let ya = self.j0_y0(a).1;
        assert!(ya * self.j0_y0(b).1 < 0.0, "bracket does not change sign");
        while b - a > 1 {
            let mid = (a + b) / 2;
            if self.j0_y0(mid).1 * ya > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        let nodes: Vec<u64> = (a.saturating_sub(1)..=b + 1).collect();
        let vals: Vec<f64> = nodes.iter().map(|&m| self.j0_y0(m).1).collect();
        let xs: Vec<f64> = nodes.iter().map(|&m| m as f64 / 100.0).collect();
        let cubic = |x: f64| {
            let mut total = 0.0;
            for i in 0..xs.len() {
                let mut l = vals[i];
                for k in 0..xs.len() {
                    if k != i {
                        l *= (x - xs[k]) / (xs[i] - xs[k]);
                    }
                }
                total += l;
            }
            total
        };
        let (mut lo, mut hi) = (a as f64 / 100.0, b as f64 / 100.0);
        let f_lo = cubic(lo);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if cubic(mid) * f_lo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// `n / d` rounded to double precision.
fn ratio(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let shift = (d.bits() as i64 - n.abs().bits() as i64 + 80).max(0);
    let q: BigInt = (n << shift as usize) / d;
    q.to_f64().expect("finite quotient") * 2f64.powi(-shift as i32)
}
