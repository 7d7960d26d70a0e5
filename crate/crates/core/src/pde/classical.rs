//! Classical complex leapfrog for `u_t + c(x) u_x = 0`.
//!
//! Serves as the baseline the multiplicative scheme is compared against, and
//! as the additive recurrence its logarithm must reproduce.

use std::sync::Arc;

use num_complex::Complex64;

use super::grid::Grid1D;
use crate::error::{Error, Result};

/// Boundary treatment for one classical step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalBoundary {
    /// Quasi-periodic: `u(x + L) = u(x) + jump`. Logs of a surface function
    /// with winding number `m` have `jump = 2πi m`.
    Periodic { jump: Complex64 },
    /// End values at the new time level.
    Fixed { left: Complex64, right: Complex64 },
}

/// One step `u_j^{n+1} = u_j^{n−1} − (c_j dt/dx)(u_{j+1}^n − u_{j−1}^n)`.
pub fn classical_leapfrog(
    prev: &[Complex64],
    curr: &[Complex64],
    speeds: &[f64],
    dt: f64,
    dx: f64,
    boundary: ClassicalBoundary,
) -> Result<Vec<Complex64>> {
    let n = curr.len();
    for len in [prev.len(), speeds.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    if n < 3 {
        return Err(Error::Config("leapfrog needs at least 3 points".into()));
    }
    let ratio = dt / dx;
    if let Some((index, c)) = speeds
        .iter()
        .enumerate()
        .find(|(_, c)| (*c * ratio).abs() >= 1.0 || !c.is_finite())
    {
        return Err(Error::Cfl {
            index,
            courant: (c * ratio).abs(),
        });
    }
    let update = |j: usize, left: Complex64, right: Complex64| {
        prev[j] - (speeds[j] * ratio) * (right - left)
    };
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    for j in 1..n - 1 {
        next[j] = update(j, curr[j - 1], curr[j + 1]);
    }
    match boundary {
        ClassicalBoundary::Periodic { jump } => {
            next[0] = update(0, curr[n - 1] - jump, curr[1]);
            next[n - 1] = update(n - 1, curr[n - 2], curr[0] + jump);
        }
        ClassicalBoundary::Fixed { left, right } => {
            next[0] = left;
            next[n - 1] = right;
        }
    }
    Ok(next)
}

pub type ComplexFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
pub type ComplexReferenceFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Boundary rule for a full classical run.
#[derive(Clone)]
pub enum ClassicalBoundaryRule {
    Periodic {
        jump: Complex64,
    },
    /// End values taken from a reference `(x, t) ↦ u`.
    ExactInjection(ComplexReferenceFn),
}

/// Runs the classical leapfrog for `n_steps` from `initial` at `t = 0` and
/// `second_level` at `t = −dt`; returns the final level.
pub fn run_classical(
    grid: &Grid1D,
    dt: f64,
    speed: &dyn Fn(f64) -> f64,
    initial: &dyn Fn(f64) -> Complex64,
    second_level: &dyn Fn(f64) -> Complex64,
    boundary: &ClassicalBoundaryRule,
    n_steps: usize,
) -> Result<Vec<Complex64>> {
    if n_steps == 0 {
        return Err(Error::Config("a run needs at least one step".into()));
    }
    let xs = grid.xs();
    let speeds: Vec<f64> = xs.iter().map(|&x| speed(x)).collect();
    let mut prev: Vec<Complex64> = xs.iter().map(|&x| second_level(x)).collect();
    let mut curr: Vec<Complex64> = xs.iter().map(|&x| initial(x)).collect();
    let last = grid.n_points() - 1;
    for n in 0..n_steps {
        let t_new = (n + 1) as f64 * dt;
        let b = match boundary {
            ClassicalBoundaryRule::Periodic { jump } => ClassicalBoundary::Periodic { jump: *jump },
            ClassicalBoundaryRule::ExactInjection(r) => ClassicalBoundary::Fixed {
                left: r(xs[0], t_new),
                right: r(xs[last], t_new),
            },
        };
        let next = classical_leapfrog(&prev, &curr, &speeds, dt, grid.dx(), b)?;
        prev = std::mem::replace(&mut curr, next);
    }
    Ok(curr)
}
