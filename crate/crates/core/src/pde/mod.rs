//! Multiplicative leapfrog solver for the advection equation on the surface.
//!
//! The multiplicative form of `u_t + c(x) u_x = 0` is `v*_t (v*_x)^c = 1`.
//! Replacing both multiplicative derivatives by centered finite quotients
//! and solving for the new level gives
//!
//! ```text
//! w_j^{n+1} = w_j^{n−1} · (w_{j+1}^n / w_{j−1}^n)^{−c_j Δt/Δx}
//! ```
//!
//! Its logarithm is exactly the classical leapfrog applied to `log w`, so the
//! scheme is stable for `|c Δt/Δx| < 1`, second-order accurate, and exact
//! whenever `log v` is quadratic in `x` and `t` (a Gaussian-modulated plane
//! wave with constant `c`), at any resolution and any frequency.

mod classical;
mod grid;

use std::sync::Arc;

use num_complex::Complex64;

pub use classical::{
    classical_leapfrog, run_classical, ClassicalBoundary, ClassicalBoundaryRule, ComplexFn,
    ComplexReferenceFn,
};
pub use grid::{Grid1D, GridFunction};

use crate::calculus::{finite_quotient, QuotientStencil};
use crate::error::{Error, Result};
use crate::mvector::{NormSpec, SurfaceVector};
use crate::surface::SurfacePoint;

pub type SpeedFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type LiftFn = Arc<dyn Fn(f64) -> Result<SurfacePoint> + Send + Sync>;
pub type ReferenceFn = Arc<dyn Fn(f64, f64) -> Result<SurfacePoint> + Send + Sync>;

/// How the end points of the grid are updated.
#[derive(Clone)]
pub enum BoundaryRule {
    /// Periodic cell of length `n dx`. A nonzero `winding` means the lifted
    /// data satisfies `w(x + L) = w(x) · (1, 2π·winding)`, e.g. `exp(ikx)`
    /// with `kL = 2π·winding`.
    Periodic { winding: i64 },
    /// End points overwritten at every step from a reference `(x, t) ↦ w`.
    ExactInjection(ReferenceFn),
}

impl std::fmt::Debug for BoundaryRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryRule::Periodic { winding } => f
                .debug_struct("Periodic")
                .field("winding", winding)
                .finish(),
            BoundaryRule::ExactInjection(_) => f.write_str("ExactInjection"),
        }
    }
}

/// Everything needed to advance `v*_t (v*_x)^c = 1` on a grid.
#[derive(Clone)]
pub struct AdvectionProblem {
    grid: Grid1D,
    dt: f64,
    speed: SpeedFn,
    speeds: Vec<f64>,
    initial: LiftFn,
    second_level: LiftFn,
    boundary: BoundaryRule,
}

impl AdvectionProblem {
    /// Builds the problem and checks `|c(x_j) dt/dx| < 1` at every node.
    pub fn new(
        grid: Grid1D,
        dt: f64,
        speed: SpeedFn,
        initial: LiftFn,
        second_level: LiftFn,
        boundary: BoundaryRule,
    ) -> Result<Self> {
        let problem = Self::new_unchecked(grid, dt, speed, initial, second_level, boundary)?;
        problem.check_cfl()?;
        Ok(problem)
    }

    /// As [`AdvectionProblem::new`] but without the CFL check, for
    /// deliberate instability experiments.
    pub fn new_unchecked(
        grid: Grid1D,
        dt: f64,
        speed: SpeedFn,
        initial: LiftFn,
        second_level: LiftFn,
        boundary: BoundaryRule,
    ) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!(
                "time step must be positive, got {dt}"
            )));
        }
        let speeds: Vec<f64> = grid.xs().into_iter().map(|x| speed(x)).collect();
        if let Some(j) = speeds.iter().position(|c| !c.is_finite()) {
            return Err(Error::Config(format!(
                "wave speed is not finite at node {j}"
            )));
        }
        Ok(Self {
            grid,
            dt,
            speed,
            speeds,
            initial,
            second_level,
            boundary,
        })
    }

    pub fn check_cfl(&self) -> Result<()> {
        match self
            .courant_numbers()
            .enumerate()
            .find(|(_, nu)| nu.abs() >= 1.0)
        {
            Some((index, nu)) => Err(Error::Cfl {
                index,
                courant: nu.abs(),
            }),
            None => Ok(()),
        }
    }

    /// `c_j dt / dx` at every node.
    pub fn courant_numbers(&self) -> impl Iterator<Item = f64> + '_ {
        let ratio = self.dt / self.grid.dx();
        self.speeds.iter().map(move |c| c * ratio)
    }

    pub fn max_courant(&self) -> f64 {
        self.courant_numbers().map(f64::abs).fold(0.0, f64::max)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn speed(&self) -> &SpeedFn {
        &self.speed
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    pub fn initial(&self) -> &LiftFn {
        &self.initial
    }

    pub fn second_level(&self) -> &LiftFn {
        &self.second_level
    }

    pub fn boundary(&self) -> &BoundaryRule {
        &self.boundary
    }

    /// Levels `t = −dt` and `t = 0` sampled from the problem's callables.
    pub fn initial_levels(&self) -> Result<(GridFunction, GridFunction)> {
        let prev = GridFunction::from_fn(self.grid, -self.dt, |x| (self.second_level)(x))?;
        let curr = GridFunction::from_fn(self.grid, 0.0, |x| (self.initial)(x))?;
        Ok((prev, curr))
    }
}

/// One-step multiplicative Taylor start for problems without a known
/// solution: `w(x, −dt) ≈ h(x) · h*(x)^{c(x) dt}`, with `h*` a centered
/// finite quotient of step `h_step`.
///
/// Second-order accurate overall: the start level is off by `O(dt²)`, which
/// the leapfrog carries without amplification.
pub fn taylor_second_level(
    initial: LiftFn,
    speed: SpeedFn,
    dt: f64,
    h_step: f64,
) -> Result<LiftFn> {
    let stencil = QuotientStencil::centered(h_step)?;
    Ok(Arc::new(move |x| {
        let h = initial(x)?;
        let star = finite_quotient(|t| initial(t), x, stencil)?;
        h.checked_mul(star.pow_real(speed(x) * dt)?)
    }))
}

fn same_grid(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Config("time levels live on different grids".into()))
    }
}

/// Advances `(prev, curr)` by one step of the multiplicative leapfrog.
pub fn leapfrog_step(
    prev: &GridFunction,
    curr: &GridFunction,
    problem: &AdvectionProblem,
) -> Result<GridFunction> {
    same_grid(&prev.grid, &problem.grid)?;
    same_grid(&curr.grid, &problem.grid)?;
    let dt = problem.dt;
    if (prev.time - (curr.time - dt)).abs() > 1e-9 * dt.max(curr.time.abs()) {
        return Err(Error::Config(format!(
            "time levels {} and {} are not one step of {dt} apart",
            prev.time, curr.time
        )));
    }
    let n = problem.grid.n_points();
    let ratio = dt / problem.grid.dx();
    let old = prev.values.components();
    let w = curr.values.components();
    let update = |j: usize, left: SurfacePoint, right: SurfacePoint| -> Result<SurfacePoint> {
        let exponent = -problem.speeds[j] * ratio;
        old[j].checked_mul(right.checked_div(left)?.pow_real(exponent)?)
    };

    let mut next = Vec::with_capacity(n);
    let t_new = curr.time + dt;
    match &problem.boundary {
        BoundaryRule::Periodic { winding } => {
            next.push(update(0, w[n - 1].shift_sheet(-winding), w[1])?);
            for j in 1..n - 1 {
                next.push(update(j, w[j - 1], w[j + 1])?);
            }
            next.push(update(n - 1, w[n - 2], w[0].shift_sheet(*winding))?);
        }
        BoundaryRule::ExactInjection(reference) => {
            next.push(reference(problem.grid.x(0), t_new)?);
            for j in 1..n - 1 {
                next.push(update(j, w[j - 1], w[j + 1])?);
            }
            next.push(reference(problem.grid.x(n - 1), t_new)?);
        }
    }
    GridFunction::new(problem.grid, SurfaceVector::new(next)?, t_new)
}

/// Result of [`run`]: the last two time levels and, when requested, every
/// level produced along the way.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub previous: GridFunction,
    pub last: GridFunction,
    pub history: Option<Vec<GridFunction>>,
}

/// Steps the solver forward from a pair of consecutive levels.
pub fn continue_run(
    problem: &AdvectionProblem,
    previous: GridFunction,
    last: GridFunction,
    n_steps: usize,
    keep_history: bool,
) -> Result<RunOutput> {
    if n_steps == 0 {
        return Err(Error::Config("a run needs at least one step".into()));
    }
    let mut history = keep_history.then(|| Vec::with_capacity(n_steps));
    let mut prev = previous;
    let mut curr = last;
    for _ in 0..n_steps {
        let next = leapfrog_step(&prev, &curr, problem)?;
        if let Some(h) = history.as_mut() {
            h.push(next.clone());
        }
        prev = std::mem::replace(&mut curr, next);
    }
    Ok(RunOutput {
        previous: prev,
        last: curr,
        history,
    })
}

/// Initializes both levels from the problem and takes `n_steps` steps.
pub fn run(problem: &AdvectionProblem, n_steps: usize) -> Result<RunOutput> {
    let (prev, curr) = problem.initial_levels()?;
    continue_run(problem, prev, curr, n_steps, false)
}

/// As [`run`], recording every level.
pub fn run_with_history(problem: &AdvectionProblem, n_steps: usize) -> Result<RunOutput> {
    let (prev, curr) = problem.initial_levels()?;
    continue_run(problem, prev, curr, n_steps, true)
}

fn reference_vector<R>(w: &GridFunction, reference: R) -> Result<SurfaceVector>
where
    R: Fn(f64) -> Result<SurfacePoint>,
{
    let g = w.grid;
    SurfaceVector::new(
        (0..g.n_points())
            .map(|j| reference(g.x(j)))
            .collect::<Result<_>>()?,
    )
}

/// `‖log(ref ⊘ w)‖`, the logarithm of [`star_rel_error`]. Never overflows.
pub fn log_star_rel_error<R>(w: &GridFunction, reference: R, spec: &NormSpec) -> Result<f64>
where
    R: Fn(f64) -> Result<SurfacePoint>,
{
    let r = reference_vector(w, reference)?;
    Ok(r.vec_div(&w.values)?.log_star_norm(spec))
}

/// `‖ref ⊘ w‖_*`: one when `w` is exact, growing with the error.
pub fn star_rel_error<R>(w: &GridFunction, reference: R, spec: &NormSpec) -> Result<f64>
where
    R: Fn(f64) -> Result<SurfacePoint>,
{
    let r = reference_vector(w, reference)?;
    crate::mvector::star_norm(&r.vec_div(&w.values)?, spec)
}

/// `‖Pr w − exact‖ / ‖exact‖` on the grid.
pub fn projected_rel_error<E>(w: &GridFunction, exact: E, spec: &NormSpec) -> Result<f64>
where
    E: Fn(f64) -> Complex64,
{
    let g = w.grid;
    let truth: Vec<Complex64> = (0..g.n_points()).map(|j| exact(g.x(j))).collect();
    relative_difference(&w.project(), &truth, spec)
}

/// `‖approx − truth‖ / ‖truth‖`.
pub fn relative_difference(
    approx: &[Complex64],
    truth: &[Complex64],
    spec: &NormSpec,
) -> Result<f64> {
    if approx.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: approx.len(),
        });
    }
    let denom = spec.norm(truth);
    if denom == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let diff: Vec<Complex64> = approx.iter().zip(truth).map(|(a, b)| a - b).collect();
    Ok(spec.norm(&diff) / denom)
}

/// Grid samples per wavelength of a carrier `e^{ikx}`: `2π / (k dx)`.
pub fn points_per_wavelength(k: f64, dx: f64) -> f64 {
    std::f64::consts::TAU / (k.abs() * dx)
}

/// Observed convergence orders `log2(e_i / e_{i+1})` for errors at
/// successively halved resolutions.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
