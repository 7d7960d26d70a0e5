use std::f64::consts::TAU;
use std::sync::Arc;

use geocalc::interp::fit_exp_poly;
use geocalc::lifting::{lift_hankel, lift_samples, ComplexSamples1D, HankelKind};
use geocalc::pde::{
    continue_run, log_star_rel_error, observed_orders, points_per_wavelength, projected_rel_error,
    relative_difference, run, run_classical, taylor_second_level, AdvectionProblem, BoundaryRule,
    ClassicalBoundaryRule, Grid1D, GridFunction, LiftFn,
};
use geocalc::surface::star_abs;
use geocalc::{exp_lift, Complex64, SurfacePoint, SurfaceVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{ConvergeArgs, HankelArgs, NyquistArgs, SpeedSpec, StabilityArgs, WaveArgs};
use crate::report::{num, Table};
use crate::CliError;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(config(format!("--{name} must be positive, got {v}")))
    }
}

/// Number of steps `T/dt`, which must be a positive integer.
fn step_count(t_final: f64, dt: f64) -> Result<usize, CliError> {
    check_positive("T", t_final)?;
    check_positive("dt", dt)?;
    let ratio = t_final / dt;
    let n = ratio.round();
    if n < 1.0 || (ratio - n).abs() > 1e-9 * ratio.max(1.0) {
        return Err(config(format!(
            "T/dt = {ratio} is not a positive integer; choose dt dividing T"
        )));
    }
    Ok(n as usize)
}

fn check_cfl(speed: f64, dt: f64, dx: f64) -> Result<(), CliError> {
    let courant = (speed * dt / dx).abs();
    if courant >= 1.0 {
        return Err(CliError::Solver(geocalc::Error::Cfl { index: 0, courant }));
    }
    Ok(())
}

fn constant_speed(w: &WaveArgs) -> Result<f64, CliError> {
    match (w.c, w.speed) {
        (Some(c), _) => Ok(c),
        (None, Some(SpeedSpec::Const(c))) => Ok(c),
        (None, None) => Ok(1.0),
        (None, Some(s)) => Err(config(format!(
            "this experiment needs a constant speed, got {s}"
        ))),
    }
}

/// Validated parameters of a Gaussian-modulated wave run.
struct WaveSetup {
    a: f64,
    k: f64,
    speed: f64,
    dx: f64,
    dt: f64,
    steps: usize,
    grid: Grid1D,
}

impl WaveSetup {
    fn new(w: &WaveArgs) -> Result<Self, CliError> {
        check_positive("dx", w.dx)?;
        let steps = step_count(w.t_final, w.dt)?;
        if !(w.a.is_finite() && w.a >= 0.0 && w.k.is_finite()) {
            return Err(config("--a must be non-negative and --k finite"));
        }
        if w.x_max.partial_cmp(&w.x_min) != Some(std::cmp::Ordering::Greater) {
            return Err(config("--x-max must exceed --x-min"));
        }
        let speed = constant_speed(w)?;
        check_cfl(speed, w.dt, w.dx)?;
        Ok(Self {
            a: w.a,
            k: w.k,
            speed,
            dx: w.dx,
            dt: w.dt,
            steps,
            grid: Grid1D::spanning(w.x_min, w.x_max, w.dx)?,
        })
    }

    fn log_wave(&self) -> impl Fn(f64) -> Complex64 + Copy + Send + Sync + 'static {
        let (a, k) = (self.a, self.k);
        move |x| Complex64::new(-a * x * x, k * x)
    }

    fn t_final(&self) -> f64 {
        self.steps as f64 * self.dt
    }

    fn ppw(&self) -> f64 {
        points_per_wavelength(self.k, self.dx)
    }

    fn multiplicative_error(&self, spec: &geocalc::NormSpec) -> Result<(f64, f64), CliError> {
        let g = self.log_wave();
        let c = self.speed;
        let dt = self.dt;
        let problem = AdvectionProblem::new(
            self.grid,
            dt,
            Arc::new(move |_| c),
            Arc::new(move |x| exp_lift(g(x))),
            Arc::new(move |x| exp_lift(g(x + c * dt))),
            BoundaryRule::ExactInjection(Arc::new(move |x, t| exp_lift(g(x - c * t)))),
        )?;
        let out = run(&problem, self.steps)?;
        let t = self.t_final();
        let projected = projected_rel_error(&out.last, |x| g(x - c * t).exp(), spec)?;
        let log_star = log_star_rel_error(&out.last, |x| exp_lift(g(x - c * t)), spec)?;
        Ok((projected, log_star))
    }

    fn classical_error(&self, spec: &geocalc::NormSpec) -> Result<f64, CliError> {
        let g = self.log_wave();
        let c = self.speed;
        let dt = self.dt;
        let out = run_classical(
            &self.grid,
            dt,
            &|_| c,
            &|x| g(x).exp(),
            &|x| g(x + c * dt).exp(),
            &ClassicalBoundaryRule::ExactInjection(Arc::new(move |x, t| g(x - c * t).exp())),
            self.steps,
        )?;
        let t = self.t_final();
        let truth: Vec<Complex64> = self
            .grid
            .xs()
            .into_iter()
            .map(|x| g(x - c * t).exp())
            .collect();
        Ok(relative_difference(&out, &truth, spec)?)
    }
}

pub fn advect_exact(w: &WaveArgs) -> Result<Table, CliError> {
    let s = WaveSetup::new(w)?;
    let spec = w.output.norm.spec();
    let (projected, log_star) = s.multiplicative_error(&spec)?;
    let mut t = Table::new(&[
        "a",
        "k",
        "c",
        "dx",
        "dt",
        "T",
        "steps",
        "projected_rel_error",
        "star_rel_error",
        "points_per_wavelength",
    ]);
    t.push(vec![
        num(s.a),
        num(s.k),
        num(s.speed),
        num(s.dx),
        num(s.dt),
        num(s.t_final()),
        s.steps.to_string(),
        num(projected),
        num(log_star.exp()),
        num(s.ppw()),
    ]);
    Ok(t)
}

pub fn classical_compare(w: &WaveArgs) -> Result<Table, CliError> {
    let s = WaveSetup::new(w)?;
    let spec = w.output.norm.spec();
    let (multiplicative, _) = s.multiplicative_error(&spec)?;
    let classical = s.classical_error(&spec)?;
    let mut t = Table::new(&[
        "method",
        "k",
        "dx",
        "dt",
        "T",
        "projected_rel_error",
        "points_per_wavelength",
    ]);
    for (method, err) in [("multiplicative", multiplicative), ("classical", classical)] {
        t.push(vec![
            method.to_string(),
            num(s.k),
            num(s.dx),
            num(s.dt),
            num(s.t_final()),
            num(err),
            num(s.ppw()),
        ]);
    }
    Ok(t)
}

/// Positive real data `1 + ½ e^{−a x²} cos(k x)`: its lift lives on the
/// principal sheet, so the log carries the full oscillation and the
/// multiplicative scheme has no sampling advantage.
pub fn offset_failure(w: &WaveArgs) -> Result<Table, CliError> {
    let s = WaveSetup::new(w)?;
    let spec = w.output.norm.spec();
    let (a, k, c, dt) = (s.a, s.k, s.speed, s.dt);
    let f = move |x: f64| 1.0 + 0.5 * (-a * x * x).exp() * (k * x).cos();
    let xs = s.grid.xs();

    let lifted_level = |time: f64| -> Result<SurfaceVector, CliError> {
        let samples =
            ComplexSamples1D::from_fn(xs.clone(), |x| Complex64::new(f(x - c * time), 0.0))?;
        Ok(SurfaceVector::new(lift_samples(&samples, None)?.ws)?)
    };
    let prev = GridFunction::new(s.grid, lifted_level(-dt)?, -dt)?;
    let curr = GridFunction::new(s.grid, lifted_level(0.0)?, 0.0)?;
    let unused: LiftFn = Arc::new(|_| Ok(SurfacePoint::ONE));
    let problem = AdvectionProblem::new(
        s.grid,
        dt,
        Arc::new(move |_| c),
        unused.clone(),
        unused,
        BoundaryRule::ExactInjection(Arc::new(move |x, t| SurfacePoint::real(f(x - c * t)))),
    )?;
    let out = continue_run(&problem, prev, curr, s.steps, false)?;
    let t_final = s.t_final();
    let truth: Vec<Complex64> = xs
        .iter()
        .map(|&x| Complex64::new(f(x - c * t_final), 0.0))
        .collect();
    let mult_re: Vec<Complex64> = out
        .last
        .project()
        .iter()
        .map(|z| Complex64::new(z.re, 0.0))
        .collect();
    let multiplicative = relative_difference(&mult_re, &truth, &spec)?;

    let classical_out = run_classical(
        &s.grid,
        dt,
        &|_| c,
        &|x| Complex64::new(f(x), 0.0),
        &|x| Complex64::new(f(x + c * dt), 0.0),
        &ClassicalBoundaryRule::ExactInjection(Arc::new(move |x, t| {
            Complex64::new(f(x - c * t), 0.0)
        })),
        s.steps,
    )?;
    let classical = relative_difference(&classical_out, &truth, &spec)?;

    let mut t = Table::new(&[
        "method",
        "a",
        "k",
        "dx",
        "dt",
        "T",
        "projected_rel_error",
        "points_per_wavelength",
    ]);
    for (method, err) in [("multiplicative", multiplicative), ("classical", classical)] {
        t.push(vec![
            method.to_string(),
            num(a),
            num(k),
            num(s.dx),
            num(dt),
            num(t_final),
            num(err),
            num(s.ppw()),
        ]);
    }
    Ok(t)
}

fn converge_ic(x: f64) -> Complex64 {
    Complex64::new(0.5 * x.cos(), x)
}

fn periodic_run(
    grid: Grid1D,
    speed: SpeedSpec,
    ratio: f64,
    t_final: f64,
) -> Result<(GridFunction, f64), CliError> {
    let steps = (t_final / (ratio * grid.dx())).round().max(1.0) as usize;
    let dt = t_final / steps as f64;
    let speed_fn = Arc::new(move |x: f64| speed.at(x));
    let initial: LiftFn = Arc::new(|x| exp_lift(converge_ic(x)));
    let second = taylor_second_level(initial.clone(), speed_fn.clone(), dt, grid.dx())?;
    let problem = AdvectionProblem::new(
        grid,
        dt,
        speed_fn,
        initial,
        second,
        BoundaryRule::Periodic { winding: 1 },
    )?;
    Ok((run(&problem, steps)?.last, dt))
}

/// Self-convergence on `[0, 2π)` for `exp(½ cos x + i x)` against the same
/// scheme on a grid `reference_factor` times finer than the finest level.
pub fn advect_converge(cfg: &ConvergeArgs) -> Result<Table, CliError> {
    let speed = match cfg.c {
        Some(c) => SpeedSpec::Const(c),
        None => cfg.speed,
    };
    check_positive("T", cfg.t_final)?;
    check_positive("dt-over-dx", cfg.dt_over_dx)?;
    if cfg.levels < 2 {
        return Err(config("--levels must be at least 2"));
    }
    if cfg.reference_factor < 2 {
        return Err(config("--reference-factor must be at least 2"));
    }
    let base_points = match cfg.dx {
        None => 32,
        Some(dx) => {
            check_positive("dx", dx)?;
            let n = (TAU / dx).round();
            if (n * dx - TAU).abs() > 1e-9 * TAU || n < 3.0 {
                return Err(config(format!(
                    "--dx {dx} must divide 2π into at least 3 cells"
                )));
            }
            n as usize
        }
    };
    if cfg.dt_over_dx * speed.max_abs() * 1.05 >= 1.0 {
        return Err(CliError::Solver(geocalc::Error::Cfl {
            index: 0,
            courant: cfg.dt_over_dx * speed.max_abs(),
        }));
    }
    let sizes: Vec<usize> = (0..cfg.levels).map(|i| base_points << i).collect();
    let finest = *sizes.last().expect("at least two levels");
    let fine_grid = Grid1D::periodic(0.0, TAU, finest * cfg.reference_factor)?;
    let (reference, _) = periodic_run(fine_grid, speed, cfg.dt_over_dx, cfg.t_final)?;
    let spec = cfg.output.norm.spec();

    let mut rows = Vec::new();
    for &n in &sizes {
        let grid = Grid1D::periodic(0.0, TAU, n)?;
        let (w, dt) = periodic_run(grid, speed, cfg.dt_over_dx, cfg.t_final)?;
        let r = reference.restrict_to(&grid)?;
        let log_star = r.values.vec_div(&w.values)?.log_star_norm(&spec);
        let projected = relative_difference(&w.project(), &r.project(), &spec)?;
        rows.push((grid.dx(), dt, log_star, projected));
    }
    let log_errors: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let orders = observed_orders(&log_errors);

    let mut t = Table::new(&[
        "dx",
        "dt",
        "star_rel_error",
        "projected_rel_error",
        "observed_order",
        "points_per_wavelength",
    ]);
    for (i, (dx, dt, log_star, projected)) in rows.into_iter().enumerate() {
        let order = if i == 0 {
            String::new()
        } else {
            num(orders[i - 1])
        };
        t.push(vec![
            num(dx),
            num(dt),
            num(log_star.exp()),
            num(projected),
            order,
            num(points_per_wavelength(1.0, dx)),
        ]);
    }
    Ok(t)
}

pub fn nyquist_demo(cfg: &NyquistArgs) -> Result<Table, CliError> {
    check_positive("dx", cfg.dx)?;
    check_positive("a", cfg.a)?;
    if cfg.samples == 0 {
        return Err(config("--samples must be positive"));
    }
    let (k, a, dx) = (cfg.k, cfg.a, cfg.dx);
    let wave = move |x: f64| Complex64::new(0.0, k * x);
    let gauss = move |x: f64| Complex64::new(-a * x * x, 0.0);
    type Case = (
        &'static str,
        Box<dyn Fn(f64) -> Complex64>,
        Vec<Complex64>,
        usize,
        f64,
    );
    let cases: Vec<Case> = vec![
        (
            "plane_wave",
            Box::new(wave),
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, k)],
            2,
            points_per_wavelength(k, dx),
        ),
        (
            "gaussian",
            Box::new(gauss),
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-a, 0.0),
            ],
            3,
            f64::INFINITY,
        ),
    ];
    let mut t = Table::new(&[
        "function",
        "samples",
        "spacing",
        "coefficient_error",
        "max_star_abs_error",
        "points_per_wavelength",
    ]);
    for (name, log_f, truth, n, ppw) in cases {
        let xs: Vec<f64> = (0..n).map(|j| j as f64 * dx).collect();
        let ws = xs
            .iter()
            .map(|&x| exp_lift(log_f(x)))
            .collect::<Result<Vec<_>, _>>()?;
        let fit = fit_exp_poly(&xs, &ws)?;
        let coeff_err = fit
            .coeffs()
            .iter()
            .zip(&truth)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max);
        let span = xs[n - 1];
        let mut worst: f64 = 1.0;
        for i in 0..cfg.samples {
            let x = span * (i as f64 + 0.5) / cfg.samples as f64;
            let ratio = fit.eval(x)?.checked_div(exp_lift(log_f(x))?)?;
            worst = worst.max(star_abs(ratio)?.modulus());
        }
        t.push(vec![
            name.to_string(),
            n.to_string(),
            num(dx),
            num(coeff_err),
            num(worst - 1.0),
            num(ppw),
        ]);
    }
    Ok(t)
}

pub fn hankel_lift(cfg: &HankelArgs) -> Result<Table, CliError> {
    check_positive("dx", cfg.dx)?;
    check_positive("x-min", cfg.x_min)?;
    if cfg.x_max.is_nan() || cfg.x_min.is_nan() || cfg.x_max < cfg.x_min {
        return Err(config("--x-max must be at least --x-min"));
    }
    let kind = HankelKind::try_from(cfg.kind)?;
    let count = ((cfg.x_max - cfg.x_min) / cfg.dx + 1e-9).floor() as usize + 1;
    let mut t = Table::new(&["x", "modulus", "argument", "re", "im"]);
    for i in 0..count {
        let x = cfg.x_min + i as f64 * cfg.dx;
        let w = lift_hankel(kind, cfg.n, x)?;
        let p = w.project();
        t.push(vec![
            num(x),
            num(w.modulus()),
            num(w.argument()),
            num(p.re),
            num(p.im),
        ]);
    }
    Ok(t)
}

/// Growth factor at which a probe stops; the error is then far beyond any
/// meaningful size and further steps only risk overflow.
const PROBE_CEILING: f64 = 1e6;

pub fn stability_probe(cfg: &StabilityArgs) -> Result<Table, CliError> {
    if cfg.points < 3 {
        return Err(config("--points must be at least 3"));
    }
    check_positive("noise", cfg.noise)?;
    let grid = Grid1D::periodic(0.0, TAU, cfg.points)?;
    let c = cfg.c;
    let dt = cfg
        .dt
        .unwrap_or(1.05 * grid.dx() / c.abs().max(f64::MIN_POSITIVE));
    check_positive("dt", dt)?;
    let k = cfg.k;
    let exact = move |x: f64, t: f64| exp_lift(Complex64::new(0.0, k as f64 * (x - c * t)));
    let problem = AdvectionProblem::new_unchecked(
        grid,
        dt,
        Arc::new(move |_| c),
        Arc::new(move |x| exact(x, 0.0)),
        Arc::new(move |x| exact(x, -dt)),
        BoundaryRule::Periodic { winding: k },
    )?;
    let (mut prev, clean) = problem.initial_levels()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.output.seed);
    let noisy = clean
        .values
        .iter()
        .map(|w| {
            let z = Complex64::new(
                rng.gen_range(-cfg.noise..cfg.noise),
                rng.gen_range(-cfg.noise..cfg.noise),
            );
            w.checked_mul(exp_lift(z)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut curr = GridFunction::new(grid, SurfaceVector::new(noisy)?, 0.0)?;
    let spec = cfg.output.norm.spec();
    let e0 = log_star_rel_error(&curr, |x| exact(x, 0.0), &spec)?;

    let mut t = Table::new(&["step", "t", "courant", "log_star_error", "growth"]);
    let courant = c * dt / grid.dx();
    t.push(vec!["0".into(), num(0.0), num(courant), num(e0), num(1.0)]);
    for step in 1..=cfg.steps {
        let out = continue_run(&problem, prev, curr, 1, false)?;
        prev = out.previous;
        curr = out.last;
        let time = curr.time;
        let e = log_star_rel_error(&curr, |x| exact(x, time), &spec)?;
        let growth = e / e0;
        t.push(vec![
            step.to_string(),
            num(time),
            num(courant),
            num(e),
            num(growth),
        ]);
        if growth >= PROBE_CEILING {
            break;
        }
    }
    Ok(t)
}
