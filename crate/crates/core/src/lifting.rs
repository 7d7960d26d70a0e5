//! Lifting complex data onto the surface: choosing a continuous sheet.
//!
//! [`lift_samples`] is grid-level analytic continuation: it starts from one
//! embedding and accumulates principal-argument increments between
//! neighbours. [`lift_hankel`] lifts the Hankel functions `H_n^{(1,2)}`
//! pointwise, without sampling.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::bessel::{bessel_j, bessel_y, j_zeros_below};
use crate::error::{Error, Result};
use crate::surface::{branch_arg, SurfacePoint};

/// Non-vanishing complex samples on a strictly increasing real grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSamples1D {
    xs: Vec<f64>,
    zs: Vec<Complex64>,
}

impl ComplexSamples1D {
    pub fn new(xs: Vec<f64>, zs: Vec<Complex64>) -> Result<Self> {
        if xs.len() != zs.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                found: zs.len(),
            });
        }
        if xs
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::Config(
                "sample nodes must be strictly increasing".into(),
            ));
        }
        if let Some(index) = zs.iter().position(|z| z.norm() == 0.0 || !z.is_finite()) {
            return Err(Error::Lifting {
                index,
                reason: "sample is zero or non-finite".into(),
            });
        }
        Ok(Self { xs, zs })
    }

    /// Samples `f` at every node.
    pub fn from_fn<F: Fn(f64) -> Complex64>(xs: Vec<f64>, f: F) -> Result<Self> {
        let zs = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, zs)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn zs(&self) -> &[Complex64] {
        &self.zs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Surface-valued samples whose projection is the lifted data.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSamples1D {
    pub xs: Vec<f64>,
    pub ws: Vec<SurfacePoint>,
}

impl LiftedSamples1D {
    pub fn arguments(&self) -> Vec<f64> {
        self.ws.iter().map(|w| w.argument()).collect()
    }
}

/// Unwraps the phase of `s`.
///
/// The first point gets argument `theta0`, or the principal argument of
/// `zs[0]` when `None`. Each further point adds the principal argument of
/// `zs[j+1]/zs[j]`, which must lie strictly inside `(−π, π)`.
pub fn lift_samples(s: &ComplexSamples1D, theta0: Option<f64>) -> Result<LiftedSamples1D> {
    let mut ws = Vec::with_capacity(s.len());
    let Some(&z0) = s.zs.first() else {
        return Ok(LiftedSamples1D { xs: Vec::new(), ws });
    };
    let mut theta = theta0.unwrap_or_else(|| z0.arg());
    ws.push(SurfacePoint::new(z0.norm(), theta)?);
    for (j, pair) in s.zs.windows(2).enumerate() {
        let step = (pair[1] / pair[0]).arg();
        if step.abs() >= PI {
            return Err(Error::Lifting {
                index: j + 1,
                reason: "neighbour ratio lies on the negative real axis; sheet is ambiguous".into(),
            });
        }
        theta += step;
        ws.push(SurfacePoint::new(pair[1].norm(), theta)?);
    }
    Ok(LiftedSamples1D {
        xs: s.xs.clone(),
        ws,
    })
}

/// Which Hankel function: `H^{(1)} = J + iY` or `H^{(2)} = J − iY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

impl TryFrom<u32> for HankelKind {
    type Error = Error;

    fn try_from(kind: u32) -> Result<Self> {
        match kind {
            1 => Ok(HankelKind::First),
            2 => Ok(HankelKind::Second),
            _ => Err(Error::Domain(format!(
                "Hankel kind must be 1 or 2, got {kind}"
            ))),
        }
    }
}

/// `H_n^{(kind)}(x)` as a complex number.
pub fn hankel(kind: HankelKind, n: u32, x: f64) -> Result<Complex64> {
    let j = bessel_j(n, x)?;
    let y = bessel_y(n, x)?;
    Ok(match kind {
        HankelKind::First => Complex64::new(j, y),
        HankelKind::Second => Complex64::new(j, -y),
    })
}

/// The Hankel function lifted to a surface point whose argument is
/// continuous in `x`.
///
/// The modulus is `√(J_n² + Y_n²)`. For the first kind the argument equals
/// `Arg H + 2πm`, `m` the number of even-indexed zeros of `Y_n` below `x`;
/// the second kind is the conjugate, so its argument is negated.
///
/// Both `n = 0` and `n = 1` share a pattern: `H^{(1)}` starts in the fourth
/// quadrant and turns counter-clockwise, crossing the imaginary axis at the
/// zeros of `J_n` and the negative real axis at the even zeros of `Y_n`.
/// The sheet is therefore fixed by the number of `J_n` zeros passed: an even
/// count means the right half plane (principal branch), an odd count the left
/// (branch centred at π). Near a `J_n` zero both branches are valid and
/// agree, so a zero located to within rounding never selects a wrong sheet.
pub fn lift_hankel(kind: HankelKind, n: u32, x: f64) -> Result<SurfacePoint> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!(
            "lift_hankel requires x > 0, got {x}"
        )));
    }
    let h1 = hankel(HankelKind::First, n, x)?;
    let passed = j_zeros_below(n, x);
    let center = if passed.is_multiple_of(2) { 0.0 } else { PI };
    let argument = branch_arg(h1, center) + TAU * (passed / 2) as f64;
    let argument = match kind {
        HankelKind::First => argument,
        HankelKind::Second => -argument,
    };
    SurfacePoint::new(h1.norm(), argument)
}
