//! Finite quotients: the multiplicative analogue of finite differences.
//!
//! For a surface-valued `f`, the forward quotient is `(f(x+h)/f(x))^{1/h}` and
//! the centered one `(f(x+h)/f(x−h))^{1/(2h)}`. Taking `log` turns them into
//! the classical difference quotients of `log f`, so they are exact on
//! log-linear (forward and centered) and log-quadratic (centered) functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surface::{exp_lift, SurfacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StencilKind {
    Forward,
    Centered,
}

/// Quotient stencil with step `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientStencil {
    kind: StencilKind,
    h: f64,
}

impl QuotientStencil {
    pub fn new(kind: StencilKind, h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 {
            Ok(Self { kind, h })
        } else {
            Err(Error::Config(format!(
                "stencil step must be positive, got {h}"
            )))
        }
    }

    pub fn forward(h: f64) -> Result<Self> {
        Self::new(StencilKind::Forward, h)
    }

    pub fn centered(h: f64) -> Result<Self> {
        Self::new(StencilKind::Centered, h)
    }

    pub fn kind(&self) -> StencilKind {
        self.kind
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Classical difference quotient of a real function with the same stencil.
    pub fn difference<G: Fn(f64) -> f64>(&self, g: G, x: f64) -> f64 {
        match self.kind {
            StencilKind::Forward => (g(x + self.h) - g(x)) / self.h,
            StencilKind::Centered => (g(x + self.h) - g(x - self.h)) / (2.0 * self.h),
        }
    }
}

/// Finite-quotient approximation of the multiplicative derivative at `x`.
pub fn finite_quotient<F>(f: F, x: f64, stencil: QuotientStencil) -> Result<SurfacePoint>
where
    F: Fn(f64) -> Result<SurfacePoint>,
{
    let h = stencil.h;
    let (hi, lo, width) = match stencil.kind {
        StencilKind::Forward => (f(x + h)?, f(x)?, h),
        StencilKind::Centered => (f(x + h)?, f(x - h)?, 2.0 * h),
    };
    hi.checked_div(lo)?.pow_real(1.0 / width)
}

/// Reference multiplicative derivative `exp((log f)'(x))` from an analytic
/// log and its derivative.
pub fn star_derivative_oracle<G, D>(_g: G, g_prime: D, x: f64) -> Result<SurfacePoint>
where
    G: Fn(f64) -> Complex64,
    D: Fn(f64) -> Complex64,
{
    exp_lift(g_prime(x))
}

/// Multiplicative derivative recovered from the projection:
/// `exp((Pr f)'/Pr f)`, with `(Pr f)'` a classical centered difference.
///
/// Only meaningful where `Pr f` does not cross the cut of the embedding
/// used to interpret the result; the value itself is sheet independent.
pub fn projected_star_derivative<F>(f: F, x: f64, h: f64) -> Result<SurfacePoint>
where
    F: Fn(f64) -> Result<SurfacePoint>,
{
    let p = f(x)?.project();
    let dp = (f(x + h)?.project() - f(x - h)?.project()) / (2.0 * h);
    exp_lift(dp / p)
}

/// The derivative identities checked by [`check_rule`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    /// `(f^c)* = (f*)^c`
    Power(Complex64),
    /// `(fg)* = f* g*`
    Product,
    /// `(f/g)* = f*/g*`
    Quotient,
    /// `(f^h)* = (f*)^h f^{h'}`, `h` real valued
    FunctionPower,
    /// `(f∘h)* = (f*∘h)^{h'}`, `h` real valued
    Chain,
}

/// Evaluates both sides of `rule` at `x`, every multiplicative derivative by
/// `stencil` and every classical derivative of `h_fn` by the matching
/// difference quotient, and returns `|log lhs − log rhs|`: the log of the
/// multiplicative absolute value of `lhs/rhs`. Zero means the sides agree.
///
/// `g` is used only by the product and quotient rules, `h_fn` only by the
/// function-power and chain rules.
pub fn check_rule<F, G, H>(
    rule: Rule,
    f: F,
    g: G,
    h_fn: H,
    x: f64,
    stencil: QuotientStencil,
) -> Result<f64>
where
    F: Fn(f64) -> Result<SurfacePoint>,
    G: Fn(f64) -> Result<SurfacePoint>,
    H: Fn(f64) -> f64,
{
    let (lhs, rhs) = match rule {
        Rule::Power(c) => {
            let lhs = finite_quotient(|t| f(t)?.pow_complex(c), x, stencil)?;
            let rhs = finite_quotient(&f, x, stencil)?.pow_complex(c)?;
            (lhs, rhs)
        }
        Rule::Product => {
            let lhs = finite_quotient(|t| f(t)?.checked_mul(g(t)?), x, stencil)?;
            let rhs =
                finite_quotient(&f, x, stencil)?.checked_mul(finite_quotient(&g, x, stencil)?)?;
            (lhs, rhs)
        }
        Rule::Quotient => {
            let lhs = finite_quotient(|t| f(t)?.checked_div(g(t)?), x, stencil)?;
            let rhs =
                finite_quotient(&f, x, stencil)?.checked_div(finite_quotient(&g, x, stencil)?)?;
            (lhs, rhs)
        }
        Rule::FunctionPower => {
            let lhs = finite_quotient(|t| f(t)?.pow_real(h_fn(t)), x, stencil)?;
            let dh = stencil.difference(&h_fn, x);
            let rhs = finite_quotient(&f, x, stencil)?
                .pow_real(h_fn(x))?
                .checked_mul(f(x)?.pow_real(dh)?)?;
            (lhs, rhs)
        }
        Rule::Chain => {
            let lhs = finite_quotient(|t| f(h_fn(t)), x, stencil)?;
            let dh = stencil.difference(&h_fn, x);
            let rhs = finite_quotient(&f, h_fn(x), stencil)?.pow_real(dh)?;
            (lhs, rhs)
        }
    };
    Ok((lhs.log() - rhs.log()).norm())
}

/// Remainder of the first-order multiplicative Taylor expansion,
/// `|log f(x) − log f(x0) − (log f)'(x0)(x − x0)|`, given `log f(x0)` and
/// `(log f)'(x0)`.
pub fn taylor_remainder<F>(
    f: F,
    log_at_x0: Complex64,
    log_derivative_at_x0: Complex64,
    x0: f64,
    x: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<SurfacePoint>,
{
    let lx = f(x)?.log();
    Ok((lx - log_at_x0 - log_derivative_at_x0 * (x - x0)).norm())
}
