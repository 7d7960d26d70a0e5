//! Scalar arithmetic on the Riemann surface of the logarithm.
//!
//! A [`SurfacePoint`] is a polar pair `(r, θ)` with `r > 0` and an argument
//! that is never reduced modulo 2π, so `log` is single valued on it. The maps
//! [`exp_lift`] and [`log_surface`] are mutually inverse bijections with the
//! complex plane. [`project`] forgets the sheet, and [`embed`] picks one.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default componentwise tolerance for [`SurfacePoint::approx_eq`].
pub const DEFAULT_TOL: f64 = 1e-12;

/// A point `(r, θ)` of the surface: `r > 0` and finite, `θ` finite and
/// unreduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    modulus: f64,
    argument: f64,
}

/// A point of the closure of the surface, which also admits `r = 0`.
///
/// Zero-modulus points all project to complex zero, so their argument is
/// stored as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosurePoint {
    modulus: f64,
    argument: f64,
}

fn check_modulus(op: &'static str, modulus: f64) -> Result<f64> {
    if modulus.is_finite() && modulus > 0.0 {
        Ok(modulus)
    } else {
        Err(Error::Range { op, modulus })
    }
}

fn check_argument(op: &'static str, argument: f64) -> Result<f64> {
    if argument.is_finite() {
        Ok(argument)
    } else {
        Err(Error::Domain(format!(
            "{op}: non-finite argument {argument}"
        )))
    }
}

impl SurfacePoint {
    /// The multiplicative unit `(1, 0)`.
    pub const ONE: SurfacePoint = SurfacePoint {
        modulus: 1.0,
        argument: 0.0,
    };

    pub fn new(modulus: f64, argument: f64) -> Result<Self> {
        if modulus.is_finite() && modulus > 0.0 && argument.is_finite() {
            Ok(Self { modulus, argument })
        } else {
            Err(Error::InvalidPoint { modulus, argument })
        }
    }

    /// A positive real number viewed as a point on the principal sheet.
    pub fn real(value: f64) -> Result<Self> {
        Self::new(value, 0.0)
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn ln_modulus(&self) -> f64 {
        self.modulus.ln()
    }

    /// `ln r + iθ`.
    pub fn log(&self) -> Complex64 {
        log_surface(*self)
    }

    /// `r e^{iθ}`.
    pub fn project(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.argument)
    }

    pub fn checked_mul(self, rhs: SurfacePoint) -> Result<SurfacePoint> {
        Ok(SurfacePoint {
            modulus: check_modulus("mul", self.modulus * rhs.modulus)?,
            argument: check_argument("mul", self.argument + rhs.argument)?,
        })
    }

    pub fn checked_div(self, rhs: SurfacePoint) -> Result<SurfacePoint> {
        Ok(SurfacePoint {
            modulus: check_modulus("div", self.modulus / rhs.modulus)?,
            argument: check_argument("div", self.argument - rhs.argument)?,
        })
    }

    /// `exp(w log self)` for a complex exponent `w = u + iv`, i.e.
    /// `(r^u e^{-θv}, θu + v ln r)`.
    pub fn pow_complex(self, w: Complex64) -> Result<SurfacePoint> {
        let ln_r = self.modulus.ln();
        let ln_mod = w.re * ln_r - self.argument * w.im;
        let argument = self.argument * w.re + ln_r * w.im;
        Ok(SurfacePoint {
            modulus: check_modulus("pow", ln_mod.exp())?,
            argument: check_argument("pow", argument)?,
        })
    }

    /// Real power; same as `pow_complex` with zero imaginary part.
    pub fn pow_real(self, u: f64) -> Result<SurfacePoint> {
        self.pow_complex(Complex64::new(u, 0.0))
    }

    /// Surface power `self^{Pr other}`.
    pub fn pow_surface(self, other: SurfacePoint) -> Result<SurfacePoint> {
        self.pow_complex(other.project())
    }

    pub fn recip(self) -> Result<SurfacePoint> {
        SurfacePoint::ONE.checked_div(self)
    }

    /// Shift to another sheet: adds `2π·sheets` to the argument.
    pub fn shift_sheet(self, sheets: i64) -> SurfacePoint {
        SurfacePoint {
            modulus: self.modulus,
            argument: self.argument + TAU * sheets as f64,
        }
    }

    /// `|log self|`, the logarithm of the multiplicative absolute value.
    /// Unlike [`star_abs`] it cannot overflow.
    pub fn log_star_abs(&self) -> f64 {
        self.log().norm()
    }

    /// Componentwise comparison: relative on the modulus, absolute on the
    /// argument.
    pub fn approx_eq(&self, other: &SurfacePoint, tol: f64) -> bool {
        let scale = self.modulus.abs().max(other.modulus.abs());
        (self.modulus - other.modulus).abs() <= tol * scale
            && (self.argument - other.argument).abs() <= tol
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.modulus, self.argument)
    }
}

impl ClosurePoint {
    pub const ZERO: ClosurePoint = ClosurePoint {
        modulus: 0.0,
        argument: 0.0,
    };

    pub fn new(modulus: f64, argument: f64) -> Result<Self> {
        if !(modulus.is_finite() && modulus >= 0.0 && argument.is_finite()) {
            return Err(Error::InvalidPoint { modulus, argument });
        }
        if modulus == 0.0 {
            Ok(Self::ZERO)
        } else {
            Ok(Self { modulus, argument })
        }
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn is_zero(&self) -> bool {
        self.modulus == 0.0
    }

    pub fn project(&self) -> Complex64 {
        project(*self)
    }

    /// The point as a surface point, or a range error at the origin.
    pub fn to_surface(self) -> Result<SurfacePoint> {
        SurfacePoint::new(self.modulus, self.argument).map_err(|_| Error::Range {
            op: "to_surface",
            modulus: self.modulus,
        })
    }

    /// Product with a surface point; stays in the closure.
    pub fn mul_surface(self, rhs: SurfacePoint) -> Result<ClosurePoint> {
        if self.is_zero() {
            return Ok(Self::ZERO);
        }
        let modulus = self.modulus * rhs.modulus;
        if !modulus.is_finite() {
            return Err(Error::Range { op: "mul", modulus });
        }
        ClosurePoint::new(modulus, self.argument + rhs.argument)
    }
}

impl From<SurfacePoint> for ClosurePoint {
    fn from(p: SurfacePoint) -> Self {
        ClosurePoint {
            modulus: p.modulus,
            argument: p.argument,
        }
    }
}

/// `exp(a + ib) = (e^a, b)`.
pub fn exp_lift(z: Complex64) -> Result<SurfacePoint> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("exp_lift of non-finite {z}")));
    }
    Ok(SurfacePoint {
        modulus: check_modulus("exp_lift", z.re.exp())?,
        argument: z.im,
    })
}

/// `log(r, θ) = ln r + iθ`; the exact inverse of [`exp_lift`].
pub fn log_surface(w: SurfacePoint) -> Complex64 {
    Complex64::new(w.modulus.ln(), w.argument)
}

/// `Pr(r, θ) = r cos θ + i r sin θ`, defined on the closure.
pub fn project(w: ClosurePoint) -> Complex64 {
    if w.modulus == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(w.modulus, w.argument)
    }
}

/// Argument of `z` on the branch centred at `branch_center`, i.e. in
/// `(τ − π, τ + π]`. The cut is the ray at angle `τ + π`.
pub fn branch_arg(z: Complex64, branch_center: f64) -> f64 {
    let d = z.arg() - branch_center;
    let shifted = d - TAU * ((d - PI) / TAU).ceil();
    branch_center + shifted
}

/// `Em_τ z = (|z|, arg_τ z)`; with `τ = 0` this is the principal embedding.
/// `project(embed(z, τ)) == z` for every `τ`.
pub fn embed(z: Complex64, branch_center: f64) -> ClosurePoint {
    let modulus = z.norm();
    if modulus == 0.0 {
        return ClosurePoint::ZERO;
    }
    ClosurePoint {
        modulus,
        argument: branch_arg(z, branch_center),
    }
}

/// Principal embedding of a non-zero complex number, as a surface point.
pub fn embed_nonzero(z: Complex64, branch_center: f64) -> Result<SurfacePoint> {
    embed(z, branch_center).to_surface()
}

/// `(exp|log w|, 0)`; the modulus is always at least one.
pub fn star_abs(w: SurfacePoint) -> Result<SurfacePoint> {
    Ok(SurfacePoint {
        modulus: check_modulus("star_abs", w.log_star_abs().exp())?,
        argument: 0.0,
    })
}
