//! Finite-dimensional multiplicative vector spaces `e^X`.
//!
//! Vector addition is the componentwise product, scalar multiplication
//! `a ⊗ u = u^{log a}` is componentwise exponentiation, and the origin is the
//! all-ones vector. Norms are induced through `log`:
//! `‖u‖_* = exp ‖log u‖`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::surface::{embed, exp_lift, project, ClosurePoint, SurfacePoint};

/// A caller-supplied norm on `ℂ^n`.
pub type CustomNorm = Arc<dyn Fn(&[Complex64]) -> f64 + Send + Sync>;

/// Which underlying additive norm.
#[derive(Clone)]
pub enum NormKind {
    P1,
    P2,
    Inf,
    /// Any norm on `ℂ^n`, supplied by the caller.
    Custom(CustomNorm),
}

impl fmt::Debug for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::P1 => f.write_str("P1"),
            NormKind::P2 => f.write_str("P2"),
            NormKind::Inf => f.write_str("Inf"),
            NormKind::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// A norm together with its equivalence constant `C`, the smallest value
/// with `‖x‖_∞ ≤ C ‖x‖`. Every p-norm has `C = 1`.
#[derive(Debug, Clone)]
pub struct NormSpec {
    kind: NormKind,
    constant: f64,
}

impl NormSpec {
    pub fn p1() -> Self {
        Self {
            kind: NormKind::P1,
            constant: 1.0,
        }
    }

    pub fn p2() -> Self {
        Self {
            kind: NormKind::P2,
            constant: 1.0,
        }
    }

    pub fn inf() -> Self {
        Self {
            kind: NormKind::Inf,
            constant: 1.0,
        }
    }

    /// A caller-supplied norm; `constant` must satisfy `‖x‖_∞ ≤ C ‖x‖`.
    pub fn custom<N>(norm: N, constant: f64) -> Result<Self>
    where
        N: Fn(&[Complex64]) -> f64 + Send + Sync + 'static,
    {
        if !(constant.is_finite() && constant >= 1.0) {
            return Err(Error::Config(format!(
                "norm equivalence constant must be >= 1, got {constant}"
            )));
        }
        Ok(Self {
            kind: NormKind::Custom(Arc::new(norm)),
            constant,
        })
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn norm(&self, xs: &[Complex64]) -> f64 {
        match &self.kind {
            NormKind::P1 => xs.iter().map(|z| z.norm()).sum(),
            NormKind::P2 => xs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            NormKind::Inf => xs.iter().map(|z| z.norm()).fold(0.0, f64::max),
            NormKind::Custom(f) => f(xs),
        }
    }
}

impl std::str::FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Self::p1()),
            "2" => Ok(Self::p2()),
            "inf" | "Inf" | "INF" => Ok(Self::inf()),
            other => Err(Error::Config(format!(
                "unknown norm '{other}' (use 1, 2 or inf)"
            ))),
        }
    }
}

/// An element of `e^X`: a non-empty array of surface points.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceVector(Vec<SurfacePoint>);

fn same_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        })
    }
}

impl SurfaceVector {
    pub fn new(components: Vec<SurfacePoint>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config(
                "surface vector must have at least one component".into(),
            ));
        }
        Ok(Self(components))
    }

    /// The multiplicative origin of dimension `n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![SurfacePoint::ONE; n])
    }

    /// Componentwise `exp` of an additive vector.
    pub fn exp(xs: &[Complex64]) -> Result<Self> {
        Self::new(xs.iter().map(|&z| exp_lift(z)).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[SurfacePoint] {
        &self.0
    }

    pub fn into_components(self) -> Vec<SurfacePoint> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SurfacePoint> {
        self.0.iter()
    }

    /// Componentwise `log`.
    pub fn log(&self) -> Vec<Complex64> {
        self.0.iter().map(|w| w.log()).collect()
    }

    /// `u ⊕ v`: componentwise product.
    pub fn vec_mul(&self, other: &SurfaceVector) -> Result<SurfaceVector> {
        same_len(self.len(), other.len())?;
        let c = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_mul(*b))
            .collect::<Result<_>>()?;
        Ok(SurfaceVector(c))
    }

    /// `u ⊘ v`: componentwise quotient.
    pub fn vec_div(&self, other: &SurfaceVector) -> Result<SurfaceVector> {
        same_len(self.len(), other.len())?;
        let c = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_div(*b))
            .collect::<Result<_>>()?;
        Ok(SurfaceVector(c))
    }

    /// Componentwise complex power `u^α`.
    pub fn pow_complex(&self, alpha: Complex64) -> Result<SurfaceVector> {
        let c = self
            .0
            .iter()
            .map(|w| w.pow_complex(alpha))
            .collect::<Result<_>>()?;
        Ok(SurfaceVector(c))
    }

    /// `‖log u‖`: the logarithm of the *norm, which never overflows.
    pub fn log_star_norm(&self, spec: &NormSpec) -> f64 {
        spec.norm(&self.log())
    }
}

impl std::ops::Index<usize> for SurfaceVector {
    type Output = SurfacePoint;

    fn index(&self, i: usize) -> &SurfacePoint {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a SurfaceVector {
    type Item = &'a SurfacePoint;
    type IntoIter = std::slice::Iter<'a, SurfacePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn vec_mul(u: &SurfaceVector, v: &SurfaceVector) -> Result<SurfaceVector> {
    u.vec_mul(v)
}

pub fn vec_div(u: &SurfaceVector, v: &SurfaceVector) -> Result<SurfaceVector> {
    u.vec_div(v)
}

/// `a ⊗ u = u^{log a}`, which equals `a^{log u}` componentwise.
pub fn scalar_pow(a: SurfacePoint, u: &SurfaceVector) -> Result<SurfaceVector> {
    u.pow_complex(a.log())
}

/// Multiplicative matrix-vector product `u^{log A}`: `exp(A · log u)`.
pub fn apply_log_matrix(a: &DMatrix<Complex64>, u: &SurfaceVector) -> Result<SurfaceVector> {
    if a.ncols() != u.len() {
        return Err(Error::DimensionMismatch {
            expected: a.ncols(),
            found: u.len(),
        });
    }
    let logs = nalgebra::DVector::from_vec(u.log());
    let image = a * logs;
    SurfaceVector::exp(image.as_slice())
}

/// `‖u‖_* = exp ‖log u‖`; always at least one.
pub fn star_norm(u: &SurfaceVector, spec: &NormSpec) -> Result<f64> {
    let modulus = u.log_star_norm(spec).exp();
    if modulus.is_finite() {
        Ok(modulus)
    } else {
        Err(Error::Range {
            op: "star_norm",
            modulus,
        })
    }
}

/// `(u, v)_* = exp Σ log u_i · conj(log v_i)`.
pub fn star_inner(u: &SurfaceVector, v: &SurfaceVector) -> Result<SurfacePoint> {
    same_len(u.len(), v.len())?;
    let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.log() * b.log().conj()).sum();
    exp_lift(ip)
}

/// Componentwise projection.
pub fn project_vec(u: &SurfaceVector) -> Vec<Complex64> {
    u.iter().map(|w| w.project()).collect()
}

/// Componentwise projection of a closure vector.
pub fn project_closure_vec(u: &[ClosurePoint]) -> Vec<Complex64> {
    u.iter().map(|&w| project(w)).collect()
}

/// Componentwise principal embedding; zero components map to the closure
/// origin.
pub fn embed_vec(xs: &[Complex64]) -> Vec<ClosurePoint> {
    xs.iter().map(|&z| embed(z, 0.0)).collect()
}

/// Right-hand side of the relative projection estimate,
/// `‖v ⊘ u‖_*^C − 1`, which bounds `‖Pr u − Pr v‖ / ‖Pr u‖`.
pub fn relative_bound(u: &SurfaceVector, v: &SurfaceVector, spec: &NormSpec) -> Result<f64> {
    let ratio = v.vec_div(u)?;
    let bound = (spec.constant() * ratio.log_star_norm(spec)).exp_m1();
    if bound.is_finite() {
        Ok(bound)
    } else {
        Err(Error::Range {
            op: "relative_bound",
            modulus: bound,
        })
    }
}

/// Left-hand side of the same estimate, `‖Pr u − Pr v‖ / ‖Pr u‖`.
pub fn projected_relative_difference(
    u: &SurfaceVector,
    v: &SurfaceVector,
    spec: &NormSpec,
) -> Result<f64> {
    same_len(u.len(), v.len())?;
    let pu = project_vec(u);
    let diff: Vec<Complex64> = pu.iter().zip(project_vec(v)).map(|(a, b)| a - b).collect();
    let denom = spec.norm(&pu);
    if denom == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(spec.norm(&diff) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn sp(r: f64, t: f64) -> SurfacePoint {
        SurfacePoint::new(r, t).unwrap()
    }

    fn sv(c: &[(f64, f64)]) -> SurfaceVector {
        SurfaceVector::new(c.iter().map(|&(r, t)| sp(r, t)).collect()).unwrap()
    }

    fn close(a: &SurfaceVector, b: &SurfaceVector, tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y, tol))
    }

    #[test]
    fn componentwise_ops() {
        let u = sv(&[(2.0, 0.0), (1.0, PI)]);
        let v = sv(&[(3.0, 0.0), (1.0, -PI)]);
        assert!(close(
            &vec_mul(&u, &v).unwrap(),
            &sv(&[(6.0, 0.0), (1.0, 0.0)]),
            1e-15
        ));
        let one = SurfaceVector::ones(2).unwrap();
        assert_eq!(vec_mul(&u, &one).unwrap(), u);
        assert_eq!(vec_div(&u, &u).unwrap(), one);
        let w = sv(&[(1.0, 0.0)]);
        assert!(matches!(
            vec_mul(&u, &w),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SurfaceVector::new(vec![]).is_err());
    }

    #[test]
    fn scalar_pow_examples() {
        let u = sv(&[(2.0, 1.0), (0.3, -4.0)]);
        assert!(close(&scalar_pow(sp(E, 0.0), &u).unwrap(), &u, 1e-15));
        assert_eq!(
            scalar_pow(SurfacePoint::ONE, &u).unwrap(),
            SurfaceVector::ones(2).unwrap()
        );
        // u^{log a} = a^{log u}
        let a = sp(1.7, 0.4);
        let lhs = scalar_pow(a, &u).unwrap();
        for (l, ui) in lhs.iter().zip(&u) {
            assert!(l.approx_eq(&a.pow_complex(ui.log()).unwrap(), 1e-13));
        }
    }

    #[test]
    fn log_matrix_examples() {
        let u = sv(&[(2.0, 1.0), (0.3, -4.0)]);
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!(close(&apply_log_matrix(&id, &u).unwrap(), &u, 1e-15));
        let zero = DMatrix::<Complex64>::zeros(2, 2);
        assert_eq!(
            apply_log_matrix(&zero, &u).unwrap(),
            SurfaceVector::ones(2).unwrap()
        );
        let two = DMatrix::from_element(1, 1, Complex64::new(2.0, 0.0));
        let r = apply_log_matrix(&two, &sv(&[(E, 0.0)])).unwrap();
        assert!(r[0].approx_eq(&sp(E * E, 0.0), 1e-15));
        assert!(apply_log_matrix(&zero, &sv(&[(E, 0.0)])).is_err());
    }

    #[test]
    fn star_norm_examples() {
        assert_eq!(
            star_norm(&SurfaceVector::ones(4).unwrap(), &NormSpec::p2()).unwrap(),
            1.0
        );
        let r = 3.0f64;
        for n in 1..6 {
            let u = SurfaceVector::new(vec![sp(r, 0.0); n]).unwrap();
            let got = star_norm(&u, &NormSpec::p2()).unwrap();
            assert!((got - r.powf((n as f64).sqrt())).abs() < 1e-12 * got);
        }
        let u = sv(&[(E, 0.0), (1.0, 0.0)]);
        assert!((star_norm(&u, &NormSpec::inf()).unwrap() - E).abs() < 1e-15);
        let huge = sv(&[(1.0, 1e3)]);
        assert!(star_norm(&huge, &NormSpec::inf()).is_err());
    }

    #[test]
    fn star_inner_examples() {
        let v = sv(&[(2.0, 1.0)]);
        assert_eq!(
            star_inner(&sv(&[(1.0, 0.0)]), &v).unwrap(),
            SurfacePoint::ONE
        );
        let u = sv(&[(E, 0.0)]);
        assert!(star_inner(&u, &u).unwrap().approx_eq(&sp(E, 0.0), 1e-15));
        let u = sv(&[(2.0, 1.0), (0.5, 0.25)]);
        let v = sv(&[(1.3, -0.2), (4.0, 2.0)]);
        let u2 = vec_mul(&u, &u).unwrap();
        let lhs = star_inner(&u2, &v).unwrap();
        let rhs = star_inner(&u, &v).unwrap().pow_real(2.0).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-13));
    }

    #[test]
    fn projection_examples() {
        let p = project_vec(&sv(&[(1.0, 2.0 * PI), (1.0, 2.0 * PI)]));
        assert!(p
            .iter()
            .all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let p = project_vec(&sv(&[(1.0, PI), (2.0, 0.0)]));
        assert!((p[0] + 1.0).norm() < 1e-15 && (p[1] - 2.0).norm() < 1e-15);
    }

    #[test]
    fn relative_bound_examples() {
        let u = sv(&[(1.5, 0.3), (0.2, -1.0)]);
        assert_eq!(relative_bound(&u, &u, &NormSpec::p2()).unwrap(), 0.0);
        assert_eq!(
            projected_relative_difference(&u, &u, &NormSpec::p2()).unwrap(),
            0.0
        );
        let u = sv(&[(1.0, 0.0)]);
        let v = sv(&[(E, 0.0)]);
        let rhs = relative_bound(&u, &v, &NormSpec::inf()).unwrap();
        let lhs = projected_relative_difference(&u, &v, &NormSpec::inf()).unwrap();
        assert!((rhs - (E - 1.0)).abs() < 1e-15);
        assert!((lhs - (E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn norm_spec_parsing() {
        assert!(matches!(
            "1".parse::<NormSpec>().unwrap().kind(),
            NormKind::P1
        ));
        assert!(matches!(
            "inf".parse::<NormSpec>().unwrap().kind(),
            NormKind::Inf
        ));
        assert!("3".parse::<NormSpec>().is_err());
        assert!(NormSpec::custom(|x| x.len() as f64, 0.5).is_err());
    }
}
