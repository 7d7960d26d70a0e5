use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mvector::SurfaceVector;
use crate::surface::SurfacePoint;

/// Uniform grid `x_j = x0 + j dx`, `j = 0 … n_points − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x0: f64,
    dx: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x0: f64, dx: f64, n_points: usize) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::Config(format!(
                "grid spacing must be positive, got {dx}"
            )));
        }
        if !x0.is_finite() {
            return Err(Error::Config(format!(
                "grid origin must be finite, got {x0}"
            )));
        }
        if n_points < 3 {
            return Err(Error::Config(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        Ok(Self { x0, dx, n_points })
    }

    /// `n` points covering the periodic cell `[x0, x0 + length)`.
    pub fn periodic(x0: f64, length: f64, n: usize) -> Result<Self> {
        Self::new(x0, length / n as f64, n)
    }

    /// Smallest grid containing `[a, b]` with spacing `dx`, starting at `a`.
    pub fn spanning(a: f64, b: f64, dx: f64) -> Result<Self> {
        let n = ((b - a) / dx - 1e-9).ceil() as usize + 1;
        Self::new(a, dx, n)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Length of the periodic cell, `n dx`.
    pub fn period(&self) -> f64 {
        self.n_points as f64 * self.dx
    }

    /// Same periodic cell with `factor` times as many points.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.x0, self.dx / factor as f64, self.n_points * factor)
    }
}

/// Surface values on a grid at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Grid1D,
    pub values: SurfaceVector,
    pub time: f64,
}

impl GridFunction {
    pub fn new(grid: Grid1D, values: SurfaceVector, time: f64) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::DimensionMismatch {
                expected: grid.n_points(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values, time })
    }

    pub fn from_fn<F>(grid: Grid1D, time: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<SurfacePoint>,
    {
        let values = (0..grid.n_points())
            .map(|j| f(grid.x(j)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, SurfaceVector::new(values)?, time)
    }

    pub fn project(&self) -> Vec<Complex64> {
        crate::mvector::project_vec(&self.values)
    }

    pub fn log(&self) -> Vec<Complex64> {
        self.values.log()
    }

    /// Samples this function on a coarser grid whose nodes are a subset of
    /// this one's (same origin, spacing an integer multiple).
    pub fn restrict_to(&self, coarse: &Grid1D) -> Result<GridFunction> {
        let ratio = coarse.dx() / self.grid.dx();
        let stride = ratio.round() as usize;
        if stride == 0
            || (ratio - stride as f64).abs() > 1e-9 * ratio
            || (coarse.x0() - self.grid.x0()).abs() > 1e-12 * self.grid.dx().max(1.0)
            || (coarse.n_points() - 1) * stride >= self.grid.n_points()
        {
            return Err(Error::Config(
                "coarse grid nodes are not a subset of the fine grid".into(),
            ));
        }
        let values = (0..coarse.n_points())
            .map(|j| self.values[j * stride])
            .collect();
        GridFunction::new(*coarse, SurfaceVector::new(values)?, self.time)
    }
}
