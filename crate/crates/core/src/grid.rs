use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use crate::error::{Error, Result};

/// How ghost cells are filled at the two ends of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Indices wrap around.
    Periodic,
    /// Mirror image of the interior; see [`Parity`] for the sign convention.
    Reflecting,
    /// Ghost cells copy the nearest interior cell.
    Outflow,
}

/// Behaviour of a field under reflection at a wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Densities: the ghost equals the mirrored interior value.
    Even,
    /// Fluxes and momenta: the ghost is the negated mirrored value.
    Odd,
}

/// Uniform 1-D grid of `n_cells` cells on `(x_min, x_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
    boundary: Boundary,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, boundary: Boundary) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::InvalidArgument("grid requires finite x_min < x_max"));
        }
        if n_cells == 0 {
            return Err(Error::InvalidArgument("grid requires at least one cell"));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            boundary,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    /// Left interface `x_{j-1/2}` of cell `j`; `interface(n_cells)` is `x_max`.
    pub fn interface(&self, j: usize) -> f64 {
        if j == self.n_cells {
            self.x_max
        } else {
            self.x_min + j as f64 * self.dx()
        }
    }

    pub fn center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|j| self.center(j)).collect()
    }

    /// Same domain and boundary with twice the cells.
    pub fn refined(&self) -> Self {
        Self {
            n_cells: 2 * self.n_cells,
            ..*self
        }
    }

    /// Same domain and boundary with a different cell count.
    pub fn with_cells(&self, n_cells: usize) -> Result<Self> {
        Self::new(self.x_min, self.x_max, n_cells, self.boundary)
    }
}

/// Cell averages of one scalar quantity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CellField(Vec<f64>);

impl CellField {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(n: usize) -> Self {
        Self(alloc::vec![0.0; n])
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self(alloc::vec![value; n])
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self((0..n).map(f).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sup_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc.max(libm::fabs(*x)))
    }

    /// Index of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_finite())
    }

    /// Left-to-right sum of the entries.
    pub fn sum(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, x| acc + x)
    }
}

impl Deref for CellField {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for CellField {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for CellField {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Discrete state `(u, v)` of the two-velocity relaxation system at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePair {
    pub grid: Grid1D,
    pub u: CellField,
    pub v: CellField,
    pub time: f64,
    pub step_index: u64,
}

impl StatePair {
    pub fn new(grid: Grid1D, u: CellField, v: CellField) -> Result<Self> {
        if u.len() != grid.n_cells() || v.len() != grid.n_cells() {
            return Err(Error::InvalidArgument(
                "field length must equal the number of cells",
            ));
        }
        Ok(Self {
            grid,
            u,
            v,
            time: 0.0,
            step_index: 0,
        })
    }

    /// `max(‖u‖∞, ‖v‖∞)`, the `N₀` used for stability bounds.
    pub fn sup_norm(&self) -> f64 {
        self.u.sup_norm().max(self.v.sup_norm())
    }

    pub fn check_finite(&self) -> Result<()> {
        if let Some(cell) = self
            .u
            .first_non_finite()
            .or_else(|| self.v.first_non_finite())
        {
            return Err(Error::NonFinite {
                step: self.step_index,
                cell,
            });
        }
        Ok(())
    }
}

/// Copy of `values` with `width` ghost cells on each side.
///
/// Reflecting ghosts take `sign * mirror[k]` where `mirror` is usually
/// `values` itself; passing a partner field implements the swap of
/// opposite-velocity unknowns at a specular wall.
pub(crate) fn padded_with_mirror(
    values: &[f64],
    mirror: &[f64],
    sign: f64,
    boundary: Boundary,
    width: usize,
) -> Vec<f64> {
    let n = values.len();
    debug_assert!(width <= n && mirror.len() == n);
    let mut out = Vec::with_capacity(n + 2 * width);
    for k in (0..width).rev() {
        out.push(match boundary {
            Boundary::Periodic => values[n - 1 - k],
            Boundary::Outflow => values[0],
            Boundary::Reflecting => sign * mirror[k],
        });
    }
    out.extend_from_slice(values);
    for k in 0..width {
        out.push(match boundary {
            Boundary::Periodic => values[k],
            Boundary::Outflow => values[n - 1],
            Boundary::Reflecting => sign * mirror[n - 1 - k],
        });
    }
    out
}

pub(crate) fn padded(values: &[f64], boundary: Boundary, parity: Parity, width: usize) -> Vec<f64> {
    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    padded_with_mirror(values, values, sign, boundary, width)
}
