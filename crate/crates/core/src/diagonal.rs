//! Characteristic variables `w = -v - √a u`, `z = v - √a u`.
//!
//! In these variables the transport stage is two decoupled upwind advections
//! with speeds `+√a` (for `w`) and `-√a` (for `z`).

use crate::grid::{CellField, Grid1D, StatePair};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPair {
    pub grid: Grid1D,
    pub w: CellField,
    pub z: CellField,
}

#[inline]
pub(crate) fn wz(u: f64, v: f64, sqrt_a: f64) -> (f64, f64) {
    (-v - sqrt_a * u, v - sqrt_a * u)
}

#[inline]
pub(crate) fn uv(w: f64, z: f64, sqrt_a: f64) -> (f64, f64) {
    (-(w + z) / (2.0 * sqrt_a), (z - w) / 2.0)
}

pub fn to_diagonal(state: &StatePair, a: f64) -> DiagonalPair {
    let sqrt_a = libm::sqrt(a);
    let (w, z) = state
        .u
        .iter()
        .zip(state.v.iter())
        .map(|(&u, &v)| wz(u, v, sqrt_a))
        .unzip::<f64, f64, alloc::vec::Vec<f64>, alloc::vec::Vec<f64>>();
    DiagonalPair {
        grid: state.grid,
        w: w.into(),
        z: z.into(),
    }
}

/// Inverse of [`to_diagonal`]; the result carries `time = 0`, `step_index = 0`.
pub fn from_diagonal(diag: &DiagonalPair, a: f64) -> StatePair {
    let sqrt_a = libm::sqrt(a);
    let (u, v) = diag
        .w
        .iter()
        .zip(diag.z.iter())
        .map(|(&w, &z)| uv(w, z, sqrt_a))
        .unzip::<f64, f64, alloc::vec::Vec<f64>, alloc::vec::Vec<f64>>();
    StatePair {
        grid: diag.grid,
        u: u.into(),
        v: v.into(),
        time: 0.0,
        step_index: 0,
    }
}
