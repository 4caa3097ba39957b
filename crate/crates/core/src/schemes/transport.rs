//! Linear transport stage `∂t u + ∂x v = 0`, `∂t v + a ∂x u = 0`.

use alloc::vec::Vec;

use crate::bounds::SchemeParameters;
use crate::diagonal::DiagonalPair;
use crate::grid::{padded, padded_with_mirror, CellField, Parity, StatePair};

/// One Lax-Friedrichs step in `(u, v)`:
///
/// ```text
/// u_j ← u_j - Δt/(2Δx) [(v_{j+1} - v_{j-1}) - √a (u_{j+1} - 2u_j + u_{j-1})]
/// v_j ← v_j - Δt/(2Δx) [a (u_{j+1} - u_{j-1}) - √a (v_{j+1} - 2v_j + v_{j-1})]
/// ```
///
/// Reflecting walls treat `u` as even and `v` as odd. Time and step index
/// are left untouched.
pub fn transport_step_lf(state: &StatePair, params: &SchemeParameters) -> StatePair {
    let boundary = state.grid.boundary();
    let u = padded(&state.u, boundary, Parity::Even, 1);
    let v = padded(&state.v, boundary, Parity::Odd, 1);
    let (a, sqrt_a) = (params.a(), params.sqrt_a());
    let c = params.dt() / (2.0 * params.dx());
    let n = state.grid.n_cells();
    let mut new_u = Vec::with_capacity(n);
    let mut new_v = Vec::with_capacity(n);
    for j in 1..=n {
        let d_v = (v[j + 1] - v[j - 1]) - sqrt_a * (u[j + 1] - 2.0 * u[j] + u[j - 1]);
        let d_u = a * (u[j + 1] - u[j - 1]) - sqrt_a * (v[j + 1] - 2.0 * v[j] + v[j - 1]);
        new_u.push(u[j] - c * d_v);
        new_v.push(v[j] - c * d_u);
    }
    StatePair {
        u: new_u.into(),
        v: new_v.into(),
        ..state.clone()
    }
}

/// The same stage in diagonal variables, which is plain upwinding:
/// `w` moves right with speed `√a`, `z` moves left.
///
/// At a reflecting wall the incoming characteristic takes the value of the
/// outgoing one (`w_{-1} = z_0`, `z_n = w_{n-1}`).
pub fn upwind_diagonal_step(diag: &DiagonalPair, params: &SchemeParameters) -> DiagonalPair {
    let boundary = diag.grid.boundary();
    let w = padded_with_mirror(&diag.w, &diag.z, 1.0, boundary, 1);
    let z = padded_with_mirror(&diag.z, &diag.w, 1.0, boundary, 1);
    let lambda = params.sqrt_a() * params.dt() / params.dx();
    let n = diag.grid.n_cells();
    let new_w: CellField = (1..=n)
        .map(|j| w[j] - lambda * (w[j] - w[j - 1]))
        .collect::<Vec<_>>()
        .into();
    let new_z: CellField = (1..=n)
        .map(|j| z[j] + lambda * (z[j + 1] - z[j]))
        .collect::<Vec<_>>()
        .into();
    DiagonalPair {
        grid: diag.grid,
        w: new_w,
        z: new_z,
    }
}
