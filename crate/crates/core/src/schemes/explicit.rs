//! Fully explicit reference solver: global Lax-Friedrichs flux on a
//! minmod-limited piecewise-linear reconstruction of the characteristic
//! variables, forward Euler in time, source added explicitly. Its time step
//! must resolve `ε`.

use alloc::vec::Vec;

use crate::bounds::SchemeParameters;
use crate::diagonal::{uv, wz};
use crate::error::{Error, Result};
use crate::grid::{padded_with_mirror, StatePair};
use crate::model::RelaxationModel;

use super::ap::march;

/// Largest CFL number for which the limited forward-Euler update is TVD.
pub const EXPLICIT_MAX_CFL: f64 = 0.5;

/// Fraction of `ε/β` allowed as time step.
pub const EXPLICIT_STIFFNESS_FRACTION: f64 = 0.5;

#[inline]
pub(crate) fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a > 0.0 {
        a.min(b)
    } else {
        a.max(b)
    }
}

/// Ghost width needed by [`muscl_lf_update`].
pub(crate) const MUSCL_GHOSTS: usize = 2;

/// One limited Lax-Friedrichs transport step for an `N`-component system
/// `∂t U + ∂x F(U) = 0` with numerical diffusion `speed`. Each field carries
/// [`MUSCL_GHOSTS`] ghost cells on both sides.
pub(crate) fn muscl_lf_update<const N: usize>(
    padded: [Vec<f64>; N],
    flux: impl Fn([f64; N]) -> [f64; N],
    speed: f64,
    dt: f64,
    dx: f64,
) -> [Vec<f64>; N] {
    let n = padded[0].len() - 2 * MUSCL_GHOSTS;
    // Slopes for padded indices 1..=n+2.
    let slopes: [Vec<f64>; N] = core::array::from_fn(|c| {
        let p = &padded[c];
        let mut s = alloc::vec![0.0; n + 4];
        for i in 1..=n + 2 {
            s[i] = minmod(p[i] - p[i - 1], p[i + 1] - p[i]);
        }
        s
    });
    // Interface fluxes between padded cells i and i+1 for i = 1..=n+1.
    let mut fluxes: [Vec<f64>; N] = core::array::from_fn(|_| alloc::vec![0.0; n + 3]);
    for i in 1..=n + 1 {
        let left: [f64; N] = core::array::from_fn(|c| padded[c][i] + 0.5 * slopes[c][i]);
        let right: [f64; N] = core::array::from_fn(|c| padded[c][i + 1] - 0.5 * slopes[c][i + 1]);
        let (fl, fr) = (flux(left), flux(right));
        for c in 0..N {
            fluxes[c][i] = 0.5 * (fl[c] + fr[c]) - 0.5 * speed * (right[c] - left[c]);
        }
    }
    let ratio = dt / dx;
    core::array::from_fn(|c| {
        (0..n)
            .map(|j| {
                let i = j + 2;
                padded[c][i] - ratio * (fluxes[c][i] - fluxes[c][i - 1])
            })
            .collect()
    })
}

pub(crate) fn check_explicit_step(params: &SchemeParameters, lambda: f64) -> Result<()> {
    if params.dt() > EXPLICIT_STIFFNESS_FRACTION * params.epsilon() / params.beta() {
        return Err(Error::StepSize(
            "explicit solver requires dt <= 0.5 epsilon / beta",
        ));
    }
    if lambda > EXPLICIT_MAX_CFL {
        return Err(Error::StepSize(
            "explicit solver requires a CFL number of at most 0.5",
        ));
    }
    Ok(())
}

/// Largest admissible explicit step: `min(0.5 ε/β, cfl Δx/speed)`.
pub fn explicit_time_step(speed: f64, dx: f64, epsilon: f64, beta: f64, cfl: f64) -> f64 {
    (EXPLICIT_STIFFNESS_FRACTION * epsilon / beta).min(cfl.min(EXPLICIT_MAX_CFL) * dx / speed)
}

/// One explicit step for the two-velocity system.
///
/// Requires `Δt ≤ 0.5 ε/β` and `√a Δt/Δx ≤ 0.5`.
pub fn explicit_reference_step<M: RelaxationModel + ?Sized>(
    state: &StatePair,
    model: &M,
    params: &SchemeParameters,
) -> Result<StatePair> {
    check_explicit_step(params, params.lambda())?;
    let sqrt_a = params.sqrt_a();
    let (w, z): (Vec<f64>, Vec<f64>) = state
        .u
        .iter()
        .zip(state.v.iter())
        .map(|(&u, &v)| wz(u, v, sqrt_a))
        .unzip();
    let bc = state.grid.boundary();
    let [w, z] = muscl_lf_update(
        [
            padded_with_mirror(&w, &z, 1.0, bc, MUSCL_GHOSTS),
            padded_with_mirror(&z, &w, 1.0, bc, MUSCL_GHOSTS),
        ],
        |[w, z]| [sqrt_a * w, -sqrt_a * z],
        sqrt_a,
        params.dt(),
        params.dx(),
    );
    let k = params.dt() / params.epsilon();
    let mut u = Vec::with_capacity(w.len());
    let mut v = Vec::with_capacity(w.len());
    for j in 0..w.len() {
        let r = model.source(state.u[j], state.v[j]);
        if !r.is_finite() {
            return Err(Error::ModelDomain {
                u: state.u[j],
                v: state.v[j],
            });
        }
        let (uj, vj) = uv(w[j], z[j], sqrt_a);
        u.push(uj);
        v.push(vj - k * r);
    }
    let next = StatePair {
        grid: state.grid,
        u: u.into(),
        v: v.into(),
        time: state.time + params.dt(),
        step_index: state.step_index + 1,
    };
    next.check_finite()?;
    Ok(next)
}

/// Advances with [`explicit_reference_step`] to `t_final`.
pub fn solve_explicit<M: RelaxationModel + ?Sized>(
    initial: &StatePair,
    model: &M,
    params: &SchemeParameters,
    t_final: f64,
) -> Result<StatePair> {
    march(
        initial.time,
        t_final,
        params.dt(),
        initial.clone(),
        |s, h, stamp| {
            let p = if h < params.dt() {
                params.with_dt(h)?
            } else {
                *params
            };
            let mut next = explicit_reference_step(s, model, &p)?;
            next.time = stamp;
            Ok(next)
        },
    )
}
