//! The three-velocity Broadwell model
//!
//! ```text
//! ∂t f₊ + ∂x f₊ = Q/ε,   ∂t f₀ = -Q/ε,   ∂t f₋ - ∂x f₋ = Q/ε,   Q = f₀² - f₊f₋,
//! ```
//!
//! written in the fluid variables `ρ = f₊ + 2f₀ + f₋`, `m = f₊ - f₋`,
//! `z = f₊ + f₋`:
//!
//! ```text
//! ∂t ρ + ∂x m = 0,   ∂t m + ∂x z = 0,   ∂t z + ∂x m = -(ρz - (ρ² + m²)/2)/ε.
//! ```
//!
//! The local equilibrium is `z = A(ρ, m) = (ρ + m²/ρ)/2` and the `ε → 0`
//! limit is `∂t ρ + ∂x m = 0`, `∂t m + ∂x A(ρ, m) = 0`.

use alloc::vec::Vec;

use crate::bounds::{SchemeParameters, SPEED_SAFETY_FACTOR};
use crate::error::{Error, Result};
use crate::grid::{padded, padded_with_mirror, CellField, Grid1D, Parity};
use crate::schemes::{
    check_explicit_step, march, muscl_lf_update, RelaxationWeights, MUSCL_GHOSTS,
};

/// Lower bound on kinetic densities accepted as round-off.
pub const REALIZABILITY_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct BroadwellFluidState {
    pub grid: Grid1D,
    pub rho: CellField,
    pub m: CellField,
    pub z: CellField,
    pub time: f64,
    pub step_index: u64,
}

impl BroadwellFluidState {
    pub fn new(grid: Grid1D, rho: CellField, m: CellField, z: CellField) -> Result<Self> {
        let n = grid.n_cells();
        if rho.len() != n || m.len() != n || z.len() != n {
            return Err(Error::InvalidArgument("field lengths must match the grid"));
        }
        Ok(Self {
            grid,
            rho,
            m,
            z,
            time: 0.0,
            step_index: 0,
        })
    }

    pub fn uniform(grid: Grid1D, rho: f64, m: f64, z: f64) -> Self {
        let n = grid.n_cells();
        Self {
            grid,
            rho: CellField::constant(n, rho),
            m: CellField::constant(n, m),
            z: CellField::constant(n, z),
            time: 0.0,
            step_index: 0,
        }
    }

    /// Data at local equilibrium: `z = A(ρ, m)`.
    pub fn at_equilibrium(grid: Grid1D, rho: CellField, m: CellField) -> Result<Self> {
        let z = rho
            .iter()
            .zip(m.iter())
            .map(|(&r, &q)| broadwell_equilibrium(r, q))
            .collect::<Result<Vec<f64>>>()?;
        Self::new(grid, rho, m, z.into())
    }

    /// `z - A(ρ, m)` cellwise.
    pub fn deviation(&self) -> Result<CellField> {
        (0..self.rho.len())
            .map(|j| Ok(self.z[j] - broadwell_equilibrium(self.rho[j], self.m[j])?))
            .collect::<Result<Vec<f64>>>()
            .map(CellField::from)
    }

    /// Fails on the first cell with `ρ ≤ 0`.
    pub fn check_positive(&self) -> Result<()> {
        match self.rho.iter().position(|&r| !(r > 0.0)) {
            Some(cell) => Err(Error::Positivity {
                cell,
                value: self.rho[cell],
            }),
            None => Ok(()),
        }
    }

    fn check_finite(&self) -> Result<()> {
        for field in [&self.rho, &self.m, &self.z] {
            if let Some(cell) = field.first_non_finite() {
                return Err(Error::NonFinite {
                    step: self.step_index,
                    cell,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BroadwellKineticState {
    pub grid: Grid1D,
    pub f_plus: CellField,
    pub f_zero: CellField,
    pub f_minus: CellField,
    pub time: f64,
    pub step_index: u64,
}

/// `A(ρ, m) = (ρ + m²/ρ)/2`.
pub fn broadwell_equilibrium(rho: f64, m: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::ModelDomain { u: rho, v: m });
    }
    Ok(0.5 * (rho + m * m / rho))
}

/// `R(ρ, m, z) = ρz - (ρ² + m²)/2`, which equals `ρ (z - A(ρ, m))`.
pub fn broadwell_source(rho: f64, m: f64, z: f64) -> f64 {
    rho * z - 0.5 * (rho * rho + m * m)
}

fn realizable(cell: usize, value: f64) -> Result<f64> {
    if value < -REALIZABILITY_TOLERANCE || value.is_nan() {
        return Err(Error::Realizability { cell, value });
    }
    Ok(value)
}

/// `f₊ = (z + m)/2`, `f₀ = (ρ - z)/2`, `f₋ = (z - m)/2`.
pub fn fluid_to_kinetic(state: &BroadwellFluidState) -> Result<BroadwellKineticState> {
    let n = state.rho.len();
    let mut fp = Vec::with_capacity(n);
    let mut f0 = Vec::with_capacity(n);
    let mut fm = Vec::with_capacity(n);
    for j in 0..n {
        let (rho, m, z) = (state.rho[j], state.m[j], state.z[j]);
        fp.push(realizable(j, 0.5 * (z + m))?);
        f0.push(realizable(j, 0.5 * (rho - z))?);
        fm.push(realizable(j, 0.5 * (z - m))?);
    }
    Ok(BroadwellKineticState {
        grid: state.grid,
        f_plus: fp.into(),
        f_zero: f0.into(),
        f_minus: fm.into(),
        time: state.time,
        step_index: state.step_index,
    })
}

/// `ρ = f₊ + 2f₀ + f₋`, `m = f₊ - f₋`, `z = f₊ + f₋`.
pub fn kinetic_to_fluid(state: &BroadwellKineticState) -> BroadwellFluidState {
    let n = state.f_plus.len();
    let (fp, f0, fm) = (&state.f_plus, &state.f_zero, &state.f_minus);
    BroadwellFluidState {
        grid: state.grid,
        rho: CellField::from_fn(n, |j| fp[j] + 2.0 * f0[j] + fm[j]),
        m: CellField::from_fn(n, |j| fp[j] - fm[j]),
        z: CellField::from_fn(n, |j| fp[j] + fm[j]),
        time: state.time,
        step_index: state.step_index,
    }
}

/// Specular-reflection ghosts `(f₊, f₀, f₋)` to the left and right of the domain.
pub fn broadwell_reflecting_ghosts(state: &BroadwellKineticState) -> ([f64; 3], [f64; 3]) {
    let last = state.f_plus.len() - 1;
    (
        [state.f_minus[0], state.f_zero[0], state.f_plus[0]],
        [state.f_minus[last], state.f_zero[last], state.f_plus[last]],
    )
}

/// Exact upwinding of `f₊` (speed +1) and `f₋` (speed -1) with `μ = Δt/Δx`.
pub fn kinetic_transport(state: &BroadwellKineticState, mu: f64) -> BroadwellKineticState {
    let n = state.f_plus.len();
    let bc = state.grid.boundary();
    let p = padded_with_mirror(&state.f_plus, &state.f_minus, 1.0, bc, 1);
    let q = padded_with_mirror(&state.f_minus, &state.f_plus, 1.0, bc, 1);
    BroadwellKineticState {
        f_plus: CellField::from_fn(n, |j| p[j + 1] - mu * (p[j + 1] - p[j])),
        f_minus: CellField::from_fn(n, |j| q[j + 1] - mu * (q[j + 1] - q[j + 2])),
        ..state.clone()
    }
}

/// Penalization rate `1.05 (1 + 1/√a₀) max ρ`, an upper bound for `∂z R = ρ`.
pub fn broadwell_penalization(rho_max: f64, a0: f64) -> f64 {
    SPEED_SAFETY_FACTOR * (1.0 + 1.0 / libm::sqrt(a0)) * rho_max
}

/// Unit-speed parameters for `broadwell_ap_step`: `a = 1`, `Δt = λ Δx`.
pub fn broadwell_parameters(
    initial: &BroadwellFluidState,
    a0: f64,
    epsilon: f64,
    lambda: f64,
) -> Result<SchemeParameters> {
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(Error::InvalidArgument("a0 must be finite and positive"));
    }
    initial.check_positive()?;
    let beta = broadwell_penalization(initial.rho.sup_norm(), a0);
    SchemeParameters::from_cfl(1.0, beta, epsilon, initial.grid.dx(), lambda)
}

/// Exponential relaxation of `z` with `ρ`, `m` frozen.
pub fn broadwell_relaxation(
    state: &BroadwellFluidState,
    params: &SchemeParameters,
) -> Result<BroadwellFluidState> {
    let weights = RelaxationWeights::from_params(params);
    let mut z = state.z.clone();
    for j in 0..z.len() {
        let (rho, m) = (state.rho[j], state.m[j]);
        let eq = broadwell_equilibrium(rho, m).map_err(|_| Error::Positivity {
            cell: j,
            value: rho,
        })?;
        z[j] -= weights.increment(z[j] - eq, broadwell_source(rho, m, z[j]));
    }
    Ok(BroadwellFluidState { z, ..state.clone() })
}

/// Per-step audit values of a Broadwell run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BroadwellStepReport {
    pub step_index: u64,
    pub time: f64,
    /// `Σ ρ_j Δx`.
    pub mass_rho: f64,
    /// `Σ m_j Δx`.
    pub mass_m: f64,
    pub min_rho: f64,
    /// `‖z - A(ρ, m)‖₁`.
    pub deviation_l1: f64,
}

impl BroadwellStepReport {
    fn of(state: &BroadwellFluidState) -> Result<Self> {
        let dx = state.grid.dx();
        let deviation = state.deviation()?;
        Ok(Self {
            step_index: state.step_index,
            time: state.time,
            mass_rho: state.rho.sum() * dx,
            mass_m: state.m.sum() * dx,
            min_rho: state.rho.iter().copied().fold(f64::INFINITY, f64::min),
            deviation_l1: deviation.iter().map(|d| libm::fabs(*d)).sum::<f64>() * dx,
        })
    }
}

/// One splitting step: kinetic upwind transport, then relaxation of `z`.
pub fn broadwell_ap_step(
    state: &BroadwellFluidState,
    params: &SchemeParameters,
) -> Result<(BroadwellFluidState, BroadwellStepReport)> {
    let mu = params.dt() / params.dx();
    if !(mu < 1.0) {
        return Err(Error::StepSize("Broadwell transport requires dt / dx < 1"));
    }
    let kinetic = kinetic_transport(&fluid_to_kinetic(state)?, mu);
    let half = kinetic_to_fluid(&kinetic);
    fluid_to_kinetic(&half)?;
    let mut next = broadwell_relaxation(&half, params)?;
    next.time = state.time + params.dt();
    next.step_index = state.step_index + 1;
    next.check_finite()?;
    let report = BroadwellStepReport::of(&next)?;
    Ok((next, report))
}

/// Advances with [`broadwell_ap_step`] to `t_final`; `observer` may abort.
pub fn broadwell_solve(
    initial: &BroadwellFluidState,
    params: &SchemeParameters,
    t_final: f64,
    observer: &mut dyn FnMut(&BroadwellFluidState, &BroadwellStepReport) -> Result<()>,
) -> Result<(BroadwellFluidState, Vec<BroadwellStepReport>)> {
    let mut reports = Vec::new();
    let last = march(
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
            let (mut next, mut report) = broadwell_ap_step(s, &p)?;
            next.time = stamp;
            report.time = stamp;
            observer(&next, &report)?;
            reports.push(report);
            Ok(next)
        },
    )?;
    Ok((last, reports))
}

/// One step of the explicit MUSCL/Lax-Friedrichs reference solver, limited
/// in the kinetic densities. Requires `Δt ≤ 0.5 ε/β` and `Δt/Δx ≤ 0.5`.
pub fn broadwell_explicit_step(
    state: &BroadwellFluidState,
    params: &SchemeParameters,
) -> Result<BroadwellFluidState> {
    check_explicit_step(params, params.dt() / params.dx())?;
    let k = fluid_to_kinetic(state)?;
    let bc = state.grid.boundary();
    let [fp, f0, fm] = muscl_lf_update(
        [
            padded_with_mirror(&k.f_plus, &k.f_minus, 1.0, bc, MUSCL_GHOSTS),
            padded_with_mirror(&k.f_zero, &k.f_zero, 1.0, bc, MUSCL_GHOSTS),
            padded_with_mirror(&k.f_minus, &k.f_plus, 1.0, bc, MUSCL_GHOSTS),
        ],
        |[fp, _, fm]| [fp, 0.0, -fm],
        1.0,
        params.dt(),
        params.dx(),
    );
    let transported = kinetic_to_fluid(&BroadwellKineticState {
        f_plus: fp.into(),
        f_zero: f0.into(),
        f_minus: fm.into(),
        ..k
    });
    let ratio = params.dt() / params.epsilon();
    let mut z = transported.z;
    for (j, zj) in z.iter_mut().enumerate() {
        *zj -= ratio * broadwell_source(state.rho[j], state.m[j], state.z[j]);
    }
    let next = BroadwellFluidState {
        grid: state.grid,
        rho: transported.rho,
        m: transported.m,
        z,
        time: state.time + params.dt(),
        step_index: state.step_index + 1,
    };
    next.check_finite()?;
    next.check_positive()?;
    Ok(next)
}

/// Advances with [`broadwell_explicit_step`] to `t_final`.
pub fn broadwell_solve_explicit(
    initial: &BroadwellFluidState,
    params: &SchemeParameters,
    t_final: f64,
) -> Result<BroadwellFluidState> {
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
            let mut next = broadwell_explicit_step(s, &p)?;
            next.time = stamp;
            Ok(next)
        },
    )
}

/// Explicit-solver parameters: `Δt = min(0.5 ε/β, cfl Δx)` with unit speed.
pub fn broadwell_explicit_parameters(
    initial: &BroadwellFluidState,
    a0: f64,
    epsilon: f64,
    cfl: f64,
) -> Result<SchemeParameters> {
    let ap = broadwell_parameters(
        initial,
        a0,
        epsilon,
        cfl.min(crate::schemes::EXPLICIT_MAX_CFL),
    )?;
    let dt = crate::schemes::explicit_time_step(1.0, ap.dx(), epsilon, ap.beta(), cfl);
    SchemeParameters::new(1.0, ap.beta(), epsilon, dt, ap.dx())
}

/// Spectral radius of the Jacobian of `(ρ, m) ↦ (m, A(ρ, m))`: with `u = m/ρ`
/// the eigenvalues are `(u ± √(2 - u²))/2`.
pub fn broadwell_spectral_radius(rho: f64, m: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::ModelDomain { u: rho, v: m });
    }
    let u = m / rho;
    let disc = 2.0 - u * u;
    Ok(if disc >= 0.0 {
        0.5 * (libm::fabs(u) + libm::sqrt(disc))
    } else {
        0.5 * libm::sqrt(u * u - disc)
    })
}

/// One global Lax-Friedrichs step for the limit system, with numerical
/// diffusion `c_max = max_j ρ(J(ρ_j, m_j))`.
pub fn broadwell_limit_step(
    rho: &CellField,
    m: &CellField,
    grid: &Grid1D,
    params: &SchemeParameters,
) -> Result<(CellField, CellField)> {
    let mut c_max: f64 = 0.0;
    for j in 0..rho.len() {
        c_max =
            c_max.max(
                broadwell_spectral_radius(rho[j], m[j]).map_err(|_| Error::Positivity {
                    cell: j,
                    value: rho[j],
                })?,
            );
    }
    let ratio = params.dt() / params.dx();
    if !(c_max * ratio < 1.0) {
        return Err(Error::StepSize("limit scheme requires dt c_max / dx < 1"));
    }
    let bc = grid.boundary();
    let pr = padded(rho, bc, Parity::Even, 1);
    let pm = padded(m, bc, Parity::Odd, 1);
    let flux: Vec<f64> = pr
        .iter()
        .zip(pm.iter())
        .map(|(&r, &q)| 0.5 * (r + q * q / r))
        .collect();
    let n = rho.len();
    let (c, d) = (0.5 * ratio, 0.5 * c_max * ratio);
    let rho_next = CellField::from_fn(n, |j| {
        let i = j + 1;
        pr[i] - c * (pm[i + 1] - pm[i - 1]) + d * (pr[i + 1] - 2.0 * pr[i] + pr[i - 1])
    });
    let m_next = CellField::from_fn(n, |j| {
        let i = j + 1;
        pm[i] - c * (flux[i + 1] - flux[i - 1]) + d * (pm[i + 1] - 2.0 * pm[i] + pm[i - 1])
    });
    if let Some(cell) = rho_next.iter().position(|&r| !(r > 0.0)) {
        return Err(Error::Positivity {
            cell,
            value: rho_next[cell],
        });
    }
    if let Some(cell) = m_next.first_non_finite() {
        return Err(Error::NonFinite { step: 0, cell });
    }
    Ok((rho_next, m_next))
}

/// Advances the limit system from `t0` to `t_final`; `observer` sees every
/// new `(t, ρ, m)`.
pub fn broadwell_solve_limit(
    rho: &CellField,
    m: &CellField,
    grid: &Grid1D,
    params: &SchemeParameters,
    t0: f64,
    t_final: f64,
    observer: &mut dyn FnMut(f64, &CellField, &CellField),
) -> Result<(CellField, CellField)> {
    march(
        t0,
        t_final,
        params.dt(),
        (rho.clone(), m.clone()),
        |(r, q), h, stamp| {
            let p = if h < params.dt() {
                params.with_dt(h)?
            } else {
                *params
            };
            let next = broadwell_limit_step(r, q, grid, &p)?;
            observer(stamp, &next.0, &next.1);
            Ok(next)
        },
    )
}
