//! Solver for the equilibrium conservation law `∂t u + ∂x A(u) = 0`.

use alloc::vec::Vec;

use crate::bounds::SchemeParameters;
use crate::error::{Error, Result};
use crate::grid::{padded, CellField, Grid1D, Parity};
use crate::model::RelaxationModel;

use super::ap::march;

const SPEED_SAMPLES: usize = 101;

/// `sup |A'|` over `[min u, max u]`, by centred differences at uniform samples.
pub fn sampled_max_speed<M: RelaxationModel + ?Sized>(model: &M, u: &[f64]) -> f64 {
    let (lo, hi) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if !(lo <= hi) {
        return 0.0;
    }
    let last = (SPEED_SAMPLES - 1) as f64;
    (0..SPEED_SAMPLES)
        .map(|k| lo + (hi - lo) * k as f64 / last)
        .map(|x| {
            let h = 1e-6 * libm::fabs(x).max(1.0);
            libm::fabs((model.equilibrium(x + h) - model.equilibrium(x - h)) / (2.0 * h))
        })
        .fold(0.0, f64::max)
}

/// One conservative Lax-Friedrichs step with numerical diffusion `√a`:
///
/// ```text
/// u_j ← u_j - Δt/(2Δx) [A(u_{j+1}) - A(u_{j-1})] + √a Δt/(2Δx) [u_{j+1} - 2u_j + u_{j-1}]
/// ```
///
/// This is the `ε → 0` limit of the splitting scheme. `ε` in `params` is ignored.
pub fn limit_scheme_step<M: RelaxationModel + ?Sized>(
    u: &CellField,
    grid: &Grid1D,
    model: &M,
    params: &SchemeParameters,
) -> Result<CellField> {
    let ratio = params.dt() / params.dx();
    if sampled_max_speed(model, u) * ratio >= 1.0 {
        return Err(Error::StepSize("limit scheme requires dt sup|A'| / dx < 1"));
    }
    let p = padded(u, grid.boundary(), Parity::Even, 1);
    let flux: Vec<f64> = p.iter().map(|&x| model.equilibrium(x)).collect();
    let c = 0.5 * ratio;
    let d = 0.5 * params.sqrt_a() * ratio;
    let next: Vec<f64> = (1..=u.len())
        .map(|j| p[j] - c * (flux[j + 1] - flux[j - 1]) + d * (p[j + 1] - 2.0 * p[j] + p[j - 1]))
        .collect();
    if let Some(cell) = next.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { step: 0, cell });
    }
    Ok(next.into())
}

/// Advances the limit equation from `t0` to `t_final`; `observer` sees every
/// new `(t, u)`.
pub fn solve_limit<M: RelaxationModel + ?Sized>(
    u0: &CellField,
    grid: &Grid1D,
    model: &M,
    params: &SchemeParameters,
    t0: f64,
    t_final: f64,
    observer: &mut dyn FnMut(f64, &CellField),
) -> Result<CellField> {
    march(t0, t_final, params.dt(), u0.clone(), |u, h, stamp| {
        let p = if h < params.dt() {
            params.with_dt(h)?
        } else {
            *params
        };
        let next = limit_scheme_step(u, grid, model, &p)?;
        observer(stamp, &next);
        Ok(next)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Boundary;
    use crate::models::semilinear_model;

    #[test]
    fn constant_is_steady() {
        let model = semilinear_model(|u| u * u, |u| 2.0 * u);
        let g = Grid1D::new(0.0, 1.0, 10, Boundary::Outflow).unwrap();
        let u = CellField::constant(10, 0.3);
        let p = SchemeParameters::from_cfl(4.0, 1.0, 1.0, g.dx(), 0.9).unwrap();
        assert_eq!(limit_scheme_step(&u, &g, &model, &p).unwrap(), u);
    }

    #[test]
    fn cfl_violation_is_rejected() {
        let model = semilinear_model(|u| 5.0 * u, |_| 5.0);
        let g = Grid1D::new(0.0, 1.0, 10, Boundary::Periodic).unwrap();
        let u = CellField::from_fn(10, |j| j as f64);
        let p = SchemeParameters::from_cfl(4.0, 1.0, 1.0, g.dx(), 0.9).unwrap();
        assert!(matches!(
            limit_scheme_step(&u, &g, &model, &p),
            Err(Error::StepSize(_))
        ));
    }

    #[test]
    fn periodic_mass_is_conserved() {
        let model = semilinear_model(|u| 0.5 * u * u, |u| u);
        let g = Grid1D::new(0.0, 1.0, 50, Boundary::Periodic).unwrap();
        let u = CellField::from_fn(50, |j| libm::sin(0.3 * j as f64));
        let p = SchemeParameters::from_cfl(1.0, 1.0, 1.0, g.dx(), 0.9).unwrap();
        let out = solve_limit(&u, &g, &model, &p, 0.0, 0.5, &mut |_, _| {}).unwrap();
        assert!((out.sum() - u.sum()).abs() < 1e-12);
    }
}
