//! Grids, initial data and models behind each preset.

use std::f64::consts::PI;

use relaxkit_core::models::broadwell::BroadwellFluidState;
use relaxkit_core::models::{jinxin_nonlinear_model, semilinear_model, JINXIN_DEFAULT_ETA};
use relaxkit_core::{project_initial_data, CellField, Grid1D, RelaxationModel, Result, StatePair};

use crate::config::{CustomModel, ExperimentConfig, InitialShape, Preset};

/// Left and right Riemann states `(ρ, m, z)` of the Broadwell shock tube.
pub const BROADWELL_RIEMANN_LEFT: [f64; 3] = [1.0, 0.0, 1.0];
pub const BROADWELL_RIEMANN_RIGHT: [f64; 3] = [0.25, 0.0, 0.125];

/// Jin-Xin step data: `u = 0.5` left of the jump, `0.125` right of it.
pub const STEP_STATES: [f64; 2] = [0.5, 0.125];

pub fn grid(cfg: &ExperimentConfig, n_cells: usize) -> Result<Grid1D> {
    Grid1D::new(cfg.x_min, cfg.x_max, n_cells, cfg.boundary)
}

/// The 2×2 model of a non-Broadwell preset.
pub fn model(cfg: &ExperimentConfig) -> Box<dyn RelaxationModel> {
    match (cfg.preset, cfg.model) {
        (Preset::Custom, CustomModel::Semilinear) => {
            Box::new(semilinear_model(|u| u * u, |u_max| 2.0 * u_max))
        }
        _ => Box::new(jinxin_nonlinear_model(JINXIN_DEFAULT_ETA)),
    }
}

/// Cell-averaged `(u, v)` at `t = 0` for the 2×2 presets.
pub fn initial_pair(cfg: &ExperimentConfig, grid: &Grid1D) -> Result<StatePair> {
    let shape = match cfg.preset {
        Preset::JinxinSmooth => InitialShape::Sine,
        Preset::JinxinRiemann => InitialShape::Step,
        _ => cfg.initial,
    };
    let (x0, length) = (cfg.x_min, cfg.x_max - cfg.x_min);
    let mid = x0 + 0.5 * length;
    match shape {
        InitialShape::Sine => {
            project_initial_data(|x| (2.0 * PI * (x - x0) / length).sin(), |_| 0.0, grid)
        }
        InitialShape::Step => project_initial_data(
            |x| {
                if x <= mid {
                    STEP_STATES[0]
                } else {
                    STEP_STATES[1]
                }
            },
            |_| 0.0,
            grid,
        ),
    }
}

/// Broadwell data at `t = 0`: the smooth perturbation of `(ρ_g, m_g) = (1, 0)`
/// at local equilibrium, or the Riemann states.
pub fn initial_broadwell(cfg: &ExperimentConfig, grid: &Grid1D) -> Result<BroadwellFluidState> {
    let n = grid.n_cells();
    if cfg.preset == Preset::BroadwellRiemann {
        let mut left = BROADWELL_RIEMANN_LEFT;
        if cfg.equilibrated {
            left[2] = 0.5 * left[0];
        }
        let right = BROADWELL_RIEMANN_RIGHT;
        let component = |k: usize| -> Result<CellField> {
            Ok(
                project_initial_data(|x| if x <= 0.0 { left[k] } else { right[k] }, |_| 0.0, grid)?
                    .u,
            )
        };
        return BroadwellFluidState::new(*grid, component(0)?, component(1)?, component(2)?);
    }
    let rho = project_initial_data(|x| 1.0 + 0.2 * (PI * x).sin(), |_| 0.0, grid)?.u;
    BroadwellFluidState::at_equilibrium(*grid, rho, CellField::zeros(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn riemann_literal_and_equilibrated_left_states() {
        let cfg = parse_config("", Some(Preset::BroadwellRiemann)).unwrap();
        let g = grid(&cfg, 100).unwrap();
        let s = initial_broadwell(&cfg, &g).unwrap();
        assert_eq!((s.rho[0], s.m[0], s.z[0]), (1.0, 0.0, 1.0));
        assert_eq!((s.rho[99], s.m[99], s.z[99]), (0.25, 0.0, 0.125));
        let cfg = parse_config("equilibrated = true", Some(Preset::BroadwellRiemann)).unwrap();
        assert_eq!(initial_broadwell(&cfg, &g).unwrap().z[0], 0.5);
    }

    #[test]
    fn smooth_broadwell_data_is_at_equilibrium() {
        let cfg = parse_config("", Some(Preset::BroadwellSmooth)).unwrap();
        let s = initial_broadwell(&cfg, &grid(&cfg, 64).unwrap()).unwrap();
        assert!(s.deviation().unwrap().iter().all(|d| d.abs() < 1e-15));
    }

    #[test]
    fn jinxin_step_data() {
        let cfg = parse_config("", Some(Preset::JinxinRiemann)).unwrap();
        let g = grid(&cfg, 64).unwrap();
        let s = initial_pair(&cfg, &g).unwrap();
        assert_eq!(s.u[31], 0.5);
        assert_eq!(s.u[32], 0.125);
        assert!(s.v.iter().all(|&v| v == 0.0));
    }
}
