//! Asymptotic-preserving finite-volume schemes for stiff 1-D relaxation systems.
//!
//! The crate targets the two-velocity relaxation system
//!
//! ```text
//! ∂t u + ∂x v = 0
//! ∂t v + a ∂x u = -R(u, v) / ε
//! ```
//!
//! whose source drives `v` towards a local equilibrium `v = A(u)`. Each time
//! step splits into a linear transport stage (Lax-Friedrichs in `(u, v)`, which
//! is exactly upwinding in the diagonal variables `(w, z)`) and an exponential
//! relaxation stage that stays stable for any `ε > 0` and projects onto the
//! equilibrium manifold as `ε → 0`.
//!
//! Besides the core scheme the crate carries:
//!
//! - stability-parameter selection (`a`, `β`, `Δt`) from the sup-norm of the data,
//! - a fully explicit MUSCL/Lax-Friedrichs reference solver and limit-equation solvers,
//! - the semilinear, nonlinear Jin-Xin and Broadwell models,
//! - diagnostics: discrete norms, total variation, inter-resolution error
//!   estimates, convergence-order fitting and trend-to-equilibrium series.
//!
//! The crate is `no_std` and only needs `alloc`; elementary functions come
//! from `libm` so results are bit-identical across platforms.
//!
//! ```
//! use relaxkit_core::{
//!     compute_stability_bounds, project_initial_data, select_parameters, solve,
//!     models::semilinear_model, Boundary, Grid1D,
//! };
//!
//! let model = semilinear_model(|u| u * u, |u_max| 2.0 * u_max);
//! let grid = Grid1D::new(0.0, 1.0, 64, Boundary::Periodic).unwrap();
//! let initial = project_initial_data(|x| 0.5 * libm::sin(6.283185307179586 * x), |_| 0.0, &grid).unwrap();
//! let bounds = compute_stability_bounds(&model, initial.sup_norm(), 1.0).unwrap();
//! let params = select_parameters(&model, &bounds, 1e-6, grid.dx(), 0.9).unwrap();
//! let (state, reports) = solve(&initial, &model, &params, 0.1, &mut |_, _| Ok(())).unwrap();
//! assert!((state.time - 0.1).abs() < 1e-14);
//! assert!(reports.iter().all(|r| r.tv_after <= r.tv_before + 1e-12 * (1.0 + r.tv_before)));
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod bounds;
pub mod diagnostics;
mod diagonal;
mod error;
mod grid;
mod init;
mod model;
pub mod models;
pub mod schemes;

pub use bounds::{
    balanced_a0, compute_stability_bounds, select_parameters, validate_subcharacteristic,
    SchemeParameters, StabilityBounds, SubcharacteristicReport, SPEED_SAFETY_FACTOR,
};
pub use diagonal::{from_diagonal, to_diagonal, DiagonalPair};
pub use error::{Error, Result};
pub use grid::{Boundary, CellField, Grid1D, Parity, StatePair};
pub use init::project_initial_data;
pub use model::RelaxationModel;
pub use schemes::{ap_step, solve, StepReport};
