//! Time-stepping schemes: the asymptotic-preserving splitting scheme, the
//! explicit reference solver and the limit-equation solver.

mod ap;
mod explicit;
mod limit;
mod relaxation;
mod transport;

pub(crate) use ap::march;
pub use ap::{ap_step, diagonal_total_variation, solve, step_count, StepReport, StrictAudit};
pub(crate) use explicit::{check_explicit_step, muscl_lf_update, MUSCL_GHOSTS};
pub use explicit::{
    explicit_reference_step, explicit_time_step, solve_explicit, EXPLICIT_MAX_CFL,
    EXPLICIT_STIFFNESS_FRACTION,
};
pub use limit::{limit_scheme_step, sampled_max_speed, solve_limit};
pub use relaxation::{relax_diagonal, relaxation_operator_g, relaxation_step, RelaxationWeights};
pub use transport::{transport_step_lf, upwind_diagonal_step};
