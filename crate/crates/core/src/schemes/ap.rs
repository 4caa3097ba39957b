use alloc::vec::Vec;

use crate::bounds::{SchemeParameters, StabilityBounds};
use crate::diagnostics::{deviation_l1, total_variation};
use crate::diagonal::wz;
use crate::error::{Error, Result};
use crate::grid::StatePair;
use crate::model::RelaxationModel;

use super::relaxation::relaxation_step;
use super::transport::transport_step_lf;

/// Per-step audit values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub step_index: u64,
    pub time: f64,
    /// `TV(w) + TV(z)` before the step.
    pub tv_before: f64,
    /// `TV(w) + TV(z)` after the step.
    pub tv_after: f64,
    pub linf_u: f64,
    pub linf_v: f64,
    /// `‖v - A(u)‖₁` after the step.
    pub deviation_l1: f64,
    /// `Σ u_j Δx` after the step.
    pub mass_u: f64,
}

/// Total variation of the diagonal variables of `state`.
pub fn diagonal_total_variation(state: &StatePair, sqrt_a: f64) -> f64 {
    let (w, z): (Vec<f64>, Vec<f64>) = state
        .u
        .iter()
        .zip(state.v.iter())
        .map(|(&u, &v)| wz(u, v, sqrt_a))
        .unzip();
    let bc = state.grid.boundary();
    total_variation(&w, bc) + total_variation(&z, bc)
}

/// One splitting step: Lax-Friedrichs transport followed by exponential relaxation.
pub fn ap_step<M: RelaxationModel + ?Sized>(
    state: &StatePair,
    model: &M,
    params: &SchemeParameters,
) -> Result<(StatePair, StepReport)> {
    let sqrt_a = params.sqrt_a();
    let tv_before = diagonal_total_variation(state, sqrt_a);
    let half = transport_step_lf(state, params);
    let mut next = relaxation_step(&half, model, params)?;
    next.time = state.time + params.dt();
    next.step_index = state.step_index + 1;
    next.check_finite()?;
    let report = StepReport {
        step_index: next.step_index,
        time: next.time,
        tv_before,
        tv_after: diagonal_total_variation(&next, sqrt_a),
        linf_u: next.u.sup_norm(),
        linf_v: next.v.sup_norm(),
        deviation_l1: deviation_l1(&next, model),
        mass_u: next.u.sum() * next.grid.dx(),
    };
    Ok((next, report))
}

/// Number of steps `solve` takes to cover `span` with steps of at most `dt`.
pub fn step_count(span: f64, dt: f64) -> u64 {
    if span <= 0.0 {
        return 0;
    }
    // Tolerates round-off when `span` is an exact multiple of `dt`.
    libm::ceil(span / dt - 1e-10).max(1.0) as u64
}

/// Drives a time loop from `t0` to `t_final`, shrinking only the last step
/// so the final time is hit exactly. `step` receives the step length and
/// the time to stamp on the new state.
pub(crate) fn march<S>(
    t0: f64,
    t_final: f64,
    dt: f64,
    mut state: S,
    mut step: impl FnMut(&S, f64, f64) -> Result<S>,
) -> Result<S> {
    if !(t_final >= t0) {
        return Err(Error::InvalidArgument(
            "final time precedes the initial time",
        ));
    }
    let n = step_count(t_final - t0, dt);
    for k in 0..n {
        let last = k + 1 == n;
        let (h, stamp) = if last {
            let remaining = t_final - (t0 + k as f64 * dt);
            (remaining.min(dt), t_final)
        } else {
            (dt, t0 + (k + 1) as f64 * dt)
        };
        state = step(&state, h, stamp)?;
    }
    Ok(state)
}

/// Advances `initial` to `t_final` with [`ap_step`].
///
/// `observer` sees every new state with its report and may abort the run by
/// returning an error (see [`StrictAudit`]).
pub fn solve<M: RelaxationModel + ?Sized>(
    initial: &StatePair,
    model: &M,
    params: &SchemeParameters,
    t_final: f64,
    observer: &mut dyn FnMut(&StatePair, &StepReport) -> Result<()>,
) -> Result<(StatePair, Vec<StepReport>)> {
    let mut reports = Vec::new();
    let t0 = initial.time;
    let last = march(t0, t_final, params.dt(), initial.clone(), |s, h, stamp| {
        let p = if h < params.dt() {
            params.with_dt(h)?
        } else {
            *params
        };
        let (mut next, mut report) = ap_step(s, model, &p)?;
        next.time = stamp;
        report.time = stamp;
        observer(&next, &report)?;
        reports.push(report);
        Ok(next)
    })?;
    Ok((last, reports))
}

/// Inline checks of the `L∞` and total-variation estimates.
///
/// Valid only when the parameters were selected from `bounds` and the model
/// satisfies its derivative bounds on the visited states.
#[derive(Debug, Clone, Copy)]
pub struct StrictAudit {
    pub bounds: StabilityBounds,
    pub sqrt_a: f64,
    /// Relative slack for the TV comparison.
    pub tv_tolerance: f64,
}

impl StrictAudit {
    pub fn new(bounds: StabilityBounds, params: &SchemeParameters) -> Self {
        Self {
            bounds,
            sqrt_a: params.sqrt_a(),
            tv_tolerance: 1e-12,
        }
    }

    pub fn check(&self, report: &StepReport) -> Result<()> {
        let tv_limit = report.tv_before + self.tv_tolerance * (1.0 + report.tv_before);
        if report.tv_after > tv_limit {
            return Err(Error::Invariant {
                step: report.step_index,
                what: "diagonal total variation is non-increasing",
                value: report.tv_after,
                limit: tv_limit,
            });
        }
        let u_limit = self.bounds.v * (1.0 + 1e-12);
        if report.linf_u > u_limit {
            return Err(Error::Invariant {
                step: report.step_index,
                what: "|u| <= V(N0, a0)",
                value: report.linf_u,
                limit: u_limit,
            });
        }
        let v_limit = self.sqrt_a * self.bounds.v * (1.0 + 1e-12);
        if report.linf_v > v_limit {
            return Err(Error::Invariant {
                step: report.step_index,
                what: "|v| <= sqrt(a) V(N0, a0)",
                value: report.linf_v,
                limit: v_limit,
            });
        }
        Ok(())
    }
}
