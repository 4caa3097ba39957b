//! Stiff relaxation stage `∂t u = 0`, `∂t v = -R(u, v)/ε`.
//!
//! The source is split as `R = [R - β(v - A(u))] + β(v - A(u))`; the linear
//! part is integrated exactly and the remainder explicitly inside the
//! exponential factor. With `s = βΔt/ε`,
//!
//! ```text
//! v ← v - (v - A(u)) [1 - (1 + s) e^{-s}] - (Δt/ε) e^{-s} R(u, v).
//! ```
//!
//! As `ε → 0` both factors vanish or saturate and `v` lands on `A(u)`.

use alloc::vec::Vec;

use crate::bounds::SchemeParameters;
use crate::diagonal::uv;
use crate::error::{Error, Result};
use crate::grid::StatePair;
use crate::model::RelaxationModel;

/// The two scalar weights of the exponential update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationWeights {
    /// `1 - (1 + s) e^{-s}`, applied to the deviation `v - A(u)`.
    pub projection: f64,
    /// `(Δt/ε) e^{-s}`, applied to `R(u, v)`.
    pub explicit: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub dt: f64,
}

impl RelaxationWeights {
    /// Weights for a step of length `dt` with penalisation `beta`.
    pub fn new(beta: f64, epsilon: f64, dt: f64) -> Self {
        let s = beta * dt / epsilon;
        let decay = libm::exp(-s);
        if decay == 0.0 {
            return Self {
                projection: 1.0,
                explicit: 0.0,
                beta,
                epsilon,
                dt,
            };
        }
        Self {
            projection: 1.0 - (1.0 + s) * decay,
            explicit: dt / epsilon * decay,
            beta,
            epsilon,
            dt,
        }
    }

    pub fn from_params(params: &SchemeParameters) -> Self {
        Self::new(params.beta(), params.epsilon(), params.dt())
    }

    /// Signed change of `v` over one step: `v_new = v - increment`.
    #[inline]
    pub fn increment(&self, deviation: f64, source: f64) -> f64 {
        deviation * self.projection + self.explicit * source
    }
}

#[inline]
fn relaxation_increment<M: RelaxationModel + ?Sized>(
    model: &M,
    weights: &RelaxationWeights,
    u: f64,
    v: f64,
) -> Result<f64> {
    let eq = model.equilibrium(u);
    let r = model.source(u, v);
    if !(eq.is_finite() && r.is_finite()) {
        return Err(Error::ModelDomain { u, v });
    }
    let rate = model.local_penalization(u, v, weights.beta);
    if rate != weights.beta {
        return Ok(RelaxationWeights::new(rate, weights.epsilon, weights.dt).increment(v - eq, r));
    }
    Ok(weights.increment(v - eq, r))
}

/// Applies the exponential relaxation update cellwise; `u` is unchanged.
pub fn relaxation_step<M: RelaxationModel + ?Sized>(
    state: &StatePair,
    model: &M,
    params: &SchemeParameters,
) -> Result<StatePair> {
    let weights = RelaxationWeights::from_params(params);
    let v = state
        .u
        .iter()
        .zip(state.v.iter())
        .map(|(&u, &v)| Ok(v - relaxation_increment(model, &weights, u, v)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(StatePair {
        v: v.into(),
        ..state.clone()
    })
}

/// The relaxation update seen in diagonal variables: `w ← w + G`, `z ← z - G`.
pub fn relaxation_operator_g<M: RelaxationModel + ?Sized>(
    w: f64,
    z: f64,
    model: &M,
    params: &SchemeParameters,
) -> Result<f64> {
    let (u, v) = uv(w, z, params.sqrt_a());
    relaxation_increment(model, &RelaxationWeights::from_params(params), u, v)
}

/// Applies `w ← w + G(w, z)`, `z ← z - G(w, z)` to one pair.
pub fn relax_diagonal<M: RelaxationModel + ?Sized>(
    w: f64,
    z: f64,
    model: &M,
    params: &SchemeParameters,
) -> Result<(f64, f64)> {
    let g = relaxation_operator_g(w, z, model, params)?;
    Ok((w + g, z - g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::wz;
    use crate::grid::{Boundary, CellField, Grid1D};
    use crate::models::semilinear_model;
    use alloc::vec;

    fn one_cell(u: f64, v: f64) -> StatePair {
        let g = Grid1D::new(0.0, 1.0, 1, Boundary::Periodic).unwrap();
        StatePair::new(g, CellField::new(vec![u]), CellField::new(vec![v])).unwrap()
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let model = semilinear_model(|u| u * u, |u| 2.0 * u);
        let p = SchemeParameters::from_cfl(4.0, 1.0, 0.3, 0.1, 0.9).unwrap();
        let s = one_cell(0.7, 0.49);
        assert_eq!(relaxation_step(&s, &model, &p).unwrap().v[0], 0.49);
        let (w, z) = wz(0.7, 0.49, p.sqrt_a());
        assert!(relaxation_operator_g(w, z, &model, &p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn stiff_limit_projects_onto_equilibrium() {
        let model = semilinear_model(|u| u * u, |u| 2.0 * u);
        let p = SchemeParameters::new(1.0, 1.0, 1e-12, 0.01, 0.1).unwrap();
        let out = relaxation_step(&one_cell(0.5, 0.9), &model, &p).unwrap();
        assert!((out.v[0] - 0.25).abs() < 1e-10);
        assert_eq!(out.u[0], 0.5);
    }

    #[test]
    fn semilinear_step_is_exact_decay() {
        // Δt/ε = ln 2 halves the deviation.
        let model = semilinear_model(|u| u * u, |u| 2.0 * u);
        let dt = 0.01;
        let p = SchemeParameters::new(1.0, 1.0, dt / core::f64::consts::LN_2, dt, 0.1).unwrap();
        let out = relaxation_step(&one_cell(0.0, 1.0), &model, &p).unwrap();
        assert!((out.v[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_finite_source_is_reported() {
        let model = semilinear_model(|u: f64| libm::log(u), |_| 1.0);
        let p = SchemeParameters::new(1.0, 1.0, 1.0, 0.01, 0.1).unwrap();
        let err = relaxation_step(&one_cell(-1.0, 0.0), &model, &p).unwrap_err();
        assert!(matches!(err, Error::ModelDomain { .. }));
    }
}
