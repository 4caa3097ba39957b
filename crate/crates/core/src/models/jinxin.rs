use crate::model::RelaxationModel;

/// Denominator floor used by the presets.
pub const JINXIN_DEFAULT_ETA: f64 = 1e-12;

const SAMPLES: usize = 201;

/// Jin-Xin system with the nonlinear source
///
/// ```text
/// R(u, v) = (v - u²) / max(u² + v², η),   A(u) = u².
/// ```
///
/// `∂v R` changes sign away from the equilibrium manifold and is unbounded
/// near the origin, so no box satisfies the derivative hypothesis. The
/// bounds are therefore taken on the manifold `v = u²`: the speed bound
/// uses the exact ratio `|∂u R / ∂v R| = 2|u|`, and `β₀ = h` is the smallest
/// manifold rate `1/(U² + U⁴)`. The relaxation stage raises `β` cellwise to
/// the local rate `R / (v - u²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JinXinNonlinear {
    pub eta: f64,
}

/// Sampled extrema of the partial derivatives of `R` over a box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeBounds {
    /// `sup |∂u R|`.
    pub g: f64,
    /// `inf ∂v R`.
    pub beta0: f64,
    /// `sup ∂v R`.
    pub h: f64,
}

pub fn jinxin_nonlinear_model(eta: f64) -> JinXinNonlinear {
    JinXinNonlinear { eta }
}

impl JinXinNonlinear {
    /// Centred-difference extrema of `∂u R`, `∂v R` on `[-u_max, u_max] × [-v_max, v_max]`.
    pub fn sampled_derivative_bounds(&self, u_max: f64, v_max: f64) -> DerivativeBounds {
        let last = (SAMPLES - 1) as f64;
        let mut out = DerivativeBounds {
            g: 0.0,
            beta0: f64::INFINITY,
            h: f64::NEG_INFINITY,
        };
        for i in 0..SAMPLES {
            let u = u_max * (2.0 * i as f64 / last - 1.0);
            for k in 0..SAMPLES {
                let v = v_max * (2.0 * k as f64 / last - 1.0);
                let hu = 1e-6 * libm::fabs(u).max(1.0);
                let hv = 1e-6 * libm::fabs(v).max(1.0);
                let du = (self.source(u + hu, v) - self.source(u - hu, v)) / (2.0 * hu);
                let dv = (self.source(u, v + hv) - self.source(u, v - hv)) / (2.0 * hv);
                out.g = out.g.max(libm::fabs(du));
                out.beta0 = out.beta0.min(dv);
                out.h = out.h.max(dv);
            }
        }
        out
    }
}

impl RelaxationModel for JinXinNonlinear {
    fn name(&self) -> &str {
        "jin-xin nonlinear"
    }

    fn equilibrium(&self, u: f64) -> f64 {
        u * u
    }

    fn source(&self, u: f64, v: f64) -> f64 {
        (v - u * u) / (u * u + v * v).max(self.eta)
    }

    /// Chosen so that `g / β₀` equals the manifold ratio `2U`.
    fn bound_g(&self, u_max: f64) -> f64 {
        self.speed_ratio_bound(u_max) * self.bound_beta0(u_max)
    }

    /// `inf ∂v R = 1 / (U² + U⁴)` on the equilibrium manifold.
    fn bound_beta0(&self, u_max: f64) -> f64 {
        1.0 / (u_max * u_max * (1.0 + u_max * u_max)).max(self.eta)
    }

    fn bound_h(&self, u_max: f64) -> f64 {
        self.bound_beta0(u_max)
    }

    fn sup_abs_equilibrium(&self, u_max: f64) -> Option<f64> {
        Some(u_max * u_max)
    }

    fn speed_ratio_bound(&self, u_max: f64) -> f64 {
        2.0 * u_max
    }

    /// `max(β, R / (v - u²)) = max(β, 1 / max(u² + v², η))`: cells whose own
    /// relaxation rate exceeds `β` are relaxed at that rate.
    fn local_penalization(&self, u: f64, v: f64, beta: f64) -> f64 {
        beta.max(1.0 / (u * u + v * v).max(self.eta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_examples() {
        let m = jinxin_nonlinear_model(JINXIN_DEFAULT_ETA);
        assert_eq!(m.source(1.0, 1.0), 0.0);
        assert!((m.source(1.0, 2.0) - 0.2).abs() < 1e-15);
        assert_eq!(m.source(0.0, 0.0), 0.0);
    }

    #[test]
    fn equilibrium_manifold_is_a_zero_set() {
        let m = jinxin_nonlinear_model(JINXIN_DEFAULT_ETA);
        for k in 0..=200 {
            let u = -10.0 + 0.1 * k as f64;
            assert_eq!(m.source(u, m.equilibrium(u)), 0.0);
        }
    }

    #[test]
    fn derivative_hypothesis_fails_on_boxes() {
        let m = jinxin_nonlinear_model(JINXIN_DEFAULT_ETA);
        let b = m.sampled_derivative_bounds(1.0, 2.0);
        assert!(b.beta0 < 0.0);
        assert!(b.h > 1e6);
    }

    #[test]
    fn manifold_speed_ratio() {
        let m = jinxin_nonlinear_model(JINXIN_DEFAULT_ETA);
        for &u in &[0.3, -0.7, 1.5] {
            let v = u * u;
            let h = 1e-7;
            let du = (m.source(u + h, v) - m.source(u - h, v)) / (2.0 * h);
            let dv = (m.source(u, v + h) - m.source(u, v - h)) / (2.0 * h);
            assert!((libm::fabs(du / dv) - 2.0 * libm::fabs(u)).abs() < 1e-5);
        }
        assert_eq!(m.speed_ratio_bound(2.0), 4.0);
    }
}
