//! A-priori bounds and the choice of `(a, β, Δt)`.

use crate::error::{Error, Result};
use crate::model::RelaxationModel;

/// Margin applied to the characteristic speed so that the strict
/// sub-characteristic inequality holds with room to spare.
pub const SPEED_SAFETY_FACTOR: f64 = 1.05;

/// Number of uniform samples of `A` on `[-U, U]` when no closed form exists.
const EQUILIBRIUM_SAMPLES: usize = 10_001;

/// Sample count per axis of the sub-characteristic check.
const SUBCHAR_SAMPLES: usize = 101;

/// `L∞` bounds derived from the sup-norm `N₀` of the initial data and a
/// user-chosen lower speed `a₀`:
///
/// ```text
/// U = (1 + 1/√a₀) N₀,   F = sup_{|ξ|≤U} |A(ξ)|,   V = U + F/√a₀.
/// ```
///
/// With `a` selected from these, the numerical solution stays in
/// `|u| ≤ V`, `|v| ≤ √a V`, i.e. `(w, z) ∈ [-√a V, √a V]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityBounds {
    pub n0: f64,
    pub a0: f64,
    pub u: f64,
    pub f: f64,
    pub v: f64,
}

impl StabilityBounds {
    /// Half-width `√a V` of the invariant square for the diagonal variables.
    pub fn diagonal_radius(&self, a: f64) -> f64 {
        libm::sqrt(a) * self.v
    }
}

pub fn compute_stability_bounds<M: RelaxationModel + ?Sized>(
    model: &M,
    n0: f64,
    a0: f64,
) -> Result<StabilityBounds> {
    if !(n0 >= 0.0 && n0.is_finite()) {
        return Err(Error::InvalidArgument("N0 must be finite and non-negative"));
    }
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(Error::InvalidArgument("a0 must be finite and positive"));
    }
    let sqrt_a0 = libm::sqrt(a0);
    let u = (1.0 + 1.0 / sqrt_a0) * n0;
    let f = match model.sup_abs_equilibrium(u) {
        Some(f) => f,
        None => {
            let mut f: f64 = 0.0;
            let last = (EQUILIBRIUM_SAMPLES - 1) as f64;
            for k in 0..EQUILIBRIUM_SAMPLES {
                let xi = u * (2.0 * k as f64 / last - 1.0);
                let a = model.equilibrium(xi);
                if !a.is_finite() {
                    return Err(Error::ModelDomain { u: xi, v: a });
                }
                f = f.max(libm::fabs(a));
            }
            f
        }
    };
    Ok(StabilityBounds {
        n0,
        a0,
        u,
        f,
        v: u + f / sqrt_a0,
    })
}

/// The `a₀` for which `√a₀` equals the speed bound `g(V)/β₀(V)`, i.e. the
/// choice minimising the selected `√a`. Returns 1 when `N₀ = 0`.
pub fn balanced_a0<M: RelaxationModel + ?Sized>(model: &M, n0: f64) -> Result<f64> {
    if n0 == 0.0 {
        return Ok(1.0);
    }
    let excess = |s: f64| -> Result<f64> {
        let b = compute_stability_bounds(model, n0, s * s)?;
        Ok(s - model.speed_ratio_bound(b.v))
    };
    let (mut lo, mut hi) = (1e-6, 1e6);
    if excess(lo)? >= 0.0 || excess(hi)? <= 0.0 {
        return Err(Error::InvalidArgument("no balanced a0 in [1e-12, 1e12]"));
    }
    for _ in 0..200 {
        let mid = libm::sqrt(lo * hi);
        if excess(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(hi * hi)
}

/// Validated `(a, β, ε, Δt, Δx)` with `λ = √a Δt / Δx ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParameters {
    a: f64,
    beta: f64,
    epsilon: f64,
    dt: f64,
    dx: f64,
    lambda: f64,
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

impl SchemeParameters {
    /// Builds parameters from an explicit time step.
    pub fn new(a: f64, beta: f64, epsilon: f64, dt: f64, dx: f64) -> Result<Self> {
        if !(positive(a) && positive(beta) && positive(epsilon) && positive(dt) && positive(dx)) {
            return Err(Error::InvalidArgument(
                "a, beta, epsilon, dt and dx must be positive",
            ));
        }
        let lambda = libm::sqrt(a) * dt / dx;
        if lambda >= 1.0 {
            return Err(Error::StepSize(
                "CFL number sqrt(a) dt / dx must be below 1",
            ));
        }
        Ok(Self {
            a,
            beta,
            epsilon,
            dt,
            dx,
            lambda,
        })
    }

    /// Builds parameters from a target CFL number; `lambda()` returns it unchanged.
    pub fn from_cfl(a: f64, beta: f64, epsilon: f64, dx: f64, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidArgument("CFL number must lie in (0, 1)"));
        }
        if !(positive(a) && positive(beta) && positive(epsilon) && positive(dx)) {
            return Err(Error::InvalidArgument(
                "a, beta, epsilon and dx must be positive",
            ));
        }
        let dt = lambda * dx / libm::sqrt(a);
        Ok(Self {
            a,
            beta,
            epsilon,
            dt,
            dx,
            lambda,
        })
    }

    /// Same parameters with a shorter step (used to land on a final time).
    pub fn with_dt(&self, dt: f64) -> Result<Self> {
        if !(positive(dt) && dt <= self.dt) {
            return Err(Error::StepSize("time step may only shrink"));
        }
        Self::new(self.a, self.beta, self.epsilon, dt, self.dx)
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        if !positive(epsilon) {
            return Err(Error::InvalidArgument("epsilon must be positive"));
        }
        Ok(Self { epsilon, ..*self })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn sqrt_a(&self) -> f64 {
        libm::sqrt(self.a)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Picks the characteristic speed, the penalisation rate and the time step:
///
/// ```text
/// √a = 1.05 · max(√a₀, g(V)/β₀(V)),   β = h(V),   Δt = λ Δx / √a.
/// ```
pub fn select_parameters<M: RelaxationModel + ?Sized>(
    model: &M,
    bounds: &StabilityBounds,
    epsilon: f64,
    dx: f64,
    lambda_target: f64,
) -> Result<SchemeParameters> {
    if !(lambda_target > 0.0 && lambda_target < 1.0) {
        return Err(Error::InvalidArgument("CFL number must lie in (0, 1)"));
    }
    if !positive(epsilon) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    if !positive(dx) {
        return Err(Error::InvalidArgument("dx must be positive"));
    }
    let v = bounds.v;
    let beta0 = model.bound_beta0(v);
    if !(beta0 > 0.0) {
        return Err(Error::Hypothesis {
            u: v,
            v: f64::NAN,
            dv_source: beta0,
        });
    }
    let ratio = model.speed_ratio_bound(v);
    let beta = model.bound_h(v);
    if !(ratio.is_finite() && beta.is_finite()) {
        return Err(Error::ModelDomain { u: v, v: f64::NAN });
    }
    let sqrt_a = SPEED_SAFETY_FACTOR * libm::sqrt(bounds.a0).max(ratio);
    SchemeParameters::from_cfl(sqrt_a * sqrt_a, beta, epsilon, dx, lambda_target)
}

/// Outcome of [`validate_subcharacteristic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubcharacteristicReport {
    pub pass: bool,
    /// Largest sampled `|∂u R / ∂v R|`.
    pub worst_ratio: f64,
    pub worst_u: f64,
    pub worst_v: f64,
    pub sqrt_a: f64,
}

/// Checks `|∂u R / ∂v R| < √a` on a 101×101 sample of `|u| ≤ V`, `|v| ≤ √a V`
/// using centred finite differences.
pub fn validate_subcharacteristic<M: RelaxationModel + ?Sized>(
    model: &M,
    params: &SchemeParameters,
    bounds: &StabilityBounds,
) -> Result<SubcharacteristicReport> {
    let sqrt_a = params.sqrt_a();
    let u_max = bounds.v;
    let v_max = sqrt_a * bounds.v;
    let last = (SUBCHAR_SAMPLES - 1) as f64;
    let mut report = SubcharacteristicReport {
        pass: true,
        worst_ratio: 0.0,
        worst_u: 0.0,
        worst_v: 0.0,
        sqrt_a,
    };
    for i in 0..SUBCHAR_SAMPLES {
        let u = u_max * (2.0 * i as f64 / last - 1.0);
        for k in 0..SUBCHAR_SAMPLES {
            let v = v_max * (2.0 * k as f64 / last - 1.0);
            let hu = 1e-6 * libm::fabs(u).max(1.0);
            let hv = 1e-6 * libm::fabs(v).max(1.0);
            let du = (model.source(u + hu, v) - model.source(u - hu, v)) / (2.0 * hu);
            let dv = (model.source(u, v + hv) - model.source(u, v - hv)) / (2.0 * hv);
            if !(du.is_finite() && dv.is_finite()) {
                return Err(Error::ModelDomain { u, v });
            }
            if dv <= 0.0 {
                return Err(Error::Hypothesis {
                    u,
                    v,
                    dv_source: dv,
                });
            }
            let ratio = libm::fabs(du / dv);
            if ratio > report.worst_ratio {
                report.worst_ratio = ratio;
                report.worst_u = u;
                report.worst_v = v;
            }
        }
    }
    report.pass = report.worst_ratio < sqrt_a;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{semilinear_model, Semilinear};

    type Scalar = fn(f64) -> f64;

    fn burgers() -> Semilinear<Scalar, Scalar> {
        semilinear_model(|u| u * u, |u| 2.0 * u)
    }

    /// `R = v`: independent of `u`, so `g ≡ 0`.
    struct Linear;

    impl RelaxationModel for Linear {
        fn name(&self) -> &str {
            "linear"
        }
        fn equilibrium(&self, _u: f64) -> f64 {
            0.0
        }
        fn source(&self, _u: f64, v: f64) -> f64 {
            v
        }
        fn bound_g(&self, _: f64) -> f64 {
            0.0
        }
        fn bound_beta0(&self, _: f64) -> f64 {
            1.0
        }
        fn bound_h(&self, _: f64) -> f64 {
            1.0
        }
    }

    #[test]
    fn bounds_for_quadratic_equilibrium() {
        let b = compute_stability_bounds(&burgers(), 1.0, 1.0).unwrap();
        assert_eq!((b.u, b.f, b.v), (2.0, 4.0, 6.0));

        let b = compute_stability_bounds(&burgers(), 1.0, 4.0).unwrap();
        assert_eq!((b.u, b.f, b.v), (1.5, 2.25, 2.625));

        let b = compute_stability_bounds(&burgers(), 0.0, 3.0).unwrap();
        assert_eq!((b.u, b.f, b.v), (0.0, 0.0, 0.0));
    }

    #[test]
    fn bounds_reject_bad_arguments() {
        assert!(compute_stability_bounds(&burgers(), -1.0, 1.0).is_err());
        assert!(compute_stability_bounds(&burgers(), 1.0, 0.0).is_err());
    }

    #[test]
    fn bounds_reject_non_finite_equilibrium() {
        let m = semilinear_model(|u: f64| 1.0 / u - 1.0 / u, |_| 0.0);
        assert!(matches!(
            compute_stability_bounds(&m, 1.0, 1.0),
            Err(Error::ModelDomain { .. })
        ));
    }

    #[test]
    fn parameters_for_burgers() {
        let model = burgers();
        let b = compute_stability_bounds(&model, 1.0, 1.0).unwrap();
        let p = select_parameters(&model, &b, 1e-3, 0.01, 0.9).unwrap();
        assert!((p.sqrt_a() - 12.6).abs() < 1e-12);
        assert_eq!(p.beta(), 1.0);
        assert_eq!(p.lambda(), 0.9);
        assert!((p.dt() - 0.9 * 0.01 / 12.6).abs() < 1e-15);
    }

    #[test]
    fn parameters_when_source_ignores_u() {
        let b = StabilityBounds {
            n0: 1.0,
            a0: 4.0,
            u: 1.5,
            f: 0.0,
            v: 1.5,
        };
        let p = select_parameters(&Linear, &b, 1.0, 0.02, 0.9).unwrap();
        assert!((p.sqrt_a() - 2.1).abs() < 1e-12);
        assert!((p.dt() - 8.571428571428571e-3).abs() < 1e-15);
    }

    #[test]
    fn balanced_a0_equalises_the_speeds() {
        let model = burgers();
        let a0 = balanced_a0(&model, 1.0).unwrap();
        let b = compute_stability_bounds(&model, 1.0, a0).unwrap();
        assert!((libm::sqrt(a0) - 2.0 * b.v).abs() < 1e-9);
        let p = select_parameters(&model, &b, 1.0, 0.01, 0.9).unwrap();
        for other in [1.0, 4.0, 0.5 * a0, 2.0 * a0] {
            let b = compute_stability_bounds(&model, 1.0, other).unwrap();
            assert!(
                select_parameters(&model, &b, 1.0, 0.01, 0.9)
                    .unwrap()
                    .sqrt_a()
                    >= p.sqrt_a()
            );
        }
        assert_eq!(balanced_a0(&model, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn parameters_reject_bad_cfl() {
        let b = compute_stability_bounds(&burgers(), 1.0, 1.0).unwrap();
        assert!(select_parameters(&burgers(), &b, 1.0, 0.1, 1.0).is_err());
        assert!(select_parameters(&burgers(), &b, 1.0, 0.1, 0.0).is_err());
        assert!(select_parameters(&burgers(), &b, 0.0, 0.1, 0.5).is_err());
    }

    #[test]
    fn parameters_reject_nonpositive_beta0() {
        let m = semilinear_model(|u| u, |_| 1.0);
        struct Bad<M>(M);
        impl<M: RelaxationModel> RelaxationModel for Bad<M> {
            fn name(&self) -> &str {
                "bad"
            }
            fn equilibrium(&self, u: f64) -> f64 {
                self.0.equilibrium(u)
            }
            fn source(&self, u: f64, v: f64) -> f64 {
                self.0.source(u, v)
            }
            fn bound_g(&self, _: f64) -> f64 {
                1.0
            }
            fn bound_beta0(&self, _: f64) -> f64 {
                0.0
            }
            fn bound_h(&self, _: f64) -> f64 {
                1.0
            }
        }
        let b = compute_stability_bounds(&m, 1.0, 1.0).unwrap();
        assert!(matches!(
            select_parameters(&Bad(m), &b, 1.0, 0.1, 0.5),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn cfl_is_enforced() {
        assert!(SchemeParameters::new(4.0, 1.0, 1.0, 0.045, 0.1).is_ok());
        assert!(SchemeParameters::new(4.0, 1.0, 1.0, 0.05, 0.1).is_err());
        let p = SchemeParameters::new(4.0, 1.0, 1.0, 0.02, 0.1).unwrap();
        assert!(p.with_dt(0.03).is_err());
        assert!((p.with_dt(0.01).unwrap().lambda() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn subcharacteristic_passes_for_selected_parameters() {
        let model = burgers();
        let b = compute_stability_bounds(&model, 1.0, 1.0).unwrap();
        let p = select_parameters(&model, &b, 1.0, 0.01, 0.9).unwrap();
        let r = validate_subcharacteristic(&model, &p, &b).unwrap();
        assert!(r.pass);
        assert!(r.worst_ratio <= 2.0 * b.v + 1e-6);
        assert!(r.worst_ratio < p.sqrt_a());
    }

    #[test]
    fn subcharacteristic_fails_below_the_speed_bound() {
        let model = burgers();
        let b = compute_stability_bounds(&model, 1.0, 1.0).unwrap();
        // 2V = 12 exceeds √a = 10.
        let p = SchemeParameters::from_cfl(100.0, 1.0, 1.0, 0.01, 0.5).unwrap();
        let r = validate_subcharacteristic(&model, &p, &b).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn subcharacteristic_without_u_dependence() {
        let b = StabilityBounds {
            n0: 1.0,
            a0: 1.0,
            u: 2.0,
            f: 0.0,
            v: 2.0,
        };
        let p = SchemeParameters::from_cfl(0.01, 1.0, 1.0, 0.1, 0.5).unwrap();
        let r = validate_subcharacteristic(&Linear, &p, &b).unwrap();
        assert!(r.pass);
        assert_eq!(r.worst_ratio, 0.0);
    }
}
