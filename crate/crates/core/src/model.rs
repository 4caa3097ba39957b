/// A two-velocity relaxation model: the source `R(u, v)`, its equilibrium
/// `v = A(u)` and a-priori bounds on the partial derivatives of `R`.
///
/// Implementations must satisfy `R(u, A(u)) = 0` and, on every state range
/// where they are used with strict invariant checks,
///
/// ```text
/// |∂u R(u, v)| ≤ g(U),   0 < β₀(U) ≤ ∂v R(u, v) ≤ h(U)   for |u| ≤ U.
/// ```
///
/// The bound functions are supplied per model rather than derived;
/// [`validate_subcharacteristic`](crate::validate_subcharacteristic) cross-checks
/// them by finite differences.
pub trait RelaxationModel {
    fn name(&self) -> &str;

    /// Equilibrium map `A`, normalised so that `A(0) = 0`.
    fn equilibrium(&self, u: f64) -> f64;

    /// Source term `R`.
    fn source(&self, u: f64, v: f64) -> f64;

    /// Bound `g(U)` on `|∂u R|`.
    fn bound_g(&self, u_max: f64) -> f64;

    /// Lower bound `β₀(U)` on `∂v R`.
    fn bound_beta0(&self, u_max: f64) -> f64;

    /// Upper bound `h(U)` on `∂v R`.
    fn bound_h(&self, u_max: f64) -> f64;

    /// Closed form of `sup_{|ξ| ≤ U} |A(ξ)|`, when the model knows it.
    fn sup_abs_equilibrium(&self, _u_max: f64) -> Option<f64> {
        None
    }

    /// Bound on the sub-characteristic ratio `|∂u R / ∂v R|` for `|u| ≤ U`.
    ///
    /// Defaults to `g(U) / β₀(U)`. Models whose separate derivative bounds
    /// degenerate while the ratio stays finite may override it.
    fn speed_ratio_bound(&self, u_max: f64) -> f64 {
        self.bound_g(u_max) / self.bound_beta0(u_max)
    }

    /// Penalization rate used by the relaxation stage at `(u, v)`.
    ///
    /// Defaults to the global `beta`. Models without a uniform bound on
    /// `∂v R` may raise it locally.
    fn local_penalization(&self, _u: f64, _v: f64, beta: f64) -> f64 {
        beta
    }
}

impl<M: RelaxationModel + ?Sized> RelaxationModel for &M {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn equilibrium(&self, u: f64) -> f64 {
        (**self).equilibrium(u)
    }
    fn source(&self, u: f64, v: f64) -> f64 {
        (**self).source(u, v)
    }
    fn bound_g(&self, u_max: f64) -> f64 {
        (**self).bound_g(u_max)
    }
    fn bound_beta0(&self, u_max: f64) -> f64 {
        (**self).bound_beta0(u_max)
    }
    fn bound_h(&self, u_max: f64) -> f64 {
        (**self).bound_h(u_max)
    }
    fn sup_abs_equilibrium(&self, u_max: f64) -> Option<f64> {
        (**self).sup_abs_equilibrium(u_max)
    }
    fn speed_ratio_bound(&self, u_max: f64) -> f64 {
        (**self).speed_ratio_bound(u_max)
    }
    fn local_penalization(&self, u: f64, v: f64, beta: f64) -> f64 {
        (**self).local_penalization(u, v, beta)
    }
}
