use crate::model::RelaxationModel;

/// `R(u, v) = v - A(u)`, the model with exact linear relaxation.
#[derive(Debug, Clone, Copy)]
pub struct Semilinear<A, B> {
    equilibrium: A,
    derivative_bound: B,
}

/// Builds the semilinear model from `A` and a bound `U ↦ sup_{|u|≤U} |A'(u)|`.
pub fn semilinear_model<A, B>(equilibrium: A, derivative_bound: B) -> Semilinear<A, B>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    Semilinear {
        equilibrium,
        derivative_bound,
    }
}

impl<A, B> RelaxationModel for Semilinear<A, B>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    fn name(&self) -> &str {
        "semilinear"
    }

    fn equilibrium(&self, u: f64) -> f64 {
        (self.equilibrium)(u)
    }

    fn source(&self, u: f64, v: f64) -> f64 {
        v - (self.equilibrium)(u)
    }

    fn bound_g(&self, u_max: f64) -> f64 {
        libm::fabs((self.derivative_bound)(u_max))
    }

    fn bound_beta0(&self, _u_max: f64) -> f64 {
        1.0
    }

    fn bound_h(&self, _u_max: f64) -> f64 {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_examples() {
        let m = semilinear_model(|u| u * u, |u| 2.0 * u);
        assert_eq!(m.source(2.0, 4.0), 0.0);
        assert_eq!(m.source(1.0, 3.0), 2.0);
        assert_eq!(m.bound_beta0(7.0), 1.0);
        assert_eq!(m.bound_h(7.0), 1.0);
        assert_eq!(m.bound_g(3.0), 6.0);
    }
}
