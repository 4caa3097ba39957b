use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{CellField, Grid1D, StatePair};

/// Gauss-Legendre abscissa `√(3/5)` on the reference cell `[-1, 1]`.
const GAUSS_NODE: f64 = 0.774_596_669_241_483_4;

/// Cell average of `f` over `[left, left + dx]` by 3-point Gauss-Legendre.
///
/// Written as a correction to the midpoint value so that constants are
/// reproduced exactly.
pub(crate) fn cell_average(f: &impl Fn(f64) -> f64, left: f64, dx: f64) -> f64 {
    let mid = left + 0.5 * dx;
    let off = 0.5 * dx * GAUSS_NODE;
    let (fl, fm, fr) = (f(mid - off), f(mid), f(mid + off));
    fm + 5.0 / 18.0 * ((fl - fm) + (fr - fm))
}

pub(crate) fn project_field(f: &impl Fn(f64) -> f64, grid: &Grid1D) -> Result<CellField> {
    let dx = grid.dx();
    let values: Vec<f64> = (0..grid.n_cells())
        .map(|j| cell_average(f, grid.interface(j), dx))
        .collect();
    if let Some(cell) = values.iter().position(|x| !x.is_finite()) {
        return Err(Error::InputFunction {
            cell,
            value: values[cell],
        });
    }
    Ok(values.into())
}

/// Cell averages of `(u0, v0)` at `t = 0`.
pub fn project_initial_data(
    u0: impl Fn(f64) -> f64,
    v0: impl Fn(f64) -> f64,
    grid: &Grid1D,
) -> Result<StatePair> {
    let u = project_field(&u0, grid)?;
    let v = project_field(&v0, grid)?;
    StatePair::new(*grid, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Boundary;
    use core::f64::consts::PI;

    #[test]
    fn constants_are_exact() {
        let g = Grid1D::new(-0.3, 1.7, 37, Boundary::Outflow).unwrap();
        let c = 0.123_456_789_012_345_67;
        let s = project_initial_data(|_| c, |_| 0.0, &g).unwrap();
        assert!(s.u.iter().all(|&x| x == c));
        assert!(s.v.iter().all(|&x| x == 0.0));
        assert_eq!((s.time, s.step_index), (0.0, 0));
    }

    #[test]
    fn sine_matches_exact_antiderivative() {
        let g = Grid1D::new(0.0, 1.0, 64, Boundary::Periodic).unwrap();
        let s = project_initial_data(|x| libm::sin(2.0 * PI * x), |_| 0.0, &g).unwrap();
        let dx = g.dx();
        for j in 0..64 {
            let (a, b) = (g.interface(j), g.interface(j + 1));
            let exact = (libm::cos(2.0 * PI * a) - libm::cos(2.0 * PI * b)) / (2.0 * PI * dx);
            assert!(
                (s.u[j] - exact).abs() < 1e-6,
                "cell {j}: {} vs {exact}",
                s.u[j]
            );
        }
    }

    #[test]
    fn quintic_polynomials_are_integrated_exactly() {
        let g = Grid1D::new(0.0, 2.0, 5, Boundary::Outflow).unwrap();
        let f = |x: f64| x.powi(5) - 3.0 * x * x + 1.0;
        let antiderivative = |x: f64| x.powi(6) / 6.0 - x.powi(3) + x;
        let s = project_initial_data(f, |_| 0.0, &g).unwrap();
        for j in 0..5 {
            let exact =
                (antiderivative(g.interface(j + 1)) - antiderivative(g.interface(j))) / g.dx();
            assert!((s.u[j] - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_data_is_rejected() {
        let g = Grid1D::new(-1.0, 1.0, 4, Boundary::Outflow).unwrap();
        let err = project_initial_data(|x| 1.0 / (x - g.center(2)), |_| 0.0, &g).unwrap_err();
        assert!(matches!(err, Error::InputFunction { cell: 2, .. }));
    }
}
