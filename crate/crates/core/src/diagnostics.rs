//! Norms, total variation, deviation from equilibrium, inter-resolution
//! error estimates, convergence-order fits and trend-to-equilibrium series.
//!
//! Every reduction sums left to right so repeated runs agree bit for bit.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::{Boundary, CellField, StatePair};
use crate::model::RelaxationModel;
use crate::models::broadwell::BroadwellFluidState;

/// Discrete `L^p` norm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::L1, Norm::L2, Norm::Linf];

    pub fn label(self) -> &'static str {
        match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        }
    }
}

fn norm_of(values: impl Iterator<Item = f64>, p: Norm, dx: f64) -> f64 {
    match p {
        Norm::L1 => values.fold(0.0, |acc, x| acc + libm::fabs(x)) * dx,
        Norm::L2 => libm::sqrt(values.fold(0.0, |acc, x| acc + x * x) * dx),
        Norm::Linf => values.fold(0.0, |acc: f64, x| acc.max(libm::fabs(x))),
    }
}

/// `Σ|u_j|Δx`, `(Σu_j²Δx)^½` or `max|u_j|`.
pub fn discrete_norm(field: &[f64], p: Norm, dx: f64) -> f64 {
    norm_of(field.iter().copied(), p, dx)
}

/// Norm of `a - b` without allocating.
pub fn distance(a: &[f64], b: &[f64], p: Norm, dx: f64) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    norm_of(a.iter().zip(b).map(|(x, y)| x - y), p, dx)
}

/// `Σ|u_{j+1} - u_j|`; the wrap-around pair counts only on periodic grids.
pub fn total_variation(field: &[f64], boundary: Boundary) -> f64 {
    let interior = field
        .windows(2)
        .fold(0.0, |acc, w| acc + libm::fabs(w[1] - w[0]));
    match (boundary, field) {
        (Boundary::Periodic, [first, .., last]) => interior + libm::fabs(first - last),
        _ => interior,
    }
}

/// `‖v - A(u)‖₁`.
pub fn deviation_l1<M: RelaxationModel + ?Sized>(state: &StatePair, model: &M) -> f64 {
    norm_of(
        state
            .u
            .iter()
            .zip(state.v.iter())
            .map(|(&u, &v)| v - model.equilibrium(u)),
        Norm::L1,
        state.grid.dx(),
    )
}

/// Averages adjacent pairs of a fine field onto the grid with half the cells.
pub fn restrict(fine: &[f64]) -> Result<CellField> {
    if !fine.len().is_multiple_of(2) || fine.is_empty() {
        return Err(Error::IncompatibleResolutions {
            fine: fine.len(),
            coarse: fine.len() / 2,
        });
    }
    Ok(fine
        .chunks_exact(2)
        .map(|c| 0.5 * (c[0] + c[1]))
        .collect::<Vec<_>>()
        .into())
}

/// `‖R(fine) - coarse‖_p` on the coarse grid, where `R` averages cell pairs.
pub fn error_between_resolutions(
    fine: &[f64],
    coarse: &[f64],
    p: Norm,
    coarse_dx: f64,
) -> Result<f64> {
    if fine.len() != 2 * coarse.len() || coarse.is_empty() {
        return Err(Error::IncompatibleResolutions {
            fine: fine.len(),
            coarse: coarse.len(),
        });
    }
    let restricted = fine.chunks_exact(2).map(|c| 0.5 * (c[0] + c[1]));
    Ok(norm_of(
        restricted.zip(coarse).map(|(f, c)| f - c),
        p,
        coarse_dx,
    ))
}

/// Least-squares slope of `log E` against `log h`.
///
/// Needs at least three points with strictly decreasing `h`. Returns
/// `f64::INFINITY` when any error is exactly zero, which flags a degenerate
/// study that should be left out of order tables.
pub fn fit_convergence_order(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(
            "order fit needs at least three points",
        ));
    }
    if points.windows(2).any(|w| !(w[1].0 < w[0].0)) || points.iter().any(|p| !(p.0 > 0.0)) {
        return Err(Error::InvalidArgument(
            "mesh sizes must be positive and strictly decreasing",
        ));
    }
    if points.iter().any(|p| !(p.1 >= 0.0) || !p.1.is_finite()) {
        return Err(Error::InvalidArgument(
            "errors must be finite and non-negative",
        ));
    }
    if points.iter().any(|p| p.1 == 0.0) {
        return Ok(f64::INFINITY);
    }
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), &(h, e)| {
        (sx + libm::log(h), sy + libm::log(e))
    });
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(h, e)| {
        let dx = libm::log(h) - mx;
        (sxy + dx * (libm::log(e) - my), sxx + dx * dx)
    });
    Ok(sxy / sxx)
}

/// One mesh of a refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub n_cells: usize,
    pub dx: f64,
    pub dt: f64,
}

/// Error estimate between one mesh and the next coarser one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelError {
    /// The finer of the two meshes.
    pub fine: Resolution,
    /// `E_p` for `L¹`, `L²`, `L∞`, summed over all solution components.
    pub errors: [f64; 3],
}

impl LevelError {
    pub fn error(&self, p: Norm) -> f64 {
        self.errors[p as usize]
    }
}

/// Refinement study: successive-mesh error estimates and fitted orders.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub epsilon: f64,
    pub resolutions: Vec<Resolution>,
    pub levels: Vec<LevelError>,
    /// Fitted order for `L¹`, `L²`, `L∞`; `NaN` when fewer than three levels exist.
    pub fitted_order: [f64; 3],
}

impl ConvergenceReport {
    /// Builds the report from final-time solutions on meshes that double in
    /// cell count. `solutions[i]` holds every component (e.g. `[u, v]`) on
    /// mesh `i`; `E_p` at level `i` is `Σ_c ‖R(c_i) - c_{i-1}‖_p`.
    pub fn from_solutions(
        epsilon: f64,
        resolutions: Vec<Resolution>,
        solutions: &[Vec<CellField>],
    ) -> Result<Self> {
        if resolutions.len() != solutions.len() {
            return Err(Error::InvalidArgument("one solution set per resolution"));
        }
        if resolutions
            .windows(2)
            .any(|w| w[1].n_cells != 2 * w[0].n_cells)
        {
            return Err(Error::InvalidArgument(
                "resolutions must double in cell count",
            ));
        }
        let mut levels = Vec::with_capacity(resolutions.len().saturating_sub(1));
        for i in 1..resolutions.len() {
            let (fine, coarse) = (&solutions[i], &solutions[i - 1]);
            if fine.len() != coarse.len() {
                return Err(Error::InvalidArgument(
                    "component count differs between meshes",
                ));
            }
            let mut errors = [0.0; 3];
            for (slot, p) in errors.iter_mut().zip(Norm::ALL) {
                for (f, c) in fine.iter().zip(coarse) {
                    *slot += error_between_resolutions(f, c, p, resolutions[i - 1].dx)?;
                }
            }
            levels.push(LevelError {
                fine: resolutions[i],
                errors,
            });
        }
        let mut fitted_order = [f64::NAN; 3];
        if levels.len() >= 3 {
            for (slot, p) in fitted_order.iter_mut().zip(Norm::ALL) {
                let points: Vec<(f64, f64)> =
                    levels.iter().map(|l| (l.fine.dx, l.error(p))).collect();
                *slot = fit_convergence_order(&points)?;
            }
        }
        Ok(Self {
            epsilon,
            resolutions,
            levels,
            fitted_order,
        })
    }

    pub fn order(&self, p: Norm) -> f64 {
        self.fitted_order[p as usize]
    }
}

/// `S_ρ(t) = ‖ρ(t) - ρ_g‖₁` and `S_m(t) = ‖m(t) - m_g‖₁` over time.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrendSeries {
    pub times: Vec<f64>,
    pub s_rho: Vec<f64>,
    pub s_m: Vec<f64>,
}

impl TrendSeries {
    pub fn record(&mut self, time: f64, rho: &[f64], m: &[f64], dx: f64, rho_g: f64, m_g: f64) {
        self.times.push(time);
        self.s_rho
            .push(norm_of(rho.iter().map(|r| r - rho_g), Norm::L1, dx));
        self.s_m
            .push(norm_of(m.iter().map(|x| x - m_g), Norm::L1, dx));
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Distances of each snapshot to the global equilibrium `(ρ_g, m_g)`.
pub fn equilibrium_trend(states: &[BroadwellFluidState], rho_g: f64, m_g: f64) -> TrendSeries {
    let mut series = TrendSeries::default();
    for s in states {
        series.record(s.time, &s.rho, &s.m, s.grid.dx(), rho_g, m_g);
    }
    series
}

/// Half-life of an oscillating, decaying series.
///
/// The local maxima of the series trace its envelope; a least-squares fit of
/// `log(peak)` against time gives the decay rate `k` and the half-life
/// `ln 2 / k`. Returns `f64::INFINITY` when the envelope does not decay and
/// `NaN` when fewer than two peaks exist.
pub fn decay_half_life(times: &[f64], series: &[f64]) -> f64 {
    let peaks = envelope_peaks(times, series);
    if peaks.len() < 2 {
        return f64::NAN;
    }
    let n = peaks.len() as f64;
    let (st, sl) = peaks
        .iter()
        .fold((0.0, 0.0), |(a, b), &(t, s)| (a + t, b + libm::log(s)));
    let (mt, ml) = (st / n, sl / n);
    let (stl, stt) = peaks.iter().fold((0.0, 0.0), |(a, b), &(t, s)| {
        let dt = t - mt;
        (a + dt * (libm::log(s) - ml), b + dt * dt)
    });
    let rate = -stl / stt;
    if rate > 0.0 {
        core::f64::consts::LN_2 / rate
    } else {
        f64::INFINITY
    }
}

/// Local maxima `(t, s)` of a sampled series, including a maximum at the
/// first sample. Non-positive values are skipped.
pub fn envelope_peaks(times: &[f64], series: &[f64]) -> Vec<(f64, f64)> {
    let n = series.len().min(times.len());
    let mut peaks = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || series[i] > series[i - 1];
        let right_ok = i + 1 < n && series[i] >= series[i + 1];
        if left_ok && right_ok && series[i] > 0.0 {
            peaks.push((times[i], series[i]));
        }
    }
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::models::semilinear_model;
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    #[test]
    fn norms_of_simple_fields() {
        let zero = [0.0; 8];
        for p in Norm::ALL {
            assert_eq!(discrete_norm(&zero, p, 0.1), 0.0);
        }
        let ones = [1.0; 16];
        for p in Norm::ALL {
            assert!((discrete_norm(&ones, p, 1.0 / 16.0) - 1.0).abs() < 1e-15);
        }
        let mut spike = [0.0; 10];
        spike[3] = 2.0;
        assert!((discrete_norm(&spike, Norm::L1, 0.1) - 0.2).abs() < 1e-15);
        assert_eq!(discrete_norm(&spike, Norm::Linf, 0.1), 2.0);
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(total_variation(&[3.0; 5], Boundary::Periodic), 0.0);
        assert_eq!(total_variation(&[0.0, 1.0, 0.0], Boundary::Outflow), 2.0);
        assert_eq!(total_variation(&[0.0, 1.0, 2.0], Boundary::Periodic), 4.0);
        for n in [4usize, 17, 256] {
            let ramp: Vec<f64> = (0..n).map(|j| j as f64 / (n - 1) as f64).collect();
            assert!((total_variation(&ramp, Boundary::Outflow) - 1.0).abs() < 1e-12);
            assert!((total_variation(&ramp, Boundary::Reflecting) - 1.0).abs() < 1e-12);
        }
        assert_eq!(total_variation(&[], Boundary::Periodic), 0.0);
    }

    #[test]
    fn deviation_examples() {
        let model = semilinear_model(|u| u * u, |u| 2.0 * u);
        let g = Grid1D::new(0.0, 1.0, 10, Boundary::Periodic).unwrap();
        let u = CellField::from_fn(10, |j| j as f64 * 0.1);
        let v = CellField::from_fn(10, |j| (j as f64 * 0.1) * (j as f64 * 0.1));
        let s = StatePair::new(g, u, v).unwrap();
        assert_eq!(deviation_l1(&s, &model), 0.0);
        let s = StatePair::new(g, CellField::zeros(10), CellField::constant(10, 1.0)).unwrap();
        assert!((deviation_l1(&s, &model) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn restriction_examples() {
        let coarse = [0.0, 1.0];
        assert_eq!(
            error_between_resolutions(&[0.0, 0.0, 1.0, 1.0], &coarse, Norm::L1, 0.5).unwrap(),
            0.0
        );
        let e = error_between_resolutions(&[0.0, 0.5, 0.5, 1.0], &coarse, Norm::L1, 0.5).unwrap();
        assert!((e - 0.5 * 0.5).abs() < 1e-15);
        let fine: Vec<f64> = coarse.iter().flat_map(|&c| [c, c]).collect();
        for p in Norm::ALL {
            assert_eq!(
                error_between_resolutions(&fine, &coarse, p, 0.5).unwrap(),
                0.0
            );
        }
        assert!(matches!(
            error_between_resolutions(&[0.0; 5], &coarse, Norm::L1, 0.5),
            Err(Error::IncompatibleResolutions { .. })
        ));
        assert!(restrict(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn order_fit_on_power_laws() {
        let pts: Vec<(f64, f64)> = (0..5)
            .map(|k| {
                let h = 0.1 / (1 << k) as f64;
                (h, 3.0 * h)
            })
            .collect();
        assert!((fit_convergence_order(&pts).unwrap() - 1.0).abs() < 1e-12);
        let pts: Vec<(f64, f64)> = pts.iter().map(|&(h, _)| (h, 0.7 * libm::sqrt(h))).collect();
        assert!((fit_convergence_order(&pts).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn order_fit_rejects_bad_input() {
        assert!(fit_convergence_order(&[(0.1, 1.0), (0.05, 0.5)]).is_err());
        assert!(fit_convergence_order(&[(0.1, 1.0), (0.2, 0.5), (0.05, 0.1)]).is_err());
        assert_eq!(
            fit_convergence_order(&[(0.1, 1.0), (0.05, 0.0), (0.025, 0.1)]).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn convergence_report_on_synthetic_fields() {
        // Component on mesh n is a constant 1/n: restricted fine minus coarse = -1/(2n).
        let meshes = [8usize, 16, 32, 64];
        let resolutions: Vec<Resolution> = meshes
            .iter()
            .map(|&n| Resolution {
                n_cells: n,
                dx: 1.0 / n as f64,
                dt: 0.5 / n as f64,
            })
            .collect();
        let solutions: Vec<Vec<CellField>> = meshes
            .iter()
            .map(|&n| vec![CellField::constant(n, 1.0 / n as f64)])
            .collect();
        let r = ConvergenceReport::from_solutions(0.1, resolutions, &solutions).unwrap();
        assert_eq!(r.levels.len(), 3);
        assert!((r.levels[0].error(Norm::L1) - 1.0 / 16.0).abs() < 1e-15);
        for p in Norm::ALL {
            assert!((r.order(p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trend_of_equilibrium_and_sine() {
        let g = Grid1D::new(-1.0, 1.0, 400, Boundary::Periodic).unwrap();
        let flat = BroadwellFluidState::uniform(g, 1.0, 0.0, 0.5);
        let t = equilibrium_trend(&[flat.clone(), flat], 1.0, 0.0);
        assert_eq!(t.s_rho, vec![0.0, 0.0]);
        assert_eq!(t.s_m, vec![0.0, 0.0]);

        let rho = CellField::from_fn(400, |j| 1.0 + 0.2 * libm::sin(PI * g.center(j)));
        let mut s = BroadwellFluidState::uniform(g, 1.0, 0.0, 0.5);
        s.rho = rho;
        let t = equilibrium_trend(&[s], 1.0, 0.0);
        assert!((t.s_rho[0] - 0.8 / PI).abs() < 1e-4);
    }

    #[test]
    fn half_life_of_damped_oscillation() {
        let rate = 0.3;
        let times: Vec<f64> = (0..4000).map(|k| k as f64 * 0.005).collect();
        let series: Vec<f64> = times
            .iter()
            .map(|&t| libm::exp(-rate * t) * libm::fabs(libm::cos(2.2 * t)))
            .collect();
        let hl = decay_half_life(&times, &series);
        assert!((hl - core::f64::consts::LN_2 / rate).abs() < 0.05, "{hl}");
        let flat: Vec<f64> = times
            .iter()
            .map(|&t| libm::fabs(libm::cos(2.2 * t)))
            .collect();
        assert!(decay_half_life(&times, &flat) > 1e6);
    }

    proptest! {
        #[test]
        fn norms_are_homogeneous_and_subadditive(
            a in prop::collection::vec(-10.0f64..10.0, 32),
            b in prop::collection::vec(-10.0f64..10.0, 32),
            c in -5.0f64..5.0,
        ) {
            let dx = 1.0 / 32.0;
            let scaled: Vec<f64> = a.iter().map(|x| c * x).collect();
            let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            for p in Norm::ALL {
                let na = discrete_norm(&a, p, dx);
                prop_assert!((discrete_norm(&scaled, p, dx) - c.abs() * na).abs() <= 1e-12 * (1.0 + na));
                prop_assert!(discrete_norm(&sum, p, dx) <= na + discrete_norm(&b, p, dx) + 1e-12);
            }
        }

        #[test]
        fn total_variation_shift_and_scale(
            a in prop::collection::vec(-10.0f64..10.0, 2..40),
            shift in -100.0f64..100.0,
            c in -5.0f64..5.0,
        ) {
            for bc in [Boundary::Periodic, Boundary::Outflow] {
                let tv = total_variation(&a, bc);
                let shifted: Vec<f64> = a.iter().map(|x| x + shift).collect();
                let scaled: Vec<f64> = a.iter().map(|x| c * x).collect();
                prop_assert!((total_variation(&shifted, bc) - tv).abs() <= 1e-10 * (1.0 + tv));
                prop_assert!((total_variation(&scaled, bc) - c.abs() * tv).abs() <= 1e-12 * (1.0 + tv));
            }
        }

        #[test]
        fn restriction_is_consistent(fine in prop::collection::vec(-10.0f64..10.0, 1..32)) {
            let mut fine = fine;
            if fine.len() % 2 == 1 { fine.pop(); }
            prop_assume!(!fine.is_empty());
            let coarse = restrict(&fine).unwrap();
            for p in Norm::ALL {
                prop_assert_eq!(error_between_resolutions(&fine, &coarse, p, 0.1).unwrap(), 0.0);
            }
        }
    }
}
