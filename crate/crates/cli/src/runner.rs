//! Executes a configured sweep and writes its artifacts.

use std::path::PathBuf;

use rayon::prelude::*;
use relaxkit_core::diagnostics::{
    decay_half_life, total_variation, ConvergenceReport, Resolution, TrendSeries,
};
use relaxkit_core::models::broadwell::{
    broadwell_equilibrium, broadwell_explicit_parameters, broadwell_parameters, broadwell_solve,
    broadwell_solve_explicit, broadwell_solve_limit, fluid_to_kinetic, BroadwellFluidState,
};
use relaxkit_core::schemes::{
    explicit_time_step, solve_explicit, solve_limit, StrictAudit, EXPLICIT_MAX_CFL,
};
use relaxkit_core::{
    balanced_a0, compute_stability_bounds, select_parameters, solve, Boundary, CellField, Error,
    Grid1D, RelaxationModel, SchemeParameters, StabilityBounds, StatePair,
};

use crate::config::{ExperimentConfig, Preset, A0};
use crate::error::CliError;
use crate::presets;
use crate::table::{emit_csv, Cell, Table};

/// Relative slack of the runtime total-variation check.
pub const TV_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Worker threads for independent `(ε, n)` runs; 1 runs serially.
    pub threads: usize,
    pub write_files: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            write_files: true,
        }
    }
}

/// Outcome of one `(ε, n_cells)` run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub label: String,
    pub epsilon: f64,
    pub n_cells: usize,
    pub params: SchemeParameters,
    /// Present for 2×2 runs.
    pub bounds: Option<StabilityBounds>,
    pub steps: u64,
    /// `max (TV_after - TV_before) / (1 + TV_before)` over all steps, in the
    /// diagonal (or kinetic) variables; `-inf` when no step was taken.
    pub tv_growth: f64,
    /// `max(‖u‖∞ - V, ‖v‖∞ - √a V)` over all steps (2×2 splitting runs only).
    pub linf_excess: Option<f64>,
    /// Largest relative change of each conserved total against `t = 0`.
    pub mass_drift: f64,
    /// `[u, v]` or `[ρ, m, z]` at `t_final`.
    pub final_fields: Vec<CellField>,
    pub trend: Option<TrendSeries>,
    /// `‖AP - explicit‖₁ / ‖explicit‖₁` at `t_final`, when requested.
    pub explicit_distance: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct TrendRecord {
    pub epsilon: f64,
    pub n_cells: usize,
    pub series: TrendSeries,
    pub half_life: f64,
}

#[derive(Debug, Clone, Default)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub runs: Vec<RunRecord>,
    pub convergence: Vec<ConvergenceReport>,
    pub trends: Vec<TrendRecord>,
}

/// Decimal rendering used in file names: `0.5`, `0.000001`, `20`.
pub fn label_number(x: f64) -> String {
    format!("{x}")
}

fn run_label(preset: Preset, epsilon: f64, n_cells: usize) -> String {
    format!("{preset}_eps{}_n{n_cells}", label_number(epsilon))
}

/// Collects the tables one run produces before they are written.
struct Output<'a> {
    cfg: &'a ExperimentConfig,
    label: String,
    files: Vec<(PathBuf, Table)>,
}

impl Output<'_> {
    fn solution(&mut self, epsilon: f64, n: usize, t: f64, table: Table) {
        let name = format!(
            "solution_{}_eps{}_n{n}_t{}.csv",
            self.cfg.preset,
            label_number(epsilon),
            label_number(t)
        );
        self.files.push((self.cfg.output_dir.join(name), table));
    }

    fn reference(&mut self, epsilon: f64, n: usize, t: f64, table: Table) {
        let name = format!(
            "reference_{}_eps{}_n{n}_t{}.csv",
            self.cfg.preset,
            label_number(epsilon),
            label_number(t)
        );
        self.files.push((self.cfg.output_dir.join(name), table));
    }

    fn audit(&mut self, table: Table) {
        let name = format!("audit_{}.csv", self.label);
        self.files.push((self.cfg.output_dir.join(name), table));
    }
}

fn pair_table(grid: &Grid1D, u: &[f64], v: &[f64]) -> Table {
    let mut t = Table::new(&["x", "u", "v"]);
    for j in 0..grid.n_cells() {
        t.push(vec![grid.center(j).into(), u[j].into(), v[j].into()]);
    }
    t
}

fn broadwell_table(state: &BroadwellFluidState) -> Result<Table, Error> {
    let dev = state.deviation()?;
    let mut t = Table::new(&["x", "rho", "m", "z", "dev"]);
    for j in 0..state.grid.n_cells() {
        t.push(vec![
            state.grid.center(j).into(),
            state.rho[j].into(),
            state.m[j].into(),
            state.z[j].into(),
            dev[j].into(),
        ]);
    }
    Ok(t)
}

fn relative_change(value: f64, reference: f64, scale: f64) -> f64 {
    (value - reference).abs() / scale.max(f64::MIN_POSITIVE)
}

fn resolve_a0(cfg: &ExperimentConfig, model: &dyn RelaxationModel, n0: f64) -> Result<f64, Error> {
    match cfg.a0 {
        A0::Value(a) => Ok(a),
        A0::Auto if cfg.preset.is_broadwell() => Ok(1.0),
        A0::Auto => balanced_a0(model, n0),
    }
}

/// Parameters of a 2×2 run; `ε = 0` gets placeholder relaxation data.
fn pair_parameters(
    cfg: &ExperimentConfig,
    model: &dyn RelaxationModel,
    initial: &StatePair,
    epsilon: f64,
) -> Result<(StabilityBounds, SchemeParameters), Error> {
    let n0 = initial.sup_norm();
    let bounds = compute_stability_bounds(model, n0, resolve_a0(cfg, model, n0)?)?;
    let eps = if epsilon > 0.0 { epsilon } else { 1.0 };
    let params = select_parameters(model, &bounds, eps, initial.grid.dx(), cfg.lambda)?;
    Ok((bounds, params))
}

fn run_pair(
    cfg: &ExperimentConfig,
    epsilon: f64,
    n: usize,
    out: &mut Output,
) -> Result<RunRecord, Error> {
    let model = presets::model(cfg);
    let model = model.as_ref();
    let grid = presets::grid(cfg, n)?;
    let initial = presets::initial_pair(cfg, &grid)?;
    let (bounds, params) = pair_parameters(cfg, model, &initial, epsilon)?;
    let dx = grid.dx();
    let mass0 = initial.u.sum() * dx;
    let mass_scale = initial.u.iter().map(|x| x.abs()).sum::<f64>() * dx;
    let mut record = RunRecord {
        label: out.label.clone(),
        epsilon,
        n_cells: n,
        params,
        bounds: Some(bounds),
        steps: 0,
        tv_growth: f64::NEG_INFINITY,
        linf_excess: None,
        mass_drift: 0.0,
        final_fields: Vec::new(),
        trend: None,
        explicit_distance: None,
    };

    if epsilon == 0.0 {
        let mut audit = Table::new(&["step", "time", "tv_u", "linf_u", "mass_u"]);
        let mut u = initial.u.clone();
        let mut t0 = 0.0;
        let mut tv_prev = total_variation(&u, grid.boundary());
        for &t in &cfg.snapshot_times {
            u = solve_limit(&u, &grid, model, &params, t0, t, &mut |time, next| {
                record.steps += 1;
                let tv = total_variation(next, grid.boundary());
                record.tv_growth = record.tv_growth.max((tv - tv_prev) / (1.0 + tv_prev));
                tv_prev = tv;
                let mass = next.sum() * dx;
                record.mass_drift = record
                    .mass_drift
                    .max(relative_change(mass, mass0, mass_scale));
                audit.push(vec![
                    record.steps.into(),
                    time.into(),
                    tv.into(),
                    next.sup_norm().into(),
                    mass.into(),
                ]);
            })?;
            let v: Vec<f64> = u.iter().map(|&x| model.equilibrium(x)).collect();
            out.solution(epsilon, n, t, pair_table(&grid, &u, &v));
            t0 = t;
        }
        out.audit(audit);
        let v = CellField::from_fn(n, |j| model.equilibrium(u[j]));
        record.final_fields = vec![u, v];
        return Ok(record);
    }

    let strict = StrictAudit::new(bounds, &params);
    let mut audit = Table::new(&[
        "step",
        "time",
        "tv_before",
        "tv_after",
        "linf_u",
        "linf_v",
        "deviation_l1",
        "mass_u",
    ]);
    let mut linf_excess = f64::NEG_INFINITY;
    let mut state = initial.clone();
    for &t in &cfg.snapshot_times {
        let (next, _) = solve(&state, model, &params, t, &mut |_, r| {
            record.steps += 1;
            record.tv_growth = record
                .tv_growth
                .max((r.tv_after - r.tv_before) / (1.0 + r.tv_before));
            linf_excess = linf_excess
                .max(r.linf_u - bounds.v)
                .max(r.linf_v - params.sqrt_a() * bounds.v);
            record.mass_drift = record
                .mass_drift
                .max(relative_change(r.mass_u, mass0, mass_scale));
            audit.push(vec![
                r.step_index.into(),
                r.time.into(),
                r.tv_before.into(),
                r.tv_after.into(),
                r.linf_u.into(),
                r.linf_v.into(),
                r.deviation_l1.into(),
                r.mass_u.into(),
            ]);
            if cfg.strict_invariants {
                strict.check(r)?;
            }
            Ok(())
        })?;
        state = next;
        out.solution(epsilon, n, t, pair_table(&grid, &state.u, &state.v));
    }
    out.audit(audit);
    record.linf_excess = Some(linf_excess);

    if cfg.explicit_reference {
        let dt = explicit_time_step(
            params.sqrt_a(),
            dx,
            epsilon,
            params.beta(),
            EXPLICIT_MAX_CFL,
        );
        let pe = SchemeParameters::new(params.a(), params.beta(), epsilon, dt, dx)?;
        let mut reference = initial.clone();
        for &t in &cfg.snapshot_times {
            reference = solve_explicit(&reference, model, &pe, t)?;
            out.reference(epsilon, n, t, pair_table(&grid, &reference.u, &reference.v));
        }
        record.explicit_distance = Some(relative_distance(
            &[&state.u, &state.v],
            &[&reference.u, &reference.v],
        ));
    }
    record.final_fields = vec![state.u, state.v];
    Ok(record)
}

fn relative_distance(a: &[&CellField], b: &[&CellField]) -> f64 {
    let (mut dist, mut norm) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        dist += x
            .iter()
            .zip(y.iter())
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>();
        norm += y.iter().map(|q| q.abs()).sum::<f64>();
    }
    dist / norm
}

/// `TV(f₊) + TV(f₀) + TV(f₋)`. At reflecting walls `f₊` and `f₋` swap, so the
/// jumps `|f₊ - f₋|` in the boundary cells count as well.
fn kinetic_total_variation(state: &BroadwellFluidState) -> Result<f64, Error> {
    let k = fluid_to_kinetic(state)?;
    let bc = state.grid.boundary();
    let mut tv = total_variation(&k.f_plus, bc)
        + total_variation(&k.f_zero, bc)
        + total_variation(&k.f_minus, bc);
    if bc == Boundary::Reflecting {
        let last = k.f_plus.len() - 1;
        tv += (k.f_plus[0] - k.f_minus[0]).abs() + (k.f_plus[last] - k.f_minus[last]).abs();
    }
    Ok(tv)
}

fn run_broadwell(
    cfg: &ExperimentConfig,
    epsilon: f64,
    n: usize,
    out: &mut Output,
) -> Result<RunRecord, Error> {
    let grid = presets::grid(cfg, n)?;
    let initial = presets::initial_broadwell(cfg, &grid)?;
    let a0 = match cfg.a0 {
        A0::Value(a) => a,
        A0::Auto => 1.0,
    };
    let params = broadwell_parameters(
        &initial,
        a0,
        if epsilon > 0.0 { epsilon } else { 1.0 },
        cfg.lambda,
    )?;
    let dx = grid.dx();
    let (rho0, m0) = (initial.rho.sum() * dx, initial.m.sum() * dx);
    let mass_scale = initial.rho.iter().map(|x| x.abs()).sum::<f64>() * dx;
    let track_trend = cfg.preset == Preset::BroadwellLongtime;
    let mut trend = TrendSeries::default();
    if track_trend {
        trend.record(0.0, &initial.rho, &initial.m, dx, 1.0, 0.0);
    }
    let mut record = RunRecord {
        label: out.label.clone(),
        epsilon,
        n_cells: n,
        params,
        bounds: None,
        steps: 0,
        tv_growth: f64::NEG_INFINITY,
        linf_excess: None,
        mass_drift: 0.0,
        final_fields: Vec::new(),
        trend: None,
        explicit_distance: None,
    };

    if epsilon == 0.0 {
        let mut audit = Table::new(&[
            "step", "time", "tv_rho", "tv_m", "linf_rho", "linf_m", "min_rho", "mass_rho", "mass_m",
        ]);
        let (mut rho, mut m) = (initial.rho.clone(), initial.m.clone());
        let mut t0 = 0.0;
        let bc = grid.boundary();
        let mut tv_prev = total_variation(&rho, bc) + total_variation(&m, bc);
        for &t in &cfg.snapshot_times {
            (rho, m) =
                broadwell_solve_limit(&rho, &m, &grid, &params, t0, t, &mut |time, r, q| {
                    record.steps += 1;
                    let tv = total_variation(r, bc) + total_variation(q, bc);
                    record.tv_growth = record.tv_growth.max((tv - tv_prev) / (1.0 + tv_prev));
                    tv_prev = tv;
                    let (mr, mm) = (r.sum() * dx, q.sum() * dx);
                    record.mass_drift = record
                        .mass_drift
                        .max(relative_change(mr, rho0, mass_scale))
                        .max(relative_change(mm, m0, mass_scale));
                    if track_trend {
                        trend.record(time, r, q, dx, 1.0, 0.0);
                    }
                    audit.push(vec![
                        record.steps.into(),
                        time.into(),
                        total_variation(r, bc).into(),
                        total_variation(q, bc).into(),
                        r.sup_norm().into(),
                        q.sup_norm().into(),
                        r.iter().copied().fold(f64::INFINITY, f64::min).into(),
                        mr.into(),
                        mm.into(),
                    ]);
                })?;
            let z = (0..n)
                .map(|j| broadwell_equilibrium(rho[j], m[j]))
                .collect::<Result<Vec<f64>, _>>()?;
            let snapshot = BroadwellFluidState::new(grid, rho.clone(), m.clone(), z.into())?;
            out.solution(epsilon, n, t, broadwell_table(&snapshot)?);
            t0 = t;
        }
        out.audit(audit);
        let z = CellField::from_fn(n, |j| {
            broadwell_equilibrium(rho[j], m[j]).unwrap_or(f64::NAN)
        });
        record.final_fields = vec![rho, m, z];
        record.trend = track_trend.then_some(trend);
        return Ok(record);
    }

    let mut audit = Table::new(&[
        "step",
        "time",
        "tv_kinetic",
        "linf_rho",
        "linf_m",
        "linf_z",
        "min_rho",
        "mass_rho",
        "mass_m",
        "deviation_l1",
    ]);
    let mut tv_prev = kinetic_total_variation(&initial)?;
    let mut state = initial.clone();
    for &t in &cfg.snapshot_times {
        let (next, _) = broadwell_solve(&state, &params, t, &mut |s, r| {
            record.steps += 1;
            let tv = kinetic_total_variation(s)?;
            let limit = tv_prev + TV_TOLERANCE * (1.0 + tv_prev);
            record.tv_growth = record.tv_growth.max((tv - tv_prev) / (1.0 + tv_prev));
            if cfg.strict_invariants && tv > limit {
                return Err(Error::Invariant {
                    step: r.step_index,
                    what: "kinetic total variation is non-increasing",
                    value: tv,
                    limit,
                });
            }
            tv_prev = tv;
            record.mass_drift = record
                .mass_drift
                .max(relative_change(r.mass_rho, rho0, mass_scale))
                .max(relative_change(r.mass_m, m0, mass_scale));
            if track_trend {
                trend.record(s.time, &s.rho, &s.m, dx, 1.0, 0.0);
            }
            audit.push(vec![
                r.step_index.into(),
                r.time.into(),
                tv.into(),
                s.rho.sup_norm().into(),
                s.m.sup_norm().into(),
                s.z.sup_norm().into(),
                r.min_rho.into(),
                r.mass_rho.into(),
                r.mass_m.into(),
                r.deviation_l1.into(),
            ]);
            Ok(())
        })?;
        state = next;
        out.solution(epsilon, n, t, broadwell_table(&state)?);
    }
    out.audit(audit);

    if cfg.explicit_reference {
        let pe = broadwell_explicit_parameters(&initial, a0, epsilon, EXPLICIT_MAX_CFL)?;
        let mut reference = initial.clone();
        for &t in &cfg.snapshot_times {
            reference = broadwell_solve_explicit(&reference, &pe, t)?;
            out.reference(epsilon, n, t, broadwell_table(&reference)?);
        }
        record.explicit_distance = Some(relative_distance(
            &[&state.rho, &state.m, &state.z],
            &[&reference.rho, &reference.m, &reference.z],
        ));
    }
    record.final_fields = vec![state.rho, state.m, state.z];
    record.trend = track_trend.then_some(trend);
    Ok(record)
}

/// The `(ε, n)` pairs a configuration expands to, in output order.
pub fn jobs(cfg: &ExperimentConfig) -> Vec<(f64, usize)> {
    let mut eps = cfg.epsilon_list.clone();
    if cfg.preset == Preset::BroadwellLongtime && !eps.contains(&0.0) {
        eps.push(0.0);
    }
    eps.iter()
        .flat_map(|&e| cfg.n_cells_list.iter().map(move |&n| (e, n)))
        .collect()
}

fn run_job(
    cfg: &ExperimentConfig,
    epsilon: f64,
    n: usize,
    write: bool,
) -> Result<(RunRecord, Vec<PathBuf>), CliError> {
    let label = run_label(cfg.preset, epsilon, n);
    let mut out = Output {
        cfg,
        label: label.clone(),
        files: Vec::new(),
    };
    let record = if cfg.preset.is_broadwell() {
        run_broadwell(cfg, epsilon, n, &mut out)
    } else {
        run_pair(cfg, epsilon, n, &mut out)
    }
    .map_err(|e| CliError::from_run(&label, e))?;
    let mut written = Vec::new();
    if write {
        for (path, table) in &out.files {
            emit_csv(table, path)?;
            written.push(path.clone());
        }
    }
    Ok((record, written))
}

fn convergence_table(report: &ConvergenceReport) -> Table {
    let mut t = Table::new(&[
        "n_cells",
        "dx",
        "dt",
        "e_l1",
        "e_l2",
        "e_linf",
        "order_l1",
        "order_l2",
        "order_linf",
    ]);
    for level in &report.levels {
        let mut row: Vec<Cell> = vec![
            level.fine.n_cells.into(),
            level.fine.dx.into(),
            level.fine.dt.into(),
        ];
        row.extend(level.errors.iter().map(|&e| Cell::from(e)));
        row.extend(report.fitted_order.iter().map(|&o| Cell::from(o)));
        t.push(row);
    }
    t
}

fn trend_table(series: &TrendSeries) -> Table {
    let mut t = Table::new(&["time", "s_rho", "s_m"]);
    for i in 0..series.len() {
        t.push(vec![
            series.times[i].into(),
            series.s_rho[i].into(),
            series.s_m[i].into(),
        ]);
    }
    t
}

/// Runs every `(ε, n)` pair of `cfg`, then assembles refinement studies and
/// trend series. Output does not depend on `threads`.
pub fn run_preset(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<RunSummary, CliError> {
    let jobs = jobs(cfg);
    let results: Vec<Result<(RunRecord, Vec<PathBuf>), CliError>> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool construction");
        pool.install(|| {
            jobs.par_iter()
                .map(|&(e, n)| run_job(cfg, e, n, opts.write_files))
                .collect()
        })
    } else {
        jobs.iter()
            .map(|&(e, n)| run_job(cfg, e, n, opts.write_files))
            .collect()
    };

    let mut summary = RunSummary::default();
    for result in results {
        let (record, files) = result?;
        summary.files.extend(files);
        summary.runs.push(record);
    }

    let mut eps_seen: Vec<f64> = Vec::new();
    for run in &summary.runs {
        if !eps_seen.contains(&run.epsilon) {
            eps_seen.push(run.epsilon);
        }
    }
    for &eps in &eps_seen {
        let runs: Vec<&RunRecord> = summary.runs.iter().filter(|r| r.epsilon == eps).collect();
        if runs.len() >= 2 {
            let resolutions = runs
                .iter()
                .map(|r| Resolution {
                    n_cells: r.n_cells,
                    dx: r.params.dx(),
                    dt: r.params.dt(),
                })
                .collect();
            let fields: Vec<Vec<CellField>> = runs.iter().map(|r| r.final_fields.clone()).collect();
            let report =
                ConvergenceReport::from_solutions(eps, resolutions, &fields).map_err(|e| {
                    CliError::from_run(&format!("{}_eps{}", cfg.preset, label_number(eps)), e)
                })?;
            if opts.write_files {
                let path = cfg.output_dir.join(format!(
                    "convergence_{}_eps{}.csv",
                    cfg.preset,
                    label_number(eps)
                ));
                emit_csv(&convergence_table(&report), &path)?;
                summary.files.push(path);
            }
            summary.convergence.push(report);
        }
        for run in runs {
            let Some(series) = &run.trend else { continue };
            let half_life = decay_half_life(&series.times, &series.s_rho);
            if opts.write_files {
                let name = if cfg.n_cells_list.len() == 1 {
                    format!("trend_{}_eps{}.csv", cfg.preset, label_number(eps))
                } else {
                    format!(
                        "trend_{}_eps{}_n{}.csv",
                        cfg.preset,
                        label_number(eps),
                        run.n_cells
                    )
                };
                let path = cfg.output_dir.join(name);
                emit_csv(&trend_table(series), &path)?;
                summary.files.push(path);
            }
            summary.trends.push(TrendRecord {
                epsilon: eps,
                n_cells: run.n_cells,
                series: series.clone(),
                half_life,
            });
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn longtime_adds_the_limit_reference() {
        let cfg = parse_config("", Some(Preset::BroadwellLongtime)).unwrap();
        let eps: Vec<f64> = jobs(&cfg).iter().map(|j| j.0).collect();
        assert_eq!(eps, vec![0.5, 0.05, 0.005, 0.0]);
    }

    #[test]
    fn file_name_numbers() {
        assert_eq!(label_number(0.5), "0.5");
        assert_eq!(label_number(1e-6), "0.000001");
        assert_eq!(label_number(20.0), "20");
        assert_eq!(
            run_label(Preset::JinxinSmooth, 1.0, 64),
            "jinxin-smooth_eps1_n64"
        );
    }

    #[test]
    fn riemann_run_writes_four_snapshots_and_an_audit() {
        let dir = tempfile::tempdir().unwrap();
        let text = format!("epsilon_list = 0.5\noutput_dir = {}", dir.path().display());
        let cfg = parse_config(&text, Some(Preset::BroadwellRiemann)).unwrap();
        let summary = run_preset(&cfg, &RunOptions::default()).unwrap();
        let names: Vec<String> = summary
            .files
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(
            names,
            vec![
                "solution_broadwell-riemann_eps0.5_n100_t0.05.csv",
                "solution_broadwell-riemann_eps0.5_n100_t0.2.csv",
                "solution_broadwell-riemann_eps0.5_n100_t0.35.csv",
                "solution_broadwell-riemann_eps0.5_n100_t0.5.csv",
                "audit_broadwell-riemann_eps0.5_n100.csv",
            ]
        );
        let first = std::fs::read_to_string(&summary.files[0]).unwrap();
        assert!(first.starts_with("x,rho,m,z,dev\n"));
        assert_eq!(first.lines().count(), 101);
    }

    #[test]
    fn zero_epsilon_uses_the_limit_solver() {
        let cfg = parse_config(
            "epsilon_list = 0\nn_cells_list = 32, 64, 128, 256",
            Some(Preset::JinxinSmooth),
        )
        .unwrap();
        let summary = run_preset(
            &cfg,
            &RunOptions {
                threads: 1,
                write_files: false,
            },
        )
        .unwrap();
        assert_eq!(summary.runs.len(), 4);
        assert!(summary
            .runs
            .iter()
            .all(|r| r.linf_excess.is_none() && r.steps > 0));
        assert_eq!(summary.convergence.len(), 1);
        assert!(summary.convergence[0].fitted_order[0].is_finite());
    }

    #[test]
    fn strict_semilinear_run_passes_and_violations_map_to_exit_two() {
        let cfg = parse_config(
            "model = semilinear\ninitial = step\nboundary = outflow\nstrict_invariants = true\nepsilon_list = 0.01\nn_cells_list = 64",
            Some(Preset::Custom),
        )
        .unwrap();
        let summary = run_preset(
            &cfg,
            &RunOptions {
                threads: 1,
                write_files: false,
            },
        )
        .unwrap();
        assert!(summary.runs[0].tv_growth <= TV_TOLERANCE);
        let err = CliError::from_run(
            "x",
            Error::Invariant {
                step: 3,
                what: "test",
                value: 2.0,
                limit: 1.0,
            },
        );
        assert_eq!(err.exit_code(), 2);
    }
}
