//! Experiment configuration: presets, defaults and the `key = value` parser.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use relaxkit_core::Boundary;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    JinxinSmooth,
    JinxinRiemann,
    BroadwellSmooth,
    BroadwellLongtime,
    BroadwellRiemann,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::JinxinSmooth,
        Preset::JinxinRiemann,
        Preset::BroadwellSmooth,
        Preset::BroadwellLongtime,
        Preset::BroadwellRiemann,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::JinxinSmooth => "jinxin-smooth",
            Preset::JinxinRiemann => "jinxin-riemann",
            Preset::BroadwellSmooth => "broadwell-smooth",
            Preset::BroadwellLongtime => "broadwell-longtime",
            Preset::BroadwellRiemann => "broadwell-riemann",
            Preset::Custom => "custom",
        }
    }

    pub fn is_broadwell(self) -> bool {
        matches!(
            self,
            Preset::BroadwellSmooth | Preset::BroadwellLongtime | Preset::BroadwellRiemann
        )
    }

    pub fn default_t_final(self) -> f64 {
        match self {
            Preset::BroadwellRiemann => 0.5,
            Preset::BroadwellLongtime => 20.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown preset `{s}` (expected one of {})", preset_names()))
    }
}

fn preset_names() -> String {
    Preset::ALL.map(Preset::name).join(", ")
}

/// Lower speed `a₀`: a number, or the value that minimises the selected `√a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum A0 {
    Auto,
    Value(f64),
}

/// Source model of the `custom` preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CustomModel {
    /// `R = (v - u²) / max(u² + v², η)`.
    Jinxin,
    /// `R = v - u²`.
    Semilinear,
}

/// Initial `u` of the `custom` preset; `v₀ = 0` in both cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialShape {
    /// One period of a sine across the domain.
    Sine,
    /// 0.5 left of the midpoint, 0.125 right of it.
    Step,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Preset,
    /// Relaxation parameters; `0` selects the limit solver.
    pub epsilon_list: Vec<f64>,
    /// Cell counts, each twice the previous.
    pub n_cells_list: Vec<usize>,
    pub t_final: f64,
    pub lambda: f64,
    pub strict_invariants: bool,
    pub output_dir: PathBuf,
    pub a0: A0,
    /// Times at which solution files are written; always ends with `t_final`.
    pub snapshot_times: Vec<f64>,
    /// Broadwell Riemann only: start the left state at `z = A(1, 0) = 0.5`.
    pub equilibrated: bool,
    /// Also run the explicit reference solver and write its solutions.
    pub explicit_reference: bool,
    pub model: CustomModel,
    pub initial: InitialShape,
    pub boundary: Boundary,
    pub x_min: f64,
    pub x_max: f64,
}

/// Snapshot times of the Broadwell Riemann figures.
pub const RIEMANN_SNAPSHOTS: [f64; 4] = [0.05, 0.2, 0.35, 0.5];

const REFINEMENT: [usize; 5] = [64, 128, 256, 512, 1024];

impl ExperimentConfig {
    pub fn defaults(preset: Preset) -> Self {
        let (epsilon_list, n_cells_list): (Vec<f64>, Vec<usize>) = match preset {
            Preset::JinxinSmooth | Preset::JinxinRiemann => {
                (vec![1.0, 1e-2, 1e-6], REFINEMENT.to_vec())
            }
            Preset::BroadwellSmooth => (vec![0.5, 1e-2, 1e-4], REFINEMENT.to_vec()),
            Preset::BroadwellLongtime => (vec![0.5, 0.05, 0.005], vec![1024]),
            Preset::BroadwellRiemann => (vec![0.5, 0.1, 0.01], vec![100]),
            Preset::Custom => (vec![1e-2], REFINEMENT[..4].to_vec()),
        };
        let (boundary, x_min, x_max) = match preset {
            Preset::JinxinSmooth | Preset::Custom => (Boundary::Periodic, 0.0, 1.0),
            Preset::JinxinRiemann => (Boundary::Outflow, -1.0, 1.0),
            Preset::BroadwellSmooth | Preset::BroadwellLongtime => (Boundary::Periodic, -1.0, 1.0),
            Preset::BroadwellRiemann => (Boundary::Reflecting, -1.0, 1.0),
        };
        let t_final = preset.default_t_final();
        Self {
            preset,
            epsilon_list,
            n_cells_list,
            t_final,
            lambda: 0.9,
            strict_invariants: false,
            output_dir: PathBuf::from("out"),
            a0: if preset.is_broadwell() {
                A0::Value(1.0)
            } else {
                A0::Auto
            },
            snapshot_times: default_snapshots(preset, t_final),
            equilibrated: false,
            explicit_reference: false,
            model: CustomModel::Jinxin,
            initial: InitialShape::Sine,
            boundary,
            x_min,
            x_max,
        }
    }
}

fn default_snapshots(preset: Preset, t_final: f64) -> Vec<f64> {
    let mut times: Vec<f64> = match preset {
        Preset::BroadwellRiemann => RIEMANN_SNAPSHOTS
            .into_iter()
            .filter(|&t| t < t_final)
            .collect(),
        _ => Vec::new(),
    };
    times.push(t_final);
    times
}

fn parse_real(value: &str) -> Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{value}` is not finite"))
    }
}

fn parse_list<T>(value: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    if value.is_empty() {
        return Err("list is empty".into());
    }
    value.split(',').map(|s| item(s.trim())).collect()
}

fn parse_bool(value: &str) -> Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{value}` is not a boolean")),
    }
}

fn parse_count(value: &str) -> Result<usize, String> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{value}` is not a positive integer")),
    }
}

/// Splits `text` into `(line number, key, value)` entries.
fn entries(text: &str) -> Result<Vec<(usize, &str, &str)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::config(line, "expected `key = value`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(CliError::config(line, "missing key"));
        }
        if out.iter().any(|&(_, k, _)| k == key) {
            return Err(CliError::config(line, format!("duplicate key `{key}`")));
        }
        out.push((line, key, value.trim()));
    }
    Ok(out)
}

/// Parses a configuration. The preset comes from a `preset = ...` line or,
/// failing that, from `preset_flag`; keys absent from `text` keep the
/// preset's defaults.
pub fn parse_config(text: &str, preset_flag: Option<Preset>) -> Result<ExperimentConfig, CliError> {
    let entries = entries(text)?;
    let from_text = match entries.iter().find(|e| e.1 == "preset") {
        Some(&(line, _, value)) => Some((
            line,
            value
                .parse::<Preset>()
                .map_err(|m| CliError::config(line, m))?,
        )),
        None => None,
    };
    let preset = match (from_text, preset_flag) {
        (Some((line, p)), Some(flag)) if p != flag => {
            return Err(CliError::config(
                line,
                format!("preset `{p}` conflicts with --preset {flag}"),
            ));
        }
        (Some((_, p)), _) => p,
        (None, Some(flag)) => flag,
        (None, None) => return Err(CliError::ConfigValue("no preset given".into())),
    };

    let mut cfg = ExperimentConfig::defaults(preset);
    let mut t_final_line = 0;
    let mut snapshots: Option<(usize, Vec<f64>)> = None;
    let mut domain_line = 0;
    for &(line, key, value) in &entries {
        let err = |m: String| CliError::config(line, format!("{key}: {m}"));
        let custom_only = || -> Result<(), CliError> {
            if preset == Preset::Custom {
                Ok(())
            } else {
                Err(err(format!(
                    "only the custom preset accepts this key, not {preset}"
                )))
            }
        };
        match key {
            "preset" => {}
            "epsilon_list" => {
                let list = parse_list(value, parse_real).map_err(err)?;
                if list.iter().any(|&e| e < 0.0) {
                    return Err(err("relaxation parameters must be non-negative".into()));
                }
                if list.iter().enumerate().any(|(i, e)| list[..i].contains(e)) {
                    return Err(err("duplicate value".into()));
                }
                cfg.epsilon_list = list;
            }
            "n_cells_list" => {
                let list = parse_list(value, parse_count).map_err(err)?;
                if list.windows(2).any(|w| w[1] != 2 * w[0]) {
                    return Err(err("each cell count must double the previous one".into()));
                }
                cfg.n_cells_list = list;
            }
            "t_final" => {
                let t = parse_real(value).map_err(err)?;
                if !(t > 0.0) {
                    return Err(err("must be positive".into()));
                }
                cfg.t_final = t;
                t_final_line = line;
            }
            "lambda" => {
                let l = parse_real(value).map_err(err)?;
                if !(l > 0.0 && l < 1.0) {
                    return Err(err(format!("CFL number {l} is outside (0, 1)")));
                }
                cfg.lambda = l;
            }
            "strict_invariants" => cfg.strict_invariants = parse_bool(value).map_err(err)?,
            "output_dir" => {
                if value.is_empty() {
                    return Err(err("empty path".into()));
                }
                cfg.output_dir = PathBuf::from(value);
            }
            "a0" => {
                cfg.a0 = if value == "auto" {
                    A0::Auto
                } else {
                    let a = parse_real(value).map_err(err)?;
                    if !(a > 0.0) {
                        return Err(err("must be positive or `auto`".into()));
                    }
                    A0::Value(a)
                };
            }
            "snapshot_times" => {
                snapshots = Some((line, parse_list(value, parse_real).map_err(err)?))
            }
            "equilibrated" => {
                if preset != Preset::BroadwellRiemann {
                    return Err(err(format!(
                        "applies to broadwell-riemann only, not {preset}"
                    )));
                }
                cfg.equilibrated = parse_bool(value).map_err(err)?;
            }
            "explicit_reference" => cfg.explicit_reference = parse_bool(value).map_err(err)?,
            "model" => {
                custom_only()?;
                cfg.model = match value {
                    "jinxin" => CustomModel::Jinxin,
                    "semilinear" => CustomModel::Semilinear,
                    _ => return Err(err(format!("unknown model `{value}` (jinxin, semilinear)"))),
                };
            }
            "initial" => {
                custom_only()?;
                cfg.initial = match value {
                    "sine" => InitialShape::Sine,
                    "step" => InitialShape::Step,
                    _ => return Err(err(format!("unknown initial data `{value}` (sine, step)"))),
                };
            }
            "boundary" => {
                custom_only()?;
                cfg.boundary = match value {
                    "periodic" => Boundary::Periodic,
                    "outflow" => Boundary::Outflow,
                    // A mirrored state with odd v solves the 2x2 system only
                    // when the source is odd in v, which fails once A ≠ 0.
                    "reflecting" => {
                        return Err(err("reflecting walls are not consistent with the 2x2 models; use periodic or outflow".into()))
                    }
                    _ => return Err(err(format!("unknown boundary `{value}` (periodic, outflow)"))),
                };
            }
            "x_min" | "x_max" => {
                custom_only()?;
                let x = parse_real(value).map_err(err)?;
                if key == "x_min" {
                    cfg.x_min = x;
                } else {
                    cfg.x_max = x;
                }
                domain_line = line;
            }
            _ => return Err(CliError::config(line, format!("unknown key `{key}`"))),
        }
    }

    if !(cfg.x_max > cfg.x_min) {
        return Err(CliError::config(domain_line, "x_max must exceed x_min"));
    }
    cfg.snapshot_times = match snapshots {
        None => default_snapshots(preset, cfg.t_final),
        Some((line, mut times)) => {
            if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|&t| !(t > 0.0)) {
                return Err(CliError::config(
                    line,
                    "snapshot_times must be positive and strictly increasing",
                ));
            }
            match times.last() {
                Some(&last) if last > cfg.t_final => {
                    let at = if t_final_line > 0 { t_final_line } else { line };
                    return Err(CliError::config(
                        at,
                        format!("snapshot time {last} exceeds t_final {}", cfg.t_final),
                    ));
                }
                Some(&last) if last == cfg.t_final => {}
                _ => times.push(cfg.t_final),
            }
            times
        }
    };
    Ok(cfg)
}
