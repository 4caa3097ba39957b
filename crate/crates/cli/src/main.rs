use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relaxkit::config::{parse_config, ExperimentConfig, Preset};
use relaxkit::error::{CliError, EXIT_CONFIG};
use relaxkit::runner::{label_number, run_preset, RunOptions, RunSummary};

#[derive(Parser)]
#[command(
    name = "relaxkit",
    version,
    about = "Asymptotic-preserving relaxation scheme experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// jinxin-smooth, jinxin-riemann, broadwell-smooth, broadwell-longtime, broadwell-riemann or custom.
    #[arg(long)]
    preset: Preset,
    /// `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of worker threads for independent runs.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    parallel: u16,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset and write its CSV artifacts.
    Run {
        #[command(flatten)]
        common: Common,
        /// Output directory (overrides `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort on the first invariant violation.
        #[arg(long)]
        strict: bool,
    },
    /// Run a preset's refinement study and print the fitted orders.
    Orders {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<ExperimentConfig, CliError> {
    let text = match &common.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?,
        None => String::new(),
    };
    parse_config(&text, Some(common.preset))
}

fn print_orders(summary: &RunSummary) {
    println!(
        "{:>12} {:>10} {:>10} {:>10}",
        "epsilon", "order_l1", "order_l2", "order_linf"
    );
    for report in &summary.convergence {
        let [l1, l2, linf] = report.fitted_order;
        println!(
            "{:>12} {l1:>10.4} {l2:>10.4} {linf:>10.4}",
            label_number(report.epsilon)
        );
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            common,
            out,
            strict,
        } => {
            let mut cfg = load(&common)?;
            if let Some(dir) = out {
                cfg.output_dir = dir;
            }
            cfg.strict_invariants |= strict;
            let summary = run_preset(
                &cfg,
                &RunOptions {
                    threads: common.parallel.into(),
                    write_files: true,
                },
            )?;
            for run in &summary.runs {
                print!(
                    "{}: {} steps, max TV growth {:.3e}",
                    run.label, run.steps, run.tv_growth
                );
                if let Some(d) = run.explicit_distance {
                    print!(", relative distance to explicit {d:.4e}");
                }
                println!();
            }
            if !summary.convergence.is_empty() {
                print_orders(&summary);
            }
            for trend in &summary.trends {
                println!(
                    "half-life of S_rho at eps {}: {:.4}",
                    label_number(trend.epsilon),
                    trend.half_life
                );
            }
            println!(
                "wrote {} files to {}",
                summary.files.len(),
                cfg.output_dir.display()
            );
        }
        Command::Orders { common } => {
            let cfg = load(&common)?;
            let summary = run_preset(
                &cfg,
                &RunOptions {
                    threads: common.parallel.into(),
                    write_files: false,
                },
            )?;
            if summary.convergence.is_empty() {
                return Err(CliError::ConfigValue(format!(
                    "{} has a single resolution; set n_cells_list to at least two doubling sizes",
                    cfg.preset
                )));
            }
            print_orders(&summary);
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    use super::run;

    fn write_config(dir: &Path, text: &str) -> String {
        let path = dir.join("run.cfg");
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    #[test]
    fn bad_config_exits_with_code_three() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(dir.path(), "lambda = 1.5\n");
        assert_eq!(
            run([
                "relaxkit",
                "run",
                "--preset",
                "jinxin-smooth",
                "--config",
                &cfg
            ]),
            3
        );
    }

    #[test]
    fn usage_errors_are_config_errors() {
        assert_eq!(run(["relaxkit", "run", "--preset", "euler"]), 3);
        assert_eq!(run(["relaxkit", "orders"]), 3);
        assert_eq!(
            run(["relaxkit", "run", "--preset", "custom", "--parallel", "0"]),
            3
        );
        assert_eq!(run(["relaxkit", "--help"]), 0);
    }

    #[test]
    fn strict_violation_exits_with_code_two() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(dir.path(), "epsilon_list = 1\nn_cells_list = 64\n");
        let out = dir.path().join("out");
        let args = [
            "relaxkit",
            "run",
            "--preset",
            "jinxin-riemann",
            "--strict",
            "--config",
            &cfg,
            "--out",
            out.to_str().unwrap(),
        ];
        assert_eq!(run(args), 2);
    }

    #[test]
    fn run_writes_snapshots_audits_and_convergence_tables() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(dir.path(), "epsilon_list = 0.01\nn_cells_list = 64, 128\n");
        let out = dir.path().join("out");
        assert_eq!(
            run([
                "relaxkit",
                "run",
                "--preset",
                "jinxin-smooth",
                "--config",
                &cfg,
                "--out",
                out.to_str().unwrap()
            ]),
            0
        );

        let mut names: Vec<String> = fs::read_dir(&out)
            .unwrap()
            .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        assert_eq!(
            names,
            [
                "audit_jinxin-smooth_eps0.01_n128.csv",
                "audit_jinxin-smooth_eps0.01_n64.csv",
                "convergence_jinxin-smooth_eps0.01.csv",
                "solution_jinxin-smooth_eps0.01_n128_t1.csv",
                "solution_jinxin-smooth_eps0.01_n64_t1.csv",
            ]
        );
        let convergence =
            fs::read_to_string(out.join("convergence_jinxin-smooth_eps0.01.csv")).unwrap();
        assert_eq!(
            convergence.lines().next(),
            Some("n_cells,dx,dt,e_l1,e_l2,e_linf,order_l1,order_l2,order_linf")
        );
        let solution =
            fs::read_to_string(out.join("solution_jinxin-smooth_eps0.01_n64_t1.csv")).unwrap();
        assert_eq!(solution.lines().count(), 65);
    }

    #[test]
    fn orders_runs_without_writing_and_needs_two_resolutions() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = write_config(
            dir.path(),
            "epsilon_list = 1, 0.000001\nn_cells_list = 64, 128\n",
        );
        assert_eq!(
            run([
                "relaxkit",
                "orders",
                "--preset",
                "jinxin-smooth",
                "--config",
                &cfg,
                "--parallel",
                "2"
            ]),
            0
        );
        assert_eq!(
            run(["relaxkit", "orders", "--preset", "broadwell-riemann"]),
            3
        );
    }
}
