//! Command line front end.
//!
//! Four subcommands drive the library end to end:
//!
//! * `simulate` — write an OU-VG / OU-SVG skeleton as CSV
//!   (`path_id,t,value`);
//! * `validate` — moment validation report as CSV
//!   (`stat,estimated,stderr,theoretical,z`), exit status 1 when any
//!   `|z| >= threshold`;
//! * `price-asian` — two-factor Asian option price as CSV
//!   (`n_paths,price,stdev,error,cpu_seconds,cpu_paths_seconds`);
//! * `price-storage` — one-factor LSMC storage value, same CSV schema.
//!
//! Parameters resolve in three layers: built-in defaults, then a flat
//! `key = value` config file (`#` starts a comment), then command-line
//! flags. Exit codes: 0 success, 1 validation failure, 2 config error,
//! 3 runtime error.
//!
//! Outputs are byte-identical across runs and thread counts for a fixed
//! config (seed included); the only exception is the pair of cpu columns of
//! the price reports, which record genuine wall-clock measurements.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::diagnostics::validate_ouvg;
use crate::ou::{simulate_skeleton, OuVgParams, PathSet, TimeGrid};
use crate::pricing::{
    price_asian, price_storage, AsianSpec, ForwardCurve, OneFactorSpotModel, StorageSpec,
    TerminalPenalty, TwoFactorSpotModel,
};
use crate::vg::VgParams;
use crate::{Error, Result};

/// Fully resolved run configuration (defaults + config file + flags).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub n_paths: usize,
    pub out: PathBuf,
    pub quiet: bool,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum Command {
    Simulate(SimulateConfig),
    Validate(ValidateConfig),
    PriceAsian(AsianConfig),
    PriceStorage(StorageConfig),
}

#[derive(Debug, Clone)]
pub struct SimulateConfig {
    pub k: f64,
    pub theta: f64,
    pub nu: f64,
    pub sigma: f64,
    pub x0: f64,
    pub horizon: f64,
    pub steps: usize,
    pub symmetric: bool,
}

#[derive(Debug, Clone)]
pub struct ValidateConfig {
    pub k: f64,
    pub theta: f64,
    pub nu: f64,
    pub sigma: f64,
    pub x0: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub symmetric: bool,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct AsianConfig {
    pub k: f64,
    pub theta: f64,
    pub nu: f64,
    pub sigma: f64,
    pub theta2: f64,
    pub nu2: f64,
    pub sigma2: f64,
    pub forward: f64,
    pub curve: Option<Vec<(f64, f64)>>,
    pub strike: f64,
    pub maturity: f64,
    pub fixings: usize,
}

#[derive(Debug, Clone)]
pub struct StorageConfig {
    pub k: f64,
    pub nu: f64,
    pub sigma: f64,
    pub forward: f64,
    pub curve: Option<Vec<(f64, f64)>>,
    pub horizon: f64,
    pub steps: usize,
    pub storage: StorageSpec,
}

/// Outcome of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Success,
    /// `validate` found a z-score at or above the threshold.
    ValidationFailed,
}

#[derive(Parser, Debug)]
#[command(
    name = "ouvg",
    about = "Exact OU-VG / OU-SVG simulation, validation and energy derivative pricing",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Option<CliCommand>,

    /// Flat key = value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed for all random streams.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of Monte Carlo paths.
    #[arg(long, global = true)]
    paths: Option<usize>,

    /// Output CSV path (defaults to a per-command file name).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress the human-readable summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    /// Worker threads (default: hardware parallelism). Results do not
    /// depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Simulate process skeletons and write them as CSV.
    Simulate(ProcessFlags),
    /// Validate simulated moments against the closed forms.
    Validate(ValidateFlags),
    /// Price an Asian option in the two-factor market.
    PriceAsian(AsianFlags),
    /// Value a fast-churn gas storage in the one-factor market.
    PriceStorage(StorageFlags),
}

#[derive(Args, Debug, Default, Clone)]
struct ProcessFlags {
    /// Mean-reversion speed.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// VG drift.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Variance rate of the gamma clock.
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// VG volatility.
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// Initial state.
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    /// Simulation horizon in years.
    #[arg(long, allow_negative_numbers = true)]
    horizon: Option<f64>,
    /// Number of grid steps.
    #[arg(long, allow_negative_numbers = true)]
    steps: Option<usize>,
    /// Use the symmetric (OU-SVG) scheme; requires theta = 0.
    #[arg(long)]
    symmetric: bool,
}

#[derive(Args, Debug, Default, Clone)]
struct ValidateFlags {
    #[command(flatten)]
    process: ProcessFlags,
    /// Step size of the validation grid.
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    /// Largest acceptable |z|; at or above this the exit status is 1.
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,
}

#[derive(Args, Debug, Default, Clone)]
struct AsianFlags {
    /// Mean-reversion speed of the OU-VG factor.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// VG drift of the OU-VG factor.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Gamma-clock variance rate of the OU-VG factor.
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Volatility of the OU-VG factor.
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// VG drift of the long-term factor.
    #[arg(long, allow_negative_numbers = true)]
    theta2: Option<f64>,
    /// Gamma-clock variance rate of the long-term factor.
    #[arg(long, allow_negative_numbers = true)]
    nu2: Option<f64>,
    /// Volatility of the long-term factor.
    #[arg(long, allow_negative_numbers = true)]
    sigma2: Option<f64>,
    /// Flat forward curve level.
    #[arg(long, allow_negative_numbers = true)]
    forward: Option<f64>,
    /// Piecewise-linear curve as t1:p1,t2:p2,... (overrides --forward).
    #[arg(long, allow_negative_numbers = true)]
    curve: Option<String>,
    /// Strike price.
    #[arg(long, allow_negative_numbers = true)]
    strike: Option<f64>,
    /// Option maturity in years.
    #[arg(long, allow_negative_numbers = true)]
    maturity: Option<f64>,
    /// Number of equally spaced, equally weighted fixing dates.
    #[arg(long, allow_negative_numbers = true)]
    fixings: Option<usize>,
}

#[derive(Args, Debug, Default, Clone)]
struct StorageFlags {
    /// Mean-reversion speed of the OU-SVG factor.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    /// Gamma-clock variance rate.
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    /// Volatility.
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// Flat forward curve level.
    #[arg(long, allow_negative_numbers = true)]
    forward: Option<f64>,
    /// Piecewise-linear curve as t1:p1,t2:p2,... (overrides --forward).
    #[arg(long, allow_negative_numbers = true)]
    curve: Option<String>,
    /// Contract horizon in years.
    #[arg(long, allow_negative_numbers = true)]
    horizon: Option<f64>,
    /// Number of daily decision steps.
    #[arg(long, allow_negative_numbers = true)]
    steps: Option<usize>,
    /// Minimum volume.
    #[arg(long, allow_negative_numbers = true)]
    c_min: Option<f64>,
    /// Maximum volume.
    #[arg(long, allow_negative_numbers = true)]
    c_max: Option<f64>,
    /// Injection rate per day.
    #[arg(long, allow_negative_numbers = true)]
    a_in: Option<f64>,
    /// Withdrawal rate per day.
    #[arg(long, allow_negative_numbers = true)]
    a_w: Option<f64>,
    /// Injection cost coefficient.
    #[arg(long, allow_negative_numbers = true)]
    k_in: Option<f64>,
    /// Withdrawal cost coefficient.
    #[arg(long, allow_negative_numbers = true)]
    k_out: Option<f64>,
    /// Do-nothing cost.
    #[arg(long, allow_negative_numbers = true)]
    k_n: Option<f64>,
    /// Number of volume grid steps.
    #[arg(long, allow_negative_numbers = true)]
    volume_steps: Option<usize>,
    /// Initial volume.
    #[arg(long, allow_negative_numbers = true)]
    c0: Option<f64>,
    /// Terminal rule: "none" or "return_to_initial".
    #[arg(long, allow_negative_numbers = true)]
    penalty: Option<String>,
    /// Coefficient of the return-to-initial penalty.
    #[arg(long, allow_negative_numbers = true)]
    penalty_coeff: Option<f64>,
}

/// Entry point used by the `ouvg` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match CliArgs::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves exit code 2 for usage errors, matching the
            // config-error code.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match build_config(cli).and_then(|config| run(&config)) {
        Ok(RunOutcome::Success) => 0,
        Ok(RunOutcome::ValidationFailed) => 1,
        Err(e) => {
            eprintln!("ouvg: {e}");
            match e {
                Error::Config(_) => 2,
                _ => 3,
            }
        }
    }
}

/// Executes a resolved configuration: validates every parameter, runs the
/// requested computation, writes the output CSV, and prints a summary
/// unless quiet.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    match config.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| run_inner(config))
        }
        None => run_inner(config),
    }
}

fn run_inner(config: &RunConfig) -> Result<RunOutcome> {
    match &config.command {
        Command::Simulate(sim) => {
            let params = ou_params(sim.k, sim.theta, sim.nu, sim.sigma, sim.x0)?;
            let grid = TimeGrid::uniform(sim.horizon, sim.steps).map_err(as_config)?;
            if sim.symmetric && sim.theta != 0.0 {
                return Err(Error::config("--symmetric requires theta = 0"));
            }
            let paths =
                simulate_skeleton(&params, &grid, config.n_paths, config.seed, sim.symmetric)?;
            write_file(&config.out, &paths_csv(&paths))?;
            if !config.quiet {
                println!(
                    "simulated {} path(s) over {} steps -> {}",
                    paths.n_paths(),
                    grid.steps(),
                    config.out.display()
                );
            }
            Ok(RunOutcome::Success)
        }
        Command::Validate(v) => {
            let params = ou_params(v.k, v.theta, v.nu, v.sigma, v.x0)?;
            if v.threshold <= 0.0 || !v.threshold.is_finite() {
                return Err(Error::config("threshold must be finite and > 0"));
            }
            if v.symmetric && v.theta != 0.0 {
                return Err(Error::config("--symmetric requires theta = 0"));
            }
            if !v.dt.is_finite() || v.dt <= 0.0 || v.n_steps == 0 {
                return Err(Error::config("validate needs dt > 0 and steps >= 1"));
            }
            let report = validate_ouvg(
                &params,
                v.dt,
                v.n_steps,
                config.n_paths,
                config.seed,
                v.symmetric,
            )?;
            write_file(&config.out, &report.to_csv())?;
            if !config.quiet {
                println!("{report}");
                println!("report -> {}", config.out.display());
            }
            if report.max_abs_z() >= v.threshold {
                if !config.quiet {
                    println!(
                        "validation FAILED: max |z| = {:.3} >= {}",
                        report.max_abs_z(),
                        v.threshold
                    );
                }
                Ok(RunOutcome::ValidationFailed)
            } else {
                Ok(RunOutcome::Success)
            }
        }
        Command::PriceAsian(a) => {
            let ou = ou_params(a.k, a.theta, a.nu, a.sigma, 0.0)?;
            let vg2 = VgParams::new(a.theta2, a.nu2, a.sigma2).map_err(as_config)?;
            let curve = curve_from(a.forward, &a.curve)?;
            let model = TwoFactorSpotModel::new(curve, ou, vg2).map_err(as_config)?;
            let spec =
                AsianSpec::equally_weighted(a.strike, a.maturity, a.fixings).map_err(as_config)?;
            let result = price_asian(&model, &spec, config.n_paths, config.seed)?;
            write_file(&config.out, &result.to_csv())?;
            if !config.quiet {
                println!("asian option: {result}");
                println!("report -> {}", config.out.display());
            }
            Ok(RunOutcome::Success)
        }
        Command::PriceStorage(s) => {
            let curve = curve_from(s.forward, &s.curve)?;
            let model = OneFactorSpotModel::new(curve, s.k, s.nu, s.sigma).map_err(as_config)?;
            s.storage.validate().map_err(as_config)?;
            let grid = TimeGrid::uniform(s.horizon, s.steps).map_err(as_config)?;
            let result = price_storage(&model, &s.storage, &grid, config.n_paths, config.seed)?;
            write_file(&config.out, &result.to_csv())?;
            if !config.quiet {
                println!("gas storage: {result}");
                println!("report -> {}", config.out.display());
            }
            Ok(RunOutcome::Success)
        }
    }
}

fn ou_params(k: f64, theta: f64, nu: f64, sigma: f64, x0: f64) -> Result<OuVgParams> {
    let vg = VgParams::new(theta, nu, sigma).map_err(as_config)?;
    OuVgParams::new(k, vg, x0).map_err(as_config)
}

/// Domain violations in user-supplied parameters are config errors: they
/// are caught before any sampling or file output happens.
fn as_config(e: Error) -> Error {
    Error::Config(e.to_string())
}

fn curve_from(forward: f64, curve: &Option<Vec<(f64, f64)>>) -> Result<ForwardCurve> {
    match curve {
        Some(points) => ForwardCurve::piecewise_linear(points.clone()).map_err(as_config),
        None => ForwardCurve::flat(forward).map_err(as_config),
    }
}

fn paths_csv(paths: &PathSet) -> String {
    let times = paths.grid().times();
    let mut out = String::from("path_id,t,value\n");
    for i in 0..paths.n_paths() {
        for (j, &t) in times.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i, t, paths.value(i, j)));
        }
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Config resolution: defaults, then file entries, then flags.
// ---------------------------------------------------------------------------

struct Resolver {
    file: HashMap<String, String>,
}

impl Resolver {
    fn get<T: FromStr + Copy>(&self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        <T as FromStr>::Err: Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file.get(key) {
            Some(raw) => raw.parse::<T>().map_err(|e| {
                Error::config(format!("config key '{key}': cannot parse '{raw}': {e}"))
            }),
            None => Ok(default),
        }
    }

    /// Boolean key: a set flag wins, otherwise `key = true|false`.
    fn get_flag(&self, key: &str, flag: bool, default: bool) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.file.get(key) {
            Some(raw) => match raw.as_str() {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                other => Err(Error::config(format!(
                    "config key '{key}': expected a boolean, got '{other}'"
                ))),
            },
            None => Ok(default),
        }
    }

    fn get_string(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).cloned())
    }
}

/// Parses the flat `key = value` format; `#` starts a comment.
fn parse_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::config(format!(
                "{}:{}: expected 'key = value', got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_curve_spec(raw: &str) -> Result<Vec<(f64, f64)>> {
    raw.split(',')
        .map(|pair| {
            let Some((t, p)) = pair.split_once(':') else {
                return Err(Error::config(format!(
                    "curve entry '{pair}' is not of the form t:price"
                )));
            };
            let t = t
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::config(format!("curve time '{t}': {e}")))?;
            let p = p
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::config(format!("curve price '{p}': {e}")))?;
            Ok((t, p))
        })
        .collect()
}

fn build_config(cli: CliArgs) -> Result<RunConfig> {
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    let r = Resolver { file };

    // The subcommand may come from the config file when absent on the
    // command line.
    let cli_command =
        match cli.command {
            Some(c) => c,
            None => match r.file.get("command").map(String::as_str) {
                Some("simulate") => CliCommand::Simulate(ProcessFlags::default()),
                Some("validate") => CliCommand::Validate(ValidateFlags::default()),
                Some("price-asian") => CliCommand::PriceAsian(AsianFlags::default()),
                Some("price-storage") => CliCommand::PriceStorage(StorageFlags::default()),
                Some(other) => return Err(Error::config(format!("unknown command '{other}'"))),
                None => return Err(Error::config(
                    "no command given (on the command line or as 'command = ...' in the config)",
                )),
            },
        };

    let seed = r.get("seed", cli.seed, 42u64)?;
    let quiet = r.get_flag("quiet", cli.quiet, false)?;
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => r
            .file
            .get("threads")
            .map(|raw| {
                raw.parse::<usize>()
                    .map_err(|e| Error::config(format!("config key 'threads': {e}")))
            })
            .transpose()?,
    };

    let (command, default_paths, default_out) = match cli_command {
        CliCommand::Simulate(f) => {
            let command = Command::Simulate(SimulateConfig {
                k: r.get("k", f.k, 0.2)?,
                theta: r.get("theta", f.theta, 0.025)?,
                nu: r.get("nu", f.nu, 0.02)?,
                sigma: r.get("sigma", f.sigma, 0.3)?,
                x0: r.get("x0", f.x0, 0.0)?,
                horizon: r.get("horizon", f.horizon, 1.0)?,
                steps: r.get("steps", f.steps, 365usize)?,
                symmetric: r.get_flag("symmetric", f.symmetric, false)?,
            });
            (command, 1usize, "paths.csv")
        }
        CliCommand::Validate(f) => {
            let command = Command::Validate(ValidateConfig {
                k: r.get("k", f.process.k, 0.2)?,
                theta: r.get("theta", f.process.theta, 0.025)?,
                nu: r.get("nu", f.process.nu, 0.02)?,
                sigma: r.get("sigma", f.process.sigma, 0.3)?,
                x0: r.get("x0", f.process.x0, 0.0)?,
                dt: r.get("dt", f.dt, 0.2)?,
                n_steps: r.get("steps", f.process.steps, 1usize)?,
                symmetric: r.get_flag("symmetric", f.process.symmetric, false)?,
                threshold: r.get("threshold", f.threshold, 4.0)?,
            });
            (command, 100_000usize, "moments.csv")
        }
        CliCommand::PriceAsian(f) => {
            let curve = match r.get_string("curve", &f.curve) {
                Some(raw) => Some(parse_curve_spec(&raw)?),
                None => None,
            };
            let command = Command::PriceAsian(AsianConfig {
                k: r.get("k", f.k, 0.2)?,
                theta: r.get("theta", f.theta, 0.025)?,
                nu: r.get("nu", f.nu, 0.02)?,
                sigma: r.get("sigma", f.sigma, 0.3)?,
                theta2: r.get("theta2", f.theta2, 0.0)?,
                nu2: r.get("nu2", f.nu2, 0.2)?,
                sigma2: r.get("sigma2", f.sigma2, 0.1)?,
                forward: r.get("forward", f.forward, 15.0)?,
                curve,
                strike: r.get("strike", f.strike, 15.0)?,
                maturity: r.get("maturity", f.maturity, 1.0)?,
                fixings: r.get("fixings", f.fixings, 365usize)?,
            });
            (command, 10_000usize, "price.csv")
        }
        CliCommand::PriceStorage(f) => {
            let curve = match r.get_string("curve", &f.curve) {
                Some(raw) => Some(parse_curve_spec(&raw)?),
                None => None,
            };
            let defaults = StorageSpec::fast_churn();
            let penalty_coeff = r.get("penalty_coeff", f.penalty_coeff, 1.0)?;
            let penalty = match r
                .get_string("penalty", &f.penalty)
                .unwrap_or_else(|| "return_to_initial".to_string())
                .as_str()
            {
                "none" => TerminalPenalty::None,
                "return_to_initial" => TerminalPenalty::ReturnToInitial {
                    coeff: penalty_coeff,
                },
                other => {
                    return Err(Error::config(format!(
                        "unknown penalty rule '{other}' (use none or return_to_initial)"
                    )))
                }
            };
            let command = Command::PriceStorage(StorageConfig {
                k: r.get("k", f.k, 0.2162)?,
                nu: r.get("nu", f.nu, 0.256)?,
                sigma: r.get("sigma", f.sigma, 0.201)?,
                forward: r.get("forward", f.forward, 15.0)?,
                curve,
                horizon: r.get("horizon", f.horizon, 1.0)?,
                steps: r.get("steps", f.steps, 365usize)?,
                storage: StorageSpec {
                    c_min: r.get("c_min", f.c_min, defaults.c_min)?,
                    c_max: r.get("c_max", f.c_max, defaults.c_max)?,
                    a_in: r.get("a_in", f.a_in, defaults.a_in)?,
                    a_w: r.get("a_w", f.a_w, defaults.a_w)?,
                    k_in: r.get("k_in", f.k_in, defaults.k_in)?,
                    k_out: r.get("k_out", f.k_out, defaults.k_out)?,
                    k_n: r.get("k_n", f.k_n, defaults.k_n)?,
                    terminal_penalty: penalty,
                    volume_grid_steps: r.get(
                        "volume_steps",
                        f.volume_steps,
                        defaults.volume_grid_steps,
                    )?,
                    c0: r.get("c0", f.c0, defaults.c0)?,
                },
            });
            (command, 10_000usize, "price.csv")
        }
    };

    let n_paths = r.get("paths", cli.paths, default_paths)?;
    if n_paths == 0 {
        return Err(Error::config("paths must be at least 1"));
    }
    let out = match cli.out {
        Some(p) => p,
        None => r
            .file
            .get("out")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(default_out)),
    };

    Ok(RunConfig {
        command,
        seed,
        n_paths,
        out,
        quiet,
        threads,
    })
}
