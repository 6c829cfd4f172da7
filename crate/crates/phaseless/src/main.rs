//! Thin CLI over the `phaseless` library: parse arguments, merge them into
//! an experiment config, dispatch, and map errors to exit codes (0 success,
//! 1 run failure, 2 usage/parse error) with a JSON error record on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phaseless::cli::{
    cmd_convergence, cmd_e2e, cmd_rate_table, cmd_reconstruct, cmd_simulate, cmd_validate_frame,
    CliError, ExperimentConfig, FrameSource, SignalSource, CONVERGENCE_CSV_HEADER,
    METRICS_CSV_HEADER, RATE_CSV_HEADER,
};
use phaseless::reconstruct::Mode;

#[derive(Parser)]
#[command(
    name = "phaseless",
    about = "Magnitude-only frequency sampling with structured modulations: \
             simulate intensity measurements and reconstruct signals up to a \
             global phase",
    long_about = None,
    after_help = format!(
        "CSV formats:\n  metrics:      {METRICS_CSV_HEADER}\n  rate-table:   \
         {RATE_CSV_HEADER}\n  convergence:  {CONVERGENCE_CSV_HEADER}\n\nThe \
         default output directory is taken from $PHASELESS_OUT_DIR when set."
    )
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// JSON experiment config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Points per block K.
    #[arg(long)]
    k: Option<usize>,
    /// Overlap a between consecutive blocks.
    #[arg(long)]
    a: Option<usize>,
    /// Declared signal support length T.
    #[arg(long)]
    t: Option<f64>,
    /// Grid type length T~ (>= T).
    #[arg(long)]
    t_tilde: Option<f64>,
    /// Test-signal type length T' (augmented mode).
    #[arg(long)]
    t_prime: Option<f64>,
    /// Constant imaginary shift h of the grid.
    #[arg(long)]
    shift_h: Option<f64>,
    /// Strip parameter H_u of the cosine test signal.
    #[arg(long)]
    h_u: Option<f64>,
    /// Test-signal amplitude D (augmented mode; omit to auto-choose).
    #[arg(long)]
    d: Option<f64>,
    /// Block window, inclusive.
    #[arg(long, num_args = 2, value_names = ["N_MIN", "N_MAX"], allow_hyphen_values = true)]
    n_range: Option<Vec<i64>>,
    /// Interpolation truncation index N.
    #[arg(long)]
    truncation_n: Option<usize>,
    /// Relative overlap threshold tau.
    #[arg(long)]
    overlap_tol: Option<f64>,
    /// Gaussian noise level on intensities.
    #[arg(long)]
    noise_sigma: Option<f64>,
    /// Measurement noise seed.
    #[arg(long)]
    seed: Option<u64>,
    /// lp-series | bounded-series | augmented-corollary
    #[arg(long)]
    mode: Option<String>,
    /// Ground-truth signal file (overrides the random source).
    #[arg(long)]
    signal_file: Option<PathBuf>,
    /// Frame file (overrides the builtin frame).
    #[arg(long)]
    frame_file: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(k) = self.k {
            config.k = k;
        }
        if let Some(a) = self.a {
            config.a = a;
        }
        if let Some(t) = self.t {
            config.t = t;
        }
        if let Some(t_tilde) = self.t_tilde {
            config.t_tilde = t_tilde;
        }
        if let Some(t_prime) = self.t_prime {
            config.t_prime = Some(t_prime);
        }
        if let Some(shift_h) = self.shift_h {
            config.shift_h = shift_h;
        }
        if let Some(h_u) = self.h_u {
            config.h_u = h_u;
        }
        if let Some(d) = self.d {
            config.d = Some(d);
        }
        if let Some(range) = &self.n_range {
            config.n_range = (range[0], range[1]);
        }
        if let Some(n) = self.truncation_n {
            config.truncation_n = n;
        }
        if let Some(tol) = self.overlap_tol {
            config.overlap_tol = tol;
        }
        if let Some(sigma) = self.noise_sigma {
            config.noise_sigma = sigma;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(mode) = &self.mode {
            config.mode = match mode.as_str() {
                "lp-series" => Mode::LpSeries,
                "bounded-series" => Mode::BoundedSeries,
                "augmented-corollary" => Mode::AugmentedCorollary,
                other => return Err(CliError::usage(format!("unknown mode: {other}"))),
            };
        }
        if let Some(path) = &self.signal_file {
            config.signal = SignalSource::File(path.clone());
        }
        if let Some(path) = &self.frame_file {
            config.frame = FrameSource::File(path.clone());
        }
        if let Some(dir) = &self.out_dir {
            config.output_dir = Some(dir.clone());
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a frame against the unit-norm 2-uniform tight-frame invariants.
    ValidateFrame {
        /// Frame JSON file; omit to check a builtin frame.
        #[arg(long)]
        frame: Option<PathBuf>,
        /// Builtin frame when no file is given: k2 | sic3.
        #[arg(long, default_value = "k2")]
        builtin: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Synthesize intensity measurements and write them to disk.
    Simulate(ConfigArgs),
    /// Reconstruct from a measurement file; optionally compare to truth.
    Reconstruct {
        /// Measurement JSON produced by `simulate`.
        #[arg(long)]
        measurements: PathBuf,
        /// Ground-truth signal JSON for error metrics.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[command(flatten)]
        args: ConfigArgs,
    },
    /// Simulate, reconstruct and report metrics in one deterministic run.
    E2e(ConfigArgs),
    /// Print the sampling-rate table R / R_Ny = K^2/(K-a) * oversampling.
    RateTable {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        a: Vec<usize>,
        /// T~ / T values.
        #[arg(long, value_delimiter = ',', default_value = "1.0,1.1,1.25")]
        oversampling: Vec<f64>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Median/max interpolation error as the truncation index N grows.
    Convergence {
        #[command(flatten)]
        args: ConfigArgs,
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::ValidateFrame {
            frame,
            builtin,
            tol,
        } => {
            let source = match frame {
                Some(path) => FrameSource::File(path),
                None => match builtin.as_str() {
                    "k2" => FrameSource::BuiltinK2,
                    "sic3" => FrameSource::BuiltinSic3,
                    other => {
                        return Err(CliError::usage(format!("unknown builtin frame: {other}")))
                    }
                },
            };
            let report = cmd_validate_frame(&source, tol)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if report.pass {
                Ok(())
            } else {
                Err(CliError::failure(format!("frame failed validation: {report}")))
            }
        }
        Command::Simulate(args) => {
            let config = args.resolve()?;
            let sim = cmd_simulate(&config)?;
            println!("signal:       {}", sim.signal_path.display());
            println!("measurements: {}", sim.measurement_path.display());
            if let Some(path) = &sim.augmentation_path {
                println!("augmentation: {}", path.display());
            }
            Ok(())
        }
        Command::Reconstruct {
            measurements,
            truth,
            args,
        } => {
            let config = args.resolve()?;
            let rec = cmd_reconstruct(&config, &measurements, truth.as_deref())?;
            println!("recovery:     {}", rec.recovery_path.display());
            if let Some(path) = &rec.metrics_path {
                println!("metrics:      {}", path.display());
            }
            if let Some(metrics) = &rec.metrics {
                println!(
                    "aligned rel_l2 = {:.3e}, max_abs = {:.3e}, theta0 = {:.6}",
                    metrics.rel_l2, metrics.max_abs, metrics.theta
                );
            }
            finish_recovery(rec.result.failures.len())
        }
        Command::E2e(args) => {
            let config = args.resolve()?;
            let (sim, rec) = cmd_e2e(&config)?;
            println!("signal:       {}", sim.signal_path.display());
            println!("measurements: {}", sim.measurement_path.display());
            if let Some(path) = &sim.augmentation_path {
                println!("augmentation: {}", path.display());
            }
            println!("recovery:     {}", rec.recovery_path.display());
            if let Some(path) = &rec.metrics_path {
                println!("metrics:      {}", path.display());
            }
            let metrics = rec.metrics.expect("e2e always has truth");
            println!(
                "aligned rel_l2 = {:.3e}, max_abs = {:.3e}, theta0 = {:.6}",
                metrics.rel_l2, metrics.max_abs, metrics.theta
            );
            finish_recovery(rec.result.failures.len())
        }
        Command::RateTable {
            k,
            a,
            oversampling,
            out,
        } => {
            let csv = cmd_rate_table(&k, &a, &oversampling)?;
            emit(csv, out)
        }
        Command::Convergence { args, n_list, out } => {
            let config = args.resolve()?;
            let csv = cmd_convergence(&config, &n_list)?;
            emit(csv, out)
        }
    }
}

fn emit(csv: String, out: Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(&path, csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn finish_recovery(n_failures: usize) -> Result<(), CliError> {
    if n_failures == 0 {
        Ok(())
    } else {
        Err(CliError::failure(format!(
            "phase propagation failed at {n_failures} block boundary(ies); see recovery.json"
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("{}", error.record());
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
