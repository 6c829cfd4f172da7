//! Batch experiment driver behind the `phaseless` binary.
//!
//! Every subcommand is a plain function over an [`ExperimentConfig`], so the
//! binary stays a thin argument-parsing shell and runs are reproducible from
//! JSON manifests: identical config and seed give byte-identical outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::frames::{
    load_frame_raw, paper_frame_k2, sic_frame_k3, validate_frame, FrameError, MeasurementFrame,
    ValidationReport,
};
use crate::grid::{sampling_rate_ratio, GridError, InterpolationGrid};
use crate::reconstruct::{
    align_global_phase, interpolate_bounded, interpolate_fourier, recover, subtract_test_signal,
    AlignmentMetrics, Mode, ReconstructError, ReconstructionConfig, RecoveryResult,
};
use crate::simulate::{
    augment, measure, random_signal, AugmentedSignal, MeasurementSet, SignalSpec, SimulateError,
    TestSignalParams,
};

/// Environment variable supplying the default output directory.
pub const OUTPUT_DIR_ENV: &str = "PHASELESS_OUT_DIR";

/// Fixed header of the metrics CSV.
pub const METRICS_CSV_HEADER: &str =
    "run_id,k,a,t_ratio,n,noise_sigma,rel_l2,max_abs,theta0,n_phasebreaks";

/// Fixed header of the rate-table CSV.
pub const RATE_CSV_HEADER: &str = "k,a,oversampling,rate_ratio";

/// Fixed header of the convergence CSV.
pub const CONVERGENCE_CSV_HEADER: &str = "n,median_abs_err,max_abs_err";

/// CLI-facing error with a process exit code and a machine-readable record.
#[derive(Debug)]
pub struct CliError {
    pub kind: CliErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliErrorKind {
    /// Bad flags, malformed config or input files: exit 2.
    Usage,
    /// A run that executed but failed its invariants: exit 1.
    Failure,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: CliErrorKind::Usage,
            message: message.into(),
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self {
            kind: CliErrorKind::Failure,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            CliErrorKind::Usage => 2,
            CliErrorKind::Failure => 1,
        }
    }

    /// One-line JSON error record for stderr.
    pub fn record(&self) -> String {
        serde_json::json!({
            "error": match self.kind {
                CliErrorKind::Usage => "usage",
                CliErrorKind::Failure => "failure",
            },
            "message": self.message,
        })
        .to_string()
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::Io(_) | FrameError::Parse(_) | FrameError::Shape(_) => {
                CliError::usage(e.to_string())
            }
            other => CliError::failure(other.to_string()),
        }
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<SimulateError> for CliError {
    fn from(e: SimulateError) -> Self {
        match e {
            SimulateError::Io(_) | SimulateError::Parse(_) => CliError::usage(e.to_string()),
            SimulateError::ShiftTooSmall { .. } => CliError::failure(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<ReconstructError> for CliError {
    fn from(e: ReconstructError) -> Self {
        CliError::failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Where the ground-truth signal comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalSource {
    /// A serialized [`SignalSpec`]; its embedded grid travels with it.
    File(PathBuf),
    /// Random coefficients on the leftmost window indices.
    Random {
        count: usize,
        magnitude: f64,
        seed: u64,
    },
}

/// Where continuous-domain evaluations are probed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalProbes {
    /// Grid points for sample comparisons; midpoints between grid points for
    /// convergence studies.
    Grid,
    /// Explicit `[re, im]` pairs.
    Explicit(Vec<[f64; 2]>),
}

/// Which measurement frame to use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameSource {
    /// Builtin K=2 four-vector frame.
    BuiltinK2,
    /// Builtin K=3 nine-vector SIC frame.
    BuiltinSic3,
    File(PathBuf),
}

impl FrameSource {
    pub fn build(&self) -> Result<(MeasurementFrame, String), CliError> {
        Ok(match self {
            FrameSource::BuiltinK2 => (paper_frame_k2(), "builtin:k2".to_string()),
            FrameSource::BuiltinSic3 => (sic_frame_k3(), "builtin:sic3".to_string()),
            FrameSource::File(path) => (
                crate::frames::load_frame(path)?,
                format!("file:{}", path.display()),
            ),
        })
    }
}

/// One experiment manifest. Serialized as JSON with these exact field names;
/// CLI flags override individual values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Points per block.
    pub k: usize,
    /// Overlap between consecutive blocks.
    pub a: usize,
    /// Declared signal support length `T`.
    pub t: f64,
    /// Grid type length `T~` (>= `T`).
    pub t_tilde: f64,
    /// Test-signal type length `T'` (needed for the augmented mode).
    pub t_prime: Option<f64>,
    /// Constant imaginary shift of the measurement grid.
    pub shift_h: f64,
    /// Free strip parameter `H_u` of the cosine test signal.
    pub h_u: f64,
    /// Test-signal amplitude; `None` selects it automatically.
    pub d: Option<f64>,
    pub n_range: (i64, i64),
    pub truncation_n: usize,
    pub overlap_tol: f64,
    pub noise_sigma: f64,
    pub seed: u64,
    pub mode: Mode,
    pub signal: SignalSource,
    pub eval_probes: EvalProbes,
    pub frame: FrameSource,
    pub output_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            k: 2,
            a: 1,
            t: 2.0 * std::f64::consts::PI,
            t_tilde: 2.0 * std::f64::consts::PI,
            t_prime: None,
            shift_h: 0.0,
            h_u: 1.0,
            d: None,
            n_range: (0, 62),
            truncation_n: 64,
            overlap_tol: crate::reconstruct::DEFAULT_OVERLAP_TOL,
            noise_sigma: 0.0,
            seed: 1,
            mode: Mode::LpSeries,
            signal: SignalSource::Random {
                count: 64,
                magnitude: 1.0,
                seed: 7,
            },
            eval_probes: EvalProbes::Grid,
            frame: FrameSource::BuiltinK2,
            output_dir: None,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::usage(format!("cannot read config: {e}")))?;
        let config: Self = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("cannot parse config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.k < 2 || self.a < 1 || self.a >= self.k {
            return Err(CliError::usage(format!(
                "need K >= 2 and 1 <= a <= K-1, got K = {}, a = {}",
                self.k, self.a
            )));
        }
        if !self.t.is_finite() || self.t <= 0.0 || self.t_tilde < self.t {
            return Err(CliError::usage(format!(
                "need 0 < T <= T~, got T = {}, T~ = {}",
                self.t, self.t_tilde
            )));
        }
        if self.n_range.0 > self.n_range.1 {
            return Err(CliError::usage(format!(
                "empty block window [{}, {}]",
                self.n_range.0, self.n_range.1
            )));
        }
        if self.mode == Mode::AugmentedCorollary {
            match self.t_prime {
                Some(tp) if self.t < tp && tp < self.t_tilde => {}
                Some(tp) => {
                    return Err(CliError::usage(format!(
                        "augmented mode needs T < T' < T~, got T = {}, T' = {}, T~ = {}",
                        self.t, tp, self.t_tilde
                    )))
                }
                None => {
                    return Err(CliError::usage(
                        "augmented mode needs t_prime to be set".to_string(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Deterministic identifier used in metrics rows and file names.
    pub fn run_id(&self) -> String {
        let mode = match self.mode {
            Mode::LpSeries => "lp",
            Mode::BoundedSeries => "bounded",
            Mode::AugmentedCorollary => "augmented",
        };
        format!("k{}a{}s{}-{}", self.k, self.a, self.seed, mode)
    }

    /// Resolve the output directory: config value, else `PHASELESS_OUT_DIR`,
    /// else `./phaseless-out`.
    pub fn resolve_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("phaseless-out"))
    }

    /// The measurement grid described by this config.
    pub fn measurement_grid(&self) -> Result<InterpolationGrid, CliError> {
        Ok(InterpolationGrid::new(
            self.k,
            self.a,
            self.t_tilde,
            self.shift_h,
            self.n_range,
        )?)
    }

    fn reconstruction_config(&self, eval_points: Vec<Complex64>) -> ReconstructionConfig {
        ReconstructionConfig {
            overlap_tol: self.overlap_tol,
            truncation_n: self.truncation_n,
            eval_points,
            mode: self.mode,
            t_prime: self.t_prime,
            anchor_override: None,
            use_eig_factorization: false,
        }
    }

    /// Ground-truth signal. In augmented mode a random signal lives on its
    /// own support-`T` lattice (so its exponential type stays below `T'`);
    /// otherwise it lives on the measurement grid.
    fn build_signal(&self, meas_grid: &InterpolationGrid) -> Result<SignalSpec, CliError> {
        match &self.signal {
            SignalSource::File(path) => Ok(SignalSpec::load(path)?),
            SignalSource::Random {
                count,
                magnitude,
                seed,
            } => {
                let grid = if self.mode == Mode::AugmentedCorollary {
                    base_signal_grid(self.t, meas_grid)?
                } else {
                    meas_grid.clone()
                };
                let available = grid.global_indices().len();
                Ok(random_signal(&grid, (*count).min(available), *magnitude, *seed)?)
            }
        }
    }
}

/// Support-`T` lattice spanning the real extent of the measurement window,
/// used as the home of augmented-mode ground truth.
pub fn base_signal_grid(
    t: f64,
    meas_grid: &InterpolationGrid,
) -> Result<InterpolationGrid, CliError> {
    let (lo_m, hi_m) = meas_grid.global_index_range();
    let meas_spacing = meas_grid.spacing();
    let base_spacing = 2.0 * std::f64::consts::PI / t;
    let lo = (lo_m as f64 * meas_spacing / base_spacing).ceil() as i64;
    let hi = (hi_m as f64 * meas_spacing / base_spacing).floor() as i64 - 1;
    if lo > hi {
        return Err(CliError::usage(
            "measurement window too narrow to host a support-T signal".to_string(),
        ));
    }
    Ok(InterpolationGrid::new(2, 1, t, 0.0, (lo, hi))?)
}

/// Evaluate a signal at every grid point of the window.
pub fn sample_map(
    eval: impl Fn(Complex64) -> Complex64,
    grid: &InterpolationGrid,
) -> BTreeMap<i64, Complex64> {
    grid.global_indices()
        .into_iter()
        .map(|m| (m, eval(grid.point(m))))
        .collect()
}

fn probe_points(config: &ExperimentConfig, grid: &InterpolationGrid, midpoints: bool) -> Vec<Complex64> {
    match &config.eval_probes {
        EvalProbes::Grid => {
            let indices = grid.global_indices();
            if midpoints {
                indices
                    .windows(2)
                    .map(|w| (grid.point(w[0]) + grid.point(w[1])) * 0.5)
                    .collect()
            } else {
                indices.into_iter().map(|m| grid.point(m)).collect()
            }
        }
        EvalProbes::Explicit(points) => points
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    }
}

/// Outcome of `validate-frame`.
pub fn cmd_validate_frame(source: &FrameSource, tol: f64) -> Result<ValidationReport, CliError> {
    let frame = match source {
        FrameSource::File(path) => load_frame_raw(path)?,
        FrameSource::BuiltinK2 => paper_frame_k2(),
        FrameSource::BuiltinSic3 => sic_frame_k3(),
    };
    Ok(validate_frame(&frame, tol))
}

/// Everything a simulation run produces.
pub struct SimulationRun {
    pub signal: SignalSpec,
    pub augmentation: Option<AugmentedSignal>,
    pub measurements: MeasurementSet,
    pub signal_path: PathBuf,
    pub measurement_path: PathBuf,
    pub augmentation_path: Option<PathBuf>,
}

#[derive(Serialize)]
struct AugmentationRecord {
    d: f64,
    t_prime: f64,
    h_u: f64,
    a_u: f64,
    m_sup: f64,
    strip_height_h: f64,
    grid_shift_h: f64,
}

/// Simulate measurements per the config and write `signal.json`,
/// `measurements.json`, and (in augmented mode) `augmentation.json`.
pub fn cmd_simulate(config: &ExperimentConfig) -> Result<SimulationRun, CliError> {
    config.validate()?;
    let meas_grid = config.measurement_grid()?;
    let (frame, frame_id) = config.frame.build()?;
    let signal = config.build_signal(&meas_grid)?;

    let out_dir = config.resolve_output_dir();
    std::fs::create_dir_all(&out_dir)?;

    let (augmentation, measurements) = match config.mode {
        Mode::AugmentedCorollary => {
            let t_prime = config.t_prime.expect("validated above");
            let aug = augment(signal.clone(), &meas_grid, t_prime, config.h_u, config.d)?;
            let meas = measure(
                |z| aug.eval(z),
                &meas_grid,
                &frame,
                &frame_id,
                config.noise_sigma,
                config.seed,
            )?;
            (Some(aug), meas)
        }
        _ => {
            let meas = measure(
                |z| signal.eval(z),
                &meas_grid,
                &frame,
                &frame_id,
                config.noise_sigma,
                config.seed,
            )?;
            (None, meas)
        }
    };

    let signal_path = out_dir.join("signal.json");
    signal.save(&signal_path)?;
    let measurement_path = out_dir.join("measurements.json");
    measurements.save(&measurement_path)?;
    let augmentation_path = match &augmentation {
        Some(aug) => {
            let record = AugmentationRecord {
                d: aug.amplitude(),
                t_prime: aug.t_prime(),
                h_u: aug.h_u(),
                a_u: aug.a_u(),
                m_sup: aug.m_sup(),
                strip_height_h: aug.strip_height(),
                grid_shift_h: meas_grid.shift_h(),
            };
            let path = out_dir.join("augmentation.json");
            std::fs::write(&path, serde_json::to_string_pretty(&record).unwrap())?;
            Some(path)
        }
        None => None,
    };

    Ok(SimulationRun {
        signal,
        augmentation,
        measurements,
        signal_path,
        measurement_path,
        augmentation_path,
    })
}

/// One finished reconstruction, with metrics when ground truth was at hand.
pub struct ReconstructionRun {
    pub result: RecoveryResult,
    pub metrics: Option<AlignmentMetrics>,
    pub recovery_path: PathBuf,
    pub metrics_path: Option<PathBuf>,
}

fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        // Debug formatting is the shortest round-trip representation and
        // switches to exponent notation where that is shorter.
        format!("{v:?}")
    }
}

/// Fixed-order metrics row (see [`METRICS_CSV_HEADER`]).
pub fn metrics_csv(
    config: &ExperimentConfig,
    metrics: &AlignmentMetrics,
    n_phasebreaks: usize,
) -> String {
    let mut row = String::new();
    let _ = write!(
        row,
        "{},{},{},{},{},{},{},{},{},{}",
        config.run_id(),
        config.k,
        config.a,
        format_float(config.t_tilde / config.t),
        config.truncation_n,
        format_float(config.noise_sigma),
        format_float(metrics.rel_l2),
        format_float(metrics.max_abs),
        format_float(metrics.theta),
        n_phasebreaks,
    );
    format!("{METRICS_CSV_HEADER}\n{row}\n")
}

/// Reconstruct from a measurement set; compare against truth when given.
///
/// `truth_eval` must evaluate the signal the measurements were actually taken
/// from (the augmented sum in augmented mode).
pub fn run_reconstruction(
    config: &ExperimentConfig,
    measurements: &MeasurementSet,
    truth: Option<&dyn Fn(Complex64) -> Complex64>,
) -> Result<ReconstructionRun, CliError> {
    let (frame, _) = config.frame.build()?;
    let grid = measurements.grid().clone();
    let recon_config = config.reconstruction_config(probe_points(config, &grid, false));
    let result = recover(measurements, &frame, &recon_config)?;

    let out_dir = config.resolve_output_dir();
    std::fs::create_dir_all(&out_dir)?;
    let recovery_path = out_dir.join("recovery.json");
    result.save(&recovery_path)?;

    let mut metrics = None;
    let mut metrics_path = None;
    if let Some(truth_eval) = truth {
        let truth_samples = sample_map(truth_eval, &grid);
        let aligned = align_global_phase(&result.samples, &truth_samples)?;
        let path = out_dir.join("metrics.csv");
        std::fs::write(&path, metrics_csv(config, &aligned, result.failures.len()))?;
        metrics = Some(aligned);
        metrics_path = Some(path);
    }

    // In augmented mode, additionally evaluate the test-signal-subtracted
    // reconstruction at the probe points. The amplitude must be known; an
    // e2e run threads the auto-chosen one through config.d.
    if config.mode == Mode::AugmentedCorollary {
        if let Some(d) = config.d {
            let params = TestSignalParams {
                d,
                t_prime: config.t_prime.expect("validated"),
            };
            let values = subtract_test_signal(&result, &params, &grid, &recon_config)?;
            let path = out_dir.join("xtilde.json");
            let rows: Vec<[f64; 4]> = values
                .iter()
                .map(|(z, v)| [z.re, z.im, v.re, v.im])
                .collect();
            std::fs::write(&path, serde_json::to_string_pretty(&rows).unwrap())?;
        }
    }

    Ok(ReconstructionRun {
        result,
        metrics,
        recovery_path,
        metrics_path,
    })
}

/// Load measurements (and optional truth signal) from files and reconstruct.
pub fn cmd_reconstruct(
    config: &ExperimentConfig,
    measurement_path: &Path,
    truth_path: Option<&Path>,
) -> Result<ReconstructionRun, CliError> {
    let measurements = MeasurementSet::load(measurement_path)?;
    let truth_signal = truth_path.map(SignalSpec::load).transpose()?;
    match (&truth_signal, config.mode) {
        (Some(signal), Mode::AugmentedCorollary) => {
            let d = config.d.ok_or_else(|| {
                CliError::usage(
                    "augmented reconstruction against truth needs the amplitude d \
                     (see augmentation.json from the simulate run)"
                        .to_string(),
                )
            })?;
            let params = TestSignalParams {
                d,
                t_prime: config.t_prime.expect("validated"),
            };
            let eval = move |z: Complex64| signal.eval(z) + crate::simulate::eval_test_signal(&params, z);
            run_reconstruction(config, &measurements, Some(&eval))
        }
        (Some(signal), _) => {
            let eval = move |z: Complex64| signal.eval(z);
            run_reconstruction(config, &measurements, Some(&eval))
        }
        (None, _) => run_reconstruction(config, &measurements, None),
    }
}

/// Simulate, reconstruct and align in one deterministic run.
pub fn cmd_e2e(config: &ExperimentConfig) -> Result<(SimulationRun, ReconstructionRun), CliError> {
    let sim = cmd_simulate(config)?;
    // Thread the auto-chosen amplitude through so the x~ output is written.
    let mut effective = config.clone();
    if let Some(aug) = &sim.augmentation {
        effective.d = Some(aug.amplitude());
    }
    let rec = match (&sim.augmentation, &sim.signal) {
        (Some(aug), _) => {
            let aug = aug.clone();
            let eval = move |z: Complex64| aug.eval(z);
            run_reconstruction(&effective, &sim.measurements, Some(&eval))?
        }
        (None, signal) => {
            let signal = signal.clone();
            let eval = move |z: Complex64| signal.eval(z);
            run_reconstruction(&effective, &sim.measurements, Some(&eval))?
        }
    };
    Ok((sim, rec))
}

/// Sampling-rate table `R / R_Ny` over the requested parameter lists,
/// sorted by `(k, a, oversampling)`. Invalid combinations are skipped.
pub fn cmd_rate_table(
    k_list: &[usize],
    a_list: &[usize],
    oversampling_list: &[f64],
) -> Result<String, CliError> {
    if k_list.is_empty() || a_list.is_empty() || oversampling_list.is_empty() {
        return Err(CliError::usage("rate-table needs non-empty k, a, and oversampling lists"));
    }
    let mut k_sorted = k_list.to_vec();
    k_sorted.sort_unstable();
    k_sorted.dedup();
    let mut a_sorted = a_list.to_vec();
    a_sorted.sort_unstable();
    a_sorted.dedup();
    let mut ov_sorted = oversampling_list.to_vec();
    ov_sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ov_sorted.dedup();

    let mut out = String::from(RATE_CSV_HEADER);
    out.push('\n');
    for &k in &k_sorted {
        for &a in &a_sorted {
            if a >= k {
                continue;
            }
            for &ov in &ov_sorted {
                let ratio = sampling_rate_ratio(k, a, ov, 1.0)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                let _ = writeln!(out, "{k},{a},{},{}", format_float(ov), format_float(ratio));
            }
        }
    }
    Ok(out)
}

/// Interpolation error versus truncation index `N`: simulate per the config,
/// recover, align, then for each `N` evaluate the truncated series at the
/// probe points against the exact signal.
pub fn cmd_convergence(config: &ExperimentConfig, n_list: &[usize]) -> Result<String, CliError> {
    if n_list.is_empty() {
        return Err(CliError::usage("convergence needs a non-empty N list"));
    }
    if config.mode == Mode::AugmentedCorollary {
        return Err(CliError::usage(
            "convergence runs on the plain or bounded series; use lp-series or bounded-series mode",
        ));
    }
    config.validate()?;
    let grid = config.measurement_grid()?;
    let (frame, frame_id) = config.frame.build()?;
    let signal = config.build_signal(&grid)?;
    let measurements = measure(
        |z| signal.eval(z),
        &grid,
        &frame,
        &frame_id,
        config.noise_sigma,
        config.seed,
    )?;
    let recon_config = config.reconstruction_config(Vec::new());
    let result = recover(&measurements, &frame, &recon_config)?;

    // Remove the global phase once, from the grid samples.
    let truth_samples = sample_map(|z| signal.eval(z), &grid);
    let aligned = align_global_phase(&result.samples, &truth_samples)?;
    let rotation = Complex64::from_polar(1.0, -aligned.theta);
    let rotated: BTreeMap<i64, Complex64> = result
        .samples
        .iter()
        .map(|(&k, &v)| (k, v * rotation))
        .collect();

    let probes = probe_points(config, &grid, true);
    let mut out = String::from(CONVERGENCE_CSV_HEADER);
    out.push('\n');
    for &n in n_list {
        let mut cfg = recon_config.clone();
        cfg.truncation_n = n;
        let mut errors: Vec<f64> = probes
            .iter()
            .map(|&z| {
                let approx = match config.mode {
                    Mode::BoundedSeries => interpolate_bounded(&rotated, &grid, z, &cfg)
                        .map_err(CliError::from),
                    _ => Ok(interpolate_fourier(&rotated, &grid, z, &cfg)),
                }?;
                Ok::<f64, CliError>((approx - signal.eval(z)).norm())
            })
            .collect::<Result<_, _>>()?;
        errors.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let median = if errors.is_empty() {
            0.0
        } else {
            errors[errors.len() / 2]
        };
        let max = errors.last().copied().unwrap_or(0.0);
        let _ = writeln!(out, "{n},{},{}", format_float(median), format_float(max));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let config = ExperimentConfig::default();
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn config_validation_rejects_bad_geometry() {
        let config = ExperimentConfig {
            a: 2,
            ..Default::default()
        };
        assert!(config.validate().is_err());

        let config = ExperimentConfig {
            t_tilde: 1.0,
            ..Default::default()
        };
        assert!(config.validate().is_err());

        let config = ExperimentConfig {
            mode: Mode::AugmentedCorollary,
            ..Default::default()
        };
        assert!(config.validate().is_err(), "augmented mode needs t_prime");
    }

    #[test]
    fn rate_table_contains_reference_rows() {
        let csv = cmd_rate_table(&[2, 3], &[1], &[1.0, 1.1]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], RATE_CSV_HEADER);
        assert!(lines.contains(&"2,1,1.0,4.0"));
        assert!(lines.contains(&"2,1,1.1,4.4"));
        assert!(lines.contains(&"3,1,1.0,4.5"));
        assert!(cmd_rate_table(&[], &[1], &[1.0]).is_err());
    }

    #[test]
    fn validate_frame_command_on_builtins() {
        let report = cmd_validate_frame(&FrameSource::BuiltinK2, 1e-12).unwrap();
        assert!(report.pass);
        let report = cmd_validate_frame(&FrameSource::BuiltinSic3, 1e-12).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn e2e_run_writes_artifacts_and_aligns() {
        let dir = tempfile::tempdir().unwrap();
        let config = ExperimentConfig {
            n_range: (0, 14),
            signal: SignalSource::Random {
                count: 16,
                magnitude: 1.0,
                seed: 3,
            },
            output_dir: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let (sim, rec) = cmd_e2e(&config).unwrap();
        assert!(sim.signal_path.exists());
        assert!(sim.measurement_path.exists());
        assert!(rec.recovery_path.exists());
        let metrics = rec.metrics.unwrap();
        assert!(metrics.rel_l2 <= 1e-8, "rel_l2 = {}", metrics.rel_l2);
        assert!(rec.result.failures.is_empty());
        let csv = std::fs::read_to_string(rec.metrics_path.unwrap()).unwrap();
        assert!(csv.starts_with(METRICS_CSV_HEADER));
    }

    #[test]
    fn e2e_outputs_are_byte_deterministic() {
        let run = |dir: &Path| {
            let config = ExperimentConfig {
                n_range: (0, 9),
                noise_sigma: 0.01,
                signal: SignalSource::Random {
                    count: 10,
                    magnitude: 1.0,
                    seed: 5,
                },
                output_dir: Some(dir.to_path_buf()),
                ..Default::default()
            };
            cmd_e2e(&config).unwrap();
            [
                std::fs::read(dir.join("signal.json")).unwrap(),
                std::fs::read(dir.join("measurements.json")).unwrap(),
                std::fs::read(dir.join("recovery.json")).unwrap(),
                std::fs::read(dir.join("metrics.csv")).unwrap(),
            ]
        };
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        assert_eq!(run(dir_a.path()), run(dir_b.path()));
    }

    #[test]
    fn convergence_errors_shrink() {
        let dir = tempfile::tempdir().unwrap();
        let config = ExperimentConfig {
            n_range: (-20, 20),
            signal: SignalSource::Random {
                count: 41,
                magnitude: 1.0,
                seed: 9,
            },
            output_dir: Some(dir.path().to_path_buf()),
            ..Default::default()
        };
        let csv = cmd_convergence(&config, &[4, 16, 42]).unwrap();
        let rows: Vec<Vec<f64>> = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[0][1] >= rows[1][1]);
        assert!(rows[1][1] >= rows[2][1]);
        // N covering the full support makes the series exact.
        assert!(rows[2][1] <= 1e-10, "median = {}", rows[2][1]);
        assert!(cmd_convergence(&config, &[]).is_err());
    }
}
