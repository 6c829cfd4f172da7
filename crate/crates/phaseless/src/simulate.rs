//! Ground-truth signal models, measurement synthesis, and the additive
//! test-signal construction that keeps grid values away from zero.
//!
//! Ground truth is a finite kernel expansion over a grid's points: the signal
//! value at grid point `j` IS the coefficient `c_j`, which makes end-to-end
//! oracles exact. Measurements take each block's value vector, project it on
//! every frame vector and keep squared moduli only.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{intensities, FrameError, MeasurementFrame};
use crate::grid::{GridError, InterpolationGrid};
use crate::sinetype::{cosine_lower_bound_au, kernel_psi, KernelParams, SineTypeFn};

/// Probes per lattice spacing used when estimating a sup-norm.
pub const DEFAULT_PROBE_DENSITY: usize = 64;

#[derive(Debug, Error)]
pub enum SimulateError {
    #[error("coefficient index {0} outside the grid window")]
    IndexOutOfWindow(i64),
    #[error("grid shift |h| = {shift:.4} cannot clear the zero-free strip H = {required:.4}")]
    ShiftTooSmall { shift: f64, required: f64 },
    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("requested {requested} coefficients but the window has {available} points")]
    WindowTooSmall { requested: usize, available: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// A signal given in the Fourier domain as a finite kernel expansion
/// `x(z) = sum_j c_j psi_j(z)` over the points of `grid`.
///
/// By the Kronecker property of the kernels, `x(point_j) = c_j` exactly, and
/// the expansion is entire of exponential type `t_tilde / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    grid: InterpolationGrid,
    coeffs: BTreeMap<i64, Complex64>,
    p_exponent: f64,
}

#[derive(Serialize, Deserialize)]
struct SignalFile {
    grid: InterpolationGrid,
    /// `[global index, re, im]` triples.
    coefficients: Vec<(i64, f64, f64)>,
    /// Declared signal class; "inf" selects the bounded-series reconstruction.
    p_exponent: serde_json::Value,
}

/// Build a signal from coefficients; every index must lie in the grid window.
pub fn make_signal(
    grid: &InterpolationGrid,
    coeffs: impl IntoIterator<Item = (i64, Complex64)>,
    p_exponent: f64,
) -> Result<SignalSpec, SimulateError> {
    let (lo, hi) = grid.global_index_range();
    let mut map = BTreeMap::new();
    for (index, value) in coeffs {
        if index < lo || index > hi {
            return Err(SimulateError::IndexOutOfWindow(index));
        }
        map.insert(index, value);
    }
    Ok(SignalSpec {
        grid: grid.clone(),
        coeffs: map,
        p_exponent,
    })
}

/// Random signal: `count` coefficients on the leftmost window indices with
/// magnitudes in `[0.2, 1] * magnitude` (bounded away from zero so overlap
/// points stay usable) and uniform phases.
pub fn random_signal(
    grid: &InterpolationGrid,
    count: usize,
    magnitude: f64,
    seed: u64,
) -> Result<SignalSpec, SimulateError> {
    let indices = grid.global_indices();
    if count > indices.len() {
        return Err(SimulateError::WindowTooSmall {
            requested: count,
            available: indices.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = indices.into_iter().take(count).map(|index| {
        let radius = magnitude * rng.random_range(0.2..=1.0);
        let phase = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        (index, Complex64::from_polar(radius, phase))
    });
    make_signal(grid, coeffs.collect::<Vec<_>>(), 2.0)
}

impl SignalSpec {
    pub fn grid(&self) -> &InterpolationGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn p_exponent(&self) -> f64 {
        self.p_exponent
    }

    /// Evaluate the kernel expansion anywhere in the plane. The sum is over
    /// the finitely many stored coefficients, so there is no truncation error.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let sine = self.grid.sine_type();
        let params = KernelParams::for_sine_type(&sine);
        self.eval_with(z, &sine, &params)
    }

    /// Like [`SignalSpec::eval`] but with caller-controlled kernel
    /// parameters (singularity guard width).
    pub fn eval_with_params(&self, z: Complex64, params: &KernelParams) -> Complex64 {
        self.eval_with(z, &self.grid.sine_type(), params)
    }

    fn eval_with(&self, z: Complex64, sine: &SineTypeFn, params: &KernelParams) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&index, &value)| {
                value
                    * kernel_psi(sine, self.grid.point(index), z, params)
                        .expect("grid points are zeros of the grid sine type")
            })
            .sum()
    }

    /// Estimate `sup over real xi of |x(xi)|` by dense probing of the
    /// coefficient support widened by ten lattice spacings, times a safety
    /// factor 1.5.
    pub fn sup_bound(&self, probes_per_spacing: usize) -> f64 {
        assert!(probes_per_spacing > 0, "probe density must be positive");
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let spacing = self.grid.spacing();
        let lo = (*self.coeffs.keys().next().unwrap() as f64 - 10.0) * spacing;
        let hi = (*self.coeffs.keys().next_back().unwrap() as f64 + 10.0) * spacing;
        let count = (((hi - lo) / spacing).ceil() as usize) * probes_per_spacing + 1;
        let sine = self.grid.sine_type();
        let params = KernelParams::for_sine_type(&sine);
        let step = (hi - lo) / (count - 1) as f64;
        let mut best: f64 = 0.0;
        for i in 0..count {
            let xi = lo + step * i as f64;
            best = best.max(self.eval_with(Complex64::new(xi, 0.0), &sine, &params).norm());
        }
        1.5 * best
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SimulateError> {
        let file = SignalFile {
            grid: self.grid.clone(),
            coefficients: self
                .coeffs
                .iter()
                .map(|(&i, v)| (i, v.re, v.im))
                .collect(),
            p_exponent: if self.p_exponent.is_finite() {
                serde_json::json!(self.p_exponent)
            } else {
                serde_json::json!("inf")
            },
        };
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimulateError> {
        let file: SignalFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let p_exponent = match &file.p_exponent {
            serde_json::Value::Number(n) => n.as_f64().unwrap_or(2.0),
            _ => f64::INFINITY,
        };
        make_signal(
            &file.grid,
            file.coefficients
                .into_iter()
                .map(|(i, re, im)| (i, Complex64::new(re, im))),
            p_exponent,
        )
    }
}

/// Amplitude and type length of the additive cosine test signal
/// `u(z) = D cos((T'/2) z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestSignalParams {
    pub d: f64,
    pub t_prime: f64,
}

/// Evaluate the test signal `D cos((T'/2) z)`.
pub fn eval_test_signal(params: &TestSignalParams, z: Complex64) -> Complex64 {
    let cosine = SineTypeFn::cosine(params.t_prime).expect("t_prime validated at construction");
    params.d * cosine.eval(z)
}

/// A base signal plus the cosine test signal, with the strip height `H`
/// outside which the sum is guaranteed zero-free.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedSignal {
    base: SignalSpec,
    d: f64,
    t_prime: f64,
    h_u: f64,
    /// `A_u = (1 - exp(-T' H_u / 2)) / 2`.
    a_u: f64,
    /// Probed sup-norm bound of the base signal on the real axis.
    m_sup: f64,
    /// Zero-free strip height `H = max(H_u, 2/(T'-T) ln(M / (D A_u)))`.
    h: f64,
}

/// Attach the cosine test signal to `base` so that the sum has no zeros at
/// the measurement grid's height.
///
/// `base.grid().t_tilde()` plays the role of the signal's support length `T`;
/// the ordering `T < T' < measurement T~` is required. With `d = None` the
/// amplitude is chosen automatically from the target strip height
/// `0.9 |h_measurement|`.
pub fn augment(
    base: SignalSpec,
    measurement_grid: &InterpolationGrid,
    t_prime: f64,
    h_u: f64,
    d: Option<f64>,
) -> Result<AugmentedSignal, SimulateError> {
    let t = base.grid().t_tilde();
    let t_tilde = measurement_grid.t_tilde();
    if !t_prime.is_finite() || t >= t_prime || t_prime >= t_tilde {
        return Err(SimulateError::InvalidAugmentation(format!(
            "need T < T' < T~, got T = {t}, T' = {t_prime}, T~ = {t_tilde}"
        )));
    }
    if !h_u.is_finite() || h_u <= 0.0 {
        return Err(SimulateError::InvalidAugmentation(format!(
            "H_u must be positive, got {h_u}"
        )));
    }
    let a_u = cosine_lower_bound_au(t_prime, h_u);
    let m_sup = base.sup_bound(DEFAULT_PROBE_DENSITY);
    let shift = measurement_grid.shift_h().abs();
    let d = match d {
        Some(d) if d > 0.0 => d,
        Some(d) => {
            return Err(SimulateError::InvalidAugmentation(format!(
                "amplitude D must be positive, got {d}"
            )))
        }
        None => {
            // Target H = 0.9 |h| and back out D from the strip-height bound,
            // with a factor-2 margin to keep the inequality strict.
            let h_target = 0.9 * shift;
            if m_sup <= 0.0 {
                1.0
            } else {
                2.0 * (m_sup / a_u) * (0.5 * (t - t_prime) * h_target).exp()
            }
        }
    };
    let h = if m_sup <= 0.0 {
        h_u
    } else {
        h_u.max(2.0 / (t_prime - t) * (m_sup / (d * a_u)).ln())
    };
    if shift <= h {
        return Err(SimulateError::ShiftTooSmall { shift, required: h });
    }
    Ok(AugmentedSignal {
        base,
        d,
        t_prime,
        h_u,
        a_u,
        m_sup,
        h,
    })
}

impl AugmentedSignal {
    pub fn base(&self) -> &SignalSpec {
        &self.base
    }

    pub fn amplitude(&self) -> f64 {
        self.d
    }

    pub fn t_prime(&self) -> f64 {
        self.t_prime
    }

    pub fn h_u(&self) -> f64 {
        self.h_u
    }

    pub fn a_u(&self) -> f64 {
        self.a_u
    }

    pub fn m_sup(&self) -> f64 {
        self.m_sup
    }

    /// Zero-free strip height: the sum has no zeros with `|Im z| > H`.
    pub fn strip_height(&self) -> f64 {
        self.h
    }

    pub fn test_signal_params(&self) -> TestSignalParams {
        TestSignalParams {
            d: self.d,
            t_prime: self.t_prime,
        }
    }

    /// `v(z) = x(z) + D cos((T'/2) z)`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.base.eval(z) + eval_test_signal(&self.test_signal_params(), z)
    }
}

/// Real intensity samples indexed by `(block, branch)` plus the grid and
/// frame bookkeeping needed to reconstruct without the original config.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    grid: InterpolationGrid,
    frame_id: String,
    branch_count: usize,
    noise_sigma: f64,
    samples: BTreeMap<(i64, usize), f64>,
}

#[derive(Serialize, Deserialize)]
struct MeasurementFile {
    k: usize,
    a: usize,
    beta: f64,
    t_tilde: f64,
    shift_h: f64,
    n_range: (i64, i64),
    frame_id: String,
    branch_count: usize,
    noise_sigma: f64,
    /// `[block, branch, value]` triples.
    samples: Vec<(i64, usize, f64)>,
}

impl MeasurementSet {
    pub fn grid(&self) -> &InterpolationGrid {
        &self.grid
    }

    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn noise_sigma(&self) -> f64 {
        self.noise_sigma
    }

    pub fn sample(&self, block: i64, branch: usize) -> Option<f64> {
        self.samples.get(&(block, branch)).copied()
    }

    /// All branch samples of one block, ordered by branch.
    pub fn block_samples(&self, block: i64) -> Vec<f64> {
        (0..self.branch_count)
            .map(|m| self.sample(block, m).unwrap_or(0.0))
            .collect()
    }

    pub fn samples(&self) -> &BTreeMap<(i64, usize), f64> {
        &self.samples
    }

    pub fn to_json(&self) -> Result<String, SimulateError> {
        let file = MeasurementFile {
            k: self.grid.points_per_block(),
            a: self.grid.overlap(),
            beta: self.grid.beta(),
            t_tilde: self.grid.t_tilde(),
            shift_h: self.grid.shift_h(),
            n_range: self.grid.n_range(),
            frame_id: self.frame_id.clone(),
            branch_count: self.branch_count,
            noise_sigma: self.noise_sigma,
            samples: self.samples.iter().map(|(&(n, m), &v)| (n, m, v)).collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SimulateError> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimulateError> {
        let file: MeasurementFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let grid = InterpolationGrid::new(
            file.k,
            file.a,
            file.t_tilde,
            file.shift_h,
            file.n_range,
        )?;
        Ok(Self {
            grid,
            frame_id: file.frame_id,
            branch_count: file.branch_count,
            noise_sigma: file.noise_sigma,
            samples: file
                .samples
                .into_iter()
                .map(|(n, m, v)| ((n, m), v))
                .collect(),
        })
    }
}

/// Simulate the measurement bank: for every block `n`, evaluate the signal at
/// the block's points and record `|<x_n, alpha_m>|^2` per branch.
///
/// With `noise_sigma > 0`, i.i.d. Gaussian noise is added to each intensity
/// (clamped at zero). Noise is seeded per block with `seed xor block`, so the
/// output is byte-deterministic regardless of evaluation order.
pub fn measure(
    signal_eval: impl Fn(Complex64) -> Complex64,
    grid: &InterpolationGrid,
    frame: &MeasurementFrame,
    frame_id: &str,
    noise_sigma: f64,
    seed: u64,
) -> Result<MeasurementSet, SimulateError> {
    if frame.dim() != grid.points_per_block() {
        return Err(SimulateError::Frame(FrameError::DimMismatch {
            expected: grid.points_per_block(),
            got: frame.dim(),
        }));
    }
    let (n_min, n_max) = grid.n_range();
    let mut samples = BTreeMap::new();
    for n in n_min..=n_max {
        let block = grid.block(n)?;
        let values: Vec<Complex64> = block.iter().map(|&z| signal_eval(z)).collect();
        let mut c = intensities(&values, frame)?;
        if noise_sigma > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64));
            let normal = Normal::new(0.0, noise_sigma)
                .map_err(|e| SimulateError::InvalidAugmentation(e.to_string()))?;
            for value in c.iter_mut() {
                *value = (*value + normal.sample(&mut rng)).max(0.0);
            }
        }
        for (m, value) in c.into_iter().enumerate() {
            samples.insert((n, m), value);
        }
    }
    Ok(MeasurementSet {
        grid: grid.clone(),
        frame_id: frame_id.to_string(),
        branch_count: frame.vector_count(),
        noise_sigma,
        samples,
    })
}
