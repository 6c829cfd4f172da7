//! Modulation-coefficient frames and finite-dimensional block recovery.
//!
//! Each measurement branch projects a block vector `x` in `C^K` onto one
//! frame vector and records the squared modulus. When the `M = K^2` vectors
//! form a 2-uniform `M/K`-tight frame, the rank-one matrix `x x*` (and with
//! it `x` up to a unimodular factor) is recovered by a single linear
//! formula, no iteration involved.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hermitian::HermitianMatrix;

/// Validation tolerance applied when loading frames from disk.
pub const DEFAULT_FRAME_TOL: f64 = 1e-10;

/// Diagonal entries below `DEFAULT_DIAG_TOL * trace(Q)` are treated as zero
/// references during factorization.
pub const DEFAULT_DIAG_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("failed to read frame file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse frame file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("frame shape invalid: {0}")]
    Shape(String),
    #[error("frame invariants violated: {0}")]
    Invalid(ValidationReport),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error(
        "reference entry {index} is numerically zero: diagonal {diagonal:.3e} <= {threshold:.3e}"
    )]
    ZeroReference {
        index: usize,
        diagonal: f64,
        threshold: f64,
    },
}

/// A family of `M` unit-norm vectors in `C^K` used as measurement branches.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementFrame {
    k: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl MeasurementFrame {
    /// Build from raw vectors; only shape is checked, invariants are the
    /// caller's business (see [`validate_frame`]).
    pub fn from_vectors(vectors: Vec<Vec<Complex64>>) -> Result<Self, FrameError> {
        let k = vectors.first().map(Vec::len).unwrap_or(0);
        if k == 0 {
            return Err(FrameError::Shape("frame must contain vectors".into()));
        }
        if vectors.iter().any(|v| v.len() != k) {
            return Err(FrameError::Shape("all vectors must share one length".into()));
        }
        Ok(Self { k, vectors })
    }

    /// Space dimension `K`.
    pub fn dim(&self) -> usize {
        self.k
    }

    /// Number of vectors `M`.
    pub fn vector_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

/// The `K = 2` frame used throughout: four vectors assembled from
/// `a = sqrt((1 - 1/sqrt(3))/2)` and `b = e^{i 5 pi / 4} sqrt((1 + 1/sqrt(3))/2)`.
pub fn paper_frame_k2() -> MeasurementFrame {
    let inv_sqrt3 = 1.0 / 3.0f64.sqrt();
    let a = Complex64::new((0.5 * (1.0 - inv_sqrt3)).sqrt(), 0.0);
    let b = Complex64::from_polar(
        (0.5 * (1.0 + inv_sqrt3)).sqrt(),
        5.0 * std::f64::consts::FRAC_PI_4,
    );
    MeasurementFrame {
        k: 2,
        vectors: vec![vec![a, b], vec![b, a], vec![a, -b], vec![-b, a]],
    }
}

/// A `K = 3` frame: the nine-vector Weyl-Heisenberg orbit of the fiducial
/// `(0, 1, -1)/sqrt(2)`, a symmetric informationally complete family with
/// pairwise `|<alpha_i, alpha_j>|^2 = 1/4`.
pub fn sic_frame_k3() -> MeasurementFrame {
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    let mut vectors = Vec::with_capacity(9);
    for shift in 0..3usize {
        for q in 0..3u32 {
            let base = [
                Complex64::new(0.0, 0.0),
                omega.powu(q) * inv_sqrt2,
                -omega.powu(2 * q) * inv_sqrt2,
            ];
            vectors.push((0..3).map(|i| base[(3 + i - shift) % 3]).collect());
        }
    }
    MeasurementFrame { k: 3, vectors }
}

#[derive(Serialize, Deserialize)]
struct FrameFile {
    k: usize,
    m: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

/// Load a frame from a JSON file (`{"k":.., "m":.., "vectors":[[[re,im],..],..]}`)
/// and validate its invariants at [`DEFAULT_FRAME_TOL`].
pub fn load_frame(path: impl AsRef<Path>) -> Result<MeasurementFrame, FrameError> {
    let frame = load_frame_raw(path)?;
    let report = validate_frame(&frame, DEFAULT_FRAME_TOL);
    if !report.pass {
        return Err(FrameError::Invalid(report));
    }
    Ok(frame)
}

/// Parse a frame file checking shape only, leaving invariant validation to
/// the caller.
pub fn load_frame_raw(path: impl AsRef<Path>) -> Result<MeasurementFrame, FrameError> {
    let text = std::fs::read_to_string(path)?;
    let file: FrameFile = serde_json::from_str(&text)?;
    if file.vectors.len() != file.m {
        return Err(FrameError::Shape(format!(
            "header claims m = {} but {} vectors present",
            file.m,
            file.vectors.len()
        )));
    }
    if file.vectors.iter().any(|v| v.len() != file.k) {
        return Err(FrameError::Shape(format!(
            "header claims k = {} but a vector has different length",
            file.k
        )));
    }
    if file.m != file.k * file.k {
        return Err(FrameError::Shape(format!(
            "expected m = k^2 vectors, got k = {}, m = {}",
            file.k, file.m
        )));
    }
    Ok(MeasurementFrame {
        k: file.k,
        vectors: file
            .vectors
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect(),
    })
}

/// Write a frame as JSON with shortest round-trip decimals.
pub fn save_frame(frame: &MeasurementFrame, path: impl AsRef<Path>) -> Result<(), FrameError> {
    let file = FrameFile {
        k: frame.k,
        m: frame.vector_count(),
        vectors: frame
            .vectors
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Deviations of a frame from the unit-norm 2-uniform tight-frame invariants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub k: usize,
    pub m: usize,
    /// `max_m | ||alpha_m|| - 1 |`
    pub unit_norm_dev: f64,
    /// `max_ij | (sum_m alpha_m alpha_m*)_ij - (M/K) delta_ij |`
    pub tightness_dev: f64,
    /// Max deviation of `|<alpha_i, alpha_j>|^2` from its mean over pairs.
    pub uniformity_dev: f64,
    /// Mean of `|<alpha_i, alpha_j>|^2` over all pairs `i != j`.
    pub pair_constant: f64,
    /// The tight-frame constant `M/K` the frame is checked against.
    pub tight_constant: f64,
    pub tol: f64,
    pub pass: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K={} M={} norm_dev={:.3e} tight_dev={:.3e} uniform_dev={:.3e} pair_const={:.6} {}",
            self.k,
            self.m,
            self.unit_norm_dev,
            self.tightness_dev,
            self.uniformity_dev,
            self.pair_constant,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Inner product with the conjugate on the second argument.
fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Check unit norms, tightness `sum_m alpha_m alpha_m* = (M/K) I`, and
/// 2-uniformity (constant pairwise `|<alpha_i, alpha_j>|^2`).
pub fn validate_frame(frame: &MeasurementFrame, tol: f64) -> ValidationReport {
    let k = frame.dim();
    let m = frame.vector_count();
    let tight_constant = m as f64 / k as f64;

    let unit_norm_dev = frame
        .vectors
        .iter()
        .map(|v| (inner(v, v).re.sqrt() - 1.0).abs())
        .fold(0.0, f64::max);

    let mut tightness_dev: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let sum: Complex64 = frame.vectors.iter().map(|v| v[i] * v[j].conj()).sum();
            let target = if i == j {
                Complex64::new(tight_constant, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            tightness_dev = tightness_dev.max((sum - target).norm());
        }
    }

    let mut pair_moduli = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            pair_moduli.push(inner(&frame.vectors[i], &frame.vectors[j]).norm_sqr());
        }
    }
    let pair_constant = if pair_moduli.is_empty() {
        0.0
    } else {
        pair_moduli.iter().sum::<f64>() / pair_moduli.len() as f64
    };
    let uniformity_dev = pair_moduli
        .iter()
        .map(|&p| (p - pair_constant).abs())
        .fold(0.0, f64::max);

    let pass = unit_norm_dev <= tol && tightness_dev <= tol && uniformity_dev <= tol;
    ValidationReport {
        k,
        m,
        unit_norm_dev,
        tightness_dev,
        uniformity_dev,
        pair_constant,
        tight_constant,
        tol,
        pass,
    }
}

/// Intensity measurements `|<x, alpha_m>|^2` for `m = 1..M`.
pub fn intensities(x: &[Complex64], frame: &MeasurementFrame) -> Result<Vec<f64>, FrameError> {
    if x.len() != frame.dim() {
        return Err(FrameError::DimMismatch {
            expected: frame.dim(),
            got: x.len(),
        });
    }
    Ok(frame.vectors.iter().map(|alpha| inner(x, alpha).norm_sqr()).collect())
}

/// Linear rank-one recovery from intensities:
/// `Q = (K+1)/K sum_m c_m alpha_m alpha_m* - (1/K) (sum_m c_m) I`.
///
/// For noiseless `c = intensities(x)` over a valid frame, `Q = x x*` exactly.
pub fn recover_rank1(c: &[f64], frame: &MeasurementFrame) -> Result<HermitianMatrix, FrameError> {
    let m = frame.vector_count();
    if c.len() != m {
        return Err(FrameError::DimMismatch {
            expected: m,
            got: c.len(),
        });
    }
    let k = frame.dim();
    let kf = k as f64;
    let total: f64 = c.iter().sum();
    let mut q = HermitianMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for (weight, alpha) in c.iter().zip(&frame.vectors) {
                acc += weight * alpha[i] * alpha[j].conj();
            }
            let mut value = acc * ((kf + 1.0) / kf);
            if i == j {
                value -= total / kf;
            }
            q.set_sym(i, j, value);
        }
    }
    Ok(q)
}

/// Read `x` off a (near) rank-one Hermitian `Q = x x*` once the phase of one
/// entry is pinned: `x_i = sqrt(Q_ii) e^{i phi}` and
/// `x_k = sqrt(Q_kk) e^{i (phi - arg Q_ik)}` for `k != i`.
///
/// Diagonal entries at or below `DEFAULT_DIAG_TOL * trace(Q)` are read as
/// true zeros; taking their square root would turn recovery roundoff into
/// `sqrt(eps)`-sized ghost components.
pub fn factor_rank1(
    q: &HermitianMatrix,
    ref_index: usize,
    ref_phase: f64,
) -> Result<Vec<Complex64>, FrameError> {
    let trace = q.trace();
    let diagonal = q.get(ref_index, ref_index).re;
    let threshold = DEFAULT_DIAG_TOL * trace;
    if diagonal <= threshold || diagonal <= 0.0 {
        return Err(FrameError::ZeroReference {
            index: ref_index,
            diagonal,
            threshold,
        });
    }
    let k = q.dim();
    let mut x = vec![Complex64::new(0.0, 0.0); k];
    x[ref_index] = Complex64::from_polar(diagonal.sqrt(), ref_phase);
    for (j, slot) in x.iter_mut().enumerate() {
        if j == ref_index {
            continue;
        }
        let qjj = q.get(j, j).re;
        if qjj <= threshold {
            continue;
        }
        *slot = Complex64::from_polar(qjj.sqrt(), ref_phase - q.get(ref_index, j).arg());
    }
    Ok(x)
}

/// Leading-eigenpair factorization, the robust alternative for matrices that
/// are not numerically rank one (noisy intensities). Same phase convention as
/// [`factor_rank1`].
pub fn factor_rank1_eig(
    q: &HermitianMatrix,
    ref_index: usize,
    ref_phase: f64,
) -> Result<Vec<Complex64>, FrameError> {
    let eig = q.eigen();
    let lead = eig.values[0].max(0.0).sqrt();
    let mut x: Vec<Complex64> = eig.vectors[0].iter().map(|v| v * lead).collect();
    let reference = x[ref_index];
    let trace = q.trace();
    if reference.norm_sqr() <= DEFAULT_DIAG_TOL * trace || reference.norm() == 0.0 {
        return Err(FrameError::ZeroReference {
            index: ref_index,
            diagonal: reference.norm_sqr(),
            threshold: DEFAULT_DIAG_TOL * trace,
        });
    }
    let rotation = Complex64::from_polar(1.0, ref_phase - reference.arg());
    for value in &mut x {
        *value *= rotation;
    }
    Ok(x)
}

/// Optimal global phase aligning `candidate` to `target`:
/// `theta = arg(sum_j candidate_j conj(target_j))` minimizes
/// `|| candidate e^{-i theta} - target ||_2`.
pub fn align_phase_vec(candidate: &[Complex64], target: &[Complex64]) -> f64 {
    candidate
        .iter()
        .zip(target)
        .map(|(c, t)| c * t.conj())
        .sum::<Complex64>()
        .arg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_vector(rng: &mut ChaCha8Rng, k: usize) -> Vec<Complex64> {
        (0..k)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn paper_frame_component_magnitudes() {
        // |a|^2 + |b|^2 = 1 by construction.
        let frame = paper_frame_k2();
        let a = frame.vectors()[0][0];
        let b = frame.vectors()[0][1];
        assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-15);
        assert_eq!(frame.dim(), 2);
        assert_eq!(frame.vector_count(), 4);
    }

    #[test]
    fn paper_frame_is_2_uniform_tight() {
        let report = validate_frame(&paper_frame_k2(), 1e-12);
        assert!(report.pass, "{report}");
        assert_eq!(report.tight_constant, 2.0);
        assert!((report.pair_constant - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sic_frame_k3_is_2_uniform_tight() {
        let report = validate_frame(&sic_frame_k3(), 1e-12);
        assert!(report.pass, "{report}");
        assert_eq!(report.tight_constant, 3.0);
        assert!((report.pair_constant - 0.25).abs() < 1e-12);
    }

    #[test]
    fn scaled_frame_fails_tightness() {
        let mut frame = paper_frame_k2();
        for v in &mut frame.vectors {
            for z in v.iter_mut() {
                *z *= 2.0;
            }
        }
        let report = validate_frame(&frame, 1e-12);
        assert!(!report.pass);
        assert!(report.tightness_dev > 1.0);
        assert!(report.unit_norm_dev > 0.5);
    }

    #[test]
    fn basis_vector_breaks_uniformity() {
        let mut frame = paper_frame_k2();
        frame.vectors[3] = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let report = validate_frame(&frame, 1e-12);
        assert!(!report.pass);
        assert!(report.uniformity_dev > 1e-3);
    }

    #[test]
    fn intensities_basic_cases() {
        let frame = paper_frame_k2();
        let zero = intensities(&[c(0.0, 0.0), c(0.0, 0.0)], &frame).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));

        // x = alpha_1 gives first intensity 1 (unit norm).
        let alpha1 = frame.vectors()[0].clone();
        let c1 = intensities(&alpha1, &frame).unwrap();
        assert!((c1[0] - 1.0).abs() < 1e-14);

        // x = e_1: intensities are |alpha_m[0]|^2.
        let e1 = intensities(&[c(1.0, 0.0), c(0.0, 0.0)], &frame).unwrap();
        for (got, alpha) in e1.iter().zip(frame.vectors()) {
            assert!((got - alpha[0].norm_sqr()).abs() < 1e-14);
        }

        assert!(matches!(
            intensities(&[c(1.0, 0.0)], &frame),
            Err(FrameError::DimMismatch { .. })
        ));
    }

    #[test]
    fn global_phase_leaves_intensities_unchanged() {
        let frame = paper_frame_k2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_vector(&mut rng, 2);
            let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
            let rotated: Vec<_> = x
                .iter()
                .map(|v| v * Complex64::from_polar(1.0, theta))
                .collect();
            let a = intensities(&x, &frame).unwrap();
            let b = intensities(&rotated, &frame).unwrap();
            for (p, q) in a.iter().zip(&b) {
                assert!((p - q).abs() < 1e-13 * (1.0 + p.abs()));
            }
        }
    }

    #[test]
    fn recover_rank1_reproduces_outer_product() {
        let frame = paper_frame_k2();
        // Unit vector e_1 -> Q = diag(1, 0).
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        let q = recover_rank1(&intensities(&e1, &frame).unwrap(), &frame).unwrap();
        assert!((q.get(0, 0) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(q.get(0, 1).norm() < 1e-12);
        assert!(q.get(1, 1).norm() < 1e-12);

        // Zero intensities -> zero matrix (linearity).
        let q0 = recover_rank1(&[0.0; 4], &frame).unwrap();
        assert!(q0.frobenius_norm() == 0.0);

        // Randomized oracle: Q = x x*.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let x = random_vector(&mut rng, 2);
            let q = recover_rank1(&intensities(&x, &frame).unwrap(), &frame).unwrap();
            let oracle = HermitianMatrix::from_outer(&x);
            let norm_sqr: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            let mut dev: f64 = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    dev = dev.max((q.get(i, j) - oracle.get(i, j)).norm());
                }
            }
            assert!(dev <= 1e-10 * norm_sqr.max(1e-30));
        }
    }

    #[test]
    fn recover_rank1_is_linear_in_intensities() {
        let frame = paper_frame_k2();
        let c1 = [0.3, 0.1, 0.9, 0.2];
        let c2 = [0.5, 0.7, 0.05, 0.4];
        let combined: Vec<f64> = c1.iter().zip(&c2).map(|(a, b)| 2.0 * a + 0.5 * b).collect();
        let q1 = recover_rank1(&c1, &frame).unwrap();
        let q2 = recover_rank1(&c2, &frame).unwrap();
        let qc = recover_rank1(&combined, &frame).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected = 2.0 * q1.get(i, j) + 0.5 * q2.get(i, j);
                assert!((qc.get(i, j) - expected).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn factor_rank1_pins_reference_phase() {
        let mut q = HermitianMatrix::zeros(2);
        q.set_sym(0, 0, c(1.0, 0.0));
        let x = factor_rank1(&q, 0, 0.0).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(x[1].norm() == 0.0);

        // Zero reference diagonal is rejected.
        let err = factor_rank1(&q, 1, 0.0).unwrap_err();
        assert!(matches!(err, FrameError::ZeroReference { index: 1, .. }));
    }

    #[test]
    fn factorization_recovers_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let x = random_vector(&mut rng, 3);
            let q = HermitianMatrix::from_outer(&x);
            let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            for ref_index in 0..3 {
                if q.get(ref_index, ref_index).re <= DEFAULT_DIAG_TOL * q.trace() {
                    continue;
                }
                for factor in [
                    factor_rank1(&q, ref_index, 0.4).unwrap(),
                    factor_rank1_eig(&q, ref_index, 0.4).unwrap(),
                ] {
                    let theta = align_phase_vec(&factor, &x);
                    let dev = factor
                        .iter()
                        .zip(&x)
                        .map(|(f, t)| (f * Complex64::from_polar(1.0, -theta) - t).norm())
                        .fold(0.0, f64::max);
                    assert!(dev <= 1e-9 * norm, "dev = {dev:.3e}");
                }
            }
        }
    }

    #[test]
    fn noiseless_q_is_numerically_rank_one() {
        let frame = paper_frame_k2();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 2);
            let q = recover_rank1(&intensities(&x, &frame).unwrap(), &frame).unwrap();
            let norm_sqr: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            let eig = q.eigen();
            assert!(eig.values[1].abs() <= 1e-9 * norm_sqr.max(1e-30));
        }
    }

    #[test]
    fn frame_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k2.json");
        save_frame(&paper_frame_k2(), &path).unwrap();
        let loaded = load_frame(&path).unwrap();
        assert_eq!(loaded, paper_frame_k2());
    }

    #[test]
    fn bundled_frame_files_match_builtins() {
        let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/frames");
        let k2 = load_frame(format!("{data}/paper_k2.json")).unwrap();
        assert_eq!(k2, paper_frame_k2());
        let sic = load_frame(format!("{data}/sic_k3.json")).unwrap();
        assert_eq!(sic, sic_frame_k3());
        let report = validate_frame(&sic, 1e-12);
        assert!(report.pass);
        assert!((report.pair_constant - 0.25).abs() < 1e-12);
    }

    #[test]
    fn frame_file_rejects_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        let garbled = dir.path().join("bad.json");
        std::fs::write(&garbled, "{\"k\": 2,").unwrap();
        assert!(matches!(load_frame(&garbled), Err(FrameError::Parse(_))));

        // Non-unit vector fails invariant validation.
        let invalid = dir.path().join("invalid.json");
        std::fs::write(
            &invalid,
            r#"{"k":2,"m":4,"vectors":[[[2.0,0.0],[0.0,0.0]],[[0.0,1.0],[0.0,0.0]],[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]}"#,
        )
        .unwrap();
        assert!(matches!(load_frame(&invalid), Err(FrameError::Invalid(_))));

        // Wrong vector count vs header.
        let mismatched = dir.path().join("mismatch.json");
        std::fs::write(
            &mismatched,
            r#"{"k":2,"m":4,"vectors":[[[1.0,0.0],[0.0,0.0]]]}"#,
        )
        .unwrap();
        assert!(matches!(load_frame(&mismatched), Err(FrameError::Shape(_))));
    }
}
