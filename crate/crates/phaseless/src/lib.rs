//! Phaseless frequency sampling with structured modulations.
//!
//! This crate simulates magnitude-only (phaseless) frequency sampling of
//! time-limited signals and reconstructs them up to a global unimodular
//! constant. The measurement bank modulates the signal with `M = K^2`
//! exponential sums before intensity sampling; each sampled block of `K`
//! frequency-domain values is then recovered up to phase through a
//! 2-uniform tight frame, phases are matched across overlapping blocks, and
//! the continuous signal comes back via sine-type interpolation series.
//!
//! The pipeline, end to end:
//!
//! 1. [`grid::InterpolationGrid`] lays out the complex sampling lattice with
//!    block/overlap structure.
//! 2. [`simulate::measure`] synthesizes branch intensities
//!    `|<x_n, alpha_m>|^2` from a ground-truth signal, optionally after
//!    adding the cosine test signal ([`simulate::augment`]) that keeps every
//!    lattice value away from zero.
//! 3. [`reconstruct::recover`] inverts each block to a rank-one matrix
//!    ([`frames::recover_rank1`]), pins phases across overlaps, and
//!    [`reconstruct::interpolate_fourier`] / `interpolate_bounded`
//!    evaluate the reconstruction anywhere in the plane;
//!    [`reconstruct::synthesize_time`] returns to the time domain.
//!
//! See the crate examples for one runnable program per capability, and the
//! `phaseless` binary for a batch-oriented CLI over the same operations.

pub mod cli;
pub mod frames;
pub mod grid;
pub mod hermitian;
pub mod reconstruct;
pub mod simulate;
pub mod sinetype;

pub use frames::{
    factor_rank1, intensities, load_frame, paper_frame_k2, recover_rank1, sic_frame_k3,
    validate_frame, MeasurementFrame, ValidationReport,
};
pub use grid::{sampling_rate_ratio, GlobalIndexMap, InterpolationGrid};
pub use hermitian::HermitianMatrix;
pub use reconstruct::{
    align_global_phase, interpolate_bounded, interpolate_fourier, propagate_phase, recover,
    recover_blocks, subtract_test_signal, synthesize_time, Mode, ReconstructionConfig,
    RecoveryResult,
};
pub use simulate::{
    augment, make_signal, measure, random_signal, AugmentedSignal, MeasurementSet, SignalSpec,
};
pub use sinetype::{
    cosine_lower_bound_au, kernel_psi, kernel_psi_bounded, separation_sum, KernelParams,
    SineTypeFn, SineTypeKind,
};
