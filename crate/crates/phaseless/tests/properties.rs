//! Property tests for the algebraic invariants of the pipeline.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;

use phaseless::frames::{align_phase_vec, factor_rank1, DEFAULT_DIAG_TOL};
use phaseless::sinetype::{kernel_psi, kernel_psi_bounded, KernelParams};
use phaseless::{
    intensities, paper_frame_k2, recover_rank1, sic_frame_k3, InterpolationGrid, MeasurementFrame,
    SineTypeFn,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn component() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), -2.0..2.0f64]
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((component(), component()).prop_map(|(re, im)| c(re, im)), dim)
}

fn recovery_identity(
    frame: &MeasurementFrame,
    x: &[Complex64],
) -> Result<(), TestCaseError> {
    let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let q = recover_rank1(&intensities(x, frame).unwrap(), frame).unwrap();
    let trace = q.trace();
    let ref_index = (0..frame.dim())
        .max_by(|&i, &j| q.get(i, i).re.partial_cmp(&q.get(j, j).re).unwrap())
        .unwrap();
    if q.get(ref_index, ref_index).re <= DEFAULT_DIAG_TOL * trace {
        // Numerically zero vector; nothing to recover.
        return Ok(());
    }
    let recovered = factor_rank1(&q, ref_index, 0.0).unwrap();
    let theta = align_phase_vec(&recovered, x);
    let err: f64 = recovered
        .iter()
        .zip(x)
        .map(|(r, t)| (r * Complex64::from_polar(1.0, -theta) - t).norm_sqr())
        .sum::<f64>()
        .sqrt();
    prop_assert!(err <= 1e-9 * norm.max(1e-12), "err = {err:.3e}, norm = {norm:.3e}");
    Ok(())
}

proptest! {
    /// Intensities, rank-one recovery, and factorization compose to the
    /// identity on C^K up to one unimodular factor, for both builtin frames.
    #[test]
    fn recovery_identity_k2(x in vector(2)) {
        recovery_identity(&paper_frame_k2(), &x)?;
    }

    #[test]
    fn recovery_identity_k3(x in vector(3)) {
        recovery_identity(&sic_frame_k3(), &x)?;
    }

    /// Intensities are exactly invariant under a global phase.
    #[test]
    fn intensities_phase_invariant(x in vector(2), theta in -3.2..3.2f64) {
        let frame = paper_frame_k2();
        let rotated: Vec<Complex64> = x
            .iter()
            .map(|v| v * Complex64::from_polar(1.0, theta))
            .collect();
        let a = intensities(&x, &frame).unwrap();
        let b = intensities(&rotated, &frame).unwrap();
        for (p, q) in a.iter().zip(&b) {
            prop_assert!((p - q).abs() <= 1e-12 * (1.0 + p.abs()));
        }
    }

    /// The bounded kernel differs from the plain kernel by exactly
    /// S(z) / (S'(lambda_n) lambda_n).
    #[test]
    fn kernel_difference_identity(
        n in -30..30i64,
        re in -40.0..40.0f64,
        im in -1.5..1.5f64,
        shift in prop_oneof![Just(0.0), 0.2..1.0f64],
    ) {
        let sine = SineTypeFn::shifted_sine(2.0, shift).unwrap();
        let params = KernelParams::for_sine_type(&sine);
        let lambda = sine.zero(n);
        let z = c(re, im);
        prop_assume!((z - lambda).norm() >= params.singularity_eps);
        let bounded = kernel_psi_bounded(&sine, lambda, z, &params).unwrap();
        let plain = kernel_psi(&sine, lambda, z, &params).unwrap();
        let correction = if lambda.re == 0.0 && lambda.im == 0.0 {
            c(0.0, 0.0)
        } else {
            sine.eval(z) / (sine.derivative(lambda) * lambda)
        };
        prop_assert!((bounded - plain - correction).norm() <= 1e-12);
    }

    /// Global index addressing round-trips and respects the overlap
    /// identity between consecutive blocks.
    #[test]
    fn index_map_round_trip(
        k in 2..7usize,
        a_offset in 0..5usize,
        n_min in -20..0i64,
        span in 0..30i64,
    ) {
        let a = 1 + a_offset % (k - 1);
        let grid = InterpolationGrid::new(k, a, 3.0, 0.1, (n_min, n_min + span)).unwrap();
        let map = grid.index_map();
        for m in grid.global_indices() {
            let (n, slot) = map.from_global(m).unwrap();
            prop_assert_eq!(map.to_global(n, slot), m);
        }
        let (n_lo, n_hi) = grid.n_range();
        for n in (n_lo + 1)..=n_hi {
            for i in 0..a {
                prop_assert_eq!(map.to_global(n, i), map.to_global(n - 1, k - a + i));
            }
        }
    }

    /// Stored samples are reproduced by the truncated series at their own
    /// grid points (kernel Kronecker property through the whole stack).
    #[test]
    fn interpolation_reproduces_stored_samples(
        seed_values in prop::collection::vec((component(), component()), 8),
        shift in prop_oneof![Just(0.0), 0.3..1.2f64],
    ) {
        let grid = InterpolationGrid::new(2, 1, 2.0, shift, (0, 7)).unwrap();
        let samples: BTreeMap<i64, Complex64> = grid
            .global_indices()
            .into_iter()
            .zip(seed_values.iter().map(|&(re, im)| c(re, im)))
            .collect();
        let config = phaseless::ReconstructionConfig::default();
        for (&j, &value) in &samples {
            let got = phaseless::interpolate_fourier(&samples, &grid, grid.point(j), &config);
            prop_assert!((got - value).norm() <= 1e-10);
        }
    }
}
