//! Closed-form sine-type functions and the interpolation kernels built on
//! their zero sets.
//!
//! A sine-type function of exponential type `sigma` has simple, separated
//! zeros confined to a horizontal strip and two-sided exponential bounds off
//! that strip. Only the three closed-form families needed by the sampling
//! pipeline are supported: `sin(sigma z)`, its imaginary-shifted variant
//! `sin(sigma (z - i h))`, and `cos(sigma z)`. Keeping to closed forms makes
//! every evaluation exact to floating precision.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for deciding whether a point is a zero of `S`.
pub const NOT_A_ZERO_TOL: f64 = 1e-9;

/// Errors from sine-type evaluation and kernel construction.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SineTypeError {
    #[error("exponential type parameter must be positive, got {0}")]
    InvalidType(f64),
    #[error("point {point} is not a zero: |S(point)| = {magnitude:.3e} exceeds {tolerance:.3e}")]
    NotAZero {
        point: Complex64,
        magnitude: f64,
        tolerance: f64,
    },
    #[error("invalid kernel parameters: {0}")]
    InvalidParams(String),
}

/// The supported closed-form families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SineTypeKind {
    /// `sin(sigma z)`, zeros at `n pi / sigma`.
    CanonicalSine,
    /// `sin(sigma (z - i h))`, zeros at `n pi / sigma + i h`.
    ShiftedSine,
    /// `cos(sigma z)`, zeros at `(n + 1/2) pi / sigma`.
    Cosine,
}

/// A sine-type function with exponential type `sigma` and (for the shifted
/// family) a constant imaginary shift `h` of the zero line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineTypeFn {
    kind: SineTypeKind,
    sigma: f64,
    shift_h: f64,
}

impl SineTypeFn {
    /// `sin((T~/2) z)` of type `T~/2` with real zeros `2 pi n / T~`.
    pub fn canonical_sine(t_tilde: f64) -> Result<Self, SineTypeError> {
        if !t_tilde.is_finite() || t_tilde <= 0.0 {
            return Err(SineTypeError::InvalidType(t_tilde));
        }
        Ok(Self {
            kind: SineTypeKind::CanonicalSine,
            sigma: 0.5 * t_tilde,
            shift_h: 0.0,
        })
    }

    /// `sin((T~/2)(z - i h))` of type `T~/2` with zeros `2 pi n / T~ + i h`.
    pub fn shifted_sine(t_tilde: f64, shift_h: f64) -> Result<Self, SineTypeError> {
        if !t_tilde.is_finite() || t_tilde <= 0.0 {
            return Err(SineTypeError::InvalidType(t_tilde));
        }
        Ok(Self {
            kind: SineTypeKind::ShiftedSine,
            sigma: 0.5 * t_tilde,
            shift_h,
        })
    }

    /// `cos((T'/2) z)` of type `T'/2` with real zeros `(2n+1) pi / T'`.
    pub fn cosine(t_prime: f64) -> Result<Self, SineTypeError> {
        if !t_prime.is_finite() || t_prime <= 0.0 {
            return Err(SineTypeError::InvalidType(t_prime));
        }
        Ok(Self {
            kind: SineTypeKind::Cosine,
            sigma: 0.5 * t_prime,
            shift_h: 0.0,
        })
    }

    pub fn kind(&self) -> SineTypeKind {
        self.kind
    }

    /// Exponential type `sigma` (`T~/2` for the sine families, `T'/2` for cosine).
    pub fn exp_type(&self) -> f64 {
        self.sigma
    }

    /// Constant imaginary shift of the zero line (0 except for `ShiftedSine`).
    pub fn shift(&self) -> f64 {
        self.shift_h
    }

    /// Spacing between consecutive zeros along the real direction, `pi / sigma`.
    pub fn zero_spacing(&self) -> f64 {
        std::f64::consts::PI / self.sigma
    }

    /// The `n`th zero of the function.
    pub fn zero(&self, n: i64) -> Complex64 {
        let spacing = self.zero_spacing();
        match self.kind {
            SineTypeKind::CanonicalSine => Complex64::new(n as f64 * spacing, 0.0),
            SineTypeKind::ShiftedSine => Complex64::new(n as f64 * spacing, self.shift_h),
            SineTypeKind::Cosine => Complex64::new((n as f64 + 0.5) * spacing, 0.0),
        }
    }

    /// Evaluate `S(z)` by the closed form.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self.kind {
            SineTypeKind::CanonicalSine => (self.sigma * z).sin(),
            SineTypeKind::ShiftedSine => {
                (self.sigma * (z - Complex64::new(0.0, self.shift_h))).sin()
            }
            SineTypeKind::Cosine => (self.sigma * z).cos(),
        }
    }

    /// Evaluate `S'(z)` by the closed form.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        match self.kind {
            SineTypeKind::CanonicalSine => self.sigma * (self.sigma * z).cos(),
            SineTypeKind::ShiftedSine => {
                self.sigma * (self.sigma * (z - Complex64::new(0.0, self.shift_h))).cos()
            }
            SineTypeKind::Cosine => -self.sigma * (self.sigma * z).sin(),
        }
    }

    /// Evaluate `S''(z)`; all three families satisfy `S'' = -sigma^2 S`.
    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        -(self.sigma * self.sigma) * self.eval(z)
    }

    /// `S'(lambda_n)` after checking that `zero` really is a zero of `S`.
    ///
    /// The check is scale-aware: `|S(zero)| <= NOT_A_ZERO_TOL * max(1, |S'(zero)|)`.
    pub fn derivative_at_zero(&self, zero: Complex64) -> Result<Complex64, SineTypeError> {
        let deriv = self.derivative(zero);
        let magnitude = self.eval(zero).norm();
        let tolerance = NOT_A_ZERO_TOL * deriv.norm().max(1.0);
        if magnitude > tolerance {
            return Err(SineTypeError::NotAZero {
                point: zero,
                magnitude,
                tolerance,
            });
        }
        Ok(deriv)
    }
}

/// Truncation half-width and singularity guard for kernel series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    /// Series truncation index: terms with `|global index| <= N` are kept.
    pub series_halfwidth_n: usize,
    /// Below this distance from the kernel's zero the removable-singularity
    /// expansion is used instead of the ratio formula.
    pub singularity_eps: f64,
}

impl KernelParams {
    pub fn new(series_halfwidth_n: usize, singularity_eps: f64) -> Result<Self, SineTypeError> {
        if series_halfwidth_n < 1 {
            return Err(SineTypeError::InvalidParams(
                "series half-width must be at least 1".into(),
            ));
        }
        if !singularity_eps.is_finite() || singularity_eps <= 0.0 {
            return Err(SineTypeError::InvalidParams(format!(
                "singularity_eps must be positive, got {singularity_eps}"
            )));
        }
        Ok(Self {
            series_halfwidth_n,
            singularity_eps,
        })
    }

    /// Defaults for a given sine-type function: `eps = 1e-6 * zero spacing`.
    pub fn for_sine_type(f: &SineTypeFn) -> Self {
        Self {
            series_halfwidth_n: 64,
            singularity_eps: 1e-6 * f.zero_spacing(),
        }
    }
}

/// Interpolation kernel `psi_n(z) = S(z) / (S'(lambda_n) (z - lambda_n))`.
///
/// Satisfies `psi_n(lambda_m) = delta_nm` on the zero set. Near `lambda_n`
/// the removable singularity is evaluated by the two-term expansion
/// `1 + S''(lambda_n) / (2 S'(lambda_n)) * (z - lambda_n)`.
pub fn kernel_psi(
    f: &SineTypeFn,
    lambda_n: Complex64,
    z: Complex64,
    params: &KernelParams,
) -> Result<Complex64, SineTypeError> {
    let deriv = f.derivative_at_zero(lambda_n)?;
    let dz = z - lambda_n;
    if dz.norm() < params.singularity_eps {
        let half_curvature = f.second_derivative(lambda_n) / (2.0 * deriv);
        Ok(Complex64::new(1.0, 0.0) + half_curvature * dz)
    } else {
        Ok(f.eval(z) / (deriv * dz))
    }
}

/// Bounded-series kernel `S(z)/S'(lambda_n) * [1/(z - lambda_n) + 1/lambda_n]`.
///
/// Used by the interpolation series for bounded (non-decaying) samples. When
/// `lambda_n = 0` the `1/lambda_n` term is dropped (the primed-sum convention).
pub fn kernel_psi_bounded(
    f: &SineTypeFn,
    lambda_n: Complex64,
    z: Complex64,
    params: &KernelParams,
) -> Result<Complex64, SineTypeError> {
    let base = kernel_psi(f, lambda_n, z, params)?;
    if lambda_n.re == 0.0 && lambda_n.im == 0.0 {
        return Ok(base);
    }
    let deriv = f.derivative_at_zero(lambda_n)?;
    Ok(base + f.eval(z) / (deriv * lambda_n))
}

/// Lower-bound constant `A_u = (1 - exp(-T' H_u / 2)) / 2` for the cosine
/// test function: `|cos((T'/2) z)| >= A_u e^{(T'/2)|Im z|}` whenever
/// `|Im z| >= H_u`.
pub fn cosine_lower_bound_au(t_prime: f64, h_u: f64) -> f64 {
    assert!(t_prime > 0.0, "t_prime must be positive");
    assert!(h_u > 0.0, "h_u must be positive");
    0.5 * (1.0 - (-0.5 * t_prime * h_u).exp())
}

/// Partial sum of inverse squared distances from an anchor zero:
/// `sum over n != n0, |n - n0| <= halfwidth of 1 / |lambda_n - lambda_n0|^2`.
///
/// For zero sets of sine-type functions this is bounded by a constant
/// independent of the anchor; the tests verify that bound at desk scale.
pub fn separation_sum(zeros: &[Complex64], n0: usize, halfwidth: usize) -> f64 {
    assert!(n0 < zeros.len(), "anchor index out of bounds");
    let lo = n0.saturating_sub(halfwidth);
    let hi = (n0 + halfwidth).min(zeros.len() - 1);
    let anchor = zeros[n0];
    (lo..=hi)
        .filter(|&n| n != n0)
        .map(|n| 1.0 / (zeros[n] - anchor).norm_sqr())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_sine_closed_form() {
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        assert!(s.eval(c(0.0, 0.0)).norm() == 0.0);
        assert!((s.eval(c(PI / 2.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn shifted_sine_vanishes_at_shifted_zero() {
        let s = SineTypeFn::shifted_sine(2.0, 0.5).unwrap();
        assert!(s.eval(c(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(s.zero(0), c(0.0, 0.5));
        assert_eq!(s.zero(3), c(3.0 * PI, 0.5));
    }

    #[test]
    fn cosine_zeros_are_half_integer_multiples() {
        let s = SineTypeFn::cosine(2.0).unwrap();
        // T' = 2: zeros at (2n+1) pi / 2
        assert!((s.zero(0) - c(PI / 2.0, 0.0)).norm() < 1e-15);
        assert!((s.zero(-1) - c(-PI / 2.0, 0.0)).norm() < 1e-15);
        assert!(s.eval(s.zero(5)).norm() < 1e-12);
    }

    #[test]
    fn invalid_type_rejected() {
        assert!(matches!(
            SineTypeFn::canonical_sine(0.0),
            Err(SineTypeError::InvalidType(_))
        ));
        assert!(matches!(
            SineTypeFn::cosine(-1.0),
            Err(SineTypeError::InvalidType(_))
        ));
    }

    #[test]
    fn derivative_at_zero_values() {
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        assert!((s.derivative_at_zero(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((s.derivative_at_zero(c(PI, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);

        let shifted = SineTypeFn::shifted_sine(2.0, 1.0).unwrap();
        assert!((shifted.derivative_at_zero(c(PI, 1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_at_zero_rejects_non_zero() {
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        let err = s.derivative_at_zero(c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, SineTypeError::NotAZero { .. }));
    }

    #[test]
    fn kernel_interpolation_property() {
        // psi_n(lambda_m) = delta_nm on the zero set, all three families.
        let fns = [
            SineTypeFn::canonical_sine(2.0).unwrap(),
            SineTypeFn::shifted_sine(2.0, 0.7).unwrap(),
            SineTypeFn::cosine(3.0).unwrap(),
        ];
        for f in &fns {
            let params = KernelParams::for_sine_type(f);
            for n in -6..=6i64 {
                for m in -6..=6i64 {
                    let value = kernel_psi(f, f.zero(n), f.zero(m), &params).unwrap();
                    let expected = if n == m { 1.0 } else { 0.0 };
                    assert!(
                        (value - c(expected, 0.0)).norm() < 1e-12,
                        "kind {:?} n={n} m={m} value={value}",
                        f.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_is_sinc_for_canonical_sine() {
        // T~ = 2: psi_0(z) = sinc(z), so psi_0(pi/2) = 2/pi.
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        let params = KernelParams::for_sine_type(&s);
        let v = kernel_psi(&s, c(0.0, 0.0), c(PI / 2.0, 0.0), &params).unwrap();
        assert!((v - c(2.0 / PI, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_singularity_branch_is_continuous() {
        let s = SineTypeFn::shifted_sine(2.0, 0.3).unwrap();
        let params = KernelParams::for_sine_type(&s);
        let lambda = s.zero(2);
        let eps = params.singularity_eps;
        for dir in [c(1.0, 0.0), c(0.0, 1.0), c(-0.6, 0.8)] {
            let inside = kernel_psi(&s, lambda, lambda + dir * (eps * (1.0 - 1e-9)), &params);
            let outside = kernel_psi(&s, lambda, lambda + dir * (eps * (1.0 + 1e-9)), &params);
            assert!((inside.unwrap() - outside.unwrap()).norm() < 1e-9);
        }
    }

    #[test]
    fn bounded_kernel_interpolates() {
        let s = SineTypeFn::shifted_sine(2.0, 1.0).unwrap();
        let params = KernelParams::for_sine_type(&s);
        for n in -4..=4i64 {
            for m in -4..=4i64 {
                let v = kernel_psi_bounded(&s, s.zero(n), s.zero(m), &params).unwrap();
                let expected = if n == m { 1.0 } else { 0.0 };
                assert!((v - c(expected, 0.0)).norm() < 1e-12, "n={n} m={m} v={v}");
            }
        }
    }

    #[test]
    fn bounded_kernel_matches_psi_plus_correction() {
        // S(z)/S'(l)[1/(z-l) + 1/l] = psi(z) + S(z)/(S'(l) l) for l != 0.
        let s = SineTypeFn::shifted_sine(2.0, 1.0).unwrap();
        let params = KernelParams::for_sine_type(&s);
        let lambda = s.zero(0); // i
        assert_eq!(lambda, c(0.0, 1.0));
        let z = c(2.0, 1.0);
        let direct = s.eval(z) / s.derivative(lambda)
            * (1.0 / (z - lambda) + 1.0 / lambda);
        let composed = kernel_psi_bounded(&s, lambda, z, &params).unwrap();
        assert!((direct - composed).norm() < 1e-14);
        let correction = s.eval(z) / (s.derivative(lambda) * lambda);
        let psi = kernel_psi(&s, lambda, z, &params).unwrap();
        assert!((composed - psi - correction).norm() < 1e-14);
    }

    #[test]
    fn bounded_kernel_prime_convention_at_origin() {
        // lambda_n = 0 drops the 1/lambda_n term, leaving the plain kernel.
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        let params = KernelParams::for_sine_type(&s);
        let z = c(0.37, 0.21);
        let bounded = kernel_psi_bounded(&s, c(0.0, 0.0), z, &params).unwrap();
        let plain = kernel_psi(&s, c(0.0, 0.0), z, &params).unwrap();
        assert_eq!(bounded, plain);
    }

    #[test]
    fn cosine_lower_bound_values() {
        // T' = 2, H_u = ln 4: (1 - 1/4)/2 = 3/8.
        assert!((cosine_lower_bound_au(2.0, 4.0f64.ln()) - 0.375).abs() < 1e-15);
        // Large H_u saturates at 1/2, tiny H_u degenerates to 0+.
        assert!((cosine_lower_bound_au(2.0, 1e3) - 0.5).abs() < 1e-15);
        let tiny = cosine_lower_bound_au(2.0, 1e-12);
        assert!(tiny > 0.0 && tiny < 1e-11);
    }

    #[test]
    fn separation_sum_two_neighbors() {
        let zeros = vec![c(-PI, 0.0), c(0.0, 0.0), c(PI, 0.0)];
        let sum = separation_sum(&zeros, 1, 1);
        assert!((sum - 2.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn separation_sum_matches_p_series() {
        // Uniform grid spacing pi (T~ = 2): partial sums equal
        // (2/pi^2) * sum_{k<=hw} 1/k^2.
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        let zeros: Vec<_> = (-500..=500).map(|n| s.zero(n)).collect();
        let hw = 400;
        let sum = separation_sum(&zeros, 500, hw);
        let oracle: f64 = (1..=hw).map(|k| 1.0 / (k as f64 * k as f64)).sum::<f64>()
            * 2.0
            / (PI * PI);
        assert!((sum - oracle).abs() < 1e-12);
    }

    #[test]
    fn separation_sum_translation_invariant() {
        let s = SineTypeFn::canonical_sine(2.0).unwrap();
        let zeros: Vec<_> = (-600..=600).map(|n| s.zero(n)).collect();
        let reference = separation_sum(&zeros, 600, 100);
        for anchor in [450, 520, 680, 750] {
            let sum = separation_sum(&zeros, anchor, 100);
            assert!((sum - reference).abs() < 1e-9);
        }
    }
}
