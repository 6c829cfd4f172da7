//! From frequency-domain samples back to the time-limited signal.
//!
//! Each Fourier-domain kernel has the closed-form time-domain counterpart
//! `(1/T~) e^{i lambda_n t}` supported on [-T~/2, T~/2], so recovered
//! samples synthesize the time signal directly. The normalization is pinned
//! by the round trip: forward-transforming the synthesized signal must
//! reproduce the samples at the grid points.
//!
//! Run with: `cargo run --example time_synthesis`

use num_complex::Complex64;
use phaseless::reconstruct::ReconstructionConfig;
use phaseless::{random_signal, synthesize_time, InterpolationGrid};

fn main() {
    let t_tilde = 2.0 * std::f64::consts::PI;
    let grid = InterpolationGrid::new(2, 1, t_tilde, 0.0, (0, 10)).unwrap();
    let signal = random_signal(&grid, 12, 1.0, 3).unwrap();
    let samples = signal.coeffs().clone();
    let config = ReconstructionConfig::default();

    // Synthesize on a uniform time axis covering the support.
    let intervals = 4096usize;
    let half = 0.5 * t_tilde;
    let step = 2.0 * half / intervals as f64;
    let t_points: Vec<f64> = (0..=intervals).map(|i| -half + step * i as f64).collect();
    let synthesized = synthesize_time(&samples, &grid, &t_points, &config).unwrap();

    let peak = synthesized
        .iter()
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max);
    println!("synthesized x(t) on [{:.3}, {:.3}], peak |x| = {peak:.6}", -half, half);

    // Round trip: numerically forward transform with composite Simpson and
    // compare against the samples we started from.
    let mut worst: f64 = 0.0;
    for (&j, &expected) in &samples {
        let lambda = grid.point(j);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &(t, x_t)) in synthesized.iter().enumerate() {
            let weight = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += weight * x_t * (-Complex64::new(0.0, 1.0) * lambda * t).exp();
        }
        let integral = acc * (step / 3.0);
        worst = worst.max((integral - expected).norm());
    }
    println!("forward-transform round trip over {} grid points: worst deviation {worst:.3e}", samples.len());
}
