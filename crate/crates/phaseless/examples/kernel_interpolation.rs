//! Sine-type interpolation kernels and the sampling series built from them.
//!
//! The kernels `psi_n(z) = S(z) / (S'(lambda_n)(z - lambda_n))` are 1 at
//! their own zero of `S` and 0 at every other zero, so a finite expansion
//! `sum c_j psi_j` interpolates prescribed values exactly. On the canonical
//! grid this is the classical cardinal-sinc series.
//!
//! Run with: `cargo run --example kernel_interpolation`

use num_complex::Complex64;
use phaseless::sinetype::{kernel_psi, kernel_psi_bounded, KernelParams};
use phaseless::{InterpolationGrid, SineTypeFn};

fn main() {
    // T~ = 2: zeros at multiples of pi, shifted up by 0.4i.
    let sine = SineTypeFn::shifted_sine(2.0, 0.4).unwrap();
    let params = KernelParams::for_sine_type(&sine);

    println!("Kronecker property psi_n(lambda_m) = delta_nm:");
    let mut worst: f64 = 0.0;
    for n in -10..=10i64 {
        for m in -10..=10i64 {
            let value = kernel_psi(&sine, sine.zero(n), sine.zero(m), &params).unwrap();
            let expected = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((value - Complex64::new(expected, 0.0)).norm());
        }
    }
    println!("  max deviation over 441 pairs: {worst:.3e}");

    // The bounded-sample kernel differs by exactly S(z)/(S'(l) l).
    let lambda = sine.zero(3);
    let z = Complex64::new(2.6, 0.1);
    let plain = kernel_psi(&sine, lambda, z, &params).unwrap();
    let bounded = kernel_psi_bounded(&sine, lambda, z, &params).unwrap();
    let correction = sine.eval(z) / (sine.derivative(lambda) * lambda);
    println!("plain kernel at z:   {plain:.6}");
    println!("bounded kernel at z: {bounded:.6}");
    println!("difference - S(z)/(S'(l) l) = {:.3e}", (bounded - plain - correction).norm());

    // Interpolate a finite expansion through the grid facade.
    let grid = InterpolationGrid::new(2, 1, 2.0 * std::f64::consts::PI, 0.0, (0, 6)).unwrap();
    let signal = phaseless::random_signal(&grid, 8, 1.0, 7).unwrap();
    println!("finite expansion on an 8-point window (T~ = 2 pi):");
    for &j in signal.coeffs().keys().take(3) {
        let at_point = signal.eval(grid.point(j));
        println!(
            "  x(lambda_{j}) = {at_point:.6}  (coefficient {:.6})",
            signal.coeffs()[&j]
        );
    }
    let midpoint = Complex64::new(2.5, 0.0);
    println!("  off-grid value x(2.5) = {:.6}", signal.eval(midpoint));
}
