//! Recover one block vector from intensity measurements alone.
//!
//! The magnitudes `|<x, alpha_m>|^2` over a 2-uniform tight frame determine
//! the rank-one matrix `x x*` by a single linear formula; reading `x` back
//! off that matrix is possible up to one unimodular factor, which is the
//! fundamental ambiguity of phaseless measurement.
//!
//! Run with: `cargo run --example block_recovery`

use num_complex::Complex64;
use phaseless::frames::{align_phase_vec, factor_rank1};
use phaseless::{intensities, paper_frame_k2, recover_rank1};

fn main() {
    let frame = paper_frame_k2();
    let x = vec![Complex64::new(0.8, -0.3), Complex64::new(-0.2, 1.1)];
    println!("true vector:        {:?}", x);

    let c = intensities(&x, &frame).unwrap();
    println!("intensities:        {c:.6?}");

    let q = recover_rank1(&c, &frame).unwrap();
    println!("recovered Q = x x*:");
    for i in 0..2 {
        println!(
            "  [{:+.6}{:+.6}i, {:+.6}{:+.6}i]",
            q.get(i, 0).re,
            q.get(i, 0).im,
            q.get(i, 1).re,
            q.get(i, 1).im
        );
    }
    println!("rank-one residual |lambda_2|/trace = {:.3e}", q.rank_one_residual());

    // Pin the phase of the strongest entry to zero and factorize.
    let ref_index = if q.get(0, 0).re >= q.get(1, 1).re { 0 } else { 1 };
    let recovered = factor_rank1(&q, ref_index, 0.0).unwrap();
    println!("factorized (phase of entry {ref_index} set to 0): {recovered:?}");

    // The factor is recovered only up to e^{i theta}; align and compare.
    let theta = align_phase_vec(&recovered, &x);
    let err: f64 = recovered
        .iter()
        .zip(&x)
        .map(|(r, t)| (r * Complex64::from_polar(1.0, -theta) - t).norm_sqr())
        .sum::<f64>()
        .sqrt();
    println!("global phase theta = {theta:.6}, aligned error = {err:.3e}");
}
