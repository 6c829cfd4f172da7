//! Validate measurement frames: the builtin K=2 and K=3 families and the
//! bundled JSON files.
//!
//! A frame is usable for block recovery when its M = K^2 unit vectors form a
//! 2-uniform M/K-tight frame: `sum_m alpha_m alpha_m* = (M/K) I` and all
//! pairwise `|<alpha_i, alpha_j>|^2` equal one constant.
//!
//! Run with: `cargo run --example frame_validation`

use phaseless::{load_frame, paper_frame_k2, sic_frame_k3, validate_frame};

fn main() {
    let tol = 1e-12;

    println!("builtin K=2 frame:");
    let report = validate_frame(&paper_frame_k2(), tol);
    println!("  {report}");
    println!("  pair constant 1/(K+1) = {:.12} (expected {:.12})", report.pair_constant, 1.0 / 3.0);

    println!("builtin K=3 SIC frame:");
    let report = validate_frame(&sic_frame_k3(), tol);
    println!("  {report}");
    println!("  pair constant 1/(K+1) = {:.12} (expected {:.12})", report.pair_constant, 0.25);

    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/frames");
    for name in ["paper_k2.json", "sic_k3.json"] {
        let frame = load_frame(format!("{data}/{name}")).expect("bundled frames are valid");
        let report = validate_frame(&frame, tol);
        println!("{name}:");
        println!("  {report}");
    }
}
