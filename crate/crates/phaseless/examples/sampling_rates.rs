//! Total sampling rate of the scheme relative to Nyquist.
//!
//! With M = K^2 modulation branches sampled every beta = (K - a) * 2 pi / T~,
//! the rate is R / R_Ny = K^2 / (K - a) * T~ / T. It grows with K and with
//! the overlap a, and its infimum over all admissible configurations is 4,
//! approached at K = 2, a = 1 as the oversampling T~ / T drops to 1.
//!
//! Run with: `cargo run --example sampling_rates`

use phaseless::sampling_rate_ratio;

fn main() {
    println!("{:>3} {:>3} {:>12} {:>12}", "K", "a", "T~/T", "R/R_Ny");
    for k in [2usize, 3, 4, 6] {
        for a in 1..k {
            for oversampling in [1.0, 1.1, 1.25] {
                let ratio = sampling_rate_ratio(k, a, oversampling, 1.0).unwrap();
                println!("{k:>3} {a:>3} {oversampling:>12} {ratio:>12.4}");
            }
        }
    }

    println!("\napproach to the infimum at K = 2, a = 1:");
    for exp in 1..=8 {
        let oversampling = 1.0 + 0.5f64.powi(exp);
        let ratio = sampling_rate_ratio(2, 1, oversampling, 1.0).unwrap();
        println!("  T~/T = {oversampling:<12} R/R_Ny = {ratio}");
    }
}
