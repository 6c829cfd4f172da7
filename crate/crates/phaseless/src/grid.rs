//! The interpolation point lattice and its block/overlap combinatorics.
//!
//! Measurements are taken block-wise: block `n` holds `K` consecutive points
//! of a uniform complex lattice, and consecutive blocks share `a` points.
//! With spacing `delta = 2 pi / T~` and block stride `beta = (K - a) delta`,
//! the union of all blocks is exactly the zero set of the shifted sine-type
//! function `sin((T~/2)(z - i h))`, which is what makes the lattice a valid
//! interpolation sequence for the reconstruction series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sinetype::SineTypeFn;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GridError {
    #[error("overlap must satisfy 1 <= a <= K-1, got a = {a} with K = {k}")]
    InvalidOverlap { k: usize, a: usize },
    #[error("type length must be positive (and >= the signal support), got {0}")]
    InvalidType(f64),
    #[error("block index {0} outside the simulated window")]
    OutOfRange(i64),
    #[error("block window is empty: [{0}, {1}]")]
    EmptyWindow(i64, i64),
}

/// The finite window of the interpolation lattice used in a simulation.
///
/// Points are addressed two ways: by `(block n, slot k)` and by a single
/// global integer index `m` with `point(m) = m * delta + i h`. Slot `k` of
/// block `n` is the global index `n (K - a) + k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationGrid {
    k: usize,
    a: usize,
    t_tilde: f64,
    shift_h: f64,
    n_min: i64,
    n_max: i64,
}

impl InterpolationGrid {
    pub fn new(
        k: usize,
        a: usize,
        t_tilde: f64,
        shift_h: f64,
        n_range: (i64, i64),
    ) -> Result<Self, GridError> {
        if !t_tilde.is_finite() || t_tilde <= 0.0 {
            return Err(GridError::InvalidType(t_tilde));
        }
        if k < 2 || a < 1 || a > k - 1 {
            return Err(GridError::InvalidOverlap { k, a });
        }
        let (n_min, n_max) = n_range;
        if n_min > n_max {
            return Err(GridError::EmptyWindow(n_min, n_max));
        }
        Ok(Self {
            k,
            a,
            t_tilde,
            shift_h,
            n_min,
            n_max,
        })
    }

    pub fn points_per_block(&self) -> usize {
        self.k
    }

    pub fn overlap(&self) -> usize {
        self.a
    }

    pub fn t_tilde(&self) -> f64 {
        self.t_tilde
    }

    pub fn shift_h(&self) -> f64 {
        self.shift_h
    }

    /// Lattice spacing `delta = 2 pi / T~`.
    pub fn spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.t_tilde
    }

    /// Block stride `beta = (K - a) delta`.
    pub fn beta(&self) -> f64 {
        (self.k - self.a) as f64 * self.spacing()
    }

    pub fn n_range(&self) -> (i64, i64) {
        (self.n_min, self.n_max)
    }

    pub fn block_count(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    /// The sine-type function whose zero set contains every grid point.
    pub fn sine_type(&self) -> SineTypeFn {
        SineTypeFn::shifted_sine(self.t_tilde, self.shift_h)
            .expect("grid construction validated t_tilde > 0")
    }

    /// Point at global index `m`: `m * delta + i h`.
    ///
    /// Computing from the global index alone keeps shared points bit-identical
    /// between the blocks that contain them.
    pub fn point(&self, m: i64) -> Complex64 {
        Complex64::new(m as f64 * self.spacing(), self.shift_h)
    }

    /// Inclusive global index range covered by the window.
    pub fn global_index_range(&self) -> (i64, i64) {
        let stride = (self.k - self.a) as i64;
        (self.n_min * stride, self.n_max * stride + self.k as i64 - 1)
    }

    /// All global indices in the window, ascending.
    pub fn global_indices(&self) -> Vec<i64> {
        let (lo, hi) = self.global_index_range();
        (lo..=hi).collect()
    }

    /// The `K` points of block `n`, ordered by real part.
    pub fn block(&self, n: i64) -> Result<Vec<Complex64>, GridError> {
        if n < self.n_min || n > self.n_max {
            return Err(GridError::OutOfRange(n));
        }
        let map = self.index_map();
        Ok((0..self.k).map(|slot| self.point(map.to_global(n, slot))).collect())
    }

    /// The `a` points shared by blocks `n` and `n + 1`.
    pub fn overlap_points(&self, n: i64) -> Result<Vec<Complex64>, GridError> {
        if n < self.n_min || n + 1 > self.n_max {
            return Err(GridError::OutOfRange(n));
        }
        let map = self.index_map();
        Ok((self.k - self.a..self.k)
            .map(|slot| self.point(map.to_global(n, slot)))
            .collect())
    }

    pub fn index_map(&self) -> GlobalIndexMap {
        GlobalIndexMap {
            k: self.k,
            a: self.a,
            n_min: self.n_min,
            n_max: self.n_max,
        }
    }
}

/// Bijection between global point indices and `(block, slot)` addresses with
/// overlap de-duplication: slot `k < a` of block `n` is the same physical
/// point as slot `K - a + k` of block `n - 1`; the canonical address is the
/// earliest block in the window that contains the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlobalIndexMap {
    k: usize,
    a: usize,
    n_min: i64,
    n_max: i64,
}

impl GlobalIndexMap {
    fn stride(&self) -> i64 {
        (self.k - self.a) as i64
    }

    /// Global index of slot `slot` (0-based) of block `n`.
    pub fn to_global(&self, n: i64, slot: usize) -> i64 {
        debug_assert!(slot < self.k);
        n * self.stride() + slot as i64
    }

    /// Canonical `(block, slot)` for a global index: the earliest window
    /// block containing the point.
    pub fn from_global(&self, m: i64) -> Result<(i64, usize), GridError> {
        let stride = self.stride();
        // Smallest n with m - n*stride <= K-1, i.e. n >= (m - K + 1) / stride.
        let min_n = (m - self.k as i64 + 1).div_euclid(stride)
            + i64::from((m - self.k as i64 + 1).rem_euclid(stride) != 0);
        let n = min_n.max(self.n_min);
        let slot = m - n * stride;
        if n > self.n_max || !(0..self.k as i64).contains(&slot) {
            return Err(GridError::OutOfRange(m));
        }
        Ok((n, slot as usize))
    }

    /// All blocks of the window containing global index `m`, ascending.
    pub fn blocks_containing(&self, m: i64) -> Vec<i64> {
        let stride = self.stride();
        (self.n_min..=self.n_max)
            .filter(|&n| {
                let slot = m - n * stride;
                (0..self.k as i64).contains(&slot)
            })
            .collect()
    }
}

/// Total sampling rate relative to Nyquist: `R / R_Ny = K^2 / (K - a) * T~ / T`.
///
/// With `M = K^2` measurement branches sampled at period `beta`, the scheme's
/// rate is `K^2 / ((K - a) delta)`, and `R_Ny = T / (2 pi)`. The infimum over
/// all admissible `(K, a, T~)` is 4, approached at `K = 2`, `a = 1`, `T~ -> T`.
pub fn sampling_rate_ratio(k: usize, a: usize, t_tilde: f64, t: f64) -> Result<f64, GridError> {
    if k < 2 || a < 1 || a >= k {
        return Err(GridError::InvalidOverlap { k, a });
    }
    if !t.is_finite() || t <= 0.0 || t_tilde < t {
        return Err(GridError::InvalidType(t_tilde));
    }
    let k = k as f64;
    Ok(k * k / (k - a as f64) * (t_tilde / t))
}
