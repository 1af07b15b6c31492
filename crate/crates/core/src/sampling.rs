//! Deterministic sampling for the verification suites.
//!
//! Reports from `verify` must be byte-identical across runs for a fixed seed,
//! so random draws go through a small self-contained generator rather than an
//! external RNG whose stream could shift between versions.

use crate::multicomplex::RotorAngles;
use std::f64::consts::{PI, TAU};

/// SplitMix64: a 64-bit mixing generator with a one-word state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, 1)` using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Random canonical rotor angles: `theta_1` in `[0, 2*pi)`, the rest in
    /// `[0, pi)`.
    pub fn rotor_angles(&mut self, order: usize) -> RotorAngles {
        let theta: Vec<f64> = (0..order)
            .map(|k| {
                if k == 0 {
                    self.uniform(0.0, TAU)
                } else {
                    self.uniform(0.0, PI)
                }
            })
            .collect();
        RotorAngles::new(theta).expect("sampled angles are valid")
    }

    /// Rotor angles with every `theta_k` (`k >= 2`) kept at least `margin`
    /// away from `pi/2`, i.e. bounded away from the projection kernel.
    pub fn rotor_angles_off_kernel(&mut self, order: usize, margin: f64) -> RotorAngles {
        let theta: Vec<f64> = (0..order)
            .map(|k| {
                if k == 0 {
                    self.uniform(0.0, TAU)
                } else {
                    loop {
                        let t = self.uniform(0.0, PI);
                        if (t - PI / 2.0).abs() > margin {
                            break t;
                        }
                    }
                }
            })
            .collect();
        RotorAngles::new(theta).expect("sampled angles are valid")
    }
}
