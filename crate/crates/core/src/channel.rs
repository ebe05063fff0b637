//! Independent asymmetric Pauli noise.
//!
//! Sampling is keyed by (seed, trial, qubit): trial t uses ChaCha8 stream t
//! under the seed, and qubit i consumes the i-th 64-bit word of that stream.
//! Any slice of qubits can therefore be regenerated on its own, and trials can
//! run in any order or on any worker with identical results.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matgf::BitVec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("error probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("asymmetry {0} below 1")]
    Asymmetry(f64),
    #[error("Pauli probabilities ({0}, {1}, {2}) are negative or sum above 1")]
    Probabilities(f64, f64, f64),
}

/// p_X = p_Y = p/(2ζ+1), p_Z = p(2ζ−1)/(2ζ+1); ζ = ∞ gives pure dephasing.
pub fn asymmetric_probs(p: f64, zeta: f64) -> Result<(f64, f64, f64), ChannelError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ChannelError::Probability(p));
    }
    if zeta.is_nan() || zeta < 1.0 {
        return Err(ChannelError::Asymmetry(zeta));
    }
    let px = if zeta.is_infinite() {
        0.0
    } else {
        p / (2.0 * zeta + 1.0)
    };
    Ok((px, px, p - 2.0 * px))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    pub p: f64,
    pub zeta: f64,
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl PauliChannel {
    pub fn new(p: f64, zeta: f64) -> Result<Self, ChannelError> {
        let (px, py, pz) = asymmetric_probs(p, zeta)?;
        Ok(PauliChannel {
            p,
            zeta,
            px,
            py,
            pz,
        })
    }

    /// Channel from explicit marginals; ζ = (p_Z + p_Y)/(p_X + p_Y).
    pub fn from_probs(px: f64, py: f64, pz: f64) -> Result<Self, ChannelError> {
        let ok =
            [px, py, pz].iter().all(|v| (0.0..=1.0).contains(v)) && px + py + pz <= 1.0 + 1e-12;
        if !ok {
            return Err(ChannelError::Probabilities(px, py, pz));
        }
        let zeta = if px + py > 0.0 {
            (pz + py) / (px + py)
        } else {
            f64::INFINITY
        };
        Ok(PauliChannel {
            p: px + py + pz,
            zeta,
            px,
            py,
            pz,
        })
    }

    pub fn p_identity(&self) -> f64 {
        1.0 - self.p
    }

    fn thresholds(&self) -> [u128; 3] {
        let scale = 18446744073709551616.0f64; // 2^64
        let cut = |v: f64| (v * scale).min(scale) as u128;
        let a = cut(self.px);
        let b = cut(self.px + self.py);
        let c = cut(self.px + self.py + self.pz);
        [a, b, c]
    }

    /// Error on n qubits for the given seed and trial.
    pub fn sample(&self, n: usize, seed: u64, trial: u64) -> PauliError {
        self.sample_range(n, 0, n, seed, trial)
    }

    /// Qubits [start, end) of the error for (seed, trial) on an n-qubit register;
    /// all other positions are left identity.
    pub fn sample_range(
        &self,
        n: usize,
        start: usize,
        end: usize,
        seed: u64,
        trial: u64,
    ) -> PauliError {
        let mut err = PauliError::identity(n);
        if self.p == 0.0 {
            return err;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        rng.set_word_pos(2 * start as u128);
        let [tx, ty, tz] = self.thresholds();
        for i in start..end {
            let u = rng.next_u64() as u128;
            if u < tx {
                err.x.set(i, true);
            } else if u < ty {
                err.x.set(i, true);
                err.z.set(i, true);
            } else if u < tz {
                err.z.set(i, true);
            }
        }
        err
    }
}

/// Pauli operator up to phase: Y where both indicators are set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliError {
    pub x: BitVec,
    pub z: BitVec,
}

impl PauliError {
    pub fn identity(n: usize) -> Self {
        PauliError {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn x_weight(&self) -> usize {
        self.x.weight()
    }

    pub fn z_weight(&self) -> usize {
        self.z.weight()
    }

    /// Componentwise product, ignoring phase.
    pub fn compose(&self, other: &PauliError) -> PauliError {
        PauliError {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_probabilities() {
        let ch = PauliChannel::new(0.3, 1.0).unwrap();
        assert!((ch.px - 0.1).abs() < 1e-15 && (ch.pz - 0.1).abs() < 1e-15);
        let ch = PauliChannel::new(0.3, 100.0).unwrap();
        assert!((ch.px - 0.3 / 201.0).abs() < 1e-15);
        assert!((ch.pz - 0.3 * 199.0 / 201.0).abs() < 1e-15);
        assert!((ch.px + ch.py + ch.pz - 0.3).abs() < 1e-12);
        assert!(((ch.pz + ch.py) / (ch.px + ch.py) - 100.0).abs() < 1e-9);
        assert!(PauliChannel::new(1.2, 2.0).is_err());
        assert!(PauliChannel::new(0.1, 0.5).is_err());
        let deph = PauliChannel::new(0.05, f64::INFINITY).unwrap();
        assert_eq!((deph.px, deph.pz), (0.0, 0.05));
        let ch = PauliChannel::from_probs(0.0, 0.0, 0.05).unwrap();
        assert_eq!(ch.zeta, f64::INFINITY);
        assert!(PauliChannel::from_probs(0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn zero_channel_and_determinism() {
        let ch = PauliChannel::new(0.0, 3.0).unwrap();
        assert_eq!(ch.sample(100, 1, 0).weight(), 0);
        let ch = PauliChannel::new(0.2, 3.0).unwrap();
        assert_eq!(ch.sample(500, 9, 4), ch.sample(500, 9, 4));
        assert_ne!(ch.sample(500, 9, 4), ch.sample(500, 9, 5));
    }

    #[test]
    fn ranges_compose_into_full_sample() {
        let ch = PauliChannel::new(0.3, 2.0).unwrap();
        let full = ch.sample(200, 3, 17);
        let a = ch.sample_range(200, 0, 77, 3, 17);
        let b = ch.sample_range(200, 77, 200, 3, 17);
        assert_eq!(a.compose(&b), full);
    }

    #[test]
    fn full_depolarizing_is_balanced() {
        let ch = PauliChannel::new(1.0, 1.0).unwrap();
        let e = ch.sample(100_000, 5, 0);
        assert_eq!(e.weight(), 100_000);
        let y =
            e.x.words()
                .iter()
                .zip(e.z.words())
                .map(|(a, b)| (a & b).count_ones() as f64)
                .sum::<f64>();
        let x = e.x_weight() as f64 - y;
        let z = e.z_weight() as f64 - y;
        let sd = (100_000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for c in [x, y, z] {
            assert!((c - 100_000.0 / 3.0).abs() < 3.0 * sd);
        }
    }

    #[test]
    fn marginals_and_independence() {
        for &(p, zeta) in &[
            (0.01, 1.0),
            (0.1, 1.0),
            (0.1, 10.0),
            (0.3, 100.0),
            (0.5, 2.0),
        ] {
            let ch = PauliChannel::new(p, zeta).unwrap();
            let n = 1_000_000;
            let e = ch.sample(n, 42, 0);
            let mut counts = [0f64; 4];
            let mut prev_err = false;
            let mut lag = 0f64;
            for i in 0..n {
                let (x, z) = (e.x.get(i), e.z.get(i));
                let idx = match (x, z) {
                    (false, false) => 0,
                    (true, false) => 1,
                    (true, true) => 2,
                    (false, true) => 3,
                };
                counts[idx] += 1.0;
                let err = idx != 0;
                if i > 0 && err && prev_err {
                    lag += 1.0;
                }
                prev_err = err;
            }
            let probs = [ch.p_identity(), ch.px, ch.py, ch.pz];
            for (c, &pr) in counts.iter().zip(&probs) {
                let se = (n as f64 * pr * (1.0 - pr)).sqrt().max(1.0);
                assert!((c - n as f64 * pr).abs() < 4.0 * se, "p={p} ζ={zeta}");
            }
            // adjacent pairs both erring: expected (n−1)p² under independence
            let pairs = (n - 1) as f64;
            let mean = pairs * p * p;
            let sd = (pairs * p * p * (1.0 - p * p) * (1.0 + 2.0 * p))
                .sqrt()
                .max(1.0);
            assert!((lag - mean).abs() < 4.0 * sd, "lag p={p}");
        }
    }
}
