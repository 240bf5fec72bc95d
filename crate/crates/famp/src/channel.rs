//! BPSK transmission over the binary-input AWGN channel.
//!
//! Bits map to symbols `x = 1 - 2c`, noise is white Gaussian with standard
//! deviation sigma, and the channel LLR is `L = (2/sigma^2) * y`. Sampling
//! uses ChaCha12 streams with the ziggurat standard-normal sampler, so a
//! seed fully determines every draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::code::Codeword;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid channel parameter: {0}")]
    InvalidParam(String),
}

/// Noise level of a BI-AWGN channel, derived from an SNR specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    ebn0_db: f64,
    rate: f64,
    sigma: f64,
    llr_scale: f64,
}

impl ChannelParams {
    /// From Eb/N0 in dB with rate normalization:
    /// `sigma^2 = 1 / (2 * R * 10^(ebn0_db/10))`.
    pub fn from_ebn0_db(ebn0_db: f64, rate: f64) -> Result<Self, ChannelError> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(ChannelError::InvalidParam(format!(
                "rate must be in (0, 1], got {rate}"
            )));
        }
        if !ebn0_db.is_finite() {
            return Err(ChannelError::InvalidParam(format!(
                "Eb/N0 must be finite, got {ebn0_db}"
            )));
        }
        let ebn0 = 10f64.powf(ebn0_db / 10.0);
        let sigma = (1.0 / (2.0 * rate * ebn0)).sqrt();
        Ok(Self {
            ebn0_db,
            rate,
            sigma,
            llr_scale: 2.0 / (sigma * sigma),
        })
    }

    /// From Es/N0 in dB (no rate normalization): `sigma^2 = 1/(2 * 10^(esn0/10))`.
    pub fn from_esn0_db(esn0_db: f64) -> Result<Self, ChannelError> {
        Self::from_ebn0_db(esn0_db, 1.0)
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `2 / sigma^2`, the LLR per unit received amplitude. Also the mean of
    /// the channel LLR when the all-zero codeword is sent.
    pub fn llr_scale(&self) -> f64 {
        self.llr_scale
    }
}

/// Transmits `c` over the channel and returns the channel LLRs,
/// deterministically for a fixed seed.
pub fn transmit(c: &Codeword, params: &ChannelParams, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    transmit_with_rng(c, params, &mut rng)
}

/// Same as [`transmit`] but drawing from a caller-owned RNG stream.
pub fn transmit_with_rng<R: Rng>(c: &Codeword, params: &ChannelParams, rng: &mut R) -> Vec<f64> {
    c.bits()
        .iter()
        .map(|&bit| {
            let x = 1.0 - 2.0 * f64::from(bit);
            let noise: f64 = rng.sample(StandardNormal);
            let y = x + params.sigma * noise;
            params.llr_scale * y
        })
        .collect()
}

/// Symmetric saturating uniform quantizer with `2^bits - 1` levels
/// (the most negative two's-complement code is unused).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformQuantizer {
    bits: u8,
    step: f64,
    max_level: i32,
}

impl UniformQuantizer {
    pub fn new(bits: u8, step: f64) -> Result<Self, ChannelError> {
        if bits < 2 || bits > 16 {
            return Err(ChannelError::InvalidParam(format!(
                "quantizer bits must be in 2..=16, got {bits}"
            )));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(ChannelError::InvalidParam(format!(
                "quantizer step must be positive, got {step}"
            )));
        }
        Ok(Self {
            bits,
            step,
            max_level: (1i32 << (bits - 1)) - 1,
        })
    }

    /// Step chosen so that saturation sits at 1.5x the standard deviation of
    /// the channel LLR, i.e. `max_level * step = 1.5 * (2/sigma)`.
    pub fn for_channel(bits: u8, params: &ChannelParams) -> Result<Self, ChannelError> {
        let max_level = (1i32 << (bits - 1)) - 1;
        let step = 3.0 / (params.sigma() * max_level as f64);
        Self::new(bits, step)
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn max_level(&self) -> i32 {
        self.max_level
    }

    /// Rounds `l/step` half away from zero and clamps to the symmetric range.
    pub fn quantize(&self, l: f64) -> i32 {
        let q = (l / self.step).round();
        let max = self.max_level as f64;
        q.clamp(-max, max) as i32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_formula() {
        // Eb/N0 = 4 dB, R = 0.5: sigma^2 = 1/(2*0.5*10^0.4).
        let p = ChannelParams::from_ebn0_db(4.0, 0.5).unwrap();
        let expect = (1.0 / 10f64.powf(0.4)).sqrt();
        assert!((p.sigma() - expect).abs() < 1e-15);
        assert!(p.sigma() > 0.0);
        assert!(p.llr_scale() > 0.0);
    }

    #[test]
    fn esn0_is_rate_one() {
        let a = ChannelParams::from_esn0_db(3.0).unwrap();
        let b = ChannelParams::from_ebn0_db(3.0, 1.0).unwrap();
        assert_eq!(a.sigma(), b.sigma());
    }

    #[test]
    fn sigma_positive_across_extreme_snr() {
        for db in [-20.0, 0.0, 10.0, 40.0] {
            let p = ChannelParams::from_ebn0_db(db, 0.8413).unwrap();
            assert!(p.sigma() > 0.0);
        }
    }

    #[test]
    fn noiseless_all_zero_gives_positive_llrs() {
        // sigma multiplies the noise, so scaling noise by 0 is equivalent to
        // forcing the noise sample to zero.
        let p = ChannelParams::from_ebn0_db(4.0, 0.5).unwrap();
        let c = Codeword::zeros(16);
        let x: Vec<f64> = c
            .bits()
            .iter()
            .map(|&b| p.llr_scale() * (1.0 - 2.0 * f64::from(b)))
            .collect();
        assert!(x.iter().all(|&l| (l - p.llr_scale()).abs() < 1e-12));
    }

    #[test]
    fn transmit_is_seed_deterministic() {
        let p = ChannelParams::from_ebn0_db(2.0, 0.5).unwrap();
        let c = Codeword::zeros(64);
        assert_eq!(transmit(&c, &p, 7), transmit(&c, &p, 7));
        assert_ne!(transmit(&c, &p, 7), transmit(&c, &p, 8));
    }

    #[test]
    fn empirical_llr_mean_matches_closed_form() {
        // Monte Carlo oracle: mean of L over 1e5 samples vs 2/sigma^2,
        // within 3 standard errors (std of L is 2/sigma).
        let p = ChannelParams::from_ebn0_db(4.0, 0.5).unwrap();
        let c = Codeword::zeros(100_000);
        let llrs = transmit(&c, &p, 42);
        let mean = llrs.iter().sum::<f64>() / llrs.len() as f64;
        let std_err = (2.0 / p.sigma()) / (llrs.len() as f64).sqrt();
        let diff = (mean - p.llr_scale()).abs();
        assert!(
            diff < 3.0 * std_err,
            "mean {mean} vs {} (3 SE = {})",
            p.llr_scale(),
            3.0 * std_err
        );
    }

    #[test]
    fn quantizer_basics() {
        let q = UniformQuantizer::new(4, 1.0).unwrap();
        assert_eq!(q.max_level(), 7);
        assert_eq!(q.quantize(0.0), 0);
        assert_eq!(q.quantize(3.5), 4); // half away from zero
        assert_eq!(q.quantize(-3.5), -4);
        let q5 = UniformQuantizer::new(5, 1.0).unwrap();
        assert_eq!(q5.max_level(), 15);
        assert_eq!(q5.quantize(1e6), 15);
        assert_eq!(q5.quantize(-1e6), -15);
    }

    proptest! {
        #[test]
        fn quantizer_odd_symmetry(l in -1e3f64..1e3, step in 0.01f64..10.0, bits in 2u8..9) {
            let q = UniformQuantizer::new(bits, step).unwrap();
            prop_assert_eq!(q.quantize(-l), -q.quantize(l));
        }

        #[test]
        fn quantizer_monotone(a in -1e3f64..1e3, b in -1e3f64..1e3, step in 0.01f64..10.0) {
            let q = UniformQuantizer::new(4, step).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(q.quantize(lo) <= q.quantize(hi));
        }
    }
}
