//! BPSK over AWGN: modulation, noise, and channel LLRs.
//!
//! SNR convention: with unit symbol energy and code rate R, the
//! per-dimension noise variance is `sigma^2 = 1 / (2 R (Eb/N0))` with Eb/N0
//! in linear scale. This is the convention consistent with the demodulator
//! LLR `2 y / sigma^2 = 4 R (Eb/N0) y`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Channel parameters for one SNR point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub ebno_db: f64,
    pub rate: f64,
    pub noise_variance: f64,
}

impl ChannelConfig {
    /// Derives the noise variance from `Eb/N0` (dB) and the code rate.
    pub fn new(ebno_db: f64, rate: f64) -> Result<Self> {
        let noise_variance = ebno_db_to_noise_variance(ebno_db, rate)?;
        Ok(ChannelConfig {
            ebno_db,
            rate,
            noise_variance,
        })
    }
}

/// `sigma^2 = 1 / (2 R 10^(EbN0_dB / 10))`; strictly decreasing in `ebno_db`.
pub fn ebno_db_to_noise_variance(ebno_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) || !rate.is_finite() {
        return Err(Error::Config(format!(
            "code rate must lie in (0, 1], got {rate}"
        )));
    }
    if !ebno_db.is_finite() {
        return Err(Error::Config(format!("Eb/N0 must be finite, got {ebno_db}")));
    }
    let ebno_linear = 10f64.powf(ebno_db / 10.0);
    Ok(1.0 / (2.0 * rate * ebno_linear))
}

/// Maps bits to antipodal symbols: 0 -> +1, 1 -> -1.
pub fn bpsk_modulate(codeword: &BitVector) -> Vec<f64> {
    codeword
        .iter()
        .map(|&b| 1.0 - 2.0 * f64::from(b))
        .collect()
}

/// Adds i.i.d. zero-mean Gaussian noise of variance `noise_variance`.
///
/// Deterministic given the stream state of `rng`.
pub fn awgn_transmit<R: Rng>(symbols: &[f64], noise_variance: f64, rng: &mut R) -> Vec<f64> {
    let sigma = noise_variance.sqrt();
    symbols
        .iter()
        .map(|&x| x + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Channel LLRs `L = 2 y / sigma^2`; positive favors bit 0.
pub fn channel_llrs(received: &[f64], noise_variance: f64) -> Result<Vec<f64>> {
    if !(noise_variance > 0.0) {
        return Err(Error::Config(format!(
            "noise variance must be positive, got {noise_variance}"
        )));
    }
    let scale = 2.0 / noise_variance;
    Ok(received.iter().map(|&y| scale * y).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn noise_variance_reference_points() {
        // 0 dB at rate 1/2: sigma^2 = 1.
        assert!((ebno_db_to_noise_variance(0.0, 0.5).unwrap() - 1.0).abs() < 1e-12);
        // 10 log10(2) dB at rate 1/2: sigma^2 = 1/2.
        let v = ebno_db_to_noise_variance(3.0103, 0.5).unwrap();
        assert!((v - 0.5).abs() < 1e-6);
        assert!(ebno_db_to_noise_variance(2.0, 0.0).is_err());
        assert!(ebno_db_to_noise_variance(2.0, 1.5).is_err());
    }

    #[test]
    fn llr_scale_identity() {
        // 2 / sigma^2 == 4 R (Eb/N0)_linear for any input.
        for &(ebno_db, rate) in &[(0.0, 0.5), (3.5, 0.5), (-2.0, 0.25), (6.0, 0.8)] {
            let sigma2 = ebno_db_to_noise_variance(ebno_db, rate).unwrap();
            let lhs = 2.0 / sigma2;
            let rhs = 4.0 * rate * 10f64.powf(ebno_db / 10.0);
            assert!((lhs - rhs).abs() < 1e-9 * rhs.abs());
        }
    }

    #[test]
    fn modulation_mapping() {
        let c = BitVector::from_bits(vec![0, 1, 0]).unwrap();
        assert_eq!(bpsk_modulate(&c), vec![1.0, -1.0, 1.0]);
        assert!(bpsk_modulate(&BitVector::zeros(4)).iter().all(|&x| x == 1.0));
    }

    #[test]
    fn modulate_hard_decision_round_trip() {
        // Slicing noiseless symbols and re-modulating reproduces them.
        let c = BitVector::from_bits(vec![0, 1, 1, 0, 1]).unwrap();
        let symbols = bpsk_modulate(&c);
        let sliced = BitVector::from(
            symbols
                .iter()
                .map(|&s| u8::from(s < 0.0))
                .collect::<Vec<u8>>(),
        );
        assert_eq!(bpsk_modulate(&sliced), symbols);
        assert_eq!(sliced, c);
    }

    #[test]
    fn near_noiseless_transmission() {
        let mut rng = stream_rng(1, 0);
        let x = vec![1.0, -1.0, 1.0, 1.0];
        let y = awgn_transmit(&x, 1e-12, &mut rng);
        for (a, b) in x.iter().zip(y.iter()) {
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn noise_moments() {
        let mut rng = stream_rng(12, 0);
        let sigma2 = 0.7;
        let n = 1_000_000usize;
        let x = vec![0.0; n];
        let w = awgn_transmit(&x, sigma2, &mut rng);
        let mean = w.iter().sum::<f64>() / n as f64;
        let var = w.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        // 4 sigma / sqrt(n) bound on the mean, 1% on the variance.
        assert!(mean.abs() < 4.0 * sigma2.sqrt() / (n as f64).sqrt());
        assert!((var - sigma2).abs() < 0.01 * sigma2);
    }

    #[test]
    fn llr_values() {
        let l = channel_llrs(&[1.0, 0.0, -0.3], 0.5).unwrap();
        assert!((l[0] - 4.0).abs() < 1e-12);
        assert_eq!(l[1], 0.0);
        let l = channel_llrs(&[-0.3], 1.0).unwrap();
        assert!((l[0] + 0.6).abs() < 1e-12);
        assert!(channel_llrs(&[1.0], 0.0).is_err());
    }

    #[test]
    fn channel_symmetry() {
        // Negating symbols with the same noise realization negates the LLRs.
        let sigma2 = 0.5;
        let x: Vec<f64> = vec![1.0, -1.0, 1.0, -1.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        let noise: Vec<f64> = {
            let mut rng = stream_rng(5, 1);
            awgn_transmit(&vec![0.0; 4], sigma2, &mut rng)
        };
        let y: Vec<f64> = x.iter().zip(&noise).map(|(a, w)| a + w).collect();
        let y_neg: Vec<f64> = neg.iter().zip(&noise).map(|(a, w)| a - w).collect();
        let l = channel_llrs(&y, sigma2).unwrap();
        let l_neg = channel_llrs(&y_neg, sigma2).unwrap();
        for (a, b) in l.iter().zip(l_neg.iter()) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn reproducible_streams() {
        let x = vec![1.0; 32];
        let a = awgn_transmit(&x, 0.4, &mut stream_rng(3, 7));
        let b = awgn_transmit(&x, 0.4, &mut stream_rng(3, 7));
        let c = awgn_transmit(&x, 0.4, &mut stream_rng(3, 8));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
