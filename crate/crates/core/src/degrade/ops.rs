use crate::audio::AudioClip;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::config::{ClipLength, DegradationConfig, ResampleMode};
use super::fir::{lowpass_sinc, ANTIALIAS_CUTOFF_RATIO, ANTIALIAS_TAPS};

/// Source index nearest to output sample `i`, computed exactly in integers.
#[inline]
fn nearest_source_index(i: usize, source_hz: u32, target_hz: u32) -> usize {
    let (s, t) = (u64::from(source_hz), u64::from(target_hz));
    ((2 * i as u64 * s + t) / (2 * t)) as usize
}

pub fn resampled_len(len: usize, source_hz: u32, target_hz: u32) -> usize {
    let n = (len as u128 * u128::from(target_hz) / u128::from(source_hz)) as usize;
    n.max(1)
}

/// Changes the sample rate downward. Resampling to the source rate returns
/// the clip unchanged in either mode.
pub fn resample<T: Real>(clip: &AudioClip<T>, target_hz: u32, mode: ResampleMode) -> Result<AudioClip<T>> {
    let source_hz = clip.sample_rate_hz();
    if target_hz == 0 {
        return Err(Error::InvalidRate(0));
    }
    if target_hz > source_hz {
        return Err(Error::UpsampleUnsupported { source_hz, target_hz });
    }
    if target_hz == source_hz {
        return Ok(clip.clone());
    }
    let x = clip.samples();
    let out_len = resampled_len(x.len(), source_hz, target_hz);
    let picks = (0..out_len).map(|i| nearest_source_index(i, source_hz, target_hz));
    let samples: Vec<T> = match mode {
        ResampleMode::Decimate => picks.map(|j| x[j]).collect(),
        ResampleMode::Antialiased => {
            let cutoff = ANTIALIAS_CUTOFF_RATIO * f64::from(target_hz) / f64::from(source_hz);
            let taps: Vec<T> = lowpass_sinc(ANTIALIAS_TAPS, cutoff);
            let half = (taps.len() / 2) as isize;
            let (lo, hi) = (-T::one(), T::one());
            picks
                .map(|j| {
                    let mut acc = T::zero();
                    for (k, &h) in taps.iter().enumerate() {
                        let src = j as isize + half - k as isize;
                        if src >= 0 && (src as usize) < x.len() {
                            acc += h * x[src as usize];
                        }
                    }
                    acc.max(lo).min(hi)
                })
                .collect()
        }
    };
    Ok(clip.with_samples(samples, target_hz, clip.source_bit_depth()))
}

/// Mid-tread uniform quantizer, no dither.
#[inline]
pub fn quantize_sample<T: Real>(x: T, bit_depth: u32) -> T {
    let full = T::pow2(bit_depth - 1);
    let q = (x * full).round().max(-full).min(full - T::one());
    q / full
}

pub fn quantize<T: Real>(clip: &AudioClip<T>, bit_depth: u32) -> Result<AudioClip<T>> {
    let source_depth = clip.source_bit_depth();
    if bit_depth == 0 || bit_depth > source_depth {
        return Err(Error::InvalidDepth {
            requested: bit_depth,
            source_depth,
        });
    }
    let samples = clip.samples().iter().map(|&x| quantize_sample(x, bit_depth)).collect();
    Ok(clip.with_samples(samples, clip.sample_rate_hz(), bit_depth))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Truncation<T = f64> {
    pub clip: AudioClip<T>,
    /// False when the clip was already no longer than the requested window.
    pub shortened: bool,
}

pub fn truncate<T: Real>(clip: &AudioClip<T>, length_s: f64) -> Result<Truncation<T>> {
    if !(length_s > 0.0) || !length_s.is_finite() {
        return Err(Error::InvalidLength(length_s));
    }
    // The epsilon keeps products like 0.7 * 48000 from flooring one short.
    let keep = (length_s * f64::from(clip.sample_rate_hz()) + 1e-9).floor() as usize;
    if keep == 0 {
        return Err(Error::InvalidLength(length_s));
    }
    if keep >= clip.len() {
        return Ok(Truncation {
            clip: clip.clone(),
            shortened: false,
        });
    }
    Ok(Truncation {
        clip: clip.with_samples(
            clip.samples()[..keep].to_vec(),
            clip.sample_rate_hz(),
            clip.source_bit_depth(),
        ),
        shortened: true,
    })
}

/// Checks that `cfg` only reduces fidelity relative to `clip`.
pub fn check_applicable<T: Real>(clip: &AudioClip<T>, cfg: &DegradationConfig) -> Result<()> {
    if cfg.sample_rate_hz == 0 {
        return Err(Error::InvalidRate(0));
    }
    if cfg.sample_rate_hz > clip.sample_rate_hz() {
        return Err(Error::UpsampleUnsupported {
            source_hz: clip.sample_rate_hz(),
            target_hz: cfg.sample_rate_hz,
        });
    }
    if cfg.bit_depth == 0 || cfg.bit_depth > clip.source_bit_depth() {
        return Err(Error::InvalidDepth {
            requested: cfg.bit_depth,
            source_depth: clip.source_bit_depth(),
        });
    }
    if let ClipLength::Seconds(s) = cfg.clip_length {
        if !(s > 0.0) {
            return Err(Error::InvalidLength(s));
        }
    }
    Ok(())
}

/// Truncate, then resample, then quantize.
pub fn apply<T: Real>(clip: &AudioClip<T>, cfg: &DegradationConfig, mode: ResampleMode) -> Result<AudioClip<T>> {
    check_applicable(clip, cfg)?;
    let windowed = match cfg.clip_length {
        ClipLength::Full => clip.clone(),
        ClipLength::Seconds(s) => truncate(clip, s)?.clip,
    };
    let resampled = resample(&windowed, cfg.sample_rate_hz, mode)?;
    quantize(&resampled, cfg.bit_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{dft_peak_hz, sine_clip};
    use proptest::prelude::*;

    fn ramp(n: usize, rate: u32) -> AudioClip {
        let s = (0..n).map(|i| i as f64 / n as f64).collect();
        AudioClip::new(s, rate, 16, "r", "ramp").unwrap()
    }

    #[test]
    fn halving_rate_keeps_every_second_sample() {
        let clip = ramp(10, 44_100);
        let out = resample(&clip, 22_050, ResampleMode::Decimate).unwrap();
        assert_eq!(out.len(), 5);
        let expected: Vec<f64> = clip.samples().iter().step_by(2).copied().collect();
        assert_eq!(out.samples(), expected.as_slice());
        assert_eq!(out.sample_rate_hz(), 22_050);
    }

    #[test]
    fn resample_to_source_rate_is_identity() {
        let clip = ramp(100, 16_000);
        for mode in [ResampleMode::Decimate, ResampleMode::Antialiased] {
            assert_eq!(resample(&clip, 16_000, mode).unwrap(), clip);
        }
    }

    #[test]
    fn resample_rejects_bad_rates() {
        let clip = ramp(100, 16_000);
        assert!(matches!(
            resample(&clip, 22_050, ResampleMode::Decimate),
            Err(Error::UpsampleUnsupported { .. })
        ));
        assert!(matches!(
            resample(&clip, 0, ResampleMode::Decimate),
            Err(Error::InvalidRate(0))
        ));
    }

    #[test]
    fn non_integer_ratio_length() {
        let clip = ramp(22_050, 22_050);
        let out = resample(&clip, 16_000, ResampleMode::Decimate).unwrap();
        assert_eq!(out.len(), 16_000);
        assert!((out.duration_seconds() - clip.duration_seconds()).abs() <= 1.0 / 16_000.0);
    }

    #[test]
    fn antialiased_keeps_passband_tone() {
        let clip = sine_clip(440.0, 44_100, 0.5, 0.8);
        let out = resample(&clip, 8_000, ResampleMode::Antialiased).unwrap();
        let bin = 8_000.0 / out.len() as f64;
        let peak = dft_peak_hz(out.samples(), 8_000);
        assert!((peak - 440.0).abs() <= bin, "peak {peak}");
    }

    #[test]
    fn antialiased_suppresses_what_decimation_aliases() {
        let clip = sine_clip(5_000.0, 44_100, 0.25, 0.8);
        let rms = |c: &AudioClip| (c.samples().iter().map(|s| s * s).sum::<f64>() / c.len() as f64).sqrt();
        let aliased = resample(&clip, 8_000, ResampleMode::Decimate).unwrap();
        let filtered = resample(&clip, 8_000, ResampleMode::Antialiased).unwrap();
        assert!(rms(&aliased) > 0.5);
        assert!(rms(&filtered) < 0.05 * rms(&aliased), "{}", rms(&filtered));
    }

    #[test]
    fn quantizer_examples() {
        assert_eq!(quantize_sample(0.5f64, 4), 0.5);
        assert_eq!(quantize_sample(1.0f64, 4), 0.875);
        assert_eq!(quantize_sample(-1.0f64, 4), -1.0);
        for b in 1..=32 {
            assert_eq!(quantize_sample(0.0f64, b), 0.0);
        }
        // half away from zero
        assert_eq!(quantize_sample(1.0f64 / 16.0, 4), 0.125);
        assert_eq!(quantize_sample(-1.0f64 / 16.0, 4), -0.125);
        assert_eq!(quantize_sample(0.3f32, 1), 0.0);
        assert_eq!(quantize_sample(0.6f32, 1), 0.0);
        assert_eq!(quantize_sample(-0.6f32, 1), -1.0);
    }

    #[test]
    fn quantize_depth_checks() {
        let clip = ramp(16, 8_000);
        assert!(matches!(quantize(&clip, 17), Err(Error::InvalidDepth { .. })));
        assert!(matches!(quantize(&clip, 0), Err(Error::InvalidDepth { .. })));
        let q = quantize(&clip, 8).unwrap();
        assert_eq!(q.source_bit_depth(), 8);
        assert!(matches!(quantize(&q, 10), Err(Error::InvalidDepth { .. })));
    }

    #[test]
    fn truncation_rules() {
        let long = AudioClip::new(vec![0.1; 22_050 * 30], 22_050, 16, "g", "gtzan").unwrap();
        let t = truncate(&long, 15.0).unwrap();
        assert!(t.shortened);
        assert_eq!(t.clip.len(), 330_750);

        let short = AudioClip::new(vec![0.1; 700], 1_000, 16, "s", "s").unwrap();
        let t = truncate(&short, 5.0).unwrap();
        assert!(!t.shortened);
        assert_eq!(t.clip, short);

        let t = truncate(&short, 0.7).unwrap();
        assert_eq!(t.clip, short);
        assert!(!t.shortened);

        assert!(matches!(truncate(&short, 0.0), Err(Error::InvalidLength(_))));
        assert!(matches!(truncate(&short, -1.0), Err(Error::InvalidLength(_))));
        assert!(matches!(truncate(&short, 1e-6), Err(Error::InvalidLength(_))));
    }

    #[test]
    fn apply_identity_and_composition() {
        let clip = crate::testkit::pcm_noise_clip(44_100, 16, 4_410, 3);
        let identity = DegradationConfig::new(44_100, 16, ClipLength::Full);
        assert_eq!(apply(&clip, &identity, ResampleMode::Decimate).unwrap(), clip);

        let cfg = DegradationConfig::new(22_050, 8, ClipLength::Seconds(0.05));
        let direct = apply(&clip, &cfg, ResampleMode::Decimate).unwrap();
        let staged = quantize(
            &resample(&truncate(&clip, 0.05).unwrap().clip, 22_050, ResampleMode::Decimate).unwrap(),
            8,
        )
        .unwrap();
        assert_eq!(direct, staged);
        assert_eq!(direct.len(), 1_102);
        assert_eq!(direct.source_bit_depth(), 8);
    }

    #[test]
    fn apply_thirty_second_clip() {
        let clip = AudioClip::new(vec![0.25; 44_100 * 30], 44_100, 16, "g", "g").unwrap();
        let cfg = DegradationConfig::new(22_050, 8, ClipLength::Seconds(15.0));
        let out = apply(&clip, &cfg, ResampleMode::Decimate).unwrap();
        assert_eq!(out.len(), 330_750);
        assert_eq!(out.source_bit_depth(), 8);
        assert!(out.samples().iter().all(|&s| s == 0.25));
    }

    #[test]
    fn combined_knee_config_applies() {
        let clip = crate::testkit::pcm_noise_clip(24_414, 16, 24_414, 11);
        let cfg = DegradationConfig::new(20_000, 8, ClipLength::Full);
        let out = apply(&clip, &cfg, ResampleMode::Decimate).unwrap();
        assert_eq!(out.sample_rate_hz(), 20_000);
        assert_eq!(out.len(), 20_000);
    }

    #[test]
    fn apply_rejects_upward_configs() {
        let clip = ramp(100, 8_000);
        let up = DegradationConfig::new(16_000, 16, ClipLength::Full);
        assert!(matches!(
            apply(&clip, &up, ResampleMode::Decimate),
            Err(Error::UpsampleUnsupported { .. })
        ));
        let deep = DegradationConfig::new(8_000, 24, ClipLength::Full);
        assert!(matches!(
            apply(&clip, &deep, ResampleMode::Decimate),
            Err(Error::InvalidDepth { .. })
        ));
    }

    proptest! {
        #[test]
        fn quantize_idempotent(x in -1.0f64..=1.0, b in 1u32..=32) {
            let once = quantize_sample(x, b);
            prop_assert_eq!(quantize_sample(once, b), once);
        }

        #[test]
        fn quantize_error_bounded(x in -1.0f64..=1.0, b in 1u32..=24) {
            let step = (-(b as f64 - 1.0)).exp2();
            prop_assume!(x <= 1.0 - step);
            prop_assert!((x - quantize_sample(x, b)).abs() <= (-(b as f64)).exp2());
        }

        #[test]
        fn resample_preserves_duration(n in 1usize..5_000, src in prop::sample::select(vec![44_100u32, 22_050, 24_414, 48_000]),
                                       dst in prop::sample::select(vec![22_050u32, 16_000, 8_000, 4_000])) {
            let clip = AudioClip::new(vec![0.0f64; n], src, 16, "z", "z").unwrap();
            let out = resample(&clip, dst, ResampleMode::Decimate).unwrap();
            let exact = n as f64 * f64::from(dst) / f64::from(src);
            prop_assert!((out.len() as f64 - exact).abs() <= 1.0);
            prop_assert!((out.duration_seconds() - clip.duration_seconds()).abs() <= 1.0 / f64::from(dst));
        }

        #[test]
        fn data_volume_monotone(rate_hi in 4_000u32..44_100, rate_cut in 0u32..4_000,
                                depth_hi in 2u32..=16, depth_cut in 0u32..2,
                                len_hi in 0.05f64..0.2, len_cut in 0.0f64..0.04) {
            let clip = AudioClip::new(vec![0.0f64; 44_100 / 5], 44_100, 16, "z", "z").unwrap();
            let hi = DegradationConfig::new(rate_hi, depth_hi, ClipLength::Seconds(len_hi));
            let lo = DegradationConfig::new(rate_hi - rate_cut, depth_hi - depth_cut, ClipLength::Seconds(len_hi - len_cut));
            let volume = |c: &DegradationConfig| {
                let out = apply(&clip, c, ResampleMode::Decimate).unwrap();
                out.len() as u64 * u64::from(out.source_bit_depth())
            };
            prop_assert!(volume(&lo) <= volume(&hi));
        }
    }
}
