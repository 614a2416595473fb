//! MFCC front end: framing, power spectrum, mel filterbank, log, DCT-II,
//! clip-level pooling and z-score normalization.

mod dct;
mod frame;
mod mel;
mod mfcc;
mod normalize;
mod params;
mod spectrum;
mod vector;

pub use dct::Dct;
pub use frame::{frame_geometry, frame_signal, hann, FrameGeometry};
pub use mel::{hz_to_mel, mel_filterbank, mel_to_hz, MelFilterbank};
pub use mfcc::{aggregate, featurize, mfcc, MfccExtractor, MfccMatrix};
pub use normalize::{apply_normalizer, fit_normalizer, Normalizer, DEGENERATE_STD};
pub use params::{Aggregation, MfccParams};
pub use spectrum::{fft_size, power_spectrum, PowerSpectrum};
pub use vector::{read_features_csv, write_features_csv, FeatureVector};
