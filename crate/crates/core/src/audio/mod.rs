//! Audio ingestion: clips, WAV files, manifests and synthetic corpora.

mod clip;
mod manifest;
mod synth;
mod wav;

pub use clip::{mix_to_mono, AudioClip, MAX_BIT_DEPTH, MIN_BIT_DEPTH};
pub use manifest::{
    load_clips, load_manifest, preset, write_manifest, DatasetManifest, DatasetPreset, LoadedDataset, ManifestEntry,
    AUDIO_MNIST, ESC50, GTZAN, PRESETS, TESS,
};
pub use synth::{generate_synthetic, SynthSpec, HARMONICS, NOISE_RELATIVE_AMPLITUDE, PEAK_LEVEL, SYNTH_BIT_DEPTH};
pub use wav::{decode_wav, encode_wav, read_wav, write_wav, WavFormat, WRITABLE_DEPTHS};
