//! `path,label` CSV manifests describing a labelled audio corpus.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::clip::AudioClip;
use super::wav::read_wav;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    pub name: String,
    pub entries: Vec<ManifestEntry>,
    pub expected_sample_rate_hz: Option<u32>,
    /// Directory relative paths are resolved against.
    pub base_dir: PathBuf,
}

impl DatasetManifest {
    pub fn new(name: impl Into<String>, entries: Vec<ManifestEntry>, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let manifest = Self {
            name: name.into(),
            entries,
            expected_sample_rate_hz: None,
            base_dir: base_dir.into(),
        };
        manifest.validate()?;
        Ok(manifest)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.entries {
            if !seen.insert(&e.path) {
                return Err(Error::InvalidDataset(format!("duplicate path {}", e.path.display())));
            }
        }
        let labels = self.labels();
        if labels.len() < 2 {
            return Err(Error::InvalidDataset(format!(
                "need at least 2 distinct labels, found {}",
                labels.len()
            )));
        }
        Ok(())
    }

    /// Distinct labels in sorted order.
    pub fn labels(&self) -> BTreeSet<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn resolve(&self, entry: &ManifestEntry) -> PathBuf {
        if entry.path.is_absolute() {
            entry.path.clone()
        } else {
            self.base_dir.join(&entry.path)
        }
    }
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<DatasetManifest> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "path" || &headers[1] != "label" {
        return Err(Error::InvalidDataset(format!(
            "expected header `path,label`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let entries = reader.deserialize::<ManifestEntry>().collect::<Result<Vec<_>, _>>()?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    DatasetManifest::new(name, entries, base_dir)
}

pub fn write_manifest(path: impl AsRef<Path>, entries: &[ManifestEntry]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = csv::Writer::from_writer(file);
    for e in entries {
        writer.serialize(e)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Clips that decoded, plus the entries that did not.
#[derive(Debug, Clone)]
pub struct LoadedDataset<T = f64> {
    pub clips: Vec<AudioClip<T>>,
    pub failures: Vec<(PathBuf, String)>,
}

/// Reads every manifest entry; unreadable files are reported, not fatal.
pub fn load_clips<T: Real>(manifest: &DatasetManifest) -> LoadedDataset<T> {
    let mut out = LoadedDataset {
        clips: Vec::with_capacity(manifest.entries.len()),
        failures: Vec::new(),
    };
    for entry in &manifest.entries {
        let path = manifest.resolve(entry);
        match read_wav::<T>(&path) {
            Ok(mut clip) => {
                clip.set_label(entry.label.clone());
                if let Some(rate) = manifest.expected_sample_rate_hz {
                    if clip.sample_rate_hz() != rate {
                        log::warn!(
                            "{}: {} Hz differs from expected {} Hz",
                            path.display(),
                            clip.sample_rate_hz(),
                            rate
                        );
                    }
                }
                out.clips.push(clip);
            }
            Err(e) => {
                log::warn!("skipping {}: {e}", path.display());
                out.failures.push((path, e.to_string()));
            }
        }
    }
    out
}

/// Nominal characteristics of the public corpora the toolkit was designed
/// around. The audio itself is never bundled; these seed sweep grids for
/// user-supplied manifests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DatasetPreset {
    pub name: &'static str,
    pub sample_rate_hz: u32,
    pub bit_depth: u32,
    pub clip_length_s: f64,
    pub quantity: usize,
    pub num_classes: usize,
}

pub const ESC50: DatasetPreset = DatasetPreset {
    name: "ESC-50",
    sample_rate_hz: 44_100,
    bit_depth: 16,
    clip_length_s: 5.0,
    quantity: 2_000,
    num_classes: 50,
};

pub const GTZAN: DatasetPreset = DatasetPreset {
    name: "GTZAN",
    sample_rate_hz: 22_050,
    bit_depth: 16,
    clip_length_s: 30.0,
    quantity: 1_000,
    num_classes: 10,
};

pub const TESS: DatasetPreset = DatasetPreset {
    name: "TESS",
    sample_rate_hz: 24_414,
    bit_depth: 16,
    clip_length_s: 1.5,
    quantity: 1_400,
    num_classes: 7,
};

pub const AUDIO_MNIST: DatasetPreset = DatasetPreset {
    name: "AudioMNIST",
    sample_rate_hz: 48_000,
    bit_depth: 16,
    clip_length_s: 0.7,
    quantity: 30_000,
    num_classes: 10,
};

pub const PRESETS: [DatasetPreset; 4] = [ESC50, GTZAN, TESS, AUDIO_MNIST];

pub fn preset(name: &str) -> Option<DatasetPreset> {
    let key = |s: &str| s.to_ascii_lowercase().replace(['-', '_', ' '], "");
    PRESETS.into_iter().find(|p| key(p.name) == key(name))
}
