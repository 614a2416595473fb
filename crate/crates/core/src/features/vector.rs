use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Clip-level feature vector with its class label.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector<T = f64> {
    values: Vec<T>,
    label: String,
}

impl<T: Real> FeatureVector<T> {
    pub fn new(values: Vec<T>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("feature vector is empty".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("feature {i} is not finite")));
        }
        Ok(Self::new_unchecked(values, label.into()))
    }

    pub(crate) fn new_unchecked(values: Vec<T>, label: String) -> Self {
        Self { values, label }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Writes `label,f0,f1,...` rows.
pub fn write_features_csv<T: Real>(path: impl AsRef<Path>, features: &[FeatureVector<T>]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    let dim = features.first().map_or(0, FeatureVector::dim);
    let mut header = vec!["label".to_string()];
    header.extend((0..dim).map(|i| format!("f{i}")));
    w.write_record(&header)?;
    for fv in features {
        if fv.dim() != dim {
            return Err(Error::InvalidInput("feature vectors differ in dimension".into()));
        }
        let mut rec = vec![fv.label.clone()];
        rec.extend(fv.values.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_features_csv<T: Real>(path: impl AsRef<Path>) -> Result<Vec<FeatureVector<T>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    let headers = r.headers()?.clone();
    if headers.get(0) != Some("label") || headers.len() < 2 {
        return Err(Error::InvalidInput("feature CSV must start with `label,f0`".into()));
    }
    let mut out = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let values = rec
            .iter()
            .skip(1)
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map(T::of)
                    .map_err(|_| Error::InvalidInput(format!("row {}: bad number {s:?}", row + 1)))
            })
            .collect::<Result<Vec<T>>>()?;
        out.push(FeatureVector::new(values, &rec[0])?);
    }
    Ok(out)
}
