use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Capture window applied before resampling.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ClipLength {
    #[default]
    Full,
    Seconds(f64),
}

impl ClipLength {
    pub fn seconds(self) -> Option<f64> {
        match self {
            ClipLength::Full => None,
            ClipLength::Seconds(s) => Some(s),
        }
    }

    /// Concrete duration, substituting `full` for the full-length case.
    pub fn resolve(self, full: f64) -> f64 {
        self.seconds().unwrap_or(full)
    }
}

impl fmt::Display for ClipLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClipLength::Full => f.write_str("full"),
            ClipLength::Seconds(s) => write!(f, "{s}"),
        }
    }
}

impl std::str::FromStr for ClipLength {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(ClipLength::Full);
        }
        s.parse::<f64>()
            .map(ClipLength::Seconds)
            .map_err(|_| format!("clip length must be seconds or `full`, got {s:?}"))
    }
}

impl Serialize for ClipLength {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ClipLength::Full => s.serialize_str("full"),
            ClipLength::Seconds(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for ClipLength {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ClipLength;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number of seconds or \"full\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ClipLength, E> {
                Ok(ClipLength::Seconds(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ClipLength, E> {
                Ok(ClipLength::Seconds(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ClipLength, E> {
                Ok(ClipLength::Seconds(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ClipLength, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// One point of the degradation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegradationConfig {
    pub sample_rate_hz: u32,
    pub bit_depth: u32,
    #[serde(rename = "clip_length_s")]
    pub clip_length: ClipLength,
}

impl DegradationConfig {
    pub fn new(sample_rate_hz: u32, bit_depth: u32, clip_length: ClipLength) -> Self {
        Self {
            sample_rate_hz,
            bit_depth,
            clip_length,
        }
    }
}

impl fmt::Display for DegradationConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} Hz / {} bit / {} s",
            self.sample_rate_hz, self.bit_depth, self.clip_length
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResampleMode {
    /// Keep the source sample nearest each output instant.
    #[default]
    Decimate,
    /// Low-pass with a windowed-sinc FIR, then decimate.
    Antialiased,
}

impl std::str::FromStr for ResampleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "decimate" => Ok(ResampleMode::Decimate),
            "antialiased" | "antialias" => Ok(ResampleMode::Antialiased),
            _ => Err(format!("unknown resample mode {s:?}")),
        }
    }
}

impl fmt::Display for ResampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResampleMode::Decimate => "decimate",
            ResampleMode::Antialiased => "antialiased",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_length_serde() {
        let full = serde_json::to_string(&ClipLength::Full).unwrap();
        assert_eq!(full, "\"full\"");
        let back: ClipLength = serde_json::from_str("2.5").unwrap();
        assert_eq!(back, ClipLength::Seconds(2.5));
        let back: ClipLength = serde_json::from_str("3").unwrap();
        assert_eq!(back, ClipLength::Seconds(3.0));
        let cfg = DegradationConfig::new(8000, 8, ClipLength::Full);
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(json, r#"{"sample_rate_hz":8000,"bit_depth":8,"clip_length_s":"full"}"#);
        assert_eq!(serde_json::from_str::<DegradationConfig>(&json).unwrap(), cfg);
        assert!("abc".parse::<ClipLength>().is_err());
    }
}
