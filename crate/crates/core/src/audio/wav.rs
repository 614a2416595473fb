//! Minimal RIFF/WAVE PCM reader and writer.
//!
//! Reads integer PCM at 8/16/24/32 bits with one or two channels (stereo is
//! averaged to mono). 8-bit data is unsigned with a midpoint of 128, every
//! other depth is signed little-endian. Float and compressed codecs are
//! rejected with [`Error::UnsupportedFormat`].

use std::fs;
use std::path::Path;

use super::clip::{mix_to_mono, AudioClip};
use crate::error::{Error, Result};
use crate::scalar::Real;

const FORMAT_PCM: u16 = 0x0001;
const FORMAT_IEEE_FLOAT: u16 = 0x0003;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

pub const WRITABLE_DEPTHS: [u32; 4] = [8, 16, 24, 32];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WavFormat {
    pub channels: u16,
    pub sample_rate_hz: u32,
    pub bits_per_sample: u16,
}

pub fn read_wav<T: Real>(path: impl AsRef<Path>) -> Result<AudioClip<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_wav(&bytes, &path.display().to_string())
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn parse_fmt(body: &[u8]) -> Result<WavFormat> {
    if body.len() < 16 {
        return Err(Error::Parse(format!("fmt chunk is {} bytes, need 16", body.len())));
    }
    let mut tag = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let sample_rate_hz = u32_at(body, 4);
    let bits_per_sample = u16_at(body, 14);
    if tag == FORMAT_EXTENSIBLE {
        if body.len() < 40 {
            return Err(Error::Parse("truncated WAVE_FORMAT_EXTENSIBLE header".into()));
        }
        tag = u16_at(body, 24);
    }
    match tag {
        FORMAT_PCM => {}
        FORMAT_IEEE_FLOAT => {
            return Err(Error::UnsupportedFormat("IEEE float samples".into()));
        }
        other => {
            return Err(Error::UnsupportedFormat(format!("format tag 0x{other:04x}")));
        }
    }
    if !(1..=2).contains(&channels) {
        return Err(Error::UnsupportedFormat(format!("{channels} channels")));
    }
    if !WRITABLE_DEPTHS.contains(&u32::from(bits_per_sample)) {
        return Err(Error::UnsupportedFormat(format!("{bits_per_sample}-bit PCM")));
    }
    if sample_rate_hz == 0 {
        return Err(Error::Parse("sample rate is zero".into()));
    }
    Ok(WavFormat {
        channels,
        sample_rate_hz,
        bits_per_sample,
    })
}

/// Decodes an in-memory WAVE file. `origin` is recorded on the clip.
pub fn decode_wav<T: Real>(bytes: &[u8], origin: &str) -> Result<AudioClip<T>> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::Parse("missing RIFF/WAVE signature".into()));
    }
    let mut format = None;
    let mut data: Option<&[u8]> = None;
    let mut at = 12;
    while at + 8 <= bytes.len() {
        let id = &bytes[at..at + 4];
        let declared = u32_at(bytes, at + 4) as usize;
        let start = at + 8;
        // Streaming writers leave the size unset; clamp to what is present.
        let end = start.saturating_add(declared).min(bytes.len());
        let body = &bytes[start..end];
        match id {
            b"fmt " => format = Some(parse_fmt(body)?),
            b"data" => {
                if format.is_none() {
                    return Err(Error::Parse("data chunk precedes fmt chunk".into()));
                }
                data = Some(body);
                break;
            }
            _ => {}
        }
        at = end + (declared & 1);
    }
    let format = format.ok_or_else(|| Error::Parse("no fmt chunk".into()))?;
    let data = data.ok_or_else(|| Error::Parse("no data chunk".into()))?;

    let width = usize::from(format.bits_per_sample / 8);
    let channels = usize::from(format.channels);
    let frames = data.len() / (width * channels);
    if frames == 0 {
        return Err(Error::Parse("data chunk holds no complete frames".into()));
    }
    let bits = u32::from(format.bits_per_sample);
    let scale = T::one() / T::pow2(bits - 1);
    let interleaved: Vec<T> = data[..frames * width * channels]
        .chunks_exact(width)
        .map(|s| T::of(f64::from(decode_int(s))) * scale)
        .collect();
    let mono = mix_to_mono(&interleaved, channels);
    Ok(AudioClip::from_parts(
        mono,
        format.sample_rate_hz,
        bits,
        String::new(),
        origin.to_string(),
    ))
}

fn decode_int(s: &[u8]) -> i32 {
    match s.len() {
        1 => i32::from(s[0]) - 128,
        2 => i32::from(i16::from_le_bytes([s[0], s[1]])),
        3 => i32::from_le_bytes([0, s[0], s[1], s[2]]) >> 8,
        4 => i32::from_le_bytes([s[0], s[1], s[2], s[3]]),
        _ => unreachable!("sample width validated in parse_fmt"),
    }
}

/// Signed integer code for `x` at `bits` of precision (mid-tread, clamped).
pub(crate) fn pcm_code<T: Real>(x: T, bits: u32) -> i64 {
    let full = T::pow2(bits - 1);
    let q = (x * full).round().to_f64_lossy();
    let hi = (bits - 1) as f64;
    q.clamp(-hi.exp2(), hi.exp2() - 1.0) as i64
}

/// Encodes a mono clip as a canonical 44-byte-header PCM WAVE file.
pub fn encode_wav<T: Real>(clip: &AudioClip<T>, bit_depth: u32) -> Result<Vec<u8>> {
    if !WRITABLE_DEPTHS.contains(&bit_depth) {
        return Err(Error::UnsupportedFormat(format!("cannot write {bit_depth}-bit PCM")));
    }
    let width = (bit_depth / 8) as usize;
    let data_len = clip.len() * width;
    let riff_len =
        u32::try_from(36 + data_len).map_err(|_| Error::InvalidInput("clip too long for a RIFF file".into()))?;
    let rate = clip.sample_rate_hz();
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&riff_len.to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * width as u32).to_le_bytes());
    out.extend_from_slice(&(width as u16).to_le_bytes());
    out.extend_from_slice(&(bit_depth as u16).to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in clip.samples() {
        let code = pcm_code(s, bit_depth);
        match width {
            1 => out.push((code + 128) as u8),
            2 => out.extend_from_slice(&(code as i16).to_le_bytes()),
            3 => out.extend_from_slice(&(code as i32).to_le_bytes()[..3]),
            _ => out.extend_from_slice(&(code as i32).to_le_bytes()),
        }
    }
    Ok(out)
}

pub fn write_wav<T: Real>(clip: &AudioClip<T>, bit_depth: u32, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_wav(clip, bit_depth)?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
