//! ADMF binary snapshots of spectral fields.
//!
//! Layout (little-endian): magic `ADMF`, `u32` version (= 1), `u32` n,
//! `f64` L, `u8` flags (bit 0: divergence-free), then for each of the three
//! components the n³ coefficients as `(re, im)` f64 pairs in lattice order.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rustfft::num_complex::Complex64;

use crate::error::{AdmError, Result};
use crate::field::SpectralField;
use crate::lattice::WaveLattice;

pub const MAGIC: &[u8; 4] = b"ADMF";
pub const VERSION: u32 = 1;
const FLAG_DIVERGENCE_FREE: u8 = 0b1;
const HEADER_LEN: usize = 4 + 4 + 4 + 8 + 1;

pub fn encode(f: &SpectralField) -> Vec<u8> {
    let lat = f.lattice();
    let mut out = Vec::with_capacity(HEADER_LEN + 3 * lat.len() * 16);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(lat.n() as u32).to_le_bytes());
    out.extend_from_slice(&lat.box_size().to_le_bytes());
    out.push(if f.is_divergence_free() {
        FLAG_DIVERGENCE_FREE
    } else {
        0
    });
    for c in 0..3 {
        for v in f.component(c) {
            out.extend_from_slice(&v.re.to_le_bytes());
            out.extend_from_slice(&v.im.to_le_bytes());
        }
    }
    out
}

pub fn decode(bytes: &[u8]) -> std::result::Result<SpectralField, String> {
    if bytes.len() < HEADER_LEN {
        return Err("truncated header".into());
    }
    if &bytes[0..4] != MAGIC {
        return Err("bad magic".into());
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(format!("unsupported version {version}"));
    }
    let n = u32_at(8) as usize;
    let box_size = f64_at(12);
    let flags = bytes[20];
    let lat = WaveLattice::new(n, box_size).map_err(|e| e.to_string())?;
    let expected = HEADER_LEN + 3 * lat.len() * 16;
    if bytes.len() != expected {
        return Err(format!(
            "payload length {} does not match n = {n} (expected {expected})",
            bytes.len()
        ));
    }
    let mut offset = HEADER_LEN;
    let coeffs = std::array::from_fn(|_| {
        (0..lat.len())
            .map(|_| {
                let v = Complex64::new(f64_at(offset), f64_at(offset + 8));
                offset += 16;
                v
            })
            .collect()
    });
    SpectralField::from_coeffs(lat, coeffs, flags & FLAG_DIVERGENCE_FREE != 0)
        .map_err(|e| e.to_string())
}

pub fn write(path: &Path, f: &SpectralField) -> Result<()> {
    let mut file = fs::File::create(path)
        .map_err(|e| AdmError::io(format!("creating {}", path.display()), e))?;
    file.write_all(&encode(f))
        .map_err(|e| AdmError::io(format!("writing {}", path.display()), e))
}

pub fn read(path: &Path) -> Result<SpectralField> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut file| file.read_to_end(&mut bytes))
        .map_err(|e| AdmError::io(format!("reading {}", path.display()), e))?;
    decode(&bytes).map_err(|reason| AdmError::Snapshot {
        path: path.to_path_buf(),
        reason,
    })
}
