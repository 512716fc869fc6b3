//! Binary dictionary dump.
//!
//! Layout: the magic `NFCS`, then `N`, `M` and a reserved zero word as
//! little-endian `u32`, followed by `N * M` complex entries in row-major
//! order, each as two little-endian `f32` (real, imaginary).

use std::fs;
use std::path::Path;

use nearfield_core::{CMatrix, C64};

use crate::error::{Result, SimError};

pub const MAGIC: &[u8; 4] = b"NFCS";
pub const HEADER_LEN: usize = 16;

pub fn encode(matrix: &CMatrix) -> Vec<u8> {
    let (n, m) = (matrix.rows(), matrix.cols());
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * n * m);
    out.extend_from_slice(MAGIC);
    for word in [n as u32, m as u32, 0] {
        out.extend_from_slice(&word.to_le_bytes());
    }
    for i in 0..n {
        for j in 0..m {
            let z = matrix.get(i, j);
            out.extend_from_slice(&(z.re as f32).to_le_bytes());
            out.extend_from_slice(&(z.im as f32).to_le_bytes());
        }
    }
    out
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<CMatrix> {
    let bad = |message: String| SimError::Format {
        what: "dictionary file",
        path: path.into(),
        message,
    };
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(bad("missing NFCS header".into()));
    }
    let word = |k: usize| u32::from_le_bytes(bytes[4 * k..4 * k + 4].try_into().unwrap()) as usize;
    let (n, m) = (word(1), word(2));
    let expected = n
        .checked_mul(m)
        .and_then(|x| x.checked_mul(8))
        .and_then(|x| x.checked_add(HEADER_LEN));
    if expected != Some(bytes.len()) {
        return Err(bad(format!("{n}x{m} payload does not match {} bytes", bytes.len())));
    }
    let f = |off: usize| f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap()) as f64;
    Ok(CMatrix::from_fn(n, m, |i, j| {
        let off = HEADER_LEN + 8 * (i * m + j);
        C64::new(f(off), f(off + 4))
    }))
}

pub fn write_dictionary(path: &Path, matrix: &CMatrix) -> Result<()> {
    fs::write(path, encode(matrix)).map_err(|e| SimError::io(path, e))
}

pub fn read_dictionary(path: &Path) -> Result<CMatrix> {
    let bytes = fs::read(path).map_err(|e| SimError::io(path, e))?;
    decode(&bytes, path)
}
