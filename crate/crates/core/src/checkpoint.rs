//! Resumable state of an orbit computation.
//!
//! Layout (little endian): magic `STSVCKPT`, format version (u32), index
//! bits (u32), fingerprint (u64), next start index (u64), orbit count (u64),
//! then `(representative index, size)` pairs as u64, then the visited
//! bitmap as u64 words.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"STSVCKPT";
const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheckpoint {
    pub bits: u32,
    pub fingerprint: u64,
    pub next_index: u64,
    pub orbits: Vec<(u64, u64)>,
    pub bitmap: Vec<u64>,
}

/// FNV-1a, used to tie a checkpoint to the run that wrote it.
#[derive(Clone, Copy, Debug)]
pub struct Fingerprint(u64);

impl Default for Fingerprint {
    fn default() -> Self {
        Fingerprint(0xcbf2_9ce4_8422_2325)
    }
}

impl Fingerprint {
    pub fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100_0000_01b3);
        }
    }

    pub fn finish(self) -> u64 {
        self.0
    }
}

impl OrbitCheckpoint {
    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            w.write_all(MAGIC)?;
            w.write_all(&VERSION.to_le_bytes())?;
            w.write_all(&self.bits.to_le_bytes())?;
            w.write_all(&self.fingerprint.to_le_bytes())?;
            w.write_all(&self.next_index.to_le_bytes())?;
            w.write_all(&(self.orbits.len() as u64).to_le_bytes())?;
            for &(rep, size) in &self.orbits {
                w.write_all(&rep.to_le_bytes())?;
                w.write_all(&size.to_le_bytes())?;
            }
            for word in &self.bitmap {
                w.write_all(&word.to_le_bytes())?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)
            .map_err(|_| Error::Checkpoint("truncated header".into()))?;
        if &magic != MAGIC {
            return Err(Error::Checkpoint("not a checkpoint file".into()));
        }
        let version = read_u32(&mut r)?;
        if version != VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let bits = read_u32(&mut r)?;
        let fingerprint = read_u64(&mut r)?;
        let next_index = read_u64(&mut r)?;
        let n = read_u64(&mut r)?;
        let mut orbits = Vec::with_capacity(n.min(1 << 24) as usize);
        for _ in 0..n {
            orbits.push((read_u64(&mut r)?, read_u64(&mut r)?));
        }
        let words = bitmap_words(bits);
        let mut bitmap = Vec::with_capacity(words);
        for _ in 0..words {
            bitmap.push(read_u64(&mut r)?);
        }
        let mut extra = [0u8; 1];
        if r.read(&mut extra)? != 0 {
            return Err(Error::Checkpoint("trailing data".into()));
        }
        Ok(OrbitCheckpoint {
            bits,
            fingerprint,
            next_index,
            orbits,
            bitmap,
        })
    }
}

pub fn bitmap_words(bits: u32) -> usize {
    ((1u128 << bits).div_ceil(64)) as usize
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)
        .map_err(|_| Error::Checkpoint("truncated file".into()))?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)
        .map_err(|_| Error::Checkpoint("truncated file".into()))?;
    Ok(u64::from_le_bytes(b))
}
