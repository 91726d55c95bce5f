//! Flat-file cache for closed coset tables.
//!
//! Format (little endian throughout):
//!   magic  "BQCT1\n"
//!   32 bytes  sha256 of the presentation serialization
//!   32 bytes  sha256 of the subgroup generator serialization
//!   u32       number of generators
//!   u32       index (coset count)
//!   body      index * 2 * ngens u32 words, row major
//!
//! Files are looked up by a key derived from both hashes; an entry whose
//! header does not match the request is ignored as stale.

use super::{CosetTable, Presentation};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 6] = b"BQCT1\n";

fn hash_bytes(data: &[u8]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(data);
    h.finalize().into()
}

fn subgens_bytes(subgens: &[Vec<i32>]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&(subgens.len() as u32).to_le_bytes());
    for w in subgens {
        out.extend_from_slice(&(w.len() as u32).to_le_bytes());
        for &x in w {
            out.extend_from_slice(&x.to_le_bytes());
        }
    }
    out
}

/// Key (hex file stem) for a presentation + subgroup generator pair.
pub fn cache_key(p: &Presentation, subgens: &[Vec<i32>]) -> String {
    let hp = hash_bytes(&p.ser_bytes());
    let hs = hash_bytes(&subgens_bytes(subgens));
    let mut all = Vec::with_capacity(64);
    all.extend_from_slice(&hp);
    all.extend_from_slice(&hs);
    let h = hash_bytes(&all);
    h.iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, p: &Presentation, subgens: &[Vec<i32>]) -> PathBuf {
    dir.join(format!("{}.bqct", cache_key(p, subgens)))
}

pub fn read_cached_table(
    dir: &Path,
    p: &Presentation,
    subgens: &[Vec<i32>],
) -> Option<CosetTable> {
    let path = cache_path(dir, p, subgens);
    let data = fs::read(path).ok()?;
    if data.len() < 6 + 64 + 8 || &data[..6] != MAGIC {
        return None;
    }
    let hp = hash_bytes(&p.ser_bytes());
    let hs = hash_bytes(&subgens_bytes(subgens));
    if data[6..38] != hp || data[38..70] != hs {
        return None; // stale entry under a colliding name
    }
    let ngens = u32::from_le_bytes(data[70..74].try_into().ok()?) as usize;
    let index = u32::from_le_bytes(data[74..78].try_into().ok()?) as usize;
    if ngens != p.ngens {
        return None;
    }
    let body = &data[78..];
    if body.len() != index * 2 * ngens * 4 {
        return None;
    }
    let t = CosetTable::from_body_bytes(ngens, body)?;
    if t.len() != index || !t.validate(p) {
        return None;
    }
    Some(t)
}

pub fn write_cached_table(
    dir: &Path,
    p: &Presentation,
    subgens: &[Vec<i32>],
    t: &CosetTable,
) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, p, subgens);
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(MAGIC)?;
    f.write_all(&hash_bytes(&p.ser_bytes()))?;
    f.write_all(&hash_bytes(&subgens_bytes(subgens)))?;
    f.write_all(&(t.ngens as u32).to_le_bytes())?;
    f.write_all(&(t.len() as u32).to_le_bytes())?;
    f.write_all(&t.body_bytes())?;
    f.sync_all()?;
    fs::rename(tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgrp::todd_coxeter;

    #[test]
    fn round_trip_and_stale_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let p = Presentation::new(&["a"], vec![vec![1; 12]]);
        let sub = vec![vec![1, 1, 1, 1]];
        let t = todd_coxeter(&p, &sub, 100).unwrap();
        assert!(read_cached_table(dir.path(), &p, &sub).is_none());
        write_cached_table(dir.path(), &p, &sub, &t).unwrap();
        let back = read_cached_table(dir.path(), &p, &sub).unwrap();
        assert_eq!(back, t);
        // stale: overwrite the file with a mismatched header
        let path = dir.path().join(format!("{}.bqct", cache_key(&p, &sub)));
        let mut data = std::fs::read(&path).unwrap();
        data[10] ^= 0xff;
        std::fs::write(&path, data).unwrap();
        assert!(read_cached_table(dir.path(), &p, &sub).is_none());
    }
}
