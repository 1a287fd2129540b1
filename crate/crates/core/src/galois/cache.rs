//! Optional on-disk cache of discrete-log tables.
//!
//! File layout (little endian): magic `EAQGFLT1`, then `p`, `m`, `primitive`
//! as u32, the modulus coefficients as u32, then `exp[0..n]` as u32.
//! Anything that fails validation is rebuilt and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{build_tables, tables_from_exp, FieldData, Tables};

const MAGIC: &[u8; 8] = b"EAQGFLT1";

static CACHE_DIR: Mutex<Option<PathBuf>> = Mutex::new(None);

/// Sets (or clears) the directory used to persist field log tables.
pub fn set_table_cache_dir(dir: Option<PathBuf>) {
    *CACHE_DIR.lock().unwrap_or_else(|e| e.into_inner()) = dir;
}

fn cache_dir() -> Option<PathBuf> {
    CACHE_DIR.lock().unwrap_or_else(|e| e.into_inner()).clone()
}

// FNV-1a, stable across platforms and toolchains.
fn modulus_hash(modulus: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in modulus {
        for b in c.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

fn cache_path(dir: &Path, f: &FieldData) -> PathBuf {
    dir.join(format!("gf-{}-{}-{:016x}.bin", f.p, f.m, modulus_hash(&f.modulus)))
}

pub(super) fn load_or_build(f: &FieldData) -> Tables {
    let Some(dir) = cache_dir() else {
        return build_tables(f);
    };
    let path = cache_path(&dir, f);
    if let Some(exp) = read_exp(&path, f) {
        return tables_from_exp(f, exp);
    }
    let tables = build_tables(f);
    let n = (f.q - 1) as usize;
    // A failed write only costs a rebuild next time.
    let _ = write_exp(&dir, &path, f, &tables.exp[..n]);
    tables
}

fn read_exp(path: &Path, f: &FieldData) -> Option<Vec<u32>> {
    let bytes = fs::read(path).ok()?;
    let n = (f.q - 1) as usize;
    let header = 8 + 4 * (3 + f.modulus.len());
    if bytes.len() != header + 4 * n || &bytes[..8] != MAGIC {
        return None;
    }
    let mut words = bytes[8..].chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]));
    if words.next()? != f.p || words.next()? != f.m || words.next()? != f.primitive.0 {
        return None;
    }
    for &c in &f.modulus {
        if words.next()? != c {
            return None;
        }
    }
    let mut exp: Vec<u32> = words.collect();
    // Every nonzero element exactly once, starting at 1.
    let mut seen = vec![false; f.q as usize];
    for &e in &exp {
        if e == 0 || e >= f.q || std::mem::replace(&mut seen[e as usize], true) {
            return None;
        }
    }
    if exp.first() != Some(&1) {
        return None;
    }
    exp.resize(2 * n.max(1), 0);
    Some(exp)
}

fn write_exp(dir: &Path, path: &Path, f: &FieldData, exp: &[u32]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    let mut out = Vec::with_capacity(8 + 4 * (3 + f.modulus.len() + exp.len()));
    out.extend_from_slice(MAGIC);
    for w in [f.p, f.m, f.primitive.0].iter().chain(&f.modulus).chain(exp) {
        out.extend_from_slice(&w.to_le_bytes());
    }
    let mut file = fs::File::create(&tmp)?;
    file.write_all(&out)?;
    file.sync_all()?;
    fs::rename(tmp, path)
}
