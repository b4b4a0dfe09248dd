//! Segmented prime sieve with an on-disk cache keyed by bound.
//!
//! Experiments re-run frequently over the same prime ranges, so sieved
//! primes are persisted as a flat little-endian u64 file. The cache is an
//! optimization only: a missing, stale, or corrupted file is recomputed and
//! rewritten atomically (write to a temp file, then rename).

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 8] = b"DDKPRIM1";
const SEGMENT: usize = 1 << 18;

pub const CACHE_DIR_ENV: &str = "DEDEKIND_CACHE_DIR";

/// All primes <= bound, no cache.
pub fn primes_up_to_uncached(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let root = (bound as f64).sqrt() as u64 + 2;
    // base sieve up to sqrt(bound)
    let mut base_is_comp = vec![false; root as usize + 1];
    let mut base = Vec::new();
    for p in 2..=root {
        if !base_is_comp[p as usize] {
            base.push(p);
            let mut q = p * p;
            while q <= root {
                base_is_comp[q as usize] = true;
                q += p;
            }
        }
    }
    let mut primes = Vec::with_capacity((bound as f64 / (bound as f64).ln().max(2.0)) as usize + 16);
    let mut seg = vec![false; SEGMENT];
    let mut low = 2u64;
    while low <= bound {
        let high = (low + SEGMENT as u64 - 1).min(bound);
        let len = (high - low + 1) as usize;
        seg[..len].fill(false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = p.max(low.div_ceil(p)) * p;
            if start < p * p {
                start = p * p;
            }
            let mut q = start;
            while q <= high {
                seg[(q - low) as usize] = true;
                q += p;
            }
        }
        for i in 0..len {
            if !seg[i] {
                primes.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    primes
}

/// Directory used for the sieve cache: $DEDEKIND_CACHE_DIR if set, else the
/// system temp directory.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("dedekind-cache"))
}

fn cache_file(dir: &Path, bound: u64) -> PathBuf {
    dir.join(format!("primes_{bound}.bin"))
}

fn read_cache(path: &Path, bound: u64) -> Option<Vec<u64>> {
    let mut file = fs::File::open(path).ok()?;
    let mut header = [0u8; 24];
    file.read_exact(&mut header).ok()?;
    if &header[..8] != MAGIC {
        return None;
    }
    let stored_bound = u64::from_le_bytes(header[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(header[16..24].try_into().unwrap()) as usize;
    if stored_bound != bound {
        return None;
    }
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes).ok()?;
    if bytes.len() != count * 8 {
        return None;
    }
    let primes: Vec<u64> = bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    // cheap sanity check against silent corruption
    if primes.first().copied() != Some(2).filter(|_| bound >= 2)
        || primes.last().map_or(bound >= 2, |&p| p > bound)
        || !primes.windows(2).all(|w| w[0] < w[1])
    {
        return None;
    }
    Some(primes)
}

fn write_cache(path: &Path, bound: u64, primes: &[u64]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    // single-writer discipline: write a uniquely named temp file, then rename
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(MAGIC)?;
        f.write_all(&bound.to_le_bytes())?;
        f.write_all(&(primes.len() as u64).to_le_bytes())?;
        let mut buf = Vec::with_capacity(primes.len() * 8);
        for &p in primes {
            buf.extend_from_slice(&p.to_le_bytes());
        }
        f.write_all(&buf)?;
    }
    fs::rename(&tmp, path)
}

/// All primes <= bound, served from the cache directory when possible.
/// Cache I/O failures are non-fatal: the primes are recomputed.
pub fn primes_up_to_cached(bound: u64, cache_dir: &Path) -> Vec<u64> {
    let path = cache_file(cache_dir, bound);
    if let Some(primes) = read_cache(&path, bound) {
        return primes;
    }
    let primes = primes_up_to_uncached(bound);
    let _ = write_cache(&path, bound, &primes);
    primes
}

/// Convenience wrapper using the default cache directory.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    primes_up_to_cached(bound, &default_cache_dir())
}
