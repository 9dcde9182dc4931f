//! Binary cache of the sorted Weyl group listing.
//!
//! Layout: the magic bytes, then little-endian `u32` fields for the format
//! version, the cyclotomic level, the sort convention and the element count,
//! the SHA-256 digest of the Cartan matrix, the length-prefixed code version,
//! and finally 36 signed bytes per element in listing order.

use std::fs;
use std::path::{Path, PathBuf};

use e6core::exactfield::DEFAULT_LEVEL;
use e6core::weyl::{RootMatrix, WeylGroup, CARTAN, RANK, WEYL_ORDER};
use sha2::{Digest, Sha256};

use crate::error::ToolError;

pub const CACHE_ENV: &str = "E6_CACHE_DIR";
pub const CACHE_FILE: &str = "weyl-e6.bin";
const MAGIC: &[u8; 8] = b"E6WEYL\0\0";
const FORMAT_VERSION: u32 = 1;
/// Row `i` holds the image of simple root `i`; elements sorted by their rows read as signed bytes.
const SORT_CONVENTION: u32 = 1;
const ENTRIES: usize = RANK * RANK;

/// Everything a cache file must agree on to be reused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    pub format: u32,
    pub level: u32,
    pub convention: u32,
    pub cartan_digest: [u8; 32],
    pub code_version: String,
}

impl CacheKey {
    pub fn current() -> CacheKey {
        let mut hasher = Sha256::new();
        for row in CARTAN {
            for entry in row {
                hasher.update(entry.to_le_bytes());
            }
        }
        CacheKey {
            format: FORMAT_VERSION,
            level: DEFAULT_LEVEL,
            convention: SORT_CONVENTION,
            cartan_digest: hasher.finalize().into(),
            code_version: e6core::VERSION.to_string(),
        }
    }

    fn header(&self, count: u32) -> Vec<u8> {
        let mut out = MAGIC.to_vec();
        for field in [self.format, self.level, self.convention, count] {
            out.extend(field.to_le_bytes());
        }
        out.extend(self.cartan_digest);
        out.extend((self.code_version.len() as u32).to_le_bytes());
        out.extend(self.code_version.as_bytes());
        out
    }
}

/// Where the group came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Loaded(PathBuf),
    Written(PathBuf),
}

pub fn encode(group: &WeylGroup) -> Vec<u8> {
    let mut out = CacheKey::current().header(group.len() as u32);
    out.reserve(group.len() * ENTRIES);
    for m in group.elements() {
        out.extend(m.0.iter().map(|&b| b as u8));
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.bytes.len() < n {
            return None;
        }
        let (head, rest) = self.bytes.split_at(n);
        self.bytes = rest;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().expect("four bytes")))
    }
}

pub fn decode(bytes: &[u8], path: &Path) -> Result<WeylGroup, ToolError> {
    let mismatch = |reason: String| ToolError::CacheMismatch { path: path.to_path_buf(), reason };
    let truncated = || mismatch("file is truncated".into());
    let mut r = Reader { bytes };
    if r.take(MAGIC.len()).ok_or_else(truncated)? != MAGIC {
        return Err(mismatch("not a Weyl group cache".into()));
    }
    let format = r.u32().ok_or_else(truncated)?;
    let level = r.u32().ok_or_else(truncated)?;
    let convention = r.u32().ok_or_else(truncated)?;
    let count = r.u32().ok_or_else(truncated)? as usize;
    let cartan_digest: [u8; 32] = r.take(32).ok_or_else(truncated)?.try_into().expect("32 bytes");
    let len = r.u32().ok_or_else(truncated)? as usize;
    let code_version = String::from_utf8_lossy(r.take(len).ok_or_else(truncated)?).into_owned();
    let found = CacheKey { format, level, convention, cartan_digest, code_version };
    let expected = CacheKey::current();
    if found.format != expected.format {
        return Err(mismatch(format!("format version {} (expected {})", found.format, expected.format)));
    }
    if found.level != expected.level {
        return Err(mismatch(format!("level {} (expected {})", found.level, expected.level)));
    }
    if found.convention != expected.convention {
        return Err(mismatch(format!("sort convention {} (expected {})", found.convention, expected.convention)));
    }
    if found.cartan_digest != expected.cartan_digest {
        return Err(mismatch("Cartan matrix digest differs".into()));
    }
    if found.code_version != expected.code_version {
        return Err(mismatch(format!("written by version {} (this is {})", found.code_version, expected.code_version)));
    }
    if count != WEYL_ORDER || r.bytes.len() != count * ENTRIES {
        return Err(mismatch(format!("{count} elements in {} bytes", r.bytes.len())));
    }
    let elements = r
        .bytes
        .chunks_exact(ENTRIES)
        .map(|chunk| RootMatrix(std::array::from_fn(|k| chunk[k] as i8)))
        .collect();
    let group = WeylGroup::from_sorted(elements);
    if !group.validate() {
        return Err(mismatch("listing is not the sorted Weyl group".into()));
    }
    Ok(group)
}


/// Reads the listing from `dir` when a cache exists there, otherwise builds it
/// and writes the cache. A cache from a different build is an error, not a rebuild.
pub fn load_or_build(dir: Option<&Path>) -> Result<(WeylGroup, CacheStatus), ToolError> {
    let Some(dir) = dir else {
        return Ok((WeylGroup::build(), CacheStatus::Disabled));
    };
    let path = dir.join(CACHE_FILE);
    if path.exists() {
        let bytes = fs::read(&path).map_err(|e| ToolError::io(&path, e))?;
        return Ok((decode(&bytes, &path)?, CacheStatus::Loaded(path)));
    }
    let group = WeylGroup::build();
    fs::create_dir_all(dir).map_err(|e| ToolError::io(dir, e))?;
    fs::write(&path, encode(&group)).map_err(|e| ToolError::io(&path, e))?;
    Ok((group, CacheStatus::Written(path)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group() -> &'static WeylGroup {
        static GROUP: std::sync::OnceLock<WeylGroup> = std::sync::OnceLock::new();
        GROUP.get_or_init(WeylGroup::build)
    }

    #[test]
    fn round_trip_preserves_the_listing() {
        let bytes = encode(group());
        let back = decode(&bytes, Path::new("mem")).unwrap();
        assert_eq!(back.elements(), group().elements());
    }

    #[test]
    fn header_changes_are_rejected() {
        let bytes = encode(group());
        let mut wrong_version = bytes.clone();
        wrong_version[8] = 9;
        assert!(matches!(decode(&wrong_version, Path::new("mem")), Err(ToolError::CacheMismatch { .. })));
        let mut wrong_digest = bytes.clone();
        wrong_digest[24] ^= 1;
        assert!(matches!(decode(&wrong_digest, Path::new("mem")), Err(ToolError::CacheMismatch { .. })));
        assert!(matches!(decode(&bytes[..bytes.len() - 1], Path::new("mem")), Err(ToolError::CacheMismatch { .. })));
        assert!(matches!(decode(b"garbage", Path::new("mem")), Err(ToolError::CacheMismatch { .. })));
    }

    #[test]
    fn unsorted_listing_is_rejected() {
        let mut bytes = encode(group());
        let start = bytes.len() - 2 * ENTRIES;
        let (a, b) = bytes[start..].split_at_mut(ENTRIES);
        a.swap_with_slice(b);
        assert!(matches!(decode(&bytes, Path::new("mem")), Err(ToolError::CacheMismatch { .. })));
    }
}
