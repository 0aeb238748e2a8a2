//! On-disk caching of generator tables.
//!
//! Cache files are keyed by every parameter that determines the table —
//! algebra, `m`, `k`, displacement bound, and the file format version — so a
//! stale or foreign file can never be mistaken for the requested table.  A
//! file that fails validation is recomputed and atomically replaced; writes
//! go through a temporary file in the same directory followed by a rename,
//! so concurrent runs never observe a partial file.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::algebra::StrandGenerator;
use crate::error::{Error, Result};
use crate::io::GeneratorRecord;

/// Version stamp of every file this module writes; bump on layout changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    algebra: String,
    m: i64,
    k: usize,
    max_disp: i64,
    generators: Vec<GeneratorRecord>,
}

fn cache_path(dir: &Path, algebra: &str, m: i64, k: usize, max_disp: i64) -> PathBuf {
    dir.join(format!(
        "{algebra}-m{m}-k{k}-d{max_disp}-v{FORMAT_VERSION}.json"
    ))
}

/// Returns the generator table for the given bounds, served from `dir` when
/// a valid cache file exists there and recomputed (and re-cached) otherwise.
pub fn generators<G: StrandGenerator>(
    dir: Option<&Path>,
    m: i64,
    k: usize,
    max_disp: i64,
) -> Result<Vec<G>> {
    let Some(dir) = dir else {
        return G::enumerate_bounded(m, k, max_disp);
    };
    let path = cache_path(dir, G::algebra_name(), m, k, max_disp);
    match load_valid::<G>(&path, m, k, max_disp) {
        Ok(Some(gens)) => return Ok(gens),
        Ok(None) => {}
        Err(err) => eprintln!(
            "warning: ignoring unusable cache file {}: {err}",
            path.display()
        ),
    }
    let gens = G::enumerate_bounded(m, k, max_disp)?;
    if let Err(err) = store(&path, m, k, max_disp, &gens) {
        eprintln!(
            "warning: could not write cache file {}: {err}",
            path.display()
        );
    }
    Ok(gens)
}

/// Loads and fully validates a cache file.  `Ok(None)` means the file does
/// not exist; any mismatch or parse problem is an error (and the caller
/// falls back to recomputing).
fn load_valid<G: StrandGenerator>(
    path: &Path,
    m: i64,
    k: usize,
    max_disp: i64,
) -> Result<Option<Vec<G>>> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(err.into()),
    };
    let file: CacheFile = serde_json::from_str(&text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Internal(format!(
            "cache format version {} does not match {FORMAT_VERSION}",
            file.format_version
        )));
    }
    if file.algebra != G::algebra_name() || file.m != m || file.k != k || file.max_disp != max_disp
    {
        return Err(Error::Internal(format!(
            "cache key mismatch: file says ({}, m={}, k={}, d={})",
            file.algebra, file.m, file.k, file.max_disp
        )));
    }
    let gens = file
        .generators
        .iter()
        .map(GeneratorRecord::to_generator)
        .collect::<Result<Vec<G>>>()?;
    let sorted = gens.windows(2).all(|w| w[0] < w[1]);
    if !sorted {
        return Err(Error::Internal(
            "cached generator table is not sorted and deduplicated".into(),
        ));
    }
    for g in &gens {
        if g.max_displacement() > max_disp {
            return Err(Error::Internal(format!(
                "cached generator {g} exceeds the displacement bound {max_disp}"
            )));
        }
    }
    Ok(Some(gens))
}

/// Writes the table atomically: temp file in the target directory, then a
/// rename, so readers only ever see complete files.
fn store<G: StrandGenerator>(
    path: &Path,
    m: i64,
    k: usize,
    max_disp: i64,
    gens: &[G],
) -> Result<()> {
    let dir = path.parent().ok_or_else(|| {
        Error::InvalidInput(format!("cache path {} has no parent", path.display()))
    })?;
    std::fs::create_dir_all(dir)?;
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        algebra: G::algebra_name().to_string(),
        m,
        k,
        max_disp,
        generators: gens.iter().map(GeneratorRecord::from_generator).collect(),
    };
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let tmp = dir.join(format!(
        ".{}.tmp.{}.{nanos}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("cache"),
        std::process::id(),
    ));
    std::fs::write(&tmp, serde_json::to_string(&file)?)?;
    match std::fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(err) => {
            let _ = std::fs::remove_file(&tmp);
            Err(err.into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asteroids::CyclicLiftedPermutation;
    use crate::perm::LiftedPermutation;

    #[test]
    fn cache_round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let fresh: Vec<LiftedPermutation> = generators(Some(dir.path()), 3, 1, 2).unwrap();
        let direct = LiftedPermutation::enumerate_bounded(3, 1, 2).unwrap();
        assert_eq!(fresh, direct);
        let path = cache_path(dir.path(), "pong", 3, 1, 2);
        assert!(path.exists());
        let again: Vec<LiftedPermutation> = generators(Some(dir.path()), 3, 1, 2).unwrap();
        assert_eq!(again, direct);
    }

    #[test]
    fn corrupt_cache_is_recomputed_and_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), "pong", 3, 1, 1);
        std::fs::write(&path, "{ not json").unwrap();
        let gens: Vec<LiftedPermutation> = generators(Some(dir.path()), 3, 1, 1).unwrap();
        assert_eq!(gens, LiftedPermutation::enumerate_bounded(3, 1, 1).unwrap());
        let repaired: CacheFile =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(repaired.format_version, FORMAT_VERSION);
        assert_eq!(repaired.generators.len(), gens.len());
    }

    #[test]
    fn mismatched_key_fields_are_not_trusted() {
        let dir = tempfile::tempdir().unwrap();
        let gens: Vec<LiftedPermutation> = generators(Some(dir.path()), 3, 1, 2).unwrap();
        // Masquerade the m=3 file as an m=4 table.
        let src = cache_path(dir.path(), "pong", 3, 1, 2);
        let dst = cache_path(dir.path(), "pong", 4, 1, 2);
        std::fs::copy(&src, &dst).unwrap();
        let fresh: Vec<LiftedPermutation> = generators(Some(dir.path()), 4, 1, 2).unwrap();
        assert_eq!(
            fresh,
            LiftedPermutation::enumerate_bounded(4, 1, 2).unwrap()
        );
        assert_ne!(fresh.len(), gens.len());
    }

    #[test]
    fn algebras_use_distinct_files() {
        let dir = tempfile::tempdir().unwrap();
        let _: Vec<LiftedPermutation> = generators(Some(dir.path()), 3, 1, 1).unwrap();
        let _: Vec<CyclicLiftedPermutation> = generators(Some(dir.path()), 3, 1, 1).unwrap();
        assert!(cache_path(dir.path(), "pong", 3, 1, 1).exists());
        assert!(cache_path(dir.path(), "asteroids", 3, 1, 1).exists());
    }
}
