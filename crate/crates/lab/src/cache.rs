//! On-disk subgroup lattices, one JSON file per invariant-factor list.
//! Files are replaced atomically; a missing, stale or unreadable file is
//! treated as absent and recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use rickart_core::enumerate::{cached_lattice, enumerate_subgroups, preload_lattice};
use rickart_core::{FiniteAbelianGroup, Subgroup};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, HarnessResult};

pub const FORMAT: &str = "rickart-lattice-v1";
pub const DEFAULT_DIR: &str = ".rickart-lab-cache";
pub const DIR_ENV: &str = "RICKART_LAB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    format: String,
    factors: Vec<u64>,
    /// Basis rows of each subgroup.
    subgroups: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheEntry {
    pub key: String,
    pub subgroups: usize,
}

pub struct LatticeCache {
    dir: PathBuf,
}

fn io(path: &Path, e: std::io::Error) -> HarnessError {
    HarnessError::Cache(format!("{}: {e}", path.display()))
}

/// `2-2-4` for `Z2 + Z2 + Z4`, `0` for the zero group.
pub fn key(g: &FiniteAbelianGroup) -> String {
    if g.is_zero() {
        return "0".into();
    }
    g.factors().iter().map(u64::to_string).collect::<Vec<_>>().join("-")
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// `--cache-dir`, else the environment, else the default.
    pub fn resolve(dir: Option<&Path>) -> Self {
        match dir {
            Some(d) => Self::new(d),
            None => Self::new(std::env::var_os(DIR_ENV).map_or_else(|| PathBuf::from(DEFAULT_DIR), PathBuf::from)),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, g: &FiniteAbelianGroup) -> PathBuf {
        self.dir.join(format!("{}.json", key(g)))
    }

    pub fn load(&self, g: &FiniteAbelianGroup) -> Option<Vec<Subgroup>> {
        let text = fs::read_to_string(self.path(g)).ok()?;
        let file: LatticeFile = serde_json::from_str(&text).ok()?;
        if file.format != FORMAT || file.factors != g.factors() {
            return None;
        }
        file.subgroups
            .iter()
            .map(|rows| Subgroup::from_basis_rows(g, rows).ok())
            .collect()
    }

    pub fn store(&self, g: &FiniteAbelianGroup, subs: &[Subgroup]) -> HarnessResult<()> {
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let file = LatticeFile {
            format: FORMAT.into(),
            factors: g.factors().to_vec(),
            subgroups: subs.iter().map(Subgroup::basis_rows).collect(),
        };
        let path = self.path(g);
        let tmp = self.dir.join(format!(".{}.{}.tmp", key(g), std::process::id()));
        let text = serde_json::to_string(&file).expect("lattice serialises");
        fs::write(&tmp, text).map_err(|e| io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| io(&path, e))
    }

    /// Make the lattice of `g` available in memory and on disk: loaded from
    /// a valid file when there is one, otherwise computed (or taken from
    /// memory) and written back.
    pub fn warm(&self, g: &FiniteAbelianGroup) -> HarnessResult<()> {
        let on_disk = self.load(g);
        match (cached_lattice(g), on_disk) {
            (Some(_), Some(_)) => Ok(()),
            (None, Some(list)) => {
                preload_lattice(g, list);
                Ok(())
            }
            (_, None) => {
                let subs = enumerate_subgroups(g)?;
                self.store(g, &subs)
            }
        }
    }

    pub fn warm_up_to(&self, max_order: u64) -> HarnessResult<usize> {
        let groups = FiniteAbelianGroup::all_up_to(max_order);
        for g in &groups {
            self.warm(g)?;
        }
        Ok(groups.len())
    }

    pub fn entries(&self) -> HarnessResult<Vec<CacheEntry>> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(io(&self.dir, e)),
        };
        for entry in rd {
            let path = entry.map_err(|e| io(&self.dir, e))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let Ok(text) = fs::read_to_string(&path) else { continue };
            let Ok(file) = serde_json::from_str::<LatticeFile>(&text) else { continue };
            if file.format != FORMAT {
                continue;
            }
            out.push(CacheEntry {
                key: path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string(),
                subgroups: file.subgroups.len(),
            });
        }
        out.sort_by(|a, b| a.key.cmp(&b.key));
        Ok(out)
    }

    /// Remove every cache file; returns how many were removed.
    pub fn clear(&self) -> HarnessResult<usize> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(io(&self.dir, e)),
        };
        let mut n = 0;
        for entry in rd {
            let path = entry.map_err(|e| io(&self.dir, e))?.path();
            let name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
            if name.ends_with(".json") || name.ends_with(".tmp") {
                fs::remove_file(&path).map_err(|e| io(&path, e))?;
                n += 1;
            }
        }
        Ok(n)
    }
}
