//! On-disk Anderson–Thakur table keyed by (p, e, modulus), enabled by
//! CARLITZ_CACHE_DIR. Each file holds H_0..H_{k−1} as nested coefficient
//! arrays: t-degree, then θ-degree, then the field element's index.

use std::fs;
use std::path::{Path, PathBuf};

use eulerian::algebra::{BiPoly, Field, Scalar, ThetaPoly};
use eulerian::carlitz::{AtPoly, Carlitz};
use serde::{Deserialize, Serialize};

use crate::CliResult;

pub const ENV: &str = "CARLITZ_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    h: Vec<Vec<Vec<u8>>>,
}

pub struct HCache {
    path: PathBuf,
    loaded: usize,
}

pub fn file_name(field: &Field) -> String {
    let m: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
    format!("h-p{}-e{}-m{}.json", field.p(), field.e(), m.join("_"))
}

fn encode(h: &AtPoly) -> Vec<Vec<u8>> {
    h.coeffs().iter().map(|c| c.coeffs().iter().map(|s| s.0).collect()).collect()
}

fn decode(field: &Field, raw: &[Vec<Vec<u8>>]) -> Option<Vec<AtPoly>> {
    let q = field.q();
    raw.iter()
        .map(|h| {
            let coeffs = h
                .iter()
                .map(|c| {
                    c.iter()
                        .all(|&s| (s as u32) < q)
                        .then(|| ThetaPoly::from_coeffs(field, c.iter().map(|&s| Scalar(s)).collect()))
                })
                .collect::<Option<Vec<_>>>()?;
            Some(BiPoly::from_coeffs(field, coeffs))
        })
        .collect()
}

/// Indices re-derived from their predecessors before a table is trusted.
fn spot_indices(len: usize) -> Vec<usize> {
    let mut s = vec![len.saturating_sub(1), len / 2, 1.min(len.saturating_sub(1))];
    s.sort_unstable();
    s.dedup();
    s
}

impl HCache {
    /// Opens the cache for this field if CARLITZ_CACHE_DIR is set, installing
    /// any stored table into `carlitz`. A file that fails to parse or fails its
    /// spot checks is ignored with a warning and overwritten later.
    pub fn open(carlitz: &Carlitz) -> CliResult<Option<Self>> {
        match std::env::var_os(ENV) {
            Some(dir) if !dir.is_empty() => Self::open_in(Path::new(&dir), carlitz).map(Some),
            _ => Ok(None),
        }
    }

    pub fn open_in(dir: &Path, carlitz: &Carlitz) -> CliResult<Self> {
        let field = carlitz.field();
        let path = dir.join(file_name(field));
        let mut loaded = 0;
        if let Ok(text) = fs::read_to_string(&path) {
            match Self::install(&text, carlitz) {
                Ok(n) => loaded = n,
                Err(why) => eprintln!("warning: ignoring {}: {why}", path.display()),
            }
        }
        Ok(HCache { path, loaded })
    }

    fn install(text: &str, carlitz: &Carlitz) -> Result<usize, String> {
        let field = carlitz.field();
        let file: CacheFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if (file.p, file.e, file.modulus.as_slice()) != (field.p(), field.e(), field.modulus()) {
            return Err("field mismatch".into());
        }
        let table = decode(field, &file.h).ok_or("coefficient out of range")?;
        let n = table.len();
        match carlitz.import_h(table, &spot_indices(n)) {
            Ok(true) => Ok(n),
            Ok(false) => Err("spot check failed".into()),
            Err(e) => Err(e.to_string()),
        }
    }

    /// Number of entries taken from disk.
    pub fn loaded(&self) -> usize {
        self.loaded
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Writes the table back if it grew.
    pub fn save(&self, carlitz: &Carlitz) -> CliResult<()> {
        let table = carlitz.h_table();
        if table.len() <= self.loaded {
            return Ok(());
        }
        let field = carlitz.field();
        let file = CacheFile {
            p: field.p(),
            e: field.e(),
            modulus: field.modulus().to_vec(),
            h: table.iter().map(encode).collect(),
        };
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
