//! Newline-delimited JSON result store. The first line is a manifest holding
//! the run configuration; every later line is one record. Nothing in a store
//! depends on the thread count, so reruns differ only in `elapsed_ms`.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use eulerian::criterion::{Verdict, ZetaLikeOutcome, ZetaLikeVerdict};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

pub const TOOL: &str = "eulerian";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub q: u32,
    pub p: u32,
    pub e: u32,
    pub modulus: String,
    /// Command-specific settings, in a fixed key order.
    pub settings: serde_json::Value,
    pub records: usize,
}

#[derive(Serialize, Deserialize)]
struct Header {
    manifest: Manifest,
}

impl Manifest {
    pub fn new(field: &eulerian::algebra::Field, command: &str, settings: serde_json::Value, records: usize) -> Self {
        Manifest {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            q: field.q(),
            p: field.p(),
            e: field.e(),
            modulus: field.modulus_string(),
            settings,
            records,
        }
    }
}

/// JSON form of a zeta-like verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaLikeRecord {
    pub q: u32,
    pub tuple: Vec<u32>,
    pub weight: u64,
    pub depth: usize,
    pub outcome: &'static str,
    /// null when no witness was found up to the bound.
    pub zeta_like: Option<bool>,
    pub witness_a: Option<String>,
    pub witness_b: Option<String>,
    pub eulerian: Option<bool>,
    pub suffix: Option<Vec<u32>>,
    pub bound: usize,
    pub search_dimension: usize,
    pub elapsed_ms: u64,
}

impl From<&ZetaLikeVerdict> for ZetaLikeRecord {
    fn from(z: &ZetaLikeVerdict) -> Self {
        let (mut a, mut b, mut eulerian, mut suffix) = (None, None, None, None);
        match &z.outcome {
            ZetaLikeOutcome::ZetaLike { a: x, b: y } => {
                a = Some(x.to_string());
                b = Some(y.to_string());
            }
            ZetaLikeOutcome::ReducedToEulerian(v) => eulerian = Some(v.eulerian),
            ZetaLikeOutcome::SuffixNotEulerian(s) => suffix = Some(s.clone()),
            ZetaLikeOutcome::NoneUpToBound => {}
        }
        ZetaLikeRecord {
            q: z.q,
            weight: z.tuple.iter().map(|&x| x as u64).sum(),
            depth: z.tuple.len(),
            tuple: z.tuple.clone(),
            outcome: z.outcome_name(),
            zeta_like: z.is_zeta_like(),
            witness_a: a,
            witness_b: b,
            eulerian,
            suffix,
            bound: z.bound,
            search_dimension: z.search_dimension,
            elapsed_ms: z.elapsed_ms,
        }
    }
}

pub fn tuple_string(s: &[u32]) -> String {
    s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// One CSV row per verdict; tuples are space-separated inside one field.
pub fn write_verdict_csv<W: Write>(out: W, verdicts: &[Verdict]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tuple", "weight", "depth", "eulerian", "tested_tuple", "precheck", "annihilator_degree"])?;
    for v in verdicts {
        w.write_record([
            tuple_string(&v.tuple),
            v.weight.to_string(),
            v.depth.to_string(),
            v.eulerian.to_string(),
            tuple_string(&v.tested_tuple),
            v.precheck.clone().unwrap_or_default(),
            v.annihilator_degree.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_zetalike_csv<W: Write>(out: W, z: &ZetaLikeRecord) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tuple", "weight", "depth", "outcome", "zeta_like", "witness_a", "witness_b", "bound"])?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    w.write_record([
        tuple_string(&z.tuple),
        z.weight.to_string(),
        z.depth.to_string(),
        z.outcome.to_string(),
        opt(z.zeta_like.map(|b| b.to_string())),
        opt(z.witness_a.clone()),
        opt(z.witness_b.clone()),
        z.bound.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

/// Writes manifest and records to `path`, replacing any previous file.
pub fn write_store<T: Serialize>(path: &Path, manifest: &Manifest, records: &[T]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    serde_json::to_writer(&mut f, &Header {
        manifest: manifest.clone(),
    })?;
    f.write_all(b"\n")?;
    for r in records {
        serde_json::to_writer(&mut f, r)?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(())
}

pub fn csv_path(store: &Path) -> PathBuf {
    store.with_extension("csv")
}

/// Reads a verdict store back.
pub fn read_verdicts(path: &Path) -> CliResult<(Manifest, Vec<Verdict>)> {
    let mut lines = BufReader::new(fs::File::open(path)?).lines();
    let first = lines
        .next()
        .ok_or_else(|| CliError::Config(format!("{} is empty", path.display())))??;
    let header: Header = serde_json::from_str(&first)?;
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok((header.manifest, out))
}
