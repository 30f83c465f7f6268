use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use alcore::{compute_al_matrix, diamond_matrices, verify_w, ALMatrix, PrecisionPolicy, Space, VerifyReport, ZBasis};
use cyclo::CycMatrix;
use newforms::FixtureStore;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};
use zlinalg::QMatrix;

use crate::CliError;

const FORMAT: &str = "almodel-cache/1";

/// How a cached matrix was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit(PathBuf),
    Miss(PathBuf),
    /// The entry existed but was unreadable or failed verification.
    Rebuilt(PathBuf, String),
}

#[derive(Serialize, Deserialize)]
struct Entry {
    format: String,
    key: String,
    sha256: String,
    payload: String,
}

#[derive(Serialize, Deserialize)]
struct Payload {
    w: CycMatrix,
    betas: Vec<Vec<Vec<String>>>,
    b: String,
    denom_bound: String,
    precision: u32,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of every fixture file the space can read: `nf_M_k.json` for `M | N`.
pub fn fixture_digest(store: &FixtureStore, level: u64, weight: u32) -> Result<String, CliError> {
    let mut h = Sha256::new();
    for m in (1..=level).filter(|m| level % m == 0) {
        let path = store.path(m, weight);
        if path.exists() {
            let bytes = std::fs::read(&path)?;
            h.update(format!("{m}:{}:", bytes.len()));
            h.update(&bytes);
        } else {
            h.update(format!("{m}:missing;"));
        }
    }
    Ok(hex::encode(h.finalize()))
}

/// On-disk store of verified Atkin-Lehner matrices keyed by a hash of the
/// space, the precision policy and the fixture contents.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    pub fn key(space: &Space, policy: PrecisionPolicy, fixtures: &str) -> String {
        let id = json!({
            "format": FORMAT,
            "level": space.level,
            "weight": space.weight,
            "h": space.h.elements().collect::<Vec<_>>(),
            "bits": policy.initial_bits,
            "escalations": policy.max_escalations,
            "fixtures": fixtures,
        });
        sha256_hex(id.to_string().as_bytes())
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("al-{key}.json")))
    }

    /// `W` for `space`, from the cache when a stored entry still verifies.
    pub fn al_matrix(
        &self,
        space: &Space,
        store: &FixtureStore,
        policy: PrecisionPolicy,
    ) -> Result<(ALMatrix, VerifyReport, CacheStatus), CliError> {
        let Some(dir) = &self.dir else {
            let (al, report) = compute_al_matrix(space, store, policy)?;
            return Ok((al, report, CacheStatus::Disabled));
        };
        let key = Cache::key(space, policy, &fixture_digest(store, space.level, space.weight)?);
        let path = dir.join(format!("al-{key}.json"));
        let mut stale = None;
        if path.exists() {
            match load(&path, &key, space, store) {
                Ok((al, report)) => return Ok((al, report, CacheStatus::Hit(path))),
                Err(reason) => stale = Some(reason),
            }
        }
        let (al, report) = compute_al_matrix(space, store, policy)?;
        std::fs::create_dir_all(dir)?;
        write_atomic(&path, &entry(&al, &key)?)?;
        let status = match stale {
            Some(reason) => CacheStatus::Rebuilt(path, reason),
            None => CacheStatus::Miss(path),
        };
        Ok((al, report, status))
    }
}

fn entry(al: &ALMatrix, key: &str) -> Result<String, CliError> {
    let strings = |m: &QMatrix| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
    };
    let payload = Payload {
        w: al.w.clone(),
        betas: al.betas.iter().map(strings).collect(),
        b: al.b.to_string(),
        denom_bound: al.denom_bound.to_string(),
        precision: al.precision,
    };
    let payload = serde_json::to_string(&payload)?;
    let e = Entry { format: FORMAT.into(), key: key.into(), sha256: sha256_hex(payload.as_bytes()), payload };
    Ok(serde_json::to_string(&e)?)
}

fn parse_matrix(rows: &[Vec<String>], g: usize) -> Result<QMatrix, String> {
    if rows.len() != g || rows.iter().any(|r| r.len() != g) {
        return Err("beta has the wrong shape".into());
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_str(x).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if g == 0 { QMatrix::zeros(0, 0) } else { QMatrix::from_rows(rows) })
}

fn load(path: &Path, key: &str, space: &Space, store: &FixtureStore) -> Result<(ALMatrix, VerifyReport), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let e: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if e.format != FORMAT || e.key != key {
        return Err("entry does not match its key".into());
    }
    if sha256_hex(e.payload.as_bytes()) != e.sha256 {
        return Err("payload hash mismatch".into());
    }
    let p: Payload = serde_json::from_str(&e.payload).map_err(|e| e.to_string())?;
    let basis = Arc::new(ZBasis::build(space, store).map_err(|e| e.to_string())?);
    let diamonds = diamond_matrices(&basis).map_err(|e| e.to_string())?;
    let g = basis.dim();
    if p.w.rows() != g || p.w.cols() != g || p.w.conductor() != diamonds.q {
        return Err("stored W has the wrong shape or conductor".into());
    }
    let betas = p.betas.iter().map(|m| parse_matrix(m, g)).collect::<Result<Vec<_>, _>>()?;
    let int = |s: &str| BigInt::from_str(s).map_err(|e| e.to_string());
    let al = ALMatrix { basis, diamonds, w: p.w, betas, b: int(&p.b)?, denom_bound: int(&p.denom_bound)?, precision: p.precision };
    let report = verify_w(&al);
    if !report.passed() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        return Err(format!("stored W fails {}", names.join(", ")));
    }
    Ok((al, report))
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(())
}
