use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use qexp::NumberField;
use serde::Deserialize;
use serde_json::Value;
use zlinalg::numth::{gcd_u64, is_prime_u64};

use crate::NewformError;

/// One Galois orbit of newforms, through a representative `f` with
/// coefficients in `L = Q[a]`.
#[derive(Clone, Debug)]
pub struct NewformRecord {
    pub level: u64,
    pub weight: u32,
    pub label: String,
    pub field: NumberField,
    /// `an[n - 1]` is `a_n` in the power basis of `a`.
    pub an: Vec<Vec<BigRational>>,
    /// Nebentypus values on `(Z/MZ)^*`, as elements of `L`.
    pub char_values: BTreeMap<u64, Vec<BigRational>>,
    pub n_max: usize,
}

impl NewformRecord {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// `a_n` for `1 <= n <= n_max`.
    pub fn a(&self, n: usize) -> &[BigRational] {
        &self.an[n - 1]
    }

    /// `eps_f(d)` for any integer `d` prime to the level.
    pub fn eps(&self, d: u64) -> Option<&Vec<BigRational>> {
        self.char_values.get(&(d % self.level))
    }

    pub fn has_trivial_character(&self) -> bool {
        let one = self.field.one();
        self.char_values.values().all(|v| *v == one)
    }

    /// `Tr_{L/Q}(a^j a_n)` for `0 <= j < deg` and `1 <= n <= len`: row `j`
    /// holds the q-expansion (from `q^0`) of `Tr(a^j f)`.
    pub fn trace_rows(&self, len: usize) -> Vec<Vec<BigRational>> {
        let g = self.degree();
        let mut rows = vec![vec![BigRational::zero(); len]; g];
        for n in 1..len.min(self.n_max + 1) {
            let c = self.a(n);
            for (j, row) in rows.iter_mut().enumerate() {
                let mut t = BigRational::zero();
                for (l, x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        t += x * self.field.power_trace(j + l);
                    }
                }
                row[n] = t;
            }
        }
        rows
    }
}

#[derive(Deserialize)]
struct RawChar {
    modulus: u64,
    values: Vec<(u64, Vec<Value>)>,
}

#[derive(Deserialize)]
struct RawNewform {
    level: u64,
    weight: u32,
    #[serde(default)]
    label: Option<String>,
    field_poly: Vec<Value>,
    an: Vec<Vec<Value>>,
    char: RawChar,
    n_coeffs: usize,
}

#[derive(Deserialize)]
struct RawFile {
    level: u64,
    weight: u32,
    #[serde(default)]
    conductor_cover: Option<u64>,
    newforms: Vec<RawNewform>,
}

fn parse_int(v: &Value) -> Result<BigInt, NewformError> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(NewformError::Schema(format!("expected an integer, got {v}"))),
    };
    s.parse().map_err(|_| NewformError::Schema(format!("bad integer {s}")))
}

fn parse_rat(v: &Value) -> Result<BigRational, NewformError> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(NewformError::Schema(format!("expected a rational, got {v}"))),
    };
    s.parse().map_err(|_| NewformError::Schema(format!("bad rational {s}")))
}

fn parse_vec(v: &[Value], deg: usize, what: &str) -> Result<Vec<BigRational>, NewformError> {
    if v.len() != deg {
        return Err(NewformError::Schema(format!("{what} has {} coordinates, field degree is {deg}", v.len())));
    }
    v.iter().map(parse_rat).collect()
}

fn units(m: u64) -> impl Iterator<Item = u64> {
    (0..m).filter(move |&d| gcd_u64(d, m) == 1).map(move |d| if m == 1 { 0 } else { d })
}

fn record_from_raw(raw: RawNewform, index: usize) -> Result<NewformRecord, NewformError> {
    let label = raw.label.unwrap_or_else(|| format!("{}.{}.{}", raw.level, raw.weight, index + 1));
    let poly = raw.field_poly.iter().map(parse_int).collect::<Result<Vec<_>, _>>()?;
    let field = NumberField::new(poly).map_err(|e| NewformError::Schema(format!("{label}: {e}")))?;
    let deg = field.degree();
    if raw.an.len() < raw.n_coeffs || raw.n_coeffs == 0 {
        return Err(NewformError::Schema(format!("{label}: n_coeffs = {} but {} coefficients given", raw.n_coeffs, raw.an.len())));
    }
    let an = raw.an[..raw.n_coeffs]
        .iter()
        .enumerate()
        .map(|(i, v)| parse_vec(v, deg, &format!("{label}: a_{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    if raw.char.modulus != raw.level {
        return Err(NewformError::Schema(format!("{label}: character modulus {} differs from level", raw.char.modulus)));
    }
    let mut char_values = BTreeMap::new();
    for (d, v) in &raw.char.values {
        let key = d % raw.level;
        if gcd_u64(key, raw.level) != 1 {
            return Err(NewformError::Schema(format!("{label}: character value at non-unit {d}")));
        }
        char_values.insert(key, parse_vec(v, deg, &format!("{label}: eps({d})"))?);
    }
    if units(raw.level).any(|d| !char_values.contains_key(&d)) {
        return Err(NewformError::Schema(format!("{label}: character values do not cover (Z/{}Z)^*", raw.level)));
    }
    let rec = NewformRecord { level: raw.level, weight: raw.weight, label, field, an, char_values, n_max: raw.n_coeffs };
    validate(&rec)?;
    Ok(rec)
}

/// `(a_p^2 - a_{p^2}) / p^(k-1)` for the primes `p` not dividing the level
/// with `p^2 <= n_max`.
fn hecke_character_values(rec: &NewformRecord) -> Vec<(u64, Vec<BigRational>)> {
    let f = &rec.field;
    let mut out = Vec::new();
    let mut p = 2u64;
    while (p * p) as usize <= rec.n_max {
        if is_prime_u64(p) && rec.level % p != 0 {
            let ap = rec.a(p as usize);
            let diff = f.sub(&f.mul(ap, ap), rec.a((p * p) as usize));
            let scale = BigRational::from_integer(BigInt::from(p).pow(rec.weight - 1)).recip();
            out.push((p, f.scale(&diff, &scale)));
        }
        p += 1;
    }
    out
}

fn validate(rec: &NewformRecord) -> Result<(), NewformError> {
    if rec.a(1) != rec.field.one().as_slice() {
        return Err(NewformError::LeadingCoefficient { label: rec.label.clone() });
    }
    for (p, eps) in hecke_character_values(rec) {
        if rec.eps(p) != Some(&eps) {
            return Err(NewformError::HeckeRelation { label: rec.label.clone(), p });
        }
    }
    Ok(())
}

/// Recovers the nebentypus from the relation `a_{p^2} = a_p^2 - eps(p) p^(k-1)`,
/// extends it multiplicatively, and checks it against the stored values.
pub fn nebentypus_from_coeffs(rec: &NewformRecord) -> Result<BTreeMap<u64, Vec<BigRational>>, NewformError> {
    let m = rec.level;
    let f = &rec.field;
    let label = || rec.label.clone();
    let mut vals: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
    vals.insert(1 % m, f.one());
    let gens = hecke_character_values(rec);
    for (p, v) in &gens {
        let r = p % m;
        match vals.get(&r) {
            Some(w) if w != v => return Err(NewformError::NonMultiplicative { label: label(), d: r }),
            _ => {}
        }
    }
    let mut queue: VecDeque<u64> = VecDeque::from([1 % m]);
    while let Some(x) = queue.pop_front() {
        let wx = vals[&x].clone();
        for (p, v) in &gens {
            let y = x * (p % m) % m;
            let wy = f.mul(&wx, v);
            match vals.get(&y) {
                Some(old) if *old != wy => return Err(NewformError::NonMultiplicative { label: label(), d: y }),
                Some(_) => {}
                None => {
                    vals.insert(y, wy);
                    queue.push_back(y);
                }
            }
        }
    }
    if units(m).any(|d| !vals.contains_key(&d)) {
        return Err(NewformError::InsufficientPrimes { label: label(), modulus: m });
    }
    for (d, v) in &vals {
        if rec.char_values.get(d).is_some_and(|w| w != v) {
            return Err(NewformError::CharacterMismatch { label: label(), d: *d });
        }
    }
    Ok(vals)
}

/// One fixture file: every newform orbit of a level and weight whose
/// character is trivial on `{h = 1 mod cover}`.
#[derive(Clone, Debug)]
pub struct FixtureFile {
    pub level: u64,
    pub weight: u32,
    pub cover: u64,
    pub records: Vec<NewformRecord>,
}

fn read_file(path: &Path, level: u64, weight: u32) -> Result<FixtureFile, NewformError> {
    let text = std::fs::read_to_string(path).map_err(|e| NewformError::Io { path: path.display().to_string(), source: e })?;
    let raw: RawFile = serde_json::from_str(&text).map_err(|e| NewformError::Schema(format!("{}: {e}", path.display())))?;
    if raw.level != level || raw.weight != weight {
        return Err(NewformError::Schema(format!(
            "{} holds level {} weight {}, expected level {level} weight {weight}",
            path.display(),
            raw.level,
            raw.weight
        )));
    }
    let mut records = Vec::with_capacity(raw.newforms.len());
    for (i, nf) in raw.newforms.into_iter().enumerate() {
        if nf.level != level || nf.weight != weight {
            return Err(NewformError::Schema(format!("newform {i} in {} has the wrong level or weight", path.display())));
        }
        records.push(record_from_raw(nf, i)?);
    }
    Ok(FixtureFile { level, weight, cover: raw.conductor_cover.unwrap_or(level), records })
}

/// Loads and validates every record of a fixture file.
pub fn load_newforms(path: impl AsRef<Path>, level: u64, weight: u32) -> Result<Vec<NewformRecord>, NewformError> {
    Ok(read_file(path.as_ref(), level, weight)?.records)
}

/// Directory of `nf_{level}_{weight}.json` files, loaded lazily and cached.
pub struct FixtureStore {
    dir: PathBuf,
    cache: Mutex<HashMap<(u64, u32), Arc<FixtureFile>>>,
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> FixtureStore {
        FixtureStore { dir: dir.into(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, level: u64, weight: u32) -> PathBuf {
        self.dir.join(format!("nf_{level}_{weight}.json"))
    }

    pub fn get(&self, level: u64, weight: u32) -> Result<Arc<FixtureFile>, NewformError> {
        if let Some(f) = self.cache.lock().unwrap().get(&(level, weight)) {
            return Ok(f.clone());
        }
        let path = self.path(level, weight);
        if !path.exists() {
            return Err(NewformError::MissingFixture { level, weight });
        }
        let file = Arc::new(read_file(&path, level, weight)?);
        self.cache.lock().unwrap().insert((level, weight), file.clone());
        Ok(file)
    }
}
