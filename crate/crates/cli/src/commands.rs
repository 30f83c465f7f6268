use std::sync::Arc;

use alcore::{Check, PrecisionPolicy, Space, VerifyReport};
use modcurve::{invariant_subspace, model_select, validate_group, vanishing_order, GroupSpec};
use newforms::{load_newforms, pseudo_eigenvalue, EmbeddedOrbit, FixtureStore};
use serde_json::{json, Value};
use sl2::ActionTable;

use crate::{Cache, CacheStatus, CliError, Cli, Command, JobConfig, TOOL};

/// The document a job emits, with the names of failed checks.
#[derive(Debug)]
pub struct Output {
    pub json: Value,
    pub failures: Vec<String>,
    /// Exit code when `failures` is not empty.
    pub failure_code: i32,
    pub cache: Vec<CacheStatus>,
}

impl Output {
    fn new(json: Value) -> Output {
        Output { json, failures: vec![], failure_code: 2, cache: vec![] }
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            self.failure_code
        }
    }
}

fn header(cmd: &str) -> Value {
    json!({ "tool": TOOL, "version": env!("CARGO_PKG_VERSION"), "command": cmd })
}

fn with_header(cmd: &str, mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("header".into(), header(cmd));
    }
    v
}

fn policy(job: &JobConfig) -> PrecisionPolicy {
    PrecisionPolicy { initial_bits: job.precision_bits, max_escalations: job.max_escalations }
}

fn cache(job: &JobConfig) -> Cache {
    Cache::new(if job.no_cache { None } else { Some(job.cache_dir.clone()) })
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let job = cli.command.job();
    let store = FixtureStore::new(&job.fixtures);
    let name = cli.command.name();
    let mut out = match &cli.command {
        Command::AlMatrix { level, weight, gamma1, .. } => al_matrix(*level, *weight, *gamma1, job, &store)?,
        Command::Sl2Table { level, weight, .. } => sl2_table(*level, *weight, job, &store)?,
        Command::CurveModel { group, level, weight, lll, .. } => {
            let text = std::fs::read_to_string(group).map_err(|e| CliError::Input(format!("{}: {e}", group.display())))?;
            let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", group.display())))?;
            if let Some(l) = level {
                if *l != spec.modulus {
                    return Err(CliError::Input(format!("--level {l} but the group has modulus {}", spec.modulus)));
                }
            }
            curve_model(&spec, *weight, lll.on(), job, &store)?
        }
        Command::PseudoEigenvalue { level, weight, label, .. } => pseudo(*level, *weight, label.as_deref(), job, &store)?,
        Command::ValidateFixtures { .. } => validate_fixtures(job)?,
    };
    out.json = with_header(name, out.json);
    Ok(out)
}

fn al_matrix(level: u64, weight: u32, m: u64, job: &JobConfig, store: &FixtureStore) -> Result<Output, CliError> {
    if level == 0 || m == 0 || level % m != 0 {
        return Err(CliError::Input(format!("need m | N, got m = {m}, N = {level}")));
    }
    let space = Space::gamma0_gamma1(level, weight, m);
    let (al, report, status) = cache(job).al_matrix(&space, store, policy(job))?;
    let mut out = Output::new(al.to_json(&report));
    out.failures = report.failures().iter().map(|c| c.name.clone()).collect();
    out.cache.push(status);
    Ok(out)
}

fn action_table(n: u64, k: u32, job: &JobConfig, store: &FixtureStore) -> Result<(ActionTable, CacheStatus), CliError> {
    if n < 2 {
        return Err(sl2::Sl2Error::LevelTooSmall(n).into());
    }
    let space = Space::gamma0_gamma1(n * n, k, n);
    let (al, report, status) = cache(job).al_matrix(&space, store, policy(job))?;
    Ok((ActionTable::from_al_matrix(n, Arc::new(al), report)?, status))
}

fn sl2_table(n: u64, k: u32, job: &JobConfig, store: &FixtureStore) -> Result<Output, CliError> {
    let (t, status) = action_table(n, k, job, store)?;
    let mut out = Output::new(t.to_json());
    out.failures = t.report.failures().iter().map(|c| c.name.clone()).collect();
    out.cache.push(status);
    Ok(out)
}

fn curve_model(spec: &GroupSpec, k: u32, lll: bool, job: &JobConfig, store: &FixtureStore) -> Result<Output, CliError> {
    let group = validate_group(spec)?;
    let (t, status) = action_table(group.modulus(), k, job, store)?;
    let basis = invariant_subspace(&t, &group, lll)?;
    let g = basis.genus();
    let mut report = VerifyReport::default();
    report.checks.push(check("action_table", t.report.passed(), format!("{} table checks", t.report.checks.len())));
    let mut fixed = true;
    for a in &group.gens {
        for v in &basis.coords {
            fixed &= &t.act(v, a)? == v;
        }
    }
    report.checks.push(check("invariance", fixed, format!("f | A = f for {} generators", group.gens.len())));
    let model = if g >= 2 && k == 2 {
        let m = model_select(&basis)?;
        let mut vanish = true;
        for f in &m.ideal_generators {
            let len = f.degree as usize * (2 * g - 1) + 1;
            vanish &= vanishing_order(f, &basis, len)?.is_none();
        }
        report.checks.push(check(
            "sufficiency",
            vanish,
            format!("F(f_1..f_{g}) vanishes through q^(d(2g-1)) for every generator"),
        ));
        let expected = if m.hyperelliptic { (g - 1) * (g - 2) / 2 } else { (g - 2) * (g - 3) / 2 };
        let r = m.ideal_dims.get(&2).copied().unwrap_or(0);
        report.checks.push(check("quadrics", r == expected, format!("dim I_2 = {r}, expected {expected}")));
        Some(m)
    } else {
        None
    };
    let forms: Vec<Value> = basis
        .forms
        .iter()
        .zip(&basis.coords)
        .map(|(f, v)| json!({ "coords": v, "q_expansion": f.coeffs() }))
        .collect();
    let json = json!({
        "group": {
            "modulus": group.modulus(),
            "generators": spec.generators,
            "order": group.order(),
            "width": group.width,
        },
        "weight": k,
        "lll": lll,
        "ambient_dim": basis.ambient_dim,
        "genus": g,
        "basis": forms,
        "model": model,
        "verification": report,
    });
    let mut out = Output::new(json);
    out.failures = report.failures().iter().map(|c| c.name.clone()).collect();
    out.cache.push(status);
    Ok(out)
}

fn pseudo(level: u64, weight: u32, label: Option<&str>, job: &JobConfig, store: &FixtureStore) -> Result<Output, CliError> {
    let file = store.get(level, weight)?;
    let records: Vec<_> = file.records.iter().filter(|r| label.is_none_or(|l| r.label == l)).collect();
    if let (Some(l), true) = (label, records.is_empty()) {
        return Err(CliError::Input(format!("no newform {l} at level {level}, weight {weight}")));
    }
    let bits = job.precision_bits;
    let mut entries = vec![];
    let mut failures = vec![];
    for rec in records {
        let orbit = EmbeddedOrbit::new(Arc::new(rec.clone()), bits)?;
        for i in 0..orbit.degree() {
            let pe = pseudo_eigenvalue(&orbit.embedding(i, rec.n_max), bits)?;
            let unit = pe.value.meets_unit_circle();
            if !unit {
                failures.push(format!("{} embedding {i}", rec.label));
            }
            entries.push(json!({ "label": rec.label, "embedding": i, "lambda": pe, "meets_unit_circle": unit }));
        }
    }
    let mut out = Output::new(json!({ "level": level, "weight": weight, "pseudo_eigenvalues": entries }));
    out.failures = failures;
    Ok(out)
}

fn fixture_name(name: &str) -> Option<(u64, u32)> {
    let rest = name.strip_prefix("nf_")?.strip_suffix(".json")?;
    let (n, k) = rest.split_once('_')?;
    Some((n.parse().ok()?, k.parse().ok()?))
}

fn validate_fixtures(job: &JobConfig) -> Result<Output, CliError> {
    let dir = std::fs::read_dir(&job.fixtures).map_err(|e| CliError::Input(format!("{}: {e}", job.fixtures.display())))?;
    let mut files: Vec<(u64, u32, String)> = dir
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            fixture_name(&name).map(|(n, k)| (n, k, name))
        })
        .collect();
    files.sort();
    let mut entries = vec![];
    let mut failures = vec![];
    for (n, k, name) in files {
        match load_newforms(job.fixtures.join(&name), n, k) {
            Ok(recs) => entries.push(json!({
                "file": name,
                "level": n,
                "weight": k,
                "ok": true,
                "newforms": recs.iter().map(|r| json!({ "label": r.label, "degree": r.degree(), "coefficients": r.n_max })).collect::<Vec<_>>(),
            })),
            Err(e) => {
                failures.push(format!("{name}: {e}"));
                entries.push(json!({ "file": name, "level": n, "weight": k, "ok": false, "error": e.to_string() }));
            }
        }
    }
    let mut out = Output::new(json!({ "files": entries }));
    out.failures = failures;
    out.failure_code = 3;
    Ok(out)
}
