use std::path::{Path, PathBuf};
use std::time::Instant;

use nquandle::quandle_build::build_n_quandle;
use nquandle::EnumerationLimit;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{axiom_summary, build_failure, labeling, load, max_cosets, ms, size_identity, to_json, BatchArgs, Cli, Failure, Format, Report, Timings};

/// One manifest job. `N` is a list of integers or a comma-separated string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub path: String,
    #[serde(rename = "N")]
    pub n: LabelsField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelsField {
    List(Vec<u32>),
    Text(String),
}

impl LabelsField {
    fn text(&self) -> String {
        match self {
            LabelsField::List(v) => v.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            LabelsField::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Limit,
    Error,
    Failed,
}

/// Expected outcome; absent fields are not compared.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchRow {
    pub path: String,
    #[serde(rename = "N")]
    pub n: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect_met: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub rows: Vec<BatchRow>,
    pub ok: usize,
    pub limit: usize,
    pub error: usize,
    pub failed: usize,
    pub mismatches: usize,
}

fn run_job(base: &Path, entry: &ManifestEntry, limit: EnumerationLimit, check: bool, timings: bool) -> BatchRow {
    let n_text = entry.n.text();
    let mut row = BatchRow {
        path: entry.path.clone(),
        n: n_text.clone(),
        status: Status::Ok,
        group_order: None,
        components: None,
        total: None,
        verified: None,
        error: None,
        expect_met: None,
        timings: None,
    };
    let path = base.join(&entry.path);
    let t0 = Instant::now();
    let result = (|| {
        let d = load(&path)?;
        let n = labeling(&path, &d, &n_text)?;
        let parse_ms = ms(t0);
        let t1 = Instant::now();
        let b = build_n_quandle(&d, &n, limit).map_err(|e| build_failure(&path, e))?;
        let mut t = Timings { parse_ms, build_ms: ms(t1), ..Default::default() };
        let verified = check.then(|| {
            let t2 = Instant::now();
            let ok = axiom_summary(&b, &n).ok && size_identity(&d, &n, &b).ok;
            t.verify_ms = ms(t2);
            ok
        });
        Ok::<_, Failure>((b, verified, t))
    })();
    match result {
        Ok((b, verified, t)) => {
            row.group_order = Some(b.group_order);
            row.components = Some(b.quandle.component_sizes());
            row.total = Some(b.quandle.len());
            row.verified = verified;
            if verified == Some(false) {
                row.status = Status::Failed;
            }
            row.timings = timings.then_some(t);
        }
        Err(e) => {
            row.status = match e {
                Failure::Limit(_) => Status::Limit,
                Failure::Input(_) => Status::Error,
                Failure::Check(_) => Status::Failed,
            };
            row.error = Some(e.to_string());
        }
    }
    if let Some(x) = &entry.expect {
        let met = x.status.map_or(row.status == Status::Ok, |s| s == row.status)
            && x.group_order.is_none_or(|g| row.group_order == Some(g))
            && x.components.as_ref().is_none_or(|c| row.components.as_ref() == Some(c))
            && x.total.is_none_or(|t| row.total == Some(t));
        row.expect_met = Some(met);
    }
    row
}

/// Runs every job, `jobs` at a time (0 = all cores). Rows follow manifest
/// order whatever the scheduling.
pub fn run_batch(
    base: &Path,
    manifest: &[ManifestEntry],
    limit: EnumerationLimit,
    jobs: usize,
    check: bool,
    timings: bool,
) -> BatchSummary {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    let rows: Vec<BatchRow> =
        pool.install(|| manifest.par_iter().map(|e| run_job(base, e, limit, check, timings)).collect());
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    BatchSummary {
        ok: count(Status::Ok),
        limit: count(Status::Limit),
        error: count(Status::Error),
        failed: count(Status::Failed),
        mismatches: rows.iter().filter(|r| r.expect_met == Some(false)).count(),
        rows,
    }
}

fn csv(summary: &BatchSummary) -> String {
    let mut s = String::from("path,N,status,group_order,total,components,expect_met\n");
    let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in &summary.rows {
        let comps = r.components.as_ref().map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
        s.push_str(&format!(
            "\"{}\",\"{}\",{},{},{},{},{}\n",
            r.path,
            r.n,
            serde_json::to_value(r.status).unwrap().as_str().unwrap(),
            opt(r.group_order),
            opt(r.total),
            comps.unwrap_or_default(),
            r.expect_met.map(|b| b.to_string()).unwrap_or_default()
        ));
    }
    s
}

pub(crate) fn batch_cmd(cli: &Cli, a: &BatchArgs) -> Result<Report, Failure> {
    let limit = max_cosets(a.max_cosets)?;
    let text = std::fs::read_to_string(&a.manifest).map_err(|e| Failure::Input(format!("{}: {e}", a.manifest.display())))?;
    let manifest: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!("{}: line {}, column {}: {e}", a.manifest.display(), e.line(), e.column()))
    })?;
    let base: PathBuf = a.manifest.parent().map(Path::to_path_buf).unwrap_or_default();
    let summary = run_batch(&base, &manifest, limit, a.jobs, a.verify, cli.timings);
    let body = match cli.format {
        Format::Json => to_json(&summary),
        Format::Csv => csv(&summary),
        Format::Text => {
            let mut s = String::new();
            for r in &summary.rows {
                let detail = match (&r.error, r.total) {
                    (Some(e), _) => e.clone(),
                    (None, Some(t)) => format!("total {t}, group order {}", r.group_order.unwrap_or(0)),
                    _ => String::new(),
                };
                let mark = match r.expect_met {
                    Some(true) => " [as expected]",
                    Some(false) => " [MISMATCH]",
                    None => "",
                };
                s.push_str(&format!("{} N={}: {:?} {detail}{mark}\n", r.path, r.n, r.status));
            }
            s.push_str(&format!(
                "{} ok, {} limit, {} error, {} failed, {} mismatches\n",
                summary.ok, summary.limit, summary.error, summary.failed, summary.mismatches
            ));
            s
        }
    };
    let failed = (summary.mismatches > 0).then(|| format!("{} batch rows differ from their expectations", summary.mismatches));
    Ok(Report { body, failed })
}
