//! Verification suites: a TOML list of jobs run concurrently, with reports
//! assembled in job-name order.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use kpsh_core::report::{CheckReport, Status};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{CheckName, Params, PreparedCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    #[default]
    Pass,
    Informational,
}

impl Expected {
    fn status(self) -> Status {
        match self {
            Expected::Pass => Status::Pass,
            Expected::Informational => Status::Informational,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    #[serde(default)]
    job: Vec<JobSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub name: String,
    pub check: CheckName,
    #[serde(default)]
    pub expect: Expected,
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub subgroup: Option<String>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub power: Option<u64>,
    #[serde(default)]
    pub blocks: Option<Vec<usize>>,
    #[serde(default)]
    pub instances: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Matrices the check must emit, by name.
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

impl JobSpec {
    pub fn params(&self) -> Params {
        Params {
            group: self.group.clone(),
            subgroup: self.subgroup.clone(),
            cutoff: self.cutoff,
            power: self.power,
            blocks: self.blocks.clone(),
            instances: self.instances,
            seed: self.seed,
        }
    }
}

/// The outcome of one job. Contains no timing, so reports of identical
/// runs are identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobReport {
    pub job: String,
    pub check: CheckName,
    /// What the check verified, as named by the library.
    pub description: String,
    pub params: Params,
    pub expected: Expected,
    pub status: Status,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub jobs: Vec<JobReport>,
    /// Wall time per job in milliseconds, kept apart from the job reports.
    pub timing: BTreeMap<String, u128>,
}

impl SuiteReport {
    pub fn all_ok(&self) -> bool {
        self.jobs.iter().all(|j| j.ok)
    }
}

pub fn load(path: &Path) -> Result<Vec<JobSpec>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let suite: SuiteFile = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut seen = BTreeSet::new();
    for job in &suite.job {
        if !seen.insert(job.name.as_str()) {
            bail!("duplicate job name {:?}", job.name);
        }
    }
    Ok(suite.job)
}

fn compare_matrices(expected: &BTreeMap<String, Vec<Vec<i64>>>, report: &CheckReport) -> Option<String> {
    for (name, want) in expected {
        let Some(got) = report.matrices.get(name) else {
            return Some(format!("matrix {name:?} was not emitted"));
        };
        if got.len() != want.len() || got.iter().zip(want).any(|(a, b)| a.len() != b.len()) {
            return Some(format!("matrix {name:?} has a different shape"));
        }
        for (i, (a, b)) in got.iter().zip(want).enumerate() {
            if let Some(j) = a.iter().zip(b).position(|(x, y)| x != y) {
                return Some(format!("matrix {name:?} entry ({i}, {j}) is {}, expected {}", a[j], b[j]));
            }
        }
    }
    None
}

/// Validates every job first (any error aborts before running), then runs
/// them on up to `threads` threads.
pub fn run(specs: &[JobSpec], base: &Path, threads: usize) -> Result<SuiteReport> {
    let prepared = specs
        .iter()
        .map(|spec| PreparedCheck::prepare(spec.check, &spec.params(), base).with_context(|| format!("job {:?}", spec.name)))
        .collect::<Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build()?;
    let mut results: Vec<(JobReport, u128)> = pool.install(|| {
        specs
            .par_iter()
            .zip(prepared.par_iter())
            .map(|(spec, check)| {
                let start = Instant::now();
                let report = check.run();
                (job_report(spec, report), start.elapsed().as_millis())
            })
            .collect()
    });
    results.sort_by(|a, b| a.0.job.cmp(&b.0.job));
    let timing = results.iter().map(|(r, t)| (r.job.clone(), *t)).collect();
    Ok(SuiteReport { jobs: results.into_iter().map(|(r, _)| r).collect(), timing })
}

pub fn job_report(spec: &JobSpec, report: CheckReport) -> JobReport {
    let status_ok = report.status == spec.expect.status();
    let matrix_mismatch = compare_matrices(&spec.matrices, &report);
    let witness = match (&matrix_mismatch, status_ok) {
        (Some(m), _) => Some(m.clone()),
        (None, false) if report.witness.is_none() => Some(format!("expected {}, observed {}", spec.expect.status(), report.status)),
        _ => report.witness.clone(),
    };
    JobReport {
        job: spec.name.clone(),
        check: spec.check,
        description: report.check,
        params: spec.params(),
        expected: spec.expect,
        status: report.status,
        ok: status_ok && matrix_mismatch.is_none(),
        witness,
        note: report.note,
        matrices: report.matrices,
    }
}
