//! Rendering of computed values and reports in the three output formats.

use std::path::Path;

use anyhow::{Context, Result};
use kpsh_core::groupkit::CharacterTable;
use kpsh_core::symfunc::{schur_to_json, SchurVector};
use kpsh_core::tensor_hopf::{GradedVector, HopfMatrix};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::suite::{JobReport, SuiteReport};
use crate::Format;

fn csv_rows(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn number(c: &impl ToString) -> Value {
    Value::Number(c.to_string().parse().expect("integers are JSON numbers"))
}

pub fn schur(v: &SchurVector, format: Format) -> String {
    match format {
        Format::Text => format!("{v}\n"),
        Format::Csv => csv_rows(
            std::iter::once(vec!["partition".into(), "coeff".into()])
                .chain(v.iter().map(|(p, c)| vec![p.to_string(), c.to_string()])),
        ),
        Format::Structured => format!("{}\n", schur_to_json(v)),
    }
}

pub fn tensor(v: &GradedVector, format: Format) -> String {
    let label = |t: &[kpsh_core::symfunc::Partition]| t.iter().map(ToString::to_string).collect::<Vec<_>>().join("⊗");
    match format {
        Format::Text => format!("{v}\n"),
        Format::Csv => csv_rows(
            std::iter::once(vec!["tuple".into(), "coeff".into()])
                .chain(v.terms().iter().map(|(t, c)| vec![label(t), c.to_string()])),
        ),
        Format::Structured => {
            let terms: Vec<Value> = v
                .terms()
                .iter()
                .map(|(t, c)| json!({ "tuple": t.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(), "coeff": number(c) }))
                .collect();
            format!("{}\n", Value::Array(terms))
        }
    }
}

pub fn matrix(m: &HopfMatrix, format: Format) -> String {
    match format {
        Format::Text => m.to_string(),
        Format::Csv => csv_rows(m.entries().iter().map(|r| r.iter().map(u64::to_string).collect())),
        Format::Structured => format!("{}\n", json!(m.entries())),
    }
}

fn value(v: Complex64) -> String {
    let clean = |x: f64| {
        let r = (x * 1e6).round() / 1e6;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let (re, im) = (clean(v.re), clean(v.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) => format!("{re}{im:+}i"),
    }
}

pub fn char_table(table: &CharacterTable, format: Format) -> String {
    match format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv(),
        Format::Structured => {
            let g = table.group();
            let sizes: Vec<usize> = (0..g.class_count()).map(|c| g.class_size(c)).collect();
            let rows: Vec<Vec<String>> =
                table.irreducibles().iter().map(|chi| chi.values().iter().map(|&v| value(v)).collect()).collect();
            format!("{}\n", json!({ "group": g.name(), "order": g.order(), "class_sizes": sizes, "characters": rows }))
        }
    }
}

fn job_line(j: &JobReport) -> String {
    let mut line = format!("{}: {} ({}: {}", j.job, if j.ok { "ok" } else { "FAILED" }, j.description, j.status);
    if let Some(w) = &j.witness {
        line += &format!("; witness: {w}");
    }
    if let Some(n) = &j.note {
        line += &format!("; {n}");
    }
    line + ")"
}

pub fn suite(report: &SuiteReport, format: Format, timing: bool) -> Result<String> {
    Ok(match format {
        Format::Text => {
            let mut out: String = report.jobs.iter().map(|j| job_line(j) + "\n").collect();
            let ok = report.jobs.iter().filter(|j| j.ok).count();
            out += &format!("{ok} of {} jobs ok\n", report.jobs.len());
            if timing {
                for (job, ms) in &report.timing {
                    out += &format!("time {job}: {ms} ms\n");
                }
            }
            out
        }
        Format::Csv => csv_rows(
            std::iter::once(["job", "check", "expected", "status", "ok", "witness", "note"].map(String::from).to_vec()).chain(
                report.jobs.iter().map(|j| {
                    vec![
                        j.job.clone(),
                        j.check.as_str(),
                        serde_json::to_value(j.expected).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
                        j.status.to_string(),
                        j.ok.to_string(),
                        j.witness.clone().unwrap_or_default(),
                        j.note.clone().unwrap_or_default(),
                    ]
                }),
            ),
        ),
        Format::Structured => {
            let mut value = json!({ "jobs": report.jobs });
            if timing {
                value["timing"] = json!(report.timing);
            }
            serde_json::to_string_pretty(&value)? + "\n"
        }
    })
}

pub fn golden(report: &SuiteReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(&report.jobs)? + "\n")
}

/// The first job whose report differs from the stored one, if any.
pub fn compare_golden(report: &SuiteReport, path: &Path) -> Result<Option<String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let stored: Vec<JobReport> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    for (got, want) in report.jobs.iter().zip(&stored) {
        if got != want {
            return Ok(Some(format!("job {:?} differs", got.job)));
        }
    }
    Ok((report.jobs.len() != stored.len()).then(|| format!("{} jobs, stored report has {}", report.jobs.len(), stored.len())))
}
