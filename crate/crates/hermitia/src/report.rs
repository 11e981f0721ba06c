//! JSON and CSV report shapes. Every JSON report carries `schema: 1`.

use std::collections::BTreeMap;

use hermitia_core::{ClassReport, FoliationReport, JacobiViolation, LieAlgebra, Scalar};
use serde::Serialize;

use crate::config::Mode;
use crate::error::Result;
use crate::reproduce::{CertifiedResult, Summary, Theorem};

pub const SCHEMA: u32 = 1;

fn render<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobiEntry {
    pub triple: [String; 3],
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateReport {
    pub schema: u32,
    pub command: &'static str,
    pub valid: bool,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub antisymmetric: bool,
    pub jacobi_violations: Vec<JacobiEntry>,
}

impl ValidateReport {
    pub fn new<S: Scalar>(
        algebra: &LieAlgebra<S>,
        antisymmetric: bool,
        violations: &[JacobiViolation<S>],
    ) -> Self {
        let names = algebra.basis_names();
        let jacobi_violations: Vec<_> = violations
            .iter()
            .map(|v| JacobiEntry {
                triple: [v.triple.0, v.triple.1, v.triple.2].map(|i| names[i].clone()),
                residual: render(&v.residual),
            })
            .collect();
        ValidateReport {
            schema: SCHEMA,
            command: "validate",
            valid: antisymmetric && jacobi_violations.is_empty(),
            dimension: algebra.dim(),
            basis: names.to_vec(),
            antisymmetric,
            jacobi_violations,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassFlags {
    pub integrable: bool,
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
    pub w4: Option<bool>,
    pub hermitian: bool,
    pub semi_kaehler: bool,
    pub lck: Option<bool>,
    pub kaehler: bool,
    pub residuals: BTreeMap<String, f64>,
}

impl From<&ClassReport> for ClassFlags {
    fn from(r: &ClassReport) -> Self {
        ClassFlags {
            integrable: r.integrable,
            w1: r.w1,
            w2: r.w2,
            w3: r.w3,
            w4: r.w4,
            hermitian: r.hermitian,
            semi_kaehler: r.semi_kaehler,
            lck: r.lck,
            kaehler: r.kaehler,
            residuals: r.residuals.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FoliationFlags {
    pub vertical: Vec<String>,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub conformal: bool,
    pub riemannian: bool,
    pub mean_curvature: Vec<String>,
    pub conformal_witness: Option<Vec<String>>,
    pub vertical_form_max: f64,
    pub horizontal_form_max: f64,
}

impl FoliationFlags {
    pub fn new<S: Scalar>(vertical: Vec<String>, r: &FoliationReport<S>) -> Self {
        FoliationFlags {
            vertical,
            minimal: r.minimal,
            totally_geodesic: r.totally_geodesic,
            conformal: r.conformal,
            riemannian: r.riemannian,
            mean_curvature: render(&r.mean_curvature),
            conformal_witness: r.conformal_witness.as_deref().map(render),
            vertical_form_max: r.vertical_form_max,
            horizontal_form_max: r.horizontal_form_max,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub command: &'static str,
    pub mode: Mode,
    pub tolerance: Option<f64>,
    pub dimension: usize,
    pub class: ClassFlags,
    pub foliation: Option<FoliationFlags>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceReport {
    pub schema: u32,
    pub command: &'static str,
    pub theorem: Theorem,
    pub mode: Mode,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub draws: usize,
    pub summary: Summary,
    pub results: Vec<CertifiedResult>,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn opt_bool(b: Option<bool>) -> String {
    b.map_or_else(String::new, |b| b.to_string())
}

impl ValidateReport {
    pub fn to_csv(&self) -> Result<String> {
        csv_string(
            &["first", "second", "third", "residual"],
            self.jacobi_violations.iter().map(|v| {
                let mut row = v.triple.to_vec();
                row.push(v.residual.join(" "));
                row
            }),
        )
    }
}

impl ClassifyReport {
    pub fn to_csv(&self) -> Result<String> {
        let c = &self.class;
        let mut rows = vec![
            ("integrable", c.integrable.to_string()),
            ("w1", c.w1.to_string()),
            ("w2", c.w2.to_string()),
            ("w3", c.w3.to_string()),
            ("w4", opt_bool(c.w4)),
            ("hermitian", c.hermitian.to_string()),
            ("semi_kaehler", c.semi_kaehler.to_string()),
            ("lck", opt_bool(c.lck)),
            ("kaehler", c.kaehler.to_string()),
        ];
        let residuals: Vec<_> = c.residuals.iter().map(|(k, v)| (format!("residual_{k}"), v)).collect();
        if let Some(f) = &self.foliation {
            rows.extend([
                ("minimal", f.minimal.to_string()),
                ("totally_geodesic", f.totally_geodesic.to_string()),
                ("conformal", f.conformal.to_string()),
                ("riemannian", f.riemannian.to_string()),
            ]);
        }
        csv_string(
            &["key", "value"],
            rows.into_iter()
                .map(|(k, v)| vec![k.to_string(), v])
                .chain(residuals.into_iter().map(|(k, v)| vec![k, v.to_string()])),
        )
    }
}

impl ReproduceReport {
    pub fn to_csv(&self) -> Result<String> {
        let timed = self.results.iter().any(|r| r.wall_time_ms.is_some());
        let mut header = vec!["claim", "draw", "status", "max_residual", "witness"];
        if timed {
            header.push("wall_time_ms");
        }
        csv_string(
            &header,
            self.results.iter().map(|r| {
                let status = serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                let mut row = vec![
                    r.claim.clone(),
                    r.draw.to_string(),
                    status,
                    r.max_residual.to_string(),
                    r.witness.clone().unwrap_or_default(),
                ];
                if timed {
                    row.push(r.wall_time_ms.map_or_else(String::new, |t| t.to_string()));
                }
                row
            }),
        )
    }
}
