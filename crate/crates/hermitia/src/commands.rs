//! The subcommands, independent of argument parsing and output routing.

use hermitia_core::family::{adapted_j8, basis, build_g8};
use hermitia_core::{
    classify, classify_foliation, q, AlmostComplexStructure, DistributionSplit, LieAlgebra, Matrix,
    Rational, Scalar, SpherePoint, Tolerance,
};

use crate::config::{Mode, OutputFormat, RunConfig};
use crate::error::{HermitiaError, Result};
use crate::format::{is_g8_document, parse_acs, parse_algebra, parse_g8};
use crate::report::{
    to_json, ClassFlags, ClassifyReport, FoliationFlags, ReproduceReport, ValidateReport, SCHEMA,
};
use crate::reproduce::{reproduce, Summary, Theorem};
use crate::scan::{scan, Family, ScanSpec};

/// Rendered report plus the process exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub body: String,
    pub exit_code: i32,
}

/// An algebra with an optional structure and default vertical split.
struct Loaded {
    algebra: LieAlgebra<Rational>,
    acs: Option<Matrix<Rational>>,
    vertical: Option<Vec<usize>>,
}

fn load(text: &str) -> Result<Loaded> {
    if is_g8_document(text) {
        let doc = parse_g8(text)?;
        let axis = || SpherePoint::from_stereographic(q(1, 1), q(0, 1));
        let s1 = doc.sphere1.unwrap_or_else(axis);
        let s2 = doc.sphere2.unwrap_or_else(axis);
        let j = adapted_j8(&s1, &s2, doc.eta);
        Ok(Loaded {
            algebra: build_g8(&doc.params),
            acs: Some(j.matrix().clone()),
            vertical: Some(basis::VERTICAL.to_vec()),
        })
    } else {
        let doc = parse_algebra(text)?;
        Ok(Loaded {
            algebra: doc.algebra,
            acs: doc.acs,
            vertical: None,
        })
    }
}

fn tolerance_field(config: &RunConfig) -> Option<f64> {
    (config.mode == Mode::Float).then_some(config.tolerance.value())
}

pub fn validate(text: &str, config: &RunConfig) -> Result<CommandOutput> {
    let loaded = load(text)?;
    let tol = config.effective_tolerance();
    let report = match config.mode {
        Mode::Exact => validate_in(&loaded.algebra, tol),
        Mode::Float => validate_in(&loaded.algebra.map(f64::from_rational), tol),
    };
    let body = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Csv => report.to_csv()?,
    };
    Ok(CommandOutput {
        body,
        exit_code: if report.valid { 0 } else { 1 },
    })
}

fn validate_in<S: Scalar>(algebra: &LieAlgebra<S>, tol: Tolerance) -> ValidateReport {
    let antisymmetric = algebra.check_antisymmetry(tol).is_empty();
    ValidateReport::new(algebra, antisymmetric, &algebra.check_jacobi(tol))
}

/// `vertical` is a comma separated list of basis names.
pub fn classify_text(
    text: &str,
    acs_text: Option<&str>,
    vertical: Option<&str>,
    config: &RunConfig,
) -> Result<CommandOutput> {
    let mut loaded = load(text)?;
    if let Some(acs) = acs_text {
        loaded.acs = Some(parse_acs(acs, loaded.algebra.dim())?);
    }
    if let Some(names) = vertical {
        let idx = names
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(|n| {
                loaded.algebra.basis_index(n).ok_or_else(|| {
                    HermitiaError::Config(format!("unknown basis element `{n}` in --vertical"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        loaded.vertical = Some(idx);
    }
    let acs = loaded.acs.clone().ok_or(HermitiaError::MissingAcs)?;
    let tol = config.effective_tolerance();
    let (class, foliation) = match config.mode {
        Mode::Exact => classify_in(&loaded.algebra, &acs, loaded.vertical.as_deref(), tol)?,
        Mode::Float => classify_in(
            &loaded.algebra.map(f64::from_rational),
            &acs.map(f64::from_rational),
            loaded.vertical.as_deref(),
            tol,
        )?,
    };
    let report = ClassifyReport {
        schema: SCHEMA,
        command: "classify",
        mode: config.mode,
        tolerance: tolerance_field(config),
        dimension: loaded.algebra.dim(),
        class,
        foliation,
    };
    let body = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Csv => report.to_csv()?,
    };
    Ok(CommandOutput { body, exit_code: 0 })
}

fn classify_in<S: Scalar>(
    algebra: &LieAlgebra<S>,
    acs: &Matrix<S>,
    vertical: Option<&[usize]>,
    tol: Tolerance,
) -> Result<(ClassFlags, Option<FoliationFlags>)> {
    let j = AlmostComplexStructure::new(acs.clone(), tol)?;
    let class = ClassFlags::from(&classify(algebra, &j, tol)?);
    let foliation = match vertical {
        Some(v) => {
            let split = DistributionSplit::new(v.to_vec(), algebra.dim())?;
            let names = split
                .vertical()
                .iter()
                .map(|&i| algebra.basis_names()[i].clone())
                .collect();
            Some(FoliationFlags::new(names, &classify_foliation(algebra, &split, tol)?))
        }
        None => None,
    };
    Ok((class, foliation))
}

pub fn reproduce_theorem(theorem: Theorem, draws: usize, config: &RunConfig) -> Result<CommandOutput> {
    let results = reproduce(theorem, draws, config);
    let summary = Summary::of(&results);
    let report = ReproduceReport {
        schema: SCHEMA,
        command: "reproduce",
        theorem,
        mode: config.mode,
        tolerance: tolerance_field(config),
        seed: config.seed,
        draws,
        summary,
        results,
    };
    let body = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Csv => report.to_csv()?,
    };
    Ok(CommandOutput {
        body,
        exit_code: if summary.all_verified() { 0 } else { 1 },
    })
}

pub fn scan_family(family: Family, spec: &ScanSpec, config: &RunConfig) -> Result<CommandOutput> {
    let report = scan(family, spec, config)?;
    let body = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Csv => report.to_csv()?,
    };
    Ok(CommandOutput { body, exit_code: 0 })
}
