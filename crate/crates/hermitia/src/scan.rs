//! Parameter sweeps over the eight-dimensional family.
//!
//! A grid spec is `name=v1,v2;name=v;...`. Points are the cartesian product
//! in the order the names are given, the last name varying fastest. Names
//! not mentioned take their defaults: 0 for coefficients, `rho = 1` in the
//! semi-Kaehler family, and `a1 = a2 = 1`, `b1 = b2 = 0` for the
//! stereographic sphere coordinates, which puts both points at `(1, 0, 0)`.

use std::collections::BTreeMap;

use hermitia_core::family::{
    adapted_j8, build_g8, integrability_relations, semikaehler_solution, EtaSign,
    FreeCoefficients, G8Parameters,
};
use hermitia_core::{classify, q, rational_sphere_point, Rational, Scalar, SpherePoint, Tolerance};
use serde::Serialize;

use crate::config::{Mode, RunConfig};
use crate::error::{HermitiaError, Result};
use crate::format::parse_rational;
use crate::report::{csv_string, SCHEMA};
use crate::reproduce::draw_seed;
use crate::sample::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// All thirteen coefficients free.
    #[default]
    Unconstrained,
    /// Eight free coefficients and rho; the rest solved for integrability.
    Integrable,
    /// The semi-Kaehler members, parametrized by rho, r1, r2.
    Semikaehler,
}

const SPHERE_INPUTS: [&str; 4] = ["a1", "b1", "a2", "b2"];

impl Family {
    /// Input names a grid may set, besides the sphere coordinates.
    pub fn inputs(self) -> Vec<&'static str> {
        let mut names: Vec<&str> = match self {
            Family::Unconstrained => G8Parameters::<Rational>::NAMES.to_vec(),
            Family::Integrable => {
                let mut v = FreeCoefficients::<Rational>::NAMES.to_vec();
                v.push("rho");
                v
            }
            Family::Semikaehler => vec!["rho", "r1", "r2"],
        };
        names.extend(SPHERE_INPUTS);
        names
    }

    fn default_value(self, name: &str) -> Rational {
        match (self, name) {
            (_, "a1" | "a2") | (Family::Semikaehler, "rho") => q(1, 1),
            _ => q(0, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanSpec {
    Random(usize),
    Grid(Vec<(String, Vec<Rational>)>),
}

pub fn parse_grid(spec: &str, family: Family) -> Result<Vec<(String, Vec<Rational>)>> {
    let allowed = family.inputs();
    let mut axes: Vec<(String, Vec<Rational>)> = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, values) = part
            .split_once('=')
            .ok_or_else(|| HermitiaError::Grid(format!("`{part}` lacks `=`")))?;
        let name = name.trim();
        if !allowed.contains(&name) {
            return Err(HermitiaError::Grid(format!(
                "`{name}` is not an input of the {family:?} family; expected one of {}",
                allowed.join(", ")
            )));
        }
        if axes.iter().any(|(n, _)| n == name) {
            return Err(HermitiaError::Grid(format!("`{name}` given twice")));
        }
        let values = values
            .split(',')
            .map(|v| {
                parse_rational(v.trim())
                    .ok_or_else(|| HermitiaError::Grid(format!("`{}` is not a rational", v.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        axes.push((name.to_string(), values));
    }
    if axes.is_empty() {
        return Err(HermitiaError::Grid("no axes given".into()));
    }
    Ok(axes)
}

/// One assignment of the family inputs.
pub type Point = BTreeMap<&'static str, Rational>;

fn grid_points(family: Family, axes: &[(String, Vec<Rational>)]) -> Vec<Point> {
    let base: Point = family.inputs().into_iter().map(|n| (n, family.default_value(n))).collect();
    let mut points = vec![base];
    for (name, values) in axes {
        let key = *family.inputs().iter().find(|n| *n == name).expect("validated name");
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut p = p.clone();
                    p.insert(key, v.clone());
                    p
                })
            })
            .collect();
    }
    points
}

fn random_point(family: Family, sampler: &mut Sampler) -> Point {
    let mut p = Point::new();
    for name in family.inputs() {
        let v = match name {
            // Keeps lambda off zero, the chart the integrability solve needs.
            "a1" | "a2" => sampler.nonzero_rational(),
            "rho" if family == Family::Semikaehler => sampler.nonzero_rational(),
            _ => sampler.rational(),
        };
        p.insert(name, v);
    }
    p
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub inputs: BTreeMap<String, String>,
    pub params: BTreeMap<String, String>,
    pub sphere1: [String; 3],
    pub sphere2: [String; 3],
    pub integrable: bool,
    pub hermitian: bool,
    pub semi_kaehler: bool,
    pub w3: bool,
    pub lck: Option<bool>,
    pub kaehler: bool,
    pub nijenhuis_residual: f64,
    pub tilde_alpha_residual: f64,
    pub psi_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub command: &'static str,
    pub family: Family,
    pub mode: Mode,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub points: usize,
    pub rows: Vec<ScanRow>,
}

fn sphere_strings<S: Scalar>(s: &SpherePoint<S>) -> [String; 3] {
    [s.lambda.to_string(), s.mu.to_string(), s.nu.to_string()]
}

fn evaluate<S: Scalar>(family: Family, index: usize, point: &Point, tol: Tolerance) -> Result<ScanRow> {
    let get = |n: &str| S::from_rational(&point[n]);
    let s1 = rational_sphere_point(point["a1"].clone(), point["b1"].clone()).map(S::from_rational);
    let s2 = rational_sphere_point(point["a2"].clone(), point["b2"].clone()).map(S::from_rational);
    let params: G8Parameters<S> = match family {
        Family::Unconstrained => {
            G8Parameters::from_array(G8Parameters::<S>::NAMES.map(get))
        }
        Family::Integrable => {
            let free = FreeCoefficients::from_array(FreeCoefficients::<S>::NAMES.map(get));
            integrability_relations(&s1, &s2, &free, get("rho"), tol)?
        }
        Family::Semikaehler => semikaehler_solution(get("rho"), get("r1"), get("r2"), &s1, &s2, tol)?,
    };
    let r = classify(&build_g8(&params), &adapted_j8(&s1, &s2, EtaSign::Plus), tol)?;
    Ok(ScanRow {
        index,
        inputs: point.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        params: G8Parameters::<S>::NAMES
            .iter()
            .zip(params.to_array())
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        sphere1: sphere_strings(&s1),
        sphere2: sphere_strings(&s2),
        integrable: r.integrable,
        hermitian: r.hermitian,
        semi_kaehler: r.semi_kaehler,
        w3: r.w3,
        lck: r.lck,
        kaehler: r.kaehler,
        nijenhuis_residual: r.residuals["nijenhuis"],
        tilde_alpha_residual: r.residuals["tilde_alpha"],
        psi_residual: r.residuals.get("psi").copied().unwrap_or(0.0),
    })
}

pub fn scan(family: Family, spec: &ScanSpec, config: &RunConfig) -> Result<ScanReport> {
    let points: Vec<Point> = match spec {
        ScanSpec::Random(n) => (0..*n)
            .map(|i| random_point(family, &mut Sampler::new(draw_seed(config.seed, i))))
            .collect(),
        ScanSpec::Grid(axes) => grid_points(family, axes),
    };
    let tol = config.effective_tolerance();
    let rows = points
        .iter()
        .enumerate()
        .map(|(i, p)| match config.mode {
            Mode::Exact => evaluate::<Rational>(family, i, p, tol),
            Mode::Float => evaluate::<f64>(family, i, p, tol),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        schema: SCHEMA,
        command: "scan",
        family,
        mode: config.mode,
        tolerance: (config.mode == Mode::Float).then_some(config.tolerance.value()),
        seed: config.seed,
        points: rows.len(),
        rows,
    })
}

impl ScanReport {
    pub fn to_csv(&self) -> Result<String> {
        let inputs = self.family.inputs();
        let mut header: Vec<&str> = vec!["index"];
        header.extend(inputs.iter().map(|n| match *n {
            "rho" => "input_rho",
            other => other,
        }));
        header.extend(G8Parameters::<Rational>::NAMES);
        header.extend(["l1", "m1", "n1", "l2", "m2", "n2"]);
        header.extend([
            "integrable",
            "hermitian",
            "semi_kaehler",
            "w3",
            "lck",
            "kaehler",
            "nijenhuis_residual",
            "tilde_alpha_residual",
            "psi_residual",
        ]);
        let rows = self.rows.iter().map(|r| {
            let mut row = vec![r.index.to_string()];
            row.extend(inputs.iter().map(|n| r.inputs[*n].clone()));
            row.extend(G8Parameters::<Rational>::NAMES.iter().map(|n| r.params[*n].clone()));
            row.extend(r.sphere1.iter().chain(&r.sphere2).cloned());
            row.extend([
                r.integrable.to_string(),
                r.hermitian.to_string(),
                r.semi_kaehler.to_string(),
                r.w3.to_string(),
                r.lck.map_or_else(String::new, |b| b.to_string()),
                r.kaehler.to_string(),
                r.nijenhuis_residual.to_string(),
                r.tilde_alpha_residual.to_string(),
                r.psi_residual.to_string(),
            ]);
            row
        });
        csv_string(&header, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let axes = parse_grid("rho=1,2,4; r1=0;r2=0", Family::Semikaehler).unwrap();
        assert_eq!(axes.len(), 3);
        assert_eq!(axes[0].1, vec![q(1, 1), q(2, 1), q(4, 1)]);
        assert!(parse_grid("rho", Family::Semikaehler).is_err());
        assert!(parse_grid("c11=1", Family::Integrable).is_err());
        assert!(parse_grid("rho=x", Family::Semikaehler).is_err());
        assert!(parse_grid("rho=1;rho=2", Family::Semikaehler).is_err());
        assert!(parse_grid("", Family::Semikaehler).is_err());
    }

    #[test]
    fn grid_is_a_product_with_last_axis_fastest() {
        let axes = parse_grid("b11=0,1;c11=2,3,4", Family::Unconstrained).unwrap();
        let pts = grid_points(Family::Unconstrained, &axes);
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1]["b11"], q(0, 1));
        assert_eq!(pts[1]["c11"], q(3, 1));
        assert_eq!(pts[3]["b11"], q(1, 1));
        assert_eq!(pts[0]["a1"], q(1, 1));
    }

    #[test]
    fn semikaehler_grid_rows() {
        let axes = parse_grid("rho=1,2,4;r1=0;r2=0", Family::Semikaehler).unwrap();
        let report = scan(Family::Semikaehler, &ScanSpec::Grid(axes), &RunConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rows.iter().all(|r| r.semi_kaehler && r.hermitian));
        let csv = report.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("index,input_rho,r1,r2,a1,b1,a2,b2,b11,"));
    }
}
