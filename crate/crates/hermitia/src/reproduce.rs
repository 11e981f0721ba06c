//! Seeded re-verification of the family's classification results.
//!
//! Each draw samples exact rational inputs; the checks then run in the
//! configured scalar mode and yield one [`CertifiedResult`] per claim.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use hermitia_core::family::{
    adapted_j8, build_g8, check_linear_relations, check_mixed_antisymmetry, factorized_jv,
    integrability_relations, magnin_jv, s_matrix, semikaehler_solution, signed_sphere_vector,
    tilde_alpha_closed_form, w4_obstruction_report, EtaSign, FreeCoefficients, G8Parameters,
    MagninParams, DEPENDENT_COEFFICIENTS,
};
use hermitia_core::hermitian::{check_compatibility, is_compatible, nabla_omega, psi_tensor};
use hermitia_core::{
    classify, classify_foliation, nijenhuis, tilde_alpha, CovTensor3, DistributionSplit, Error,
    LieAlgebra, Matrix, Rational, Scalar, SpherePoint, Tolerance,
};
use serde::Serialize;

use crate::config::{Mode, RunConfig};
use crate::error::HermitiaError;
use crate::sample::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "3.4")]
    Integrability,
    #[serde(rename = "4.1")]
    SemiKaehler,
    #[serde(rename = "w4")]
    W4,
    #[serde(rename = "foliation")]
    Foliation,
    #[serde(rename = "magnin")]
    Magnin,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Integrability,
        Theorem::SemiKaehler,
        Theorem::W4,
        Theorem::Foliation,
        Theorem::Magnin,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Integrability => "3.4",
            Theorem::SemiKaehler => "4.1",
            Theorem::W4 => "w4",
            Theorem::Foliation => "foliation",
            Theorem::Magnin => "magnin",
        }
    }
}

impl FromStr for Theorem {
    type Err = HermitiaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HermitiaError::UnknownTheorem(s.to_string()))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Error,
}

/// Outcome of one claim at one draw. For identities `max_residual` is the
/// largest violation; for non-vanishing claims it is 0 when verified and
/// the witness names the nonzero certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedResult {
    pub claim: String,
    pub draw: usize,
    pub status: Status,
    pub max_residual: f64,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub refuted: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(results: &[CertifiedResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Verified => s.verified += 1,
                Status::Refuted => s.refuted += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn all_verified(&self) -> bool {
        self.refuted == 0 && self.error == 0
    }
}

/// Per-draw seed, so draw `i` does not depend on how many draws run.
pub fn draw_seed(seed: u64, draw: usize) -> u64 {
    let mut z = seed ^ (draw as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Outcome {
    ok: bool,
    residual: f64,
    witness: Option<String>,
}

impl Outcome {
    fn identity(residual: f64, tol: Tolerance, witness: Option<String>) -> Self {
        Outcome {
            ok: residual <= tol.value(),
            residual,
            witness,
        }
    }

    fn holds(ok: bool, witness: impl Into<String>) -> Self {
        Outcome {
            ok,
            residual: 0.0,
            witness: Some(witness.into()),
        }
    }
}

type Claim = (&'static str, Result<Outcome, Error>);

pub fn reproduce(theorem: Theorem, draws: usize, config: &RunConfig) -> Vec<CertifiedResult> {
    (0..draws)
        .flat_map(|draw| run_draw(theorem, draw, config))
        .collect()
}

fn run_draw(theorem: Theorem, draw: usize, config: &RunConfig) -> Vec<CertifiedResult> {
    let start = Instant::now();
    let mut sampler = Sampler::new(draw_seed(config.seed, draw));
    let tol = config.effective_tolerance();
    let claims = match config.mode {
        Mode::Exact => claims::<Rational>(theorem, &mut sampler, tol),
        Mode::Float => claims::<f64>(theorem, &mut sampler, tol),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    claims
        .into_iter()
        .map(|(name, outcome)| {
            let (status, max_residual, witness) = match outcome {
                Ok(o) => (
                    if o.ok { Status::Verified } else { Status::Refuted },
                    o.residual,
                    o.witness,
                ),
                Err(e) => (Status::Error, 0.0, Some(e.to_string())),
            };
            CertifiedResult {
                claim: format!("{}/{name}", theorem.id()),
                draw,
                status,
                max_residual,
                witness,
                wall_time_ms: config.timings.then_some(elapsed),
            }
        })
        .collect()
}

fn claims<S: Scalar>(theorem: Theorem, sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    match theorem {
        Theorem::Integrability => integrability_claims::<S>(sampler, tol),
        Theorem::SemiKaehler => semikaehler_claims::<S>(sampler, tol),
        Theorem::W4 => w4_claims::<S>(sampler, tol),
        Theorem::Foliation => foliation_claims::<S>(sampler, tol),
        Theorem::Magnin => magnin_claims::<S>(sampler, tol),
    }
}

fn conv<S: Scalar>(r: &Rational) -> S {
    S::from_rational(r)
}

fn conv_sphere<S: Scalar>(s: &SpherePoint<Rational>) -> SpherePoint<S> {
    s.map(conv)
}

/// First component of a tensor that is not negligible, 1-based.
fn first_nonzero<S: Scalar>(t: &CovTensor3<S>, tol: Tolerance, label: &str) -> Option<String> {
    let n = t.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = t.get(i, j, k);
                if !v.is_negligible(tol) {
                    return Some(format!("{label}[{}][{}][{}] = {v}", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}

fn max_abs<S: Scalar>(values: &[S]) -> f64 {
    hermitia_core::scalar::max_magnitude(values)
}

fn integrability_claims<S: Scalar>(sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    let s1 = sampler.sphere_point_off_chart_boundary();
    let s2 = sampler.sphere_point_off_chart_boundary();
    let free = sampler.free_coefficients();
    let rho = sampler.rational();
    let unconstrained = sampler.g8_parameters();
    let (s1, s2) = (conv_sphere::<S>(&s1), conv_sphere::<S>(&s2));
    let free: FreeCoefficients<S> = FreeCoefficients::from_array(
        [&free.b21, &free.c12, &free.c21, &free.c22, &free.s24, &free.t15, &free.t24, &free.t25]
            .map(conv),
    );
    let j = adapted_j8(&s1, &s2, EtaSign::Plus);

    let solved = integrability_relations(&s1, &s2, &free, conv(&rho), tol);
    let integrable = solved.clone().and_then(|p| {
        let n = nijenhuis(&build_g8(&p), &j)?;
        Ok(Outcome::identity(n.max_abs(), tol, first_nonzero(&n, tol, "N")))
    });

    let sensitivity = solved.and_then(|p| {
        let mut notes = Vec::new();
        let mut ok = true;
        for name in DEPENDENT_COEFFICIENTS {
            let i = G8Parameters::<S>::index_of(name).expect("known name");
            let bumped = p.with(name, p.to_array()[i].clone() + S::one())?;
            let n = nijenhuis(&build_g8(&bumped), &j)?;
            match first_nonzero(&n, tol, "N") {
                Some(w) => notes.push(format!("{name}+1: {w}")),
                None => {
                    ok = false;
                    notes.push(format!("{name}+1: N vanishes"));
                }
            }
        }
        Ok(Outcome::holds(ok, notes.join("; ")))
    });

    let dimension = {
        let reports = [s_matrix(&s1, tol), s_matrix(&s2, tol)];
        let residual = reports
            .iter()
            .flat_map(|r| r.kernel.iter().map(|v| max_abs(&r.matrix.mul_vec(v))))
            .fold(0.0, f64::max);
        let shape_ok = reports.iter().all(|r| r.rank == 2 && r.nullity() == 4);
        Ok(Outcome {
            ok: shape_ok && residual <= tol.value(),
            residual,
            witness: Some(format!(
                "rank {} and {}, nullity {} and {}; with rho free the family has dimension {}",
                reports[0].rank,
                reports[1].rank,
                reports[0].nullity(),
                reports[1].nullity(),
                reports[0].nullity() + reports[1].nullity() + 1
            )),
        })
    };

    let reductions = (|| {
        let p: G8Parameters<S> = unconstrained.map(conv);
        let n = nijenhuis(&build_g8(&p), &j)?;
        let mixed = check_mixed_antisymmetry(&n, tol);
        let mixed_res = mixed
            .iter()
            .map(|&(a, b, c)| (n.get(a, b, c).clone() + n.get(c, b, a).clone()).magnitude())
            .fold(0.0, f64::max);
        let linear = check_linear_relations(&n, &s1, &s2);
        let linear_res = linear.iter().map(|r| r.residual.magnitude()).fold(0.0, f64::max);
        let witness = linear
            .iter()
            .find(|r| !r.residual.is_negligible(tol))
            .map(|r| format!("relation {} fails for e{}", r.relation, r.horizontal + 1))
            .or_else(|| mixed.first().map(|t| format!("mixed antisymmetry fails at {t:?}")));
        Ok(Outcome::identity(mixed_res.max(linear_res), tol, witness))
    })();

    vec![
        ("integrable", integrable),
        ("sensitivity", sensitivity),
        ("dimension", dimension),
        ("reductions", reductions),
    ]
}

fn semikaehler_claims<S: Scalar>(sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    let rho = sampler.nonzero_rational();
    let (r1, r2) = (sampler.rational(), sampler.rational());
    let s1 = sampler.sphere_point_off_chart_boundary();
    let s2 = sampler.sphere_point_off_chart_boundary();
    let generic = sampler.g8_parameters();
    let (s1, s2) = (conv_sphere::<S>(&s1), conv_sphere::<S>(&s2));
    let j = adapted_j8(&s1, &s2, EtaSign::Plus);

    let solved = semikaehler_solution(conv(&rho), conv(&r1), conv(&r2), &s1, &s2, tol);
    let algebra = solved.as_ref().map(build_g8).map_err(Clone::clone);

    let semi = algebra.clone().and_then(|l| {
        let r = classify(&l, &j, tol)?;
        let residual = r.residuals["nijenhuis"].max(r.residuals["tilde_alpha"]);
        Ok(Outcome {
            ok: r.integrable && r.semi_kaehler && residual <= tol.value(),
            residual,
            witness: None,
        })
    });

    let strict = algebra.and_then(|l| {
        let alpha = nabla_omega(&l, &j, tol)?;
        let psi = psi_tensor(&alpha, &j)?;
        let ok = !alpha.is_zero(tol) && !psi.is_zero(tol);
        let w = first_nonzero(&psi, tol, "psi").unwrap_or_else(|| "psi vanishes".into());
        Ok(Outcome::holds(ok, w))
    });

    let horizontal = solved.clone().map(|p| {
        let theta = p.theta();
        let k = theta.iter().position(|t| !t.is_negligible(tol));
        Outcome::holds(
            k.is_some(),
            match k {
                Some(k) => format!("theta{} = {}", k + 1, theta[k]),
                None => "theta = 0".into(),
            },
        )
    });

    let closed_form = (|| {
        let p: G8Parameters<S> = generic.map(conv);
        let brute = tilde_alpha(&nabla_omega(&build_g8(&p), &j, tol)?);
        let closed = tilde_alpha_closed_form(&p, &s1, &s2);
        let diff: Vec<S> = brute.iter().zip(&closed).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Outcome::identity(max_abs(&diff), tol, None))
    })();

    let refuses = match semikaehler_solution(S::zero(), conv(&r1), conv(&r2), &s1, &s2, tol) {
        Err(Error::NoSemiKaehlerSolution) => Ok(Outcome::holds(true, "rho = 0 refused")),
        Err(e) => Err(e),
        Ok(_) => Ok(Outcome::holds(false, "solver accepted rho = 0")),
    };

    vec![
        ("semi_kaehler", semi),
        ("strictly_w3", strict),
        ("horizontal_not_integrable", horizontal),
        ("trace_closed_form", closed_form),
        ("rho_zero_refused", refuses),
    ]
}

fn w4_claims<S: Scalar>(sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    let s1 = sampler.sphere_point_off_chart_boundary();
    let s2 = sampler.sphere_point_off_chart_boundary();
    let generic = sampler.g8_parameters();
    let free = sampler.free_coefficients();
    let rho = sampler.rational();
    let (s1, s2) = (conv_sphere::<S>(&s1), conv_sphere::<S>(&s2));
    let j = adapted_j8(&s1, &s2, EtaSign::Plus);

    let obstruction = {
        let r = w4_obstruction_report(&s1, &s2, tol);
        let residual = r
            .second_stage
            .iter()
            .chain(std::iter::once(&r.terminal))
            .map(|c| (c.computed.clone() - c.expected.clone()).magnitude())
            .fold(r.psi_yy_horizontal_max, f64::max);
        Ok(Outcome {
            ok: r.w4_empty,
            residual,
            witness: Some(format!("{} = {}", r.terminal.label(), r.terminal.computed)),
        })
    };

    let psi_yy = (|| {
        let p: G8Parameters<S> = generic.map(conv);
        let psi = psi_tensor(&nabla_omega(&build_g8(&p), &j, tol)?, &j)?;
        let theta = p.theta();
        let v = signed_sphere_vector(&s1, &s2);
        let three = S::from_i64(3);
        let y = hermitia_core::family::basis::Y;
        let residual = (0..8)
            .map(|k| {
                let expected = if k < 6 {
                    (theta[k].clone() + v[k].clone()) / three.clone()
                } else {
                    S::zero()
                };
                (psi.get(y, y, k).clone() - expected).magnitude()
            })
            .fold(0.0, f64::max);
        Ok(Outcome::identity(residual, tol, None))
    })();

    let not_lck = (|| {
        let free: FreeCoefficients<S> = FreeCoefficients::from_array(
            [&free.b21, &free.c12, &free.c21, &free.c22, &free.s24, &free.t15, &free.t24, &free.t25]
                .map(conv),
        );
        let p = integrability_relations(&s1, &s2, &free, conv(&rho), tol)?;
        let r = classify(&build_g8(&p), &j, tol)?;
        let ok = r.integrable && r.lck == Some(false) && !r.kaehler;
        Ok(Outcome::holds(ok, format!("max |psi| = {:e}", r.residuals["psi"])))
    })();

    vec![
        ("obstruction", obstruction),
        ("psi_yy_closed_form", psi_yy),
        ("integrable_not_lck", not_lck),
    ]
}

fn foliation_claims<S: Scalar>(sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    let p: G8Parameters<S> = sampler.g8_parameters().map(conv);
    let claim = (|| {
        let split = DistributionSplit::new(hermitia_core::family::basis::VERTICAL.to_vec(), 8)?;
        let r = classify_foliation(&build_g8(&p), &split, tol)?;
        let residual = r.vertical_form_max.max(r.horizontal_form_max);
        Ok(Outcome {
            ok: r.totally_geodesic && r.riemannian && residual <= tol.value(),
            residual,
            witness: None,
        })
    })();
    vec![("totally_geodesic_riemannian", claim)]
}

fn magnin_claims<S: Scalar>(sampler: &mut Sampler, tol: Tolerance) -> Vec<Claim> {
    let m = sampler.magnin_params();
    let xi_off = sampler.nonzero_rational();
    let (s1, s2) = (conv_sphere::<S>(m.spheres().0), conv_sphere::<S>(m.spheres().1));
    let m = MagninParams::new(conv(m.xi()), conv(m.eta()), s1.clone(), s2.clone(), tol)
        .expect("eta is nonzero");
    let jv = magnin_jv(&m);

    let square = Ok(Outcome::identity(
        (&jv * &jv).add(&Matrix::identity(6)).max_abs(),
        tol,
        None,
    ));

    let integrable = (|| {
        let acs = hermitia_core::AlmostComplexStructure::new(jv.clone(), tol)?;
        let n = nijenhuis(&LieAlgebra::su2_sum(), &acs)?;
        Ok(Outcome::identity(n.max_abs(), tol, first_nonzero(&n, tol, "N")))
    })();

    let factorization = Ok(Outcome::identity(factorized_jv(&m, tol).sub(&jv).max_abs(), tol, None));

    let locus = (|| {
        let l = build_g8(&G8Parameters::<S>::zero());
        let mut ok = true;
        for eta in [EtaSign::Plus, EtaSign::Minus] {
            ok &= check_compatibility(&l, &adapted_j8(&s1, &s2, eta), tol)?;
        }
        let psi = hermitia_core::family::canonical_block(&conv(&xi_off), m.eta(), tol)?;
        let off = !is_compatible(&Matrix::identity(6), &psi, tol);
        Ok(Outcome::holds(
            ok && off,
            format!("xi = {xi_off} gives a non-orthogonal structure: {off}"),
        ))
    })();

    vec![
        ("square_is_minus_identity", square),
        ("integrable", integrable),
        ("factorization", factorization),
        ("orthogonal_only_at_xi_zero", locus),
    ]
}
