//! Exact and floating point computations on metric Lie algebras: Koszul
//! connections, Riemannian foliations, almost Hermitian structures and
//! their Gray-Hervella classes, and an eight-dimensional family built on
//! su(2) + su(2).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod connection;
pub mod error;
pub mod family;
pub mod hermitian;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use connection::{
    classify_foliation, koszul_connection, second_fundamental_forms, ConnectionCoefficients,
    FoliationReport, SplitForm,
};
pub use error::{Error, Result};
pub use family::{
    adapted_j8, build_g8, factorized_jv, hopf_lift, integrability_relations, magnin_jv, s_matrix,
    semikaehler_solution, so3_from_quaternion, w4_obstruction_report, EtaSign, FreeCoefficients,
    G8Parameters, MagninParams, Quaternion, W4ObstructionReport,
};
pub use hermitian::{
    check_compatibility, classify, kaehler_form, nabla_omega, nijenhuis, psi, psi_tensor,
    tensor_inner, tilde_alpha, w4_component, w_membership, AlmostComplexStructure, ClassReport,
    CovTensor3, KaehlerForm, WMembership,
};
pub use lie::{rational_sphere_point, DistributionSplit, JacobiViolation, LieAlgebra, SpherePoint};
pub use linalg::{Kernel, Matrix};
pub use scalar::{q, Rational, Scalar, Tolerance};
