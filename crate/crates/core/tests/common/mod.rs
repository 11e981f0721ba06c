#![allow(dead_code)]

use hermitia_core::family::{FreeCoefficients, G8Parameters};
use hermitia_core::{q, rational_sphere_point, Rational, SpherePoint};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, d)| q(p, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=9).prop_map(|(p, d)| q(p, d))
}

pub fn sphere() -> impl Strategy<Value = SpherePoint<Rational>> {
    (rational(), rational()).prop_map(|(a, b)| rational_sphere_point(a, b))
}

/// Sphere points with `lambda != 0`.
pub fn sphere_off_boundary() -> impl Strategy<Value = SpherePoint<Rational>> {
    (nonzero_rational(), rational()).prop_map(|(a, b)| rational_sphere_point(a, b))
}

pub fn g8_params() -> impl Strategy<Value = G8Parameters<Rational>> {
    proptest::array::uniform13(rational()).prop_map(G8Parameters::from_array)
}

pub fn free_coefficients() -> impl Strategy<Value = FreeCoefficients<Rational>> {
    proptest::array::uniform8(rational()).prop_map(FreeCoefficients::from_array)
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), n)
}
