//! Seeded random rational test points.

use hermitia_core::family::{FreeCoefficients, G8Parameters, MagninParams};
use hermitia_core::{q, rational_sphere_point, Rational, SpherePoint, Tolerance};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draws rationals `p/q` with `|p| <= max_numerator`, `1 <= q <= max_denominator`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    max_numerator: i64,
    max_denominator: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, 9, 9)
    }

    pub fn with_bounds(seed: u64, max_numerator: i64, max_denominator: i64) -> Self {
        assert!(max_numerator >= 1 && max_denominator >= 1, "bounds must be positive");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_numerator,
            max_denominator,
        }
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.random_range(-self.max_numerator..=self.max_numerator);
        let d = self.rng.random_range(1..=self.max_denominator);
        q(p, d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn array<const N: usize>(&mut self) -> [Rational; N] {
        std::array::from_fn(|_| self.rational())
    }

    /// Exact rational point on the sphere.
    pub fn sphere_point(&mut self) -> SpherePoint<Rational> {
        let (a, b) = (self.rational(), self.rational());
        rational_sphere_point(a, b)
    }

    /// A sphere point with `lambda != 0`.
    pub fn sphere_point_off_chart_boundary(&mut self) -> SpherePoint<Rational> {
        let a = self.nonzero_rational();
        let b = self.rational();
        rational_sphere_point(a, b)
    }

    pub fn g8_parameters(&mut self) -> G8Parameters<Rational> {
        G8Parameters::from_array(self.array())
    }

    pub fn free_coefficients(&mut self) -> FreeCoefficients<Rational> {
        FreeCoefficients::from_array(self.array())
    }

    pub fn magnin_params(&mut self) -> MagninParams<Rational> {
        let xi = self.rational();
        let eta = self.nonzero_rational();
        let (s1, s2) = (self.sphere_point(), self.sphere_point());
        MagninParams::new(xi, eta, s1, s2, Tolerance::DEFAULT).expect("eta is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..20).map(|_| s.rational()).collect()
        };
        let mut s = Sampler::new(7);
        let b: Vec<_> = (0..20).map(|_| s.rational()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bounds_are_respected() {
        let mut s = Sampler::new(3);
        for _ in 0..500 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &9u32.into());
            assert!(r.denom() <= &9.into());
        }
    }

    #[test]
    fn sphere_points_are_exact() {
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let p = s.sphere_point_off_chart_boundary();
            assert_eq!(p.norm_sq(), Rational::one());
            assert!(!p.lambda.is_zero());
        }
    }
}
