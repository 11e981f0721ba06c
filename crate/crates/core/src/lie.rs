//! Metric Lie algebras given by structure constants on a fixed basis.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// A finite-dimensional real Lie algebra with an inner product.
///
/// `structure[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`. The
/// constants are only ever written through [`LieAlgebra::set_bracket`],
/// which keeps them antisymmetric in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    names: Vec<String>,
    structure: Vec<S>,
    gram: Matrix<S>,
}

/// A basis triple on which the Jacobi identity fails.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation<S> {
    pub triple: (usize, usize, usize),
    pub residual: Vec<S>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Abelian algebra on the given basis with metric `gram`.
    pub fn new(names: Vec<String>, gram: Matrix<S>, tol: Tolerance) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGram("empty basis".to_string()));
        }
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::InvalidGram(format!(
                "expected {n}x{n}, found {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric(tol) {
            return Err(Error::InvalidGram("not symmetric".to_string()));
        }
        if !gram.is_positive_definite(tol) {
            return Err(Error::InvalidGram("not positive definite".to_string()));
        }
        Ok(LieAlgebra {
            names,
            structure: vec![S::zero(); n * n * n],
            gram,
        })
    }

    /// Abelian algebra with an orthonormal basis.
    pub fn orthonormal(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebra {
            names,
            structure: vec![S::zero(); n * n * n],
            gram: Matrix::identity(n),
        }
    }

    /// `n`-dimensional abelian algebra with basis `e1..en`.
    pub fn abelian(n: usize) -> Self {
        Self::orthonormal((1..=n).map(|i| format!("e{i}")).collect())
    }

    /// su(2) on the orthonormal basis `A, B, C` with `[A,B] = 2C` and cyclic.
    pub fn su2() -> Self {
        let mut l = Self::orthonormal(names(&["A", "B", "C"]));
        l.install_su2(0);
        l
    }

    /// su(2) + su(2) on `A, B, C, R, S, T`.
    pub fn su2_sum() -> Self {
        let mut l = Self::orthonormal(names(&["A", "B", "C", "R", "S", "T"]));
        l.install_su2(0);
        l.install_su2(3);
        l
    }

    pub(crate) fn install_su2(&mut self, offset: usize) {
        let two = S::from_i64(2);
        let (a, b, c) = (offset, offset + 1, offset + 2);
        self.set_bracket_terms(a, b, &[(c, two.clone())]);
        self.set_bracket_terms(b, c, &[(a, two.clone())]);
        self.set_bracket_terms(c, a, &[(b, two)]);
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn has_orthonormal_basis(&self, tol: Tolerance) -> bool {
        self.gram.is_identity(tol)
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.structure[self.offset(i, j) + k]
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[S] {
        let o = self.offset(i, j);
        &self.structure[o..o + self.dim()]
    }

    /// Sets `[e_i, e_j] = coeffs` and `[e_j, e_i] = -coeffs`.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: &[S]) -> Result<()> {
        let n = self.dim();
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: coeffs.len(),
            });
        }
        if i >= n {
            return Err(Error::InvalidIndex(i));
        }
        if j >= n || i == j {
            return Err(Error::InvalidIndex(j));
        }
        let (oij, oji) = (self.offset(i, j), self.offset(j, i));
        for (k, c) in coeffs.iter().enumerate() {
            self.structure[oij + k] = c.clone();
            self.structure[oji + k] = -c.clone();
        }
        Ok(())
    }

    /// Sets `[e_i, e_j]` from sparse `(index, coefficient)` terms.
    pub(crate) fn set_bracket_terms(&mut self, i: usize, j: usize, terms: &[(usize, S)]) {
        let mut v = vec![S::zero(); self.dim()];
        for (k, c) in terms {
            v[*k] = v[*k].clone() + c.clone();
        }
        self.set_bracket(i, j, &v).expect("valid basis indices");
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[S], v: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        for len in [u.len(), v.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[S], v: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || i == j {
                    continue;
                }
                let w = ui.clone() * vj.clone();
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Inner product `g(u, v)`.
    pub fn metric(&self, u: &[S], v: &[S]) -> S {
        let gv = self.gram.mul_vec(v);
        u.iter()
            .zip(gv)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// Index triples where `c[i][j][k] != -c[j][i][k]`.
    pub fn check_antisymmetry(&self, tol: Tolerance) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.structure_constant(i, j, k).clone()
                        + self.structure_constant(j, i, k).clone();
                    if !s.is_negligible(tol) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// Cyclic sums `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`
    /// that fail to vanish. For an antisymmetric bracket the sum is
    /// alternating, so triples `i < j < l` cover everything.
    pub fn check_jacobi(&self, tol: Tolerance) -> Vec<JacobiViolation<S>> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let residual = self.jacobi_sum(i, j, l);
                    if residual.iter().any(|r| !r.is_negligible(tol)) {
                        out.push(JacobiViolation {
                            triple: (i, j, l),
                            residual,
                        });
                    }
                }
            }
        }
        out
    }

    /// The Jacobi cyclic sum for one basis triple.
    pub fn jacobi_sum(&self, i: usize, j: usize, l: usize) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            // [[e_a, e_b], e_c] = sum_m c_ab^m [e_m, e_c]
            for (m, cab) in self.basis_bracket(a, b).iter().enumerate() {
                if cab.is_zero() {
                    continue;
                }
                for (k, cmc) in self.basis_bracket(m, c).iter().enumerate() {
                    out[k] = out[k].clone() + cab.clone() * cmc.clone();
                }
            }
        }
        out
    }

    /// First pair of indices in `span` whose bracket leaves the span.
    pub fn closure_violation(&self, span: &[usize], tol: Tolerance) -> Option<(usize, usize)> {
        for (a, &i) in span.iter().enumerate() {
            for &j in &span[a + 1..] {
                let leaves = self
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .any(|(k, c)| !span.contains(&k) && !c.is_negligible(tol));
                if leaves {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Converts every scalar, e.g. from exact to float mode.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra {
            names: self.names.clone(),
            structure: self.structure.iter().map(&f).collect(),
            gram: self.gram.map(&f),
        }
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The `i`-th standard basis vector of length `n`.
pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// A point `(lambda, mu, nu)` on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint<S> {
    pub lambda: S,
    pub mu: S,
    pub nu: S,
}

impl<S: Scalar> SpherePoint<S> {
    pub fn new(lambda: S, mu: S, nu: S, tol: Tolerance) -> Result<Self> {
        let p = SpherePoint { lambda, mu, nu };
        if (p.norm_sq() - S::one()).is_negligible(tol) {
            Ok(p)
        } else {
            Err(Error::NotOnSphere)
        }
    }

    /// Inverse stereographic projection from the south pole:
    /// `(2a, 2b, 1 - a^2 - b^2) / (1 + a^2 + b^2)`. Rational inputs give an
    /// exact rational point.
    pub fn from_stereographic(a: S, b: S) -> Self {
        let r2 = a.square() + b.square();
        let d = S::one() + r2.clone();
        let two = S::from_i64(2);
        SpherePoint {
            lambda: two.clone() * a / d.clone(),
            mu: two * b / d.clone(),
            nu: (S::one() - r2) / d,
        }
    }

    /// The north pole `(0, 0, 1)`.
    pub fn pole() -> Self {
        SpherePoint {
            lambda: S::zero(),
            mu: S::zero(),
            nu: S::one(),
        }
    }

    pub fn norm_sq(&self) -> S {
        self.lambda.square() + self.mu.square() + self.nu.square()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SpherePoint<T> {
        SpherePoint {
            lambda: f(&self.lambda),
            mu: f(&self.mu),
            nu: f(&self.nu),
        }
    }
}

/// Exact rational sphere point from two rationals, see
/// [`SpherePoint::from_stereographic`].
pub fn rational_sphere_point<S: Scalar>(a: S, b: S) -> SpherePoint<S> {
    SpherePoint::from_stereographic(a, b)
}

/// An orthogonal split of the basis into vertical and horizontal parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionSplit {
    vertical: Vec<usize>,
    horizontal: Vec<usize>,
}

impl DistributionSplit {
    /// Vertical part spanned by `vertical`; the horizontal part is the
    /// complement in `0..dim`.
    pub fn new(mut vertical: Vec<usize>, dim: usize) -> Result<Self> {
        vertical.sort_unstable();
        for w in vertical.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidIndex(w[0]));
            }
        }
        if let Some(&bad) = vertical.iter().find(|&&i| i >= dim) {
            return Err(Error::InvalidIndex(bad));
        }
        let horizontal = (0..dim).filter(|i| vertical.binary_search(i).is_err()).collect();
        Ok(DistributionSplit {
            vertical,
            horizontal,
        })
    }

    pub fn vertical(&self) -> &[usize] {
        &self.vertical
    }

    pub fn horizontal(&self) -> &[usize] {
        &self.horizontal
    }

    pub fn dim(&self) -> usize {
        self.vertical.len() + self.horizontal.len()
    }
}
