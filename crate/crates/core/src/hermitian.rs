//! Almost Hermitian structures on a metric Lie algebra and their
//! Gray-Hervella classes.
//!
//! All tensors are evaluated on left-invariant fields at the identity, in
//! an orthonormal basis. The Kaehler form is `omega(Y, Z) = g(JY, Z)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::connection::koszul_connection;
use crate::error::{Error, Result};
use crate::lie::{unit, LieAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{max_magnitude, Scalar, Tolerance};

/// A matrix `J` with `J^2 = -I`, acting on column coefficient vectors, so
/// `J e_j` is column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostComplexStructure<S> {
    j: Matrix<S>,
}

impl<S: Scalar> AlmostComplexStructure<S> {
    pub fn new(j: Matrix<S>, tol: Tolerance) -> Result<Self> {
        if !j.is_square() || !j.rows().is_multiple_of(2) {
            return Err(Error::NotAlmostComplex);
        }
        let sq = &j * &j;
        if !sq.add(&Matrix::identity(j.rows())).is_zero(tol) {
            return Err(Error::NotAlmostComplex);
        }
        Ok(AlmostComplexStructure { j })
    }

    pub(crate) fn from_matrix_unchecked(j: Matrix<S>) -> Self {
        AlmostComplexStructure { j }
    }

    /// The standard structure `e_{2i} -> e_{2i+1} -> -e_{2i}`.
    pub fn standard(dim: usize) -> Self {
        let j = Matrix::from_fn(dim, dim, |r, c| {
            if c % 2 == 0 && r == c + 1 {
                S::one()
            } else if c % 2 == 1 && r + 1 == c {
                -S::one()
            } else {
                S::zero()
            }
        });
        AlmostComplexStructure { j }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.j.mul_vec(v)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlmostComplexStructure<T> {
        AlmostComplexStructure { j: self.j.map(f) }
    }
}

fn check_dims<S: Scalar>(algebra: &LieAlgebra<S>, j: &AlmostComplexStructure<S>) -> Result<()> {
    if algebra.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: j.dim(),
        });
    }
    Ok(())
}

/// `J^2 = -I` and `J^T G J = G`.
pub fn check_compatibility<S: Scalar>(
    algebra: &LieAlgebra<S>,
    j: &AlmostComplexStructure<S>,
    tol: Tolerance,
) -> Result<bool> {
    check_dims(algebra, j)?;
    Ok(is_compatible(algebra.gram(), j.matrix(), tol))
}

/// Compatibility of a bare matrix with a metric, for candidates that are
/// not yet known to be almost complex.
pub fn is_compatible<S: Scalar>(gram: &Matrix<S>, j: &Matrix<S>, tol: Tolerance) -> bool {
    if !j.is_square() || j.rows() != gram.rows() {
        return false;
    }
    let n = j.rows();
    let complex = (j * j).add(&Matrix::identity(n)).is_zero(tol);
    let isometry = (&(&j.transpose() * gram) * j).sub(gram).is_zero(tol);
    complex && isometry
}

/// `omega[i][j] = g(J e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KaehlerForm<S> {
    pub omega: Matrix<S>,
}

pub fn kaehler_form<S: Scalar>(
    algebra: &LieAlgebra<S>,
    j: &AlmostComplexStructure<S>,
) -> Result<KaehlerForm<S>> {
    check_dims(algebra, j)?;
    Ok(KaehlerForm {
        omega: &j.matrix().transpose() * algebra.gram(),
    })
}

/// A covariant 3-tensor on the basis, `get(i, j, k) = a(e_i, e_j, e_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovTensor3<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> CovTensor3<S> {
    pub fn zeros(dim: usize) -> Self {
        CovTensor3 {
            dim,
            data: vec![S::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        CovTensor3 { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        max_magnitude(&self.data)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        CovTensor3 {
            dim: self.dim,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert_eq!(self.dim, other.dim, "tensor dimensions differ");
        CovTensor3 {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    /// Feeds `J e` instead of `e` into `slot` (0, 1 or 2).
    pub fn twist(&self, j: &Matrix<S>, slot: usize) -> Self {
        let n = self.dim;
        Self::from_fn(n, |a, b, c| {
            let idx = [a, b, c];
            (0..n).fold(S::zero(), |acc, l| {
                let coeff = &j[(l, idx[slot])];
                if coeff.is_zero() {
                    return acc;
                }
                let mut moved = idx;
                moved[slot] = l;
                acc + coeff.clone() * self.get(moved[0], moved[1], moved[2]).clone()
            })
        })
    }

    /// `a(X, Y, Z) + a(X, Z, Y)`.
    pub fn skew_defect(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j, k| self.get(i, j, k).clone() + self.get(i, k, j).clone())
    }

    /// `a(X, Y, Z) + a(X, JY, JZ)`.
    pub fn j_anti_invariance_defect(&self, j: &Matrix<S>) -> Self {
        self.add(&self.twist(j, 1).twist(j, 2))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CovTensor3<T> {
        CovTensor3 {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// `sum a(e_j, e_k, e_l) b(e_j, e_k, e_l)`.
pub fn tensor_inner<S: Scalar>(a: &CovTensor3<S>, b: &CovTensor3<S>) -> Result<S> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(a
        .data
        .iter()
        .zip(&b.data)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
}

/// `N[i][j][k] = g(N_J(e_i, e_j), e_k)` with
/// `N_J(X, Y) = [X, Y] + J[JX, Y] + J[X, JY] - [JX, JY]`.
pub fn nijenhuis<S: Scalar>(
    algebra: &LieAlgebra<S>,
    j: &AlmostComplexStructure<S>,
) -> Result<CovTensor3<S>> {
    check_dims(algebra, j)?;
    let n = algebra.dim();
    let cols: Vec<Vec<S>> = (0..n).map(|i| j.matrix().column(i)).collect();
    let mut data = Vec::with_capacity(n * n * n);
    for a in 0..n {
        let ea = unit::<S>(n, a);
        for b in 0..n {
            let eb = unit::<S>(n, b);
            let mut inner = algebra.bracket_unchecked(&cols[a], &eb);
            let xjy = algebra.bracket_unchecked(&ea, &cols[b]);
            for (x, y) in inner.iter_mut().zip(xjy) {
                *x = x.clone() + y;
            }
            let jinner = j.apply(&inner);
            let jxjy = algebra.bracket_unchecked(&cols[a], &cols[b]);
            let v: Vec<S> = algebra
                .basis_bracket(a, b)
                .iter()
                .zip(jinner)
                .zip(jxjy)
                .map(|((x, y), z)| x.clone() + y - z)
                .collect();
            data.extend(algebra.gram().mul_vec(&v));
        }
    }
    Ok(CovTensor3 { dim: n, data })
}

/// `alpha[i][j][k] = (nabla_{e_i} omega)(e_j, e_k)
///                 = g(nabla_{e_i}(J e_j), e_k) - g(J nabla_{e_i} e_j, e_k)`.
pub fn nabla_omega<S: Scalar>(
    algebra: &LieAlgebra<S>,
    j: &AlmostComplexStructure<S>,
    tol: Tolerance,
) -> Result<CovTensor3<S>> {
    check_dims(algebra, j)?;
    let gamma = koszul_connection(algebra, tol)?;
    let jm = j.matrix();
    let n = algebra.dim();
    Ok(CovTensor3::from_fn(n, |i, a, b| {
        (0..n).fold(S::zero(), |acc, l| {
            acc + jm[(l, a)].clone() * gamma.get(i, l, b).clone()
                - gamma.get(i, a, l).clone() * jm[(b, l)].clone()
        })
    }))
}

/// `t[k] = -sum_i alpha[i][i][k]`, which is also the codifferential of omega.
pub fn tilde_alpha<S: Scalar>(alpha: &CovTensor3<S>) -> Vec<S> {
    let n = alpha.dim;
    (0..n)
        .map(|k| (0..n).fold(S::zero(), |acc, i| acc - alpha.get(i, i, k).clone()))
        .collect()
}

/// Membership of a tensor of `W` in the four basic classes. `w4` is `None`
/// in real dimension 2, where the class is not defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WMembership {
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
    pub w4: Option<bool>,
}

/// Fails unless `alpha` is skew in the last two slots and J-anti-invariant.
pub fn check_in_w<S: Scalar>(alpha: &CovTensor3<S>, j: &Matrix<S>, tol: Tolerance) -> Result<()> {
    if alpha.dim != j.rows() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim,
            found: j.rows(),
        });
    }
    if !alpha.skew_defect().is_zero(tol) {
        return Err(Error::NotInW("not skew in the last two arguments"));
    }
    if !alpha.j_anti_invariance_defect(j).is_zero(tol) {
        return Err(Error::NotInW("a(X, JY, JZ) != -a(X, Y, Z)"));
    }
    Ok(())
}

pub fn w_membership<S: Scalar>(
    alpha: &CovTensor3<S>,
    j: &AlmostComplexStructure<S>,
    tol: Tolerance,
) -> Result<WMembership> {
    let jm = j.matrix();
    check_in_w(alpha, jm, tol)?;
    let n = alpha.dim;

    // a(X, X, Z) = 0 for all X is equivalent to vanishing of the part
    // symmetric in the first two slots.
    let w1 = (0..n).all(|a| {
        (a..n).all(|b| {
            (0..n).all(|c| (alpha.get(a, b, c).clone() + alpha.get(b, a, c).clone()).is_negligible(tol))
        })
    });
    let w2 = cyclic_sum(alpha).is_zero(tol);
    let hermitian_part = w3w4_defect(alpha, jm).is_zero(tol);
    let trace_free = tilde_alpha(alpha).iter().all(|v| v.is_negligible(tol));
    let w4 = if n <= 2 {
        None
    } else {
        Some(alpha.sub(&w4_projection(alpha, jm)).is_zero(tol))
    };
    Ok(WMembership {
        w1,
        w2,
        w3: hermitian_part && trace_free,
        w4,
    })
}

fn cyclic_sum<S: Scalar>(alpha: &CovTensor3<S>) -> CovTensor3<S> {
    CovTensor3::from_fn(alpha.dim, |a, b, c| {
        alpha.get(a, b, c).clone() + alpha.get(c, a, b).clone() + alpha.get(b, c, a).clone()
    })
}

/// `a(X, Y, Z) - a(JX, JY, Z)`, zero exactly on `W3 + W4`.
pub fn w3w4_defect<S: Scalar>(alpha: &CovTensor3<S>, j: &Matrix<S>) -> CovTensor3<S> {
    alpha.sub(&alpha.twist(j, 0).twist(j, 1))
}

/// The `W4` tensor with the same trace covector as `alpha`:
/// `-1/(2(n-1)) (<X,Y> t(Z) - <X,Z> t(Y) - <X,JY> t(JZ) + <X,JZ> t(JY))`
/// where `dim = 2n`.
fn w4_projection<S: Scalar>(alpha: &CovTensor3<S>, j: &Matrix<S>) -> CovTensor3<S> {
    w4_from_covector(&tilde_alpha(alpha), j)
}

/// The `W4` tensor determined by a covector `t`; its trace covector is `t`.
pub fn w4_from_covector<S: Scalar>(t: &[S], j: &Matrix<S>) -> CovTensor3<S> {
    let dim = t.len();
    let factor = -S::one() / S::from_i64(dim as i64 - 2);
    // t(J e_k) = sum_l J[l][k] t[l]
    let tj: Vec<S> = (0..dim)
        .map(|k| (0..dim).fold(S::zero(), |acc, l| acc + j[(l, k)].clone() * t[l].clone()))
        .collect();
    CovTensor3::from_fn(dim, |x, y, z| {
        let mut s = S::zero();
        if x == y {
            s = s + t[z].clone();
        }
        if x == z {
            s = s - t[y].clone();
        }
        s = s - j[(x, y)].clone() * tj[z].clone() + j[(x, z)].clone() * tj[y].clone();
        factor.clone() * s
    })
}

/// Splits `alpha` in `W3 + W4` as `(alpha4, alpha3)`.
pub fn w4_component<S: Scalar>(
    alpha: &CovTensor3<S>,
    j: &AlmostComplexStructure<S>,
    tol: Tolerance,
) -> Result<(CovTensor3<S>, CovTensor3<S>)> {
    let jm = j.matrix();
    if alpha.dim != jm.rows() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim,
            found: jm.rows(),
        });
    }
    if alpha.dim <= 2 {
        return Err(Error::W4NotApplicable);
    }
    if !w3w4_defect(alpha, jm).is_zero(tol) {
        return Err(Error::NotInW3W4);
    }
    let alpha4 = w4_projection(alpha, jm);
    let alpha3 = alpha.sub(&alpha4);
    Ok((alpha4, alpha3))
}

/// The coefficients of the conformal obstruction `mu`:
/// `psi = alpha - alpha4`, which vanishes exactly when `alpha` lies in `W4`.
pub fn psi_tensor<S: Scalar>(alpha: &CovTensor3<S>, j: &AlmostComplexStructure<S>) -> Result<CovTensor3<S>> {
    let jm = j.matrix();
    if alpha.dim != jm.rows() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim,
            found: jm.rows(),
        });
    }
    if alpha.dim <= 2 {
        return Err(Error::W4NotApplicable);
    }
    Ok(alpha.sub(&w4_projection(alpha, jm)))
}

/// One coefficient of [`psi_tensor`], indices 0-based.
pub fn psi<S: Scalar>(
    alpha: &CovTensor3<S>,
    j: &AlmostComplexStructure<S>,
    a: usize,
    b: usize,
    c: usize,
) -> Result<S> {
    let n = alpha.dim;
    if let Some(&bad) = [a, b, c].iter().find(|&&i| i >= n) {
        return Err(Error::InvalidIndex(bad));
    }
    Ok(psi_tensor(alpha, j)?.get(a, b, c).clone())
}

/// Gray-Hervella verdicts together with the largest residual of each check.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub integrable: bool,
    pub w1: bool,
    pub w2: bool,
    pub w3: bool,
    pub w4: Option<bool>,
    /// `W3 + W4`, equivalent to integrability.
    pub hermitian: bool,
    pub semi_kaehler: bool,
    /// `W4`; `None` in real dimension 2.
    pub lck: Option<bool>,
    pub kaehler: bool,
    pub residuals: BTreeMap<&'static str, f64>,
}

impl ClassReport {
    /// Logical consistency of the flags.
    pub fn is_consistent(&self) -> bool {
        let hermitian_ok = self.hermitian == self.integrable;
        let semi_ok = !self.semi_kaehler || self.integrable;
        let lck_ok = self.lck != Some(true) || self.integrable;
        let kaehler_ok = !self.kaehler
            || (self.integrable
                && self.semi_kaehler
                && self.lck.unwrap_or(true)
                && self.w1
                && self.w2
                && self.w3
                && self.w4.unwrap_or(true));
        hermitian_ok && semi_ok && lck_ok && kaehler_ok
    }
}

pub fn classify<S: Scalar>(
    algebra: &LieAlgebra<S>,
    j: &AlmostComplexStructure<S>,
    tol: Tolerance,
) -> Result<ClassReport> {
    if !check_compatibility(algebra, j, tol)? {
        return Err(Error::NotCompatible);
    }
    let n_tensor = nijenhuis(algebra, j)?;
    let alpha = nabla_omega(algebra, j, tol)?;
    let membership = w_membership(&alpha, j, tol)?;
    let t = tilde_alpha(&alpha);

    let integrable = n_tensor.is_zero(tol);
    let trace_free = t.iter().all(|v| v.is_negligible(tol));
    let kaehler = alpha.is_zero(tol);

    let mut residuals = BTreeMap::new();
    residuals.insert("nijenhuis", n_tensor.max_abs());
    residuals.insert("nabla_omega", alpha.max_abs());
    residuals.insert("tilde_alpha", max_magnitude(&t));
    residuals.insert("w3w4", w3w4_defect(&alpha, j.matrix()).max_abs());
    let lck = if algebra.dim() > 2 {
        let p = psi_tensor(&alpha, j)?;
        residuals.insert("psi", p.max_abs());
        Some(integrable && p.is_zero(tol))
    } else {
        None
    };

    Ok(ClassReport {
        integrable,
        w1: membership.w1,
        w2: membership.w2,
        w3: membership.w3,
        w4: membership.w4,
        hermitian: integrable,
        semi_kaehler: integrable && trace_free,
        lck,
        kaehler,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use num_traits::Zero;

    type Q = Rational;
    const TOL: Tolerance = Tolerance::DEFAULT;

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn rotation_is_compatible() {
        let l = LieAlgebra::<Q>::abelian(2);
        let j = AlmostComplexStructure::new(qm(&[&[0, -1], &[1, 0]]), TOL).unwrap();
        assert!(check_compatibility(&l, &j, TOL).unwrap());
    }

    #[test]
    fn non_complex_matrix_is_rejected() {
        assert_eq!(
            AlmostComplexStructure::new(qm(&[&[1, 0], &[0, 1]]), TOL),
            Err(Error::NotAlmostComplex)
        );
    }

    #[test]
    fn sheared_structure_is_not_compatible() {
        // J^2 = -I but not orthogonal.
        let j = qm(&[&[1, -2], &[1, -1]]);
        assert!(AlmostComplexStructure::new(j.clone(), TOL).is_ok());
        assert!(!is_compatible(&Matrix::identity(2), &j, TOL));
    }

    #[test]
    fn abelian_standard_is_kaehler() {
        let l = LieAlgebra::<Q>::abelian(4);
        let j = AlmostComplexStructure::standard(4);
        let r = classify(&l, &j, TOL).unwrap();
        assert!(r.kaehler && r.integrable && r.semi_kaehler);
        assert_eq!(r.lck, Some(true));
        assert!(r.is_consistent());
        assert!(tilde_alpha(&nabla_omega(&l, &j, TOL).unwrap()).iter().all(Zero::is_zero));
    }

    #[test]
    fn kaehler_form_is_antisymmetric() {
        let l = LieAlgebra::<Q>::su2_sum();
        let j = AlmostComplexStructure::standard(6);
        let w = kaehler_form(&l, &j).unwrap().omega;
        assert!(w.add(&w.transpose()).is_zero(TOL));
        // omega(e_1, e_2) = g(J e_1, e_2) = 1
        assert_eq!(w[(0, 1)], q(1, 1));
    }

    #[test]
    fn nabla_omega_lies_in_w() {
        let l = LieAlgebra::<Q>::su2_sum();
        let j = AlmostComplexStructure::standard(6);
        let a = nabla_omega(&l, &j, TOL).unwrap();
        assert!(check_in_w(&a, j.matrix(), TOL).is_ok());
        let n = nijenhuis(&l, &j).unwrap();
        assert!((0..6).all(|x| (0..6).all(|y| (0..6).all(|z| {
            (n.get(x, y, z).clone() + n.get(y, x, z).clone()).is_zero()
        }))));
    }

    #[test]
    fn zero_tensor_is_in_every_class() {
        let j = AlmostComplexStructure::<Q>::standard(4);
        let m = w_membership(&CovTensor3::zeros(4), &j, TOL).unwrap();
        assert_eq!(
            m,
            WMembership {
                w1: true,
                w2: true,
                w3: true,
                w4: Some(true)
            }
        );
    }

    #[test]
    fn w4_from_covector_is_in_w4_and_keeps_trace() {
        let j = AlmostComplexStructure::<Q>::standard(6);
        let t: Vec<Q> = (1..=6).map(|i| q(i * i - 7, i)).collect();
        let a = w4_from_covector(&t, j.matrix());
        assert_eq!(tilde_alpha(&a), t);
        let m = w_membership(&a, &j, TOL).unwrap();
        assert_eq!(m.w4, Some(true));
        assert!(!m.w3);
        let (a4, a3) = w4_component(&a, &j, TOL).unwrap();
        assert_eq!(a4, a);
        assert!(a3.is_zero(TOL));
    }

    #[test]
    fn w4_not_defined_in_dimension_two() {
        let j = AlmostComplexStructure::<Q>::standard(2);
        let a = CovTensor3::zeros(2);
        assert_eq!(w_membership(&a, &j, TOL).unwrap().w4, None);
        assert_eq!(w4_component(&a, &j, TOL), Err(Error::W4NotApplicable));
        let r = classify(&LieAlgebra::abelian(2), &j, TOL).unwrap();
        assert_eq!(r.lck, None);
    }

    #[test]
    fn non_w_tensor_is_rejected() {
        let j = AlmostComplexStructure::<Q>::standard(4);
        let mut a = CovTensor3::zeros(4);
        a.data[1] = q(1, 1);
        assert!(matches!(w_membership(&a, &j, TOL), Err(Error::NotInW(_))));
    }

    #[test]
    fn inner_product_basics() {
        let a = CovTensor3::<Q>::from_fn(3, |i, j, k| q((i + 2 * j + 3 * k) as i64 - 4, 1));
        assert!(tensor_inner(&CovTensor3::zeros(3), &a).unwrap().is_zero());
        assert!(tensor_inner(&a, &a).unwrap() > Q::zero());
        assert!(tensor_inner(&a, &CovTensor3::zeros(2)).is_err());
    }

    #[test]
    fn psi_vanishes_on_abelian() {
        let l = LieAlgebra::<Q>::abelian(4);
        let j = AlmostComplexStructure::standard(4);
        let a = nabla_omega(&l, &j, TOL).unwrap();
        assert!(psi_tensor(&a, &j).unwrap().is_zero(TOL));
        assert_eq!(psi(&a, &j, 0, 0, 9), Err(Error::InvalidIndex(9)));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let l = LieAlgebra::<Q>::su2();
        let j = AlmostComplexStructure::standard(2);
        assert!(matches!(
            check_compatibility(&l, &j, TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
