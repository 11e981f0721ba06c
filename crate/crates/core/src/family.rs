//! The eight-dimensional algebras `su(2) + su(2) + span{X, Y}` with their
//! adapted almost Hermitian structures, and the closed-form solvers for the
//! integrable and semi-Kaehler cases.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hermitian::{nabla_omega, psi_tensor, AlmostComplexStructure, CovTensor3};
use crate::lie::{LieAlgebra, SpherePoint};
use crate::linalg::{Kernel, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// Basis indices of the family, `e1..e8 = A, B, C, R, S, T, X, Y`.
pub mod basis {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const R: usize = 3;
    pub const S: usize = 4;
    pub const T: usize = 5;
    pub const X: usize = 6;
    pub const Y: usize = 7;

    pub const NAMES: [&str; 8] = ["A", "B", "C", "R", "S", "T", "X", "Y"];
    pub const VERTICAL: [usize; 6] = [A, B, C, R, S, T];
    pub const HORIZONTAL: [usize; 2] = [X, Y];
}

/// The thirteen free coefficients of the family. The vertical part of
/// `[X, Y]` is derived from them by [`G8Parameters::theta`].
#[derive(Debug, Clone, PartialEq)]
pub struct G8Parameters<S> {
    pub b11: S,
    pub b21: S,
    pub c11: S,
    pub c12: S,
    pub c21: S,
    pub c22: S,
    pub s14: S,
    pub s24: S,
    pub t14: S,
    pub t15: S,
    pub t24: S,
    pub t25: S,
    pub rho: S,
}

impl<S: Scalar> G8Parameters<S> {
    pub const NAMES: [&'static str; 13] = [
        "b11", "b21", "c11", "c12", "c21", "c22", "s14", "s24", "t14", "t15", "t24", "t25", "rho",
    ];

    pub fn zero() -> Self {
        Self::from_array(core::array::from_fn(|_| S::zero()))
    }

    pub fn from_array(v: [S; 13]) -> Self {
        let [b11, b21, c11, c12, c21, c22, s14, s24, t14, t15, t24, t25, rho] = v;
        G8Parameters {
            b11,
            b21,
            c11,
            c12,
            c21,
            c22,
            s14,
            s24,
            t14,
            t15,
            t24,
            t25,
            rho,
        }
    }

    pub fn to_array(&self) -> [S; 13] {
        [
            self.b11.clone(),
            self.b21.clone(),
            self.c11.clone(),
            self.c12.clone(),
            self.c21.clone(),
            self.c22.clone(),
            self.s14.clone(),
            self.s24.clone(),
            self.t14.clone(),
            self.t15.clone(),
            self.t24.clone(),
            self.t25.clone(),
            self.rho.clone(),
        ]
    }

    pub fn index_of(name: &str) -> Option<usize> {
        Self::NAMES.iter().position(|n| *n == name)
    }

    /// Copy with one coefficient replaced.
    pub fn with(&self, name: &str, value: S) -> Result<Self> {
        let i = Self::index_of(name).ok_or(Error::InvalidIndex(Self::NAMES.len()))?;
        let mut v = self.to_array();
        v[i] = value;
        Ok(Self::from_array(v))
    }

    /// Vertical components of `[X, Y]`, forced by the Jacobi identity.
    pub fn theta(&self) -> [S; 6] {
        let h = S::half();
        let p = self;
        let m = |a: &S, b: &S| a.clone() * b.clone();
        [
            h.clone() * (-m(&p.rho, &p.c12) + m(&p.b11, &p.c21) - m(&p.b21, &p.c11)),
            h.clone() * (m(&p.rho, &p.c11) + m(&p.b11, &p.c22) - m(&p.b21, &p.c12)),
            h.clone() * (-m(&p.rho, &p.b11) + m(&p.c11, &p.c22) - m(&p.c12, &p.c21)),
            h.clone() * (-m(&p.rho, &p.t15) + m(&p.s14, &p.t24) - m(&p.s24, &p.t14)),
            h.clone() * (m(&p.rho, &p.t14) + m(&p.s14, &p.t25) - m(&p.s24, &p.t15)),
            h * (-m(&p.rho, &p.s14) + m(&p.t14, &p.t25) - m(&p.t15, &p.t24)),
        ]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> G8Parameters<T> {
        G8Parameters::from_array(self.to_array().each_ref().map(f))
    }
}

/// The family member with the given coefficients.
pub fn build_g8<S: Scalar>(p: &G8Parameters<S>) -> LieAlgebra<S> {
    let l = build_g8_with_theta(p, &p.theta());
    debug_assert!(!S::EXACT || l.check_jacobi(Tolerance::DEFAULT).is_empty());
    l
}

/// Same brackets but with the vertical part of `[X, Y]` replaced by
/// `theta`. Jacobi generally fails unless `theta == p.theta()`; this is used
/// to study `psi` as a function of `theta` alone.
pub fn build_g8_with_theta<S: Scalar>(p: &G8Parameters<S>, theta: &[S; 6]) -> LieAlgebra<S> {
    use basis::*;
    let mut l = LieAlgebra::orthonormal(basis::NAMES.iter().map(|s| s.to_string()).collect());
    l.install_su2(A);
    l.install_su2(R);
    let neg = |v: &S| -v.clone();

    let left = [
        (A, X, [(B, neg(&p.b11)), (C, neg(&p.c11))]),
        (A, Y, [(B, neg(&p.b21)), (C, neg(&p.c21))]),
        (B, X, [(A, p.b11.clone()), (C, neg(&p.c12))]),
        (B, Y, [(A, p.b21.clone()), (C, neg(&p.c22))]),
        (C, X, [(A, p.c11.clone()), (B, p.c12.clone())]),
        (C, Y, [(A, p.c21.clone()), (B, p.c22.clone())]),
        (R, X, [(S, neg(&p.s14)), (T, neg(&p.t14))]),
        (R, Y, [(S, neg(&p.s24)), (T, neg(&p.t24))]),
        (S, X, [(R, p.s14.clone()), (T, neg(&p.t15))]),
        (S, Y, [(R, p.s24.clone()), (T, neg(&p.t25))]),
        (T, X, [(R, p.t14.clone()), (S, p.t15.clone())]),
        (T, Y, [(R, p.t24.clone()), (S, p.t25.clone())]),
    ];
    for (u, v, terms) in left {
        l.set_bracket_terms(u, v, &terms);
    }
    let mut xy: Vec<(usize, S)> = theta.iter().cloned().enumerate().collect();
    xy.push((X, p.rho.clone()));
    l.set_bracket_terms(X, Y, &xy);
    l
}

/// Parameters of the integrable structures on `su(2) + su(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagninParams<S> {
    xi: S,
    eta: S,
    s1: SpherePoint<S>,
    s2: SpherePoint<S>,
}

impl<S: Scalar> MagninParams<S> {
    pub fn new(xi: S, eta: S, s1: SpherePoint<S>, s2: SpherePoint<S>, tol: Tolerance) -> Result<Self> {
        if eta.is_negligible(tol) {
            return Err(Error::ZeroEta);
        }
        Ok(MagninParams { xi, eta, s1, s2 })
    }

    pub fn xi(&self) -> &S {
        &self.xi
    }

    pub fn eta(&self) -> &S {
        &self.eta
    }

    pub fn spheres(&self) -> (&SpherePoint<S>, &SpherePoint<S>) {
        (&self.s1, &self.s2)
    }
}

/// The 6x6 vertical structure, written out entrywise.
pub fn magnin_jv<S: Scalar>(m: &MagninParams<S>) -> Matrix<S> {
    let (xi, eta) = (m.xi.clone(), m.eta.clone());
    let (l1, m1, n1) = (m.s1.lambda.clone(), m.s1.mu.clone(), m.s1.nu.clone());
    let (l2, m2, n2) = (m.s2.lambda.clone(), m.s2.mu.clone(), m.s2.nu.clone());
    let f = (xi.square() + S::one()) / eta.clone();
    let rows = vec![
        vec![
            l1.square() * xi.clone(),
            -l1.clone() * m1.clone() * xi.clone() + n1.clone(),
            l1.clone() * n1.clone() * xi.clone() + m1.clone(),
            eta.clone() * l1.clone() * l2.clone(),
            -eta.clone() * l1.clone() * m2.clone(),
            eta.clone() * l1.clone() * n2.clone(),
        ],
        vec![
            -l1.clone() * m1.clone() * xi.clone() - n1.clone(),
            m1.square() * xi.clone(),
            l1.clone() - m1.clone() * n1.clone() * xi.clone(),
            -eta.clone() * m1.clone() * l2.clone(),
            eta.clone() * m1.clone() * m2.clone(),
            -eta.clone() * m1.clone() * n2.clone(),
        ],
        vec![
            l1.clone() * n1.clone() * xi.clone() - m1.clone(),
            -l1.clone() - m1.clone() * n1.clone() * xi.clone(),
            n1.square() * xi.clone(),
            eta.clone() * n1.clone() * l2.clone(),
            -eta.clone() * n1.clone() * m2.clone(),
            eta * n1.clone() * n2.clone(),
        ],
        vec![
            -f.clone() * l1.clone() * l2.clone(),
            f.clone() * m1.clone() * l2.clone(),
            -f.clone() * n1.clone() * l2.clone(),
            -l2.square() * xi.clone(),
            l2.clone() * m2.clone() * xi.clone() + n2.clone(),
            -l2.clone() * n2.clone() * xi.clone() + m2.clone(),
        ],
        vec![
            f.clone() * l1.clone() * m2.clone(),
            -f.clone() * m1.clone() * m2.clone(),
            f.clone() * n1.clone() * m2.clone(),
            l2.clone() * m2.clone() * xi.clone() - n2.clone(),
            -m2.square() * xi.clone(),
            l2.clone() + m2.clone() * n2.clone() * xi.clone(),
        ],
        vec![
            -f.clone() * l1.clone() * n2.clone(),
            f.clone() * m1 * n2.clone(),
            -f * n1 * n2.clone(),
            -l2.clone() * n2.clone() * xi.clone() - m2.clone(),
            -l2 + m2 * n2.clone() * xi.clone(),
            -n2.square() * xi,
        ],
    ];
    Matrix::from_rows(rows).expect("6x6")
}

/// The normal form of the vertical structure in rotated coordinates.
pub fn canonical_block<S: Scalar>(xi: &S, eta: &S, tol: Tolerance) -> Result<Matrix<S>> {
    if eta.is_negligible(tol) {
        return Err(Error::ZeroEta);
    }
    let mut m = Matrix::zeros(6, 6);
    m[(0, 1)] = S::one();
    m[(1, 0)] = -S::one();
    m[(2, 2)] = xi.clone();
    m[(2, 5)] = eta.clone();
    m[(3, 4)] = S::one();
    m[(4, 3)] = -S::one();
    m[(5, 2)] = -(S::one() + xi.square()) / eta.clone();
    m[(5, 5)] = -xi.clone();
    Ok(m)
}

/// A unit quaternion stored as `sqrt(scale_sq) * (x, y, z, w)` so that Hopf
/// lifts of rational sphere points stay exact: every map used here is
/// quadratic in the coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion<S> {
    pub x: S,
    pub y: S,
    pub z: S,
    pub w: S,
    pub scale_sq: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn identity() -> Self {
        Quaternion {
            x: S::one(),
            y: S::zero(),
            z: S::zero(),
            w: S::zero(),
            scale_sq: S::one(),
        }
    }

    pub fn norm_sq(&self) -> S {
        self.scale_sq.clone()
            * (self.x.square() + self.y.square() + self.z.square() + self.w.square())
    }

    /// The actual coordinates in floating point.
    pub fn to_f64(&self) -> [f64; 4] {
        let s = libm::sqrt(self.scale_sq.magnitude());
        [&self.x, &self.y, &self.z, &self.w].map(|c| {
            let sign = if c.signum_tol(Tolerance(0.0)) < 0 { -1.0 } else { 1.0 };
            sign * c.magnitude() * s
        })
    }
}

/// `p(x, y, z, w) = (2(wy - xz), 2(wx + yz), 2x^2 + 2y^2 - 1)`.
pub fn hopf_projection<S: Scalar>(q: &Quaternion<S>) -> SpherePoint<S> {
    let two = S::from_i64(2);
    let r = q.scale_sq.clone();
    let (x, y, z, w) = (q.x.clone(), q.y.clone(), q.z.clone(), q.w.clone());
    SpherePoint {
        lambda: two.clone() * r.clone() * (w.clone() * y.clone() - x.clone() * z.clone()),
        mu: two.clone() * r.clone() * (w * x.clone() + y.clone() * z),
        nu: two * r * (x.square() + y.square()) - S::one(),
    }
}

/// A point of the Hopf fibre over `s`. The phase is fixed by the chart: with
/// `nu >= 0` the lift has `y = 0`, otherwise `z = 0`; then the overall sign
/// makes the first nonzero coordinate positive.
pub fn hopf_lift<S: Scalar>(s: &SpherePoint<S>, tol: Tolerance) -> Quaternion<S> {
    let two = S::from_i64(2);
    let mut q = if s.nu.signum_tol(tol) >= 0 {
        let h = (S::one() + s.nu.clone()) / two.clone();
        let d = two * h.clone();
        Quaternion {
            x: S::one(),
            y: S::zero(),
            z: -s.lambda.clone() / d.clone(),
            w: s.mu.clone() / d,
            scale_sq: h,
        }
    } else {
        let k = (S::one() - s.nu.clone()) / two.clone();
        let d = two * k.clone();
        Quaternion {
            x: s.mu.clone() / d.clone(),
            y: s.lambda.clone() / d,
            z: S::zero(),
            w: S::one(),
            scale_sq: k,
        }
    };
    let first = [&q.x, &q.y, &q.z, &q.w]
        .into_iter()
        .map(|c| c.signum_tol(tol))
        .find(|&s| s != 0)
        .unwrap_or(1);
    if first < 0 {
        q.x = -q.x;
        q.y = -q.y;
        q.z = -q.z;
        q.w = -q.w;
    }
    q
}

/// The rotation attached to a unit quaternion by the double cover.
pub fn so3_from_quaternion<S: Scalar>(q: &Quaternion<S>) -> Matrix<S> {
    let two = S::from_i64(2);
    let (x, y, z, w) = (q.x.clone(), q.y.clone(), q.z.clone(), q.w.clone());
    let m = |a: &S, b: &S| a.clone() * b.clone();
    let rows = vec![
        vec![
            m(&x, &x) - m(&y, &y) - m(&z, &z) + m(&w, &w),
            -two.clone() * (m(&x, &y) + m(&z, &w)),
            two.clone() * (m(&w, &y) - m(&x, &z)),
        ],
        vec![
            two.clone() * (m(&x, &y) - m(&w, &z)),
            m(&x, &x) - m(&y, &y) + m(&z, &z) - m(&w, &w),
            -two.clone() * (m(&w, &x) + m(&y, &z)),
        ],
        vec![
            two.clone() * (m(&w, &y) + m(&x, &z)),
            two * (m(&w, &x) - m(&y, &z)),
            m(&x, &x) + m(&y, &y) - m(&z, &z) - m(&w, &w),
        ],
    ];
    Matrix::from_rows(rows).expect("3x3").scale(&q.scale_sq)
}

/// `Phi Psi(xi, eta) Phi^T` with `Phi = diag(M(q1), M(q2))` built from Hopf
/// lifts of the two sphere points.
pub fn factorized_jv<S: Scalar>(m: &MagninParams<S>, tol: Tolerance) -> Matrix<S> {
    let phi = Matrix::block_diag(
        &so3_from_quaternion(&hopf_lift(&m.s1, tol)),
        &so3_from_quaternion(&hopf_lift(&m.s2, tol)),
    );
    let psi = canonical_block(&m.xi, &m.eta, tol).expect("eta checked by MagninParams");
    &(&phi * &psi) * &phi.transpose()
}

/// Sign of `eta` for the structures that are isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaSign {
    Plus,
    Minus,
}

impl EtaSign {
    pub fn value<S: Scalar>(self) -> S {
        match self {
            EtaSign::Plus => S::one(),
            EtaSign::Minus => -S::one(),
        }
    }
}

/// The orthogonal adapted structure: the vertical block at `xi = 0`,
/// `eta = +-1`, and `J X = Y` horizontally.
pub fn adapted_j8<S: Scalar>(
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
    eta: EtaSign,
) -> AlmostComplexStructure<S> {
    let m = MagninParams {
        xi: S::zero(),
        eta: eta.value(),
        s1: s1.clone(),
        s2: s2.clone(),
    };
    let mut jh = Matrix::zeros(2, 2);
    jh[(0, 1)] = -S::one();
    jh[(1, 0)] = S::one();
    AlmostComplexStructure::from_matrix_unchecked(Matrix::block_diag(&magnin_jv(&m), &jh))
}

/// The eight coefficients left free by integrability.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeCoefficients<S> {
    pub b21: S,
    pub c12: S,
    pub c21: S,
    pub c22: S,
    pub s24: S,
    pub t15: S,
    pub t24: S,
    pub t25: S,
}

impl<S: Scalar> FreeCoefficients<S> {
    pub const NAMES: [&'static str; 8] = ["b21", "c12", "c21", "c22", "s24", "t15", "t24", "t25"];

    pub fn zero() -> Self {
        Self::from_array(core::array::from_fn(|_| S::zero()))
    }

    pub fn from_array(v: [S; 8]) -> Self {
        let [b21, c12, c21, c22, s24, t15, t24, t25] = v;
        FreeCoefficients {
            b21,
            c12,
            c21,
            c22,
            s24,
            t15,
            t24,
            t25,
        }
    }
}

/// Names of the coefficients fixed by [`integrability_relations`].
pub const DEPENDENT_COEFFICIENTS: [&str; 4] = ["c11", "b11", "t14", "s14"];

/// Solves the integrability conditions for the adapted structure with
/// `eta = +1`: `c11, b11` (resp. `t14, s14`) are determined by the free
/// coefficients and the first (resp. second) sphere point. Needs
/// `lambda_1, lambda_2 != 0`.
pub fn integrability_relations<S: Scalar>(
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
    free: &FreeCoefficients<S>,
    rho: S,
    tol: Tolerance,
) -> Result<G8Parameters<S>> {
    let (c11, b11) = dependent_pair(s1, [&free.b21, &free.c12, &free.c21, &free.c22], 1, tol)?;
    let (t14, s14) = dependent_pair(s2, [&free.s24, &free.t15, &free.t24, &free.t25], 2, tol)?;
    Ok(G8Parameters {
        b11,
        b21: free.b21.clone(),
        c11,
        c12: free.c12.clone(),
        c21: free.c21.clone(),
        c22: free.c22.clone(),
        s14,
        s24: free.s24.clone(),
        t14,
        t15: free.t15.clone(),
        t24: free.t24.clone(),
        t25: free.t25.clone(),
        rho,
    })
}

/// For one factor, with free `(b, c, d, e) = (b21, c12, c21, c22)`:
/// `c11 = ((l^2 + m^2) b + m c - m n d) / l - n e` and
/// `b11 = (m n b + n c - (l^2 + n^2) d) / l + m e`.
fn dependent_pair<S: Scalar>(
    s: &SpherePoint<S>,
    [b, c, d, e]: [&S; 4],
    which: u8,
    tol: Tolerance,
) -> Result<(S, S)> {
    if s.lambda.is_negligible(tol) {
        return Err(Error::UnsupportedChart { which });
    }
    let (l, m, n) = (&s.lambda, &s.mu, &s.nu);
    let mn = m.clone() * n.clone();
    let first = ((l.square() + m.square()) * b.clone() + m.clone() * c.clone()
        - mn.clone() * d.clone())
        / l.clone()
        - n.clone() * e.clone();
    let second = (mn * b.clone() + n.clone() * c.clone() - (l.square() + n.square()) * d.clone())
        / l.clone()
        + m.clone() * e.clone();
    Ok((first, second))
}

/// The 6x6 system of the integrability proof for one factor, with its rank
/// and kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct SMatrixReport<S> {
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub kernel: Vec<Vec<S>>,
}

impl<S> SMatrixReport<S> {
    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }
}

pub fn s_matrix<S: Scalar>(s: &SpherePoint<S>, tol: Tolerance) -> SMatrixReport<S> {
    let (l, m, n) = (s.lambda.clone(), s.mu.clone(), s.nu.clone());
    let o = S::zero;
    let one = S::one;
    let rows = vec![
        vec![o(), n.square() - one(), l.clone(), -m.clone(), m.clone() * n.clone(), l.clone() * n.clone()],
        vec![one() - n.square(), o(), -m.clone() * n.clone(), -l.clone() * n.clone(), l.clone(), -m.clone()],
        vec![-l.clone(), m.clone() * n.clone(), o(), n.clone(), m.square() - one(), l.clone() * m.clone()],
        vec![m.clone(), l.clone() * n.clone(), -n.clone(), o(), l.clone() * m.clone(), l.square() - one()],
        vec![-m.clone() * n.clone(), -l.clone(), one() - m.square(), -l.clone() * m.clone(), o(), n.clone()],
        vec![-l.clone() * n.clone(), m.clone(), -l.clone() * m.clone(), one() - l.square(), -n, o()],
    ];
    let matrix = Matrix::from_rows(rows).expect("6x6");
    let Kernel { rank, basis } = matrix.kernel(tol);
    SMatrixReport {
        matrix,
        rank,
        kernel: basis,
    }
}

/// The semi-Kaehler members for the adapted structure with `eta = +1`:
/// `c12 = -4 l1 / rho`, `c11 = -4 m1 / rho`, `b11 = -4 n1 / rho`,
/// `(c22, c21, b21) = r1 (l1, m1, n1)` and likewise on the second factor.
pub fn semikaehler_solution<S: Scalar>(
    rho: S,
    r1: S,
    r2: S,
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
    tol: Tolerance,
) -> Result<G8Parameters<S>> {
    if rho.is_negligible(tol) {
        return Err(Error::NoSemiKaehlerSolution);
    }
    let k = -S::from_i64(4) / rho.clone();
    Ok(G8Parameters {
        b11: k.clone() * s1.nu.clone(),
        b21: r1.clone() * s1.nu.clone(),
        c11: k.clone() * s1.mu.clone(),
        c12: k.clone() * s1.lambda.clone(),
        c21: r1.clone() * s1.mu.clone(),
        c22: r1 * s1.lambda.clone(),
        s14: k.clone() * s2.nu.clone(),
        s24: r2.clone() * s2.nu.clone(),
        t14: k.clone() * s2.mu.clone(),
        t15: k * s2.lambda.clone(),
        t24: r2.clone() * s2.mu.clone(),
        t25: r2 * s2.lambda.clone(),
        rho,
    })
}

/// `(l1, -m1, n1, l2, -m2, n2)`, the sphere data as it enters the trace
/// covector and `psi`.
pub fn signed_sphere_vector<S: Scalar>(s1: &SpherePoint<S>, s2: &SpherePoint<S>) -> [S; 6] {
    [
        s1.lambda.clone(),
        -s1.mu.clone(),
        s1.nu.clone(),
        s2.lambda.clone(),
        -s2.mu.clone(),
        s2.nu.clone(),
    ]
}

/// Closed form of the trace covector for the adapted structure with
/// `eta = +1`: `t(e_k) = -theta_k + 2 v_k` on the vertical part, zero on
/// `X, Y`, where `v` is [`signed_sphere_vector`].
pub fn tilde_alpha_closed_form<S: Scalar>(
    p: &G8Parameters<S>,
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
) -> [S; 8] {
    let theta = p.theta();
    let v = signed_sphere_vector(s1, s2);
    let two = S::from_i64(2);
    core::array::from_fn(|k| {
        if k < 6 {
            two.clone() * v[k].clone() - theta[k].clone()
        } else {
            S::zero()
        }
    })
}

/// Triples `(j, a, k)`, `j, k` vertical and `a` horizontal, where
/// `N[j][a][k] + N[k][a][j] != 0`.
pub fn check_mixed_antisymmetry<S: Scalar>(
    n: &CovTensor3<S>,
    tol: Tolerance,
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in basis::HORIZONTAL {
        for j in basis::VERTICAL {
            for k in basis::VERTICAL {
                if !(n.get(j, a, k).clone() + n.get(k, a, j).clone()).is_negligible(tol) {
                    out.push((j, a, k));
                }
            }
        }
    }
    out
}

/// Residual of one of the nine linear relations among mixed Nijenhuis
/// components, for one horizontal index.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResidual<S> {
    /// 1-based position in the list of relations.
    pub relation: usize,
    pub horizontal: usize,
    pub residual: S,
}

/// The relations `n(r, c) = s_r w2_c n(P_r) + w1_r s_c n(P_c)` for
/// `r in {A, B, C}`, `c in {R, S, T}`, where `n(j, k) = N[j][a][k]`,
/// `s = (+, -, +)`, `w_i` is the signed sphere point `(l_i, -m_i, n_i)` and
/// `P_r` is the ordered pair complementary to `r` in its factor.
pub fn check_linear_relations<S: Scalar>(
    n: &CovTensor3<S>,
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
) -> Vec<RelationResidual<S>> {
    let v = signed_sphere_vector(s1, s2);
    let (w1, w2) = (&v[..3], &v[3..]);
    let complement = [(1, 2), (0, 2), (0, 1)];
    let sign = |i: usize| if i == 1 { -S::one() } else { S::one() };
    let mut out = Vec::new();
    for a in basis::HORIZONTAL {
        let nn = |j: usize, k: usize| n.get(j, a, k).clone();
        for r in 0..3 {
            for c in 0..3 {
                let (p, q) = complement[r];
                let (u, w) = complement[c];
                let rhs = sign(r) * w2[c].clone() * nn(p, q)
                    + w1[r].clone() * sign(c) * nn(3 + u, 3 + w);
                out.push(RelationResidual {
                    relation: 3 * r + c + 1,
                    horizontal: a,
                    residual: nn(r, 3 + c) - rhs,
                });
            }
        }
    }
    out
}

/// A `psi` coefficient next to its closed form. Indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiCheck<S> {
    pub index: (usize, usize, usize),
    pub computed: S,
    pub expected: S,
}

impl<S: Scalar> PsiCheck<S> {
    pub fn matches(&self, tol: Tolerance) -> bool {
        (self.computed.clone() - self.expected.clone()).is_negligible(tol)
    }

    /// 1-based label such as `psi(2,3,4)`.
    pub fn label(&self) -> String {
        let (a, b, c) = self.index;
        alloc::format!("psi({},{},{})", a + 1, b + 1, c + 1)
    }
}

/// The argument that no member of the family with the adapted structure
/// lies in `W4`, replayed at two sphere points.
#[derive(Debug, Clone, PartialEq)]
pub struct W4ObstructionReport<S> {
    /// `psi(Y, Y, e_k)` for `theta = 0`, `k` vertical.
    pub psi_yy_offset: Vec<S>,
    /// `d psi(Y, Y, e_k) / d theta_m`.
    pub psi_yy_gradient: Matrix<S>,
    /// Largest `|psi(Y, Y, X)|`, `|psi(Y, Y, Y)|` over the probes.
    pub psi_yy_horizontal_max: f64,
    /// Solution of `psi(Y, Y, e_k) = 0`, next to `-v`.
    pub forced_theta: Option<Vec<S>>,
    pub forced_theta_expected: Vec<S>,
    /// `psi(A, A, R..T)` and `psi(R, R, A..C)` at the forced `theta`.
    pub second_stage: Vec<PsiCheck<S>>,
    /// The sphere points left by the second stage: `(+-1, 0, 0)`.
    pub terminal_points: (SpherePoint<S>, SpherePoint<S>),
    /// `psi(B, C, R)` at the terminal points, expected `l1 l2 / 2`.
    pub terminal: PsiCheck<S>,
    pub w4_empty: bool,
}

/// `psi` for the adapted structure (`eta = +1`) at the member whose only
/// nonzero data is `theta`. The components `psi(e_i, ., .)` with `e_i`
/// vertical, and `psi(H, H', .)` with `H, H'` horizontal, agree with those of
/// every member sharing this `theta`; the obstruction only reads those.
pub fn psi_for_theta<S: Scalar>(
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
    theta: &[S; 6],
) -> CovTensor3<S> {
    let l = build_g8_with_theta(&G8Parameters::zero(), theta);
    let j = adapted_j8(s1, s2, EtaSign::Plus);
    let alpha = nabla_omega(&l, &j, Tolerance::DEFAULT).expect("orthonormal basis, matching dims");
    psi_tensor(&alpha, &j).expect("dimension 8")
}

pub fn w4_obstruction_report<S: Scalar>(
    s1: &SpherePoint<S>,
    s2: &SpherePoint<S>,
    tol: Tolerance,
) -> W4ObstructionReport<S> {
    use basis::*;
    let zero_theta: [S; 6] = core::array::from_fn(|_| S::zero());
    let base = psi_for_theta(s1, s2, &zero_theta);
    let psi_yy_offset: Vec<S> = (0..6).map(|k| base.get(Y, Y, k).clone()).collect();
    let mut horizontal_max = base.get(Y, Y, X).magnitude().max(base.get(Y, Y, Y).magnitude());

    // psi is affine in theta: probe each direction once.
    let mut gradient = Matrix::zeros(6, 6);
    for m in 0..6 {
        let mut theta = zero_theta.clone();
        theta[m] = S::one();
        let probe = psi_for_theta(s1, s2, &theta);
        for k in 0..6 {
            gradient[(k, m)] = probe.get(Y, Y, k).clone() - psi_yy_offset[k].clone();
        }
        horizontal_max = horizontal_max
            .max(probe.get(Y, Y, X).magnitude())
            .max(probe.get(Y, Y, Y).magnitude());
    }
    let rhs: Vec<S> = psi_yy_offset.iter().map(|v| -v.clone()).collect();
    let forced_theta = gradient.solve(&rhs, tol);
    let forced_theta_expected: Vec<S> = signed_sphere_vector(s1, s2)
        .iter()
        .map(|v| -v.clone())
        .collect();

    let forced: [S; 6] = core::array::from_fn(|i| forced_theta_expected[i].clone());
    let at_forced = psi_for_theta(s1, s2, &forced);
    let half = S::half();
    let mut second_stage = Vec::new();
    let factor1 = half.clone() * (S::one() - s1.lambda.square());
    let factor2 = half.clone() * (S::one() - s2.lambda.square());
    let w1 = [s1.lambda.clone(), -s1.mu.clone(), s1.nu.clone()];
    let w2 = [s2.lambda.clone(), -s2.mu.clone(), s2.nu.clone()];
    for (c, w) in w2.into_iter().enumerate() {
        second_stage.push(PsiCheck {
            index: (A, A, R + c),
            computed: at_forced.get(A, A, R + c).clone(),
            expected: factor1.clone() * w,
        });
    }
    for (c, w) in w1.into_iter().enumerate() {
        second_stage.push(PsiCheck {
            index: (R, R, A + c),
            computed: at_forced.get(R, R, A + c).clone(),
            expected: factor2.clone() * w,
        });
    }

    // psi(A, A, R..T) = 0 with (l2, m2, n2) != 0 forces l1^2 = 1, and
    // symmetrically for the second factor.
    let pole = |s: &SpherePoint<S>| SpherePoint {
        lambda: if s.lambda.signum_tol(tol) < 0 { -S::one() } else { S::one() },
        mu: S::zero(),
        nu: S::zero(),
    };
    let (t1, t2) = (pole(s1), pole(s2));
    let terminal_theta: [S; 6] = signed_sphere_vector(&t1, &t2).map(|v| -v);
    let terminal_psi = psi_for_theta(&t1, &t2, &terminal_theta);
    let terminal = PsiCheck {
        index: (B, C, R),
        computed: terminal_psi.get(B, C, R).clone(),
        expected: half * t1.lambda.clone() * t2.lambda.clone(),
    };

    let theta_ok = forced_theta.as_ref().is_some_and(|f| {
        f.iter()
            .zip(&forced_theta_expected)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol))
    });
    let w4_empty = theta_ok
        && horizontal_max <= tol.value().max(0.0)
        && second_stage.iter().all(|c| c.matches(tol))
        && terminal.matches(tol)
        && !terminal.computed.is_negligible(tol);

    W4ObstructionReport {
        psi_yy_offset,
        psi_yy_gradient: gradient,
        psi_yy_horizontal_max: horizontal_max,
        forced_theta,
        forced_theta_expected,
        second_stage,
        terminal_points: (t1, t2),
        terminal,
        w4_empty,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{check_compatibility, is_compatible, nijenhuis};
    use crate::scalar::{q, Rational};
    use num_traits::Zero;

    type Q = Rational;
    const TOL: Tolerance = Tolerance::DEFAULT;

    fn sp(l: Q, m: Q, n: Q) -> SpherePoint<Q> {
        SpherePoint::new(l, m, n, TOL).unwrap()
    }

    fn x_axis() -> SpherePoint<Q> {
        sp(q(1, 1), q(0, 1), q(0, 1))
    }

    #[test]
    fn zero_parameters_give_su2_sum_plus_abelian() {
        let l = build_g8(&G8Parameters::<Q>::zero());
        assert!(l.basis_bracket(basis::X, basis::Y).iter().all(Zero::is_zero));
        assert_eq!(l.structure_constant(basis::A, basis::B, basis::C), &q(2, 1));
        assert!(l.check_jacobi(TOL).is_empty());
    }

    #[test]
    fn theta_example() {
        let p = G8Parameters::<Q>::zero()
            .with("rho", q(2, 1))
            .unwrap()
            .with("c12", q(1, 1))
            .unwrap();
        let th = p.theta();
        assert_eq!(th[0], q(-1, 1));
        assert_eq!(th[3], q(0, 1));
        let l = build_g8(&p);
        assert_eq!(l.structure_constant(basis::X, basis::Y, basis::A), &q(-1, 1));
        assert_eq!(l.structure_constant(basis::X, basis::Y, basis::X), &q(2, 1));
    }

    #[test]
    fn generic_parameters_satisfy_jacobi() {
        let p = G8Parameters::from_array(core::array::from_fn(|i| q(i as i64 * 3 - 17, i as i64 + 2)));
        assert!(build_g8(&p).check_jacobi(TOL).is_empty());
    }

    #[test]
    fn magnin_at_poles_has_unit_entries() {
        let pole = SpherePoint::<Q>::pole();
        let m = MagninParams::new(q(0, 1), q(1, 1), pole.clone(), pole, TOL).unwrap();
        let j = magnin_jv(&m);
        assert!(j.entries().iter().all(|v| v.is_zero() || *v == q(1, 1) || *v == q(-1, 1)));
        assert!((&j * &j).add(&Matrix::identity(6)).is_zero(TOL));
    }

    #[test]
    fn zero_eta_is_rejected() {
        let pole = SpherePoint::<Q>::pole();
        assert_eq!(
            MagninParams::new(q(1, 1), q(0, 1), pole.clone(), pole, TOL),
            Err(Error::ZeroEta)
        );
        assert_eq!(canonical_block(&q(0, 1), &q(0, 1), TOL), Err(Error::ZeroEta));
    }

    #[test]
    fn hopf_lift_projects_back_in_both_charts() {
        for s in [
            SpherePoint::pole(),
            sp(q(0, 1), q(0, 1), q(-1, 1)),
            sp(q(3, 5), q(0, 1), q(4, 5)),
            sp(q(2, 3), q(-2, 3), q(-1, 3)),
        ] {
            let l = hopf_lift(&s, TOL);
            assert_eq!(l.norm_sq(), q(1, 1));
            assert_eq!(hopf_projection(&l), s);
            let m = so3_from_quaternion(&l);
            assert!((&m.transpose() * &m).is_identity(TOL));
        }
    }

    #[test]
    fn identity_quaternion_gives_identity_rotation() {
        assert!(so3_from_quaternion(&Quaternion::<Q>::identity()).is_identity(TOL));
    }

    #[test]
    fn factorization_matches_entrywise() {
        let m = MagninParams::new(
            q(2, 7),
            q(-3, 2),
            sp(q(2, 3), q(2, 3), q(1, 3)),
            sp(q(-3, 5), q(0, 1), q(-4, 5)),
            TOL,
        )
        .unwrap();
        assert_eq!(factorized_jv(&m, TOL), magnin_jv(&m));
    }

    #[test]
    fn canonical_block_orthogonal_only_at_zero_xi() {
        let id = Matrix::<Q>::identity(6);
        assert!(is_compatible(&id, &canonical_block(&q(0, 1), &q(1, 1), TOL).unwrap(), TOL));
        assert!(is_compatible(&id, &canonical_block(&q(0, 1), &q(-1, 1), TOL).unwrap(), TOL));
        assert!(!is_compatible(&id, &canonical_block(&q(1, 1), &q(1, 1), TOL).unwrap(), TOL));
        assert!(!is_compatible(&id, &canonical_block(&q(0, 1), &q(2, 1), TOL).unwrap(), TOL));
    }

    #[test]
    fn adapted_structure_on_x_axis() {
        let j = adapted_j8(&x_axis(), &x_axis(), EtaSign::Plus);
        let m = j.matrix();
        assert_eq!(m[(0, 3)], q(1, 1));
        assert_eq!(m[(1, 2)], q(1, 1));
        assert_eq!(m[(3, 0)], q(-1, 1));
        assert_eq!(m[(7, 6)], q(1, 1));
        assert_eq!(m[(6, 7)], q(-1, 1));
        for eta in [EtaSign::Plus, EtaSign::Minus] {
            let j = adapted_j8(&x_axis(), &sp(q(3, 5), q(4, 5), q(0, 1)), eta);
            assert!(check_compatibility(&build_g8(&G8Parameters::zero()), &j, TOL).unwrap());
        }
    }

    #[test]
    fn integrability_example() {
        let s1 = sp(q(3, 5), q(0, 1), q(4, 5));
        let mut free = FreeCoefficients::<Q>::zero();
        free.b21 = q(1, 1);
        let p = integrability_relations(&s1, &x_axis(), &free, q(0, 1), TOL).unwrap();
        assert_eq!(p.c11, q(3, 5));
        assert_eq!(p.b11, q(0, 1));
        let n = nijenhuis(&build_g8(&p), &adapted_j8(&s1, &x_axis(), EtaSign::Plus)).unwrap();
        assert!(n.is_zero(TOL));
    }

    #[test]
    fn zero_free_coefficients_give_zero_dependents() {
        let p = integrability_relations(&x_axis(), &x_axis(), &FreeCoefficients::zero(), q(5, 1), TOL)
            .unwrap();
        assert!(p.to_array()[..12].iter().all(Zero::is_zero));
    }

    #[test]
    fn unsupported_chart() {
        let pole = SpherePoint::<Q>::pole();
        assert_eq!(
            integrability_relations(&x_axis(), &pole, &FreeCoefficients::zero(), q(0, 1), TOL),
            Err(Error::UnsupportedChart { which: 2 })
        );
    }

    #[test]
    fn s_matrix_rank_two() {
        for s in [sp(q(3, 5), q(0, 1), q(4, 5)), x_axis()] {
            let r = s_matrix(&s, TOL);
            assert_eq!((r.rank, r.nullity()), (2, 4));
            for v in &r.kernel {
                assert!(r.matrix.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn semikaehler_example() {
        let p = semikaehler_solution(q(2, 1), q(0, 1), q(0, 1), &x_axis(), &x_axis(), TOL).unwrap();
        assert_eq!((p.c12.clone(), p.t15.clone()), (q(-2, 1), q(-2, 1)));
        assert!(p.c11.is_zero() && p.b11.is_zero());
        let t = tilde_alpha_closed_form(&p, &x_axis(), &x_axis());
        assert!(t.iter().all(Zero::is_zero));
        assert!(p.theta().iter().any(|v| !v.is_zero()));
        assert_eq!(
            semikaehler_solution(q(0, 1), q(1, 1), q(1, 1), &x_axis(), &x_axis(), TOL),
            Err(Error::NoSemiKaehlerSolution)
        );
    }

    #[test]
    fn obstruction_at_x_axis() {
        let r = w4_obstruction_report(&x_axis(), &x_axis(), TOL);
        assert_eq!(r.terminal.computed, q(1, 2));
        assert_eq!(r.forced_theta.as_deref(), Some(&r.forced_theta_expected[..]));
        assert!(r.w4_empty);
    }

    #[test]
    fn linear_solver_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![q(0, 1), q(2, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(0, 1), q(1, 2)],
        ])
        .unwrap();
        let x = vec![q(1, 1), q(-2, 3), q(5, 4)];
        assert_eq!(m.solve(&m.mul_vec(&x), TOL), Some(x));
        assert_eq!(Matrix::<Q>::zeros(2, 2).solve(&[q(1, 1), q(1, 1)], TOL), None);
    }
}
