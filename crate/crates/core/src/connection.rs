//! Levi-Civita connection of a left-invariant metric and the second
//! fundamental forms of an orthogonal split.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie::{DistributionSplit, LieAlgebra};
use crate::scalar::{max_magnitude, Scalar, Tolerance};

/// `gamma[i][j][k] = g(nabla_{e_i} e_j, e_k)` on an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionCoefficients<S> {
    dim: usize,
    gamma: Vec<S>,
}

impl<S: Scalar> ConnectionCoefficients<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.gamma[(i * self.dim + j) * self.dim + k]
    }

    /// Triples violating `gamma[i][j][k] + gamma[i][k][j] = 0`.
    pub fn metric_violations(&self, tol: Tolerance) -> Vec<(usize, usize, usize)> {
        self.violations(tol, |i, j, k| {
            self.get(i, j, k).clone() + self.get(i, k, j).clone()
        })
    }

    /// Triples violating `gamma[i][j][k] - gamma[j][i][k] = c[i][j][k]`.
    pub fn torsion_violations(
        &self,
        algebra: &LieAlgebra<S>,
        tol: Tolerance,
    ) -> Vec<(usize, usize, usize)> {
        self.violations(tol, |i, j, k| {
            self.get(i, j, k).clone()
                - self.get(j, i, k).clone()
                - algebra.structure_constant(i, j, k).clone()
        })
    }

    fn violations(
        &self,
        tol: Tolerance,
        residual: impl Fn(usize, usize, usize) -> S,
    ) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !residual(i, j, k).is_negligible(tol) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// `nabla_u v` for coefficient vectors.
    pub fn covariant_derivative(&self, u: &[S], v: &[S]) -> Vec<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if ui.is_zero() || vj.is_zero() {
                    continue;
                }
                let w = ui.clone() * vj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + w.clone() * self.get(i, j, k).clone();
                }
            }
        }
        out
    }
}

/// Koszul formula for left-invariant fields on an orthonormal basis:
/// `gamma[i][j][k] = (c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2`.
pub fn koszul_connection<S: Scalar>(
    algebra: &LieAlgebra<S>,
    tol: Tolerance,
) -> Result<ConnectionCoefficients<S>> {
    if !algebra.has_orthonormal_basis(tol) {
        return Err(Error::NonOrthonormalBasis);
    }
    let n = algebra.dim();
    let half = S::half();
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = algebra.structure_constant(i, j, k).clone()
                    - algebra.structure_constant(j, k, i).clone()
                    + algebra.structure_constant(k, i, j).clone();
                gamma.push(half.clone() * s);
            }
        }
    }
    Ok(ConnectionCoefficients { dim: n, gamma })
}

/// A symmetric form on one distribution valued in another:
/// `value(a, b, c)` is the `target[c]` component of `B(e_source[a], e_source[b])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitForm<S> {
    source: Vec<usize>,
    target: Vec<usize>,
    values: Vec<S>,
}

impl<S: Scalar> SplitForm<S> {
    fn build(gamma: &ConnectionCoefficients<S>, source: &[usize], target: &[usize]) -> Self {
        let half = S::half();
        let mut values = Vec::with_capacity(source.len() * source.len() * target.len());
        for &i in source {
            for &j in source {
                for &k in target {
                    values.push(
                        half.clone() * (gamma.get(i, j, k).clone() + gamma.get(j, i, k).clone()),
                    );
                }
            }
        }
        SplitForm {
            source: source.to_vec(),
            target: target.to_vec(),
            values,
        }
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    /// Local indices: `a, b` into `source`, `c` into `target`.
    pub fn value(&self, a: usize, b: usize, c: usize) -> &S {
        let (s, t) = (self.source.len(), self.target.len());
        &self.values[(a * s + b) * t + c]
    }

    /// `B(e_source[a], e_source[b])` as components along `target`.
    pub fn pair(&self, a: usize, b: usize) -> &[S] {
        let (s, t) = (self.source.len(), self.target.len());
        let o = (a * s + b) * t;
        &self.values[o..o + t]
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.values.iter().all(|v| v.is_negligible(tol))
    }

    pub fn is_symmetric(&self, tol: Tolerance) -> bool {
        let s = self.source.len();
        (0..s).all(|a| {
            (0..s).all(|b| {
                self.pair(a, b)
                    .iter()
                    .zip(self.pair(b, a))
                    .all(|(x, y)| (x.clone() - y.clone()).is_negligible(tol))
            })
        })
    }

    pub fn max_abs(&self) -> f64 {
        max_magnitude(&self.values)
    }

    /// Sum of `B(e_a, e_a)` over the source, embedded in the full basis.
    pub fn trace(&self, dim: usize) -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for a in 0..self.source.len() {
            for (c, &k) in self.target.iter().enumerate() {
                out[k] = out[k].clone() + self.value(a, a, c).clone();
            }
        }
        out
    }
}

/// `(B_V, B_H)` for the split. `B_V` lives on the vertical part with
/// horizontal values, `B_H` the other way round.
pub fn second_fundamental_forms<S: Scalar>(
    algebra: &LieAlgebra<S>,
    split: &DistributionSplit,
    tol: Tolerance,
) -> Result<(SplitForm<S>, SplitForm<S>)> {
    check_split(algebra, split)?;
    let gamma = koszul_connection(algebra, tol)?;
    Ok((
        SplitForm::build(&gamma, split.vertical(), split.horizontal()),
        SplitForm::build(&gamma, split.horizontal(), split.vertical()),
    ))
}

fn check_split<S: Scalar>(algebra: &LieAlgebra<S>, split: &DistributionSplit) -> Result<()> {
    if split.dim() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: split.dim(),
        });
    }
    Ok(())
}

/// Verdicts for the foliation tangent to the vertical distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliationReport<S> {
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub conformal: bool,
    pub riemannian: bool,
    /// `(1/dim V) * trace B_V`, a horizontal vector in full coordinates.
    pub mean_curvature: Vec<S>,
    /// The vertical `V` with `B_H(e_j, e_k) = g(e_j, e_k) V`, when it exists.
    pub conformal_witness: Option<Vec<S>>,
    pub vertical_form_max: f64,
    pub horizontal_form_max: f64,
}

/// Classifies the foliation of the vertical distribution at the identity.
/// The vertical span must be a subalgebra.
pub fn classify_foliation<S: Scalar>(
    algebra: &LieAlgebra<S>,
    split: &DistributionSplit,
    tol: Tolerance,
) -> Result<FoliationReport<S>> {
    check_split(algebra, split)?;
    if let Some((left, right)) = algebra.closure_violation(split.vertical(), tol) {
        return Err(Error::NonInvolutive { left, right });
    }
    let (bv, bh) = second_fundamental_forms(algebra, split, tol)?;
    let n = algebra.dim();

    let trace = bv.trace(n);
    let minimal = trace.iter().all(|v| v.is_negligible(tol));
    let mean_curvature = if split.vertical().is_empty() {
        trace
    } else {
        let m = S::from_i64(split.vertical().len() as i64);
        trace.into_iter().map(|v| v / m.clone()).collect()
    };

    let conformal_witness = conformal_witness(&bh, n, tol);
    Ok(FoliationReport {
        minimal,
        totally_geodesic: bv.is_zero(tol),
        conformal: conformal_witness.is_some(),
        riemannian: bh.is_zero(tol),
        mean_curvature,
        conformal_witness,
        vertical_form_max: bv.max_abs(),
        horizontal_form_max: bh.max_abs(),
    })
}

/// Best candidate `V` is the mean of the diagonal `B_H(e_j, e_j)`, which is
/// the least squares solution of `B_H(e_j, e_k) = delta_jk V`; it is
/// accepted when every equation holds within `tol`.
fn conformal_witness<S: Scalar>(bh: &SplitForm<S>, dim: usize, tol: Tolerance) -> Option<Vec<S>> {
    let h = bh.source().len();
    let t = bh.target().len();
    let mut v = vec![S::zero(); t];
    if h > 0 {
        let count = S::from_i64(h as i64);
        for a in 0..h {
            for (c, x) in v.iter_mut().enumerate() {
                *x = x.clone() + bh.value(a, a, c).clone();
            }
        }
        for x in v.iter_mut() {
            *x = x.clone() / count.clone();
        }
    }
    for a in 0..h {
        for b in 0..h {
            for (c, vc) in v.iter().enumerate() {
                let expected = if a == b { vc.clone() } else { S::zero() };
                if !(bh.value(a, b, c).clone() - expected).is_negligible(tol) {
                    return None;
                }
            }
        }
    }
    let mut full = vec![S::zero(); dim];
    for (c, &k) in bh.target().iter().enumerate() {
        full[k] = v[c].clone();
    }
    Some(full)
}
