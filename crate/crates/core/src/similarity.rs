//! Similarity transforms that turn a matrix with a known real eigenpair into
//! a constant row-sum matrix with the same spectrum.
//!
//! A zero-free eigenvector `v` gives `B = S^-1 A S` with `S = diag(v)`, so
//! `b_ij = a_ij v_j / v_i` and every row of `B` sums to `lambda`. When `v` has
//! zero components, a stable permutation moves them to the front and a shear
//! with a closed-form inverse fills them in, producing a similar matrix `C`
//! whose eigenvector has no zeros.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ensure_eigenpair, Eigenpair, RealMatrix, DEFAULT_TOL};

/// Components with `|v_i| <= ZERO_REL_TOL * max|v|` are treated as zero.
pub const ZERO_REL_TOL: f64 = 1e-12;

/// Output of [`diag_similar`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityResult {
    /// Constant row-sum matrix similar to the input.
    pub b: RealMatrix,
    pub row_sum: f64,
    /// Diagonal of the scaling matrix (the eigenvector used).
    pub scaling: Vec<f64>,
}

/// Output of [`desingularize`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Desingularization {
    /// `S P A P^T S^-1`.
    pub c: RealMatrix,
    /// Zero-free eigenvector of `c` for the same eigenvalue.
    pub w: Vec<f64>,
    /// `perm[i]` is the original index placed at position `i` (0-based).
    pub perm: Vec<usize>,
    /// Number of zero components of the original eigenvector.
    pub k: usize,
}

/// How the constant row-sum form was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSumForm {
    pub similarity: SimilarityResult,
    /// Present when the eigenvector had zero components.
    pub desingularization: Option<Desingularization>,
}

fn zero_threshold(v: &[f64]) -> f64 {
    ZERO_REL_TOL * v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn zero_mask(v: &[f64]) -> Result<Vec<bool>> {
    let thr = zero_threshold(v);
    if thr == 0.0 {
        return Err(Error::AllZero);
    }
    Ok(v.iter().map(|x| x.abs() <= thr).collect())
}

/// `B = diag(v)^-1 A diag(v)`, validated against [`DEFAULT_TOL`].
pub fn diag_similar(a: &RealMatrix, p: &Eigenpair) -> Result<SimilarityResult> {
    diag_similar_with_tol(a, p, DEFAULT_TOL)
}

pub fn diag_similar_with_tol(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<SimilarityResult> {
    ensure_eigenpair(a, p, tol)?;
    let mask = zero_mask(&p.v)?;
    if let Some(index) = mask.iter().position(|&z| z) {
        return Err(Error::ZeroComponent { index });
    }
    let v = &p.v;
    // Multiply before dividing: exact whenever a_ij v_j is exact and the
    // quotient is representable, which covers integer inputs.
    let b = RealMatrix::from_fn(a.n(), |i, j| a[(i, j)] * v[j] / v[i]);
    Ok(SimilarityResult { b, row_sum: p.lambda, scaling: v.clone() })
}

/// Permutation plus shear for eigenvectors with zero components.
pub fn desingularize(a: &RealMatrix, p: &Eigenpair) -> Result<Desingularization> {
    desingularize_with_tol(a, p, DEFAULT_TOL)
}

pub fn desingularize_with_tol(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<Desingularization> {
    ensure_eigenpair(a, p, tol)?;
    let mask = zero_mask(&p.v)?;
    let n = a.n();
    let k = mask.iter().filter(|&&z| z).count();
    if k == 0 {
        return Err(Error::NoZero);
    }

    let perm: Vec<usize> = (0..n).filter(|&i| mask[i]).chain((0..n).filter(|&i| !mask[i])).collect();

    // P A P^T
    let pap = RealMatrix::from_fn(n, |i, j| a[(perm[i], perm[j])]);

    // S = I + sum_{i<k} e_i e_k^T: rows 0..k gain row k.
    let mut c = pap.clone();
    for i in 0..k {
        for j in 0..n {
            c[(i, j)] = pap[(i, j)] + pap[(k, j)];
        }
    }
    // S^-1 = I - sum_{i<k} e_i e_k^T: column k loses columns 0..k.
    for r in 0..n {
        let s: f64 = (0..k).map(|i| c[(r, i)]).sum();
        c[(r, k)] -= s;
    }

    let pivot = p.v[perm[k]];
    let w: Vec<f64> = (0..n).map(|i| if i < k { pivot } else { p.v[perm[i]] }).collect();

    let out = Desingularization { c, w, perm, k };
    // Cw = lambda w holds by construction; guard against a poorly resolved input.
    let wp = Eigenpair::new(p.lambda, out.w.clone())?;
    ensure_eigenpair(&out.c, &wp, tol)?;
    Ok(out)
}

/// `(1/lambda) diag(v)^-1 A diag(v)` for a nonnegative matrix with a positive
/// eigenvector and positive eigenvalue; the result is row-stochastic.
pub fn normalize_stochastic(a: &RealMatrix, p: &Eigenpair) -> Result<RealMatrix> {
    if a.as_slice().iter().any(|&x| x < 0.0) {
        return Err(Error::NotApplicable("matrix has a negative entry".into()));
    }
    if p.v.iter().any(|&x| x <= 0.0) {
        return Err(Error::NotApplicable("eigenvector must have strictly positive components".into()));
    }
    if p.lambda <= 0.0 {
        return Err(Error::NotApplicable(format!("eigenvalue must be positive, got {}", p.lambda)));
    }
    let sim = diag_similar(a, p)?;
    Ok(sim.b.scale(1.0 / p.lambda))
}

/// Reaches a constant row-sum matrix similar to `a`, desingularizing first
/// when the eigenvector has zero components.
pub fn to_row_sum_form(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<RowSumForm> {
    ensure_eigenpair(a, p, tol)?;
    let mask = zero_mask(&p.v)?;
    if mask.iter().any(|&z| z) {
        let d = desingularize_with_tol(a, p, tol)?;
        let wp = Eigenpair::new(p.lambda, d.w.clone())?;
        let similarity = diag_similar_with_tol(&d.c, &wp, tol)?;
        Ok(RowSumForm { similarity, desingularization: Some(d) })
    } else {
        Ok(RowSumForm { similarity: diag_similar_with_tol(a, p, tol)?, desingularization: None })
    }
}
