//! Dense real matrices, eigenpairs and the problem file format.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default residual tolerance for accepting an eigenpair.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A dense `n x n` real matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        if data.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::Parse(format!("entry ({}, {}) is not finite", pos / n + 1, pos % n + 1)));
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a list of rows. Ragged rows are a parse error,
    /// a rectangular non-square shape is a dimension error.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let width = rows[0].as_ref().len();
        if width == 0 {
            return Err(Error::Parse("empty row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.as_ref().len() != width {
                return Err(Error::Parse(format!(
                    "ragged rows: row 1 has {width} entries, row {} has {}",
                    i + 1,
                    row.as_ref().len()
                )));
            }
        }
        if width != rows.len() {
            return Err(Error::Dimension(format!("matrix is {}x{width}, not square", rows.len())));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), data)
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    /// Entries of column `j` with the diagonal entry removed.
    pub fn column_off_diagonal(&self, j: usize) -> Vec<f64> {
        (0..self.n).filter(|&i| i != j).map(|i| self[(i, j)]).collect()
    }

    /// Entries of row `i` with the diagonal entry removed.
    pub fn row_off_diagonal(&self, i: usize) -> Vec<f64> {
        (0..self.n).filter(|&j| j != i).map(|j| self[(i, j)]).collect()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(rhs.row(k)) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, x.len(), "matvec dimension mismatch");
        (0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Largest absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Returns the common row sum if every row sum agrees with the first
    /// within `1e-9 * (1 + |first|)`.
    pub fn constant_row_sum(&self) -> Result<f64> {
        let sums = self.row_sums();
        let first = sums[0];
        let (lo, hi) =
            sums.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| (lo.min(s), hi.max(s)));
        let tol = 1e-9 * (1.0 + first.abs());
        let spread = hi - lo;
        if spread > tol {
            return Err(Error::NotConstantRowSum { spread, tol });
        }
        Ok(first)
    }

    /// Whitespace-separated text form, one row per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        RealMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// A known real eigenpair `(lambda, v)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenpair {
    pub lambda: f64,
    pub v: Vec<f64>,
}

impl Eigenpair {
    pub fn new(lambda: f64, v: Vec<f64>) -> Result<Self> {
        if !lambda.is_finite() || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse("eigenpair contains a non-finite value".into()));
        }
        if v.is_empty() || v.iter().all(|&x| x == 0.0) {
            return Err(Error::AllZero);
        }
        Ok(Self { lambda, v })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }
}

/// A point of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Distance to a point on the real axis.
    pub fn dist_real(self, c: f64) -> f64 {
        (self.re - c).hypot(self.im)
    }

    pub fn dist(self, other: ComplexPoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{:.6}{}{:.6}i", self.re, sign, self.im.abs())
    }
}

/// A matrix with an optional known eigenpair; the JSON problem file.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub matrix: RealMatrix,
    pub eigenpair: Option<Eigenpair>,
}

#[derive(Serialize, Deserialize)]
struct ProblemFile {
    matrix: RealMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvector: Option<Vec<f64>>,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| classify_json_error(&e.to_string()))?;
        let eigenpair = match (file.eigenvalue, file.eigenvector) {
            (Some(lambda), Some(v)) => {
                let pair = Eigenpair::new(lambda, v)?;
                if pair.n() != file.matrix.n() {
                    return Err(Error::Dimension(format!(
                        "eigenvector has {} components, matrix is {}x{}",
                        pair.n(),
                        file.matrix.n(),
                        file.matrix.n()
                    )));
                }
                Some(pair)
            }
            (None, None) => None,
            _ => {
                return Err(Error::Parse("\"eigenvalue\" and \"eigenvector\" must be given together".into()))
            }
        };
        Ok(Self { matrix: file.matrix, eigenpair })
    }

    pub fn to_json(&self) -> String {
        let file = ProblemFile {
            matrix: self.matrix.clone(),
            eigenvalue: self.eigenpair.as_ref().map(|p| p.lambda),
            eigenvector: self.eigenpair.as_ref().map(|p| p.v.clone()),
        };
        serde_json::to_string(&file).expect("problem serialization cannot fail")
    }
}

// serde surfaces our own custom errors as strings; keep the dimension/parse
// distinction when the matrix itself was rejected.
fn classify_json_error(msg: &str) -> Error {
    if msg.starts_with("dimension error") {
        Error::Dimension(msg.to_string())
    } else {
        Error::Parse(msg.to_string())
    }
}

/// Parses a matrix from whitespace-separated rows or from the JSON problem
/// format (only the matrix is kept).
pub fn parse_matrix(text: &str) -> Result<RealMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return Problem::from_json(trimmed).map(|p| p.matrix);
    }
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: malformed number {tok:?}", lineno + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    RealMatrix::from_rows(&rows)
}

/// Scale-aware residual `max_i |(Av - lambda v)_i| / (1 + max_i |v_i|)`.
///
/// The pair is valid when the returned residual is at most `tol`.
pub fn check_eigenpair(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<f64> {
    if a.n() != p.n() {
        return Err(Error::Dimension(format!(
            "eigenvector has {} components, matrix is {}x{}",
            p.n(),
            a.n(),
            a.n()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    let av = a.matvec(&p.v);
    let num = av.iter().zip(&p.v).map(|(x, v)| (x - p.lambda * v).abs()).fold(0.0, f64::max);
    let vmax = p.v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(num / (1.0 + vmax))
}

/// Like [`check_eigenpair`] but fails when the residual exceeds `tol`.
pub fn ensure_eigenpair(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<f64> {
    let residual = check_eigenpair(a, p, tol)?;
    if residual > tol {
        return Err(Error::InvalidEigenpair { residual, tol });
    }
    Ok(residual)
}
