//! Classic Gershgorin discs and Gershgorin discs of the second type.
//!
//! A second-type disc is centered at a diagonal entry. Its radius comes from
//! the off-diagonal entries of one row together with an inserted `0`, sorted
//! non-increasingly: the sum of the top half minus the sum of the bottom half
//! (the middle entry is skipped when `n` is odd).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexPoint, Eigenpair, RealMatrix, DEFAULT_TOL};
use crate::similarity::to_row_sum_form;

/// Closed disc `|z - center| <= radius` with a real center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: f64,
    pub radius: f64,
}

impl Disc {
    pub const fn new(center: f64, radius: f64) -> Self {
        Self { center, radius }
    }

    /// `|z - c| - r`; non-positive inside.
    pub fn margin(&self, z: ComplexPoint) -> f64 {
        z.dist_real(self.center) - self.radius
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.margin(z) <= 1e-9 * (1.0 + self.radius)
    }

    /// Largest modulus over the disc.
    pub fn max_abs(&self) -> f64 {
        self.center.abs() + self.radius
    }
}

/// Index-aligned discs, one per row/column of the source matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscUnion {
    pub discs: Vec<Disc>,
}

impl DiscUnion {
    pub fn len(&self) -> usize {
        self.discs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.discs.is_empty()
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.discs.iter().any(|d| d.contains(z))
    }

    pub fn margin(&self, z: ComplexPoint) -> f64 {
        self.discs.iter().map(|d| d.margin(z)).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.discs.iter().map(Disc::max_abs).fold(0.0, f64::max)
    }
}

/// Which lines of the matrix feed the classic radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Columns,
}

/// Top-half sum minus bottom-half sum of `values` sorted non-increasingly.
/// For odd lengths the middle value belongs to neither half.
pub(crate) fn half_spread(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| b.total_cmp(a));
    let n = values.len();
    let half = n / 2;
    let top: f64 = values[..half].iter().sum();
    let bottom: f64 = values[n - half..].iter().sum();
    top - bottom
}

/// Second-type radius from the `n - 1` off-diagonal entries of one line.
/// The mandated `0` is inserted here.
pub fn second_type_radius(off_diagonal: &[f64]) -> Result<f64> {
    if off_diagonal.len() < 2 {
        return Err(Error::Size { n: off_diagonal.len() + 1, min: 3 });
    }
    let mut values = off_diagonal.to_vec();
    values.push(0.0);
    Ok(half_spread(values))
}

/// Second-type discs of `M^T`: disc `i` uses column `i` of `M`.
pub fn second_type_discs_of_transpose(m: &RealMatrix) -> Result<DiscUnion> {
    let n = m.n();
    if n < 3 {
        return Err(Error::Size { n, min: 3 });
    }
    let discs = (0..n)
        .map(|j| second_type_radius(&m.column_off_diagonal(j)).map(|r| Disc::new(m[(j, j)], r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscUnion { discs })
}

/// Classic Gershgorin discs along rows or columns.
pub fn classic_discs(m: &RealMatrix, axis: Axis) -> DiscUnion {
    let discs = (0..m.n())
        .map(|i| {
            let off = match axis {
                Axis::Rows => m.row_off_diagonal(i),
                Axis::Columns => m.column_off_diagonal(i),
            };
            Disc::new(m[(i, i)], off.iter().map(|x| x.abs()).sum())
        })
        .collect();
    DiscUnion { discs }
}

/// Inclusion region for every eigenvalue of `a` other than `p.lambda`: the
/// second-type discs of `B^T` for the constant row-sum form `B`.
pub fn eigenpair_region(a: &RealMatrix, p: &Eigenpair) -> Result<DiscUnion> {
    eigenpair_region_with_tol(a, p, DEFAULT_TOL)
}

pub fn eigenpair_region_with_tol(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<DiscUnion> {
    if a.n() < 3 {
        return Err(Error::Size { n: a.n(), min: 3 });
    }
    let form = to_row_sum_form(a, p, tol)?;
    second_type_discs_of_transpose(&form.similarity.b)
}
