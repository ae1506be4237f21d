//! Column-shift refinements of a constant row-sum matrix.
//!
//! Shifting every column of `B` by a constant keeps the row sums constant and,
//! with the shift taken from the order statistics of the column's
//! off-diagonal entries, shrinks the second-type region of the transpose.

use serde::Serialize;

use crate::discs::{second_type_discs_of_transpose, second_type_radius, Disc, DiscUnion};
use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::matrix::{ComplexPoint, RealMatrix};

/// Even-size refinement: `F = B - e betas^T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinedEven {
    pub f: RealMatrix,
    pub betas: Vec<f64>,
}

/// Odd-size refinement: `F = B + e betas^T`, `G = B + e gammas^T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinedOdd {
    pub f: RealMatrix,
    pub g: RealMatrix,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

/// `S = union_j (D_F,j ∩ D_G,j)`.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct IntersectRegion {
    pub pairs: Vec<(Disc, Disc)>,
}

impl IntersectRegion {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.pairs.iter().any(|(a, b)| a.contains(z) && b.contains(z))
    }

    pub fn margin(&self, z: ComplexPoint) -> f64 {
        self.pairs.iter().map(|(a, b)| a.margin(z).max(b.margin(z))).fold(f64::INFINITY, f64::min)
    }
}

/// Either refinement, picked by the parity of `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Refined {
    Even(RefinedEven),
    Odd(RefinedOdd),
}

impl Refined {
    /// Refined inclusion region: the discs of `F^T` (even) or `S` (odd).
    pub fn region(&self) -> Result<Region> {
        match self {
            Refined::Even(r) => Ok(Region::DiscUnion(second_type_discs_of_transpose(&r.f)?)),
            Refined::Odd(r) => Ok(Region::PairwiseIntersectionUnion(pairwise(&r.f, &r.g)?)),
        }
    }
}

/// `k`-th largest (1-based, counting multiplicity).
fn kth_largest(values: &[f64], k: usize) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted[k - 1]
}

fn shift_columns(b: &RealMatrix, shifts: &[f64]) -> RealMatrix {
    RealMatrix::from_fn(b.n(), |i, j| b[(i, j)] + shifts[j])
}

pub fn refine_even(b: &RealMatrix) -> Result<RefinedEven> {
    let n = b.n();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    if n < 4 {
        return Err(Error::Size { n, min: 4 });
    }
    b.constant_row_sum()?;
    let betas: Vec<f64> = (0..n).map(|j| kth_largest(&b.column_off_diagonal(j), n / 2)).collect();
    let neg: Vec<f64> = betas.iter().map(|x| -x).collect();
    Ok(RefinedEven { f: shift_columns(b, &neg), betas })
}

pub fn refine_odd(b: &RealMatrix) -> Result<RefinedOdd> {
    let n = b.n();
    if n.is_multiple_of(2) {
        return Err(Error::EvenSize(n));
    }
    if n < 3 {
        return Err(Error::Size { n, min: 3 });
    }
    b.constant_row_sum()?;
    let (betas, gammas): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|j| {
            let off = b.column_off_diagonal(j);
            (-kth_largest(&off, (n - 1) / 2), -kth_largest(&off, n.div_ceil(2)))
        })
        .unzip();
    Ok(RefinedOdd { f: shift_columns(b, &betas), g: shift_columns(b, &gammas), betas, gammas })
}

/// Dispatches on the parity of `n`.
pub fn refine(b: &RealMatrix) -> Result<Refined> {
    if b.n().is_multiple_of(2) {
        refine_even(b).map(Refined::Even)
    } else {
        refine_odd(b).map(Refined::Odd)
    }
}

fn pairwise(f: &RealMatrix, g: &RealMatrix) -> Result<IntersectRegion> {
    let pairs = (0..f.n())
        .map(|j| {
            let df = Disc::new(f[(j, j)], second_type_radius(&f.column_off_diagonal(j))?);
            let dg = Disc::new(g[(j, j)], second_type_radius(&g.column_off_diagonal(j))?);
            Ok((df, dg))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntersectRegion { pairs })
}

/// Region `S` for odd `n`.
pub fn refined_region_odd(b: &RealMatrix) -> Result<IntersectRegion> {
    let r = refine_odd(b)?;
    pairwise(&r.f, &r.g)
}

/// Intersection of the second-type regions of `F^T` and `G^T` (odd `n`).
pub fn shifted_pair_region(b: &RealMatrix) -> Result<Region> {
    let r = refine_odd(b)?;
    let parts: [DiscUnion; 2] =
        [second_type_discs_of_transpose(&r.f)?, second_type_discs_of_transpose(&r.g)?];
    Ok(Region::Intersection { parts: parts.into_iter().map(Region::DiscUnion).collect() })
}
