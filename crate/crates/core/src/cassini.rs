//! Ostrowski-Brauer sets: unions of ovals of Cassini over index pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::matrix::{ComplexPoint, Eigenpair, RealMatrix, DEFAULT_TOL};
use crate::refine::{refine, Refined};
use crate::similarity::to_row_sum_form;

/// `{ z : |z - c1| |z - c2| <= bound }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CassiniOval {
    pub c1: f64,
    pub c2: f64,
    pub bound: f64,
}

impl CassiniOval {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        z.dist_real(self.c1) * z.dist_real(self.c2) <= self.bound + 1e-9 * (1.0 + self.bound)
    }

    /// Distance-like membership margin: `sqrt(|z-c1||z-c2|) - sqrt(bound)`.
    pub fn margin(&self, z: ComplexPoint) -> f64 {
        (z.dist_real(self.c1) * z.dist_real(self.c2)).sqrt() - self.bound.sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.bound == 0.0
    }

    /// Half-width of the oval measured from its midpoint: `sqrt(bound + d^2)`
    /// with `d` half the focal distance.
    pub fn reach(&self) -> f64 {
        let d = 0.5 * (self.c2 - self.c1);
        (self.bound + d * d).sqrt()
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.c1 + self.c2)
    }

    /// Exact largest modulus; attained on the real axis.
    pub fn max_abs(&self) -> f64 {
        self.midpoint().abs() + self.reach()
    }

    /// Boundary points along rays from the midpoint at angle `theta`
    /// (zero, one or two radii per ray).
    pub fn boundary_on_ray(&self, theta: f64) -> Vec<ComplexPoint> {
        let d = 0.5 * (self.c2 - self.c1);
        let d2 = d * d;
        let c = (2.0 * theta).cos();
        let disc = d2 * d2 * c * c - (d2 * d2 - self.bound * self.bound);
        if disc < 0.0 {
            return Vec::new();
        }
        let root = disc.sqrt();
        let m = self.midpoint();
        [d2 * c + root, d2 * c - root]
            .into_iter()
            .filter(|&rho2| rho2 >= 0.0)
            .map(|rho2| {
                let rho = rho2.sqrt();
                ComplexPoint::new(m + rho * theta.cos(), rho * theta.sin())
            })
            .collect()
    }
}

/// All `n(n-1)/2` ovals of one matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CassiniUnion {
    pub ovals: Vec<CassiniOval>,
}

impl CassiniUnion {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.ovals.iter().any(|o| o.contains(z))
    }

    pub fn margin(&self, z: ComplexPoint) -> f64 {
        self.ovals.iter().map(|o| o.margin(z)).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.ovals.iter().map(CassiniOval::max_abs).fold(0.0, f64::max)
    }
}

/// Ostrowski-Brauer set of `m` built from deleted row sums.
pub fn obr_set(m: &RealMatrix) -> Result<CassiniUnion> {
    let n = m.n();
    if n < 2 {
        return Err(Error::Size { n, min: 2 });
    }
    let deleted: Vec<f64> = (0..n).map(|i| m.row_off_diagonal(i).iter().map(|x| x.abs()).sum()).collect();
    let mut ovals = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            ovals.push(CassiniOval { c1: m[(i, i)], c2: m[(j, j)], bound: deleted[i] * deleted[j] });
        }
    }
    Ok(CassiniUnion { ovals })
}

/// `Γ(M) ∩ Γ(M^T)`.
pub fn obr_pair(m: &RealMatrix) -> Result<Region> {
    Ok(Region::Intersection {
        parts: vec![Region::CassiniUnion(obr_set(m)?), Region::CassiniUnion(obr_set(&m.transpose())?)],
    })
}

/// Intersection of the Ostrowski-Brauer sets of `F`, `F^T` (and `G`, `G^T`
/// for odd `n`), which holds every eigenvalue of `a` other than `p.lambda`.
pub fn refined_obr_region(a: &RealMatrix, p: &Eigenpair) -> Result<Region> {
    refined_obr_region_with_tol(a, p, DEFAULT_TOL)
}

pub fn refined_obr_region_with_tol(a: &RealMatrix, p: &Eigenpair, tol: f64) -> Result<Region> {
    if a.n() < 3 {
        return Err(Error::Size { n: a.n(), min: 3 });
    }
    let form = to_row_sum_form(a, p, tol)?;
    let mats = match refine(&form.similarity.b)? {
        Refined::Even(r) => vec![r.f],
        Refined::Odd(r) => vec![r.f, r.g],
    };
    let mut parts = Vec::with_capacity(2 * mats.len());
    for m in &mats {
        parts.push(Region::CassiniUnion(obr_set(m)?));
        parts.push(Region::CassiniUnion(obr_set(&m.transpose())?));
    }
    Ok(Region::Intersection { parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn degenerate_printed_refinement_collapses_to_two_points() {
        let m = fixtures::cassini_three_printed_refinement();
        let region = obr_pair(&m).unwrap();
        assert!(region.contains(ComplexPoint::real(0.0)));
        assert!(region.contains(ComplexPoint::real(-2.0)));
        for z in [-1.0, 0.5, -2.5, 1.0] {
            assert!(!region.contains(ComplexPoint::real(z)), "{z}");
        }
        assert!(!region.contains(ComplexPoint::new(0.0, 0.1)));
    }

    #[test]
    fn diagonal_matrix_has_point_ovals() {
        let u = obr_set(&RealMatrix::diagonal(&[1., 2., 3.])).unwrap();
        assert_eq!(u.ovals.len(), 3);
        assert!(u.ovals.iter().all(CassiniOval::is_degenerate));
        for z in [1.0, 2.0, 3.0] {
            assert!(u.contains(ComplexPoint::real(z)));
        }
        assert!(!u.contains(ComplexPoint::real(1.5)));
    }

    #[test]
    fn refined_odd_matrix_contains_its_other_eigenvalues() {
        let (_, g) = fixtures::row_sum_three_refined();
        let u = obr_set(&g).unwrap();
        // Evaluate the defining inequality directly for -6 and 5.
        let deleted = [0.0, 12.0, 7.0];
        let diag = [9.0, -3.0, 2.0];
        for z in [-6.0f64, 5.0] {
            let direct = (0..3).any(|i| {
                (i + 1..3).any(|j| (z - diag[i]).abs() * (z - diag[j]).abs() <= deleted[i] * deleted[j])
            });
            assert!(direct);
            assert!(u.contains(ComplexPoint::real(z)));
        }
    }

    #[test]
    fn too_small() {
        assert!(matches!(obr_set(&RealMatrix::identity(1)), Err(Error::Size { .. })));
    }

    #[test]
    fn refined_regions_contain_remaining_eigenvalues() {
        let (a, p) = fixtures::row_sum_three();
        let r = refined_obr_region(&a, &p).unwrap();
        assert!(matches!(&r, Region::Intersection { parts } if parts.len() == 4));
        assert!(r.contains(ComplexPoint::real(-6.0)));
        assert!(r.contains(ComplexPoint::real(5.0)));

        let (a, p) = fixtures::cassini_three();
        let r = refined_obr_region(&a, &p).unwrap();
        assert!(r.contains(ComplexPoint::real(0.0)));
        assert!(r.contains(ComplexPoint::real(-2.0)));

        let (a, p) = fixtures::perron_four();
        let r = refined_obr_region(&a, &p).unwrap();
        assert!(matches!(&r, Region::Intersection { parts } if parts.len() == 2));
        assert!(r.contains(ComplexPoint::real(-6.0)));
        assert!(r.contains(ComplexPoint::real(-2.0)));
    }

    #[test]
    fn max_abs_matches_axis_extent() {
        let o = CassiniOval { c1: -1.0, c2: 3.0, bound: 5.0 };
        // Farthest point on the axis: x with |x+1||x-3| = 5, x > 3 -> x = 1 + 3.
        assert!((o.max_abs() - 4.0).abs() < 1e-12);
        assert!(o.contains(ComplexPoint::real(4.0)));
        assert!(!o.contains(ComplexPoint::real(4.001)));
        for k in 0..32 {
            for z in o.boundary_on_ray(k as f64 * 0.2) {
                assert!(o.margin(z).abs() < 1e-9, "{z}");
            }
        }
    }
}
