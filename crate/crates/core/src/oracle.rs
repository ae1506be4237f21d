//! Dense eigenvalue and determinant oracle for checking the localization
//! results. Nothing else in the library depends on it.
//!
//! Eigenvalues come from a real Schur decomposition (Hessenberg reduction
//! followed by shifted QR sweeps). If the sweeps stall, the matrix is
//! conjugated by a seeded random orthogonal matrix and the decomposition is
//! retried.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexPoint, RealMatrix};

/// Seed used when the caller supplies none.
pub const DEFAULT_SEED: u64 = 0x5eed_e16e;
/// Random restarts after the first attempt.
pub const MAX_RETRIES: usize = 4;

/// All `n` eigenvalues, with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<ComplexPoint>,
    /// `||A - Q T Q^T||_F` for the Schur factors used.
    pub residual_bound: f64,
}

impl Spectrum {
    /// Modulus descending, then real part descending, then imaginary part
    /// descending. Keys are rounded to `1e-9` so near-ties order stably.
    pub fn sorted(&self) -> Vec<ComplexPoint> {
        let key = |x: f64| (x * 1e9).round();
        let mut v = self.values.clone();
        v.sort_by(|a, b| {
            key(b.abs())
                .total_cmp(&key(a.abs()))
                .then(key(b.re).total_cmp(&key(a.re)))
                .then(key(b.im).total_cmp(&key(a.im)))
        });
        v
    }

    /// Replaces each value by the mean of its cluster (single linkage at
    /// distance `tol`). A defective eigenvalue of multiplicity `m` comes back
    /// split by about `eps^(1/m)`; the cluster mean is accurate to `O(eps)`.
    pub fn clustered(&self, tol: f64) -> Spectrum {
        let n = self.values.len();
        let mut label: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i].dist(self.values[j]) <= tol {
                    let (from, to) = (label[j].max(label[i]), label[j].min(label[i]));
                    for l in label.iter_mut() {
                        if *l == from {
                            *l = to;
                        }
                    }
                }
            }
        }
        let values = (0..n)
            .map(|i| {
                let members: Vec<&ComplexPoint> =
                    (0..n).filter(|&j| label[j] == label[i]).map(|j| &self.values[j]).collect();
                let k = members.len() as f64;
                ComplexPoint::new(
                    members.iter().map(|z| z.re).sum::<f64>() / k,
                    members.iter().map(|z| z.im).sum::<f64>() / k,
                )
            })
            .collect();
        Spectrum { values, residual_bound: self.residual_bound }
    }

    /// Values farther than `tol` from `lambda` (at most one copy of `lambda` removed).
    pub fn without(&self, lambda: ComplexPoint, tol: f64) -> Vec<ComplexPoint> {
        let mut v = self.values.clone();
        if let Some(i) = v
            .iter()
            .enumerate()
            .filter(|(_, z)| z.dist(lambda) <= tol)
            .min_by(|a, b| a.1.dist(lambda).total_cmp(&b.1.dist(lambda)))
            .map(|(i, _)| i)
        {
            v.remove(i);
        }
        v
    }
}

/// Largest distance in a greedy nearest-neighbour matching of two spectra.
/// Returns infinity when the lengths differ.
pub fn matching_distance(a: &[ComplexPoint], b: &[ComplexPoint]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pool = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (i, d) = pool
            .iter()
            .enumerate()
            .map(|(i, w)| (i, z.dist(*w)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("lengths match");
        worst = worst.max(d);
        pool.swap_remove(i);
    }
    worst
}

fn to_nalgebra(a: &RealMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.n(), a.n(), a.as_slice())
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    g.qr().q()
}

/// Eigenvalues with the default retry seed.
pub fn eigenvalues(a: &RealMatrix) -> Result<Spectrum> {
    eigenvalues_with_seed(a, DEFAULT_SEED)
}

pub fn eigenvalues_with_seed(a: &RealMatrix, seed: u64) -> Result<Spectrum> {
    let n = a.n();
    if n == 0 {
        return Ok(Spectrum { values: Vec::new(), residual_bound: 0.0 });
    }
    let base = to_nalgebra(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = base.clone();
    for attempt in 0..=MAX_RETRIES {
        if attempt > 0 {
            let q = random_orthogonal(n, &mut rng);
            work = q.transpose() * &base * q;
        }
        let Some(schur) = nalgebra::Schur::try_new(work.clone(), f64::EPSILON, 100 * n) else {
            continue;
        };
        let values: Vec<ComplexPoint> =
            schur.complex_eigenvalues().iter().map(|c| ComplexPoint::new(c.re, c.im)).collect();
        let (q, t) = schur.unpack();
        let residual_bound = (&work - &q * t * q.transpose()).norm();
        return Ok(Spectrum { values, residual_bound });
    }
    Err(Error::Convergence { converged: 0, n })
}

/// Determinant by LU with partial pivoting; exactly singular pivots give 0.
pub fn determinant(a: &RealMatrix) -> f64 {
    if a.n() == 0 {
        return 1.0;
    }
    to_nalgebra(a).lu().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::similarity::diag_similar;
    use proptest::prelude::*;

    fn has(values: &[ComplexPoint], z: ComplexPoint, tol: f64) -> bool {
        values.iter().any(|w| w.dist(z) <= tol)
    }

    #[test]
    fn spectrum_of_six_by_six() {
        let (a, _) = fixtures::perron_six();
        let s = eigenvalues(&a).unwrap();
        assert_eq!(s.values.len(), 6);
        assert!(has(&s.values, ComplexPoint::real(24.0), 1e-9));
        for (re, im) in fixtures::PERRON_SIX_OTHERS {
            assert!(has(&s.values, ComplexPoint::new(re, im), 0.01), "{re} {im}");
        }
        assert!(s.residual_bound <= 1e-8 * a.norm_frobenius());
    }

    #[test]
    fn spectrum_of_singular_seven() {
        let (a, _) = fixtures::singular_seven();
        let s = eigenvalues(&a).unwrap();
        assert!(has(&s.values, ComplexPoint::real(0.0), 1e-9));
        for re in fixtures::SINGULAR_SEVEN_OTHERS {
            assert!(has(&s.values, ComplexPoint::real(re), 0.01), "{re}");
        }
    }

    #[test]
    fn diagonal_and_sorting() {
        let s = eigenvalues(&RealMatrix::diagonal(&[1., 2., 3.])).unwrap();
        let sorted = s.sorted();
        assert_eq!(sorted, vec![ComplexPoint::real(3.), ComplexPoint::real(2.), ComplexPoint::real(1.)]);
        let rot = RealMatrix::from_rows(&[[0., -1.], [1., 0.]]).unwrap();
        let s = eigenvalues(&rot).unwrap().sorted();
        assert!((s[0].im - 1.0).abs() < 1e-12 && (s[1].im + 1.0).abs() < 1e-12);
    }

    #[test]
    fn determinants() {
        let (a, _) = fixtures::zero_component_four();
        assert!(determinant(&a).abs() < 1e-9);
        assert_eq!(determinant(&RealMatrix::identity(5)), 1.0);
        let (a, _) = fixtures::perron_four();
        assert!((determinant(&a) + 576.0).abs() < 1e-9);
    }

    #[test]
    fn seeds_only_matter_on_retry() {
        let (a, _) = fixtures::perron_six();
        assert_eq!(eigenvalues_with_seed(&a, 1).unwrap(), eigenvalues_with_seed(&a, 2).unwrap());
    }

    #[test]
    fn clusters_collapse_split_defective_eigenvalues() {
        let b = RealMatrix::from_rows(&[[0., -2., -1.], [0., -5., 2.], [-1., -2., 0.]]).unwrap();
        let s = eigenvalues(&b).unwrap();
        let c = s.clustered(1e-5);
        let threes: Vec<&ComplexPoint> = c.values.iter().filter(|z| z.dist_real(-3.0) < 1e-5).collect();
        assert_eq!(threes.len(), 2);
        assert!(threes.iter().all(|z| z.dist_real(-3.0) < 1e-12), "{threes:?}");
        let d = eigenvalues(&RealMatrix::diagonal(&[1., 2.])).unwrap();
        assert_eq!(d.clustered(1e-5).values, d.values);
    }

    #[test]
    fn removing_the_known_eigenvalue() {
        let (a, p) = fixtures::perron_four();
        let s = eigenvalues(&a).unwrap();
        let rest = s.without(ComplexPoint::real(p.lambda), 1e-6);
        assert_eq!(rest.len(), 3);
        assert!(rest.iter().all(|z| z.abs() < 7.0));
    }

    fn arb_matrix() -> impl Strategy<Value = RealMatrix> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec(-10i32..10, n * n)
                .prop_map(move |xs| RealMatrix::from_fn(n, |i, j| f64::from(xs[i * n + j])))
        })
    }

    proptest! {
        #[test]
        fn eigenvalues_multiply_to_determinant(a in arb_matrix()) {
            let s = eigenvalues(&a).unwrap();
            let (mut re, mut im) = (1.0f64, 0.0f64);
            for z in &s.values {
                (re, im) = (re * z.re - im * z.im, re * z.im + im * z.re);
            }
            let det = determinant(&a);
            let scale = a.norm_frobenius().max(1.0).powi(a.n() as i32);
            prop_assert!((re - det).abs() <= 1e-6 * scale, "{re} vs {det}");
            prop_assert!(im.abs() <= 1e-6 * scale);
        }

        #[test]
        fn conjugate_pairs(a in arb_matrix()) {
            let s = eigenvalues(&a).unwrap();
            for z in &s.values {
                let conj = ComplexPoint::new(z.re, -z.im);
                prop_assert!(has(&s.values, conj, 1e-7));
            }
        }
    }

    #[test]
    fn similarity_preserves_spectrum() {
        let (a, p) = fixtures::singular_six();
        let b = diag_similar(&a, &p).unwrap().b;
        let d = matching_distance(&eigenvalues(&a).unwrap().values, &eigenvalues(&b).unwrap().values);
        assert!(d < 1e-7, "{d}");
    }
}
