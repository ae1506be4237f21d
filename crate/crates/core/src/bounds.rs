//! Upper bounds on the moduli of the non-trivial eigenvalues of a constant
//! row-sum matrix: farthest points of disc regions, the two closed-form
//! semi-norms, their powered versions and a determinant bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::discs::{half_spread, second_type_discs_of_transpose};
use crate::error::{Error, Result};
use crate::matrix::{Eigenpair, RealMatrix, DEFAULT_TOL};
use crate::refine::{refine, Refined};
use crate::similarity::to_row_sum_form;

/// Entries above this magnitude in a matrix power abort with [`Error::Overflow`].
pub const OVERFLOW_LIMIT: f64 = 1e300;

/// Which closed-form semi-norm to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemiNormKind {
    L1,
    LInf,
}

impl SemiNormKind {
    pub fn label(self) -> &'static str {
        match self {
            SemiNormKind::L1 => "tau1",
            SemiNormKind::LInf => "tauinf",
        }
    }

    pub fn eval(self, m: &RealMatrix) -> f64 {
        match self {
            SemiNormKind::L1 => tau1(m),
            SemiNormKind::LInf => tau_inf(m),
        }
    }
}

impl fmt::Display for SemiNormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SemiNormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "l1" | "L1" => Ok(SemiNormKind::L1),
            "inf" | "linf" | "LInf" => Ok(SemiNormKind::LInf),
            other => Err(Error::NotApplicable(format!(
                "unsupported norm {other:?}; only 1 and inf have closed forms"
            ))),
        }
    }
}

/// One labelled bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub value: f64,
    pub source: String,
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Farthest point from the origin of the second-type region of `m^T`.
pub fn bound_from_discs(m: &RealMatrix) -> Result<f64> {
    Ok(second_type_discs_of_transpose(m)?.max_abs())
}

/// Half the largest L1 distance between two rows.
pub fn tau1(m: &RealMatrix) -> f64 {
    let n = m.n();
    let mut best = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let d: f64 = m.row(i).iter().zip(m.row(j)).map(|(a, b)| (a - b).abs()).sum();
            best = best.max(d);
        }
    }
    0.5 * best
}

/// Largest column statistic `cs_j`: all `n` entries of column `j` sorted
/// non-increasingly, top block minus bottom block.
pub fn tau_inf(m: &RealMatrix) -> f64 {
    (0..m.n()).map(|j| half_spread(m.column(j))).fold(0.0, f64::max)
}

/// `M^k` by repeated multiplication.
pub fn matrix_power(m: &RealMatrix, k: u32) -> Result<RealMatrix> {
    if k == 0 {
        return Ok(RealMatrix::identity(m.n()));
    }
    let mut p = m.clone();
    for step in 2..=k {
        p = p.matmul(m);
        let big = p.max_abs_entry();
        if big.is_nan() || big > OVERFLOW_LIMIT {
            return Err(Error::Overflow { k: step });
        }
    }
    Ok(p)
}

/// `tau(M^k)^(1/k)`.
pub fn powered_bound(m: &RealMatrix, k: u32, kind: SemiNormKind) -> Result<f64> {
    if k == 0 {
        return Err(Error::NotApplicable("power k must be at least 1".into()));
    }
    m.constant_row_sum()?;
    let p = matrix_power(m, k)?;
    Ok(kind.eval(&p).powf(1.0 / f64::from(k)))
}

/// `|lambda| tau(B^k)^((n-1)/k)` with `B` the constant row-sum form of `a`.
/// Zero components of `p.v` are handled by desingularizing first.
pub fn det_bound(a: &RealMatrix, p: &Eigenpair, k: u32, kind: SemiNormKind) -> Result<f64> {
    det_bound_with_tol(a, p, k, kind, DEFAULT_TOL)
}

pub fn det_bound_with_tol(
    a: &RealMatrix,
    p: &Eigenpair,
    k: u32,
    kind: SemiNormKind,
    tol: f64,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::NotApplicable("power k must be at least 1".into()));
    }
    let b = to_row_sum_form(a, p, tol)?.similarity.b;
    let t = kind.eval(&matrix_power(&b, k)?);
    let exponent = (a.n() as f64 - 1.0) / f64::from(k);
    Ok(p.lambda.abs() * t.powf(exponent))
}

/// What [`bound_report`] should include beyond the disc bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundOptions {
    pub powers: Vec<u32>,
    pub norms: Vec<SemiNormKind>,
    pub det: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self { powers: vec![1, 2, 3], norms: vec![SemiNormKind::L1, SemiNormKind::LInf], det: false }
    }
}

fn entry(name: String, value: f64, source: &str, k: Option<u32>) -> BoundReport {
    BoundReport { name, value, source: source.to_string(), k, note: None }
}

/// Every applicable bound for the eigenvalues of `a` other than `p.lambda`.
/// Eigenvalue bounds that do not beat `|lambda|` carry a note.
pub fn bound_report(a: &RealMatrix, p: &Eigenpair, opts: &BoundOptions) -> Result<Vec<BoundReport>> {
    bound_report_with_tol(a, p, opts, DEFAULT_TOL)
}

pub fn bound_report_with_tol(
    a: &RealMatrix,
    p: &Eigenpair,
    opts: &BoundOptions,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    let n = a.n();
    if n < 3 {
        return Err(Error::Size { n, min: 3 });
    }
    let b = to_row_sum_form(a, p, tol)?.similarity.b;
    let mut out = vec![entry("m_B".into(), bound_from_discs(&b)?, "discs_B", None)];

    let shifted: Vec<(&str, RealMatrix)> = match refine(&b)? {
        Refined::Even(r) => vec![("F", r.f)],
        Refined::Odd(r) => vec![("F", r.f), ("G", r.g)],
    };
    let mut disc_values = Vec::new();
    for (label, m) in &shifted {
        let v = bound_from_discs(m)?;
        disc_values.push(v);
        out.push(entry(format!("m_{label}"), v, "discs_refined", None));
    }
    if disc_values.len() == 2 {
        out.push(entry("m_FG".into(), disc_values[0].min(disc_values[1]), "discs_refined_min", None));
    }

    for &kind in &opts.norms {
        for (label, m) in &shifted {
            for &k in &opts.powers {
                let v = powered_bound(m, k, kind)?;
                out.push(entry(format!("{}_{label}_k{k}", kind.label()), v, "semi_norm_power", Some(k)));
            }
        }
    }

    let lam = p.lambda.abs();
    for r in &mut out {
        if r.value >= lam {
            r.note = Some(format!("not smaller than |lambda| = {lam}"));
        }
    }

    if opts.det {
        let mut ks: Vec<u32> = opts.powers.clone();
        ks.push(n as u32 - 1);
        ks.sort_unstable();
        ks.dedup();
        for &kind in &opts.norms {
            for &k in &ks {
                let v = det_bound_with_tol(a, p, k, kind, tol)?;
                out.push(entry(format!("det_{}_k{k}", kind.label()), v, "determinant", Some(k)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::{max_abs, Region};
    use crate::refine::refine_even;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn disc_bounds_of_worked_matrices() {
        let b = fixtures::perron_four_row_sum();
        assert_eq!(bound_from_discs(&b).unwrap(), 14.0);
        assert_eq!(bound_from_discs(&fixtures::perron_four_refined()).unwrap(), 6.0);
        assert_eq!(bound_from_discs(&fixtures::singular_seven_row_sum()).unwrap(), 42.0);
        let (_, g) = fixtures::row_sum_three_refined();
        assert_eq!(bound_from_discs(&g).unwrap(), 14.0);
        assert!(bound_from_discs(&RealMatrix::identity(2)).is_err());
    }

    #[test]
    fn closed_form_semi_norms() {
        let f = fixtures::perron_four_refined();
        assert_eq!(tau1(&f), 8.0);
        assert_eq!(tau_inf(&f), 6.0);
        let (_, g) = fixtures::row_sum_three_refined();
        assert_eq!(tau_inf(&g), 12.0);
        assert_eq!(tau1(&RealMatrix::from_rows(&[[1., 2.], [1., 2.]]).unwrap()), 0.0);
        assert_eq!(tau_inf(&RealMatrix::from_fn(4, |_, _| 3.5)), 0.0);
    }

    #[test]
    fn powered_bounds_reproduce_tables() {
        let f = fixtures::zero_component_four_refined();
        assert!(close(powered_bound(&f, 2, SemiNormKind::LInf).unwrap(), 3.1623, 1e-4));
        assert!(close(powered_bound(&f, 5, SemiNormKind::LInf).unwrap(), 2.5119, 1e-4));
        assert!(close(powered_bound(&f, 5, SemiNormKind::L1).unwrap(), 2.3389, 1e-4));
        assert_eq!(powered_bound(&f, 1, SemiNormKind::L1).unwrap(), tau1(&f));
        let f = fixtures::perron_four_refined();
        assert!(close(powered_bound(&f, 3, SemiNormKind::LInf).unwrap(), 6.0, 1e-9));
        assert!(close(powered_bound(&f, 2, SemiNormKind::L1).unwrap(), 6.9282, 1e-4));
        assert!(close(powered_bound(&f, 3, SemiNormKind::L1).unwrap(), 6.5421, 1e-4));
    }

    #[test]
    fn powered_bound_errors() {
        let (a, _) = fixtures::perron_six();
        assert!(matches!(powered_bound(&a, 2, SemiNormKind::L1), Err(Error::NotConstantRowSum { .. })));
        let big = RealMatrix::from_fn(3, |_, _| 1e200);
        assert!(matches!(powered_bound(&big, 3, SemiNormKind::L1), Err(Error::Overflow { k: 2 })));
        let f = fixtures::perron_four_refined();
        assert!(powered_bound(&f, 0, SemiNormKind::L1).is_err());
    }

    #[test]
    fn determinant_bounds() {
        let (a, p) = fixtures::singular_six();
        assert_eq!(det_bound(&a, &p, 1, SemiNormKind::L1).unwrap(), 0.0);
        let (a, p) = fixtures::perron_four();
        let bound = det_bound(&a, &p, 1, SemiNormKind::LInf).unwrap();
        assert_eq!(bound, 24.0 * tau_inf(&fixtures::perron_four_row_sum()).powi(3));
        assert!(bound >= 576.0);
        let (a, p) = fixtures::perron_six();
        let det = crate::oracle::determinant(&a).abs();
        assert!(det_bound(&a, &p, 5, SemiNormKind::L1).unwrap() >= det);
        let (a, p) = fixtures::zero_component_four();
        assert_eq!(det_bound(&a, &p, 2, SemiNormKind::L1).unwrap(), 0.0);
    }

    #[test]
    fn report_covers_disc_and_power_bounds() {
        let (a, p) = fixtures::perron_four();
        let r = bound_report(&a, &p, &BoundOptions { det: true, ..Default::default() }).unwrap();
        let get = |name: &str| r.iter().find(|e| e.name == name).unwrap().value;
        assert_eq!(get("m_B"), 14.0);
        assert_eq!(get("m_F"), 6.0);
        assert_eq!(get("tau1_F_k1"), 8.0);
        assert_eq!(get("tauinf_F_k1"), 6.0);
        assert!(r.iter().any(|e| e.name == "det_tau1_k3"));
        assert!(r.iter().all(|e| e.value >= 0.0 && e.value.is_finite()));

        let (a, p) = fixtures::row_sum_three();
        let r = bound_report(&a, &p, &BoundOptions::default()).unwrap();
        let get = |name: &str| r.iter().find(|e| e.name == name).unwrap().value;
        assert_eq!(get("m_G"), 14.0);
        assert_eq!(get("m_FG"), 14.0);
        assert_eq!(get("tauinf_G_k1"), 12.0);
        let json = serde_json::to_value(&r[0]).unwrap();
        assert_eq!(json["name"], "m_B");
        assert!(json.get("k").is_some());
    }

    #[test]
    fn disc_bound_agrees_with_region_max_abs() {
        let b = fixtures::perron_six_row_sum();
        let region = Region::DiscUnion(second_type_discs_of_transpose(&b).unwrap());
        assert_eq!(bound_from_discs(&b).unwrap(), max_abs(&region).value);
    }

    fn arb_row_sum(n: usize) -> impl Strategy<Value = RealMatrix> {
        proptest::collection::vec(-9i32..10, n * n).prop_map(move |xs| {
            let mut m = RealMatrix::from_fn(n, |i, j| f64::from(xs[i * n + j]));
            // Force the last column to equalize row sums to 5.
            for i in 0..n {
                let s: f64 = (0..n - 1).map(|j| m[(i, j)]).sum();
                m[(i, n - 1)] = 5.0 - s;
            }
            m
        })
    }

    proptest! {
        #[test]
        fn column_shifts_leave_semi_norms_unchanged(b in (3usize..8).prop_flat_map(arb_row_sum)) {
            let mats: Vec<RealMatrix> = match refine(&b) {
                Ok(Refined::Even(r)) => vec![r.f],
                Ok(Refined::Odd(r)) => vec![r.f, r.g],
                Err(_) => vec![],
            };
            for m in mats {
                prop_assert!(close(tau1(&m), tau1(&b), 1e-9));
                prop_assert!(close(tau_inf(&m), tau_inf(&b), 1e-9));
            }
        }

        #[test]
        fn semi_norms_nonnegative(b in (2usize..7).prop_flat_map(arb_row_sum)) {
            prop_assert!(tau1(&b) >= 0.0);
            prop_assert!(tau_inf(&b) >= 0.0);
        }
    }

    #[test]
    fn refine_even_needs_row_sum() {
        assert!(refine_even(&fixtures::perron_four_row_sum()).is_ok());
    }
}
