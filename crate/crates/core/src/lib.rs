//! Eigenvalue inclusion regions and upper bounds for real matrices with one
//! known real eigenpair.
//!
//! A diagonal similarity built from the eigenvector turns the matrix into a
//! constant row-sum matrix `B`. The remaining eigenvalues then lie in the
//! second-type discs of `B^T`, in the smaller regions of column-shifted copies
//! of `B`, and in intersections of Cassini-oval sets. Their moduli are bounded
//! by the farthest points of those regions and by two closed-form semi-norms.
//!
//! ```
//! use eigenfence::{eigenpair_region, ComplexPoint, Eigenpair, RealMatrix};
//!
//! let a = RealMatrix::from_rows(&[[12., 6., 6.], [3., 3., 18.], [8., 8., 8.]]).unwrap();
//! let p = Eigenpair::new(24.0, vec![1.0; 3]).unwrap();
//! let region = eigenpair_region(&a, &p).unwrap();
//! assert!(region.contains(ComplexPoint::real(-6.0)));
//! assert!(region.contains(ComplexPoint::real(5.0)));
//! ```

pub mod bounds;
pub mod cassini;
pub mod cli;
pub mod discs;
pub mod error;
#[doc(hidden)]
pub mod fixtures;
pub mod geometry;
pub mod matrix;
pub mod oracle;
pub mod refine;
pub mod render;
pub mod similarity;

pub use bounds::{
    bound_from_discs, bound_report, det_bound, powered_bound, tau1, tau_inf, BoundOptions, BoundReport,
    SemiNormKind,
};
pub use cassini::{obr_pair, obr_set, refined_obr_region, CassiniOval, CassiniUnion};
pub use discs::{
    classic_discs, eigenpair_region, second_type_discs_of_transpose, second_type_radius, Axis, Disc,
    DiscUnion,
};
pub use error::{Error, Result};
pub use geometry::{max_abs, sampled_subset, BoundingBox, MaxAbs, Region, SubsetCheck};
pub use matrix::{check_eigenpair, parse_matrix, ComplexPoint, Eigenpair, Problem, RealMatrix, DEFAULT_TOL};
pub use refine::{
    refine, refine_even, refine_odd, refined_region_odd, shifted_pair_region, IntersectRegion, Refined,
};
pub use render::{render_svg, Scene};
pub use similarity::{
    desingularize, diag_similar, normalize_stochastic, to_row_sum_form, Desingularization, SimilarityResult,
};
