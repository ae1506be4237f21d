//! Worked reference problems with known eigenpairs, used by the test suites,
//! the golden SVG figures and the README walkthrough.

use crate::matrix::{Eigenpair, RealMatrix};

fn m<const N: usize>(rows: [[f64; N]; N]) -> RealMatrix {
    RealMatrix::from_rows(&rows).expect("fixture matrices are square and finite")
}

fn pair(lambda: f64, v: &[f64]) -> Eigenpair {
    Eigenpair::new(lambda, v.to_vec()).expect("fixture eigenvectors are nonzero")
}

/// 6x6 nonnegative irreducible matrix, Perron pair `(24, (2,1,1,1,1,1))`.
pub fn perron_six() -> (RealMatrix, Eigenpair) {
    (
        m([
            [10., 4., 8., 4., 6., 6.],
            [2., 6., 6., 2., 4., 2.],
            [1., 4., 8., 4., 2., 4.],
            [0., 6., 8., 4., 0., 6.],
            [4., 4., 6., 0., 2., 4.],
            [1., 4., 6., 2., 4., 6.],
        ]),
        pair(24.0, &[2., 1., 1., 1., 1., 1.]),
    )
}

/// Constant row-sum form of [`perron_six`].
pub fn perron_six_row_sum() -> RealMatrix {
    m([
        [10., 2., 4., 2., 3., 3.],
        [4., 6., 6., 2., 4., 2.],
        [2., 4., 8., 4., 2., 4.],
        [0., 6., 8., 4., 0., 6.],
        [8., 4., 6., 0., 2., 4.],
        [2., 4., 6., 2., 4., 6.],
    ])
}

/// Even-size refinement of [`perron_six_row_sum`].
pub fn perron_six_refined() -> RealMatrix {
    m([
        [8., -2., -2., 0., 0., -1.],
        [2., 2., 0., 0., 1., -2.],
        [0., 0., 2., 2., -1., 0.],
        [-2., 2., 2., 2., -3., 2.],
        [6., 0., 0., -2., -1., 0.],
        [0., 0., 0., 0., 1., 2.],
    ])
}

/// Approximate non-Perron eigenvalues of [`perron_six`], as `(re, im)`.
pub const PERRON_SIX_OTHERS: [(f64, f64); 5] =
    [(7.76, 0.0), (-3.05, 0.0), (2.65, 1.34), (2.65, -1.34), (2.0, 0.0)];

/// Singular 6x6 sign-mixed matrix with eigenpair `(0, (1,1,1,2,1,-1))`.
pub fn singular_six() -> (RealMatrix, Eigenpair) {
    (
        m([
            [-2., 4., 2., 0., -2., 2.],
            [-2., 2., 2., -2., 0., -2.],
            [-4., 2., 4., 0., -2., 0.],
            [-4., 10., 6., -4., -16., -12.],
            [0., 4., 8., -4., -6., -2.],
            [-8., 2., 2., -2., 0., -8.],
        ]),
        pair(0.0, &[1., 1., 1., 2., 1., -1.]),
    )
}

pub fn singular_six_row_sum() -> RealMatrix {
    m([
        [-2., 4., 2., 0., -2., -2.],
        [-2., 2., 2., -4., 0., 2.],
        [-4., 2., 4., 0., -2., 0.],
        [-2., 5., 3., -4., -8., 6.],
        [0., 4., 8., -8., -6., 2.],
        [8., -2., -2., 4., 0., -8.],
    ])
}

/// Approximate nonzero eigenvalues of [`singular_six`].
pub const SINGULAR_SIX_OTHERS: [(f64, f64); 5] =
    [(-13.32, 0.0), (-3.71, 4.39), (-3.71, -4.39), (3.37, 2.12), (3.37, -2.12)];

/// 3x3 matrix whose second-type region is not inside the classic one.
/// Eigenpair `(10, (2,1,1))`; other eigenvalues 0 and 5.
pub fn wider_than_classic_three() -> (RealMatrix, Eigenpair) {
    (m([[9., 1., 1.], [0., 5., 5.], [4., 1., 1.]]), pair(10.0, &[2., 1., 1.]))
}

/// 7x7 nonnegative matrix, Perron pair `(15, (3,2,1,1,1,1,1))`.
pub fn perron_seven() -> (RealMatrix, Eigenpair) {
    (
        m([
            [2., 3., 6., 9., 6., 6., 6.],
            [2., 2., 4., 0., 4., 6., 6.],
            [0., 1., 3., 2., 4., 2., 2.],
            [2., 1., 2., 0., 2., 1., 2.],
            [1., 2., 1., 3., 0., 3., 1.],
            [2., 0., 1., 3., 1., 4., 0.],
            [0., 3., 3., 2., 1., 2., 1.],
        ]),
        pair(15.0, &[3., 2., 1., 1., 1., 1., 1.]),
    )
}

pub fn perron_seven_row_sum() -> RealMatrix {
    m([
        [2., 2., 2., 3., 2., 2., 2.],
        [3., 2., 2., 0., 2., 3., 3.],
        [0., 2., 3., 2., 4., 2., 2.],
        [6., 2., 2., 0., 2., 1., 2.],
        [3., 4., 1., 3., 0., 3., 1.],
        [6., 0., 1., 3., 1., 4., 0.],
        [0., 6., 3., 2., 1., 2., 1.],
    ])
}

/// Printed odd-size refinements of [`perron_seven_row_sum`] (first, second).
/// Column 4 carries the two shifts in the opposite order from the
/// construction rule.
pub fn perron_seven_printed_pair() -> (RealMatrix, RealMatrix) {
    (
        m([
            [-1., 0., 0., 1., 0., 0., 0.],
            [0., 0., 0., -2., 0., 1., 1.],
            [-3., 0., 1., 0., 2., 0., 0.],
            [3., 0., 0., -2., 0., -1., 0.],
            [0., 2., -1., 1., -2., 1., -1.],
            [3., -2., -1., 1., -1., 2., -2.],
            [-3., 4., 1., 0., -1., 0., -1.],
        ]),
        m([
            [-1., 0., 0., 0., 0., 0., 0.],
            [0., 0., 0., -3., 0., 1., 1.],
            [-3., 0., 1., -1., 2., 0., 0.],
            [3., 0., 0., -3., 0., -1., 0.],
            [0., 2., -1., 0., -2., 1., -1.],
            [3., -2., -1., 0., -1., 2., -2.],
            [-3., 4., 1., -1., -1., 0., -1.],
        ]),
    )
}

/// 4x4 matrix with eigenpair `(0, (0,0,1,1))`; other eigenvalues -1, 1, 2.
pub fn zero_component_four() -> (RealMatrix, Eigenpair) {
    (
        m([[7., -10., -2., 2.], [5., -8., -2., 2.], [-5., 12., 4., -4.], [-1., 4., 1., -1.]]),
        pair(0.0, &[0., 0., 1., 1.]),
    )
}

pub fn zero_component_four_desingularized() -> RealMatrix {
    m([[2., 2., -2., -2.], [0., 4., -2., -2.], [-5., 12., -3., -4.], [-1., 4., -2., -1.]])
}

pub fn zero_component_four_refined() -> RealMatrix {
    m([[3., -2., 0., 0.], [1., 0., 0., 0.], [-4., 8., -1., -2.], [0., 0., 0., 1.]])
}

/// 3x3 nonnegative matrix with eigenpair `(7, (1,7,3))`; others 0 and -2.
pub fn cassini_three() -> (RealMatrix, Eigenpair) {
    (m([[0., 1., 0.], [2., 5., 4.], [0., 3., 0.]]), pair(7.0, &[1., 7., 3.]))
}

/// The printed degenerate refinement of [`cassini_three`].
pub fn cassini_three_printed_refinement() -> RealMatrix {
    m([[0., 0., 0.], [2. / 7., -2., 12. / 7.], [0., 0., 0.]])
}

/// 3x3 constant row-sum matrix, pair `(24, e)`; others -6 and 5.
pub fn row_sum_three() -> (RealMatrix, Eigenpair) {
    (m([[12., 6., 6.], [3., 3., 18.], [8., 8., 8.]]), pair(24.0, &[1., 1., 1.]))
}

pub fn row_sum_three_refined() -> (RealMatrix, RealMatrix) {
    (m([[4., -2., -12.], [-5., -5., 0.], [0., 0., -10.]]), m([[9., 0., 0.], [0., -3., 12.], [5., 2., 2.]]))
}

/// 4x4 nonnegative matrix, Perron pair `(24, (1,2,2,1))`; others -6, -2, -2.
pub fn perron_four() -> (RealMatrix, Eigenpair) {
    (
        m([[4., 3., 4., 6.], [8., 4., 8., 16.], [16., 8., 2., 12.], [6., 3., 4., 4.]]),
        pair(24.0, &[1., 2., 2., 1.]),
    )
}

pub fn perron_four_row_sum() -> RealMatrix {
    m([[4., 6., 8., 6.], [4., 4., 8., 8.], [8., 8., 2., 6.], [6., 6., 8., 4.]])
}

pub fn perron_four_refined() -> RealMatrix {
    m([[-2., 0., 0., 0.], [-2., -2., 0., 2.], [2., 2., -6., 0.], [0., 0., 0., -2.]])
}

/// Singular 7x7 matrix with eigenpair `(0, (1,2,3,1,2,2,1))`.
pub fn singular_seven() -> (RealMatrix, Eigenpair) {
    (
        m([
            [-18., 3., 2., 0., 3., 0., 0.],
            [12., -18., 0., 12., 0., 0., 12.],
            [18., 0., -24., 18., 0., 9., 18.],
            [0., 3., 2., -24., 3., 3., 0.],
            [12., 0., 0., 12., -18., 6., 0.],
            [0., 0., 4., 12., 6., -24., 12.],
            [0., 3., 2., 0., 0., 3., -18.],
        ]),
        pair(0.0, &[1., 2., 3., 1., 2., 2., 1.]),
    )
}

pub fn singular_seven_row_sum() -> RealMatrix {
    m([
        [-18., 6., 6., 0., 6., 0., 0.],
        [6., -18., 0., 6., 0., 0., 6.],
        [6., 0., -24., 6., 0., 6., 6.],
        [0., 6., 6., -24., 6., 6., 0.],
        [6., 0., 0., 6., -18., 6., 0.],
        [0., 0., 6., 6., 6., -24., 6.],
        [0., 6., 6., 0., 0., 6., -18.],
    ])
}

pub const SINGULAR_SEVEN_OTHERS: [f64; 6] = [-37.29, -32.49, -24.0, -20.76, -15.51, -13.95];

/// Named scenes whose SVG output is pinned by golden files.
pub fn reference_scenes() -> Vec<(&'static str, crate::render::Scene)> {
    use crate::cassini::refined_obr_region;
    use crate::discs::{classic_discs, eigenpair_region, second_type_discs_of_transpose, Axis};
    use crate::geometry::Region;
    use crate::matrix::ComplexPoint;
    use crate::oracle::eigenvalues;
    use crate::refine::refine_even;
    use crate::render::{Scene, BLUE, GRAY, TURQUOISE};

    let (a, p) = perron_six();
    let eigs = eigenvalues(&a).expect("six-by-six spectrum").sorted();
    let classic = Region::DiscUnion(classic_discs(&a, Axis::Columns));
    let second = Region::DiscUnion(eigenpair_region(&a, &p).expect("valid pair"));
    let f = refine_even(&perron_six_row_sum()).expect("even size").f;
    let refined = Region::DiscUnion(second_type_discs_of_transpose(&f).expect("n >= 3"));

    let (a3, p3) = row_sum_three();
    let obr = refined_obr_region(&a3, &p3).expect("valid pair");
    let others =
        eigenvalues(&a3).expect("three-by-three spectrum").without(ComplexPoint::real(p3.lambda), 1e-6);

    vec![
        (
            "second_type_vs_classic",
            Scene::new()
                .layer(classic.clone(), GRAY, 1.0)
                .layer(second.clone(), BLUE, 0.85)
                .points(eigs.iter().copied()),
        ),
        (
            "refined_even",
            Scene::new()
                .layer(classic, GRAY, 1.0)
                .layer(second, BLUE, 0.85)
                .layer(refined, TURQUOISE, 0.9)
                .points(eigs),
        ),
        ("refined_cassini", Scene::new().layer(obr, TURQUOISE, 0.9).resolution(128).points(others)),
    ]
}
