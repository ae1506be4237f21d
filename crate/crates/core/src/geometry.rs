//! Region algebra over discs, disc pairs and Cassini ovals.
//!
//! Regions are never converted to explicit shapes. Membership predicates
//! compose, and set comparisons are done by sampling.

use serde::{Deserialize, Serialize};

use crate::cassini::CassiniUnion;
use crate::discs::DiscUnion;
use crate::matrix::ComplexPoint;
use crate::refine::IntersectRegion;

/// Default grid resolution for [`sampled_subset`].
pub const DEFAULT_RESOLUTION: usize = 64;

/// Every location set the library produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    DiscUnion(DiscUnion),
    PairwiseIntersectionUnion(IntersectRegion),
    CassiniUnion(CassiniUnion),
    Intersection { parts: Vec<Region> },
}

/// Result of [`max_abs`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAbs {
    pub value: f64,
    /// `false` when the value is only an upper bound (intersections).
    pub exact: bool,
}

/// Axis-aligned box in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn around(c: ComplexPoint, r: f64) -> Self {
        Self { x_min: c.re - r, x_max: c.re + r, y_min: c.im - r, y_max: c.im + r }
    }

    pub fn union(self, o: Self) -> Self {
        Self {
            x_min: self.x_min.min(o.x_min),
            x_max: self.x_max.max(o.x_max),
            y_min: self.y_min.min(o.y_min),
            y_max: self.y_max.max(o.y_max),
        }
    }

    /// `None` when the boxes do not overlap.
    pub fn intersect(self, o: Self) -> Option<Self> {
        let b = Self {
            x_min: self.x_min.max(o.x_min),
            x_max: self.x_max.min(o.x_max),
            y_min: self.y_min.max(o.y_min),
            y_max: self.y_max.min(o.y_max),
        };
        (b.x_min <= b.x_max && b.y_min <= b.y_max).then_some(b)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn pad(self, fraction: f64) -> Self {
        let dx = self.width() * fraction;
        let dy = self.height() * fraction;
        Self {
            x_min: self.x_min - dx,
            x_max: self.x_max + dx,
            y_min: self.y_min - dy,
            y_max: self.y_max + dy,
        }
    }
}

impl Region {
    pub fn contains(&self, z: ComplexPoint) -> bool {
        match self {
            Region::DiscUnion(u) => u.contains(z),
            Region::PairwiseIntersectionUnion(s) => s.contains(z),
            Region::CassiniUnion(c) => c.contains(z),
            Region::Intersection { parts } => parts.iter().all(|p| p.contains(z)),
        }
    }

    /// Signed membership margin, non-positive inside (no tolerance applied).
    pub fn margin(&self, z: ComplexPoint) -> f64 {
        match self {
            Region::DiscUnion(u) => u.margin(z),
            Region::PairwiseIntersectionUnion(s) => s.margin(z),
            Region::CassiniUnion(c) => c.margin(z),
            Region::Intersection { parts } => {
                parts.iter().map(|p| p.margin(z)).fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }

    /// Bounding box, or `None` when provably empty by boxes alone.
    pub fn bounding_box(&self) -> Option<BoundingBox> {
        match self {
            Region::DiscUnion(u) => u
                .discs
                .iter()
                .map(|d| BoundingBox::around(ComplexPoint::real(d.center), d.radius))
                .reduce(BoundingBox::union),
            Region::PairwiseIntersectionUnion(s) => s
                .pairs
                .iter()
                .filter_map(|(a, b)| {
                    BoundingBox::around(ComplexPoint::real(a.center), a.radius)
                        .intersect(BoundingBox::around(ComplexPoint::real(b.center), b.radius))
                })
                .reduce(BoundingBox::union),
            Region::CassiniUnion(c) => c
                .ovals
                .iter()
                .map(|o| BoundingBox::around(ComplexPoint::real(o.midpoint()), o.reach()))
                .reduce(BoundingBox::union),
            Region::Intersection { parts } => {
                let mut it = parts.iter().map(Region::bounding_box);
                let first = it.next()??;
                it.try_fold(first, |acc, b| acc.intersect(b?))
            }
        }
    }

    /// Points on the boundaries of the primitive shapes making up the region
    /// (`angles` per circle/oval). Not filtered by membership.
    pub fn boundary_samples(&self, angles: usize) -> Vec<ComplexPoint> {
        let circle = |c: f64, r: f64, out: &mut Vec<ComplexPoint>| {
            for k in 0..angles {
                let t = std::f64::consts::TAU * k as f64 / angles as f64;
                out.push(ComplexPoint::new(c + r * t.cos(), r * t.sin()));
            }
        };
        let mut out = Vec::new();
        match self {
            Region::DiscUnion(u) => {
                for d in &u.discs {
                    circle(d.center, d.radius, &mut out);
                }
            }
            Region::PairwiseIntersectionUnion(s) => {
                for (a, b) in &s.pairs {
                    circle(a.center, a.radius, &mut out);
                    circle(b.center, b.radius, &mut out);
                }
            }
            Region::CassiniUnion(c) => {
                for o in &c.ovals {
                    if o.is_degenerate() {
                        out.push(ComplexPoint::real(o.c1));
                        out.push(ComplexPoint::real(o.c2));
                        continue;
                    }
                    for k in 0..angles {
                        let t = std::f64::consts::TAU * k as f64 / angles as f64;
                        out.extend(o.boundary_on_ray(t));
                    }
                }
            }
            Region::Intersection { parts } => {
                for p in parts {
                    out.extend(p.boundary_samples(angles));
                }
            }
        }
        out
    }
}

/// Membership with the library's tolerance conventions.
pub fn contains(region: &Region, z: ComplexPoint) -> bool {
    region.contains(z)
}

/// Largest modulus over the region: exact for disc and oval unions, an upper
/// bound for anything involving intersections (emptiness is not detected).
pub fn max_abs(region: &Region) -> MaxAbs {
    match region {
        Region::DiscUnion(u) => MaxAbs { value: u.max_abs(), exact: true },
        Region::CassiniUnion(c) => MaxAbs { value: c.max_abs(), exact: true },
        Region::PairwiseIntersectionUnion(s) => MaxAbs {
            value: s.pairs.iter().map(|(a, b)| a.max_abs().min(b.max_abs())).fold(0.0, f64::max),
            exact: false,
        },
        Region::Intersection { parts } => MaxAbs {
            value: parts.iter().map(|p| max_abs(p).value).fold(f64::INFINITY, f64::min),
            exact: false,
        },
    }
}

/// Outcome of [`sampled_subset`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubsetCheck {
    pub holds: bool,
    /// A sampled point of the first region outside the second.
    pub witness: Option<ComplexPoint>,
    /// Number of sampled points that were inside the first region.
    pub checked: usize,
}

/// Checks `inner ⊆ outer` on `resolution^2` grid points over the bounding
/// box of `inner` plus `4 * resolution` boundary angles per primitive.
pub fn sampled_subset(inner: &Region, outer: &Region, resolution: usize) -> SubsetCheck {
    assert!(resolution >= 16, "resolution must be at least 16");
    let mut samples = inner.boundary_samples(4 * resolution);
    if let Some(bb) = inner.bounding_box() {
        for iy in 0..resolution {
            let y = bb.y_min + bb.height() * (iy as f64 + 0.5) / resolution as f64;
            for ix in 0..resolution {
                let x = bb.x_min + bb.width() * (ix as f64 + 0.5) / resolution as f64;
                samples.push(ComplexPoint::new(x, y));
            }
        }
    }
    let mut checked = 0;
    for z in samples {
        if !inner.contains(z) {
            continue;
        }
        checked += 1;
        if !outer.contains(z) {
            return SubsetCheck { holds: false, witness: Some(z), checked };
        }
    }
    SubsetCheck { holds: true, witness: None, checked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discs::{classic_discs, eigenpair_region, second_type_discs_of_transpose, Axis, Disc};
    use crate::fixtures;
    use crate::refine::refine_even;
    use proptest::prelude::*;

    fn single(c: f64, r: f64) -> Region {
        Region::DiscUnion(DiscUnion { discs: vec![Disc::new(c, r)] })
    }

    #[test]
    fn membership_of_worked_region() {
        let (a, p) = fixtures::perron_six();
        let region = Region::DiscUnion(eigenpair_region(&a, &p).unwrap());
        assert!(contains(&region, ComplexPoint::real(7.76)));
        assert!(!contains(&region, ComplexPoint::real(24.0)));
        assert!(contains(&single(0.0, 0.0), ComplexPoint::real(0.0)));
    }

    #[test]
    fn max_abs_of_simple_regions() {
        let (a, p) = fixtures::perron_six();
        let region = Region::DiscUnion(eigenpair_region(&a, &p).unwrap());
        assert_eq!(max_abs(&region), MaxAbs { value: 22.0, exact: true });
        assert_eq!(max_abs(&single(2.0, 15.0)).value, 17.0);
        let empty = Region::Intersection { parts: vec![single(0.0, 1.0), single(10.0, 1.0)] };
        assert_eq!(max_abs(&empty), MaxAbs { value: 1.0, exact: false });
        assert_eq!(empty.bounding_box(), None);
    }

    #[test]
    fn subset_checks_on_reference_problems() {
        let b = fixtures::perron_six_row_sum();
        let f = refine_even(&b).unwrap().f;
        let rf = Region::DiscUnion(second_type_discs_of_transpose(&f).unwrap());
        let rb = Region::DiscUnion(second_type_discs_of_transpose(&b).unwrap());
        assert!(sampled_subset(&rf, &rb, DEFAULT_RESOLUTION).holds);
        assert!(sampled_subset(&rb, &rb, 16).holds);

        let (a, p) = fixtures::wider_than_classic_three();
        let second = Region::DiscUnion(eigenpair_region(&a, &p).unwrap());
        let classic = Region::DiscUnion(classic_discs(&a, Axis::Columns));
        let check = sampled_subset(&second, &classic, DEFAULT_RESOLUTION);
        assert!(!check.holds);
        let w = check.witness.unwrap();
        assert!(second.contains(w) && !classic.contains(w));
    }

    #[test]
    fn region_json_schema() {
        let r = Region::Intersection { parts: vec![single(1.0, 2.0)] };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"intersection","parts":[{"kind":"disc_union","discs":[{"center":1.0,"radius":2.0}]}]}"#
        );
        let back: Region = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    fn arb_disc_union() -> impl Strategy<Value = Region> {
        proptest::collection::vec((-20i32..20, 0i32..10), 1..5).prop_map(|v| {
            Region::DiscUnion(DiscUnion {
                discs: v.into_iter().map(|(c, r)| Disc::new(f64::from(c), f64::from(r))).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn membership_is_monotone(
            a in arb_disc_union(),
            b in arb_disc_union(),
            re in -30.0f64..30.0,
            im in -15.0f64..15.0,
        ) {
            let z = ComplexPoint::new(re, im);
            let inter = Region::Intersection { parts: vec![a.clone(), b.clone()] };
            if inter.contains(z) {
                prop_assert!(a.contains(z) && b.contains(z));
            }
            if let (Region::DiscUnion(ua), Region::DiscUnion(_)) = (&a, &b) {
                for d in &ua.discs {
                    if d.contains(z) {
                        prop_assert!(a.contains(z));
                    }
                }
            }
            if a.contains(z) {
                let bound = max_abs(&a).value;
                prop_assert!(z.abs() <= bound * (1.0 + 1e-12) + 1e-9);
            }
        }

        #[test]
        fn sampled_subset_is_reflexive_and_witnesses_are_real(
            a in arb_disc_union(),
            b in arb_disc_union(),
        ) {
            prop_assert!(sampled_subset(&a, &a, 16).holds);
            let check = sampled_subset(&a, &b, 16);
            if let Some(w) = check.witness {
                prop_assert!(a.contains(w) && !b.contains(w));
            }
        }
    }
}
