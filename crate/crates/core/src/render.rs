//! Deterministic SVG output for layered regions and eigenvalue markers.
//!
//! Disc unions are emitted as circles. Every other region is rasterized with
//! marching squares on its membership margin: interior runs of a grid row
//! become rectangles and boundary cells become interpolated polygons.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, Region};
use crate::matrix::ComplexPoint;

pub const GRAY: &str = "#c8c8c8";
pub const BLUE: &str = "#4477dd";
pub const TURQUOISE: &str = "#33ccbb";
pub const BLACK: &str = "#000000";

/// Default marching-squares grid size.
pub const DEFAULT_RESOLUTION: usize = 256;
pub const DEFAULT_SIZE_PX: u32 = 600;

const POINT_RADIUS_PX: f64 = 3.0;
const ISOLATED_RADIUS_PX: f64 = 2.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub region: Region,
    pub fill: String,
    pub opacity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub at: ComplexPoint,
    pub color: String,
}

/// Paint order is layer order, with markers on top.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub layers: Vec<Layer>,
    pub points: Vec<Marker>,
    /// `None` fits the layers and points with 10% padding.
    pub viewport: Option<BoundingBox>,
    pub size_px: u32,
    pub resolution: usize,
}

impl Default for Scene {
    fn default() -> Self {
        Self {
            layers: Vec::new(),
            points: Vec::new(),
            viewport: None,
            size_px: DEFAULT_SIZE_PX,
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn layer(mut self, region: Region, fill: &str, opacity: f64) -> Self {
        self.layers.push(Layer { region, fill: fill.to_string(), opacity });
        self
    }

    pub fn point(mut self, at: ComplexPoint) -> Self {
        self.points.push(Marker { at, color: BLACK.to_string() });
        self
    }

    pub fn points(self, pts: impl IntoIterator<Item = ComplexPoint>) -> Self {
        pts.into_iter().fold(self, Scene::point)
    }

    pub fn viewport(mut self, bb: BoundingBox) -> Self {
        self.viewport = Some(bb);
        self
    }

    pub fn resolution(mut self, r: usize) -> Self {
        self.resolution = r;
        self
    }

    pub fn size_px(mut self, s: u32) -> Self {
        self.size_px = s;
        self
    }

    /// Union of layer boxes and markers, padded 10%. Zero extents are widened.
    pub fn auto_viewport(&self) -> BoundingBox {
        let boxes = self
            .layers
            .iter()
            .filter_map(|l| l.region.bounding_box())
            .chain(self.points.iter().map(|p| BoundingBox::around(p.at, 0.0)));
        let bb =
            boxes.reduce(BoundingBox::union).unwrap_or(BoundingBox::around(ComplexPoint::real(0.0), 1.0));
        let (w, h) = (bb.width(), bb.height());
        let side = w.max(h).max(1.0);
        let (cx, cy) = (0.5 * (bb.x_min + bb.x_max), 0.5 * (bb.y_min + bb.y_max));
        let (hw, hh) = (0.5 * if w > 0.0 { w } else { side }, 0.5 * if h > 0.0 { h } else { side });
        BoundingBox { x_min: cx - hw, x_max: cx + hw, y_min: cy - hh, y_max: cy + hh }.pad(0.1)
    }
}

/// Fixed three-decimal formatting without negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

struct Frame {
    bb: BoundingBox,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn x(&self, re: f64) -> f64 {
        (re - self.bb.x_min) * self.scale
    }

    fn y(&self, im: f64) -> f64 {
        (self.bb.y_max - im) * self.scale
    }
}

fn check_viewport(bb: &BoundingBox) -> Result<()> {
    let finite = [bb.x_min, bb.x_max, bb.y_min, bb.y_max].iter().all(|v| v.is_finite());
    if !finite || bb.width() <= 0.0 || bb.height() <= 0.0 {
        return Err(Error::Viewport(format!(
            "degenerate viewport [{}, {}] x [{}, {}]",
            bb.x_min, bb.x_max, bb.y_min, bb.y_max
        )));
    }
    Ok(())
}

/// Renders `scene` as an SVG 1.1 document.
pub fn render_svg(scene: &Scene) -> Result<String> {
    let bb = scene.viewport.unwrap_or_else(|| scene.auto_viewport());
    check_viewport(&bb)?;
    if scene.size_px == 0 {
        return Err(Error::Viewport("size_px must be positive".into()));
    }
    if scene.resolution < 2 {
        return Err(Error::Viewport("resolution must be at least 2".into()));
    }
    let scale = f64::from(scene.size_px) / bb.width();
    let frame =
        Frame { bb, scale, width: f64::from(scene.size_px), height: (bb.height() * scale).round().max(1.0) };

    let mut out = String::new();
    let (w, h) = (num(frame.width), num(frame.height));
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);

    for layer in &scene.layers {
        let _ =
            writeln!(out, r#"<g fill="{}" fill-opacity="{}" stroke="none">"#, layer.fill, num(layer.opacity));
        draw_region(&mut out, &layer.region, &frame, scene.resolution);
        out.push_str("</g>\n");
    }

    draw_axes(&mut out, &frame);

    for p in &scene.points {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            num(frame.x(p.at.re)),
            num(frame.y(p.at.im)),
            num(POINT_RADIUS_PX),
            p.color
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn draw_axes(out: &mut String, f: &Frame) {
    let style = r##"stroke="#555555" stroke-width="1""##;
    if f.bb.y_min <= 0.0 && 0.0 <= f.bb.y_max {
        let y = num(f.y(0.0));
        let _ = writeln!(out, r#"<line x1="0.000" y1="{y}" x2="{}" y2="{y}" {style}/>"#, num(f.width));
    }
    if f.bb.x_min <= 0.0 && 0.0 <= f.bb.x_max {
        let x = num(f.x(0.0));
        let _ = writeln!(out, r#"<line x1="{x}" y1="0.000" x2="{x}" y2="{}" {style}/>"#, num(f.height));
    }
}

fn draw_region(out: &mut String, region: &Region, f: &Frame, resolution: usize) {
    if let Region::DiscUnion(u) = region {
        for d in &u.discs {
            if d.radius == 0.0 {
                dot(out, f, d.center);
            } else {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                    num(f.x(d.center)),
                    num(f.y(0.0)),
                    num(d.radius * f.scale)
                );
            }
        }
        return;
    }
    let path = march(region, f, resolution);
    if !path.is_empty() {
        let _ = writeln!(out, r#"<path d="{path}"/>"#);
    }
    for c in isolated_points(region) {
        dot(out, f, c);
    }
}

fn dot(out: &mut String, f: &Frame, re: f64) {
    let _ = writeln!(
        out,
        r#"<circle cx="{}" cy="{}" r="{}"/>"#,
        num(f.x(re)),
        num(f.y(0.0)),
        num(ISOLATED_RADIUS_PX)
    );
}

/// Foci of point-like ovals and zero-radius discs that the region contains.
/// A grid generally misses these, so they are drawn as dots.
fn isolated_points(region: &Region) -> Vec<f64> {
    fn collect(r: &Region, acc: &mut Vec<f64>) {
        match r {
            Region::DiscUnion(u) => acc.extend(u.discs.iter().filter(|d| d.radius == 0.0).map(|d| d.center)),
            Region::PairwiseIntersectionUnion(s) => {
                for (a, b) in &s.pairs {
                    acc.extend([a, b].iter().filter(|d| d.radius == 0.0).map(|d| d.center));
                }
            }
            Region::CassiniUnion(c) => {
                for o in c.ovals.iter().filter(|o| o.is_degenerate()) {
                    acc.push(o.c1);
                    acc.push(o.c2);
                }
            }
            Region::Intersection { parts } => parts.iter().for_each(|p| collect(p, acc)),
        }
    }
    let mut acc = Vec::new();
    collect(region, &mut acc);
    acc.sort_by(f64::total_cmp);
    acc.dedup();
    acc.retain(|&c| region.contains(ComplexPoint::real(c)));
    acc
}

/// Filled contour of `{margin <= 0}` as SVG path data.
fn march(region: &Region, f: &Frame, res: usize) -> String {
    let nx = res;
    let ny = ((res as f64) * f.height / f.width).round().max(2.0) as usize;
    let xs: Vec<f64> = (0..=nx).map(|i| f.bb.x_min + f.bb.width() * i as f64 / nx as f64).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| f.bb.y_max - f.bb.height() * j as f64 / ny as f64).collect();
    let field: Vec<Vec<f64>> =
        ys.iter().map(|&y| xs.iter().map(|&x| region.margin(ComplexPoint::new(x, y))).collect()).collect();

    let mut d = String::new();
    let poly = |pts: &[(f64, f64)], d: &mut String| {
        for (k, &(x, y)) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { "L" }, num(f.x(x)), num(f.y(y)));
        }
        d.push('Z');
    };

    for j in 0..ny {
        let mut run_start: Option<usize> = None;
        for i in 0..=nx {
            let full = i < nx
                && [field[j][i], field[j][i + 1], field[j + 1][i], field[j + 1][i + 1]]
                    .iter()
                    .all(|&v| v <= 0.0);
            if full {
                run_start.get_or_insert(i);
                continue;
            }
            if let Some(s) = run_start.take() {
                poly(&[(xs[s], ys[j]), (xs[i], ys[j]), (xs[i], ys[j + 1]), (xs[s], ys[j + 1])], &mut d);
            }
            if i == nx {
                break;
            }
            // Corners counter-clockwise in screen order: top-left, top-right,
            // bottom-right, bottom-left.
            let corners = [
                (xs[i], ys[j], field[j][i]),
                (xs[i + 1], ys[j], field[j][i + 1]),
                (xs[i + 1], ys[j + 1], field[j + 1][i + 1]),
                (xs[i], ys[j + 1], field[j + 1][i]),
            ];
            let pts = cell_polygon(&corners);
            if pts.len() >= 3 {
                poly(&pts, &mut d);
            }
        }
    }
    d
}

/// Clips one grid cell to `{value <= 0}` with linear interpolation along edges.
fn cell_polygon(c: &[(f64, f64, f64); 4]) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(8);
    for k in 0..4 {
        let (x0, y0, v0) = c[k];
        let (x1, y1, v1) = c[(k + 1) % 4];
        let in0 = v0 <= 0.0;
        if in0 {
            pts.push((x0, y0));
        }
        if in0 != (v1 <= 0.0) {
            let t = v0 / (v0 - v1);
            pts.push((x0 + t * (x1 - x0), y0 + t * (y1 - y0)));
        }
    }
    pts
}
