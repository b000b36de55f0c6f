//! SVG rendering of an iterated hexagon, its centroids and the centroid line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::exact_poly::{self, PlanePoint, Polygon};
use crate::verify;

/// The hexagon drawn in the reference figure, with decimal inputs written as
/// fractions.
pub const EXAMPLE_HEXAGON_DOCUMENT: &str = include_str!("../../assets/example_hexagon.json");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FigureError {
    #[error("figures need a hexagon, got {0} vertices")]
    WrongSize(usize),
    #[error("invalid figure spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub steps: usize,
    pub show_line: bool,
    pub show_centroids: bool,
    /// Stroke opacity of the first and last iterate; linear in between.
    pub stroke_fade: (f64, f64),
    pub width: u32,
    pub height: u32,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self { steps: 13, show_line: true, show_centroids: true, stroke_fade: (1.0, 0.1), width: 800, height: 800 }
    }
}

impl FigureSpec {
    pub fn validate(&self) -> Result<(), FigureError> {
        if self.steps < 1 {
            return Err(FigureError::InvalidSpec("steps must be at least 1".into()));
        }
        let (a, b) = self.stroke_fade;
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Err(FigureError::InvalidSpec("opacities must lie in [0, 1]".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(FigureError::InvalidSpec("canvas must be non-empty".into()));
        }
        Ok(())
    }
}

/// World-to-pixel map fitted to a bounding box, y axis pointing up.
struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
    width: f64,
    height: f64,
}

impl Viewport {
    fn fit(points: &[(f64, f64)], width: u32, height: u32) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let mut span = (max_x - min_x).max(max_y - min_y);
        if span.is_nan() || span <= 0.0 {
            span = 2.0;
        }
        let pad = 0.05 * span;
        let (cx, cy) = ((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
        let half_w = (max_x - min_x).max(0.0) / 2.0 + pad;
        let half_h = (max_y - min_y).max(0.0) / 2.0 + pad;
        let (half_w, half_h) = (half_w.max(pad), half_h.max(pad));
        let (width, height) = (width as f64, height as f64);
        let scale = (width / (2.0 * half_w)).min(height / (2.0 * half_h));
        Self {
            min_x: cx - half_w,
            max_y: cy + half_h,
            scale,
            off_x: (width - 2.0 * half_w * scale) / 2.0,
            off_y: (height - 2.0 * half_h * scale) / 2.0,
            width,
            height,
        }
    }

    fn to_px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (self.off_x + (x - self.min_x) * self.scale, self.off_y + (self.max_y - y) * self.scale)
    }

    fn to_world(&self, (px, py): (f64, f64)) -> (f64, f64) {
        (self.min_x + (px - self.off_x) / self.scale, self.max_y - (py - self.off_y) / self.scale)
    }

    /// Clips the infinite line `p + t·d` to the visible rectangle.
    fn clip_line(&self, p: (f64, f64), d: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
        let (x0, y1) = self.to_world((0.0, 0.0));
        let (x1, y0) = self.to_world((self.width, self.height));
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (start, delta, min, max) in [(p.0, d.0, x0, x1), (p.1, d.1, y0, y1)] {
            if delta == 0.0 {
                if start < min || start > max {
                    return None;
                }
                continue;
            }
            let (a, b) = ((min - start) / delta, (max - start) / delta);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo < hi).then_some(((p.0 + lo * d.0, p.1 + lo * d.1), (p.0 + hi * d.0, p.1 + hi * d.1)))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Renders `steps + 1` iterates of a hexagon as an SVG 1.1 document.
///
/// Centroids are computed exactly and converted to floats for drawing only.
/// The line goes through the first defined `G_n` (`n ≥ 1`) and the vertex
/// centroid, and is omitted when those coincide.
pub fn render_figure(hexagon: &Polygon, spec: &FigureSpec) -> Result<String, FigureError> {
    if hexagon.len() != 6 {
        return Err(FigureError::WrongSize(hexagon.len()));
    }
    spec.validate()?;

    let iterates = exact_poly::iterate(hexagon, spec.steps);
    let float_iterates: Vec<Vec<(f64, f64)>> =
        iterates.iter().map(|p| p.vertices().iter().map(PlanePoint::to_f64).collect()).collect();
    let centroids: Vec<Option<PlanePoint>> = iterates.iter().map(|p| exact_poly::centroid(p).ok()).collect();

    let all: Vec<(f64, f64)> = float_iterates.iter().flatten().copied().collect();
    let view = Viewport::fit(&all, spec.width, spec.height);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, spec.width, spec.height);

    let _ = writeln!(svg, r#"<g fill="none" stroke="gray" stroke-width="1.5" stroke-linejoin="round">"#);
    let (first, last) = spec.stroke_fade;
    for (n, verts) in float_iterates.iter().enumerate() {
        let t = n as f64 / spec.steps as f64;
        let opacity = first + (last - first) * t;
        let points: Vec<String> = verts
            .iter()
            .map(|&v| {
                let (x, y) = view.to_px(v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(svg, r#"<polygon points="{}" stroke-opacity="{}"/>"#, points.join(" "), num(opacity));
    }
    let _ = writeln!(svg, "</g>");

    if spec.show_centroids {
        let _ = writeln!(svg, r#"<g fill="black" stroke="none">"#);
        for g in centroids.iter().flatten() {
            let (x, y) = view.to_px(g.to_f64());
            let _ = writeln!(svg, r#"<circle cx="{}" cy="{}" r="2.5"/>"#, num(x), num(y));
        }
        let _ = writeln!(svg, "</g>");
    }

    if spec.show_line {
        let limit = exact_poly::vertex_centroid(hexagon);
        let through = centroids.iter().skip(1).flatten().find(|g| **g != limit);
        if let Some(g) = through {
            let d = (g - &limit).to_f64();
            if let Some((a, b)) = view.clip_line(limit.to_f64(), d) {
                let (a, b) = (view.to_px(a), view.to_px(b));
                let _ = writeln!(
                    svg,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
                    num(a.0),
                    num(a.1),
                    num(b.0),
                    num(b.1)
                );
            }
        }
    }

    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

/// Sanity check that the drawn line is the verified centroid line.
pub fn line_is_verified(hexagon: &Polygon, steps: usize) -> bool {
    verify::verify_hexagon_theorem(hexagon, steps.max(3)).is_ok_and(|r| r.passed())
}
