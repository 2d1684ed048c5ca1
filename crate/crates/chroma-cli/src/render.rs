//! SVG rendering of scenes.
//!
//! Strictly display-side: every coordinate here is a lossy `f64` shadow of
//! the exact values, conics are sampled pointwise (default 512 samples per
//! sweep), and nothing computed here flows back into a report. Objects
//! whose coordinates have no real embedding (prime fields, complex towers)
//! are silently left out of the picture.
//!
//! The plot window comes from the scene's `window` entry and defaults to
//! `[-8, 8]²`. A window with no area is refused.

use std::fmt::Write as _;

use serde_json::Value as Json;

use chromogeometry::conics::Conic;
use chromogeometry::metric::{Line, Point};
use chromogeometry::{Color, Field};

use crate::scene::{Report, Scene, SceneObject, Window};

/// Rendering refusals.
#[derive(Debug)]
pub enum RenderError {
    /// The declared window has no area.
    EmptyWindow,
}

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RenderError::EmptyWindow => write!(f, "the plot window has no area"),
        }
    }
}

impl std::error::Error for RenderError {}

const CANVAS: f64 = 640.0;

fn stroke(color: Color) -> &'static str {
    match color {
        Color::Blue => "#2563eb",
        Color::Red => "#dc2626",
        Color::Green => "#16a34a",
    }
}

const NEUTRAL: &str = "#334155";
const FAINT: &str = "#cbd5e1";

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    samples: usize,
}

impl Frame {
    fn new(window: &Window) -> Result<Frame, RenderError> {
        let ok = window.max.0 > window.min.0
            && window.max.1 > window.min.1
            && window.max.0.is_finite()
            && window.max.1.is_finite()
            && window.min.0.is_finite()
            && window.min.1.is_finite();
        if !ok {
            return Err(RenderError::EmptyWindow);
        }
        Ok(Frame {
            min: window.min,
            max: window.max,
            samples: window.samples,
        })
    }

    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let sx = CANVAS / (self.max.0 - self.min.0);
        let sy = CANVAS / (self.max.1 - self.min.1);
        ((x - self.min.0) * sx, CANVAS - (y - self.min.1) * sy)
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        x >= self.min.0 && x <= self.max.0 && y >= self.min.1 && y <= self.max.1
    }

    fn span(&self) -> (f64, f64) {
        (self.max.0 - self.min.0, self.max.1 - self.min.1)
    }

    /// Clip the infinite line `ax + by + c = 0` to the window; the result
    /// is a world-coordinate segment.
    fn clip_line(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let n2 = a * a + b * b;
        if n2 == 0.0 || !n2.is_finite() {
            return None;
        }
        let cx = (self.min.0 + self.max.0) / 2.0;
        let cy = (self.min.1 + self.max.1) / 2.0;
        let shift = (a * cx + b * cy + c) / n2;
        let base = (cx - a * shift, cy - b * shift);
        let (w, h) = self.span();
        let reach = 2.0 * (w + h);
        let len = n2.sqrt();
        let dir = (-b / len, a / len);
        self.clip_segment(
            (base.0 - reach * dir.0, base.1 - reach * dir.1),
            (base.0 + reach * dir.0, base.1 + reach * dir.1),
        )
    }

    /// Liang–Barsky segment clipping.
    fn clip_segment(
        &self,
        p0: (f64, f64),
        p1: (f64, f64),
    ) -> Option<((f64, f64), (f64, f64))> {
        let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
        let mut t0 = 0.0f64;
        let mut t1 = 1.0f64;
        let checks = [
            (-dx, p0.0 - self.min.0),
            (dx, self.max.0 - p0.0),
            (-dy, p0.1 - self.min.1),
            (dy, self.max.1 - p0.1),
        ];
        for (p, q) in checks {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
                continue;
            }
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((
            (p0.0 + t0 * dx, p0.1 + t0 * dy),
            (p0.0 + t1 * dx, p0.1 + t1 * dy),
        ))
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            other => out.push(other),
        }
    }
    out
}

fn point_f64(p: &Point) -> Option<(f64, f64)> {
    Some((p.x.to_f64_lossy()?, p.y.to_f64_lossy()?))
}

fn line_f64(l: &Line) -> Option<(f64, f64, f64)> {
    let (a, b, c) = l.coefficients();
    Some((a.to_f64_lossy()?, b.to_f64_lossy()?, c.to_f64_lossy()?))
}

fn element_f64(field: &Field, json: &Json) -> Option<f64> {
    field.parse_element(json).ok()?.to_f64_lossy()
}

fn json_point_f64(field: &Field, json: &Json) -> Option<(f64, f64)> {
    let arr = json.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    Some((element_f64(field, &arr[0])?, element_f64(field, &arr[1])?))
}

fn json_line_f64(field: &Field, json: &Json) -> Option<(f64, f64, f64)> {
    let arr = json.as_array()?;
    if arr.len() != 3 {
        return None;
    }
    Some((
        element_f64(field, &arr[0])?,
        element_f64(field, &arr[1])?,
        element_f64(field, &arr[2])?,
    ))
}

struct Svg {
    body: String,
    frame: Frame,
}

impl Svg {
    fn dot(&mut self, world: (f64, f64), fill: &str, radius: f64) {
        if !self.frame.contains(world) {
            return;
        }
        let (x, y) = self.frame.px(world);
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{x:.2}" cy="{y:.2}" r="{radius}" fill="{fill}"/>"#
        );
    }

    fn label(&mut self, world: (f64, f64), text: &str) {
        if !self.frame.contains(world) {
            return;
        }
        let (x, y) = self.frame.px(world);
        let _ = writeln!(
            self.body,
            r##"  <text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif" fill="#475569">{}</text>"##,
            x + 6.0,
            y - 6.0,
            escape(text)
        );
    }

    fn segment(&mut self, p0: (f64, f64), p1: (f64, f64), color: &str, dashed: bool) {
        let (a, b) = (self.frame.px(p0), self.frame.px(p1));
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.4"{dash}/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    fn infinite_line(&mut self, a: f64, b: f64, c: f64, color: &str, dashed: bool) {
        if let Some((p0, p1)) = self.frame.clip_line(a, b, c) {
            self.segment(p0, p1, color, dashed);
        }
    }

    fn polyline(&mut self, points: &[(f64, f64)], color: &str) {
        if points.len() < 2 {
            return;
        }
        let mut coords = String::new();
        for &p in points {
            let (x, y) = self.frame.px(p);
            let _ = write!(coords, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#,
            coords.trim_end()
        );
    }

    fn polygon(&mut self, points: &[(f64, f64)], color: &str) {
        if points.len() < 3 {
            return;
        }
        let mut coords = String::new();
        for &p in points {
            let (x, y) = self.frame.px(p);
            let _ = write!(coords, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"  <polygon points="{}" fill="none" stroke="{color}" stroke-width="1.1" stroke-dasharray="3 3"/>"#,
            coords.trim_end()
        );
    }
}

fn conic_f64(k: &Conic) -> Option<[f64; 6]> {
    let mut c = [0.0f64; 6];
    for (slot, value) in c.iter_mut().zip(k.coefficients().iter()) {
        *slot = value.to_f64_lossy()?;
    }
    Some(c)
}

/// Sample a conic into window-clipped polylines: an x-sweep of both root
/// branches plus a y-sweep to cover near-vertical arcs.
fn conic_paths(c: [f64; 6], frame: &Frame) -> Vec<Vec<(f64, f64)>> {
    let [a2, b2, c2, d1, e1, f0] = c;
    let mut paths: Vec<Vec<(f64, f64)>> = Vec::new();
    let (w, h) = frame.span();

    let mut sweep = |horizontal: bool| {
        // Solve for the other coordinate along an axis sweep.
        let (qa, lo, hi, other_span) = if horizontal {
            (c2, frame.min.0, frame.max.0, h)
        } else {
            (a2, frame.min.1, frame.max.1, w)
        };
        for branch in 0..2 {
            let mut current: Vec<(f64, f64)> = Vec::new();
            let mut flush = |current: &mut Vec<(f64, f64)>| {
                if current.len() >= 2 {
                    paths.push(std::mem::take(current));
                } else {
                    current.clear();
                }
            };
            for i in 0..=frame.samples {
                let t = lo + (hi - lo) * (i as f64) / (frame.samples as f64);
                let (qb, qc) = if horizontal {
                    (b2 * t + e1, a2 * t * t + d1 * t + f0)
                } else {
                    (b2 * t + d1, c2 * t * t + e1 * t + f0)
                };
                let root = if qa.abs() > 1e-12 {
                    let disc = qb * qb - 4.0 * qa * qc;
                    if disc < 0.0 {
                        flush(&mut current);
                        continue;
                    }
                    let s = disc.sqrt();
                    if branch == 0 {
                        (-qb - s) / (2.0 * qa)
                    } else {
                        (-qb + s) / (2.0 * qa)
                    }
                } else if qb.abs() > 1e-12 {
                    if branch == 1 {
                        flush(&mut current);
                        continue;
                    }
                    -qc / qb
                } else {
                    flush(&mut current);
                    continue;
                };
                if !root.is_finite() || root.abs() > 1e8 {
                    flush(&mut current);
                    continue;
                }
                let p = if horizontal { (t, root) } else { (root, t) };
                if let Some(&prev) = current.last() {
                    let jump = if horizontal {
                        (p.1 - prev.1).abs()
                    } else {
                        (p.0 - prev.0).abs()
                    };
                    if jump > other_span / 2.0 {
                        flush(&mut current);
                    }
                }
                current.push(p);
            }
            flush(&mut current);
        }
    };
    sweep(true);
    sweep(false);
    paths
}

/// Render a scene and its computed report to an SVG 1.1 document. The
/// report is only mined for decoration coordinates (foci, directrices,
/// diagonals, corner quadrilaterals) — they are parsed back from the exact
/// serialized values, not recomputed.
pub fn render_svg(scene: &Scene, report: &Report) -> Result<String, RenderError> {
    let window = scene.window.unwrap_or_default();
    let frame = Frame::new(&window)?;
    let mut svg = Svg {
        body: String::new(),
        frame,
    };

    // Feint axes for orientation.
    svg.infinite_line(0.0, 1.0, 0.0, FAINT, false);
    svg.infinite_line(1.0, 0.0, 0.0, FAINT, false);

    // Scene objects.
    for (name, object) in &scene.objects {
        match object {
            SceneObject::Point(p) => {
                if let Some(world) = point_f64(p) {
                    svg.dot(world, NEUTRAL, 3.5);
                    svg.label(world, name);
                }
            }
            SceneObject::Line(l) => {
                if let Some((a, b, c)) = line_f64(l) {
                    svg.infinite_line(a, b, c, NEUTRAL, false);
                }
            }
            SceneObject::Conic(k) => {
                if let Some(c) = conic_f64(k) {
                    for path in conic_paths(c, &svg.frame) {
                        svg.polyline(&path, "#0f172a");
                    }
                }
            }
            SceneObject::Triangle(refs) => {
                let corners: Vec<(f64, f64)> = refs
                    .iter()
                    .filter_map(|r| match scene.object(r) {
                        Some(SceneObject::Point(p)) => point_f64(p),
                        _ => None,
                    })
                    .collect();
                if corners.len() == 3 {
                    for i in 0..3 {
                        svg.segment(corners[i], corners[(i + 1) % 3], NEUTRAL, false);
                    }
                }
            }
        }
    }

    // Decorations from analysis results.
    for (query, result) in scene.queries.iter().zip(&report.results) {
        let Ok(value) = &result.outcome else { continue };
        match query.op.as_str() {
            "grammola" => decorate_grammola(&mut svg, query.color, value),
            "quadrola" => decorate_quadrola(&mut svg, query.color, value),
            "parabola_chromatics" => decorate_chromatics(&mut svg, &scene.field, value),
            _ => {}
        }
    }

    let mut doc = String::new();
    let _ = writeln!(
        doc,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(
        doc,
        r##"  <rect width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>"##
    );
    doc.push_str(&svg.body);
    doc.push_str("</svg>\n");
    Ok(doc)
}

fn tower_of(value: &Json) -> Option<Field> {
    Field::from_json(value.get("tower")?).ok()
}

fn decorate_grammola(svg: &mut Svg, color: Option<Color>, value: &Json) {
    let Some(tower) = tower_of(value) else { return };
    let color = color.map(stroke).unwrap_or(NEUTRAL);
    let Some(diagonals) = value.get("diagonals").and_then(Json::as_array) else {
        return;
    };
    for diagonal in diagonals {
        if let Some((a, b, c)) = json_line_f64(&tower, diagonal) {
            svg.infinite_line(a, b, c, color, false);
        }
    }
}

fn decorate_quadrola(svg: &mut Svg, color: Option<Color>, value: &Json) {
    let Some(tower) = tower_of(value) else { return };
    let color = color.map(stroke).unwrap_or(NEUTRAL);
    if let Some(points) = value.get("directrix_points").and_then(Json::as_array) {
        for p in points {
            if let Some(world) = json_point_f64(&tower, p) {
                svg.dot(world, color, 2.5);
            }
        }
    }
    let Some(pairs) = value.get("pairs").and_then(Json::as_array) else {
        return;
    };
    let mut foci: Vec<Vec<(f64, f64)>> = Vec::new();
    for pair in pairs {
        let mut these = Vec::new();
        if let Some(fs) = pair.get("foci").and_then(Json::as_array) {
            for f in fs {
                if let Some(world) = json_point_f64(&tower, f) {
                    svg.dot(world, color, 4.5);
                    these.push(world);
                }
            }
        }
        if let Some(ds) = pair.get("directrices").and_then(Json::as_array) {
            for d in ds {
                if let Some((a, b, c)) = json_line_f64(&tower, d) {
                    svg.infinite_line(a, b, c, color, true);
                }
            }
        }
        foci.push(these);
    }
    // The foci of the two pairs form a parallelogram; draw it when all
    // four corners embed.
    if foci.len() == 2 && foci[0].len() == 2 && foci[1].len() == 2 {
        let quad = [foci[0][0], foci[1][0], foci[0][1], foci[1][1]];
        svg.polygon(&quad, color);
    }
}

fn decorate_chromatics(svg: &mut Svg, field: &Field, value: &Json) {
    // The parabola itself is part of the result, not the scene; draw it.
    let curve = value.get("conic").and_then(Json::as_array).and_then(|arr| {
        if arr.len() != 6 {
            return None;
        }
        let mut c = [0.0f64; 6];
        for (slot, coeff) in c.iter_mut().zip(arr) {
            *slot = element_f64(field, coeff)?;
        }
        Some(c)
    });
    if let Some(c) = curve {
        for path in conic_paths(c, &svg.frame) {
            svg.polyline(&path, "#0f172a");
        }
    }
    if let Some(pairs) = value.get("pairs").and_then(Json::as_array) {
        for pair in pairs {
            let Some(color) = pair
                .get("color")
                .and_then(Json::as_str)
                .and_then(Color::parse)
            else {
                continue;
            };
            if let Some(world) = pair.get("focus").and_then(|f| json_point_f64(field, f)) {
                svg.dot(world, stroke(color), 4.5);
            }
            if let Some((a, b, c)) = pair.get("directrix").and_then(|d| json_line_f64(field, d)) {
                svg.infinite_line(a, b, c, stroke(color), true);
            }
        }
    }
    if let Some(vertices) = value.get("vertices").and_then(Json::as_array) {
        for v in vertices {
            if let Some(world) = json_point_f64(field, v) {
                svg.dot(world, NEUTRAL, 2.5);
            }
        }
    }
    // The shared axis, drawn through the first vertex.
    let axis = value
        .get("axis")
        .and_then(|a| json_point_f64(field, a));
    let through = value
        .get("vertices")
        .and_then(Json::as_array)
        .and_then(|vs| vs.first())
        .and_then(|v| json_point_f64(field, v));
    if let (Some((dx, dy)), Some((px, py))) = (axis, through) {
        // Direction (dx, dy) through (px, py): -dy·x + dx·y + (dy·px - dx·py) = 0.
        svg.infinite_line(-dy, dx, dy * px - dx * py, NEUTRAL, true);
    }
}
