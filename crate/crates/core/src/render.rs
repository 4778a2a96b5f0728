//! SVG output: the grid of selected scatterplots, a grouped score chart, and
//! a debug view of a pruned mesh.
//!
//! Documents are assembled as plain text with fixed-precision coordinates so
//! identical inputs produce identical bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::data::{Dataset, ScatterplotSpec};
use crate::geometry::TriMesh;
use crate::metrics::ScoreVector;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("nothing selected to render")]
    EmptySelection,
    #[error("invalid plot style: {0}")]
    InvalidStyle(String),
    #[error("scatterplot id {0} is out of range")]
    UnknownPlot(usize),
}

const CLASS0: &str = "#1f4fd1";
const CLASS1: &str = "#d62728";
const CYCLE: [&str; 8] = ["#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];
const SCORE_COLORS: [&str; 4] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759"];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotStyle {
    /// Side of each square plot area, in pixels.
    pub plot_size: f64,
    pub margin: f64,
    pub point_radius: f64,
    pub columns: usize,
}

impl Default for PlotStyle {
    fn default() -> Self {
        Self { plot_size: 200.0, margin: 36.0, point_radius: 1.8, columns: 4 }
    }
}

impl PlotStyle {
    pub fn validate(&self) -> Result<(), RenderError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.plot_size) || !ok(self.margin) || !ok(self.point_radius) || self.columns == 0 {
            return Err(RenderError::InvalidStyle(format!("{self:?}")));
        }
        Ok(())
    }

    /// Blue for the first class, red for the second, then a fixed cycle.
    pub fn class_color(&self, class: usize) -> &'static str {
        match class {
            0 => CLASS0,
            1 => CLASS1,
            c => CYCLE[(c - 2) % CYCLE.len()],
        }
    }

    fn cell(&self) -> f64 {
        self.plot_size + 2.0 * self.margin
    }

    /// Pixel position of a normalized point inside the plot at grid slot `slot`.
    pub fn point_position(&self, slot: usize, x: f64, y: f64) -> (f64, f64) {
        let (left, top) = self.plot_origin(slot);
        (left + x * self.plot_size, top + (1.0 - y) * self.plot_size)
    }

    fn plot_origin(&self, slot: usize) -> (f64, f64) {
        let (row, col) = (slot / self.columns, slot % self.columns);
        (col as f64 * self.cell() + self.margin, row as f64 * self.cell() + self.margin)
    }
}

pub fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// One sub-plot per selected scatterplot, in rank order, filled row by row.
pub fn render_grid(
    d: &Dataset,
    specs: &[ScatterplotSpec],
    scores: &[ScoreVector],
    selected: &[usize],
    style: &PlotStyle,
) -> Result<String, RenderError> {
    style.validate()?;
    if selected.is_empty() {
        return Err(RenderError::EmptySelection);
    }
    if let Some(&bad) = selected.iter().find(|&&id| id >= specs.len() || id >= scores.len()) {
        return Err(RenderError::UnknownPlot(bad));
    }
    let nd = d.normalize();
    let cols = style.columns.min(selected.len());
    let rows = selected.len().div_ceil(style.columns);
    let mut out = String::new();
    header(&mut out, cols as f64 * style.cell(), rows as f64 * style.cell());

    for (slot, &id) in selected.iter().enumerate() {
        let spec = &specs[id];
        let s = &scores[id];
        let (left, top) = style.plot_origin(slot);
        let size = style.plot_size;
        let _ = writeln!(out, r#"<g id="plot-{id}">"#);
        let _ = writeln!(
            out,
            r##"<rect x="{left:.2}" y="{top:.2}" width="{size:.2}" height="{size:.2}" fill="none" stroke="#444" stroke-width="1"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">s1 {:.2} / s2 {:.2} / s3 {:.2} / s4 {:.2}</text>"#,
            left + size / 2.0,
            top - 8.0,
            s.s1,
            s.s2,
            s.s3,
            s.s4
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            left + size / 2.0,
            top + size + 18.0,
            escape_xml(nd.dim_name(spec.x_dim))
        );
        let (lx, ly) = (left - 10.0, top + size / 2.0);
        let _ = writeln!(
            out,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 {lx:.2} {ly:.2})">{}</text>"#,
            escape_xml(nd.dim_name(spec.y_dim))
        );
        let xs = nd.column(spec.x_dim);
        let ys = nd.column(spec.y_dim);
        for ((&x, &y), &label) in xs.iter().zip(ys).zip(nd.labels()) {
            let (px, py) = style.point_position(slot, x, y);
            let _ = writeln!(
                out,
                r#"<circle cx="{px:.2}" cy="{py:.2}" r="{:.2}" fill="{}" fill-opacity="0.7"/>"#,
                style.point_radius,
                style.class_color(label)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Grouped bars of s1..s4 for each selected scatterplot on a `[0, 1]` axis.
pub fn render_score_chart(scores: &[ScoreVector], selected: &[usize]) -> Result<String, RenderError> {
    if let Some(&bad) = selected.iter().find(|&&id| id >= scores.len()) {
        return Err(RenderError::UnknownPlot(bad));
    }
    const BAR: f64 = 10.0;
    const GAP: f64 = 14.0;
    const HEIGHT: f64 = 200.0;
    const LEFT: f64 = 40.0;
    const TOP: f64 = 30.0;
    let group = 4.0 * BAR + GAP;
    let width = LEFT + group * selected.len().max(1) as f64 + 20.0;
    let mut out = String::new();
    header(&mut out, width, TOP + HEIGHT + 40.0);
    let base = TOP + HEIGHT;
    let _ = writeln!(
        out,
        r##"<line x1="{LEFT:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="#000"/>"##,
        width - 20.0
    );
    let _ = writeln!(out, r##"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{base:.2}" stroke="#000"/>"##);
    for (tick, label) in [(0.0, "0"), (0.5, "0.5"), (1.0, "1")] {
        let y = base - tick * HEIGHT;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{label}</text>"#,
            LEFT - 4.0,
            y + 3.0
        );
    }
    for (k, color) in SCORE_COLORS.iter().enumerate() {
        let x = LEFT + k as f64 * 40.0;
        let _ = writeln!(out, r#"<rect x="{x:.2}" y="8.00" width="8.00" height="8.00" fill="{color}"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="16.00" font-size="10">s{}</text>"#, x + 11.0, k + 1);
    }
    for (slot, &id) in selected.iter().enumerate() {
        let gx = LEFT + GAP / 2.0 + slot as f64 * group;
        let _ = writeln!(out, r#"<g id="scores-{id}">"#);
        for (k, value) in scores[id].as_array().into_iter().enumerate() {
            let h = value.clamp(0.0, 1.0) * HEIGHT;
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{BAR:.2}" height="{h:.2}" fill="{}"/>"#,
                gx + k as f64 * BAR,
                base - h,
                SCORE_COLORS[k]
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{id}</text>"#,
            gx + 2.0 * BAR,
            base + 14.0
        );
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Kept mesh edges in grey, boundary edges in red, on a `size`-pixel square.
pub fn render_mesh(mesh: &TriMesh, size: f64) -> String {
    let pad = 10.0;
    let map = |p: [f64; 2]| (pad + p[0] * size, pad + (1.0 - p[1]) * size);
    let mut out = String::new();
    header(&mut out, size + 2.0 * pad, size + 2.0 * pad);
    for (edges, color) in [(&mesh.kept_edges, "#999"), (&mesh.boundary_edges, "#d62728")] {
        for e in edges {
            let (x1, y1) = map(mesh.points[e.a]);
            let (x2, y2) = map(mesh.points[e.b]);
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="0.6"/>"#
            );
        }
    }
    for &p in &mesh.points {
        let (x, y) = map(p);
        let _ = writeln!(out, r##"<circle cx="{x:.2}" cy="{y:.2}" r="1.20" fill="#000"/>"##);
    }
    out.push_str("</svg>\n");
    out
}
