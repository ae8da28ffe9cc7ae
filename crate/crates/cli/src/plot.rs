//! Disk and eigenvalue plots: a serializable [`PlotDocument`] and its SVG rendering.

use std::fmt::Write as _;

use halfdisk::disks::{self, Disk, RadiusKind};
use halfdisk::linalg::{self, ComplexMatrix};
use halfdisk::C64;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::input::Entry;

/// Side of the square SVG canvas in pixels.
pub const CANVAS: f64 = 1000.0;
/// Fraction of the viewport width left empty on each side.
pub const MARGIN: f64 = 0.06;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotEigenvalue {
    pub value: Entry,
    pub algebraic_count: usize,
    pub geometric_multiplicity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    /// Square box around every disk and point, padded by [`MARGIN`] per side.
    fn around(disks: &[Disk<f64>], points: &[C64]) -> Self {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |x: f64, y: f64, r: f64| {
            lo = (lo.0.min(x - r), lo.1.min(y - r));
            hi = (hi.0.max(x + r), hi.1.max(y + r));
        };
        for d in disks {
            grow(d.center.re, d.center.im, d.radius);
        }
        for z in points {
            grow(z.re, z.im, 0.0);
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (0.0, 0.0);
        }
        let (cx, cy) = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
        let mut half = ((hi.0 - lo.0).max(hi.1 - lo.1) / 2.0).max(0.5);
        half /= 1.0 - 2.0 * MARGIN;
        Self {
            x_min: cx - half,
            x_max: cx + half,
            y_min: cy - half,
            y_max: cy + half,
        }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x_min) / (self.x_max - self.x_min) * CANVAS
    }

    /// Imaginary axis points up.
    fn py(&self, y: f64) -> f64 {
        (self.y_max - y) / (self.y_max - self.y_min) * CANVAS
    }

    fn scale(&self) -> f64 {
        CANVAS / (self.x_max - self.x_min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotDocument {
    pub disks: Vec<Disk<f64>>,
    pub eigenvalues: Vec<PlotEigenvalue>,
    pub viewport: Viewport,
}

/// Disks of the requested kinds plus the eigenvalue clusters of `m`.
/// Clusters within the cluster tolerance of an exact value are drawn there.
pub fn plot_document(m: &ComplexMatrix<f64>, kinds: &[RadiusKind], exact_values: &[C64]) -> CliResult<PlotDocument> {
    let mut all = Vec::new();
    for &k in kinds {
        all.extend(disks::disk_set(m, k)?);
    }
    let report = linalg::eigen_report_with_defaults(m)?;
    let values: Vec<C64> = report
        .clusters
        .iter()
        .map(|c| {
            exact_values
                .iter()
                .copied()
                .find(|z| (z - c.value).norm() <= report.cluster_tol)
                .unwrap_or(c.value)
        })
        .collect();
    let viewport = Viewport::around(&all, &values);
    let eigenvalues = report
        .clusters
        .iter()
        .zip(&values)
        .map(|(c, z)| PlotEigenvalue {
            value: Entry { re: z.re, im: z.im },
            algebraic_count: c.algebraic_count,
            geometric_multiplicity: c.geometric_multiplicity,
        })
        .collect();
    Ok(PlotDocument {
        disks: all,
        eigenvalues,
        viewport,
    })
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 8.0;
    let p = 10f64.powf(raw.log10().floor());
    let m = raw / p;
    let k = if m < 1.5 {
        1.0
    } else if m < 3.5 {
        2.0
    } else if m < 7.5 {
        5.0
    } else {
        10.0
    };
    k * p
}

fn decimals(step: f64) -> usize {
    if step >= 1.0 {
        0
    } else {
        (-step.log10()).ceil() as usize
    }
}

fn number(x: f64, places: usize) -> String {
    // Adding 0.0 turns -0.0 into 0.0.
    let s = format!("{:.*}", places, x + 0.0);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn complex_label(z: Entry) -> String {
    let trim = |x: f64| {
        let s = number(x, 4);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if z.im.abs() < 5e-5 {
        trim(z.re)
    } else if z.re.abs() < 5e-5 {
        format!("{}i", trim(z.im))
    } else if z.im < 0.0 {
        format!("{}-{}i", trim(z.re), trim(-z.im))
    } else {
        format!("{}+{}i", trim(z.re), trim(z.im))
    }
}

fn css_class(kind: RadiusKind) -> String {
    kind.to_string().replace(':', "-")
}

const STYLE: &str = "\
.background{fill:#ffffff}
.axis{stroke:#555555;stroke-width:1}
.grid{stroke:#dddddd;stroke-width:1}
.tick{font:12px sans-serif;fill:#333333}
.disk{fill:none;stroke-width:2}
.full{stroke:#1f77b4}
.half{stroke:#d62728}
.median{stroke:#2ca02c;stroke-dasharray:6 3}
.corollary2{stroke:#9467bd}
.third{stroke:#ff7f0e}
.fraction{stroke:#8c564b;stroke-dasharray:2 3}
.eigenvalue{fill:#000000}
.multiplicity{font:bold 14px sans-serif;fill:#000000}
";

/// Renders `doc` as a standalone SVG. Output depends only on `doc`.
pub fn render_svg(doc: &PlotDocument) -> String {
    let vp = &doc.viewport;
    let mut s = String::new();
    let c = CANVAS as u32;
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#
    )
    .unwrap();
    writeln!(s, "<style>\n{STYLE}</style>").unwrap();
    writeln!(s, r#"<rect class="background" x="0" y="0" width="{c}" height="{c}"/>"#).unwrap();

    let step = nice_step(vp.x_max - vp.x_min);
    let places = decimals(step);
    let ticks = |lo: f64, hi: f64| -> Vec<f64> {
        let first = (lo / step).ceil() as i64;
        let last = (hi / step).floor() as i64;
        (first..=last).map(|k| k as f64 * step).collect()
    };
    // Axes sit at zero when it is in view, otherwise on the lower/left edge.
    let x_axis = vp.py(if vp.y_min <= 0.0 && 0.0 <= vp.y_max { 0.0 } else { vp.y_min });
    let y_axis = vp.px(if vp.x_min <= 0.0 && 0.0 <= vp.x_max { 0.0 } else { vp.x_min });
    s.push_str("<g class=\"axes\">\n");
    for x in ticks(vp.x_min, vp.x_max) {
        let px = number(vp.px(x), 3);
        writeln!(s, r#"<line class="grid" x1="{px}" y1="0" x2="{px}" y2="{c}"/>"#).unwrap();
        writeln!(
            s,
            r#"<text class="tick" x="{px}" y="{}" text-anchor="middle">{}</text>"#,
            number((x_axis + 16.0).min(CANVAS - 4.0), 3),
            number(x, places)
        )
        .unwrap();
    }
    for y in ticks(vp.y_min, vp.y_max) {
        let py = number(vp.py(y), 3);
        writeln!(s, r#"<line class="grid" x1="0" y1="{py}" x2="{c}" y2="{py}"/>"#).unwrap();
        if y != 0.0 {
            writeln!(
                s,
                r#"<text class="tick" x="{}" y="{py}" text-anchor="end">{}i</text>"#,
                number((y_axis - 4.0).max(40.0), 3),
                number(y, places)
            )
            .unwrap();
        }
    }
    let (xa, ya) = (number(x_axis, 3), number(y_axis, 3));
    writeln!(s, r#"<line class="axis" x1="0" y1="{xa}" x2="{c}" y2="{xa}"/>"#).unwrap();
    writeln!(s, r#"<line class="axis" x1="{ya}" y1="0" x2="{ya}" y2="{c}"/>"#).unwrap();
    s.push_str("</g>\n<g class=\"disks\">\n");

    for d in &doc.disks {
        let class = match d.kind {
            RadiusKind::Fraction(_) => format!("disk fraction {}", css_class(d.kind)),
            k => format!("disk {}", css_class(k)),
        };
        writeln!(
            s,
            r#"<circle class="{class}" data-row="{}" cx="{}" cy="{}" r="{}"/>"#,
            d.row,
            number(vp.px(d.center.re), 3),
            number(vp.py(d.center.im), 3),
            number(d.radius * vp.scale(), 3)
        )
        .unwrap();
    }
    s.push_str("</g>\n<g class=\"eigenvalues\">\n");
    for e in &doc.eigenvalues {
        let (x, y) = (vp.px(e.value.re), vp.py(e.value.im));
        writeln!(
            s,
            r#"<circle class="eigenvalue" cx="{}" cy="{}" r="5"/>"#,
            number(x, 3),
            number(y, 3)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text class="multiplicity" x="{}" y="{}">{} ×{}</text>"#,
            number(x + 8.0, 3),
            number(y - 8.0, 3),
            complex_label(e.value),
            e.geometric_multiplicity
        )
        .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}
