//! Log-log SVG plots of suboptimality curves.
//!
//! Self-contained SVG 1.1: both axes are log10, each scheme gets one
//! polyline, requested bounds are drawn dashed in the scheme's color, and a
//! legend names every drawn series. Points with nonpositive mean cannot be
//! placed on a log axis and are omitted with a warning.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use subgrad::Aggregate;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 200.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Affine map from log10 data coordinates to pixel coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LogFrame {
    pub log_t: (f64, f64),
    pub log_v: (f64, f64),
}

impl LogFrame {
    /// Pixel x of a round count `t`: `log10(t)` placed linearly between the
    /// frame edges.
    pub fn x(&self, t: f64) -> f64 {
        let (lo, hi) = self.log_t;
        let frac = if hi > lo { (t.log10() - lo) / (hi - lo) } else { 0.5 };
        MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    /// Pixel y of a value `v` (larger values sit higher).
    pub fn y(&self, v: f64) -> f64 {
        let (lo, hi) = self.log_v;
        let frac = if hi > lo { (v.log10() - lo) / (hi - lo) } else { 0.5 };
        HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

/// Series the plot will draw: positive (t, value) points only.
struct Series {
    label: String,
    color: &'static str,
    dashed: bool,
    points: Vec<(f64, f64)>,
}

/// Renders the plot; `bounds` maps scheme label -> (t -> bound value).
/// Returns `None` when no positive point exists to draw.
pub fn emit_plot(agg: &Aggregate, bounds: &BTreeMap<String, BTreeMap<usize, f64>>) -> Option<String> {
    let mut series = Vec::new();
    for (s, scheme) in agg.schemes.iter().enumerate() {
        let label = scheme.label();
        let color = PALETTE[s % PALETTE.len()];
        let mut points = Vec::new();
        for (p, &t) in agg.record_points.iter().enumerate() {
            let mean = agg.cells[p][s].mean;
            if mean > 0.0 {
                points.push((t as f64, mean));
            } else {
                log::warn!("plot: omitting {label} at t={t} (nonpositive mean {mean})");
            }
        }
        if !points.is_empty() {
            series.push(Series {
                label: label.clone(),
                color,
                dashed: false,
                points,
            });
        }
        if let Some(per_t) = bounds.get(&label) {
            let points: Vec<(f64, f64)> = per_t
                .iter()
                .filter(|(_, v)| **v > 0.0)
                .map(|(t, v)| (*t as f64, *v))
                .collect();
            if !points.is_empty() {
                series.push(Series {
                    label: format!("{label} bound"),
                    color,
                    dashed: true,
                    points,
                });
            }
        }
    }
    if series.is_empty() {
        return None;
    }

    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut t_lo, mut t_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut v_lo, mut v_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (t, v) in all {
        t_lo = t_lo.min(*t);
        t_hi = t_hi.max(*t);
        v_lo = v_lo.min(*v);
        v_hi = v_hi.max(*v);
    }
    let frame = LogFrame {
        log_t: (t_lo.log10(), t_hi.log10()),
        log_v: (v_lo.log10(), v_hi.log10()),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // Plot frame.
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
    let _ = writeln!(
        svg,
        r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="#333" stroke-width="1"/>"#,
        x1 - x0,
        y0 - y1
    );

    // Decade ticks.
    for k in frame.log_t.0.ceil() as i64..=frame.log_t.1.floor() as i64 {
        let x = frame.x(10f64.powi(k as i32));
        let _ = writeln!(
            svg,
            r#"<line class="tick" x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="#333" stroke-width="1"/>"#,
            y0 + 6.0
        );
        let _ = writeln!(
            svg,
            r##"<text class="ticklabel" x="{x:.2}" y="{}" font-size="12" text-anchor="middle" fill="#333">1e{k}</text>"##,
            y0 + 20.0
        );
    }
    for k in frame.log_v.0.ceil() as i64..=frame.log_v.1.floor() as i64 {
        let y = frame.y(10f64.powi(k as i32));
        let _ = writeln!(
            svg,
            r#"<line class="tick" x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="#333" stroke-width="1"/>"#,
            x0 - 6.0
        );
        let _ = writeln!(
            svg,
            r##"<text class="ticklabel" x="{}" y="{:.2}" font-size="12" text-anchor="end" fill="#333">1e{k}</text>"##,
            x0 - 10.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r##"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle" fill="#333">iterations</text>"##,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="16" y="{:.2}" font-size="13" text-anchor="middle" fill="#333" transform="rotate(-90 16 {:.2})">suboptimality</text>"##,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    // Series.
    for s in &series {
        let coords: Vec<String> = s
            .points
            .iter()
            .map(|(t, v)| format!("{:.2},{:.2}", frame.x(*t), frame.y(*v)))
            .collect();
        let dash = if s.dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            s.color,
            coords.join(" ")
        );
    }

    // Legend.
    let lx = WIDTH - MARGIN_RIGHT + 16.0;
    for (i, s) in series.iter().enumerate() {
        let ly = MARGIN_TOP + 14.0 + 20.0 * i as f64;
        let dash = if s.dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            svg,
            r#"<line class="legend" x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="1.5"{dash}/>"#,
            lx + 26.0,
            s.color
        );
        let _ = writeln!(
            svg,
            r##"<text class="legendlabel" x="{}" y="{}" font-size="12" fill="#333">{}</text>"##,
            lx + 32.0,
            ly + 4.0,
            s.label
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}
