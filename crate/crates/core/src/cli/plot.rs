//! Minimal SVG line charts: `s` on the horizontal axis, bits on the vertical.

use std::fmt::Write as _;
use std::path::Path;

use super::csv_out::write_atomic;
use crate::error::Result;
use crate::experiments::{sort_rows, SweepRow, BOUND_OFF_NOTE};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum Style {
    Series,
    Reference,
    Cost,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Series => "series",
            Style::Reference => "reference",
            Style::Cost => "cost",
        }
    }
}

struct Line {
    label: String,
    style: Style,
    points: Vec<(f64, f64)>,
}

/// Groups rows into lines, one per `(beta, lambda, u2)`, in sorted row order.
///
/// Rows noted as the OFF bound plot `i_bits_maxp` as a dashed reference;
/// groups with any coherence cost get an extra dotted cost line.
fn lines(rows: &[SweepRow]) -> Vec<Line> {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);

    let mut groups: Vec<(String, Vec<&SweepRow>)> = Vec::new();
    for row in &sorted {
        let key = format!(
            "beta={} lambda={} u2={}",
            row.beta_label(),
            super::format_sig(row.lambda),
            row.u2_kind.label()
        );
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(row),
            None => groups.push((key, vec![row])),
        }
    }

    let mut out = Vec::new();
    for (key, members) in &groups {
        let reference = members.iter().all(|r| r.notes == BOUND_OFF_NOTE);
        out.push(if reference {
            Line {
                label: format!("OFF bound, beta={}", members[0].beta_label()),
                style: Style::Reference,
                points: members.iter().map(|r| (r.s, r.i_bits_maxp)).collect(),
            }
        } else {
            Line {
                label: key.clone(),
                style: Style::Series,
                points: members.iter().map(|r| (r.s, r.i_bits)).collect(),
            }
        });
        if members.iter().any(|r| r.coherence_cost_bits != 0.0) {
            out.push(Line {
                label: format!("cost, {key}"),
                style: Style::Cost,
                points: members
                    .iter()
                    .map(|r| (r.s, r.coherence_cost_bits))
                    .collect(),
            });
        }
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `rows` as a self-contained SVG document.
pub fn render_plot(rows: &[SweepRow]) -> String {
    let lines = lines(rows);

    let xs = lines.iter().flat_map(|l| l.points.iter().map(|p| p.0));
    let (mut x_min, mut x_max) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    if !x_min.is_finite() {
        (x_min, x_max) = (0.0, 1.0);
    }
    if x_max - x_min < 1e-12 {
        x_min -= 0.5;
        x_max += 0.5;
    }
    let y_top = lines
        .iter()
        .flat_map(|l| l.points.iter().map(|p| p.1))
        .fold(1.0f64, f64::max);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y.max(0.0) / y_top) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // axes
    let (x0, y0) = (LEFT, TOP + plot_h);
    let _ = writeln!(
        svg,
        r#"<path class="axis" d="M{x0:.2} {TOP:.2} L{x0:.2} {y0:.2} L{:.2} {y0:.2}" stroke="black" fill="none"/>"#,
        LEFT + plot_w
    );
    for k in 0..=4 {
        let x = x_min + (x_max - x_min) * k as f64 / 4.0;
        let px = sx(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 18.0,
            super::format_sig((x * 1e6).round() / 1e6)
        );
        let y = y_top * k as f64 / 4.0;
        let py = sy(y);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            super::format_sig((y * 1e6).round() / 1e6)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">thermalization strength s</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">bits</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, line) in lines.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = match line.style {
            Style::Series => "",
            Style::Reference => r#" stroke-dasharray="6 4""#,
            Style::Cost => r#" stroke-dasharray="2 3""#,
        };
        let pts: Vec<String> = line
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="{}" points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
            line.style.class(),
            pts.join(" ")
        );
        for &(x, y) in &line.points {
            let _ = writeln!(
                svg,
                r#"<circle class="marker" cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            escape(&line.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn write_plot(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_atomic(path, render_plot(rows).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{InteractionKind, InverseTemperature};

    fn row(s: f64, lambda: f64) -> SweepRow {
        SweepRow {
            beta: InverseTemperature::ZERO,
            s,
            lambda,
            p: 0.5,
            u2_kind: InteractionKind::PartialSwap,
            i_bits: 1.0 - s,
            i_bits_maxp: 1.0 - s,
            coherence_cost_bits: 0.0,
            witness_distance: None,
            notes: String::new(),
        }
    }

    #[test]
    fn single_row_gives_one_marker() {
        let svg = render_plot(&[row(0.5, 1.0)]);
        assert_eq!(svg.matches(r#"class="marker""#).count(), 1);
        assert_eq!(svg.matches(r#"class="series""#).count(), 1);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn one_line_per_lambda() {
        let rows: Vec<SweepRow> = [0.0, 0.5, 1.0]
            .iter()
            .flat_map(|&s| [row(s, 0.0), row(s, 1.0)])
            .collect();
        let svg = render_plot(&rows);
        assert_eq!(svg.matches(r#"class="series""#).count(), 2);
        assert_eq!(svg.matches(r#"class="marker""#).count(), 6);
    }
}
