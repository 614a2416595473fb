use std::collections::BTreeSet;
use std::fmt::Write;

use super::analysis::{AnalysisReport, Axis, AxisCurve};
use crate::degrade::DegradationConfig;
use crate::sweep::Tradeoff;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const STYLE: &str = "<style>\
text{font-family:sans-serif;font-size:12px;fill:#222}\
.title{font-size:15px;font-weight:bold}\
.axis{stroke:#222;stroke-width:1}\
.grid{stroke:#ddd;stroke-width:1}\
.curve{fill:none;stroke:#1f77b4;stroke-width:2}\
.marker{fill:#1f77b4}\
.knee{stroke:#d62728;stroke-width:1.5;stroke-dasharray:6 4}\
.mvd{fill:none;stroke:#2ca02c;stroke-width:2.5}\
.cell{stroke:#fff;stroke-width:1}\
</style>";

fn num(x: f64) -> String {
    format!("{x:.2}")
}

fn tick_label(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x:.0}")
    } else {
        format!("{x:.2}")
    }
}

fn header(out: &mut String, title: &str) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = WIDTH,
        h = HEIGHT
    ));
    out.push_str(&format!("<!-- mvd {} -->\n", env!("CARGO_PKG_VERSION")));
    out.push_str(STYLE);
    out.push('\n');
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#fff\"/>\n<text class=\"title\" x=\"{}\" y=\"24\" text-anchor=\"middle\">{}</text>",
        num(WIDTH / 2.0),
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Maps data coordinates into the plot area.
struct Frame {
    x0: f64,
    x1: f64,
}

impl Frame {
    fn new(xs: &[f64]) -> Self {
        let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            Self { x0: lo, x1: hi }
        } else {
            let pad = lo.abs().max(1.0) * 0.1;
            Self {
                x0: lo - pad,
                x1: hi + pad,
            }
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, acc: f64) -> f64 {
        HEIGHT - BOTTOM - acc.clamp(0.0, 1.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn axes(out: &mut String, frame: &Frame, x_label: &str) {
    for i in 0..=5 {
        let acc = f64::from(i) / 5.0;
        let y = frame.py(acc);
        let _ = writeln!(
            out,
            "<line class=\"grid\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/><text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>",
            num(LEFT),
            num(WIDTH - RIGHT),
            num(LEFT - 8.0),
            num(y + 4.0),
            format_args!("{acc:.1}"),
            y = num(y)
        );
    }
    for i in 0..=4 {
        let x = frame.x0 + (frame.x1 - frame.x0) * f64::from(i) / 4.0;
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            num(frame.px(x)),
            num(HEIGHT - BOTTOM + 18.0),
            tick_label(x)
        );
    }
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\"/><line class=\"axis\" x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\"/>",
        l = num(LEFT),
        r = num(WIDTH - RIGHT),
        t = num(TOP),
        b = num(HEIGHT - BOTTOM)
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        num((LEFT + WIDTH - RIGHT) / 2.0),
        num(HEIGHT - 16.0),
        escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{y}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {y})\">accuracy</text>",
        y = num((TOP + HEIGHT - BOTTOM) / 2.0)
    );
}

/// Accuracy against one axis: a marker per point, a dashed vertical rule at
/// the knee when one is reported, and a ring around the MVD point when it
/// lies on this curve.
pub fn line_chart_svg(curve: &AxisCurve, mvd: Option<&DegradationConfig>) -> String {
    let mut out = String::new();
    header(&mut out, &format!("Accuracy vs {}", curve.axis.unit()));
    let xs: Vec<f64> = curve.points.iter().map(|p| p.cost).collect();
    let frame = Frame::new(if xs.is_empty() { &[0.0] } else { &xs });
    axes(&mut out, &frame, curve.axis.unit());
    if curve.points.len() > 1 {
        let path: Vec<String> = curve
            .points
            .iter()
            .map(|p| format!("{},{}", num(frame.px(p.cost)), num(frame.py(p.accuracy))))
            .collect();
        let _ = writeln!(out, "<polyline class=\"curve\" points=\"{}\"/>", path.join(" "));
    }
    for (p, c) in curve.points.iter().zip(&curve.configs) {
        let _ = writeln!(
            out,
            "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"4\"><title>{}: {:.4}</title></circle>",
            num(frame.px(p.cost)),
            num(frame.py(p.accuracy)),
            escape(&c.to_string()),
            p.accuracy
        );
    }
    if let Some(k) = curve.knee.as_ref().and_then(|k| k.knee) {
        let x = num(frame.px(k.cost));
        let _ = writeln!(
            out,
            "<line class=\"knee\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
            num(TOP),
            num(HEIGHT - BOTTOM)
        );
    }
    if let Some(i) = mvd.and_then(|m| curve.configs.iter().position(|c| c == m)) {
        let p = curve.points[i];
        let _ = writeln!(
            out,
            "<circle class=\"mvd\" cx=\"{}\" cy=\"{}\" r=\"9\"/>",
            num(frame.px(p.cost)),
            num(frame.py(p.accuracy))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn cell_colour(t: f64) -> String {
    // light yellow (low) to dark blue (high)
    let lerp = |a: f64, b: f64| (a + (b - a) * t.clamp(0.0, 1.0)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(255.0, 8.0),
        lerp(247.0, 48.0),
        lerp(188.0, 107.0)
    )
}

/// Accuracy over the rate x depth grid at the longest clip length, or
/// `None` when the results vary along fewer than two of those axes.
pub fn heat_grid_svg<R: Tradeoff>(results: &[R], mvd: Option<&DegradationConfig>) -> Option<String> {
    let longest = results
        .iter()
        .map(Tradeoff::clip_length_s)
        .fold(f64::NEG_INFINITY, f64::max);
    let cells: Vec<&R> = results.iter().filter(|r| r.clip_length_s() == longest).collect();
    let rates: Vec<u32> = cells
        .iter()
        .map(|r| r.config().sample_rate_hz)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let depths: Vec<u32> = cells
        .iter()
        .map(|r| r.config().bit_depth)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    if rates.len() < 2 || depths.len() < 2 {
        return None;
    }
    let lo = cells.iter().map(|r| r.accuracy()).fold(f64::INFINITY, f64::min);
    let hi = cells.iter().map(|r| r.accuracy()).fold(f64::NEG_INFINITY, f64::max);
    let mut out = String::new();
    header(&mut out, "Accuracy over sample rate and bit depth");
    let cw = (WIDTH - LEFT - RIGHT) / rates.len() as f64;
    let ch = (HEIGHT - TOP - BOTTOM) / depths.len() as f64;
    for (col, rate) in rates.iter().enumerate() {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{rate}</text>",
            num(LEFT + (col as f64 + 0.5) * cw),
            num(HEIGHT - BOTTOM + 18.0)
        );
    }
    for (row, depth) in depths.iter().enumerate() {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{depth}</text>",
            num(LEFT - 8.0),
            num(TOP + (row as f64 + 0.5) * ch + 4.0)
        );
    }
    for r in &cells {
        let c = r.config();
        let col = rates
            .iter()
            .position(|&x| x == c.sample_rate_hz)
            .expect("rate is in the grid");
        let row = depths
            .iter()
            .position(|&x| x == c.bit_depth)
            .expect("depth is in the grid");
        let (x, y) = (LEFT + col as f64 * cw, TOP + row as f64 * ch);
        let t = if hi > lo { (r.accuracy() - lo) / (hi - lo) } else { 1.0 };
        let text_fill = if t > 0.55 { "#fff" } else { "#222" };
        let _ = writeln!(
            out,
            "<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/><text x=\"{}\" y=\"{}\" text-anchor=\"middle\" style=\"fill:{text_fill}\">{:.3}</text>",
            num(x),
            num(y),
            num(cw),
            num(ch),
            cell_colour(t),
            num(x + cw / 2.0),
            num(y + ch / 2.0 + 4.0),
            r.accuracy()
        );
        if mvd == Some(c) {
            let _ = writeln!(
                out,
                "<rect class=\"mvd\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                num(x + 2.0),
                num(y + 2.0),
                num(cw - 4.0),
                num(ch - 4.0)
            );
        }
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        num((LEFT + WIDTH - RIGHT) / 2.0),
        num(HEIGHT - 16.0),
        Axis::Rate.unit()
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{y}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {y})\">{}</text>",
        Axis::Depth.unit(),
        y = num((TOP + HEIGHT - BOTTOM) / 2.0)
    );
    out.push_str("</svg>\n");
    Some(out)
}

/// One chart per analyzed axis, keyed by file stem.
pub fn charts_for(report: &AnalysisReport) -> Vec<(String, String)> {
    report
        .curves
        .iter()
        .map(|c| {
            (
                format!("accuracy_vs_{}", c.axis),
                line_chart_svg(c, Some(&report.mvd.config)),
            )
        })
        .collect()
}
