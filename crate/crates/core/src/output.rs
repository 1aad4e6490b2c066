//! File formats for simulation results.
//!
//! All writers produce byte-for-byte deterministic output: floats are
//! printed with 12 significant digits in scientific notation, independent of
//! locale, so identical runs yield identical files.

use crate::entanglement::{NegativityTrace, TraceStats};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("line 1: expected header 't,negativity', got '{0}'")]
    BadHeader(String),
    #[error("line {line}: expected two comma-separated numbers, got '{text}'")]
    BadRow { line: usize, text: String },
}

fn fmt_number(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders a trace as CSV with header `t,negativity`.
pub fn trace_csv(trace: &NegativityTrace) -> String {
    let mut out = String::with_capacity(32 * (trace.len() + 1));
    out.push_str("t,negativity\n");
    for (t, v) in trace.times().iter().zip(trace.values()) {
        let _ = writeln!(out, "{},{}", fmt_number(*t), fmt_number(*v));
    }
    out
}

/// Parses CSV written by [`trace_csv`] back into (time, value) pairs.
pub fn parse_trace_csv(text: &str) -> Result<Vec<(f64, f64)>, OutputError> {
    let mut lines = text.lines();
    match lines.next() {
        Some("t,negativity") => {}
        other => return Err(OutputError::BadHeader(other.unwrap_or("").to_string())),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let parsed = line
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse::<f64>().ok()?, b.parse::<f64>().ok()?)));
        match parsed {
            Some(pair) => rows.push(pair),
            None => {
                return Err(OutputError::BadRow {
                    line: k + 2,
                    text: line.to_string(),
                })
            }
        }
    }
    Ok(rows)
}

/// Renders sweep results as CSV: one row of summary statistics per swept
/// parameter value.
pub fn sweep_csv(param: &str, rows: &[(f64, TraceStats)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{param},min,max,time_average");
    for (value, stats) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_number(*value),
            fmt_number(stats.min),
            fmt_number(stats.max),
            fmt_number(stats.time_average)
        );
    }
    out
}

/// Serializes statistics as pretty-printed JSON with a trailing newline.
pub fn stats_json(stats: &TraceStats) -> String {
    let mut text = serde_json::to_string_pretty(stats).expect("stats serialize cleanly");
    text.push('\n');
    text
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;

/// Step from the 1-2-5 ladder giving five to ten ticks across `range`.
fn nice_step(range: f64) -> f64 {
    let raw = range / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    for mult in [1.0, 2.0, 5.0] {
        if mag * mult >= raw {
            return mag * mult;
        }
    }
    mag * 10.0
}

fn fmt_tick(value: f64, step: f64) -> String {
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10().floor()) as usize
    };
    format!("{value:.decimals$}")
}

/// Renders the trace as a standalone SVG line chart (negativity against
/// time, y axis fixed to the pure-state range [0, 0.5]).
pub fn trace_svg(trace: &NegativityTrace) -> String {
    let t0 = trace.times()[0];
    let t1 = *trace.times().last().unwrap();
    let t_span = (t1 - t0).max(f64::MIN_POSITIVE);
    let (y0, y1) = (0.0, 0.5);

    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_px = |t: f64| MARGIN_LEFT + (t - t0) / t_span * plot_w;
    let y_px = |v: f64| MARGIN_TOP + (y1 - v) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#
    );

    // Axes with ticks at round numbers.
    let x_step = nice_step(t_span);
    let mut tick = (t0 / x_step).ceil() * x_step;
    while tick <= t1 + 1e-9 * t_span {
        let x = x_px(tick);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{y}" x2="{x:.2}" y2="{yt}" stroke="#999"/>"##,
            y = MARGIN_TOP + plot_h,
            yt = MARGIN_TOP + plot_h + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{y}" text-anchor="middle">{label}</text>"#,
            y = MARGIN_TOP + plot_h + 20.0,
            label = fmt_tick(tick, x_step)
        );
        tick += x_step;
    }
    let y_step = 0.1;
    for k in 0..=5 {
        let v = k as f64 * y_step;
        let y = y_px(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{x}" y1="{y:.2}" x2="{xt}" y2="{y:.2}" stroke="#999"/>"##,
            x = MARGIN_LEFT - 5.0,
            xt = MARGIN_LEFT
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{x}" y1="{y:.2}" x2="{xt}" y2="{y:.2}" stroke="#eee"/>"##,
            x = MARGIN_LEFT,
            xt = MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{yt:.2}" text-anchor="end">{label}</text>"#,
            x = MARGIN_LEFT - 10.0,
            yt = y + 4.0,
            label = fmt_tick(v, y_step)
        );
    }
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x:.2}" y="{y}" text-anchor="middle">t</text>"#,
        x = MARGIN_LEFT + plot_w / 2.0,
        y = SVG_HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y:.2}" text-anchor="middle" transform="rotate(-90 18 {y:.2})">negativity</text>"#,
        y = MARGIN_TOP + plot_h / 2.0
    );

    let mut points = String::new();
    for (t, v) in trace.times().iter().zip(trace.values()) {
        let _ = write!(points, "{:.2},{:.2} ", x_px(*t), y_px(*v));
    }
    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##,
        points.trim_end()
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_trace() -> NegativityTrace {
        NegativityTrace::from_samples(vec![0.0, 0.5, 1.0, 1.5], vec![0.5, 0.42, 0.3937, 0.41])
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let csv = trace_csv(&sample_trace());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,negativity"));
        assert_eq!(lines.next(), Some("0.00000000000e0,5.00000000000e-1"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn csv_round_trips_at_printed_precision() {
        let trace = sample_trace();
        let rows = parse_trace_csv(&trace_csv(&trace)).unwrap();
        assert_eq!(rows.len(), trace.len());
        for ((t, v), (t0, v0)) in rows.iter().zip(trace.times().iter().zip(trace.values())) {
            // Reformatting the parsed numbers must reproduce the text, i.e.
            // nothing was lost beyond the printed 12 digits.
            assert_eq!(fmt_number(*t), fmt_number(*t0));
            assert_eq!(fmt_number(*v), fmt_number(*v0));
            assert_relative_eq!(*t, *t0, max_relative = 1e-11);
            assert_relative_eq!(*v, *v0, max_relative = 1e-11);
        }
    }

    #[test]
    fn csv_parser_reports_bad_rows() {
        assert!(matches!(
            parse_trace_csv("nope\n"),
            Err(OutputError::BadHeader(_))
        ));
        let err = parse_trace_csv("t,negativity\n0.0,0.1\noops\n").unwrap_err();
        match err {
            OutputError::BadRow { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn csv_bytes_are_deterministic() {
        assert_eq!(trace_csv(&sample_trace()), trace_csv(&sample_trace()));
    }

    #[test]
    fn sweep_csv_layout() {
        let stats = *sample_trace().stats();
        let csv = sweep_csv("d_z", &[(1.0, stats), (2.0, stats)]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("d_z,min,max,time_average"));
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn stats_json_has_expected_keys() {
        let text = stats_json(sample_trace().stats());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let obj = value.as_object().unwrap();
        for key in ["min", "max", "time_average", "argmin_t", "argmax_t"] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert_relative_eq!(obj["max"].as_f64().unwrap(), 0.5);
        assert_relative_eq!(obj["argmax_t"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn svg_is_a_single_polyline_chart() {
        let svg = trace_svg(&sample_trace());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        // Ticks at round numbers on both axes.
        assert!(svg.contains(">0.5<"));
        assert!(svg.contains(">0.0<"));
    }

    #[test]
    fn tick_steps_come_from_125_ladder() {
        for (range, want) in [(20.0, 5.0), (1.0, 0.2), (200.0, 50.0), (6.0, 1.0)] {
            assert_relative_eq!(nice_step(range), want, epsilon = 1e-12);
        }
    }
}
