use std::fmt::Write as _;
use std::path::Path;

use super::{ExperimentRecord, Prediction};
use crate::{Error, Result};

const W: f64 = 640.0;
const H: f64 = 440.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Measured `log_n ex` against x as SVG: one circle per record at the lower
/// estimate, a bar up to the upper estimate when they differ, the predicted
/// envelopes and the threshold markers. Output depends only on the input.
pub fn emit_plot(records: &[ExperimentRecord], prediction: &Prediction) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let r = prediction.r as f64;
    let logn = |v: usize, n: usize| if v == 0 { 0.0 } else { (v as f64).ln() / (n as f64).ln() };
    let y_top = records
        .iter()
        .map(|rec| logn(rec.ex_upper, rec.n))
        .fold(r - 1.0, f64::max)
        .ceil()
        .max(1.0);
    let px = |x: f64| LEFT + x / r * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - y / y_top * (H - TOP - BOTTOM);

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    // axes and ticks
    writeln!(
        s,
        r#"<path class="axis" d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}" stroke="black" fill="none"/>"#,
        px(0.0),
        py(y_top),
        px(0.0),
        py(0.0),
        px(r),
        py(0.0)
    )
    .unwrap();
    for i in 0..=(2 * prediction.r) {
        let x = i as f64 / 2.0;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            px(x),
            py(0.0) + 15.0
        )
        .unwrap();
    }
    for i in 0..=(2 * y_top as usize) {
        let y = i as f64 / 2.0;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y}</text>"#,
            px(0.0) - 6.0,
            py(y) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x  (p = n^(x-{}))</text>"#,
        px(r / 2.0),
        H - 12.0,
        prediction.r
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="14" y="{:.2}" transform="rotate(-90 14 {:.2})" text-anchor="middle">log_n ex</text>"#,
        py(y_top / 2.0),
        py(y_top / 2.0)
    )
    .unwrap();

    // prediction
    for (upper, dash) in [(false, ""), (true, r#" stroke-dasharray="5 3""#)] {
        let pts: Vec<String> = prediction
            .polyline(upper)
            .into_iter()
            .map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let class = if upper { "prediction-upper" } else { "prediction-lower" };
        writeln!(
            s,
            r##"<polyline class="{class}" points="{}" fill="none" stroke="#555"{dash}/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    for m in prediction.markers() {
        writeln!(
            s,
            r##"<line class="marker" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="2 3"/>"##,
            px(m.x),
            py(0.0),
            px(m.x),
            py(y_top)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(m.x),
            py(y_top) - 4.0,
            m.label
        )
        .unwrap();
    }

    // data, coloured by n
    let mut ns: Vec<usize> = records.iter().map(|rec| rec.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let colour = |n: usize| PALETTE[ns.binary_search(&n).unwrap() % PALETTE.len()];
    for rec in records {
        let (x, lo, hi) = (px(rec.x), py(logn(rec.ex_lower, rec.n)), py(logn(rec.ex_upper, rec.n)));
        if rec.ex_upper > rec.ex_lower {
            writeln!(
                s,
                r#"<line class="interval" x1="{x:.2}" y1="{lo:.2}" x2="{x:.2}" y2="{hi:.2}" stroke="{}" stroke-opacity="0.5"/>"#,
                colour(rec.n)
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<circle class="mark" cx="{x:.2}" cy="{lo:.2}" r="3" fill="{}"/>"#,
            colour(rec.n)
        )
        .unwrap();
    }
    for (i, &n) in ns.iter().enumerate() {
        let y = TOP + 14.0 + 16.0 * i as f64;
        writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/><text x="{:.2}" y="{:.2}">n = {n}</text>"#,
            W - RIGHT + 20.0,
            y,
            colour(n),
            W - RIGHT + 28.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn write_plot(path: &Path, records: &[ExperimentRecord], prediction: &Prediction) -> Result<()> {
    std::fs::write(path, emit_plot(records, prediction)?)?;
    Ok(())
}
