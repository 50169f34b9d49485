//! Hand-assembled SVG plots: norm trajectories as polylines with an
//! optional log ordinate, and certificate slack as one bar per level.
//!
//! Output is a pure function of the input series: no timestamps, no
//! randomness, fixed float formatting, so repeated runs emit identical
//! bytes.

use anyhow::{bail, Result};

/// One named trajectory.
#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 780.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 425.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn pad_range(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo > 1e-12 {
        (lo, hi)
    } else {
        let pad = lo.abs().max(0.5) * 0.1 + 0.5;
        (lo - pad, hi + pad)
    }
}

fn svg_open(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" ",
            "font-family=\"sans-serif\" font-size=\"13\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{cx}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{t}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        cx = WIDTH / 2.0,
        t = title
    )
}

fn axes_and_labels(x_label: &str, y_label: &str) -> String {
    format!(
        concat!(
            "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n",
            "<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>\n",
            "<text x=\"{cx}\" y=\"470\" text-anchor=\"middle\">{xl}</text>\n",
            "<text x=\"16\" y=\"{cy}\" text-anchor=\"middle\" ",
            "transform=\"rotate(-90 16 {cy})\">{yl}</text>\n"
        ),
        l = LEFT,
        r = RIGHT,
        t = TOP,
        b = BOTTOM,
        cx = (LEFT + RIGHT) / 2.0,
        cy = (TOP + BOTTOM) / 2.0,
        xl = x_label,
        yl = y_label
    )
}

fn tick_label(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs();
    if (1e-3..1e4).contains(&magnitude) {
        let text = format!("{value:.4}");
        let trimmed = text.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        format!("{value:.2e}")
    }
}

/// Polyline plot of one or more series over a shared abscissa.
///
/// With `log_y`, points with a non-positive ordinate are dropped before
/// plotting; a series with nothing left, like an empty input, is an error.
pub fn line_plot(
    series: &[Series],
    log_y: bool,
    title: &str,
    x_label: &str,
    y_label: &str,
) -> Result<String> {
    if series.is_empty() {
        bail!("plot needs at least one series");
    }
    let mut drawn: Vec<(&str, Vec<(f64, f64)>)> = Vec::new();
    for s in series {
        let points: Vec<(f64, f64)> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite() && (!log_y || *y > 0.0))
            .map(|&(x, y)| (x, if log_y { y.log10() } else { y }))
            .collect();
        if points.is_empty() {
            bail!(
                "series `{}` has no drawable points{}",
                s.name,
                if log_y { " on a log ordinate" } else { "" }
            );
        }
        drawn.push((s.name.as_str(), points));
    }
    let xs = drawn.iter().flat_map(|(_, p)| p.iter().map(|q| q.0));
    let ys = drawn.iter().flat_map(|(_, p)| p.iter().map(|q| q.1));
    let (x_lo, x_hi) = pad_range(
        xs.clone().fold(f64::INFINITY, f64::min),
        xs.fold(f64::NEG_INFINITY, f64::max),
    );
    let (y_lo, y_hi) = pad_range(
        ys.clone().fold(f64::INFINITY, f64::min),
        ys.fold(f64::NEG_INFINITY, f64::max),
    );
    let px = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);

    let mut out = svg_open(title);
    for i in 0..5 {
        let frac = i as f64 / 4.0;
        let xv = x_lo + frac * (x_hi - x_lo);
        let yv = y_lo + frac * (y_hi - y_lo);
        let gx = px(xv);
        let gy = py(yv);
        out.push_str(&format!(
            "<line x1=\"{gx:.2}\" y1=\"{TOP}\" x2=\"{gx:.2}\" y2=\"{BOTTOM}\" stroke=\"#dddddd\"/>\n"
        ));
        out.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{gy:.2}\" x2=\"{RIGHT}\" y2=\"{gy:.2}\" stroke=\"#dddddd\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{gx:.2}\" y=\"445\" text-anchor=\"middle\">{}</text>\n",
            tick_label(xv)
        ));
        let label = if log_y {
            format!("1e{yv:.1}")
        } else {
            tick_label(yv)
        };
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{label}</text>\n",
            LEFT - 6.0,
            gy + 4.0
        ));
    }
    for (i, (name, points)) in drawn.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
        let lx = LEFT + 12.0 + 150.0 * i as f64;
        out.push_str(&format!(
            "<rect x=\"{lx:.2}\" y=\"{:.2}\" width=\"12\" height=\"12\" fill=\"{color}\"/>\n",
            TOP + 6.0
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\">{name}</text>\n",
            lx + 16.0,
            TOP + 16.0
        ));
    }
    out.push_str(&axes_and_labels(x_label, y_label));
    out.push_str("</svg>\n");
    Ok(out)
}

/// Bar chart with one labeled bar per entry; negative values hang below
/// the zero baseline.
pub fn bar_plot(bars: &[(String, f64)], title: &str, y_label: &str) -> Result<String> {
    if bars.is_empty() {
        bail!("bar plot needs at least one bar");
    }
    if let Some((label, value)) = bars.iter().find(|(_, v)| !v.is_finite()) {
        bail!("bar `{label}` has a non-finite value {value}");
    }
    let raw_lo = bars.iter().map(|(_, v)| *v).fold(0.0f64, f64::min);
    let raw_hi = bars.iter().map(|(_, v)| *v).fold(0.0f64, f64::max);
    let (y_lo, y_hi) = pad_range(raw_lo, raw_hi);
    let py = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);
    let slot = (RIGHT - LEFT) / bars.len() as f64;

    let mut out = svg_open(title);
    for i in 0..5 {
        let yv = y_lo + i as f64 / 4.0 * (y_hi - y_lo);
        let gy = py(yv);
        out.push_str(&format!(
            "<line x1=\"{LEFT}\" y1=\"{gy:.2}\" x2=\"{RIGHT}\" y2=\"{gy:.2}\" stroke=\"#dddddd\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            LEFT - 6.0,
            gy + 4.0,
            tick_label(yv)
        ));
    }
    let base = py(0.0);
    out.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{base:.2}\" x2=\"{RIGHT}\" y2=\"{base:.2}\" stroke=\"#888888\"/>\n"
    ));
    for (i, (label, value)) in bars.iter().enumerate() {
        let x = LEFT + slot * (i as f64 + 0.15);
        let w = slot * 0.7;
        let top_y = py(value.max(0.0));
        let h = (py(value.min(0.0)) - top_y).max(0.5);
        let color = if *value < 0.0 { PALETTE[1] } else { PALETTE[0] };
        out.push_str(&format!(
            "<rect class=\"bar\" x=\"{x:.2}\" y=\"{top_y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{color}\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.2}\" y=\"445\" text-anchor=\"middle\">{label}</text>\n",
            x + w / 2.0
        ));
    }
    out.push_str(&axes_and_labels("", y_label));
    out.push_str("</svg>\n");
    Ok(out)
}
