//! Text renderings of a [`RateTable`]: CSV and a log-log SVG plot.

use std::fmt::Write;

use super::rate::RateTable;

/// `N,R,mean_sq_risk,stderr` rows followed by `slope`, `slope_stderr` and
/// `intercept` footer rows (`NaN` for a degenerate table).
pub fn rate_csv(table: &RateTable) -> String {
    let mut out = String::from("N,R,mean_sq_risk,stderr\n");
    for r in &table.rows {
        writeln!(out, "{},{},{},{}", r.n, r.replicates, r.mean_sq_risk, r.stderr).unwrap();
    }
    let (slope, se, icpt) = match table.fit {
        Some(f) => (f.slope, f.slope_stderr, f.intercept),
        None => (f64::NAN, f64::NAN, f64::NAN),
    };
    writeln!(out, "slope,{slope}").unwrap();
    writeln!(out, "slope_stderr,{se}").unwrap();
    writeln!(out, "intercept,{icpt}").unwrap();
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Log-log scatter of mean risk against `N` with the fitted line.
pub fn rate_svg(table: &RateTable) -> String {
    let pts: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|r| r.mean_sq_risk > 0.0)
        .map(|r| ((r.n as f64).log10(), r.mean_sq_risk.log10()))
        .collect();

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if pts.is_empty() {
        svg.push_str("<text x=\"50%\" y=\"50%\" text-anchor=\"middle\">no positive risks</text>\n</svg>\n");
        return svg;
    }

    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = |lo: f64, hi: f64| {
        let p = ((hi - lo) * 0.1).max(0.05);
        (lo - p, hi + p)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    writeln!(
        svg,
        r#"<path d="M{m} {b} H{r} M{m} {b} V{m}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">log10 N</text>"#,
        WIDTH / 2.0,
        HEIGHT - 20.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">log10 mean squared risk</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    )
    .unwrap();
    for &(x, y) in &pts {
        writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="steelblue"/>"#, sx(x), sy(y)).unwrap();
    }
    if let Some(f) = table.fit {
        // ln r = a + b ln N  ⇔  log10 r = a / ln 10 + b log10 N
        let line = |x: f64| f.intercept / std::f64::consts::LN_10 + f.slope * x;
        writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="firebrick"/>"#,
            sx(x0),
            sy(line(x0)),
            sx(x1),
            sy(line(x1))
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{}" y="{}">slope {:.3} ± {:.3}</text>"#,
            MARGIN + 10.0,
            MARGIN,
            f.slope,
            f.slope_stderr
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}
