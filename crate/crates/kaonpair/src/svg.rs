//! Minimal SVG line plots: axes, ticks, polylines and a legend. Enough for
//! the curve figures without pulling in a plotting stack; the CSV output is
//! the contractual artifact, the SVG is for eyes.

use std::fmt::Write;

/// Stroke style of one curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

impl LineStyle {
    fn dash_array(&self) -> &'static str {
        match self {
            LineStyle::Solid => "none",
            LineStyle::Dashed => "9,5",
            LineStyle::Dotted => "2,4",
        }
    }
}

/// One named curve over a shared x grid.
#[derive(Debug, Clone)]
pub struct Series<'a> {
    pub label: &'a str,
    pub values: &'a [f64],
    pub style: LineStyle,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 56.0;

/// Render the series against `x` into a standalone SVG document.
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    x: &[f64],
    series: &[Series<'_>],
) -> String {
    assert!(!x.is_empty(), "empty x grid");
    for s in series {
        assert_eq!(s.values.len(), x.len(), "series length mismatch");
    }

    let x_min = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let x_max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let y_min = 0.0f64;
    let y_max = series
        .iter()
        .flat_map(|s| s.values.iter().cloned())
        .fold(1.0f64, f64::max);

    let x_span = (x_max - x_min).max(f64::MIN_POSITIVE);
    let y_span = (y_max - y_min).max(f64::MIN_POSITIVE);
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let to_px = |xv: f64, yv: f64| {
        (
            MARGIN_L + (xv - x_min) / x_span * plot_w,
            MARGIN_T + (1.0 - (yv - y_min) / y_span) * plot_h,
        )
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        MARGIN_L + plot_w / 2.0,
        escape(title)
    );

    // frame
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );

    // ticks and grid
    for i in 0..=5 {
        let fx = i as f64 / 5.0;
        let xv = x_min + fx * x_span;
        let (px, _) = to_px(xv, 0.0);
        let y0 = MARGIN_T + plot_h;
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.1}" y1="{y0:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{xv:.2}</text>"#,
            y0 + 20.0
        );

        let yv = y_min + fx * y_span;
        let (_, py) = to_px(x_min, yv);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{py:.1}" x2="{MARGIN_L}" y2="{py:.1}" stroke="black"/>"#,
            MARGIN_L - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">{yv:.2}</text>"#,
            MARGIN_L - 9.0,
            py + 4.0
        );
    }

    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        escape(y_label)
    );

    // curves
    for s in series {
        let mut points = String::new();
        for (xv, yv) in x.iter().zip(s.values.iter()) {
            let (px, py) = to_px(*xv, *yv);
            let _ = write!(points, "{px:.2},{py:.2} ");
        }
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="{}"/>"#,
            points.trim_end(),
            s.style.dash_array()
        );
    }

    // legend, top right inside the frame
    for (i, s) in series.iter().enumerate() {
        let ly = MARGIN_T + 18.0 + 20.0 * i as f64;
        let lx = MARGIN_L + plot_w - 230.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="black" stroke-width="1.5" stroke-dasharray="{}"/>"#,
            lx + 34.0,
            s.style.dash_array()
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
            lx + 42.0,
            ly + 4.0,
            escape(s.label)
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
