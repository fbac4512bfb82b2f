//! Minimal SVG line charts for sweep outputs. Hand-rolled on purpose: the
//! deliverable is a headless file artifact, not an interactive plot.

pub(crate) struct Series {
    pub name: String,
    /// Points in data coordinates (x, y); y is plotted on the axis as-is,
    /// so callers pass log10(BER) for log charts.
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
    /// Draw circles at the points instead of a connecting line.
    pub markers: bool,
}

pub(crate) struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Tick positions along x in data coordinates.
    pub x_ticks: Vec<f64>,
    /// Tick positions and labels along y.
    pub y_ticks: Vec<(f64, String)>,
}

const W: f64 = 820.0;
const H: f64 = 540.0;
const ML: f64 = 70.0;
const MR: f64 = 30.0;
const MT: f64 = 40.0;
const MB: f64 = 55.0;

impl Chart {
    pub(crate) fn render(&self) -> String {
        let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for &(x, y) in &s.points {
                x_min = x_min.min(x);
                x_max = x_max.max(x);
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
        }
        for &t in &self.x_ticks {
            x_min = x_min.min(t);
            x_max = x_max.max(t);
        }
        for &(t, _) in &self.y_ticks {
            y_min = y_min.min(t);
            y_max = y_max.max(t);
        }
        if !x_min.is_finite() || x_min == x_max {
            x_min -= 1.0;
            x_max += 1.0;
        }
        if !y_min.is_finite() || y_min == y_max {
            y_min -= 1.0;
            y_max += 1.0;
        }

        let px = |x: f64| ML + (x - x_min) / (x_max - x_min) * (W - ML - MR);
        let py = |y: f64| H - MB - (y - y_min) / (y_max - y_min) * (H - MT - MB);

        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
             viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        ));
        out.push_str(&format!(
            "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
            (ML + W - MR) / 2.0,
            xml_escape(&self.title)
        ));

        for &t in &self.x_ticks {
            let x = px(t);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#dddddd\"/>\n",
                MT, H - MB
            ));
            out.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
                H - MB + 18.0,
                trim_float(t)
            ));
        }
        for (t, label) in &self.y_ticks {
            let y = py(*t);
            out.push_str(&format!(
                "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#dddddd\"/>\n",
                ML,
                W - MR
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
                ML - 6.0,
                y + 4.0,
                xml_escape(label)
            ));
        }
        out.push_str(&format!(
            "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\"/>\n",
            W - ML - MR,
            H - MT - MB
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            (ML + W - MR) / 2.0,
            H - 12.0,
            xml_escape(&self.x_label)
        ));
        out.push_str(&format!(
            "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
            (MT + H - MB) / 2.0,
            (MT + H - MB) / 2.0,
            xml_escape(&self.y_label)
        ));

        for s in &self.series {
            if s.markers {
                for &(x, y) in &s.points {
                    out.push_str(&format!(
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>\n",
                        px(x),
                        py(y),
                        s.color
                    ));
                }
            } else if s.points.len() > 1 {
                let pts: Vec<String> = s
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                    .collect();
                out.push_str(&format!(
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"/>\n",
                    pts.join(" "),
                    s.color
                ));
            }
        }

        for (k, s) in self.series.iter().enumerate() {
            let y = MT + 16.0 + 16.0 * k as f64;
            let x = W - MR - 170.0;
            if s.markers {
                out.push_str(&format!(
                    "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3\" fill=\"{}\"/>\n",
                    x + 12.0,
                    y - 4.0,
                    s.color
                ));
            } else {
                out.push_str(&format!(
                    "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{}\" stroke-width=\"1.6\"/>\n",
                    y - 4.0,
                    x + 24.0,
                    y - 4.0,
                    s.color
                ));
            }
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{y:.1}\">{}</text>\n",
                x + 30.0,
                xml_escape(&s.name)
            ));
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn trim_float(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.1}")
    }
}

/// Decade ticks `10^lo ... 10^hi` for a log axis, as (log10 value, label).
pub(crate) fn decade_ticks(lo: i32, hi: i32) -> Vec<(f64, String)> {
    (lo..=hi).map(|d| (d as f64, format!("1e{d}"))).collect()
}
