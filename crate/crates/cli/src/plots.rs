//! Minimal SVG views of metric plot payloads.

use std::fmt::Write as _;

use serde_json::Value;

const W: f64 = 480.0;
const H: f64 = 360.0;
const PAD: f64 = 40.0;
const REAL: &str = "#1f77b4";
const SYN: &str = "#d62728";

fn pairs(v: &Value) -> Option<Vec<(f64, f64)>> {
    v.as_array()?
        .iter()
        .map(|p| {
            let a = p.as_array()?;
            Some((a.first()?.as_f64()?, a.get(1)?.as_f64()?))
        })
        .collect()
}

fn matrix(v: &Value) -> Option<Vec<Vec<f64>>> {
    v.as_array()?
        .iter()
        .map(|row| row.as_array()?.iter().map(Value::as_f64).collect())
        .collect()
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn around<'a>(points: impl Iterator<Item = &'a (f64, f64)>) -> Frame {
        let mut f = Frame {
            x: (f64::INFINITY, f64::NEG_INFINITY),
            y: (f64::INFINITY, f64::NEG_INFINITY),
        };
        for &(x, y) in points {
            f.x = (f.x.0.min(x), f.x.1.max(x));
            f.y = (f.y.0.min(y), f.y.1.max(y));
        }
        for r in [&mut f.x, &mut f.y] {
            if !r.0.is_finite() {
                *r = (0.0, 1.0);
            } else if r.1 - r.0 < 1e-12 {
                *r = (r.0 - 0.5, r.1 + 0.5);
            }
        }
        f
    }

    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x.0) / (self.x.1 - self.x.0) * (W - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y.0) / (self.y.1 - self.y.0) * (H - 2.0 * PAD)
    }
}

fn open(title: &str) -> String {
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
        W / 2.0,
        escape(title)
    );
    s
}

fn axes(s: &mut String, f: &Frame) {
    let _ = writeln!(
        s,
        "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>",
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for (x, y, anchor, text) in [
        (PAD, H - PAD + 14.0, "start", f.x.0),
        (W - PAD, H - PAD + 14.0, "end", f.x.1),
        (PAD - 4.0, H - PAD, "end", f.y.0),
        (PAD - 4.0, PAD + 10.0, "end", f.y.1),
    ] {
        let _ = writeln!(
            s,
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\" font-family=\"sans-serif\" font-size=\"10\">{text:.3}</text>"
        );
    }
}

fn legend(s: &mut String) {
    for (i, (name, colour)) in [("real", REAL), ("synthetic", SYN)].into_iter().enumerate() {
        let y = PAD + 14.0 * i as f64 + 8.0;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{y}\" fill=\"{colour}\" font-family=\"sans-serif\" font-size=\"11\">{name}</text>",
            W - PAD - 70.0
        );
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn scatter(title: &str, real: &[(f64, f64)], syn: &[(f64, f64)]) -> String {
    let f = Frame::around(real.iter().chain(syn));
    let mut s = open(title);
    axes(&mut s, &f);
    for (pts, colour) in [(real, REAL), (syn, SYN)] {
        for &(x, y) in pts {
            let _ = writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"{colour}\" fill-opacity=\"0.5\"/>",
                f.px(x),
                f.py(y)
            );
        }
    }
    legend(&mut s);
    s.push_str("</svg>\n");
    s
}

fn lines(title: &str, real: &[(f64, f64)], syn: &[(f64, f64)]) -> String {
    let f = Frame::around(real.iter().chain(syn));
    let mut s = open(title);
    axes(&mut s, &f);
    for (pts, colour) in [(real, REAL), (syn, SYN)] {
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"2\"/>",
            path.join(" ")
        );
    }
    legend(&mut s);
    s.push_str("</svg>\n");
    s
}

fn heatmap(title: &str, m: &[Vec<f64>]) -> String {
    let n = m.len().max(1) as f64;
    let cell = (W.min(H) - 2.0 * PAD) / n;
    let max = m
        .iter()
        .flatten()
        .fold(0.0f64, |a, &v| a.max(v.abs()))
        .max(1e-12);
    let mut s = open(title);
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = (v.abs() / max).clamp(0.0, 1.0);
            let shade = (255.0 * (1.0 - t)).round() as u8;
            let fill = if v >= 0.0 {
                format!("rgb(255,{shade},{shade})")
            } else {
                format!("rgb({shade},{shade},255)")
            };
            let _ = writeln!(
                s,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{cell:.2}\" height=\"{cell:.2}\" fill=\"{fill}\"/>",
                PAD + j as f64 * cell,
                PAD + i as f64 * cell
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn bars(title: &str, labels: &[String], values: &[f64]) -> String {
    let max = values.iter().fold(0.0f64, |a, &v| a.max(v)).max(1e-12);
    let n = values.len().max(1) as f64;
    let width = (W - 2.0 * PAD) / n;
    let mut s = open(title);
    axes(
        &mut s,
        &Frame {
            x: (0.0, n),
            y: (0.0, max),
        },
    );
    for (i, (label, &v)) in labels.iter().zip(values).enumerate() {
        let h = v / max * (H - 2.0 * PAD);
        let x = PAD + i as f64 * width;
        let _ = writeln!(
            s,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"{REAL}\"><title>{}</title></rect>",
            x + 1.0,
            H - PAD - h,
            (width - 2.0).max(1.0),
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// SVG for a payload whose shape is recognised; `None` otherwise.
pub fn render_svg(metric: &str, payload_name: &str, payload: &Value) -> Option<String> {
    let title = format!("{metric} {payload_name}");
    let real = payload.get("real").and_then(pairs);
    let syn = payload.get("synthetic").and_then(pairs);
    if let (Some(r), Some(s)) = (real, syn) {
        return Some(if payload_name == "roc" {
            lines(&title, &r, &s)
        } else {
            scatter(&title, &r, &s)
        });
    }
    if let Some(diff) = payload.get("difference").and_then(matrix) {
        return Some(heatmap(&title, &diff));
    }
    let columns = payload.get("columns").unwrap_or(payload).as_array()?;
    if columns.iter().all(|c| c.get("real_mean").is_some()) && !columns.is_empty() {
        let pts = |key: &str| -> Vec<(f64, f64)> {
            columns
                .iter()
                .filter_map(|c| Some((c.get("real_mean")?.as_f64()?, c.get(key)?.as_f64()?)))
                .collect()
        };
        let diagonal: Vec<(f64, f64)> = pts("real_mean");
        return Some(scatter(&title, &diagonal, &pts("synthetic_mean")));
    }
    if columns.iter().all(|c| c.get("statistic").is_some()) && !columns.is_empty() {
        let labels: Vec<String> = columns
            .iter()
            .map(|c| {
                c.get("column")
                    .and_then(Value::as_str)
                    .unwrap_or_default()
                    .to_string()
            })
            .collect();
        let values: Vec<f64> = columns
            .iter()
            .map(|c| c.get("statistic").and_then(Value::as_f64).unwrap_or(0.0))
            .collect();
        return Some(bars(&title, &labels, &values));
    }
    None
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;

    #[test]
    fn recognised_shapes() {
        let proj = json!({ "real": [[0.0, 1.0], [1.0, 0.0]], "synthetic": [[0.5, 0.5]] });
        assert!(render_svg("pca", "projection", &proj)
            .unwrap()
            .contains("<circle"));
        assert!(render_svg("auroc_diff", "roc", &proj)
            .unwrap()
            .contains("<polyline"));
        let mats = json!({ "columns": ["a", "b"], "difference": [[0.0, 0.2], [0.2, 0.0]] });
        assert!(render_svg("corr_diff", "matrices", &mats)
            .unwrap()
            .contains("<rect"));
        let ks = json!([{ "column": "a", "statistic": 0.1 }, { "column": "b", "statistic": 0.3 }]);
        assert!(render_svg("ks_test", "columns", &ks)
            .unwrap()
            .contains("<title>b</title>"));
        assert!(render_svg("x", "y", &json!(["a"])).is_none());
    }
}
