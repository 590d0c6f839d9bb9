//! Minimal SVG writers for region maps and branch curves.

use std::fmt::Write;

const PANEL: f64 = 360.0;
const MARGIN: f64 = 30.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    )
}

fn fill_for(label: &str) -> &'static str {
    match label {
        "I" | "II" => "#ffffff",
        "unrealizable" => "#444444",
        l if l.starts_with("III") => "#ffffff",
        _ => "#bbbbbb",
    }
}

/// One panel per closure. `cells[c][i][j]` is the label at `theta12` index
/// `i` and `theta23` index `j`; admissible cells are white, boundaries are
/// traced between cells with different labels.
pub fn region_map(closures: &[&str], cells: &[Vec<Vec<String>>]) -> String {
    let n = cells.first().map_or(0, |c| c.len());
    let step = PANEL / n.max(1) as f64;
    let width = closures.len() as f64 * (PANEL + MARGIN) + MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut s = header(width, height);
    for (p, (name, grid)) in closures.iter().zip(cells).enumerate() {
        let ox = MARGIN + p as f64 * (PANEL + MARGIN);
        let oy = MARGIN;
        let _ = writeln!(s, "<g id=\"closure-{name}\">");
        let _ = writeln!(
            s,
            "<text x=\"{ox}\" y=\"{}\" font-size=\"12\">closure {name}</text>",
            oy - 8.0
        );
        // theta12 runs right, theta23 runs up; rows are merged into runs.
        for j in 0..n {
            let mut i = 0;
            while i < n {
                let label = &grid[i][j];
                let mut k = i;
                while k + 1 < n && grid[k + 1][j] == *label {
                    k += 1;
                }
                let _ = writeln!(
                    s,
                    "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                    ox + i as f64 * step,
                    oy + PANEL - (j + 1) as f64 * step,
                    (k - i + 1) as f64 * step,
                    step,
                    fill_for(label)
                );
                i = k + 1;
            }
        }
        let mut d = String::new();
        for i in 0..n {
            for j in 0..n {
                let x = ox + i as f64 * step;
                let y = oy + PANEL - j as f64 * step;
                if i + 1 < n && grid[i][j] != grid[i + 1][j] {
                    let _ = write!(d, "M{:.2},{:.2}V{:.2}", x + step, y, y - step);
                }
                if j + 1 < n && grid[i][j] != grid[i][j + 1] {
                    let _ = write!(d, "M{:.2},{:.2}H{:.2}", x, y - step, x + step);
                }
            }
        }
        let _ = writeln!(s, "<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.6\"/>");
        let _ = writeln!(
            s,
            "<rect x=\"{ox}\" y=\"{oy}\" width=\"{PANEL}\" height=\"{PANEL}\" fill=\"none\" stroke=\"black\"/>"
        );
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

/// Polylines of `sign(F)·log10(1 + |F|)` against `y4`, with vertical marks
/// at the sign-type boundaries.
pub fn curves(series: &[(&str, Vec<(f64, f64)>, Vec<f64>)], y4_max: f64) -> String {
    let (w, h) = (720.0, 360.0);
    let width = w + 2.0 * MARGIN;
    let height = series.len() as f64 * (h + MARGIN) + MARGIN;
    let mut s = header(width, height);
    for (p, (name, pts, marks)) in series.iter().enumerate() {
        let oy = MARGIN + p as f64 * (h + MARGIN);
        let squash = |v: f64| v.signum() * (1.0 + v.abs()).log10();
        let ymax = pts.iter().map(|(_, v)| squash(*v).abs()).fold(1e-12, f64::max);
        let px = |x: f64| MARGIN + x / y4_max * w;
        let py = |v: f64| oy + h / 2.0 - squash(v) / ymax * (h / 2.0);
        let _ = writeln!(s, "<g id=\"branch-{name}\">");
        let _ = writeln!(s, "<text x=\"{MARGIN}\" y=\"{}\" font-size=\"12\">branch {name}</text>", oy - 8.0);
        let _ = writeln!(
            s,
            "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#888\"/>",
            oy + h / 2.0,
            MARGIN + w
        );
        for m in marks {
            let _ = writeln!(
                s,
                "<line x1=\"{0:.2}\" y1=\"{oy}\" x2=\"{0:.2}\" y2=\"{1}\" stroke=\"#c33\" stroke-dasharray=\"3,3\"/>",
                px(*m),
                oy + h
            );
        }
        let mut d = String::new();
        let mut pen_down = false;
        for (x, v) in pts {
            if v.is_finite() {
                let _ = write!(d, "{}{:.2},{:.2}", if pen_down { "L" } else { "M" }, px(*x), py(*v));
                pen_down = true;
            } else {
                pen_down = false;
            }
        }
        let _ = writeln!(s, "<path d=\"{d}\" fill=\"none\" stroke=\"black\"/>");
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
