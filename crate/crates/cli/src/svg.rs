use std::fmt::Write;

use vertexlab::constructions::bounding_box;
use vertexlab::curves::ClosedCurve;
use vertexlab::geom::Ambient;
use vertexlab::maps::project_to_fundamental_domain;
use vertexlab::Point;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 0.05;

/// Plot coordinates: chart points as they are, surface points as `(θ, t)`.
/// Quotient curves are folded into their fundamental domain.
fn plot_point(curve: &ClosedCurve, p: Point) -> Point {
    let p = match curve.quotient() {
        Some(q) if curve.closure().is_some() => project_to_fundamental_domain(p, q),
        _ => p,
    };
    match curve.ambient() {
        Ambient::Surface(_) => [p[1], p[0]],
        Ambient::Chart(_) => p,
    }
}

/// Splits the sampled curve where folding makes it jump between edges.
fn pieces(curve: &ClosedCurve, samples: usize) -> Vec<Vec<Point>> {
    let mut pts = curve.polyline(samples);
    pts.push(curve.point(curve.period()));
    let index = |p: Point| curve.quotient().filter(|_| curve.closure().is_some()).map_or(0, |q| q.domain_index(p));
    let mut out: Vec<Vec<Point>> = vec![Vec::new()];
    let mut last = index(pts[0]);
    for p in pts {
        let k = index(p);
        if k != last {
            out.push(Vec::new());
            last = k;
        }
        out.last_mut().expect("nonempty").push(plot_point(curve, p));
    }
    out.retain(|piece| piece.len() > 1);
    out
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// SVG of the curve with vertices in red and inflections in blue. The
/// viewBox is the bounding box of the plotted points with a 5% margin; the
/// y axis points up.
pub fn render(curve: &ClosedCurve, samples: usize, vertices: &[f64], inflections: &[f64]) -> String {
    let paths = pieces(curve, samples);
    let all: Vec<Point> = paths.iter().flatten().copied().collect();
    let [x0, y0, x1, y1] = bounding_box(&all);
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = MARGIN * span;
    let (vx, vy, vw, vh) = (x0 - pad, -(y1 + pad), x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = span / SIZE * 1.5;
    let radius = span / SIZE * 5.0;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{}" viewBox="{} {} {} {}">"#,
        num(SIZE * vh / vw),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let _ = writeln!(s, "<title>{}</title>", escape(curve.label()));
    let _ = writeln!(s, r#"<g transform="scale(1,-1)" fill="none" stroke="black" stroke-width="{}">"#, num(stroke));
    for piece in &paths {
        let d: Vec<String> = piece.iter().map(|p| format!("{},{}", num(p[0]), num(p[1]))).collect();
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, d.join(" "));
    }
    let _ = writeln!(s, "</g>");
    for (class, color, ts) in [("vertex", "red", vertices), ("inflection", "blue", inflections)] {
        for &t in ts {
            let p = plot_point(curve, curve.point(t));
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
                num(p[0]),
                num(-p[1]),
                num(radius)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use vertexlab::constructions::{flat_translation_perturbation, polar_cos5};

    #[test]
    fn markers_and_header() {
        let c = polar_cos5();
        let svg = render(&c, 256, &[0.0, 1.0], &[2.0]);
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches(r#"fill="red""#).count(), 2);
        assert_eq!(svg.matches(r#"fill="blue""#).count(), 1);
    }

    #[test]
    fn quotient_curves_fold_into_the_strip() {
        let c = flat_translation_perturbation(1.0, 0.1).unwrap();
        for piece in pieces(&c, 64) {
            assert!(piece.iter().all(|p| (-1e-9..=1.0 + 1e-9).contains(&p[0])));
        }
    }
}
