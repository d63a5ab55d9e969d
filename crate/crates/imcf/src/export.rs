//! Deterministic CSV and SVG emission.
//!
//! CSV floats are written in fixed 17-significant-digit scientific notation
//! and JSON uses shortest round-trip formatting, so identical inputs produce
//! byte-identical files on every platform.

use nalgebra::Vector2;

use crate::curve::CurveJet;
use crate::verify::SampleRow;

/// Fixed-width scientific formatting: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Curve samples as `theta,x,y,kappa` rows; cusps carry `nan` curvature.
pub fn curve_csv(points: &[CurveJet]) -> String {
    let mut out = String::from("theta,x,y,kappa\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(p.theta),
            fmt_f64(p.alpha.x),
            fmt_f64(p.alpha.y),
            fmt_f64(p.kappa.unwrap_or(f64::NAN)),
        ));
    }
    out
}

/// Scan samples as `u_0,...,u_{n-1},residual,estimated_a,ratio` rows;
/// degenerate samples carry `nan` values.
pub fn samples_csv(rows: &[SampleRow]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let mut out = String::new();
    for i in 0..first.params.len() {
        out.push_str(&format!("u_{i},"));
    }
    out.push_str("residual,estimated_a,ratio\n");
    for row in rows {
        for p in &row.params {
            out.push_str(&fmt_f64(*p));
            out.push(',');
        }
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(row.residual.unwrap_or(f64::NAN)),
            fmt_f64(row.estimated_a.unwrap_or(f64::NAN)),
            fmt_f64(row.ratio.unwrap_or(f64::NAN)),
        ));
    }
    out
}

/// Flow snapshots: one `t,x0,y0,x1,y1,...` row per snapshot.
pub fn flow_csv(snapshots: &[(f64, Vec<Vector2<f64>>)]) -> String {
    let mut out = String::new();
    for (t, vertices) in snapshots {
        out.push_str(&fmt_f64(*t));
        for v in vertices {
            out.push_str(&format!(",{},{}", fmt_f64(v.x), fmt_f64(v.y)));
        }
        out.push('\n');
    }
    out
}

/// One polyline plus optional point markers (e.g. cusps).
#[derive(Clone, Debug, Default)]
pub struct SvgPath {
    pub points: Vec<[f64; 2]>,
    pub markers: Vec<[f64; 2]>,
    pub closed: bool,
}

/// Static SVG plot: one root element, one path per curve, coordinates in
/// curve units with an auto-fitted viewBox. The y axis is flipped so the
/// plot reads like mathematics.
pub fn svg_document(paths: &[SvgPath]) -> String {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for path in paths {
        for p in path.points.iter().chain(&path.markers) {
            let q = [p[0], -p[1]];
            for axis in 0..2 {
                min[axis] = min[axis].min(q[axis]);
                max[axis] = max[axis].max(q[axis]);
            }
        }
    }
    if !min[0].is_finite() {
        min = [0.0, 0.0];
        max = [1.0, 1.0];
    }
    let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
    let pad = 0.05 * span;
    let (x0, y0) = (min[0] - pad, min[1] - pad);
    let (w, h) = (max[0] - min[0] + 2.0 * pad, max[1] - min[1] + 2.0 * pad);
    let stroke = 0.004 * span;
    let marker_r = 0.01 * span;

    let coord = |v: f64| format!("{v:.6}");
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        coord(x0),
        coord(y0),
        coord(w),
        coord(h)
    );
    for path in paths {
        if path.points.is_empty() {
            continue;
        }
        out.push_str("  <path d=\"");
        for (i, p) in path.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            out.push_str(&format!("{cmd}{} {} ", coord(p[0]), coord(-p[1])));
        }
        if path.closed {
            out.push('Z');
        }
        out.push_str(&format!(
            "\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n",
            coord(stroke)
        ));
        for m in &path.markers {
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"red\"/>\n",
                coord(m[0]),
                coord(-m[1]),
                coord(marker_r)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::SolitonCurve;

    #[test]
    fn float_formatting_is_fixed_width_scientific() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn curve_csv_round_trips_shape() {
        let sc = SolitonCurve::new(0.75, 1.0, 0.0).unwrap();
        let points: Vec<_> = (0..8).map(|i| sc.point(i as f64 * 0.5)).collect();
        let csv = curve_csv(&points);
        assert_eq!(csv.lines().count(), 9);
        assert!(csv.starts_with("theta,x,y,kappa\n"));
        // determinism
        assert_eq!(csv, curve_csv(&points));
    }

    #[test]
    fn svg_has_one_path_per_curve_and_autofits() {
        let path = SvgPath {
            points: vec![[0.0, 0.0], [1.0, 2.0], [2.0, 0.5]],
            markers: vec![[1.0, 2.0]],
            closed: false,
        };
        let svg = svg_document(&[path.clone(), path]);
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("viewBox"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
