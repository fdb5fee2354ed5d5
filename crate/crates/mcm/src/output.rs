//! CSV and SVG emission.
//!
//! CSV files are UTF-8 with LF line endings, `.` decimal separator and 12
//! significant digits. Each file starts with `#`-prefixed metadata lines
//! (config echo, seed, powers, spread) so a file reproduces itself exactly.

use std::fmt::Write as _;

use crate::engine::{PasCurve, SweepCell};

/// Format with 12 significant digits, C `%.12g` style.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp_str) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp_str.parse().expect("exponent parses");
    if (-4..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", prec, v);
        let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

/// Render a curve as `angle_deg,value` CSV with metadata header lines.
pub fn curve_csv(curve: &PasCurve, metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "angle_deg,value");
    for (center, value) in curve.centers.iter().zip(&curve.values) {
        let _ = writeln!(out, "{},{}", fmt_sig(center.degrees()), fmt_sig(*value));
    }
    out
}

/// Render sweep results as `alpha_deg,beta_deg,output_power,angular_spread_deg`.
pub fn sweep_csv(cells: &[SweepCell], metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        let _ = writeln!(out, "# {k}: {v}");
    }
    let _ = writeln!(out, "alpha_deg,beta_deg,output_power,angular_spread_deg");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(c.alpha.degrees()),
            fmt_sig(c.beta.degrees()),
            fmt_sig(c.output_power),
            fmt_sig(c.angular_spread.to_degrees())
        );
    }
    out
}

/// A bare-bones polyline rendering of a curve. CSV is the contract; this is a
/// convenience for eyeballing results.
pub fn curve_svg(curve: &PasCurve, title: &str) -> String {
    let width = 900.0f64;
    let height = 480.0f64;
    let margin = 50.0f64;
    let max = curve.values.iter().cloned().fold(0.0f64, f64::max).max(1e-300);
    let plot_w = width - 2.0 * margin;
    let plot_h = height - 2.0 * margin;
    let mut points = String::new();
    for (center, value) in curve.centers.iter().zip(&curve.values) {
        let x = margin + (center.degrees() + 180.0) / 360.0 * plot_w;
        let y = height - margin - value / max * plot_h;
        let _ = write!(points, "{x:.2},{y:.2} ");
    }
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" ",
            "font-size=\"15\">{title}</text>\n",
            "<line x1=\"{m}\" y1=\"{yb}\" x2=\"{xr}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "<text x=\"{tx}\" y=\"{xl}\" text-anchor=\"middle\" font-family=\"sans-serif\" ",
            "font-size=\"12\">angle, deg (-180 .. 180)</text>\n",
            "<polyline points=\"{pts}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n",
            "</svg>\n"
        ),
        w = width,
        h = height,
        m = margin,
        tx = width / 2.0,
        yb = height - margin,
        xr = width - margin,
        xl = height - margin / 3.0,
        title = title,
        pts = points.trim_end()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::WrappedAngle;
    use crate::engine::CurveKind;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-179.5), "-179.5");
        assert_eq!(fmt_sig(0.5011872336272722), "0.501187233627");
        assert_eq!(fmt_sig(1.5e-12), "1.5e-12");
        assert_eq!(fmt_sig(3.63e-7), "3.63e-7");
        // round-trips to 12 significant digits
        let v = 0.123456789012345;
        let parsed: f64 = fmt_sig(v).parse().unwrap();
        assert!((parsed - v).abs() / v < 1e-11);
    }

    #[test]
    fn curve_csv_layout() {
        let curve = PasCurve {
            centers: vec![
                WrappedAngle::from_degrees(-90.0).unwrap(),
                WrappedAngle::from_degrees(90.0).unwrap(),
            ],
            values: vec![0.25, 0.75],
            bin_width: std::f64::consts::PI,
            total_power: 1.0,
            kind: CurveKind::Pas,
            direct_mass: 0.0,
        };
        let csv = curve_csv(&curve, &[("seed".into(), "1".into())]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# seed: 1");
        assert_eq!(lines[1], "angle_deg,value");
        assert_eq!(lines[2], "-90,0.25");
        assert_eq!(lines[3], "90,0.75");
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn svg_contains_polyline() {
        let curve = PasCurve {
            centers: vec![WrappedAngle::from_degrees(0.0).unwrap()],
            values: vec![1.0],
            bin_width: 2.0 * std::f64::consts::PI,
            total_power: 1.0,
            kind: CurveKind::Pas,
            direct_mass: 0.0,
        };
        let svg = curve_svg(&curve, "pas");
        assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    }
}
