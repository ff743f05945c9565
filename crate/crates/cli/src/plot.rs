use std::fmt::Write;

use vandermat::io::format_real;
use vandermat::BlochPath;

pub fn csv(path: &BlochPath) -> String {
    let mut out = String::from("t,x,y,z\n");
    for &(t, x, y, z) in &path.samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_real(t),
            format_real(x),
            format_real(y),
            format_real(z)
        );
    }
    out
}

const SIZE: f64 = 400.0;
const RADIUS: f64 = 160.0;
const AZIMUTH: f64 = 0.6;
const ELEVATION: f64 = 0.35;

/// Orthographic projection of a point on the sphere to screen coordinates.
fn project(x: f64, y: f64, z: f64) -> (f64, f64) {
    let (sa, ca) = AZIMUTH.sin_cos();
    let (se, ce) = ELEVATION.sin_cos();
    let horizontal = y * ca - x * sa;
    let depth = x * ca + y * sa;
    let vertical = z * ce - depth * se;
    (SIZE / 2.0 + RADIUS * horizontal, SIZE / 2.0 - RADIUS * vertical)
}

/// Single polyline on a sphere outline; the stroke runs from blue at the
/// first sample to red at the last.
pub fn svg(path: &BlochPath) -> String {
    let points: Vec<(f64, f64)> = path.samples.iter().map(|&(_, x, y, z)| project(x, y, z)).collect();
    let (start, end) = match (points.first(), points.last()) {
        (Some(&a), Some(&b)) if a != b => (a, b),
        _ => ((0.0, 0.0), (SIZE, SIZE)),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r##"<defs><linearGradient id="time" gradientUnits="userSpaceOnUse" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"><stop offset="0" stop-color="#2040c0"/><stop offset="1" stop-color="#c02020"/></linearGradient></defs>"##,
        start.0, start.1, end.0, end.1
    );
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        r##"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#999"/>"##
    );
    let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="url(#time)" stroke-width="2" points="{}"/>"#,
        coords.join(" ")
    );
    out.push_str("</svg>\n");
    out
}
