use std::f64::consts::TAU;
use std::fmt::Write;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;

/// Renders angle pairs as a square scatter over `[0, 2π)²` with axis
/// ticks at every multiple of π/2. Points are the only circle elements
/// in the output, so counting `<circle` recovers the sample size.
pub fn scatter(points: &[(f64, f64)]) -> String {
    let side = SIZE - 2.0 * MARGIN;
    let x = |t: f64| MARGIN + t / TAU * side;
    let y = |p: f64| SIZE - MARGIN - p / TAU * side;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">",
    );
    let _ = writeln!(
        out,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{side}\" height=\"{side}\" fill=\"none\" stroke=\"black\"/>",
    );

    let labels = ["0", "\u{3c0}/2", "\u{3c0}", "3\u{3c0}/2", "2\u{3c0}"];
    for (k, label) in labels.iter().enumerate() {
        let angle = k as f64 * TAU / 4.0;
        let px = x(angle);
        let py = y(angle);
        let bottom = SIZE - MARGIN;
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{bottom}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            bottom + 6.0,
        );
        let _ = writeln!(
            out,
            "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"12\">{label}</text>",
            bottom + 20.0,
        );
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{MARGIN}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            MARGIN - 6.0,
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"12\">{label}</text>",
            MARGIN - 10.0,
            py + 4.0,
        );
    }

    for &(t, p) in points {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#336699\" fill-opacity=\"0.65\"/>",
            x(t),
            y(p),
        );
    }
    out.push_str("</svg>\n");
    out
}
