//! SVG rendering of the spiral's right triangles.

use std::fmt::Write as _;

/// User units per model unit.
pub const SCALE: f64 = 64.0;

/// One closed path per triangle `(0, z_n, z_{n+1})` for consecutive points.
///
/// `points[k]` is the model position of `z_{k+1}`. The y axis is flipped so
/// the spiral winds counter-clockwise on screen; the origin sits at the
/// centre of the view box.
pub fn render_spiral(points: &[(f64, f64)]) -> String {
    let ribs = points.len().saturating_sub(1);
    let radius = points
        .iter()
        .map(|&(x, y)| x.hypot(y))
        .fold(1.0f64, f64::max)
        + 0.5;
    let half = (radius * SCALE).ceil();
    let size = 2.0 * half;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="{} {} {size} {size}" data-scale="{SCALE}">"#,
        -half, -half
    );
    let _ = writeln!(
        s,
        "  <desc>Spiral of Theodorus, {ribs} triangles. Scale: {SCALE} user units per model unit, origin at (0, 0), y axis flipped.</desc>"
    );
    let _ = writeln!(
        s,
        r##"  <g fill="#e8eef7" stroke="#1f3b73" stroke-width="1" stroke-linejoin="round">"##
    );
    for n in 1..=ribs {
        let (a, b) = (screen(points[n - 1]), screen(points[n]));
        let _ = writeln!(
            s,
            r#"    <path class="rib" data-n="{n}" d="M 0 0 L {} {} L {} {} Z"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "</svg>");
    s
}

fn screen((x, y): (f64, f64)) -> (f64, f64) {
    // + 0.0 turns -0.0 into 0.0
    (x * SCALE + 0.0, -y * SCALE + 0.0)
}
