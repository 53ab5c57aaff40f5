//! Static SVG pictures of planar polytopes.

use std::fmt::Write;

use normcalc_core::LatticePolytope;

use crate::error::CliError;

pub struct Layer<'a> {
    pub polytope: &'a LatticePolytope,
    pub label: &'a str,
    pub fill: &'a str,
}

/// Pixels per half unit.
const STEP: i64 = 24;
const MARGIN: i64 = 40;

/// Draws the layers over the half-integer lattice, integer points darker.
pub fn render(layers: &[Layer<'_>]) -> Result<String, CliError> {
    if layers.iter().any(|l| l.polytope.dim() != 2) {
        return Err(CliError::Usage("SVG output needs a 2-component link".into()));
    }
    let mut lo = [-2i64, -2];
    let mut hi = [2i64, 2];
    let mut polys = Vec::new();
    for l in layers {
        let v = l.polytope.polygon()?;
        for p in &v {
            for i in 0..2 {
                lo[i] = lo[i].min(p.doubled()[i] - 1);
                hi[i] = hi[i].max(p.doubled()[i] + 1);
            }
        }
        polys.push(v);
    }
    let w = (hi[0] - lo[0]) * STEP + 2 * MARGIN;
    let h = (hi[1] - lo[1]) * STEP + 2 * MARGIN;
    let px = |d: i64| MARGIN + (d - lo[0]) * STEP;
    let py = |d: i64| MARGIN + (hi[1] - d) * STEP;

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(s, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999"/>"##, px(lo[0]), py(0), px(hi[0]), py(0)).unwrap();
    writeln!(s, r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999"/>"##, px(0), py(lo[1]), px(0), py(hi[1])).unwrap();
    for (k, (l, v)) in layers.iter().zip(&polys).enumerate() {
        let pts: Vec<String> = v.iter().map(|p| format!("{},{}", px(p.doubled()[0]), py(p.doubled()[1]))).collect();
        match v.len() {
            0 => {}
            1 => writeln!(s, r#"<circle cx="{}" cy="{}" r="5" fill="{}"/>"#, px(v[0].doubled()[0]), py(v[0].doubled()[1]), l.fill).unwrap(),
            2 => writeln!(s, r#"<polyline points="{}" stroke="{}" stroke-width="3" fill="none"/>"#, pts.join(" "), l.fill).unwrap(),
            _ => writeln!(s, r#"<polygon points="{}" fill="{}" fill-opacity="0.45" stroke="black"/>"#, pts.join(" "), l.fill).unwrap(),
        }
        writeln!(s, r#"<text x="8" y="{}" font-family="sans-serif" font-size="12" fill="{}">{}</text>"#, 16 + 16 * k, l.fill, l.label).unwrap();
    }
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            let integral = x % 2 == 0 && y % 2 == 0;
            let (r, c) = if integral { (2.5, "#222") } else { (1.5, "#aaa") };
            writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}" fill="{c}"/>"#, px(x), py(y)).unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use normcalc_core::polytope::hypercube;
    use normcalc_core::{Exponent, Half};

    #[test]
    fn square_and_point() {
        let sq = hypercube(2, Half::from_int(1));
        let pt = LatticePolytope::from_points(2, [Exponent::zero(2)]).unwrap();
        let s = render(&[
            Layer { polytope: &sq, label: "square", fill: "steelblue" },
            Layer { polytope: &pt, label: "origin", fill: "crimson" },
        ])
        .unwrap();
        assert!(s.starts_with("<svg"));
        assert!(s.contains("<polygon"));
        assert!(s.contains(r#"fill="crimson""#));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn rejects_other_dimensions() {
        let seg = hypercube(1, Half::from_int(1));
        assert!(render(&[Layer { polytope: &seg, label: "", fill: "red" }]).is_err());
    }
}
