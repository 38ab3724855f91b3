//! Deterministic SVG and DOT renderings of subdivisions and fibres.
//!
//! The first corner is drawn at the top, the third bottom-left, the second
//! bottom-right; type-1 cuts are horizontal chords, type-2 cuts run parallel
//! to the left side. Identical inputs produce byte-identical output.

use std::fmt::Write;

use crate::fibres::{subdivision_of, Corner, ExpandedFibre, Member};
use crate::stability::SupportAssignment;
use crate::tropical::Subdivision;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderStyle {
    /// Draw corner labels and multiplicity markers.
    pub labels: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle { labels: true }
    }
}

const WIDTH: f64 = 600.0;
const HEIGHT: f64 = 520.0;
const TOP: (f64, f64) = (300.0, 40.0);
const BOTTOM_LEFT: (f64, f64) = (60.0, 460.0);
const BOTTOM_RIGHT: (f64, f64) = (540.0, 460.0);

fn project(v: [u64; 3], h: u64) -> (f64, f64) {
    if h == 0 {
        // Only corners exist at height zero.
        return TOP;
    }
    let w = [
        v[0] as f64 / h as f64,
        v[1] as f64 / h as f64,
        v[2] as f64 / h as f64,
    ];
    (
        w[0] * TOP.0 + w[1] * BOTTOM_RIGHT.0 + w[2] * BOTTOM_LEFT.0,
        w[0] * TOP.1 + w[1] * BOTTOM_RIGHT.1 + w[2] * BOTTOM_LEFT.1,
    )
}

fn corner_point(c: Corner) -> (f64, f64) {
    match c {
        Corner::Y1 => TOP,
        Corner::Y2 => BOTTOM_RIGHT,
        Corner::Y3 => BOTTOM_LEFT,
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), class: &str, width: f64) {
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" class="{class}" stroke-width="{width:.1}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn circle(out: &mut String, p: (f64, f64), r: f64, class: &str) {
    let _ = writeln!(
        out,
        r#"  <circle cx="{:.2}" cy="{:.2}" r="{r:.1}" class="{class}"/>"#,
        p.0, p.1
    );
}

fn text(out: &mut String, p: (f64, f64), s: &str, class: &str) {
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" class="{class}">{s}</text>"#,
        p.0, p.1
    );
}

/// Renders a subdivision, optionally with highlighted support points.
pub fn render_subdivision_svg(
    sub: &Subdivision,
    support: Option<&SupportAssignment>,
    style: &RenderStyle,
) -> String {
    let h = sub.h;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{HEIGHT:.0}" viewBox="0 0 {WIDTH:.0} {HEIGHT:.0}">"#
    );
    out.push_str(
        "  <style>\n    .side{stroke:#222;fill:none}\n    .cut1{stroke:#b03434;fill:none}\n    .cut2{stroke:#2b5fa8;fill:none}\n    .vertex{fill:#222}\n    .corner{fill:#222}\n    .support{fill:#d02020}\n    .label{font:16px sans-serif;fill:#222}\n    .mult{font:13px sans-serif;fill:#666}\n  </style>\n",
    );
    line(&mut out, TOP, BOTTOM_LEFT, "side", 1.5);
    line(&mut out, TOP, BOTTOM_RIGHT, "side", 1.5);
    line(&mut out, BOTTOM_LEFT, BOTTOM_RIGHT, "side", 1.5);

    for (&c, &mult) in &sub.cuts1 {
        let a = project([c, 0, h - c], h);
        let b = project([c, h - c, 0], h);
        line(&mut out, a, b, "cut1", if mult > 1 { 3.0 } else { 1.5 });
        if style.labels && mult > 1 {
            text(
                &mut out,
                (b.0 + 6.0, b.1 + 4.0),
                &format!("x{mult}"),
                "mult",
            );
        }
    }
    for (&c, &mult) in &sub.cuts2 {
        let a = project([0, c, h - c], h);
        let b = project([h - c, c, 0], h);
        line(&mut out, a, b, "cut2", if mult > 1 { 3.0 } else { 1.5 });
        if style.labels && mult > 1 {
            text(
                &mut out,
                (b.0 + 6.0, b.1 - 6.0),
                &format!("x{mult}"),
                "mult",
            );
        }
    }

    for corner in Corner::ALL {
        circle(&mut out, corner_point(corner), 4.0, "corner");
    }
    for v in sub.vertices() {
        circle(&mut out, project(v, h), 4.0, "vertex");
    }
    if let Some(support) = support {
        for p in &support.points {
            let pos = match p.target {
                Member::Bubble(at) => project(at, h),
                Member::Corner(c) => corner_point(c),
            };
            circle(&mut out, pos, 5.5, "support");
        }
    }
    if style.labels {
        text(&mut out, (TOP.0 - 10.0, TOP.1 - 12.0), "Y1", "label");
        text(
            &mut out,
            (BOTTOM_RIGHT.0 - 6.0, BOTTOM_RIGHT.1 + 22.0),
            "Y2",
            "label",
        );
        text(
            &mut out,
            (BOTTOM_LEFT.0 - 14.0, BOTTOM_LEFT.1 + 22.0),
            "Y3",
            "label",
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a fibre by its subdivision.
pub fn render_fibre_svg(
    fibre: &ExpandedFibre,
    support: Option<&SupportAssignment>,
    style: &RenderStyle,
) -> String {
    render_subdivision_svg(&subdivision_of(fibre), support, style)
}

/// The bubble-adjacency graph in DOT form: one node per arrangement vertex,
/// one edge per shared arrangement segment.
pub fn dot_adjacency(sub: &Subdivision, boundary: bool) -> String {
    let vertices: Vec<[u64; 3]> = sub.vertices().into_iter().collect();
    let name = |v: [u64; 3]| format!("b_{}_{}_{}", v[0], v[1], v[2]);
    let mut out = String::from("graph bubbles {\n");
    for &v in &vertices {
        let _ = writeln!(out, "  {};", name(v));
    }
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if sub.adjacent(a, b, boundary) {
                let _ = writeln!(out, "  {} -- {};", name(a), name(b));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::UnbrokenPair;
    use crate::strata::Stratum;

    fn fibre(a: &[u32], b: &[u32], n: u32, zeros: &[(u32, u64)]) -> ExpandedFibre {
        let pair = UnbrokenPair::new(
            n,
            &a.iter().copied().collect(),
            &b.iter().copied().collect(),
        )
        .unwrap();
        crate::fibres::build_fibre(&Stratum::new(pair, zeros).unwrap())
    }

    #[test]
    fn rendering_is_deterministic() {
        let f = fibre(&[1, 2], &[3], 2, &[(1, 1), (2, 1), (3, 1)]);
        let style = RenderStyle::default();
        let one = render_fibre_svg(&f, None, &style);
        let two = render_fibre_svg(&f, None, &style);
        assert_eq!(one, two);
        assert!(one.contains("cut1"));
        assert!(one.contains("cut2"));
    }

    #[test]
    fn support_points_are_highlighted() {
        use crate::stability::{SupportAssignment, SupportPoint};
        let f = fibre(&[1, 2], &[3], 2, &[(1, 1), (2, 1), (3, 1)]);
        let z = SupportAssignment::new(vec![
            SupportPoint::on_bubble([1, 1, 1]),
            SupportPoint::in_corner(Corner::Y2),
        ]);
        let svg = render_fibre_svg(&f, Some(&z), &RenderStyle::default());
        assert_eq!(svg.matches("class=\"support\"").count(), 2);
    }

    #[test]
    fn trivial_subdivision_is_a_bare_triangle() {
        let svg = render_subdivision_svg(
            &Subdivision::trivial(2),
            None,
            &RenderStyle { labels: false },
        );
        assert!(!svg.contains("class=\"cut1\""));
        assert!(!svg.contains("<text"));
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn dot_output_lists_adjacencies() {
        let f = fibre(&[1, 2], &[3], 2, &[(1, 1), (2, 1)]);
        let dot = dot_adjacency(f.subdivision(), true);
        assert!(dot.contains("b_1_0_1"));
        assert!(dot.contains("b_1_0_1 -- b_1_1_0;"));
    }
}
