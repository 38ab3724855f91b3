//! Renders the recurring pictures as SVG files: the bare triangle, the pure
//! doubled-zero fibre, the fully degenerate three-zero fibre, and a slide
//! witness. Pass a directory to write into (default `target/gallery`).

use expdeg::fibres::{build_fibre, subdivision_of};
use expdeg::pairs::UnbrokenPair;
use expdeg::render::{dot_adjacency, render_subdivision_svg, RenderStyle};
use expdeg::strata::Stratum;
use expdeg::tropical::Subdivision;

fn stratum(a: &[u32], b: &[u32], n: u32, zeros: &[(u32, u64)]) -> Stratum {
    let pair = UnbrokenPair::new(
        n,
        &a.iter().copied().collect(),
        &b.iter().copied().collect(),
    )
    .unwrap();
    Stratum::new(pair, zeros).unwrap()
}

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/gallery".into());
    std::fs::create_dir_all(&dir)?;
    let style = RenderStyle::default();

    let pure = subdivision_of(&build_fibre(&stratum(&[1, 2], &[3], 2, &[(1, 1), (2, 1)])));
    let mixed = subdivision_of(&build_fibre(&stratum(
        &[1, 2],
        &[3],
        2,
        &[(1, 1), (2, 1), (3, 1)],
    )));
    let slide_witness =
        Subdivision::new(6, [(2, 1), (3, 1), (4, 1)].into(), [(2, 1)].into()).unwrap();

    let scenes = [
        ("bare_triangle.svg", Subdivision::trivial(2)),
        ("pure_line_fibre.svg", pure),
        ("mixed_and_pure_fibre.svg", mixed.clone()),
        ("slide_witness.svg", slide_witness),
    ];
    for (name, sub) in &scenes {
        let path = format!("{dir}/{name}");
        std::fs::write(&path, render_subdivision_svg(sub, None, &style))?;
        println!("wrote {path}");
    }
    let dot_path = format!("{dir}/mixed_and_pure_adjacency.dot");
    std::fs::write(&dot_path, dot_adjacency(&mixed, true))?;
    println!("wrote {dot_path}");
    Ok(())
}
