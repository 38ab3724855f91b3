//! The edge-sliding smoothing criterion: a doubled cut line through a vertex
//! sheds a copy, and the new crossings adjacent to the vertex are exactly
//! the components its bubble can deform into.

use expdeg::smoothing::{enumerate_slides, smoothing_targets, Rescale, SmoothingProblem};
use expdeg::tropical::Subdivision;

fn main() {
    let subdivision = Subdivision::new(
        6,
        [(2, 2), (4, 1)].into(), // the level-2 line carries multiplicity 2
        [(2, 1)].into(),
    )
    .unwrap();
    let problem = SmoothingProblem::new(subdivision, [2, 2, 2]);

    println!("slides from the doubled line through {:?}:", problem.v0);
    for slid in enumerate_slides(&problem).unwrap() {
        println!("  cuts1 = {:?}", slid.cuts1);
    }

    let report = smoothing_targets(&problem).unwrap();
    println!("\nsmoothing targets:");
    for t in &report.targets {
        println!("  {:?} (witness cuts1 = {:?})", t.at, t.witness.cuts1);
    }
    println!(
        "the boundary endpoints [3,0,3] and [3,3,0] of the slid line are not targets: {}",
        report.targets.iter().all(|t| t.at[2] > 0)
    );

    // At the primitive height there is no integral level to slide to; a base
    // change creates one.
    let cramped = SmoothingProblem::new(
        Subdivision::new(3, [(1, 2), (2, 1)].into(), [(1, 1)].into()).unwrap(),
        [1, 1, 1],
    );
    match enumerate_slides(&cramped) {
        Err(e) => println!("\nat height 3: {e}"),
        Ok(_) => unreachable!(),
    }
    let mut rescaled = cramped;
    rescaled.rescale = Some(Rescale::Auto);
    let report = smoothing_targets(&rescaled).unwrap();
    println!(
        "after automatic rescale to height {}: targets {:?}",
        report.h,
        report.targets.iter().map(|t| t.at).collect::<Vec<_>>()
    );
}
