//! The stability notions on one instructive instance: a pure type-1
//! expansion whose only support sits on the expanded bubble. It has finite
//! automorphisms, yet no representative of its class passes the support
//! criterion, at any search bound.

use std::collections::BTreeSet;

use expdeg::fibres::{build_fibre, subdivision_of, Corner};
use expdeg::pairs::UnbrokenPair;
use expdeg::stability::{
    git_criterion, is_lw_stable, is_sws_stable, stabilizer_rank, ClassPair, SupportAssignment,
    SupportPoint, SwsOutcome,
};
use expdeg::strata::Stratum;

fn main() {
    let a: BTreeSet<u32> = [1, 2].into();
    let b: BTreeSet<u32> = [3].into();
    let pair = UnbrokenPair::new(2, &a, &b).unwrap();
    let stratum = Stratum::new(pair, &[(1, 1), (2, 1)]).unwrap();
    let fibre = build_fibre(&stratum);
    let z = SupportAssignment::new(vec![SupportPoint::on_bubble([1, 1, 0])]);

    let lattice = stabilizer_rank(&fibre, &z).unwrap();
    println!(
        "stabilizer rank: {} (basis {:?})",
        lattice.rank, lattice.basis
    );
    println!("support criterion: {}", git_criterion(&fibre, &z).unwrap());
    println!(
        "finite automorphisms (LW): {}",
        is_lw_stable(&fibre, &z).unwrap()
    );

    let class = ClassPair {
        subdivision: subdivision_of(&fibre),
        support: z,
    };
    for bound in [2, 5, 8] {
        match is_sws_stable(&class, bound).unwrap() {
            SwsOutcome::Stable { witness } => {
                println!("search bound {bound}: stable via {witness:?}")
            }
            SwsOutcome::Unstable => println!("search bound {bound}: unstable, definitively"),
        }
    }

    // Adding a point inside the first corner repairs the failure.
    let repaired = ClassPair {
        subdivision: class.subdivision.clone(),
        support: SupportAssignment::new(vec![
            SupportPoint::on_bubble([1, 1, 0]),
            SupportPoint::in_corner(Corner::Y1),
        ]),
    };
    match is_sws_stable(&repaired, 8).unwrap() {
        SwsOutcome::Stable { witness } => println!(
            "with a point in the first corner: stable via n = {}",
            witness.n()
        ),
        SwsOutcome::Unstable => unreachable!(),
    }
}
