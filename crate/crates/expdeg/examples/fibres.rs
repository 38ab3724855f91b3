//! Expanded fibres as line arrangements: bubbles, kinds, locus memberships
//! and the JSON dump the command line emits.

use std::collections::BTreeSet;

use expdeg::fibres::{build_fibre, delta_membership, DeltaComponent, FibreDump};
use expdeg::pairs::UnbrokenPair;
use expdeg::strata::Stratum;

fn stratum(a: &[u32], b: &[u32], n: u32, zeros: &[(u32, u64)]) -> Stratum {
    let a: BTreeSet<u32> = a.iter().copied().collect();
    let b: BTreeSet<u32> = b.iter().copied().collect();
    Stratum::new(UnbrokenPair::new(n, &a, &b).unwrap(), zeros).unwrap()
}

fn main() {
    // Two consecutive prefix-only zeros: one pure expanded locus.
    let pure = build_fibre(&stratum(&[1, 2], &[3], 2, &[(1, 1), (2, 1)]));
    println!("pure expansion at height {}:", pure.height());
    for b in pure.bubbles() {
        println!(
            "  bubble {:?} ({:?}, directions {:?})",
            b.at, b.kind, b.directions
        );
    }

    // All three directions vanishing: mixed and pure loci together.
    let mixed = build_fibre(&stratum(&[1, 2], &[3], 2, &[(1, 1), (2, 1), (3, 1)]));
    println!("\nfully degenerate fibre at height {}:", mixed.height());
    for b in mixed.bubbles() {
        println!("  bubble {:?} ({:?})", b.at, b.kind);
    }
    for k in 1..=mixed.delta1_count() {
        println!(
            "  type-1 locus {k} = {:?}",
            delta_membership(&mixed, DeltaComponent::Type1(k)).unwrap()
        );
    }
    for j in 1..=mixed.delta2_count() {
        println!(
            "  type-2 locus {j} = {:?}",
            delta_membership(&mixed, DeltaComponent::Type2(j)).unwrap()
        );
    }

    println!(
        "\nJSON dump:\n{}",
        expdeg::codec::encode(&FibreDump::from(&mixed))
    );
}
