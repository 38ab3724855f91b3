//! Base strata and their identifications: normal forms, equivalence with a
//! witness chain, and the independent fibre-isomorphism cross-check.

use std::collections::BTreeSet;

use expdeg::fibres::{build_fibre, fibres_isomorphic};
use expdeg::pairs::UnbrokenPair;
use expdeg::strata::{base_action_weights, normal_forms, strata_equivalent, Stratum};

fn stratum(a: &[u32], b: &[u32], n: u32, zeros: &[(u32, u64)]) -> Stratum {
    let a: BTreeSet<u32> = a.iter().copied().collect();
    let b: BTreeSet<u32> = b.iter().copied().collect();
    Stratum::new(UnbrokenPair::new(n, &a, &b).unwrap(), zeros).unwrap()
}

fn main() {
    let s = stratum(&[1, 2], &[2, 3], 2, &[(1, 1), (2, 1)]);
    let (eps, del) = normal_forms(&s);
    println!("stratum {}", serde_json::to_string(&s).unwrap());
    println!("  first-demoted form: {:?}", eps.decorations);
    println!("  last-demoted form:  {:?}", del.decorations);

    // All three single-zero strata of equal valuation collapse to one class.
    let trio = [
        stratum(&[1, 2], &[3], 2, &[(1, 2)]),
        stratum(&[1, 2], &[2, 3], 2, &[(2, 2)]),
        stratum(&[1], &[2, 3], 2, &[(3, 2)]),
    ];
    println!("\nsingle-zero strata of valuation 2:");
    for s1 in &trio {
        for s2 in &trio {
            let w = strata_equivalent(s1, s2).unwrap();
            let iso = fibres_isomorphic(&build_fibre(s1), &build_fibre(s2));
            assert_eq!(w.equivalent, iso);
            if s1 != s2 && w.equivalent {
                println!(
                    "  {:?} ~ {:?} via chain of {} forms",
                    s1.decorations(),
                    s2.decorations(),
                    w.chain.len()
                );
            }
        }
    }

    // A doubled prefix-only zero set stays alone in its class.
    let lonely = stratum(&[1, 2], &[3], 2, &[(1, 1), (2, 1)]);
    let other = stratum(&[1], &[2, 3], 2, &[(1, 1), (2, 1)]);
    let w = strata_equivalent(&lonely, &other).unwrap();
    println!(
        "\nprefix-only doubled zeros vs mixed zeros: equivalent = {}",
        w.equivalent
    );

    println!("\ntorus weights on the basis directions for n = 3:");
    for (i, row) in base_action_weights(3).iter().enumerate() {
        println!("  t_{}: {row:?}", i + 1);
    }
}
