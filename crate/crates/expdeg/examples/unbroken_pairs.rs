//! The index bookkeeping: which pairs are unbroken, how smaller pairs embed
//! into larger ones, and common refinements.

use std::collections::BTreeSet;

use expdeg::pairs::{common_refinement, embed_pair, is_unbroken, UnbrokenPair};

fn set(xs: &[u32]) -> BTreeSet<u32> {
    xs.iter().copied().collect()
}

fn main() {
    for (a, b, n) in [
        (vec![1, 2], vec![3], 2u32),
        (vec![1, 2], vec![2, 3], 2),
        (vec![1, 3], vec![2], 2),
        (vec![1], vec![3], 2),
    ] {
        let ok = is_unbroken(&set(&a), &set(&b), n).unwrap();
        println!("A = {a:?}, B = {b:?}, n = {n}: unbroken = {ok}");
    }

    let small = UnbrokenPair::new(1, &set(&[1]), &set(&[2])).unwrap();
    let big = UnbrokenPair::new(2, &set(&[1, 2]), &set(&[3])).unwrap();
    let e = embed_pair(&small, &big).unwrap();
    println!("\nembedding of {small:?}\n  into {big:?}:");
    for i in 1..=small.n() + 1 {
        println!("  {i} -> {}", e.apply(i));
    }

    let p1 = UnbrokenPair::new(2, &set(&[1, 2]), &set(&[2, 3])).unwrap();
    let p2 = UnbrokenPair::new(2, &set(&[1, 2]), &set(&[3])).unwrap();
    let r = common_refinement(&p1, &p2);
    println!("\ncommon refinement of {p1:?} and {p2:?}:");
    println!("  {} ", serde_json::to_string(&r).unwrap());
    println!(
        "  both embeddings exist: {}",
        embed_pair(&p1, &r).is_ok() && embed_pair(&p2, &r).is_ok()
    );
}
