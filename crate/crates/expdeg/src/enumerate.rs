//! Exhaustive small-case enumerators used by audits, searches and tests.

use crate::pairs::UnbrokenPair;
use crate::strata::Stratum;

/// All unbroken pairs with the given `n`.
pub fn unbroken_pairs(n: u32) -> impl Iterator<Item = UnbrokenPair> {
    (1..=n).flat_map(move |a_only| {
        (1..=n + 1 - a_only).filter_map(move |b_only| {
            let shared = (n + 1).checked_sub(a_only + b_only)?;
            UnbrokenPair::from_block_sizes(a_only, shared, b_only).ok()
        })
    })
}

/// All unbroken pairs with `n` from 1 up to `max_n`.
pub fn unbroken_pairs_up_to(max_n: u32) -> impl Iterator<Item = UnbrokenPair> {
    (1..=max_n).flat_map(unbroken_pairs)
}

/// Compositions of `total` into exactly `parts` positive integers.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts as u64 - 1) {
        for rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All strata over pairs with the given `n` and height at most `max_h`,
/// including the height-0 stratum with no vanishing directions.
pub fn strata(n: u32, max_h: u64) -> Vec<Stratum> {
    let mut out = Vec::new();
    for pair in unbroken_pairs(n) {
        let indices: Vec<u32> = (1..=n + 1).collect();
        for mask in 0u32..(1 << (n + 1)) {
            let zero_set: Vec<u32> = indices
                .iter()
                .copied()
                .filter(|i| mask >> (i - 1) & 1 == 1)
                .collect();
            if zero_set.is_empty() {
                out.push(Stratum::new(pair, &[]).unwrap());
                continue;
            }
            for h in zero_set.len() as u64..=max_h {
                for vals in compositions(h, zero_set.len()) {
                    let assignment: Vec<(u32, u64)> =
                        zero_set.iter().copied().zip(vals.iter().copied()).collect();
                    out.push(Stratum::new(pair, &assignment).unwrap());
                }
            }
        }
    }
    out
}

/// All integral vectors `(e1, e2, e3)` of non-negative entries summing to `h`.
pub fn lattice_points(h: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for e1 in 0..=h {
        for e2 in 0..=h - e1 {
            out.push([e1, e2, h - e1 - e2]);
        }
    }
    out
}

/// Subsets of `items` of exactly `k` elements, in input order.
pub fn subsets_of_size<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, k - 1, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Multisets of size `m` drawn from `items` (combinations with repetition).
pub fn multisets<T: Clone>(items: &[T], m: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], m: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, m - 1, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, m, 0, &mut Vec::new(), &mut out);
    out
}
