//! Unbroken index pairs: the bookkeeping for which blow-ups are made.
//!
//! A pair `(A, B)` over `[n+1] = {1, ..., n+1}` is *unbroken* when `A` is a
//! proper prefix containing 1, `B` is a proper suffix containing `n+1`, and
//! together they cover `[n+1]`. Reading indices in order, classes appear as
//! a block of `A\B`, then `A∩B`, then `B\A`, with the middle block possibly
//! empty.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which of the three blocks an index of `[n+1]` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IndexClass {
    /// In `A` but not `B`.
    AOnly,
    /// In both `A` and `B`.
    Shared,
    /// In `B` but not `A`.
    BOnly,
}

impl IndexClass {
    pub fn in_a(self) -> bool {
        matches!(self, IndexClass::AOnly | IndexClass::Shared)
    }

    pub fn in_b(self) -> bool {
        matches!(self, IndexClass::Shared | IndexClass::BOnly)
    }
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexClass::AOnly => write!(f, "A\\B"),
            IndexClass::Shared => write!(f, "A∩B"),
            IndexClass::BOnly => write!(f, "B\\A"),
        }
    }
}

/// An unbroken pair, stored by its block sizes. `A = {1..=a_only+shared}`,
/// `B = {n+2-(shared+b_only)..=n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnbrokenPair {
    n: u32,
    a_only: u32,
    shared: u32,
    b_only: u32,
}

impl UnbrokenPair {
    /// Validates `A`, `B` as subsets of `[n+1]` and builds the pair.
    /// Malformed input (empty sets, out-of-range indices) is an error;
    /// a well-formed pair that is simply not unbroken is `Ok(false)` in
    /// [`is_unbroken`], and an error here.
    pub fn new(n: u32, a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Result<Self> {
        validate_index_sets(n, a, b)?;
        if !unbroken_shape(n, a, b) {
            return Err(Error::validation(format!(
                "pair (A={a:?}, B={b:?}, n={n}) is not unbroken"
            )));
        }
        let shared = a.intersection(b).count() as u32;
        Ok(UnbrokenPair {
            n,
            a_only: a.len() as u32 - shared,
            shared,
            b_only: b.len() as u32 - shared,
        })
    }

    /// Builds a pair directly from block sizes `(|A\B|, |A∩B|, |B\A|)`.
    pub fn from_block_sizes(a_only: u32, shared: u32, b_only: u32) -> Result<Self> {
        if a_only == 0 || b_only == 0 {
            return Err(Error::validation(
                "blocks A\\B and B\\A of an unbroken pair must be nonempty",
            ));
        }
        Ok(UnbrokenPair {
            n: a_only + shared + b_only - 1,
            a_only,
            shared,
            b_only,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Block sizes `(|A\B|, |A∩B|, |B\A|)`.
    pub fn block_sizes(&self) -> (u32, u32, u32) {
        (self.a_only, self.shared, self.b_only)
    }

    pub fn a_len(&self) -> u32 {
        self.a_only + self.shared
    }

    pub fn b_len(&self) -> u32 {
        self.shared + self.b_only
    }

    pub fn contains_a(&self, i: u32) -> bool {
        i >= 1 && i <= self.a_len()
    }

    pub fn contains_b(&self, i: u32) -> bool {
        i >= self.n + 2 - self.b_len() && i <= self.n + 1
    }

    /// The block of an index of `[n+1]`.
    pub fn class_of(&self, i: u32) -> IndexClass {
        debug_assert!(i >= 1 && i <= self.n + 1);
        if i <= self.a_only {
            IndexClass::AOnly
        } else if i <= self.a_only + self.shared {
            IndexClass::Shared
        } else {
            IndexClass::BOnly
        }
    }

    pub fn a_set(&self) -> BTreeSet<u32> {
        (1..=self.a_len()).collect()
    }

    pub fn b_set(&self) -> BTreeSet<u32> {
        (self.n + 2 - self.b_len()..=self.n + 1).collect()
    }
}

fn validate_index_sets(n: u32, a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Result<()> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::validation("A and B must be nonempty"));
    }
    for &i in a.iter().chain(b.iter()) {
        if i == 0 || i > n + 1 {
            return Err(Error::validation(format!(
                "index {i} outside [n+1] = [1, {}]",
                n + 1
            )));
        }
    }
    Ok(())
}

fn unbroken_shape(n: u32, a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> bool {
    let a_prefix = a.iter().copied().eq(1..=a.len() as u32);
    let b_suffix = b.iter().copied().eq(n + 2 - b.len() as u32..=n + 1);
    let covers = a.len() + b.len() >= (n + 1) as usize
        && (1..=n + 1).all(|i| a.contains(&i) || b.contains(&i));
    a_prefix
        && b_suffix
        && covers
        && a.contains(&1)
        && !a.contains(&(n + 1))
        && b.contains(&(n + 1))
        && !b.contains(&1)
        && !a.difference(b).next().is_none()
        && !b.difference(a).next().is_none()
}

/// Whether `(A, B)` is unbroken over `[n+1]`. Malformed input is an error,
/// distinct from a well-formed pair that fails the condition.
pub fn is_unbroken(a: &BTreeSet<u32>, b: &BTreeSet<u32>, n: u32) -> Result<bool> {
    validate_index_sets(n, a, b)?;
    Ok(unbroken_shape(n, a, b))
}

impl Serialize for UnbrokenPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("UnbrokenPair", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("A", &self.a_set())?;
        s.serialize_field("B", &self.b_set())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for UnbrokenPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: u32,
            #[serde(rename = "A")]
            a: BTreeSet<u32>,
            #[serde(rename = "B")]
            b: BTreeSet<u32>,
        }
        let raw = Raw::deserialize(deserializer)?;
        UnbrokenPair::new(raw.n, &raw.a, &raw.b).map_err(D::Error::custom)
    }
}

/// An order-preserving inclusion of one pair's indices into a larger pair.
/// Positions of the target not in the image carry the basis value 1, so the
/// embedded locus sees exactly the source coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexEmbedding {
    pub source: UnbrokenPair,
    pub target: UnbrokenPair,
    /// `insertion[i-1]` is the target index of source index `i`.
    pub insertion: Vec<u32>,
}

impl IndexEmbedding {
    pub fn apply(&self, i: u32) -> u32 {
        self.insertion[(i - 1) as usize]
    }

    /// Composes `self: p -> q` with `other: q -> r` into `p -> r`.
    pub fn compose(&self, other: &IndexEmbedding) -> Result<IndexEmbedding> {
        if self.target != other.source {
            return Err(Error::validation(
                "embedding composition requires matching middle pair",
            ));
        }
        Ok(IndexEmbedding {
            source: self.source,
            target: other.target,
            insertion: self.insertion.iter().map(|&i| other.apply(i)).collect(),
        })
    }
}

/// The block embedding of `small` into `big`: each class lands in the same
/// class of the target. The `A\B` and `A∩B` blocks align with the start of
/// the target block, the `B\A` block aligns with its end, keeping index 1
/// and index `n+1` pinned to the extremes.
pub fn embed_pair(small: &UnbrokenPair, big: &UnbrokenPair) -> Result<IndexEmbedding> {
    let (sf, sm, sl) = small.block_sizes();
    let (bf, bm, bl) = big.block_sizes();
    for (class, s, b) in [("A\\B", sf, bf), ("A∩B", sm, bm), ("B\\A", sl, bl)] {
        if s > b {
            return Err(Error::ClassOverflow {
                class,
                source_len: s as usize,
                target_len: b as usize,
            });
        }
    }
    let mut insertion = Vec::with_capacity((small.n + 1) as usize);
    for i in 1..=sf {
        insertion.push(i);
    }
    for j in 1..=sm {
        insertion.push(bf + j);
    }
    for k in 1..=sl {
        insertion.push(big.n + 1 - (sl - k));
    }
    Ok(IndexEmbedding {
        source: *small,
        target: *big,
        insertion,
    })
}

/// The minimal common refinement: block sizes are the classwise maxima, so
/// both inputs embed via [`embed_pair`].
pub fn common_refinement(p1: &UnbrokenPair, p2: &UnbrokenPair) -> UnbrokenPair {
    let (f1, m1, l1) = p1.block_sizes();
    let (f2, m2, l2) = p2.block_sizes();
    UnbrokenPair::from_block_sizes(f1.max(f2), m1.max(m2), l1.max(l2))
        .expect("maxima of valid block sizes are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    fn pair(a: &[u32], b: &[u32], n: u32) -> UnbrokenPair {
        UnbrokenPair::new(n, &set(a), &set(b)).unwrap()
    }

    #[test]
    fn unbroken_examples() {
        assert!(is_unbroken(&set(&[1, 2]), &set(&[3]), 2).unwrap());
        for n in 1..=6 {
            let a: BTreeSet<u32> = (1..=n).collect();
            let b: BTreeSet<u32> = (2..=n + 1).collect();
            assert!(is_unbroken(&a, &b, n).unwrap(), "X[n] shape for n={n}");
        }
        assert!(!is_unbroken(&set(&[1, 3]), &set(&[2]), 2).unwrap());
    }

    #[test]
    fn malformed_input_is_an_error_not_false() {
        assert!(is_unbroken(&set(&[]), &set(&[2]), 1).is_err());
        assert!(is_unbroken(&set(&[1]), &set(&[4]), 1).is_err());
        assert!(is_unbroken(&set(&[0]), &set(&[2]), 1).is_err());
    }

    /// The definition by real thresholds `1 < b < a < n+1` with
    /// `A = N∩[1,a)`, `B = N∩(b,n+1]`, checked by brute force over
    /// half-integer thresholds.
    fn threshold_form_exists(a: &BTreeSet<u32>, b: &BTreeSet<u32>, n: u32) -> bool {
        let halves: Vec<f64> = (2..=2 * n + 1).map(|k| k as f64 / 2.0 + 0.25).collect();
        for &ta in &halves {
            for &tb in &halves {
                if !(1.0 < tb && tb < ta && ta < (n + 1) as f64) {
                    continue;
                }
                let aa: BTreeSet<u32> = (1..=n + 1).filter(|&i| (i as f64) < ta).collect();
                let bb: BTreeSet<u32> = (1..=n + 1).filter(|&i| (i as f64) > tb).collect();
                if &aa == a && &bb == b {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn agrees_with_threshold_form_exhaustively() {
        for n in 1..=6u32 {
            let all: Vec<u32> = (1..=n + 1).collect();
            for a_mask in 1u32..(1 << (n + 1)) {
                for b_mask in 1u32..(1 << (n + 1)) {
                    let a: BTreeSet<u32> = all
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| a_mask >> k & 1 == 1)
                        .map(|(_, &i)| i)
                        .collect();
                    let b: BTreeSet<u32> = all
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| b_mask >> k & 1 == 1)
                        .map(|(_, &i)| i)
                        .collect();
                    assert_eq!(
                        is_unbroken(&a, &b, n).unwrap(),
                        threshold_form_exists(&a, &b, n),
                        "A={a:?} B={b:?} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let e = embed_pair(&pair(&[1], &[2], 1), &pair(&[1, 2], &[3], 2)).unwrap();
        assert_eq!(e.insertion, vec![1, 3]);

        let p = pair(&[1, 2], &[3], 2);
        let id = embed_pair(&p, &p).unwrap();
        assert_eq!(id.insertion, vec![1, 2, 3]);

        let e = embed_pair(&pair(&[1], &[2], 1), &pair(&[1], &[2, 3], 2)).unwrap();
        assert_eq!(e.insertion, vec![1, 3]);
    }

    #[test]
    fn embedding_preserves_classes_exhaustively() {
        let pairs: Vec<UnbrokenPair> = crate::enumerate::unbroken_pairs_up_to(5).collect();
        for small in &pairs {
            for big in &pairs {
                let Ok(e) = embed_pair(small, big) else {
                    continue;
                };
                for i in 1..=small.n() + 1 {
                    assert_eq!(
                        small.class_of(i),
                        big.class_of(e.apply(i)),
                        "{small:?} into {big:?} at {i}"
                    );
                }
                // Order-preserving.
                for i in 1..small.n() + 1 {
                    assert!(e.apply(i) < e.apply(i + 1));
                }
            }
        }
    }

    #[test]
    fn embedding_composition_law() {
        let pairs: Vec<UnbrokenPair> = crate::enumerate::unbroken_pairs_up_to(4).collect();
        for p in &pairs {
            for q in &pairs {
                for r in &pairs {
                    let (Ok(pq), Ok(qr), Ok(pr)) =
                        (embed_pair(p, q), embed_pair(q, r), embed_pair(p, r))
                    else {
                        continue;
                    };
                    assert_eq!(pq.compose(&qr).unwrap(), pr);
                }
            }
        }
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(
            common_refinement(&pair(&[1], &[2], 1), &pair(&[1, 2], &[3], 2)),
            pair(&[1, 2], &[3], 2)
        );
        let p = pair(&[1, 2], &[2, 3], 2);
        assert_eq!(common_refinement(&p, &p), p);
        // Class sizes (1,1,1) against (2,0,1) give maxima (2,1,1).
        assert_eq!(
            common_refinement(&pair(&[1, 2], &[2, 3], 2), &pair(&[1, 2], &[3], 2)),
            pair(&[1, 2, 3], &[3, 4], 3)
        );
    }

    #[test]
    fn refinement_accepts_both_embeddings() {
        let pairs: Vec<UnbrokenPair> = crate::enumerate::unbroken_pairs_up_to(8).collect();
        for p1 in &pairs {
            for p2 in &pairs {
                let r = common_refinement(p1, p2);
                embed_pair(p1, &r).unwrap();
                embed_pair(p2, &r).unwrap();
            }
        }
    }

    #[test]
    fn json_round_trip_and_shape() {
        let p = pair(&[1, 2], &[2, 3], 2);
        let js = serde_json::to_value(p).unwrap();
        assert_eq!(js, serde_json::json!({"n": 2, "A": [1, 2], "B": [2, 3]}));
        let back: UnbrokenPair = serde_json::from_value(js).unwrap();
        assert_eq!(back, p);
        // Broken pairs are rejected at decode time.
        assert!(serde_json::from_value::<UnbrokenPair>(
            serde_json::json!({"n": 2, "A": [1, 3], "B": [2]})
        )
        .is_err());
    }
}
