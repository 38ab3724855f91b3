//! Base strata: zero patterns with valuations, their normal forms under the
//! reordering isomorphisms, and the torus weights on the enlarged base.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pairs::{IndexClass, UnbrokenPair};

/// A base point class: which basis directions vanish and to what order.
/// `valuations[i-1]` is the vanishing order of direction `i`; it is positive
/// exactly on the zero set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratum {
    pair: UnbrokenPair,
    valuations: Vec<u64>,
    /// Opaque labels on nonzero coefficients, carried for collision
    /// bookkeeping and ignored by every equivalence.
    labels: BTreeMap<u32, String>,
}

impl Stratum {
    /// Builds a stratum from `(index, valuation)` assignments; indices not
    /// listed are nonzero (valuation 0).
    pub fn new(pair: UnbrokenPair, zeros: &[(u32, u64)]) -> Result<Self> {
        let mut valuations = vec![0u64; (pair.n() + 1) as usize];
        for &(i, g) in zeros {
            if i == 0 || i > pair.n() + 1 {
                return Err(Error::validation(format!(
                    "zero index {i} outside [1, {}]",
                    pair.n() + 1
                )));
            }
            if g == 0 {
                return Err(Error::validation(format!(
                    "index {i} listed as vanishing but has valuation 0"
                )));
            }
            valuations[(i - 1) as usize] = g;
        }
        Ok(Stratum {
            pair,
            valuations,
            labels: BTreeMap::new(),
        })
    }

    pub fn with_label(mut self, index: u32, label: impl Into<String>) -> Self {
        self.labels.insert(index, label.into());
        self
    }

    pub fn pair(&self) -> &UnbrokenPair {
        &self.pair
    }

    pub fn n(&self) -> u32 {
        self.pair.n()
    }

    /// The zero set, in increasing index order.
    pub fn zero_indices(&self) -> Vec<u32> {
        (1..=self.n() + 1)
            .filter(|&i| self.valuations[(i - 1) as usize] > 0)
            .collect()
    }

    pub fn valuation(&self, i: u32) -> u64 {
        self.valuations[(i - 1) as usize]
    }

    pub fn valuations(&self) -> &[u64] {
        &self.valuations
    }

    /// Base codimension: the number of vanishing directions.
    pub fn codimension(&self) -> usize {
        self.valuations.iter().filter(|&&g| g > 0).count()
    }

    /// Total vanishing order of `t = t_1 ... t_{n+1}`.
    pub fn height(&self) -> u64 {
        self.valuations.iter().sum()
    }

    /// Blocks of the zero indices, in increasing index order. Always matches
    /// the pattern `(A\B)* (A∩B)* (B\A)*`.
    pub fn decorations(&self) -> Vec<IndexClass> {
        self.zero_indices()
            .iter()
            .map(|&i| self.pair.class_of(i))
            .collect()
    }

    /// Valuations restricted to the zero set, in index order.
    pub fn zero_valuations(&self) -> Vec<u64> {
        self.valuations.iter().copied().filter(|&g| g > 0).collect()
    }

    /// Partial sum of valuations over indices `<= k`.
    pub fn prefix_valuation(&self, k: u32) -> u64 {
        self.valuations[..k as usize].iter().sum()
    }

    /// Sum of valuations over indices `>= k`.
    pub fn suffix_valuation(&self, k: u32) -> u64 {
        self.valuations[(k - 1) as usize..].iter().sum()
    }
}

impl Serialize for Stratum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let n_fields = if self.labels.is_empty() { 3 } else { 4 };
        let mut s = serializer.serialize_struct("Stratum", n_fields)?;
        s.serialize_field("pair", &self.pair)?;
        s.serialize_field("J", &self.zero_indices())?;
        s.serialize_field("g", &self.valuations)?;
        if !self.labels.is_empty() {
            s.serialize_field("labels", &self.labels)?;
        }
        s.end()
    }
}

impl<'de> Deserialize<'de> for Stratum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            pair: UnbrokenPair,
            #[serde(rename = "J")]
            zero_set: BTreeSet<u32>,
            g: Vec<u64>,
            #[serde(default)]
            labels: BTreeMap<u32, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.g.len() != (raw.pair.n() + 1) as usize {
            return Err(D::Error::custom(format!(
                "g must have n+1 = {} entries, got {}",
                raw.pair.n() + 1,
                raw.g.len()
            )));
        }
        for i in 1..=raw.pair.n() + 1 {
            let g = raw.g[(i - 1) as usize];
            let in_j = raw.zero_set.contains(&i);
            if in_j && g == 0 {
                return Err(D::Error::custom(format!("index {i} is in J but g_{i} = 0")));
            }
            if !in_j && g > 0 {
                return Err(D::Error::custom(format!(
                    "index {i} is not in J but g_{i} = {g} > 0"
                )));
            }
        }
        let zeros: Vec<(u32, u64)> = raw
            .zero_set
            .iter()
            .map(|&i| (i, raw.g[(i - 1) as usize]))
            .collect();
        let mut s = Stratum::new(raw.pair, &zeros).map_err(D::Error::custom)?;
        s.labels = raw.labels;
        Ok(s)
    }
}

/// A stratum up to reordering of basis directions: just the block sequence of
/// its zero set and the valuations, `r` entries each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedStratum {
    pub decorations: Vec<IndexClass>,
    pub valuations: Vec<u64>,
}

impl NormalizedStratum {
    pub fn r(&self) -> usize {
        self.decorations.len()
    }
}

/// The two normal forms of a stratum. The first demotes a leading shared
/// index to `A\B`; the second demotes a trailing shared index to `B\A`.
/// Everything else is untouched.
pub fn normal_forms(s: &Stratum) -> (NormalizedStratum, NormalizedStratum) {
    let decorations = s.decorations();
    let valuations = s.zero_valuations();
    (
        NormalizedStratum {
            decorations: epsilon_form(&decorations),
            valuations: valuations.clone(),
        },
        NormalizedStratum {
            decorations: delta_form(&decorations),
            valuations,
        },
    )
}

fn epsilon_form(decorations: &[IndexClass]) -> Vec<IndexClass> {
    let mut d = decorations.to_vec();
    if let Some(first) = d.first_mut() {
        if *first == IndexClass::Shared {
            *first = IndexClass::AOnly;
        }
    }
    d
}

fn delta_form(decorations: &[IndexClass]) -> Vec<IndexClass> {
    let mut d = decorations.to_vec();
    if let Some(last) = d.last_mut() {
        if *last == IndexClass::Shared {
            *last = IndexClass::BOnly;
        }
    }
    d
}

fn valid_pattern(d: &[IndexClass]) -> bool {
    d.windows(2).all(|w| w[0] <= w[1])
}

/// Outcome of an equivalence check, with the chain of intermediate
/// normalized strata when the answer is positive.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceWitness {
    pub equivalent: bool,
    pub chain: Vec<NormalizedStratum>,
}

/// Whether two strata are identified by the reordering isomorphisms: a
/// finite chain of shared normal forms with matching valuation sequences.
/// Only defined for equal `n` and equal base codimension.
pub fn strata_equivalent(s1: &Stratum, s2: &Stratum) -> Result<EquivalenceWitness> {
    if s1.n() != s2.n() {
        return Err(Error::DimensionMismatch(format!(
            "n = {} vs {}",
            s1.n(),
            s2.n()
        )));
    }
    if s1.codimension() != s2.codimension() {
        return Err(Error::DimensionMismatch(format!(
            "base codimension {} vs {}",
            s1.codimension(),
            s2.codimension()
        )));
    }
    let vals = s1.zero_valuations();
    if vals != s2.zero_valuations() {
        return Ok(EquivalenceWitness {
            equivalent: false,
            chain: vec![],
        });
    }
    let start = s1.decorations();
    let goal = s2.decorations();
    // Breadth-first search over the two normal-form moves; the state space
    // of block sequences of fixed length is finite.
    let mut parents: BTreeMap<Vec<IndexClass>, Vec<IndexClass>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    parents.insert(start.clone(), start.clone());
    queue.push_back(start.clone());
    while let Some(d) = queue.pop_front() {
        if d == goal {
            let mut chain = vec![];
            let mut cur = d;
            loop {
                chain.push(NormalizedStratum {
                    decorations: cur.clone(),
                    valuations: vals.clone(),
                });
                let p = parents[&cur].clone();
                if p == cur {
                    break;
                }
                cur = p;
            }
            chain.reverse();
            return Ok(EquivalenceWitness {
                equivalent: true,
                chain,
            });
        }
        for next in moves(&d) {
            if !parents.contains_key(&next) {
                parents.insert(next.clone(), d.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(EquivalenceWitness {
        equivalent: false,
        chain: vec![],
    })
}

/// One-step neighbours: sequences sharing a normal form with `d`.
fn moves(d: &[IndexClass]) -> Vec<Vec<IndexClass>> {
    let mut out = Vec::new();
    if let Some(&first) = d.first() {
        let swapped = match first {
            IndexClass::Shared => Some(IndexClass::AOnly),
            IndexClass::AOnly => Some(IndexClass::Shared),
            IndexClass::BOnly => None,
        };
        if let Some(c) = swapped {
            let mut v = d.to_vec();
            v[0] = c;
            if valid_pattern(&v) {
                out.push(v);
            }
        }
    }
    if let Some(&last) = d.last() {
        let swapped = match last {
            IndexClass::Shared => Some(IndexClass::BOnly),
            IndexClass::BOnly => Some(IndexClass::Shared),
            IndexClass::AOnly => None,
        };
        if let Some(c) = swapped {
            let mut v = d.to_vec();
            *v.last_mut().unwrap() = c;
            if valid_pattern(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Weight matrix of the torus action on the basis directions: one row per
/// `t_1 ... t_{n+1}`, one column per torus coordinate. Row sums vanish, the
/// action living inside the special linear group.
pub fn base_action_weights(n: u32) -> Vec<Vec<i64>> {
    let n = n as usize;
    let mut rows = vec![vec![0i64; n]; n + 1];
    rows[0][0] = -1;
    for k in 2..=n {
        rows[k - 1][k - 2] = 1;
        rows[k - 1][k - 1] = -1;
    }
    rows[n][n - 1] = 1;
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::IndexClass::{AOnly, BOnly, Shared};

    fn pair(a: &[u32], b: &[u32], n: u32) -> UnbrokenPair {
        UnbrokenPair::new(
            n,
            &a.iter().copied().collect(),
            &b.iter().copied().collect(),
        )
        .unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let p = pair(&[1, 2], &[2, 3], 2);
        let s = Stratum::new(p, &[(2, 1)]).unwrap();
        let (eps, del) = normal_forms(&s);
        assert_eq!(eps.decorations, vec![AOnly]);
        assert_eq!(del.decorations, vec![BOnly]);

        let s = Stratum::new(pair(&[1, 2], &[3], 2), &[(1, 1), (2, 1)]).unwrap();
        let (eps, del) = normal_forms(&s);
        assert_eq!(eps.decorations, vec![AOnly, AOnly]);
        assert_eq!(del.decorations, vec![AOnly, AOnly]);

        let s = Stratum::new(pair(&[1, 2], &[2, 3], 2), &[(1, 1), (2, 1)]).unwrap();
        let (eps, del) = normal_forms(&s);
        assert_eq!(eps.decorations, vec![AOnly, Shared]);
        assert_eq!(del.decorations, vec![AOnly, BOnly]);
    }

    #[test]
    fn codimension_one_collapse() {
        // All three single-zero decorations with equal valuation are
        // pairwise equivalent.
        let strata = [
            Stratum::new(pair(&[1, 2], &[3], 2), &[(1, 2)]).unwrap(),
            Stratum::new(pair(&[1, 2], &[2, 3], 2), &[(2, 2)]).unwrap(),
            Stratum::new(pair(&[1], &[2, 3], 2), &[(3, 2)]).unwrap(),
        ];
        for s1 in &strata {
            for s2 in &strata {
                let w = strata_equivalent(s1, s2).unwrap();
                assert!(w.equivalent, "{s1:?} ~ {s2:?}");
                assert!(!w.chain.is_empty());
            }
        }
    }

    #[test]
    fn codimension_two_classes() {
        let aa = Stratum::new(pair(&[1, 2], &[3], 2), &[(1, 1), (2, 1)]).unwrap();
        let ml = Stratum::new(pair(&[1, 2], &[2, 3], 2), &[(2, 1), (3, 1)]).unwrap();
        let mm = Stratum::new(pair(&[1, 2, 3], &[2, 3, 4], 3), &[(2, 1), (3, 1)]).unwrap();
        let fl = Stratum::new(pair(&[1], &[2, 3], 2), &[(1, 1), (2, 1)]).unwrap();
        assert!(!strata_equivalent(&aa, &ml).unwrap().equivalent);
        assert!(strata_equivalent(&ml, &fl).unwrap().equivalent);
        // Different n is a dimension mismatch, not "false".
        assert!(strata_equivalent(&mm, &ml).is_err());
    }

    #[test]
    fn mismatched_valuations_are_inequivalent() {
        let p = pair(&[1, 2], &[3], 2);
        let s1 = Stratum::new(p, &[(1, 1), (2, 2)]).unwrap();
        let s2 = Stratum::new(p, &[(1, 2), (2, 1)]).unwrap();
        assert!(!strata_equivalent(&s1, &s2).unwrap().equivalent);
    }

    #[test]
    fn equivalence_relation_axioms() {
        let strata = crate::enumerate::strata(3, 3);
        // Reflexive, symmetric on a full small sweep.
        for s in &strata {
            assert!(strata_equivalent(s, s).unwrap().equivalent);
        }
        for s1 in strata.iter().step_by(7) {
            for s2 in strata.iter().step_by(5) {
                let Ok(w12) = strata_equivalent(s1, s2) else {
                    continue;
                };
                let w21 = strata_equivalent(s2, s1).unwrap();
                assert_eq!(w12.equivalent, w21.equivalent);
            }
        }
    }

    #[test]
    fn base_weights_examples() {
        assert_eq!(
            base_action_weights(2),
            vec![vec![-1, 0], vec![1, -1], vec![0, 1]]
        );
        assert_eq!(base_action_weights(1), vec![vec![-1], vec![1]]);
        for n in 1..=6 {
            let rows = base_action_weights(n);
            let mut sum = vec![0i64; n as usize];
            for row in &rows {
                for (s, x) in sum.iter_mut().zip(row) {
                    *s += x;
                }
            }
            assert!(sum.iter().all(|&x| x == 0), "rows sum to zero for n={n}");
        }
    }

    #[test]
    fn stratum_json_rejects_inconsistent_valuations() {
        let js = serde_json::json!({
            "pair": {"n": 2, "A": [1, 2], "B": [3]},
            "J": [1, 2],
            "g": [1, 0, 0]
        });
        assert!(serde_json::from_value::<Stratum>(js).is_err());

        let js = serde_json::json!({
            "pair": {"n": 2, "A": [1, 2], "B": [3]},
            "J": [1, 2],
            "g": [1, 1, 0]
        });
        let s: Stratum = serde_json::from_value(js).unwrap();
        assert_eq!(s.height(), 2);
        assert_eq!(s.decorations(), vec![AOnly, AOnly]);
    }
}
