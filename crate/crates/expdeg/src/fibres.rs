//! Expanded fibres over a stratum, realized as decorated line arrangements in
//! the height-`h` triangle, and the structural fibre-isomorphism test.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strata::Stratum;
use crate::tropical::Subdivision;

/// The three components of the unexpanded special fibre, doubling as the
/// corners of the tropical triangle: the first at `(h,0,0)`, the second at
/// `(0,h,0)`, the third at `(0,0,h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Corner {
    Y1,
    Y2,
    Y3,
}

impl Corner {
    pub fn position(self, h: u64) -> [u64; 3] {
        match self {
            Corner::Y1 => [h, 0, 0],
            Corner::Y2 => [0, h, 0],
            Corner::Y3 => [0, 0, h],
        }
    }

    pub const ALL: [Corner; 3] = [Corner::Y1, Corner::Y2, Corner::Y3];
}

/// A bubble or an original corner component: the places support can live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Member {
    Bubble([u64; 3]),
    Corner(Corner),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BubbleKind {
    Pure1,
    Pure2,
    Mixed,
}

/// An irreducible component of an expanded locus: a non-corner vertex of the
/// arrangement, together with the cut lines through it and the torus
/// directions acting on its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bubble {
    pub at: [u64; 3],
    pub kind: BubbleKind,
    /// Levels of the incident cut lines, by type.
    pub line1: Option<u64>,
    pub line2: Option<u64>,
    /// Torus coordinates scaling this bubble's projective coordinates:
    /// index `k` for a type-1 line shared by the blow-ups at `k`, and
    /// `n + 1 - j` for the type-2 line of the `j`-th blow-up family.
    pub directions: BTreeSet<u32>,
}

/// Reference to an expanded locus: `Type1(k)` for `k` in `A`, `Type2(j)` for
/// `j` in `1..=|B|` (the `j`-th blow-up along the second component, made at
/// basis index `n + 2 - j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DeltaComponent {
    Type1(u32),
    Type2(u32),
}

/// The fibre over a stratum: its subdivision with multiplicities, its
/// bubbles, and the level of every expanded locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedFibre {
    stratum: Stratum,
    subdivision: Subdivision,
    bubbles: Vec<Bubble>,
    /// `delta1_levels[k-1]` is the level of the `k`-th type-1 locus.
    delta1_levels: Vec<u64>,
    /// `delta2_levels[j-1]` is the level of the `j`-th type-2 locus.
    delta2_levels: Vec<u64>,
}

/// Builds the fibre over a stratum. Type-1 cut levels are the prefix
/// valuations at indices of `A`, type-2 levels the suffix valuations at
/// indices of `B`, in both cases kept only when strictly interior;
/// multiplicity counts the indices sharing a level.
pub fn build_fibre(s: &Stratum) -> ExpandedFibre {
    let h = s.height();
    let pair = *s.pair();
    let mut cuts1: BTreeMap<u64, u32> = BTreeMap::new();
    let mut cuts2: BTreeMap<u64, u32> = BTreeMap::new();
    let mut delta1_levels = Vec::with_capacity(pair.a_len() as usize);
    for k in 1..=pair.a_len() {
        let level = s.prefix_valuation(k);
        delta1_levels.push(level);
        if level > 0 && level < h {
            *cuts1.entry(level).or_insert(0) += 1;
        }
    }
    let mut delta2_levels = Vec::with_capacity(pair.b_len() as usize);
    for j in 1..=pair.b_len() {
        let level = s.suffix_valuation(pair.n() + 2 - j);
        delta2_levels.push(level);
        if level > 0 && level < h {
            *cuts2.entry(level).or_insert(0) += 1;
        }
    }
    let subdivision = Subdivision { h, cuts1, cuts2 };
    let bubbles = subdivision
        .vertices()
        .into_iter()
        .map(|at| {
            let (line1, line2) = subdivision.lines_through(at);
            let kind = match (line1, line2) {
                (Some(_), Some(_)) => BubbleKind::Mixed,
                (Some(_), None) => BubbleKind::Pure1,
                (None, Some(_)) => BubbleKind::Pure2,
                (None, None) => unreachable!("arrangement vertices lie on a cut line"),
            };
            let mut directions = BTreeSet::new();
            if let Some(c) = line1 {
                for k in 1..=pair.a_len() {
                    if delta1_levels[(k - 1) as usize] == c {
                        directions.insert(k);
                    }
                }
            }
            if let Some(c) = line2 {
                for j in 1..=pair.b_len() {
                    if delta2_levels[(j - 1) as usize] == c {
                        directions.insert(pair.n() + 1 - j);
                    }
                }
            }
            Bubble {
                at,
                kind,
                line1,
                line2,
                directions,
            }
        })
        .collect();
    ExpandedFibre {
        stratum: s.clone(),
        subdivision,
        bubbles,
        delta1_levels,
        delta2_levels,
    }
}

impl ExpandedFibre {
    pub fn stratum(&self) -> &Stratum {
        &self.stratum
    }

    pub fn height(&self) -> u64 {
        self.subdivision.h
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.subdivision
    }

    pub fn bubbles(&self) -> &[Bubble] {
        &self.bubbles
    }

    pub fn bubble_at(&self, at: [u64; 3]) -> Option<&Bubble> {
        self.bubbles.iter().find(|b| b.at == at)
    }

    pub fn delta1_level(&self, k: u32) -> Result<u64> {
        self.delta1_levels
            .get((k.wrapping_sub(1)) as usize)
            .copied()
            .ok_or_else(|| Error::NoSuchComponent(format!("no type-1 locus with index {k}")))
    }

    pub fn delta2_level(&self, j: u32) -> Result<u64> {
        self.delta2_levels
            .get((j.wrapping_sub(1)) as usize)
            .copied()
            .ok_or_else(|| Error::NoSuchComponent(format!("no type-2 locus with index {j}")))
    }

    pub fn delta1_count(&self) -> u32 {
        self.delta1_levels.len() as u32
    }

    pub fn delta2_count(&self) -> u32 {
        self.delta2_levels.len() as u32
    }
}

/// What a given expanded locus is equal to in this fibre: the bubbles of its
/// cut line when the level is interior, and the appropriate original
/// components when it has degenerated to the boundary.
pub fn delta_membership(f: &ExpandedFibre, which: DeltaComponent) -> Result<BTreeSet<Member>> {
    let h = f.height();
    let (level, is_type1) = match which {
        DeltaComponent::Type1(k) => (f.delta1_level(k)?, true),
        DeltaComponent::Type2(j) => (f.delta2_level(j)?, false),
    };
    if h == 0 {
        // The unexpanded fibre: every locus is the whole of it.
        return Ok(Corner::ALL.into_iter().map(Member::Corner).collect());
    }
    let members = if level == 0 {
        if is_type1 {
            [Corner::Y2, Corner::Y3].map(Member::Corner).into()
        } else {
            [Corner::Y1, Corner::Y3].map(Member::Corner).into()
        }
    } else if level == h {
        if is_type1 {
            [Member::Corner(Corner::Y1)].into()
        } else {
            [Member::Corner(Corner::Y2)].into()
        }
    } else {
        f.bubbles
            .iter()
            .filter(|b| {
                if is_type1 {
                    b.line1 == Some(level)
                } else {
                    b.line2 == Some(level)
                }
            })
            .map(|b| Member::Bubble(b.at))
            .collect()
    };
    Ok(members)
}

/// Structural fibre-isomorphism test, independent of the normal-form moves:
/// equal zero counts and valuation sequences, the first `r - 1` zeros
/// matching in `A`-membership and the last `r - 1` in `B`-membership. The
/// first zero may trade `A∩B` for `A\B` and the last may trade `A∩B` for
/// `B\A` without changing the fibre.
pub fn fibres_isomorphic(f1: &ExpandedFibre, f2: &ExpandedFibre) -> bool {
    let (s1, s2) = (&f1.stratum, &f2.stratum);
    let d1 = s1.decorations();
    let d2 = s2.decorations();
    if d1.len() != d2.len() || s1.zero_valuations() != s2.zero_valuations() {
        return false;
    }
    let r = d1.len();
    for i in 0..r.saturating_sub(1) {
        if d1[i].in_a() != d2[i].in_a() {
            return false;
        }
    }
    for i in 1..r {
        if d1[i].in_b() != d2[i].in_b() {
            return false;
        }
    }
    true
}

/// Forgets the locus indexing and keeps the tropical layer.
pub fn subdivision_of(f: &ExpandedFibre) -> Subdivision {
    f.subdivision.clone()
}

/// JSON dump of a fibre: height, cut tables and the sorted bubble list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreDump {
    pub h: u64,
    #[serde(with = "crate::codec::level_map")]
    pub cuts1: BTreeMap<u64, u32>,
    #[serde(with = "crate::codec::level_map")]
    pub cuts2: BTreeMap<u64, u32>,
    pub bubbles: Vec<[u64; 3]>,
}

impl From<&ExpandedFibre> for FibreDump {
    fn from(f: &ExpandedFibre) -> Self {
        FibreDump {
            h: f.subdivision.h,
            cuts1: f.subdivision.cuts1.clone(),
            cuts2: f.subdivision.cuts2.clone(),
            bubbles: f.bubbles.iter().map(|b| b.at).collect(),
        }
    }
}
