//! Standalone subdivisions of the height-`h` triangle slice: cut lines of the
//! two types with multiplicities, the unbroken attach pattern, rescaling and
//! refinement up to the stack equivalences.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::codec::level_map;
use crate::error::{Error, Result};

/// A subdivision of the triangle `{e1 + e2 + e3 = h, e_i >= 0}`. Type-1 cut
/// lines are the level sets `{e1 = c}`, type-2 the level sets `{e2 = c}`,
/// each carrying a positive multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Subdivision {
    pub h: u64,
    #[serde(with = "level_map", default)]
    pub cuts1: BTreeMap<u64, u32>,
    #[serde(with = "level_map", default)]
    pub cuts2: BTreeMap<u64, u32>,
}

impl Subdivision {
    pub fn new(h: u64, cuts1: BTreeMap<u64, u32>, cuts2: BTreeMap<u64, u32>) -> Result<Self> {
        let s = Subdivision { h, cuts1, cuts2 };
        s.validate()?;
        Ok(s)
    }

    /// The bare triangle at height `h`.
    pub fn trivial(h: u64) -> Self {
        Subdivision {
            h,
            cuts1: BTreeMap::new(),
            cuts2: BTreeMap::new(),
        }
    }

    pub fn from_level_sets(h: u64, cuts1: &BTreeSet<u64>, cuts2: &BTreeSet<u64>) -> Result<Self> {
        Subdivision::new(
            h,
            cuts1.iter().map(|&c| (c, 1)).collect(),
            cuts2.iter().map(|&c| (c, 1)).collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (&level, &mult) in self.cuts1.iter().chain(self.cuts2.iter()) {
            if level == 0 || level >= self.h {
                return Err(Error::validation(format!(
                    "cut level {level} outside the open range (0, {})",
                    self.h
                )));
            }
            if mult == 0 {
                return Err(Error::validation("cut multiplicities must be positive"));
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.cuts1.is_empty() && self.cuts2.is_empty()
    }

    pub fn level_set_1(&self) -> BTreeSet<u64> {
        self.cuts1.keys().copied().collect()
    }

    pub fn level_set_2(&self) -> BTreeSet<u64> {
        self.cuts2.keys().copied().collect()
    }

    /// Vertices of the line arrangement: crossings of the two line types and
    /// intersections with the triangle boundary, corners excluded.
    pub fn vertices(&self) -> BTreeSet<[u64; 3]> {
        let h = self.h;
        let mut out = BTreeSet::new();
        for &c1 in self.cuts1.keys() {
            out.insert([c1, h - c1, 0]);
            out.insert([c1, 0, h - c1]);
            for &c2 in self.cuts2.keys() {
                if c1 + c2 <= h {
                    out.insert([c1, c2, h - c1 - c2]);
                }
            }
        }
        for &c2 in self.cuts2.keys() {
            out.insert([h - c2, c2, 0]);
            out.insert([0, c2, h - c2]);
        }
        out
    }

    /// Cut lines through a point: `(type-1 level, type-2 level)`.
    pub fn lines_through(&self, v: [u64; 3]) -> (Option<u64>, Option<u64>) {
        (
            self.cuts1.contains_key(&v[0]).then_some(v[0]),
            self.cuts2.contains_key(&v[1]).then_some(v[1]),
        )
    }

    /// Breakpoints shared by a cut line and its complementary partner: the
    /// type-1 line at level `c` and the type-2 line at level `h - c` carry
    /// the same torus factor.
    pub fn breakpoints(&self) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self.level_set_1();
        out.extend(self.cuts2.keys().map(|&c| self.h - c));
        out
    }

    /// Whether two arrangement vertices share an edge: both on one common
    /// line (a cut line, or a boundary side when `boundary` is set) with no
    /// third vertex strictly between them.
    pub fn adjacent(&self, a: [u64; 3], b: [u64; 3], boundary: bool) -> bool {
        if a == b {
            return false;
        }
        let mut common: Vec<usize> = Vec::new();
        if self.cuts1.contains_key(&a[0]) && a[0] == b[0] {
            common.push(0);
        }
        if self.cuts2.contains_key(&a[1]) && a[1] == b[1] {
            common.push(1);
        }
        if boundary {
            for axis in 0..3 {
                if a[axis] == 0 && b[axis] == 0 {
                    common.push(axis + 3);
                }
            }
        }
        if common.is_empty() {
            return false;
        }
        let vertices = self.vertices();
        'lines: for key in common {
            let axis = key % 3;
            for v in &vertices {
                if v == &a || v == &b {
                    continue;
                }
                if v[axis] != a[axis] {
                    continue;
                }
                // Strictly between a and b along the line, in any transverse
                // coordinate.
                let t = (axis + 1) % 3;
                if (a[t] < v[t] && v[t] < b[t]) || (b[t] < v[t] && v[t] < a[t]) {
                    continue 'lines;
                }
            }
            return true;
        }
        false
    }
}

/// Attach structure of a subdivision along the side joining the first two
/// corners: where each cut line meets `{e3 = 0}`, keyed by `e1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachKind {
    Type1Only,
    Type2Only,
    Both,
}

pub fn attach_points(s: &Subdivision) -> BTreeMap<u64, AttachKind> {
    let mut out = BTreeMap::new();
    for &c in s.cuts1.keys() {
        out.insert(c, AttachKind::Type1Only);
    }
    for &c in s.cuts2.keys() {
        let e1 = s.h - c;
        out.entry(e1)
            .and_modify(|k| *k = AttachKind::Both)
            .or_insert(AttachKind::Type2Only);
    }
    out
}

/// The unbroken pattern: reading attach points from the first corner down
/// (decreasing `e1`), type-2-only points come first, then points with both
/// edge types, then type-1-only points.
pub fn check_unbroken_subdivision(s: &Subdivision) -> bool {
    let rank = |k: AttachKind| match k {
        AttachKind::Type2Only => 2,
        AttachKind::Both => 1,
        AttachKind::Type1Only => 0,
    };
    // Keys ascend in e1, so ranks must ascend too.
    let mut last = None;
    for kind in attach_points(s).values().map(|&k| rank(k)) {
        if let Some(prev) = last {
            if kind < prev {
                return false;
            }
        }
        last = Some(kind);
    }
    true
}

/// Base change: multiply the height and every level by `factor`,
/// multiplicities unchanged.
pub fn rescale(s: &Subdivision, factor: u64) -> Subdivision {
    assert!(factor >= 1, "rescale factor must be positive");
    Subdivision {
        h: s.h * factor,
        cuts1: s.cuts1.iter().map(|(&c, &m)| (c * factor, m)).collect(),
        cuts2: s.cuts2.iter().map(|(&c, &m)| (c * factor, m)).collect(),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Whether `fine` refines `coarse` up to the stack equivalences: after
/// rescaling to a common height and forgetting multiplicities, every cut
/// line of `coarse` is a cut line of `fine`.
pub fn refines_up_to_equivalence(fine: &Subdivision, coarse: &Subdivision) -> bool {
    if coarse.is_trivial() {
        return true;
    }
    if fine.is_trivial() {
        return false;
    }
    let common = lcm(fine.h, coarse.h);
    let f = rescale(fine, common / fine.h);
    let c = rescale(coarse, common / coarse.h);
    c.level_set_1().is_subset(&f.level_set_1()) && c.level_set_2().is_subset(&f.level_set_2())
}
