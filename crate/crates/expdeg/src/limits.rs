//! Tropical point configurations and their limits: associated-pair
//! enumeration, stable-extension sets, bar equivalence classes, unique
//! limits under a stability condition, and properness audits.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::fibres::{Corner, Member};
use crate::stability::{
    class_is_lw_stable, default_sws_bound, is_ab_stable, is_sws_stable, ClassPair, EdgeChoice,
    EnumerationMode, Position, StabilityCondition, SupportAssignment, SupportPoint, SwsOutcome,
};
use crate::tropical::{check_unbroken_subdivision, refines_up_to_equivalence, Subdivision};

/// A multiset of valuation vectors `(e1, e2, e3)`, each summing to the
/// height: the tropical shadow of a family of points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PointConfiguration {
    h: u64,
    vertices: Vec<[u64; 3]>,
}

impl PointConfiguration {
    pub fn new(h: u64, mut vertices: Vec<[u64; 3]>) -> Result<Self> {
        if h == 0 {
            return Err(Error::validation("configuration height must be positive"));
        }
        if vertices.is_empty() {
            return Err(Error::validation(
                "a configuration carries at least one point",
            ));
        }
        for v in &vertices {
            if v.iter().sum::<u64>() != h {
                return Err(Error::validation(format!(
                    "vertex {v:?} does not sum to the height {h}"
                )));
            }
        }
        vertices.sort();
        Ok(PointConfiguration { h, vertices })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// Total multiplicity.
    pub fn m(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[[u64; 3]] {
        &self.vertices
    }

    pub fn distinct_vertices(&self) -> Vec<[u64; 3]> {
        let mut out: Vec<[u64; 3]> = self.vertices.clone();
        out.dedup();
        out
    }

    /// The same configuration at its primitive height: all coordinates
    /// divided by their common gcd.
    pub fn normalized(&self) -> PointConfiguration {
        let g = self.vertices.iter().flatten().fold(0u64, |g, &x| gcd(g, x));
        if g <= 1 {
            return self.clone();
        }
        PointConfiguration {
            h: self.h / g,
            vertices: self
                .vertices
                .iter()
                .map(|v| [v[0] / g, v[1] / g, v[2] / g])
                .collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.vertices.iter().flatten().fold(0u64, |g, &x| gcd(g, x)) <= 1
    }

    /// Replaces one instance of `from` by `to`, keeping the height.
    pub fn with_moved_vertex(&self, from: [u64; 3], to: [u64; 3]) -> Result<PointConfiguration> {
        let mut vertices = self.vertices.clone();
        let idx = vertices
            .iter()
            .position(|&v| v == from)
            .ok_or_else(|| Error::validation(format!("vertex {from:?} not in configuration")))?;
        vertices[idx] = to;
        PointConfiguration::new(self.h, vertices)
    }
}

impl<'de> Deserialize<'de> for PointConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            h: u64,
            vertices: Vec<[u64; 3]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        PointConfiguration::new(raw.h, raw.vertices).map_err(D::Error::custom)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Where a valuation vector sits in the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLocus {
    Corner(Corner),
    /// `e2 = 0`: on the side joining the first and third corners; forces a
    /// type-1 cut at `e1`.
    SideFirstThird,
    /// `e1 = 0`: forces a type-2 cut at `e2`.
    SideSecondThird,
    /// `e3 = 0`: between the first two corners; three expansion choices.
    SideFirstSecond,
    /// All coordinates positive; forces both cuts.
    Interior,
}

pub fn vertex_locus(v: [u64; 3]) -> VertexLocus {
    match (v[0] > 0, v[1] > 0, v[2] > 0) {
        (true, false, false) => VertexLocus::Corner(Corner::Y1),
        (false, true, false) => VertexLocus::Corner(Corner::Y2),
        (false, false, true) => VertexLocus::Corner(Corner::Y3),
        (true, false, true) => VertexLocus::SideFirstThird,
        (false, true, true) => VertexLocus::SideSecondThird,
        (true, true, false) => VertexLocus::SideFirstSecond,
        (true, true, true) => VertexLocus::Interior,
        (false, false, false) => unreachable!("vectors sum to a positive height"),
    }
}

/// A fibre class together with the support placing each configuration vertex
/// on its bubble, plus the generative record of the expansion choices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedPair {
    pub subdivision: Subdivision,
    /// The non-corner configuration vertices, in bijection with the
    /// non-empty bubbles.
    pub designated: BTreeSet<[u64; 3]>,
    pub support: SupportAssignment,
    /// Expansion choice made at each vertex of the first-two-corner side.
    #[serde(serialize_with = "choices_as_pairs")]
    pub choices: BTreeMap<[u64; 3], EdgeChoice>,
    /// Empty partner lines added in paired mode, by type.
    pub extra_lines1: BTreeSet<u64>,
    pub extra_lines2: BTreeSet<u64>,
}

fn choices_as_pairs<S: serde::Serializer>(
    choices: &BTreeMap<[u64; 3], EdgeChoice>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(choices.iter().map(|(v, c)| (*v, *c)))
}

impl AssociatedPair {
    pub fn class_pair(&self) -> ClassPair {
        ClassPair {
            subdivision: self.subdivision.clone(),
            support: self.support.clone(),
        }
    }

    /// The configuration this pair is associated to.
    pub fn configuration(&self) -> PointConfiguration {
        let h = self.subdivision.h;
        let vertices = self
            .support
            .points
            .iter()
            .map(|p| match p.target {
                Member::Bubble(at) => at,
                Member::Corner(c) => c.position(h),
            })
            .collect();
        PointConfiguration::new(h, vertices).expect("pair supports are well-formed")
    }
}

/// Enumerates the associated pairs of a configuration. Vertices on the two
/// oblique sides and in the interior force their cuts; vertices on the side
/// between the first two corners admit the three expansion choices. In
/// paired mode, every anchored line may additionally bring its empty
/// complementary partner. Only unbroken outcomes are kept.
pub fn associated_pairs(
    cfg: &PointConfiguration,
    mode: EnumerationMode,
) -> Result<Vec<AssociatedPair>> {
    let h = cfg.h();
    let mut forced1: BTreeSet<u64> = BTreeSet::new();
    let mut forced2: BTreeSet<u64> = BTreeSet::new();
    let mut side_vertices: Vec<[u64; 3]> = Vec::new();
    for v in cfg.distinct_vertices() {
        match vertex_locus(v) {
            VertexLocus::Corner(_) => {}
            VertexLocus::SideFirstThird => {
                forced1.insert(v[0]);
            }
            VertexLocus::SideSecondThird => {
                forced2.insert(v[1]);
            }
            VertexLocus::Interior => {
                forced1.insert(v[0]);
                forced2.insert(v[1]);
            }
            VertexLocus::SideFirstSecond => side_vertices.push(v),
        }
    }

    let mut out: Vec<AssociatedPair> = Vec::new();
    let mut seen: BTreeSet<(Subdivision, Vec<SupportPoint>)> = BTreeSet::new();
    let choices = [EdgeChoice::Pure1, EdgeChoice::Pure2, EdgeChoice::Mixed];
    let n_combos = choices.len().pow(side_vertices.len() as u32);
    for combo in 0..n_combos {
        let mut assignment: BTreeMap<[u64; 3], EdgeChoice> = BTreeMap::new();
        let mut lines1 = forced1.clone();
        let mut lines2 = forced2.clone();
        let mut idx = combo;
        for &v in &side_vertices {
            let choice = choices[idx % 3];
            idx /= 3;
            assignment.insert(v, choice);
            match choice {
                EdgeChoice::Pure1 => {
                    lines1.insert(v[0]);
                }
                EdgeChoice::Pure2 => {
                    lines2.insert(v[1]);
                }
                EdgeChoice::Mixed => {
                    lines1.insert(v[0]);
                    lines2.insert(v[1]);
                }
            }
        }

        // Candidate empty partners: complementary levels not already cut.
        let (cand1, cand2): (Vec<u64>, Vec<u64>) = match mode {
            EnumerationMode::Minimal => (vec![], vec![]),
            EnumerationMode::Paired => (
                lines2
                    .iter()
                    .map(|&c| h - c)
                    .filter(|c| !lines1.contains(c))
                    .collect(),
                lines1
                    .iter()
                    .map(|&c| h - c)
                    .filter(|c| !lines2.contains(c))
                    .collect(),
            ),
        };
        for mask1 in 0u32..(1 << cand1.len()) {
            for mask2 in 0u32..(1 << cand2.len()) {
                let extra1: BTreeSet<u64> = cand1
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask1 >> i & 1 == 1)
                    .map(|(_, &c)| c)
                    .collect();
                let extra2: BTreeSet<u64> = cand2
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask2 >> i & 1 == 1)
                    .map(|(_, &c)| c)
                    .collect();
                let all1: BTreeSet<u64> = lines1.union(&extra1).copied().collect();
                let all2: BTreeSet<u64> = lines2.union(&extra2).copied().collect();
                let subdivision = Subdivision::from_level_sets(h, &all1, &all2)?;
                if !check_unbroken_subdivision(&subdivision) {
                    continue;
                }
                let points: Vec<SupportPoint> = cfg
                    .vertices()
                    .iter()
                    .map(|&v| match vertex_locus(v) {
                        VertexLocus::Corner(c) => SupportPoint::in_corner(c),
                        _ => SupportPoint::on_bubble(v),
                    })
                    .collect();
                if !seen.insert((subdivision.clone(), points.clone())) {
                    continue;
                }
                let designated: BTreeSet<[u64; 3]> = cfg
                    .distinct_vertices()
                    .into_iter()
                    .filter(|&v| !matches!(vertex_locus(v), VertexLocus::Corner(_)))
                    .collect();
                debug_assert!(designated
                    .iter()
                    .all(|v| subdivision.vertices().contains(v)));
                out.push(AssociatedPair {
                    subdivision,
                    designated,
                    support: SupportAssignment::new(points),
                    choices: assignment.clone(),
                    extra_lines1: extra1,
                    extra_lines2: extra2,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitFilter {
    Lw,
    Sws,
}

/// The stable-extension set of a configuration under a filter, with the
/// pairs whose representative search was inconclusive listed separately.
#[derive(Debug, Clone, Serialize)]
pub struct StableExtensions {
    pub pairs: Vec<AssociatedPair>,
    pub inconclusive: Vec<AssociatedPair>,
}

fn filter_pairs(
    pairs: Vec<AssociatedPair>,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> Result<StableExtensions> {
    let mut kept = Vec::new();
    let mut inconclusive = Vec::new();
    for pair in pairs {
        let class = pair.class_pair();
        match filter {
            LimitFilter::Lw => {
                if class_is_lw_stable(&class)? {
                    kept.push(pair);
                }
            }
            LimitFilter::Sws => {
                let bound = max_n.unwrap_or_else(|| default_sws_bound(&class.subdivision));
                match is_sws_stable(&class, bound) {
                    Ok(SwsOutcome::Stable { .. }) => kept.push(pair),
                    Ok(SwsOutcome::Unstable) => {}
                    Err(Error::SearchBoundExceeded(_)) => inconclusive.push(pair),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(StableExtensions {
        pairs: kept,
        inconclusive,
    })
}

/// Associated pairs surviving the stability filter. The minimal family is
/// used first; when the unbroken condition obstructs every minimal pair (or
/// the filter rejects them all), the paired completions take over, which is
/// what keeps the extension set nonempty.
pub fn stable_extensions(
    cfg: &PointConfiguration,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> Result<StableExtensions> {
    let minimal = filter_pairs(
        associated_pairs(cfg, EnumerationMode::Minimal)?,
        filter,
        max_n,
    )?;
    if !minimal.pairs.is_empty() {
        return Ok(minimal);
    }
    let mut paired = filter_pairs(
        associated_pairs(cfg, EnumerationMode::Paired)?,
        filter,
        max_n,
    )?;
    paired.inconclusive.extend(minimal.inconclusive);
    Ok(paired)
}

/// Stable extensions enumerated in one fixed mode, without the fallback.
pub fn stable_extensions_in_mode(
    cfg: &PointConfiguration,
    filter: LimitFilter,
    mode: EnumerationMode,
    max_n: Option<u32>,
) -> Result<StableExtensions> {
    filter_pairs(associated_pairs(cfg, mode)?, filter, max_n)
}

/// The bar equivalence class of a configuration: all its stable extensions
/// under both filters, keyed by the configuration itself at primitive
/// height.
#[derive(Debug, Clone, Serialize)]
pub struct BarClass {
    pub key: PointConfiguration,
    pub lw: Vec<AssociatedPair>,
    pub sws: Vec<AssociatedPair>,
    pub sws_inconclusive: Vec<AssociatedPair>,
}

pub fn bar_class(cfg: &PointConfiguration, max_n: Option<u32>) -> Result<BarClass> {
    let lw = stable_extensions(cfg, LimitFilter::Lw, max_n)?;
    let sws = stable_extensions(cfg, LimitFilter::Sws, max_n)?;
    Ok(BarClass {
        key: cfg.normalized(),
        lw: lw.pairs,
        sws: sws.pairs,
        sws_inconclusive: sws.inconclusive,
    })
}

#[derive(Debug, Error)]
pub enum LimitError {
    #[error("no stable limit: the condition excludes every associated pair")]
    NoLimit,
    #[error("{0} stable limits survive the condition")]
    MultipleLimits(usize, Vec<AssociatedPair>),
    #[error(transparent)]
    Other(#[from] Error),
}

/// Pairs of the configuration surviving both the stability filter and the
/// `(alpha, beta)` condition, enumerated in the condition's mode.
pub fn surviving_pairs(
    cfg: &PointConfiguration,
    cond: &StabilityCondition,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> Result<StableExtensions> {
    let stable = filter_pairs(associated_pairs(cfg, cond.mode)?, filter, max_n)?;
    let mut pairs = Vec::new();
    for pair in stable.pairs {
        if is_ab_stable(&pair.subdivision, &pair.designated, &pair.support, cond)? {
            pairs.push(pair);
        }
    }
    Ok(StableExtensions {
        pairs,
        inconclusive: stable.inconclusive,
    })
}

/// The single surviving associated pair, or a description of how uniqueness
/// fails.
pub fn unique_limit(
    cfg: &PointConfiguration,
    cond: &StabilityCondition,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> std::result::Result<AssociatedPair, LimitError> {
    let mut survivors = surviving_pairs(cfg, cond, filter, max_n)?.pairs;
    match survivors.len() {
        0 => Err(LimitError::NoLimit),
        1 => Ok(survivors.pop().unwrap()),
        k => Err(LimitError::MultipleLimits(k, survivors)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditBounds {
    pub max_h: u64,
    pub max_m: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AuditWitness {
    NoLimit {
        cfg: PointConfiguration,
    },
    MultipleLimits {
        cfg: PointConfiguration,
        count: usize,
    },
    /// A surviving limit of the moved configuration fails to refine the
    /// generic fibre's subdivision. `realizable` records whether a flat
    /// family can actually push the point that way: gaining third-coordinate
    /// valuation from the first or second corner needs a representative with
    /// a locus equal to that corner, while the blown-up directions are
    /// always reachable.
    Incompatible {
        cfg: PointConfiguration,
        moved_from: [u64; 3],
        moved_to: [u64; 3],
        limit_cfg: PointConfiguration,
        generic_subdivision: Subdivision,
        limit_subdivision: Subdivision,
        realizable: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub condition: String,
    pub bounds: AuditBounds,
    pub filter: LimitFilter,
    pub almost_proper: bool,
    /// No realizable degeneration escapes the surviving limits.
    pub compatibility: bool,
    /// Informative only: the same with unrealizable moves included. Failing
    /// it alone does not obstruct properness.
    pub strong_compatibility: bool,
    pub witnesses: Vec<AuditWitness>,
    pub inconclusive: Vec<PointConfiguration>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.almost_proper && self.compatibility
    }

    /// Human-readable rendering of the machine report.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "audit of `{}` up to h = {}, m = {} ({:?} filter)",
            self.condition, self.bounds.max_h, self.bounds.max_m, self.filter
        );
        let _ = writeln!(
            s,
            "  almost proper: {}",
            if self.almost_proper { "yes" } else { "NO" }
        );
        let _ = writeln!(
            s,
            "  tropically compatible: {}",
            if self.compatibility { "yes" } else { "NO" }
        );
        let _ = writeln!(
            s,
            "  strongly compatible (informative): {}",
            if self.strong_compatibility {
                "yes"
            } else {
                "no"
            }
        );
        for w in &self.witnesses {
            match w {
                AuditWitness::NoLimit { cfg } => {
                    let _ = writeln!(s, "  no limit for {:?} at h = {}", cfg.vertices(), cfg.h());
                }
                AuditWitness::MultipleLimits { cfg, count } => {
                    let _ = writeln!(
                        s,
                        "  {count} limits for {:?} at h = {}",
                        cfg.vertices(),
                        cfg.h()
                    );
                }
                AuditWitness::Incompatible {
                    cfg,
                    moved_from,
                    moved_to,
                    realizable,
                    ..
                } => {
                    let _ = writeln!(
                        s,
                        "  incompatible limit for {:?} at h = {}: point at {moved_from:?} moving to {moved_to:?}{}",
                        cfg.vertices(),
                        cfg.h(),
                        if *realizable { "" } else { " (unrealizable move)" }
                    );
                }
            }
        }
        if !self.inconclusive.is_empty() {
            let _ = writeln!(s, "  {} inconclusive searches", self.inconclusive.len());
        }
        s
    }
}

/// All primitive configurations with height at most `max_h` and multiplicity
/// at most `max_m`, in a deterministic order.
pub fn configurations(bounds: AuditBounds) -> Vec<PointConfiguration> {
    let mut out = Vec::new();
    for h in 1..=bounds.max_h {
        let points = crate::enumerate::lattice_points(h);
        for m in 1..=bounds.max_m {
            for vertices in crate::enumerate::multisets(&points, m) {
                let cfg = PointConfiguration::new(h, vertices).unwrap();
                if cfg.is_primitive() {
                    out.push(cfg);
                }
            }
        }
    }
    out
}

/// Integral one-step degenerations of a corner point: every vector still
/// touching that corner's component, at the same height.
fn corner_moves(corner: Corner, h: u64) -> Vec<[u64; 3]> {
    let axis = match corner {
        Corner::Y1 => 0,
        Corner::Y2 => 1,
        Corner::Y3 => 2,
    };
    crate::enumerate::lattice_points(h)
        .into_iter()
        .filter(|v| v[axis] >= 1 && *v != corner.position(h))
        .collect()
}

/// Whether a flat family on the given fibre class can push a point of the
/// corner to the target vector. The first two coordinates are the blown-up
/// directions and always admit degeneration; the third vanishes only for a
/// point sitting in a locus equal to its corner, which asks for a
/// representative whose extreme zero lies on the matching side.
fn move_is_realizable(sub: &Subdivision, corner: Corner, to: [u64; 3]) -> bool {
    let gains_e3 = to[2] > 0;
    match corner {
        Corner::Y1 => !gains_e3 || crate::stability::class_admits_last_zero_in_a(sub),
        Corner::Y2 => !gains_e3 || crate::stability::class_admits_first_zero_in_b(sub),
        Corner::Y3 => true,
    }
}

/// Exhaustive audit of a stability condition: (a) almost-properness, every
/// configuration in bounds has exactly one surviving pair; (b) tropical
/// compatibility, the surviving limits of every degenerating support point
/// refine the generic fibre's subdivision class.
pub fn audit_condition(
    cond: &StabilityCondition,
    bounds: AuditBounds,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> Result<AuditReport> {
    let configs = configurations(bounds);
    let per_config: Vec<(Vec<AuditWitness>, Vec<PointConfiguration>)> = configs
        .par_iter()
        .map(|cfg| audit_one(cfg, cond, filter, max_n))
        .collect::<Result<Vec<_>>>()?;

    let mut witnesses = Vec::new();
    let mut inconclusive = Vec::new();
    for (ws, inc) in per_config {
        witnesses.extend(ws);
        inconclusive.extend(inc);
    }
    let almost_proper = !witnesses.iter().any(|w| {
        matches!(
            w,
            AuditWitness::NoLimit { .. } | AuditWitness::MultipleLimits { .. }
        )
    });
    let compatibility = !witnesses.iter().any(|w| {
        matches!(
            w,
            AuditWitness::Incompatible {
                realizable: true,
                ..
            }
        )
    });
    let strong_compatibility = !witnesses
        .iter()
        .any(|w| matches!(w, AuditWitness::Incompatible { .. }));
    Ok(AuditReport {
        condition: cond.name.clone(),
        bounds,
        filter,
        almost_proper,
        compatibility,
        strong_compatibility,
        witnesses,
        inconclusive,
    })
}

fn audit_one(
    cfg: &PointConfiguration,
    cond: &StabilityCondition,
    filter: LimitFilter,
    max_n: Option<u32>,
) -> Result<(Vec<AuditWitness>, Vec<PointConfiguration>)> {
    let mut witnesses = Vec::new();
    let mut inconclusive = Vec::new();
    let survivors = surviving_pairs(cfg, cond, filter, max_n)?;
    if !survivors.inconclusive.is_empty() {
        inconclusive.push(cfg.clone());
    }
    match survivors.pairs.len() {
        0 => witnesses.push(AuditWitness::NoLimit { cfg: cfg.clone() }),
        1 => {}
        k => witnesses.push(AuditWitness::MultipleLimits {
            cfg: cfg.clone(),
            count: k,
        }),
    }

    // Compatibility: let each corner-supported point degenerate and demand
    // that the moved configuration's survivors refine the generic fibre.
    // Points on bubbles are pinned at their vertices: with every cut carrying
    // multiplicity one there are no edge slides, hence no other moves.
    for pair in &survivors.pairs {
        let corners: BTreeSet<Corner> = pair
            .support
            .points
            .iter()
            .filter(|p| p.position == Position::Generic)
            .filter_map(|p| match p.target {
                Member::Corner(c) => Some(c),
                Member::Bubble(_) => None,
            })
            .collect();
        for corner in corners {
            let from = corner.position(cfg.h());
            for to in corner_moves(corner, cfg.h()) {
                let limit_cfg = cfg.with_moved_vertex(from, to)?;
                let limit = surviving_pairs(&limit_cfg, cond, filter, max_n)?;
                if !limit.inconclusive.is_empty() {
                    inconclusive.push(limit_cfg.clone());
                }
                for limit_pair in &limit.pairs {
                    if !refines_up_to_equivalence(&limit_pair.subdivision, &pair.subdivision) {
                        witnesses.push(AuditWitness::Incompatible {
                            cfg: cfg.clone(),
                            moved_from: from,
                            moved_to: to,
                            limit_cfg: limit_cfg.clone(),
                            generic_subdivision: pair.subdivision.clone(),
                            limit_subdivision: limit_pair.subdivision.clone(),
                            realizable: move_is_realizable(&pair.subdivision, corner, to),
                        });
                    }
                }
            }
        }
    }
    Ok((witnesses, inconclusive))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(h: u64, vs: &[[u64; 3]]) -> PointConfiguration {
        PointConfiguration::new(h, vs.to_vec()).unwrap()
    }

    #[test]
    fn three_pairs_for_a_side_vertex() {
        let pairs = associated_pairs(&cfg(2, &[[1, 1, 0]]), EnumerationMode::Minimal).unwrap();
        assert_eq!(pairs.len(), 3);
        let line_sets: BTreeSet<(Vec<u64>, Vec<u64>)> = pairs
            .iter()
            .map(|p| {
                (
                    p.subdivision.cuts1.keys().copied().collect(),
                    p.subdivision.cuts2.keys().copied().collect(),
                )
            })
            .collect();
        assert_eq!(
            line_sets,
            [(vec![1], vec![]), (vec![], vec![1]), (vec![1], vec![1])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn forced_pairs() {
        let pairs = associated_pairs(&cfg(2, &[[1, 0, 1]]), EnumerationMode::Minimal).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].subdivision.level_set_1(), [1].into());
        assert!(pairs[0].subdivision.cuts2.is_empty());

        let pairs = associated_pairs(&cfg(3, &[[1, 1, 1]]), EnumerationMode::Minimal).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].subdivision.level_set_1(), [1].into());
        assert_eq!(pairs[0].subdivision.level_set_2(), [1].into());

        let pairs = associated_pairs(&cfg(2, &[[0, 0, 2]]), EnumerationMode::Minimal).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].subdivision.is_trivial());
        assert!(pairs[0].designated.is_empty());
    }

    #[test]
    fn stable_extension_examples() {
        let c = cfg(2, &[[1, 1, 0]]);
        let lw = stable_extensions(&c, LimitFilter::Lw, None).unwrap();
        assert_eq!(lw.pairs.len(), 3);

        let sws = stable_extensions(&c, LimitFilter::Sws, None).unwrap();
        assert_eq!(sws.pairs.len(), 1);
        assert_eq!(sws.pairs[0].subdivision.level_set_1(), [1].into());
        assert_eq!(sws.pairs[0].subdivision.level_set_2(), [1].into());
        assert!(sws.inconclusive.is_empty());

        // The forced side vertex keeps a singleton list under either filter.
        let c = cfg(2, &[[1, 0, 1]]);
        for filter in [LimitFilter::Lw, LimitFilter::Sws] {
            let ext = stable_extensions(&c, filter, None).unwrap();
            assert_eq!(ext.pairs.len(), 1, "{filter:?}");
        }
    }

    #[test]
    fn minimal_mode_can_be_obstructed_but_extensions_survive() {
        // The forced lines of these two vertices break the attach pattern,
        // so no minimal pair exists; the paired completion steps in.
        let c = cfg(4, &[[1, 2, 1], [3, 0, 1]]);
        assert!(associated_pairs(&c, EnumerationMode::Minimal)
            .unwrap()
            .is_empty());
        let lw = stable_extensions(&c, LimitFilter::Lw, None).unwrap();
        assert!(!lw.pairs.is_empty());
    }

    #[test]
    fn unique_limit_examples() {
        let c = cfg(2, &[[1, 1, 0]]);
        let ct = StabilityCondition::ct_canonical();
        let limit = unique_limit(&c, &ct, LimitFilter::Lw, None).unwrap();
        assert_eq!(limit.subdivision.level_set_1(), [1].into());
        assert_eq!(limit.subdivision.level_set_2(), [1].into());

        let p1 = StabilityCondition::pure1_preference();
        let limit = unique_limit(&c, &p1, LimitFilter::Lw, None).unwrap();
        assert_eq!(limit.subdivision.level_set_1(), [1].into());
        assert!(limit.subdivision.cuts2.is_empty());

        let allow_all = StabilityCondition {
            name: "allow-all".into(),
            alpha: crate::stability::AlphaRule::AllowAll,
            beta: crate::stability::BetaRule::NonDesignatedTubes,
            mode: EnumerationMode::Minimal,
        };
        match unique_limit(&c, &allow_all, LimitFilter::Lw, None) {
            Err(LimitError::MultipleLimits(3, _)) => {}
            other => panic!("expected three limits, got {other:?}"),
        }
    }

    #[test]
    fn bar_class_examples() {
        let class = bar_class(&cfg(2, &[[1, 1, 0]]), None).unwrap();
        assert_eq!(class.lw.len(), 3);
        assert_eq!(bar_class(&cfg(2, &[[1, 0, 1]]), None).unwrap().lw.len(), 1);
        assert_eq!(bar_class(&cfg(3, &[[1, 1, 1]]), None).unwrap().lw.len(), 1);
        // Non-primitive configurations key to their primitive form.
        let class = bar_class(&cfg(4, &[[2, 2, 0]]), None).unwrap();
        assert_eq!(class.key, cfg(2, &[[1, 1, 0]]));
    }

    #[test]
    fn audit_ct_passes_both_checks_under_both_filters() {
        for filter in [LimitFilter::Lw, LimitFilter::Sws] {
            let report = audit_condition(
                &StabilityCondition::ct_canonical(),
                AuditBounds { max_h: 4, max_m: 3 },
                filter,
                None,
            )
            .unwrap();
            assert!(report.passed(), "witnesses: {:?}", report.witnesses);
            assert!(report.strong_compatibility);
            assert!(report.inconclusive.is_empty());
        }
    }

    #[test]
    fn audit_incompatible_condition_fails_with_the_expected_witness() {
        let report = audit_condition(
            &StabilityCondition::one_pure1_two_pure2(),
            AuditBounds { max_h: 3, max_m: 2 },
            LimitFilter::Lw,
            None,
        )
        .unwrap();
        assert!(!report.compatibility);
        let found = report.witnesses.iter().any(|w| match w {
            AuditWitness::Incompatible {
                generic_subdivision,
                moved_from,
                ..
            } => {
                !generic_subdivision.cuts1.is_empty()
                    && generic_subdivision.cuts2.is_empty()
                    && vertex_locus(*moved_from) == VertexLocus::Corner(Corner::Y2)
            }
            _ => false,
        });
        assert!(found, "expected the pure-1 plus second-corner witness");
    }

    #[test]
    fn configuration_validation() {
        assert!(PointConfiguration::new(2, vec![[1, 1, 1]]).is_err());
        assert!(PointConfiguration::new(0, vec![]).is_err());
        assert!(PointConfiguration::new(2, vec![]).is_err());
    }
}
