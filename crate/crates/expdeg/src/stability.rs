//! Stability of point supports on expanded fibres: stabilizer sublattices,
//! the support criterion for torus-linearised stability, and the derived
//! notions layered on top of it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibres::{delta_membership, DeltaComponent, ExpandedFibre, Member};
use crate::lattice::integer_kernel;
use crate::pairs::{IndexClass, UnbrokenPair};
use crate::strata::{base_action_weights, Stratum};
use crate::tropical::{attach_points, AttachKind, Subdivision};

/// Where a support point sits inside its component: generic, or pinned at a
/// torus-fixed position in the listed directions. Only generic directions
/// impose weight equations, and only fully generic points witness interiors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Position {
    Generic,
    Constrained(BTreeSet<u32>),
}

impl Position {
    fn constrained_dirs(&self) -> Option<&BTreeSet<u32>> {
        match self {
            Position::Generic => None,
            Position::Constrained(dirs) => Some(dirs),
        }
    }
}

/// One point of the length-`m` subscheme: a target component and a position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportPoint {
    pub target: Member,
    #[serde(default = "generic")]
    pub position: Position,
}

fn generic() -> Position {
    Position::Generic
}

impl SupportPoint {
    pub fn on_bubble(at: [u64; 3]) -> Self {
        SupportPoint {
            target: Member::Bubble(at),
            position: Position::Generic,
        }
    }

    pub fn in_corner(corner: crate::fibres::Corner) -> Self {
        SupportPoint {
            target: Member::Corner(corner),
            position: Position::Generic,
        }
    }
}

/// Smoothly supported points with multiplicity: every target is a bubble or
/// the interior of an original component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SupportAssignment {
    pub points: Vec<SupportPoint>,
}

impl SupportAssignment {
    pub fn new(points: Vec<SupportPoint>) -> Self {
        SupportAssignment { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Bubble vertices carrying at least one point.
    pub fn occupied_bubbles(&self) -> BTreeSet<[u64; 3]> {
        self.points
            .iter()
            .filter_map(|p| match p.target {
                Member::Bubble(at) => Some(at),
                Member::Corner(_) => None,
            })
            .collect()
    }

    fn validate_on_fibre(&self, f: &ExpandedFibre) -> Result<()> {
        for p in &self.points {
            if let Member::Bubble(at) = p.target {
                if f.bubble_at(at).is_none() {
                    return Err(Error::UnsupportedTarget(format!(
                        "no bubble at {at:?} in this fibre"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_on_subdivision(&self, s: &Subdivision) -> Result<()> {
        let vertices = s.vertices();
        for p in &self.points {
            if let Member::Bubble(at) = p.target {
                if !vertices.contains(&at) {
                    return Err(Error::UnsupportedTarget(format!(
                        "no arrangement vertex at {at:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The stabilizer sublattice of cocharacters fixing the fibre and the
/// support: its rank and an integral basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerLattice {
    pub rank: usize,
    pub basis: Vec<Vec<i64>>,
}

/// Cocharacters `(a_1, ..., a_n)` whose weights vanish on every nonzero
/// basis direction and on every generic direction of every support point,
/// computed as the integer kernel of the stacked constraint matrix.
pub fn stabilizer_rank(f: &ExpandedFibre, z: &SupportAssignment) -> Result<StabilizerLattice> {
    z.validate_on_fibre(f)?;
    let s = f.stratum();
    let n = s.n() as usize;
    let weights = base_action_weights(s.n());
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 1..=s.n() + 1 {
        if s.valuation(i) == 0 {
            rows.push(weights[(i - 1) as usize].clone());
        }
    }
    for p in &z.points {
        let Member::Bubble(at) = p.target else {
            // The torus acts trivially on the original components.
            continue;
        };
        let bubble = f.bubble_at(at).expect("validated above");
        for &d in &bubble.directions {
            if let Some(skip) = p.position.constrained_dirs() {
                if skip.contains(&d) {
                    continue;
                }
            }
            let mut row = vec![0i64; n];
            row[(d - 1) as usize] = 1;
            rows.push(row);
        }
    }
    let (_, basis) = integer_kernel(&rows, n);
    Ok(StabilizerLattice {
        rank: basis.len(),
        basis,
    })
}

/// The support criterion: for every `k` such that either locus exists, some
/// fully generic support point lies in the interior of a member of the
/// `k`-th type-1 locus or of its partner, the `(n+1-k)`-th type-2 locus.
pub fn git_criterion(f: &ExpandedFibre, z: &SupportAssignment) -> Result<bool> {
    z.validate_on_fibre(f)?;
    let n = f.stratum().n();
    let witnesses: BTreeSet<Member> = z
        .points
        .iter()
        .filter(|p| p.position == Position::Generic)
        .map(|p| p.target)
        .collect();
    for k in 1..=n {
        let mut members: BTreeSet<Member> = BTreeSet::new();
        if k <= f.delta1_count() {
            members.extend(delta_membership(f, DeltaComponent::Type1(k))?);
        }
        if n + 1 - k <= f.delta2_count() {
            members.extend(delta_membership(f, DeltaComponent::Type2(n + 1 - k))?);
        }
        if members.is_empty() {
            continue;
        }
        if members.is_disjoint(&witnesses) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smooth support plus finite automorphisms: the stabilizer sublattice is
/// trivial.
pub fn is_lw_stable(f: &ExpandedFibre, z: &SupportAssignment) -> Result<bool> {
    Ok(stabilizer_rank(f, z)?.rank == 0)
}

/// A fibre class with its support, independent of the representative: the
/// subdivision (cut-line sets at a height) plus points on its vertices and
/// corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassPair {
    pub subdivision: Subdivision,
    pub support: SupportAssignment,
}

/// Torus parameters of a class: one per breakpoint (a cut line and its
/// complementary partner share one). A fully generic point on a vertex kills
/// the breakpoints of its incident lines. The class-level stabilizer rank is
/// the number of unkilled breakpoints; it agrees with [`stabilizer_rank`] on
/// every representative stratum.
pub fn class_rank(pair: &ClassPair) -> Result<usize> {
    pair.support.validate_on_subdivision(&pair.subdivision)?;
    let sub = &pair.subdivision;
    let mut alive = sub.breakpoints();
    for p in &pair.support.points {
        if p.position != Position::Generic {
            continue;
        }
        let Member::Bubble(at) = p.target else {
            continue;
        };
        let (line1, line2) = sub.lines_through(at);
        if let Some(c) = line1 {
            alive.remove(&c);
        }
        if let Some(c) = line2 {
            alive.remove(&(sub.h - c));
        }
    }
    Ok(alive.len())
}

/// Class-level finite-automorphism test.
pub fn class_is_lw_stable(pair: &ClassPair) -> Result<bool> {
    Ok(class_rank(pair)? == 0)
}

/// Verdict of the representative search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SwsOutcome {
    /// Some representative passes the support criterion.
    Stable { witness: Stratum },
    /// No representative can pass, at any `n`.
    Unstable,
}

impl SwsOutcome {
    pub fn is_stable(&self) -> bool {
        matches!(self, SwsOutcome::Stable { .. })
    }
}

/// Searches representatives of the fibre class for one on which the support
/// criterion holds, up to the given bound on `n`. A definite negative means
/// no representative of any size passes: enlarging one only inserts extra
/// blow-up indices, whose requirements contain those already failing.
pub fn is_sws_stable(pair: &ClassPair, max_n: u32) -> Result<SwsOutcome> {
    pair.support.validate_on_subdivision(&pair.subdivision)?;
    let mut passing_beyond_bound = false;
    for stratum in representative_candidates(&pair.subdivision) {
        let fibre = crate::fibres::build_fibre(&stratum);
        if git_criterion(&fibre, &pair.support)? {
            if stratum.n() <= max_n {
                return Ok(SwsOutcome::Stable { witness: stratum });
            }
            passing_beyond_bound = true;
        }
    }
    if passing_beyond_bound {
        return Err(Error::SearchBoundExceeded(
            "a representative passes only beyond the bound".into(),
        ));
    }
    Ok(SwsOutcome::Unstable)
}

/// Default search bound: generous for every class arising at desk scale.
pub fn default_sws_bound(sub: &Subdivision) -> u32 {
    2 * (sub.cuts1.len() + sub.cuts2.len()) as u32 + 2
}

/// Whether some representative of the class has its first zero inside `B`,
/// i.e. a type-2 locus equal to the second corner component. Controls which
/// coordinate degenerations a point of that corner admits.
pub fn class_admits_first_zero_in_b(sub: &Subdivision) -> bool {
    representative_candidates(sub)
        .iter()
        .any(|s| s.decorations().first().is_none_or(|c| c.in_b()))
}

/// Whether some representative has its last zero inside `A`: a type-1 locus
/// equal to the first corner component.
pub fn class_admits_last_zero_in_a(sub: &Subdivision) -> bool {
    representative_candidates(sub)
        .iter()
        .any(|s| s.decorations().last().is_none_or(|c| c.in_a()))
}

/// Minimal representative strata of a subdivision class, one per admissible
/// block sequence of the zero set. Block freedom exists only at the first
/// zero (its membership in the suffix blocks is unseen by the cuts) and the
/// last (likewise for the prefix); padding indices are inserted exactly when
/// the extreme blocks force the zero set away from the ends.
fn representative_candidates(sub: &Subdivision) -> Vec<Stratum> {
    let h = sub.h;
    if h == 0 {
        // The unexpanded height-0 class.
        let pair = UnbrokenPair::from_block_sizes(1, 0, 1).unwrap();
        return vec![Stratum::new(pair, &[]).unwrap()];
    }
    let breakpoints: Vec<u64> = sub.breakpoints().into_iter().collect();
    let r = breakpoints.len() + 1;
    let mut vals = Vec::with_capacity(r);
    let mut prev = 0;
    for &d in &breakpoints {
        vals.push(d - prev);
        prev = d;
    }
    vals.push(h - prev);
    let c1 = sub.level_set_1();
    let c2 = sub.level_set_2();

    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for first_in_b in [false, true] {
        for last_in_a in [false, true] {
            let mut classes = Vec::with_capacity(r);
            let mut ok = true;
            for j in 0..r {
                let in_a = if j + 1 < r {
                    c1.contains(&breakpoints[j])
                } else {
                    last_in_a
                };
                let in_b = if j == 0 {
                    first_in_b
                } else {
                    c2.contains(&(h - breakpoints[j - 1]))
                };
                let class = match (in_a, in_b) {
                    (true, false) => IndexClass::AOnly,
                    (true, true) => IndexClass::Shared,
                    (false, true) => IndexClass::BOnly,
                    (false, false) => {
                        ok = false;
                        break;
                    }
                };
                classes.push(class);
            }
            if !ok || !classes.windows(2).all(|w| w[0] <= w[1]) || !seen.insert(classes.clone()) {
                continue;
            }
            if let Some(s) = minimal_stratum(&classes, &vals) {
                out.push(s);
            }
        }
    }
    out
}

fn minimal_stratum(classes: &[IndexClass], vals: &[u64]) -> Option<Stratum> {
    let count = |c: IndexClass| classes.iter().filter(|&&x| x == c).count() as u32;
    let (f, m, l) = (
        count(IndexClass::AOnly),
        count(IndexClass::Shared),
        count(IndexClass::BOnly),
    );
    // Pad the prefix-only block when no zero occupies it, and likewise the
    // suffix-only block; both blocks must be nonempty.
    let f_block = f.max(1);
    let l_block = l.max(1);
    let pair = UnbrokenPair::from_block_sizes(f_block, m, l_block).ok()?;
    let mut zeros = Vec::with_capacity(classes.len());
    let mut next_f = f_block - f + 1;
    let mut next_m = f_block + 1;
    let mut next_l = f_block + m + 1;
    for (&class, &g) in classes.iter().zip(vals) {
        let pos = match class {
            IndexClass::AOnly => {
                let p = next_f;
                next_f += 1;
                p
            }
            IndexClass::Shared => {
                let p = next_m;
                next_m += 1;
                p
            }
            IndexClass::BOnly => {
                let p = next_l;
                next_l += 1;
                p
            }
        };
        zeros.push((pos, g));
    }
    let stratum = Stratum::new(pair, &zeros).ok()?;
    debug_assert_eq!(stratum.decorations(), classes);
    Some(stratum)
}

/// Expansion choices at a vertex of the side joining the first two corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeChoice {
    Pure1,
    Pure2,
    Mixed,
}

/// Which fibre classes a condition excludes, read off the subdivision and
/// the designated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum AlphaRule {
    /// No class is excluded.
    AllowAll,
    /// Every attach point on the first-two-corner side must carry both edge
    /// types: all expansions there are mixed.
    FullPairing,
    /// Every designated vertex on that side must be expanded with the given
    /// choice.
    RequireEdgeChoice { choice: EdgeChoice },
    /// The required choice depends on how many designated vertices lie on
    /// that side.
    ChoiceByEdgeCount {
        #[serde(with = "crate::codec::count_map")]
        table: BTreeMap<usize, EdgeChoice>,
        default: EdgeChoice,
    },
}

/// How tube components are labelled on an admitted class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum BetaRule {
    /// Bubbles away from the designated vertices are tubes.
    NonDesignatedTubes,
    /// Nothing is a tube: every bubble must carry support.
    NoTubes,
}

/// Which associated pairs are enumerated when applying the condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    /// Every cut line is anchored at a configuration vertex.
    Minimal,
    /// Empty partner lines sharing a torus factor with an anchored line may
    /// be added; their bubbles are tubes.
    Paired,
}

/// An `(alpha, beta)` stability condition: a class-exclusion rule, a tube
/// labelling rule, and the enumeration mode it is meant to filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityCondition {
    pub name: String,
    pub alpha: AlphaRule,
    pub beta: BetaRule,
    pub mode: EnumerationMode,
}

impl StabilityCondition {
    /// The condition carving out the fully paired substack: every expansion
    /// on the first-two-corner side is mixed, non-designated bubbles are
    /// tubes.
    pub fn ct_canonical() -> Self {
        StabilityCondition {
            name: "ct-canonical".into(),
            alpha: AlphaRule::FullPairing,
            beta: BetaRule::NonDesignatedTubes,
            mode: EnumerationMode::Paired,
        }
    }

    pub fn pure1_preference() -> Self {
        StabilityCondition {
            name: "pure-1-preference".into(),
            alpha: AlphaRule::RequireEdgeChoice {
                choice: EdgeChoice::Pure1,
            },
            beta: BetaRule::NonDesignatedTubes,
            mode: EnumerationMode::Minimal,
        }
    }

    pub fn pure2_preference() -> Self {
        StabilityCondition {
            name: "pure-2-preference".into(),
            alpha: AlphaRule::RequireEdgeChoice {
                choice: EdgeChoice::Pure2,
            },
            beta: BetaRule::NonDesignatedTubes,
            mode: EnumerationMode::Minimal,
        }
    }

    /// The incompatible-limits example: one vertex on the side is expanded
    /// pure of type 1, two vertices are both expanded pure of type 2.
    pub fn one_pure1_two_pure2() -> Self {
        StabilityCondition {
            name: "one-pure1-two-pure2".into(),
            alpha: AlphaRule::ChoiceByEdgeCount {
                table: [(1, EdgeChoice::Pure1), (2, EdgeChoice::Pure2)].into(),
                default: EdgeChoice::Pure2,
            },
            beta: BetaRule::NonDesignatedTubes,
            mode: EnumerationMode::Minimal,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "ct-canonical" => Some(Self::ct_canonical()),
            "pure-1-preference" => Some(Self::pure1_preference()),
            "pure-2-preference" => Some(Self::pure2_preference()),
            "one-pure1-two-pure2" => Some(Self::one_pure1_two_pure2()),
            _ => None,
        }
    }

    pub fn builtin_names() -> [&'static str; 4] {
        [
            "ct-canonical",
            "pure-1-preference",
            "pure-2-preference",
            "one-pure1-two-pure2",
        ]
    }
}

/// The expansion realized at a vertex of the first-two-corner side, read off
/// the subdivision itself.
pub fn derived_edge_choice(sub: &Subdivision, v: [u64; 3]) -> Option<EdgeChoice> {
    if v[2] != 0 {
        return None;
    }
    match sub.lines_through(v) {
        (Some(_), Some(_)) => Some(EdgeChoice::Mixed),
        (Some(_), None) => Some(EdgeChoice::Pure1),
        (None, Some(_)) => Some(EdgeChoice::Pure2),
        (None, None) => None,
    }
}

/// Whether `alpha` excludes the class of a pair with the given designated
/// vertices.
pub fn alpha_excludes(
    alpha: &AlphaRule,
    sub: &Subdivision,
    designated: &BTreeSet<[u64; 3]>,
) -> bool {
    let edge_vertices: Vec<[u64; 3]> = designated.iter().copied().filter(|v| v[2] == 0).collect();
    match alpha {
        AlphaRule::AllowAll => false,
        AlphaRule::FullPairing => attach_points(sub).values().any(|&k| k != AttachKind::Both),
        AlphaRule::RequireEdgeChoice { choice } => edge_vertices
            .iter()
            .any(|&v| derived_edge_choice(sub, v) != Some(*choice)),
        AlphaRule::ChoiceByEdgeCount { table, default } => {
            let required = table.get(&edge_vertices.len()).unwrap_or(default);
            edge_vertices
                .iter()
                .any(|&v| derived_edge_choice(sub, v) != Some(*required))
        }
    }
}

/// Whether `beta` labels a bubble a tube on a given class.
pub fn beta_is_tube(beta: &BetaRule, designated: &BTreeSet<[u64; 3]>, bubble: [u64; 3]) -> bool {
    match beta {
        BetaRule::NonDesignatedTubes => !designated.contains(&bubble),
        BetaRule::NoTubes => false,
    }
}

/// The combined condition: the class is not excluded and the support hits a
/// bubble exactly when the bubble is not a tube.
pub fn is_ab_stable(
    sub: &Subdivision,
    designated: &BTreeSet<[u64; 3]>,
    support: &SupportAssignment,
    cond: &StabilityCondition,
) -> Result<bool> {
    support.validate_on_subdivision(sub)?;
    if alpha_excludes(&cond.alpha, sub, designated) {
        return Ok(false);
    }
    let occupied = support.occupied_bubbles();
    for v in sub.vertices() {
        let empty = !occupied.contains(&v);
        if empty != beta_is_tube(&cond.beta, designated, v) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibres::{build_fibre, Corner};

    fn pair(a: &[u32], b: &[u32], n: u32) -> UnbrokenPair {
        UnbrokenPair::new(
            n,
            &a.iter().copied().collect(),
            &b.iter().copied().collect(),
        )
        .unwrap()
    }

    fn stratum(a: &[u32], b: &[u32], n: u32, zeros: &[(u32, u64)]) -> Stratum {
        Stratum::new(pair(a, b, n), zeros).unwrap()
    }

    fn support(points: &[SupportPoint]) -> SupportAssignment {
        SupportAssignment::new(points.to_vec())
    }

    /// The pure type-1 expansion with a single generic point on the
    /// expanded locus and nothing anywhere else.
    fn pure_line_pair() -> (ExpandedFibre, SupportAssignment) {
        let f = build_fibre(&stratum(&[1, 2], &[3], 2, &[(1, 1), (2, 1)]));
        let z = support(&[SupportPoint::on_bubble([1, 1, 0])]);
        (f, z)
    }

    #[test]
    fn stabilizer_examples() {
        // No vanishing directions: the base constraints alone give rank 0.
        let f = build_fibre(&stratum(&[1, 2], &[3], 2, &[]));
        let lat = stabilizer_rank(&f, &support(&[])).unwrap();
        assert_eq!(lat.rank, 0);

        let (f, z) = pure_line_pair();
        assert_eq!(stabilizer_rank(&f, &z).unwrap().rank, 0);

        let z = support(&[SupportPoint::in_corner(Corner::Y3)]);
        let lat = stabilizer_rank(&f, &z).unwrap();
        assert_eq!(lat.rank, 1);
        assert_eq!(lat.basis, vec![vec![1, 0]]);
    }

    #[test]
    fn unsupported_targets_are_errors() {
        let (f, _) = pure_line_pair();
        let z = support(&[SupportPoint::on_bubble([2, 0, 0])]);
        assert!(matches!(
            stabilizer_rank(&f, &z),
            Err(Error::UnsupportedTarget(_))
        ));
    }

    #[test]
    fn git_examples() {
        // Single mixed expansion: one point on the shared boundary bubble
        // satisfies the only pairing.
        let f = build_fibre(&stratum(&[1], &[2], 1, &[(1, 1), (2, 1)]));
        let z = support(&[SupportPoint::on_bubble([1, 1, 0])]);
        assert!(git_criterion(&f, &z).unwrap());

        let (f, z) = pure_line_pair();
        assert!(!git_criterion(&f, &z).unwrap());

        let mut pts = z.points.clone();
        pts.push(SupportPoint::in_corner(Corner::Y1));
        assert!(git_criterion(&f, &support(&pts)).unwrap());
    }

    #[test]
    fn lw_examples() {
        let (f, z) = pure_line_pair();
        assert!(is_lw_stable(&f, &z).unwrap());

        // Two expanded loci, support on only one: a torus factor survives.
        let f = build_fibre(&stratum(&[1, 2, 3], &[4], 3, &[(1, 1), (2, 1), (3, 1)]));
        let z = support(&[SupportPoint::on_bubble([1, 0, 2])]);
        assert!(!is_lw_stable(&f, &z).unwrap());

        let f = build_fibre(&stratum(&[1], &[2], 1, &[]));
        let z = support(&[SupportPoint::in_corner(Corner::Y2)]);
        assert!(is_lw_stable(&f, &z).unwrap());
    }

    fn class(h: u64, c1: &[u64], c2: &[u64], pts: &[SupportPoint]) -> ClassPair {
        ClassPair {
            subdivision: Subdivision::from_level_sets(
                h,
                &c1.iter().copied().collect(),
                &c2.iter().copied().collect(),
            )
            .unwrap(),
            support: support(pts),
        }
    }

    #[test]
    fn sws_mixed_expansion_has_small_witness() {
        let pair = class(2, &[1], &[1], &[SupportPoint::on_bubble([1, 1, 0])]);
        match is_sws_stable(&pair, 8).unwrap() {
            SwsOutcome::Stable { witness } => assert_eq!(witness.n(), 1),
            other => panic!("expected stable, got {other:?}"),
        }
    }

    #[test]
    fn sws_pure_expansion_fails_at_every_bound() {
        let pair = class(2, &[1], &[], &[SupportPoint::on_bubble([1, 1, 0])]);
        for bound in 1..=8 {
            assert_eq!(is_sws_stable(&pair, bound).unwrap(), SwsOutcome::Unstable);
        }
        // Support meeting the first corner repairs it.
        let pair = class(
            2,
            &[1],
            &[],
            &[
                SupportPoint::on_bubble([1, 1, 0]),
                SupportPoint::in_corner(Corner::Y1),
            ],
        );
        assert!(is_sws_stable(&pair, 8).unwrap().is_stable());
    }

    #[test]
    fn class_rank_matches_stratum_rank_on_representatives() {
        for n in 1..=3 {
            for s in crate::enumerate::strata(n, 4) {
                let f = build_fibre(&s);
                let targets: Vec<SupportPoint> = f
                    .bubbles()
                    .iter()
                    .map(|b| SupportPoint::on_bubble(b.at))
                    .collect();
                for m in 0..=targets.len().min(2) {
                    let z = support(&targets[..m]);
                    let class = ClassPair {
                        subdivision: f.subdivision().clone(),
                        support: z.clone(),
                    };
                    assert_eq!(
                        stabilizer_rank(&f, &z).unwrap().rank,
                        class_rank(&class).unwrap(),
                        "stratum {s:?} with {m} points"
                    );
                }
            }
        }
    }

    #[test]
    fn ab_stability_examples() {
        let ct = StabilityCondition::ct_canonical();
        let sub = Subdivision::from_level_sets(2, &[1].into(), &[1].into()).unwrap();
        let designated: BTreeSet<[u64; 3]> = [[1, 1, 0]].into();
        let z = support(&[SupportPoint::on_bubble([1, 1, 0])]);
        assert!(is_ab_stable(&sub, &designated, &z, &ct).unwrap());

        // A pure expansion of the same vertex is excluded by the pairing rule.
        let pure = Subdivision::from_level_sets(2, &[1].into(), &BTreeSet::new()).unwrap();
        assert!(!is_ab_stable(&pure, &designated, &z, &ct).unwrap());

        // An empty non-tube bubble violates the tube clause.
        let none = StabilityCondition {
            name: "no-tubes".into(),
            alpha: AlphaRule::AllowAll,
            beta: BetaRule::NoTubes,
            mode: EnumerationMode::Minimal,
        };
        assert!(!is_ab_stable(&sub, &designated, &z, &none).unwrap());
    }

    #[test]
    fn condition_json_round_trip() {
        for name in StabilityCondition::builtin_names() {
            let cond = StabilityCondition::by_name(name).unwrap();
            let text = crate::codec::encode(&cond);
            let back: StabilityCondition = crate::codec::decode(&text).unwrap();
            assert_eq!(back, cond);
        }
    }
}
