//! The edge-sliding criterion: which bubbles a given bubble can smooth into.
//!
//! A cut line through a vertex with multiplicity above one can shed copies
//! of itself to nearby integral levels; the new crossings adjacent to the
//! vertex are exactly the components its bubble can deform into.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::{attach_points, check_unbroken_subdivision, rescale, Subdivision};

/// Base-change policy for a smoothing problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rescale {
    Factor(u64),
    /// Choose the smallest factor creating an integral slide level.
    Auto,
}

pub const AUTO_RESCALE_CAP: u64 = 12;

impl Serialize for Rescale {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Rescale::Factor(k) => serializer.serialize_u64(*k),
            Rescale::Auto => serializer.serialize_str("auto"),
        }
    }
}

impl<'de> Deserialize<'de> for Rescale {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Factor(u64),
            Tag(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Factor(0) => Err(D::Error::custom("rescale factor must be positive")),
            Raw::Factor(k) => Ok(Rescale::Factor(k)),
            Raw::Tag(s) if s == "auto" => Ok(Rescale::Auto),
            Raw::Tag(s) => Err(D::Error::custom(format!(
                "rescale must be a positive integer or \"auto\", got `{s}`"
            ))),
        }
    }
}

fn default_boundary_adjacency() -> bool {
    true
}

/// A subdivision with multiplicities, a chosen vertex, and slide options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothingProblem {
    pub subdivision: Subdivision,
    pub v0: [u64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<Rescale>,
    /// Whether adjacency along the triangle's own sides grants smoothings.
    #[serde(default = "default_boundary_adjacency")]
    pub boundary_adjacency: bool,
}

impl SmoothingProblem {
    pub fn new(subdivision: Subdivision, v0: [u64; 3]) -> Self {
        SmoothingProblem {
            subdivision,
            v0,
            rescale: None,
            boundary_adjacency: true,
        }
    }

    fn validate(&self) -> Result<()> {
        self.subdivision.validate()?;
        if !self.subdivision.vertices().contains(&self.v0) {
            return Err(Error::validation(format!(
                "{:?} is not a vertex of the subdivision",
                self.v0
            )));
        }
        Ok(())
    }

    fn scaled(&self, factor: u64) -> (Subdivision, [u64; 3]) {
        (
            rescale(&self.subdivision, factor),
            self.v0.map(|e| e * factor),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LineType {
    Type1,
    Type2,
}

/// Integral levels a copy of the given line may slide to. Copies stay
/// strictly between the neighbouring parallel lines, and within the span of
/// the nearest attached edges on the first-two-corner side; with no attached
/// edge beyond the anchor, that side is closed off, and with no other
/// attached edge at all the whole side is open.
fn slide_levels(sub: &Subdivision, line: LineType, level: u64) -> Vec<u64> {
    let h = sub.h;
    let (own, other) = match line {
        LineType::Type1 => (&sub.cuts1, &sub.cuts2),
        LineType::Type2 => (&sub.cuts2, &sub.cuts1),
    };
    let _ = other;
    // Parallel constraint, in level coordinates.
    let par_lo = own
        .keys()
        .copied()
        .filter(|&c| c < level)
        .max()
        .unwrap_or(0);
    let par_hi = own
        .keys()
        .copied()
        .filter(|&c| c > level)
        .min()
        .unwrap_or(h);

    // Attached-edge constraint, in attach coordinates on the side between
    // the first two corners.
    let to_attach = |c: u64| match line {
        LineType::Type1 => c,
        LineType::Type2 => h - c,
    };
    let a_e = to_attach(level);
    let attachs: BTreeSet<u64> = attach_points(sub).keys().copied().collect();
    let below = attachs.iter().copied().filter(|&a| a < a_e).max();
    let above = attachs.iter().copied().filter(|&a| a > a_e).min();
    let (att_lo, att_hi) = match (below, above) {
        (Some(lo), Some(hi)) => (lo, hi),
        (Some(lo), None) => (lo, a_e),
        (None, Some(hi)) => (a_e, hi),
        (None, None) => (0, h),
    };
    // Back to level coordinates.
    let (att_lo, att_hi) = match line {
        LineType::Type1 => (att_lo, att_hi),
        LineType::Type2 => (h - att_hi, h - att_lo),
    };

    let lo = par_lo.max(att_lo);
    let hi = par_hi.min(att_hi);
    (lo + 1..hi).filter(|&c| c != level).collect()
}

/// One possible redistribution of a single line's multiplicity; the empty
/// redistribution (everything staying on the anchor) is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
struct LineSlide {
    /// Multiplicity retained by the anchored line.
    kept: u32,
    /// New parallel lines: level and multiplicity.
    copies: Vec<(u64, u32)>,
}

fn line_slides(sub: &Subdivision, line: LineType, level: u64) -> (Vec<LineSlide>, bool) {
    let mult = match line {
        LineType::Type1 => sub.cuts1[&level],
        LineType::Type2 => sub.cuts2[&level],
    };
    let identity = LineSlide {
        kept: mult,
        copies: vec![],
    };
    if mult < 2 {
        return (vec![identity], false);
    }
    let levels = slide_levels(sub, line, level);
    let mut out = vec![identity];
    let had_room = !levels.is_empty();
    // Up to mult - 1 distinct target levels, with positive multiplicities
    // summing to mult together with the anchor.
    for k in 1..=(mult as usize - 1).min(levels.len()) {
        for targets in crate::enumerate::subsets_of_size(&levels, k) {
            for split in crate::enumerate::compositions(mult as u64, k + 1) {
                out.push(LineSlide {
                    kept: split[0] as u32,
                    copies: targets
                        .iter()
                        .copied()
                        .zip(split[1..].iter().map(|&m| m as u32))
                        .collect(),
                });
            }
        }
    }
    (out, mult >= 2 && !had_room)
}

fn apply_slides(
    sub: &Subdivision,
    v0: [u64; 3],
    s1: &LineSlide,
    s2: &LineSlide,
) -> Option<Subdivision> {
    let mut cuts1 = sub.cuts1.clone();
    let mut cuts2 = sub.cuts2.clone();
    let apply = |cuts: &mut BTreeMap<u64, u32>, level: u64, slide: &LineSlide| {
        cuts.insert(level, slide.kept);
        for &(c, m) in &slide.copies {
            *cuts.entry(c).or_insert(0) += m;
        }
    };
    if sub.cuts1.contains_key(&v0[0]) {
        apply(&mut cuts1, v0[0], s1);
    }
    if sub.cuts2.contains_key(&v0[1]) {
        apply(&mut cuts2, v0[1], s2);
    }
    let slid = Subdivision {
        h: sub.h,
        cuts1,
        cuts2,
    };
    check_unbroken_subdivision(&slid).then_some(slid)
}

/// All slid subdivisions reachable from the lines through the chosen vertex,
/// including simultaneous slides of both lines; the identity is excluded.
/// `NoIntegralRoom` is reported when multiplicity is available to slide but
/// no integral level exists at the current height.
pub fn enumerate_slides(p: &SmoothingProblem) -> Result<Vec<Subdivision>> {
    p.validate()?;
    let factor = match p.rescale {
        None => 1,
        Some(Rescale::Factor(k)) => k,
        Some(Rescale::Auto) => auto_factor(p)?,
    };
    let (sub, v0) = p.scaled(factor);
    enumerate_slides_scaled(&sub, v0)
}

fn enumerate_slides_scaled(sub: &Subdivision, v0: [u64; 3]) -> Result<Vec<Subdivision>> {
    let (slides1, starved1) = if sub.cuts1.contains_key(&v0[0]) {
        line_slides(sub, LineType::Type1, v0[0])
    } else {
        (
            vec![LineSlide {
                kept: 0,
                copies: vec![],
            }],
            false,
        )
    };
    let (slides2, starved2) = if sub.cuts2.contains_key(&v0[1]) {
        line_slides(sub, LineType::Type2, v0[1])
    } else {
        (
            vec![LineSlide {
                kept: 0,
                copies: vec![],
            }],
            false,
        )
    };
    let mut out = Vec::new();
    for s1 in &slides1 {
        for s2 in &slides2 {
            if s1.copies.is_empty() && s2.copies.is_empty() {
                continue;
            }
            if let Some(slid) = apply_slides(sub, v0, s1, s2) {
                out.push(slid);
            }
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() && (starved1 || starved2) {
        return Err(Error::NoIntegralRoom(format!(
            "multiplicity at {v0:?} has no integral level to slide to at height {}",
            sub.h
        )));
    }
    Ok(out)
}

fn auto_factor(p: &SmoothingProblem) -> Result<u64> {
    for factor in 1..=AUTO_RESCALE_CAP {
        let (sub, v0) = p.scaled(factor);
        match enumerate_slides_scaled(&sub, v0) {
            // An empty list without a room error means nothing can slide at
            // any factor.
            Ok(_) => return Ok(factor),
            Err(Error::NoIntegralRoom(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoIntegralRoom(format!(
        "no integral slide level up to rescale factor {AUTO_RESCALE_CAP}"
    )))
}

/// A reachable bubble with one slide witnessing the smoothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothingTarget {
    pub at: [u64; 3],
    pub witness: Subdivision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothingReport {
    /// Height after any rescale, with `v0` in the same scale.
    pub h: u64,
    pub v0: [u64; 3],
    pub targets: Vec<SmoothingTarget>,
    /// A subscheme supported at the vertex either stays put or tends towards
    /// the interior of one of the targets; with no targets it is fixed.
    pub point_is_fixed: bool,
}

/// New vertices, over all slides, sharing an arrangement edge with the
/// chosen vertex: the components its bubble admits smoothings into.
pub fn smoothing_targets(p: &SmoothingProblem) -> Result<SmoothingReport> {
    p.validate()?;
    let factor = match p.rescale {
        None => 1,
        Some(Rescale::Factor(k)) => k,
        Some(Rescale::Auto) => auto_factor(p)?,
    };
    let (base, v0) = p.scaled(factor);
    let base_vertices = base.vertices();
    let mut targets: BTreeMap<[u64; 3], Subdivision> = BTreeMap::new();
    for slid in enumerate_slides_scaled(&base, v0)? {
        for v in slid.vertices().difference(&base_vertices) {
            if slid.adjacent(v0, *v, p.boundary_adjacency) {
                targets.entry(*v).or_insert_with(|| slid.clone());
            }
        }
    }
    let targets: Vec<SmoothingTarget> = targets
        .into_iter()
        .map(|(at, witness)| SmoothingTarget { at, witness })
        .collect();
    Ok(SmoothingReport {
        h: base.h,
        v0,
        point_is_fixed: targets.is_empty(),
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(h: u64, c1: &[(u64, u32)], c2: &[(u64, u32)]) -> Subdivision {
        Subdivision::new(
            h,
            c1.iter().copied().collect(),
            c2.iter().copied().collect(),
        )
        .unwrap()
    }

    fn slide_instance() -> SmoothingProblem {
        SmoothingProblem::new(sub(6, &[(2, 2), (4, 1)], &[(2, 1)]), [2, 2, 2])
    }

    #[test]
    fn double_line_slides_one_copy_up() {
        let slides = enumerate_slides(&slide_instance()).unwrap();
        let expected = sub(6, &[(2, 1), (3, 1), (4, 1)], &[(2, 1)]);
        assert!(slides.contains(&expected), "slides: {slides:?}");
        // No slide may put a copy below the anchor: the nearest attached
        // edge bounds that side.
        assert!(slides
            .iter()
            .all(|s| !s.cuts1.contains_key(&1) && !s.cuts1.contains_key(&5)));
    }

    #[test]
    fn multiplicity_one_means_no_slides() {
        let p = SmoothingProblem::new(sub(3, &[(1, 1), (2, 1)], &[(1, 1)]), [1, 1, 1]);
        assert_eq!(enumerate_slides(&p).unwrap(), vec![]);
        let report = smoothing_targets(&p).unwrap();
        assert!(report.targets.is_empty());
        assert!(report.point_is_fixed);
    }

    #[test]
    fn no_integral_room_until_rescaled() {
        let cramped = SmoothingProblem::new(sub(3, &[(1, 2), (2, 1)], &[(1, 1)]), [1, 1, 1]);
        assert!(matches!(
            enumerate_slides(&cramped),
            Err(Error::NoIntegralRoom(_))
        ));
        let mut doubled = cramped.clone();
        doubled.rescale = Some(Rescale::Factor(2));
        assert!(!enumerate_slides(&doubled).unwrap().is_empty());
        let mut auto = cramped;
        auto.rescale = Some(Rescale::Auto);
        let report = smoothing_targets(&auto).unwrap();
        assert_eq!(report.h, 6);
        assert!(!report.targets.is_empty());
    }

    #[test]
    fn interior_targets_exclude_the_side_endpoints() {
        let report = smoothing_targets(&slide_instance()).unwrap();
        let at: Vec<[u64; 3]> = report.targets.iter().map(|t| t.at).collect();
        assert_eq!(at, vec![[3, 2, 1]]);
    }

    #[test]
    fn boundary_vertex_slides_downward() {
        let p = SmoothingProblem::new(sub(4, &[(2, 2)], &[(2, 1)]), [2, 2, 0]);
        let report = smoothing_targets(&p).unwrap();
        let at: BTreeSet<[u64; 3]> = report.targets.iter().map(|t| t.at).collect();
        assert!(at.contains(&[1, 2, 1]), "targets: {at:?}");
        // Without boundary adjacency the side vertices drop out.
        let mut q = p.clone();
        q.boundary_adjacency = false;
        let interior_only = smoothing_targets(&q).unwrap();
        assert!(interior_only.targets.iter().all(|t| t.at[2] > 0));
    }

    #[test]
    fn targets_share_a_line_and_avoid_corners() {
        let cases = [
            slide_instance(),
            SmoothingProblem::new(sub(4, &[(2, 2)], &[(2, 1)]), [2, 2, 0]),
            SmoothingProblem::new(sub(8, &[(4, 3)], &[(2, 2)]), [4, 2, 2]),
        ];
        for p in cases {
            let report = smoothing_targets(&p).unwrap();
            for t in &report.targets {
                assert!(t.at.iter().all(|&e| e < report.h), "corner target {t:?}");
                assert!(
                    t.at[0] == report.v0[0]
                        || t.at[1] == report.v0[1]
                        || (p.boundary_adjacency
                            && t.at.iter().zip(report.v0).any(|(&a, b)| a == 0 && b == 0)),
                    "target {:?} shares no line with {:?}",
                    t.at,
                    report.v0
                );
            }
        }
    }

    #[test]
    fn coarse_targets_persist_under_rescaling() {
        for p in [
            slide_instance(),
            SmoothingProblem::new(sub(4, &[(2, 2)], &[(2, 1)]), [2, 2, 0]),
        ] {
            let base: BTreeSet<[u64; 3]> = smoothing_targets(&p)
                .unwrap()
                .targets
                .iter()
                .map(|t| t.at)
                .collect();
            for factor in 2..=3u64 {
                let mut scaled = p.clone();
                scaled.rescale = Some(Rescale::Factor(factor));
                let got: BTreeSet<[u64; 3]> = smoothing_targets(&scaled)
                    .unwrap()
                    .targets
                    .iter()
                    .map(|t| t.at)
                    .collect();
                for t in &base {
                    assert!(
                        got.contains(&t.map(|e| e * factor)),
                        "factor {factor} lost target {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_accepts_auto_and_integer_rescale() {
        let text = r#"{"subdivision": {"h": 3, "cuts1": {"1": 2, "2": 1}, "cuts2": {"1": 1}},
                       "v0": [1, 1, 1], "rescale": "auto"}"#;
        let p: SmoothingProblem = crate::codec::decode(text).unwrap();
        assert_eq!(p.rescale, Some(Rescale::Auto));
        assert!(p.boundary_adjacency);
        let text = text.replace("\"auto\"", "2");
        let p: SmoothingProblem = crate::codec::decode(&text).unwrap();
        assert_eq!(p.rescale, Some(Rescale::Factor(2)));
    }
}
