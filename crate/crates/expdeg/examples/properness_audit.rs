//! Auditing stability conditions: the canonical paired condition passes both
//! properness checks; the one-pure-1 / two-pure-2 preference admits unique
//! limits but breaks tropical compatibility, with an explicit witness.

use expdeg::limits::{audit_condition, AuditBounds, AuditWitness, LimitFilter};
use expdeg::stability::StabilityCondition;

fn main() {
    let bounds = AuditBounds { max_h: 4, max_m: 2 };

    let report = audit_condition(
        &StabilityCondition::ct_canonical(),
        bounds,
        LimitFilter::Lw,
        None,
    )
    .unwrap();
    print!("{}", report.to_text());

    let report = audit_condition(
        &StabilityCondition::one_pure1_two_pure2(),
        bounds,
        LimitFilter::Lw,
        None,
    )
    .unwrap();
    print!("\n{}", report.to_text());

    if let Some(AuditWitness::Incompatible {
        cfg,
        moved_from,
        moved_to,
        generic_subdivision,
        limit_subdivision,
        ..
    }) = report
        .witnesses
        .iter()
        .find(|w| matches!(w, AuditWitness::Incompatible { .. }))
    {
        println!("\nfirst incompatibility in detail:");
        println!("  generic pair: {:?} at height {}", cfg.vertices(), cfg.h());
        println!(
            "  its fibre: cuts1 = {:?}, cuts2 = {:?}",
            generic_subdivision.level_set_1(),
            generic_subdivision.level_set_2()
        );
        println!("  the corner point at {moved_from:?} degenerates to {moved_to:?}");
        println!(
            "  the limit's unique fibre: cuts1 = {:?}, cuts2 = {:?}",
            limit_subdivision.level_set_1(),
            limit_subdivision.level_set_2()
        );
        println!("  which does not refine the generic fibre, so the family has no limit");
    }
}
