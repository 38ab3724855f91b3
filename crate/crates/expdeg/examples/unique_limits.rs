//! Stability conditions as limit selectors: the canonical paired condition,
//! the pure preferences, and what happens without any condition.

use expdeg::limits::{unique_limit, LimitError, LimitFilter, PointConfiguration};
use expdeg::stability::{AlphaRule, BetaRule, EnumerationMode, StabilityCondition};

fn main() {
    let cfg = PointConfiguration::new(2, vec![[1, 1, 0]]).unwrap();
    println!("configuration {:?} at height 2\n", cfg.vertices());

    for cond in [
        StabilityCondition::ct_canonical(),
        StabilityCondition::pure1_preference(),
        StabilityCondition::pure2_preference(),
    ] {
        match unique_limit(&cfg, &cond, LimitFilter::Lw, None) {
            Ok(pair) => println!(
                "{}: unique limit with cuts1 = {:?}, cuts2 = {:?}",
                cond.name,
                pair.subdivision.level_set_1(),
                pair.subdivision.level_set_2()
            ),
            Err(e) => println!("{}: {e}", cond.name),
        }
    }

    let indifferent = StabilityCondition {
        name: "allow-all".into(),
        alpha: AlphaRule::AllowAll,
        beta: BetaRule::NonDesignatedTubes,
        mode: EnumerationMode::Minimal,
    };
    match unique_limit(&cfg, &indifferent, LimitFilter::Lw, None) {
        Err(LimitError::MultipleLimits(count, witnesses)) => {
            println!("\nallow-all: {count} surviving limits, so no unique choice:");
            for w in witnesses {
                println!(
                    "  cuts1 = {:?}, cuts2 = {:?}",
                    w.subdivision.level_set_1(),
                    w.subdivision.level_set_2()
                );
            }
        }
        other => println!("allow-all: {other:?}"),
    }

    // The canonical condition still selects a limit when the configuration
    // forces nothing on the shared side.
    let oblique = PointConfiguration::new(2, vec![[1, 0, 1]]).unwrap();
    let pair = unique_limit(
        &oblique,
        &StabilityCondition::ct_canonical(),
        LimitFilter::Sws,
        None,
    )
    .unwrap();
    println!(
        "\noblique vertex {:?} under the canonical condition: cuts1 = {:?}, cuts2 = {:?} (partner line empty)",
        oblique.vertices(),
        pair.subdivision.level_set_1(),
        pair.subdivision.level_set_2()
    );
}
