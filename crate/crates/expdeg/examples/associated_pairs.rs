//! Limit enumeration for point configurations: the three expansions of a
//! vertex on the side between the first two corners, their survival under
//! the two stability filters, and bar classes.

use expdeg::limits::{
    associated_pairs, bar_class, stable_extensions, LimitFilter, PointConfiguration,
};
use expdeg::stability::EnumerationMode;

fn cfg(h: u64, vs: &[[u64; 3]]) -> PointConfiguration {
    PointConfiguration::new(h, vs.to_vec()).unwrap()
}

fn main() {
    let side = cfg(2, &[[1, 1, 0]]);
    println!("configuration {:?} at height 2:", side.vertices());
    for pair in associated_pairs(&side, EnumerationMode::Minimal).unwrap() {
        println!(
            "  cuts1 = {:?}, cuts2 = {:?}, choices = {:?}",
            pair.subdivision.level_set_1(),
            pair.subdivision.level_set_2(),
            pair.choices.values().collect::<Vec<_>>()
        );
    }

    for filter in [LimitFilter::Lw, LimitFilter::Sws] {
        let ext = stable_extensions(&side, filter, None).unwrap();
        println!("  {filter:?} filter keeps {} pair(s)", ext.pairs.len());
    }

    for (label, c) in [
        ("side vertex", side),
        ("oblique-side vertex", cfg(2, &[[1, 0, 1]])),
        ("interior vertex", cfg(3, &[[1, 1, 1]])),
        ("corner point", cfg(2, &[[0, 0, 2]])),
        ("two forcing vertices", cfg(4, &[[1, 2, 1], [3, 0, 1]])),
    ] {
        let class = bar_class(&c, None).unwrap();
        println!(
            "\nbar class of the {label} {:?}: {} stable extension(s)",
            class.key.vertices(),
            class.lw.len()
        );
        for pair in &class.lw {
            println!(
                "  cuts1 = {:?}, cuts2 = {:?}{}",
                pair.subdivision.level_set_1(),
                pair.subdivision.level_set_2(),
                if pair.extra_lines1.is_empty() && pair.extra_lines2.is_empty() {
                    ""
                } else {
                    " (with empty partner lines)"
                }
            );
        }
    }
}
