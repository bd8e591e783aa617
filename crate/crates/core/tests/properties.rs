//! Property tests: grammar round-trips, palette/stared invariants, and
//! representing-subgraph determinism.

use proptest::prelude::*;

use antiramsey_core::{EdgeColoring, ForestSpec};

fn forest_strategy() -> impl Strategy<Value = ForestSpec> {
    prop_oneof![
        prop::collection::vec(1u32..=6, 1..=4).prop_map(|v| ForestSpec::star_forest(v).unwrap()),
        prop::collection::vec(2u32..=7, 1..=4).prop_map(|v| ForestSpec::linear_forest(v).unwrap()),
        (1u32..=8).prop_map(|t| ForestSpec::matching(t).unwrap()),
        (1u32..=5, 1u32..=5)
            .prop_map(|(a, b)| ForestSpec::double_star(a.max(b), a.min(b)).unwrap()),
        prop::collection::vec(1u32..=5, 1..=4).prop_map(|v| ForestSpec::spider(v).unwrap()),
        Just(ForestSpec::omega2()),
    ]
}

fn coloring_strategy() -> impl Strategy<Value = EdgeColoring> {
    (2usize..=8)
        .prop_flat_map(|n| {
            let edges = n * (n - 1) / 2;
            (Just(n), prop::collection::vec(0u32..=(edges as u32 - 1).max(1), edges))
        })
        .prop_map(|(n, raw)| EdgeColoring::from_edge_colors(n, raw).unwrap())
}

proptest! {
    #[test]
    fn parse_format_round_trip(spec in forest_strategy()) {
        let text = spec.to_string();
        let back: ForestSpec = text.parse().unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn stared_within_palette_within_caps(col in coloring_strategy()) {
        let n = col.n();
        let k = col.num_colors() as usize;
        for v in 0..n {
            let p = col.color_profile(v).unwrap();
            prop_assert!(p.stared.is_subset(&p.palette));
            prop_assert!(p.palette.len() <= (n - 1).min(k));
        }
    }

    #[test]
    fn representing_subgraph_is_deterministic_with_one_edge_per_color(col in coloring_strategy()) {
        let g1 = col.representing_subgraph(&[]).unwrap();
        let g2 = col.representing_subgraph(&[]).unwrap();
        prop_assert_eq!(g1.edges(), g2.edges());
        prop_assert_eq!(g1.edge_count(), col.num_colors() as usize);
        // one edge of each color
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in g1.edges() {
            prop_assert!(seen.insert(col.color(u, v)));
        }
    }

    #[test]
    fn coloring_file_round_trip_is_stable(col in coloring_strategy()) {
        let text = col.to_file_string();
        let back = EdgeColoring::read_from(text.as_bytes()).unwrap();
        prop_assert_eq!(back.num_colors(), col.num_colors());
        // a canonicalized file re-reads to identical bytes
        let canonical = back.to_file_string();
        let again = EdgeColoring::read_from(canonical.as_bytes()).unwrap();
        prop_assert_eq!(again.to_file_string(), canonical);
    }
}
