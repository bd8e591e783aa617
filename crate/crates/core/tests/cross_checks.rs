//! Cross-module consistency: generated colorings against the detector and
//! the formulas, the cap bound against random cap-respecting colorings, and
//! the oracle against small frozen values.

use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use antiramsey_core::coloring::{palette_cap_color_bound, verify_palette_cap_bound};
use antiramsey_core::oracle::{ar_exact, SearchStatus};
use antiramsey_core::{construct, detect, formulas, EdgeColoring, ForestSpec, FormulaConfig};

fn f(s: &str) -> ForestSpec {
    s.parse().unwrap()
}

/// Every generator output at desk scale: color count equals the formula
/// lower bound, ids are dense, the certificate passes, and (for hosts up to
/// 16 and patterns up to 8 edges) the exhaustive detector finds no rainbow
/// copy.
#[test]
fn generated_colorings_are_certified_and_rainbow_free() {
    let cases: &[(&str, std::ops::RangeInclusive<usize>)] = &[
        ("P(4,4)", 8..=16),
        ("P(3,3)", 6..=12),
        ("P(3,3,3)", 9..=14),
        ("P(5,3)", 8..=12),
        ("P(4,2)", 6..=12),
        ("P(3,2)", 5..=10),
        ("M(2)", 4..=10),
        ("M(3)", 6..=12),
        ("M(4)", 8..=12),
        ("S(3,1)", 6..=14),
        ("S(2,2)", 6..=12),
        ("S(3,3)", 8..=14),
        ("S(2,2,1)", 9..=14),
        ("S(1,1,1)", 6..=10),
        ("DS(2,1)", 7..=12),
        ("DS(2,2)", 6..=12),
        ("DS(3,2)", 7..=12),
        ("SP(2,2)", 5..=10),
        ("SP(2,2,2)", 7..=12),
        ("SP(2,3,3)", 9..=14),
        ("SP(1,1,1)", 4..=10),
    ];
    for (spec, range) in cases {
        let pat = f(spec);
        for n in range.clone() {
            let (col, cert) = construct::auto(n, &pat)
                .unwrap_or_else(|e| panic!("{spec} at n={n}: {e}"));
            assert!(
                construct::check_certificate(&col, &cert, &pat).unwrap(),
                "certificate {spec} at n={n}"
            );
            let formula = formulas::ar_formula(&pat, n as u64, &FormulaConfig::default()).unwrap();
            if let Some(lower) = formula.lower {
                // matching values on hosts of exactly the pattern order are
                // quoted, not construction-backed; there the generator only
                // promises a sound lower bound
                if formula.source.starts_with("matching-small-host") {
                    assert!(u64::from(col.num_colors()) <= lower, "{spec} at n={n}");
                } else {
                    assert_eq!(
                        u64::from(col.num_colors()),
                        lower,
                        "construction vs formula lower, {spec} at n={n}"
                    );
                }
            }
            if pat.edge_count() <= 8 {
                assert!(
                    detect::verify_no_rainbow(&col, &pat).unwrap(),
                    "rainbow copy found in {spec} output at n={n}"
                );
            }
        }
    }
}

/// Random cap-respecting colorings never exceed the color bound. Colorings
/// are sampled by constrained growth (uniform feasible color per edge) with
/// restarts on dead ends, 1000 instances over hosts 6..=9.
#[test]
fn cap_bound_holds_on_random_cap_respecting_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCA9B0);
    let mut produced = 0usize;
    while produced < 1000 {
        let n = rng.gen_range(6..=9usize);
        let cap = rng.gen_range(2..=(n / 3) as u32);
        let caps = vec![cap; n];
        if let Some(col) = sample_capped_coloring(n, &caps, &mut rng) {
            let bound = palette_cap_color_bound(&caps).unwrap();
            assert!(
                verify_palette_cap_bound(&col, &caps).unwrap(),
                "n={n} cap={cap}: {} colors above bound {bound}",
                col.num_colors()
            );
            produced += 1;
        }
    }
}

fn sample_capped_coloring(n: usize, caps: &[u32], rng: &mut ChaCha8Rng) -> Option<EdgeColoring> {
    'restart: for _ in 0..40 {
        let mut palettes: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut raw = Vec::with_capacity(n * (n - 1) / 2);
        let mut next_color = 0u32;
        for u in 0..n {
            for v in u + 1..n {
                let u_full = palettes[u].len() >= caps[u] as usize;
                let v_full = palettes[v].len() >= caps[v] as usize;
                let mut feasible: Vec<u32> = match (u_full, v_full) {
                    (false, false) => {
                        let mut all: Vec<u32> =
                            palettes[u].iter().chain(palettes[v].iter()).copied().collect();
                        all.push(next_color); // a fresh color
                        all
                    }
                    (true, false) => palettes[u].clone(),
                    (false, true) => palettes[v].clone(),
                    (true, true) => palettes[u]
                        .iter()
                        .filter(|c| palettes[v].contains(c))
                        .copied()
                        .collect(),
                };
                feasible.sort_unstable();
                feasible.dedup();
                if feasible.is_empty() {
                    continue 'restart;
                }
                let c = feasible[rng.gen_range(0..feasible.len())];
                if c == next_color {
                    next_color += 1;
                }
                if !palettes[u].contains(&c) {
                    palettes[u].push(c);
                }
                if !palettes[v].contains(&c) {
                    palettes[v].push(c);
                }
                raw.push(c);
            }
        }
        return Some(EdgeColoring::from_edge_colors(n, raw).expect("total assignment"));
    }
    None
}

/// Small exact values, frozen from completed oracle runs and cross-checked
/// against the formulas where a range applies. The host order is not
/// monotone territory: K_4 supports more colors against 2K_2 and P_4 than
/// K_5 does, because its three perfect matchings can each be painted one
/// color.
#[test]
fn oracle_agrees_with_frozen_small_values() {
    let frozen: &[(usize, &str, u64)] = &[
        (4, "M(2)", 3),
        (5, "M(2)", 1),
        (6, "M(3)", 6),
        (4, "P(3)", 1),
        (5, "P(3)", 1),
        (4, "P(4)", 3),
        (5, "P(4)", 2),
        (5, "P(5)", 5),
        (5, "S(3)", 3),
        (6, "P(3,2)", 2),
    ];
    for &(n, spec, expected) in frozen {
        let pat = f(spec);
        let out = ar_exact(n, &pat, Duration::from_secs(60), 0).unwrap();
        assert_eq!(out.status, SearchStatus::Exact, "{spec} at n={n}");
        assert_eq!(out.value, expected, "{spec} at n={n}");
        if let Some(w) = &out.witness {
            assert!(detect::verify_no_rainbow(w, &pat).unwrap(), "{spec} witness at n={n}");
            assert_eq!(u64::from(w.num_colors()), out.value);
        }
        let formula = formulas::ar_formula(&pat, n as u64, &FormulaConfig::default()).unwrap();
        if formula.status == formulas::FormulaStatus::Exact {
            assert_eq!(formula.value(), Some(expected), "formula vs oracle, {spec} at n={n}");
        }
        if let Some(lower) = formula.lower {
            assert!(lower <= expected, "formula lower exceeds truth, {spec} at n={n}");
        }
    }
}

/// Certificates are refuted when the structure is broken.
#[test]
fn broken_construction_fails_certificate() {
    let pat = f("P(4,4)");
    let (col, cert) = construct::linear_forest(12, &pat, construct::Variant::Join).unwrap();
    // repaint one interior edge with a join color: that class is no longer
    // a global singleton and the interior uses two colors
    let tampered = EdgeColoring::from_fn(12, |u, v| {
        if (u, v) == (5, 6) {
            col.color(0, 1)
        } else {
            col.color(u, v)
        }
    })
    .unwrap();
    assert!(!construct::check_certificate(&tampered, &cert, &pat).unwrap());
}
