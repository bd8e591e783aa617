//! Generators for the extremal rainbow-free colorings behind the known lower
//! bounds, each paired with a machine-checkable certificate.
//!
//! Every generator is deterministic: identical inputs produce byte-identical
//! coloring files. The recipes are joins of a small rainbow part with a
//! color-starved interior:
//!
//! * star avoider — a rainbow near-`(p-2)`-regular circulant plus one
//!   residual color on everything else; every palette has at most `p-1`
//!   colors, so no rainbow `K_{1,p}` exists;
//! * star forest — rainbow join on `i-1` vertices around a star avoider, or
//!   (with at least three components) a rainbow join on `t-2` vertices with
//!   `r` interior colors;
//! * linear forest — a rainbow clique plus one residual color, or a rainbow
//!   join on `s` vertices with `r` interior colors, where `s` and `r` come
//!   from the component parities;
//! * double star — a star avoider alone (`q < p`), or a rainbow star at
//!   vertex 0 over an avoider (`q = p`);
//! * spider — a rainbow join on `beta - 1` vertices with `r` interior
//!   colors, `beta` being the minimum matching number after deleting one
//!   edge.
//!
//! Generators accept any `n` at least the pattern order; the emitted coloring
//! is always certified rainbow-free even when `n` is below the range where
//! the color count is provably optimal.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{lex_edges, EdgeColoring};
use crate::forest::{ForestKind, ForestSpec, SpiderSpec};
use crate::formulas::{clique_lower_value, join_lower_value, star_forest_value};
use crate::graph::{min_matching_after_deletions, spider_beta, spider_graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("K_{n} is too small for the pattern (needs at least {needed} vertices)")]
    HostTooSmall { needed: usize, n: usize },
    #[error("every coloring contains a rainbow copy of {0}; no rainbow-free coloring exists")]
    TrivialPattern(String),
    #[error("variant not applicable: {0}")]
    VariantNotApplicable(String),
    #[error("certificate does not belong to this coloring: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Auto,
    Clique,
    Join,
}

impl std::str::FromStr for Variant {
    type Err = ConstructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Variant::Auto),
            "clique" => Ok(Variant::Clique),
            "join" => Ok(Variant::Join),
            other => Err(ConstructError::BadParams(format!("unknown variant `{other}`"))),
        }
    }
}

/// Structural shape of a certified coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertKind {
    JoinPlusStarAvoider { join_size: usize, star_cap: u32 },
    CliquePlusOne { clique_size: usize },
    JoinPlusRConstant { join_size: usize, inner_colors: u32 },
    StarPlusAvoider { rainbow_center: Option<usize>, palette_cap: u32 },
    MatchingExtremal { join_size: usize, inner_colors: u32 },
    SpiderJoin { join_size: usize, inner_colors: u32, beta: u64 },
}

/// One named predicate of a certificate, checkable in polynomial time
/// against the coloring and the target pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum Condition {
    /// The coloring uses exactly this many colors.
    ColorCountEquals { colors: u64 },
    /// Color ids are dense (every id below the count is used).
    DenseColorIds,
    /// Every edge meeting `0..size` has a globally unique color.
    RainbowJoinPart { size: usize },
    /// Every edge inside `0..size` has a globally unique color.
    RainbowClique { size: usize },
    /// Edges not inside `0..size` use exactly `colors` colors.
    OutsideCliqueColorCount { size: usize, colors: u32 },
    /// Edges with both endpoints at or above `part` use exactly `colors`
    /// colors.
    ComplementColorCount { part: usize, colors: u32 },
    /// Every vertex at or above `part` sees at most `cap` colors on edges
    /// staying at or above `part`.
    InnerPaletteCap { part: usize, cap: u32 },
    /// Every vertex sees at most `cap` colors.
    GlobalPaletteCap { cap: u32 },
    /// All edges at `center` have globally unique colors.
    RainbowStarAt { center: usize },
    /// The pattern has a vertex of degree above `cap`, so a global palette
    /// cap of `cap` rules out any rainbow copy.
    PaletteCapBlocksStar { cap: u32 },
    /// For a double star with equal sides, some center keeps at least
    /// `cap + 1` edges inside the interior, so the interior palette cap
    /// rules out a rainbow copy.
    InnerStarBlocksDoubleStar { cap: u32 },
    /// Removing any `cover` vertices from the pattern leaves at least `need`
    /// edges, so any copy has at least `need` edges inside the interior.
    MinUncoveredEdges { cover: usize, need: u32 },
    /// A rainbow clique of this size plus one residual color forces at least
    /// two residual edges in any copy of the pattern.
    CliqueSizeBlocksPattern { size: usize },
    /// The two smallest components of the pattern have at least `need` edges
    /// together.
    MinTwoComponentEdges { need: u32 },
    /// Deleting any set of at most `deletions` edges from the pattern tree
    /// leaves a matching of size at least `min`.
    MatchingAfterDeletions { deletions: u32, min: u64 },
}

/// Path-component orders of a pattern, if it is a disjoint union of paths
/// (in any spelling).
fn path_component_orders(f: &ForestSpec) -> Option<Vec<u32>> {
    match f.kind() {
        ForestKind::LinearForest => Some(f.params().to_vec()),
        ForestKind::Matching => Some(vec![2; f.params()[0] as usize]),
        // stars on at most 2 edges are paths
        ForestKind::StarForest if f.params().iter().all(|&p| p <= 2) => {
            Some(f.params().iter().map(|&p| p + 1).collect())
        }
        ForestKind::DoubleStar if f.params() == [1, 1] => Some(vec![4]),
        ForestKind::Spider if f.params().len() <= 2 => {
            Some(vec![1 + f.params().iter().sum::<u32>()])
        }
        _ => None,
    }
}

/// Minimum number of pattern edges left uncovered by `cover` vertices, for a
/// disjoint union of paths. A path on `p` vertices with `c` chosen vertices
/// keeps at least `max(p - 1 - 2c, 0)` edges, and per-component savings are
/// non-increasing, so greedy allocation is exact.
fn min_uncovered_edges(orders: &[u32], cover: usize) -> u64 {
    let mut rem: Vec<u64> = orders.iter().map(|&p| u64::from(p) - 1).collect();
    for _ in 0..cover {
        if let Some(best) = (0..rem.len()).max_by_key(|&i| rem[i].min(2)) {
            let save = rem[best].min(2);
            rem[best] -= save;
        }
    }
    rem.iter().sum()
}

/// Largest rainbow-clique size that still forces two residual edges in any
/// copy of a path-shaped pattern. A copy escapes with at most one residual
/// edge only by hanging a leaf (possible once the clique holds all but one
/// vertex) or an entire 2-vertex component outside; matchings escape
/// fastest.
fn sound_clique_size(orders: &[u32]) -> Option<usize> {
    let sum: usize = orders.iter().map(|&p| p as usize).sum();
    if orders.iter().all(|&p| p == 2) {
        if orders.len() < 2 {
            return None;
        }
        Some(2 * orders.len() - 3)
    } else if orders.iter().all(|&p| p >= 3) {
        Some(sum - 2)
    } else {
        if sum < 3 {
            return None;
        }
        Some(sum - 3)
    }
}

impl Condition {
    pub fn eval(&self, col: &EdgeColoring, f: &ForestSpec) -> bool {
        let n = col.n();
        match *self {
            Condition::ColorCountEquals { colors } => u64::from(col.num_colors()) == colors,
            Condition::DenseColorIds => col.classes().iter().all(|c| !c.is_empty()),
            Condition::RainbowJoinPart { size } => {
                let classes = col.classes();
                lex_edges(n)
                    .filter(|&(u, _)| u < size)
                    .all(|(u, v)| classes[col.color(u, v) as usize].len() == 1)
            }
            Condition::RainbowClique { size } => {
                let classes = col.classes();
                lex_edges(n)
                    .filter(|&(_, v)| v < size)
                    .all(|(u, v)| classes[col.color(u, v) as usize].len() == 1)
            }
            Condition::OutsideCliqueColorCount { size, colors } => {
                let distinct: std::collections::BTreeSet<u32> = lex_edges(n)
                    .filter(|&(_, v)| v >= size)
                    .map(|(u, v)| col.color(u, v))
                    .collect();
                distinct.len() == colors as usize
            }
            Condition::ComplementColorCount { part, colors } => {
                let distinct: std::collections::BTreeSet<u32> = lex_edges(n)
                    .filter(|&(u, _)| u >= part)
                    .map(|(u, v)| col.color(u, v))
                    .collect();
                distinct.len() == colors as usize
            }
            Condition::InnerPaletteCap { part, cap } => (part..n).all(|v| {
                let distinct: std::collections::BTreeSet<u32> =
                    (part..n).filter(|&w| w != v).map(|w| col.color(v, w)).collect();
                distinct.len() <= cap as usize
            }),
            Condition::GlobalPaletteCap { cap } => {
                (0..n).all(|v| col.palette(v).len() <= cap as usize)
            }
            Condition::RainbowStarAt { center } => {
                let classes = col.classes();
                (0..n)
                    .filter(|&w| w != center)
                    .all(|w| classes[col.color(center, w) as usize].len() == 1)
            }
            Condition::PaletteCapBlocksStar { cap } => f.max_degree() > cap as usize,
            Condition::InnerStarBlocksDoubleStar { cap } => {
                f.kind() == ForestKind::DoubleStar
                    && f.params()[0] == f.params()[1]
                    && cap < f.params()[0]
            }
            Condition::MinUncoveredEdges { cover, need } => path_component_orders(f)
                .map(|orders| min_uncovered_edges(&orders, cover) >= u64::from(need))
                .unwrap_or(false),
            Condition::CliqueSizeBlocksPattern { size } => path_component_orders(f)
                .and_then(|orders| sound_clique_size(&orders))
                .map(|max| size <= max)
                .unwrap_or(false),
            Condition::MinTwoComponentEdges { need } => f
                .component_trees()
                .map(|trees| {
                    trees.len() >= 2 && {
                        let a = trees[trees.len() - 1].edge_count();
                        let b = trees[trees.len() - 2].edge_count();
                        a + b >= need as usize
                    }
                })
                .unwrap_or(false),
            Condition::MatchingAfterDeletions { deletions, min } => {
                match SpiderSpec::try_from(f) {
                    Ok(sp) => {
                        let t = spider_graph(&sp);
                        min_matching_after_deletions(&t, deletions as usize)
                            .map(|m| m as u64 >= min)
                            .unwrap_or(false)
                    }
                    Err(_) => false,
                }
            }
        }
    }
}

/// Machine-checkable witness that a generated coloring admits no rainbow
/// copy of its target pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    #[serde(flatten)]
    pub kind: CertKind,
    pub n: usize,
    pub forest: String,
    pub expected_colors: u64,
    pub conditions: Vec<Condition>,
}

/// Evaluate every condition of `cert` against `col` and the pattern `f`.
/// `Ok(true)` means the structural witness holds, which implies the coloring
/// has no rainbow copy of `f`. A certificate for a different host order or a
/// different pattern is an error, not a failure.
pub fn check_certificate(
    col: &EdgeColoring,
    cert: &ConstructionCertificate,
    f: &ForestSpec,
) -> Result<bool, ConstructError> {
    if cert.n != col.n() {
        return Err(ConstructError::Mismatch(format!(
            "certificate is for K_{}, coloring is on K_{}",
            cert.n,
            col.n()
        )));
    }
    if cert.forest != f.to_string() {
        return Err(ConstructError::Mismatch(format!(
            "certificate targets {}, got {}",
            cert.forest, f
        )));
    }
    Ok(cert.conditions.iter().all(|c| c.eval(col, f)))
}

/// Incremental coloring assembly with fresh dense ids.
struct Builder {
    n: usize,
    colors: Vec<Option<u32>>,
    next: u32,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { n, colors: vec![None; n * (n - 1) / 2], next: 0 }
    }

    fn fresh(&mut self) -> u32 {
        let c = self.next;
        self.next += 1;
        c
    }

    fn paint(&mut self, u: usize, v: usize, c: u32) {
        let (u, v) = (u.min(v), u.max(v));
        let idx = crate::coloring::edge_index(self.n, u, v);
        debug_assert!(self.colors[idx].is_none(), "edge painted twice");
        self.colors[idx] = Some(c);
    }

    fn paint_fresh(&mut self, u: usize, v: usize) {
        let c = self.fresh();
        self.paint(u, v, c);
    }

    fn paint_remaining(&mut self, c: u32) {
        for slot in &mut self.colors {
            if slot.is_none() {
                *slot = Some(c);
            }
        }
    }

    fn unpainted(&self) -> usize {
        self.colors.iter().filter(|c| c.is_none()).count()
    }

    fn finish(self) -> EdgeColoring {
        let colors = self.colors;
        let n = self.n;
        EdgeColoring::from_fn(n, |u, v| {
            colors[crate::coloring::edge_index(n, u, v)].expect("total coloring")
        })
        .expect("builder output is dense")
    }
}

/// Edge set of a rainbow subgraph in which every vertex has degree `d`,
/// except that one vertex drops to `d - 1` when `d * n` is odd; exactly
/// `floor(d * n / 2)` edges. Realized as a circulant on offsets `1..=d/2`,
/// completed for odd `d` by the antipodal perfect matching (`n` even) or by
/// a near-perfect matching along the offset-`(n-1)/2` cycle (`n` odd, where
/// that offset is always coprime to `n`).
fn near_regular_edges(n: usize, d: usize) -> Vec<(usize, usize)> {
    debug_assert!(d + 2 < n || d == 0);
    let mut edges = Vec::with_capacity(d * n / 2);
    for k in 1..=d / 2 {
        for i in 0..n {
            let j = (i + k) % n;
            edges.push((i.min(j), i.max(j)));
        }
    }
    if d % 2 == 1 {
        if n.is_multiple_of(2) {
            for i in 0..n / 2 {
                edges.push((i, i + n / 2));
            }
        } else {
            let o = (n - 1) / 2;
            let seq: Vec<usize> = (0..n).map(|j| (j * o) % n).collect();
            for j in (0..n - 1).step_by(2) {
                let (a, b) = (seq[j], seq[j + 1]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    debug_assert_eq!(edges.len(), d * n / 2);
    edges
}

/// Number of colors of the star avoider on `K_n` for star size `p`.
pub fn star_avoider_colors(n: usize, p: u32) -> u64 {
    (u64::from(p) - 2) * n as u64 / 2 + 1
}

/// Coloring of `K_n` with `floor((p-2)n/2) + 1` colors in which every vertex
/// sees at most `p - 1` colors, hence no rainbow `K_{1,p}`. Requires
/// `p >= 2` and `n >= p + 1`.
pub fn star_avoider(n: usize, p: u32) -> Result<EdgeColoring, ConstructError> {
    if p < 2 {
        return Err(ConstructError::BadParams(format!("star size must be at least 2, got {p}")));
    }
    if n < p as usize + 1 {
        return Err(ConstructError::HostTooSmall { needed: p as usize + 1, n });
    }
    let mut b = Builder::new(n);
    for (u, v) in near_regular_edges(n, p as usize - 2) {
        b.paint_fresh(u, v);
    }
    let residual = b.fresh();
    b.paint_remaining(residual);
    let col = b.finish();
    debug_assert_eq!(u64::from(col.num_colors()), star_avoider_colors(n, p));
    Ok(col)
}

/// Standalone certificate for a star avoider, valid against any pattern
/// whose maximum degree is at least `p`.
pub fn star_avoider_certificate(n: usize, p: u32, f: &ForestSpec) -> ConstructionCertificate {
    ConstructionCertificate {
        kind: CertKind::StarPlusAvoider { rainbow_center: None, palette_cap: p - 1 },
        n,
        forest: f.to_string(),
        expected_colors: star_avoider_colors(n, p),
        conditions: vec![
            Condition::ColorCountEquals { colors: star_avoider_colors(n, p) },
            Condition::DenseColorIds,
            Condition::GlobalPaletteCap { cap: p - 1 },
            Condition::PaletteCapBlocksStar { cap: p - 1 },
        ],
    }
}

/// Rainbow join on `0..join_size` with `inner_colors` colors inside the
/// complement; with two interior colors the lexicographically least interior
/// edge takes its own color and the bulk residual keeps the highest id.
fn join_plus_inner(n: usize, join_size: usize, inner_colors: u32) -> Builder {
    let mut b = Builder::new(n);
    for (u, v) in lex_edges(n) {
        if u < join_size {
            b.paint_fresh(u, v);
        }
    }
    debug_assert!(inner_colors == 1 || inner_colors == 2);
    if inner_colors == 2 {
        debug_assert!(b.unpainted() >= 2);
        let special = b.fresh();
        b.paint(join_size, join_size + 1, special);
    }
    let residual = b.fresh();
    b.paint_remaining(residual);
    b
}

/// Extremal coloring for a star forest: the best of the
/// rainbow-join-around-an-avoider branches and (with at least three
/// components) the matching-style branch. The smallest maximizing join index
/// wins ties.
pub fn star_forest(
    n: usize,
    f: &ForestSpec,
) -> Result<(EdgeColoring, ConstructionCertificate), ConstructError> {
    if f.kind() != ForestKind::StarForest {
        return Err(ConstructError::BadParams(format!("expected a star forest, got {f}")));
    }
    let p = f.params();
    if p[0] < 2 {
        return Err(ConstructError::BadParams(
            "every component is a single edge; use the matching (linear forest) construction"
                .into(),
        ));
    }
    let order = f.vertex_count();
    if n < order {
        return Err(ConstructError::HostTooSmall { needed: order, n });
    }
    let (value, branch, r_match, _) = star_forest_value(p, n as u64);
    match branch {
        Some(i) => {
            let join_size = i - 1;
            let star_cap = p[i - 1];
            let m = n - join_size;
            let mut b = Builder::new(n);
            for (u, v) in lex_edges(n) {
                if u < join_size {
                    b.paint_fresh(u, v);
                }
            }
            for (u, v) in near_regular_edges(m, star_cap as usize - 2) {
                b.paint_fresh(u + join_size, v + join_size);
            }
            let residual = b.fresh();
            b.paint_remaining(residual);
            let col = b.finish();
            debug_assert_eq!(u64::from(col.num_colors()), value);
            let cert = ConstructionCertificate {
                kind: CertKind::JoinPlusStarAvoider { join_size, star_cap },
                n,
                forest: f.to_string(),
                expected_colors: value,
                conditions: vec![
                    Condition::ColorCountEquals { colors: value },
                    Condition::DenseColorIds,
                    Condition::RainbowJoinPart { size: join_size },
                    Condition::InnerPaletteCap { part: join_size, cap: star_cap - 1 },
                ],
            };
            Ok((col, cert))
        }
        None => {
            let t = p.len();
            let r = r_match.expect("matching branch implies t >= 3");
            let join_size = t - 2;
            let col = join_plus_inner(n, join_size, r).finish();
            debug_assert_eq!(u64::from(col.num_colors()), value);
            let cert = ConstructionCertificate {
                kind: CertKind::MatchingExtremal { join_size, inner_colors: r },
                n,
                forest: f.to_string(),
                expected_colors: value,
                conditions: vec![
                    Condition::ColorCountEquals { colors: value },
                    Condition::DenseColorIds,
                    Condition::RainbowJoinPart { size: join_size },
                    Condition::ComplementColorCount { part: join_size, colors: r },
                    Condition::MinTwoComponentEdges { need: r + 1 },
                ],
            };
            Ok((col, cert))
        }
    }
}

/// Extremal coloring for a disjoint union of paths (any spelling, including
/// matchings). The clique variant paints a rainbow clique plus one residual
/// color; the join variant a rainbow join on `s` vertices with `r` interior
/// colors. `Auto` takes the variant with more colors, preferring the clique
/// on ties.
pub fn linear_forest(
    n: usize,
    f: &ForestSpec,
    variant: Variant,
) -> Result<(EdgeColoring, ConstructionCertificate), ConstructError> {
    let orders = path_component_orders(f).ok_or_else(|| {
        ConstructError::BadParams(format!("{f} is not a disjoint union of paths"))
    })?;
    if f.edge_count() <= 1 {
        return Err(ConstructError::TrivialPattern(f.to_string()));
    }
    let order = f.vertex_count();
    if n < order {
        return Err(ConstructError::HostTooSmall { needed: order, n });
    }
    let evens = orders.iter().filter(|&&p| p % 2 == 0).count();
    let epsilon: i64 = if evens == 0 { 1 } else { 2 };
    let r: u32 = if evens == 1 { 2 } else { 1 };
    let s: i64 = orders.iter().map(|&p| i64::from(p) / 2).sum::<i64>() - epsilon;
    let join_value = (s >= 0).then(|| join_lower_value(s, r, n as u64));
    let clique_value = clique_lower_value(&orders);
    let choice = match variant {
        Variant::Clique if clique_value.is_none() => {
            return Err(ConstructError::VariantNotApplicable(
                "no sound clique size for this pattern".into(),
            ))
        }
        Variant::Join if join_value.is_none() => {
            return Err(ConstructError::VariantNotApplicable(
                "the join part would be negative for this pattern".into(),
            ))
        }
        Variant::Auto => match (clique_value, join_value) {
            (Some(c), Some(j)) if c >= j => Variant::Clique,
            (Some(_), None) => Variant::Clique,
            (_, Some(_)) => Variant::Join,
            (None, None) => {
                return Err(ConstructError::VariantNotApplicable(
                    "no construction applies to this pattern".into(),
                ))
            }
        },
        v => v,
    };
    if choice == Variant::Clique {
        let value = clique_value.expect("checked");
        let clique_size = sound_clique_size(&orders).expect("checked");
        let mut b = Builder::new(n);
        for (u, v) in lex_edges(n) {
            if v < clique_size {
                b.paint_fresh(u, v);
            }
        }
        let residual = b.fresh();
        b.paint_remaining(residual);
        let col = b.finish();
        debug_assert_eq!(u64::from(col.num_colors()), value);
        let cert = ConstructionCertificate {
            kind: CertKind::CliquePlusOne { clique_size },
            n,
            forest: f.to_string(),
            expected_colors: value,
            conditions: vec![
                Condition::ColorCountEquals { colors: value },
                Condition::DenseColorIds,
                Condition::RainbowClique { size: clique_size },
                Condition::OutsideCliqueColorCount { size: clique_size, colors: 1 },
                Condition::CliqueSizeBlocksPattern { size: clique_size },
            ],
        };
        Ok((col, cert))
    } else {
        let value = join_value.expect("checked");
        let join_size = s as usize;
        let col = join_plus_inner(n, join_size, r).finish();
        debug_assert_eq!(u64::from(col.num_colors()), value);
        let cert = ConstructionCertificate {
            kind: CertKind::JoinPlusRConstant { join_size, inner_colors: r },
            n,
            forest: f.to_string(),
            expected_colors: value,
            conditions: vec![
                Condition::ColorCountEquals { colors: value },
                Condition::DenseColorIds,
                Condition::RainbowJoinPart { size: join_size },
                Condition::ComplementColorCount { part: join_size, colors: r },
                Condition::MinUncoveredEdges { cover: join_size, need: r + 1 },
            ],
        };
        Ok((col, cert))
    }
}

/// Extremal coloring for a double star: for `q < p` a star avoider against
/// the forced `K_{1,p+1}`; for `q = p` a rainbow star at vertex 0 over an
/// avoider on the rest.
pub fn double_star(
    n: usize,
    p: u32,
    q: u32,
) -> Result<(EdgeColoring, ConstructionCertificate), ConstructError> {
    if p < 2 || q < 1 || q > p {
        return Err(ConstructError::BadParams(format!(
            "double star needs p >= 2 and 1 <= q <= p, got p={p} q={q}"
        )));
    }
    let needed = (p + q + 2) as usize;
    if n < needed {
        return Err(ConstructError::HostTooSmall { needed, n });
    }
    let f = ForestSpec::double_star(p, q).expect("validated");
    if q < p {
        let col = star_avoider(n, p + 1)?;
        let value = star_avoider_colors(n, p + 1);
        let cert = ConstructionCertificate {
            kind: CertKind::StarPlusAvoider { rainbow_center: None, palette_cap: p },
            n,
            forest: f.to_string(),
            expected_colors: value,
            conditions: vec![
                Condition::ColorCountEquals { colors: value },
                Condition::DenseColorIds,
                Condition::GlobalPaletteCap { cap: p },
                Condition::PaletteCapBlocksStar { cap: p },
            ],
        };
        Ok((col, cert))
    } else {
        let m = n - 1;
        let mut b = Builder::new(n);
        for w in 1..n {
            b.paint_fresh(0, w);
        }
        for (u, v) in near_regular_edges(m, p as usize - 2) {
            b.paint_fresh(u + 1, v + 1);
        }
        let residual = b.fresh();
        b.paint_remaining(residual);
        let col = b.finish();
        let value = u64::from(p) * (n as u64 - 1) / 2 + 1;
        debug_assert_eq!(u64::from(col.num_colors()), value);
        let cert = ConstructionCertificate {
            kind: CertKind::StarPlusAvoider { rainbow_center: Some(0), palette_cap: p - 1 },
            n,
            forest: f.to_string(),
            expected_colors: value,
            conditions: vec![
                Condition::ColorCountEquals { colors: value },
                Condition::DenseColorIds,
                Condition::RainbowStarAt { center: 0 },
                Condition::InnerPaletteCap { part: 1, cap: p - 1 },
                Condition::InnerStarBlocksDoubleStar { cap: p - 1 },
            ],
        };
        Ok((col, cert))
    }
}

/// Extremal coloring for a spider with at least two legs, all of length at
/// least 2: a rainbow join on `beta - 1` vertices with `r` interior colors.
pub fn spider(
    n: usize,
    sp: &SpiderSpec,
) -> Result<(EdgeColoring, ConstructionCertificate), ConstructError> {
    if sp.legs().len() < 2 {
        return Err(ConstructError::BadParams(format!(
            "{sp} has fewer than two legs; it is a path, use the linear forest construction"
        )));
    }
    let order = sp.vertex_count();
    if n < order {
        return Err(ConstructError::HostTooSmall { needed: order, n });
    }
    let beta = spider_beta(sp)? as u64;
    let r: u32 = if sp.exactly_one_even_leg() { 2 } else { 1 };
    let join_size = beta as usize - 1;
    let value = join_lower_value(beta as i64 - 1, r, n as u64);
    let col = join_plus_inner(n, join_size, r).finish();
    debug_assert_eq!(u64::from(col.num_colors()), value);
    let f = ForestSpec::spider(sp.legs().to_vec()).expect("validated");
    let cert = ConstructionCertificate {
        kind: CertKind::SpiderJoin { join_size, inner_colors: r, beta },
        n,
        forest: f.to_string(),
        expected_colors: value,
        conditions: vec![
            Condition::ColorCountEquals { colors: value },
            Condition::DenseColorIds,
            Condition::RainbowJoinPart { size: join_size },
            Condition::ComplementColorCount { part: join_size, colors: r },
            Condition::MatchingAfterDeletions { deletions: r, min: beta },
        ],
    };
    Ok((col, cert))
}

/// Dispatch to the generator matching the pattern's family.
pub fn auto(
    n: usize,
    f: &ForestSpec,
) -> Result<(EdgeColoring, ConstructionCertificate), ConstructError> {
    match f.kind() {
        ForestKind::StarForest => {
            if f.params().iter().all(|&p| p <= 2) {
                // every component is a path; the linear generator also has
                // the clique variant
                linear_forest(n, f, Variant::Auto)
            } else {
                star_forest(n, f)
            }
        }
        ForestKind::LinearForest | ForestKind::Matching => linear_forest(n, f, Variant::Auto),
        ForestKind::DoubleStar => {
            if f.params() == [1, 1] {
                linear_forest(n, f, Variant::Auto)
            } else {
                double_star(n, f.params()[0], f.params()[1])
            }
        }
        ForestKind::Spider => {
            let legs = f.params();
            if legs.iter().all(|&a| a == 1) {
                // a plain star
                let p = legs.len() as u32;
                if p < 2 {
                    return Err(ConstructError::TrivialPattern(f.to_string()));
                }
                let col = star_avoider(n, p)?;
                Ok((col, star_avoider_certificate(n, p, f)))
            } else if legs.len() == 1 {
                linear_forest(n, f, Variant::Auto)
            } else {
                let sp = SpiderSpec::try_from(f).expect("kind checked");
                spider(n, &sp)
            }
        }
        ForestKind::Omega2 => Err(ConstructError::BadParams(
            "no generator for the two-disjoint-cycles family".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> ForestSpec {
        s.parse().unwrap()
    }

    fn max_palette(col: &EdgeColoring) -> usize {
        (0..col.n()).map(|v| col.palette(v).len()).max().unwrap()
    }

    #[test]
    fn star_avoider_counts_and_caps() {
        let col = star_avoider(10, 4).unwrap();
        assert_eq!(col.num_colors(), 11);
        assert_eq!(max_palette(&col), 3);

        let col = star_avoider(5, 2).unwrap();
        assert_eq!(col.num_colors(), 1);

        // odd product: one vertex drops one degree
        let col = star_avoider(9, 5).unwrap();
        assert_eq!(col.num_colors(), 14);
        assert_eq!(max_palette(&col), 4);

        assert!(matches!(star_avoider(3, 1), Err(ConstructError::BadParams(_))));
        assert!(matches!(star_avoider(4, 4), Err(ConstructError::HostTooSmall { .. })));
    }

    #[test]
    fn star_avoider_certificate_checks() {
        let pat = f("S(4)");
        let col = star_avoider(10, 4).unwrap();
        let cert = star_avoider_certificate(10, 4, &pat);
        assert!(check_certificate(&col, &cert, &pat).unwrap());
    }

    #[test]
    fn star_forest_instances() {
        let pat = f("S(3,1)");
        let (col, cert) = star_forest(192, &pat).unwrap();
        assert_eq!(col.num_colors(), 97);
        assert!(matches!(cert.kind, CertKind::JoinPlusStarAvoider { join_size: 0, star_cap: 3 }));
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        // p1 = 2 is accepted; the i = 2 join branch wins with n colors
        let pat = f("S(2,2)");
        let (col, cert) = star_forest(20, &pat).unwrap();
        assert_eq!(col.num_colors(), 20);
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        // the matching-style branch wins for S(2,2,1)
        let pat = f("S(2,2,1)");
        let (col, cert) = star_forest(20, &pat).unwrap();
        assert_eq!(col.num_colors(), 21);
        assert!(matches!(cert.kind, CertKind::MatchingExtremal { join_size: 1, inner_colors: 2 }));
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        assert!(matches!(star_forest(10, &f("S(1,1)")), Err(ConstructError::BadParams(_))));
    }

    #[test]
    fn linear_forest_instances() {
        let pat = f("P(4,4)");
        let (col, cert) = linear_forest(8, &pat, Variant::Auto).unwrap();
        assert_eq!(col.num_colors(), 16);
        assert!(matches!(cert.kind, CertKind::CliquePlusOne { clique_size: 6 }));
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        let (col, cert) = linear_forest(20, &pat, Variant::Auto).unwrap();
        assert_eq!(col.num_colors(), 38);
        assert!(matches!(cert.kind, CertKind::JoinPlusRConstant { join_size: 2, inner_colors: 1 }));
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        let pat = f("P(3,3)");
        let (col, cert) = linear_forest(20, &pat, Variant::Join).unwrap();
        assert_eq!(col.num_colors(), 20);
        assert!(check_certificate(&col, &cert, &pat).unwrap());

        // explicit clique on a pattern with a 2-vertex component is reduced
        // to the smaller sound size
        let pat = f("P(3,2)");
        let (col, cert) = linear_forest(6, &pat, Variant::Clique).unwrap();
        assert!(matches!(cert.kind, CertKind::CliquePlusOne { clique_size: 2 }));
        assert!(check_certificate(&col, &cert, &pat).unwrap());
        assert_eq!(col.num_colors(), 2);

        assert!(matches!(
            linear_forest(9, &f("P(2)"), Variant::Auto),
            Err(ConstructError::TrivialPattern(_))
        ));
    }

    #[test]
    fn double_star_instances() {
        let (col, cert) = double_star(48, 2, 1).unwrap();
        assert_eq!(col.num_colors(), 25);
        assert!(check_certificate(&col, &cert, &f("DS(2,1)")).unwrap());

        let (col, cert) = double_star(48, 2, 2).unwrap();
        assert_eq!(col.num_colors(), 48);
        assert!(check_certificate(&col, &cert, &f("DS(2,2)")).unwrap());

        // below the formula's range the construction still certifies
        let (col, cert) = double_star(10, 2, 2).unwrap();
        assert_eq!(col.num_colors(), 10);
        assert!(check_certificate(&col, &cert, &f("DS(2,2)")).unwrap());
    }

    #[test]
    fn spider_instances() {
        let sp = SpiderSpec::new(vec![2, 3, 3]).unwrap();
        let (col, cert) = spider(100, &sp).unwrap();
        assert_eq!(col.num_colors(), 199);
        assert!(check_certificate(&col, &cert, &f("SP(2,3,3)")).unwrap());

        let sp = SpiderSpec::new(vec![2, 2, 2]).unwrap();
        let (col, cert) = spider(100, &sp).unwrap();
        assert_eq!(col.num_colors(), 198);
        assert!(check_certificate(&col, &cert, &f("SP(2,2,2)")).unwrap());

        // two legs: a path, still handled through beta
        let sp = SpiderSpec::new(vec![2, 2]).unwrap();
        let (col, cert) = spider(9, &sp).unwrap();
        assert_eq!(col.num_colors(), 9);
        assert!(check_certificate(&col, &cert, &f("SP(2,2)")).unwrap());

        let sp = SpiderSpec::new(vec![1, 2, 2]).unwrap();
        assert!(matches!(spider(30, &sp), Err(ConstructError::Graph(_))));
    }

    #[test]
    fn tampered_coloring_fails_certificate() {
        let pat = f("DS(2,2)");
        let (col, cert) = double_star(10, 2, 2).unwrap();
        // recolor one interior edge with a brand-new color
        let mut raw = col.edge_colors().to_vec();
        let idx = crate::coloring::edge_index(10, 5, 6);
        raw[idx] = col.num_colors();
        let tampered = EdgeColoring::from_fn(10, |u, v| {
            raw[crate::coloring::edge_index(10, u, v)]
        })
        .unwrap();
        assert!(!check_certificate(&tampered, &cert, &pat).unwrap());
    }

    #[test]
    fn mismatched_certificate_is_an_error() {
        let pat = f("P(4,4)");
        let (_, cert) = linear_forest(10, &pat, Variant::Auto).unwrap();
        let other = linear_forest(11, &pat, Variant::Auto).unwrap().0;
        assert!(matches!(
            check_certificate(&other, &cert, &pat),
            Err(ConstructError::Mismatch(_))
        ));
        let col = linear_forest(10, &pat, Variant::Auto).unwrap().0;
        assert!(matches!(
            check_certificate(&col, &cert, &f("P(3,3)")),
            Err(ConstructError::Mismatch(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        for (a, b) in [
            (auto(16, &f("P(4,4)")).unwrap().0, auto(16, &f("P(4,4)")).unwrap().0),
            (auto(48, &f("DS(3,2)")).unwrap().0, auto(48, &f("DS(3,2)")).unwrap().0),
            (auto(24, &f("SP(2,3,3)")).unwrap().0, auto(24, &f("SP(2,3,3)")).unwrap().0),
        ] {
            assert_eq!(a.to_file_string(), b.to_file_string());
        }
    }

    #[test]
    fn auto_covers_matchings_and_small_spellings() {
        let (col, cert) = auto(12, &f("M(3)")).unwrap();
        assert_eq!(u64::from(col.num_colors()), 12);
        assert!(check_certificate(&col, &cert, &f("M(3)")).unwrap());

        let (col, cert) = auto(10, &f("S(1,1)")).unwrap();
        assert_eq!(col.num_colors(), 1);
        assert!(check_certificate(&col, &cert, &f("S(1,1)")).unwrap());

        let (col, cert) = auto(12, &f("SP(1,1,1,1)")).unwrap();
        assert_eq!(u64::from(col.num_colors()), star_avoider_colors(12, 4));
        assert!(check_certificate(&col, &cert, &f("SP(1,1,1,1)")).unwrap());
    }
}
