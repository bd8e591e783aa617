//! Exact detection of rainbow forest copies in an edge-colored `K_n`.
//!
//! The search embeds components largest-first, extending each component tree
//! along its preorder; a host vertex is pruned when its palette cannot
//! supply the pattern vertex's degree, and colors are consumed edge by edge.
//! Every search is exhaustive, so an absent result is a proof of absence.
//! Exactness holds at any size; the practical-speed contract is hosts up to
//! about 25 vertices with patterns up to 8 edges, beyond which verification
//! should go through construction certificates instead.

use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::forest::{ForestSpec, PatternTree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetectError {
    #[error("rainbow detection does not support this pattern: {0}")]
    UnsupportedPattern(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
}

/// A rainbow copy: one host vertex per pattern vertex (grouped by component,
/// components ordered largest-first as searched) plus the mapped edges with
/// their colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize, u32)>,
}

/// Adjacency view of the colored host edges. For a total coloring every pair
/// is present; the oracle maintains a partial view incrementally.
pub(crate) struct HostView {
    pub(crate) n: usize,
    pub(crate) adj: Vec<Vec<(usize, u32)>>,
    pub(crate) palette_size: Vec<usize>,
    pub(crate) num_colors: u32,
}

impl HostView {
    pub(crate) fn from_coloring(col: &EdgeColoring) -> Self {
        let n = col.n();
        let mut adj = vec![Vec::with_capacity(n - 1); n];
        for (u, row) in adj.iter_mut().enumerate() {
            for v in 0..n {
                if u != v {
                    row.push((v, col.color(u, v)));
                }
            }
        }
        let palette_size = (0..n).map(|v| col.palette(v).len()).collect();
        HostView { n, adj, palette_size, num_colors: col.num_colors() }
    }

    pub(crate) fn empty(n: usize) -> Self {
        HostView { n, adj: vec![Vec::new(); n], palette_size: vec![0; n], num_colors: 0 }
    }
}

struct Search<'a> {
    host: &'a HostView,
    comps: &'a [PatternTree],
    /// pinned hosts for component 0 only (seeded searches)
    pins: Vec<Option<usize>>,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    assignment: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, u32)>,
}

impl<'a> Search<'a> {
    fn new(host: &'a HostView, comps: &'a [PatternTree], pins: Vec<Option<usize>>) -> Self {
        Search {
            host,
            comps,
            pins,
            used_vertex: vec![false; host.n],
            used_color: vec![false; host.num_colors as usize],
            assignment: vec![Vec::new(); comps.len()],
            edges: Vec::new(),
        }
    }

    fn pin(&self, ci: usize, vi: usize) -> Option<usize> {
        if ci == 0 {
            self.pins.get(vi).copied().flatten()
        } else {
            None
        }
    }

    fn extend(&mut self, ci: usize, vi: usize) -> bool {
        if ci == self.comps.len() {
            return true;
        }
        let tree = &self.comps[ci];
        if vi == tree.order() {
            return self.extend(ci + 1, 0);
        }
        let want_degree = tree.degrees()[vi];
        if vi == 0 {
            for h in 0..self.host.n {
                if let Some(p) = self.pin(ci, 0) {
                    if h != p {
                        continue;
                    }
                }
                if self.used_vertex[h] || self.host.palette_size[h] < want_degree {
                    continue;
                }
                self.used_vertex[h] = true;
                self.assignment[ci].push(h);
                if self.extend(ci, 1) {
                    return true;
                }
                self.assignment[ci].pop();
                self.used_vertex[h] = false;
            }
            false
        } else {
            let parent = tree.parent(vi).expect("non-root");
            let ph = self.assignment[ci][parent];
            for k in 0..self.host.adj[ph].len() {
                let (w, c) = self.host.adj[ph][k];
                if let Some(p) = self.pin(ci, vi) {
                    if w != p {
                        continue;
                    }
                }
                if self.used_vertex[w]
                    || self.used_color[c as usize]
                    || self.host.palette_size[w] < want_degree
                {
                    continue;
                }
                self.used_vertex[w] = true;
                self.used_color[c as usize] = true;
                self.assignment[ci].push(w);
                self.edges.push((ph, w, c));
                if self.extend(ci, vi + 1) {
                    return true;
                }
                self.edges.pop();
                self.assignment[ci].pop();
                self.used_color[c as usize] = false;
                self.used_vertex[w] = false;
            }
            false
        }
    }
}

fn total_order(comps: &[PatternTree]) -> usize {
    comps.iter().map(|t| t.order()).sum()
}

/// Search for a rainbow copy of `f`. Exact: absent means no copy exists. A
/// pattern larger than the host is trivially absent.
pub fn find_rainbow(
    col: &EdgeColoring,
    f: &ForestSpec,
) -> Result<Option<Embedding>, DetectError> {
    let comps = f
        .component_trees()
        .ok_or_else(|| DetectError::UnsupportedPattern(f.to_string()))?;
    if total_order(&comps) > col.n() {
        return Ok(None);
    }
    let host = HostView::from_coloring(col);
    let mut search = Search::new(&host, &comps, Vec::new());
    if search.extend(0, 0) {
        Ok(Some(Embedding { vertices: search.assignment, edges: search.edges }))
    } else {
        Ok(None)
    }
}

/// True iff the coloring has no rainbow copy of `f`.
pub fn verify_no_rainbow(col: &EdgeColoring, f: &ForestSpec) -> Result<bool, DetectError> {
    Ok(find_rainbow(col, f)?.is_none())
}

/// A component order with one tree re-rooted so that the root and its child
/// `forced_child` can be pinned to a prescribed host edge.
pub(crate) struct SeededPattern {
    comps: Vec<PatternTree>,
    forced_child: usize,
}

/// All distinct ways to anchor one pattern edge, precomputed once per
/// pattern. Repeated component shapes and symmetric edges within a tree are
/// deduplicated.
pub(crate) fn seeded_patterns(comps: &[PatternTree]) -> Vec<SeededPattern> {
    let mut seeds: Vec<SeededPattern> = Vec::new();
    for ci in 0..comps.len() {
        if comps[..ci].contains(&comps[ci]) {
            continue;
        }
        let tree = &comps[ci];
        for (pu, pv) in tree.edges().collect::<Vec<_>>() {
            let (rooted, old_of_new) = tree.rooted_at(pu);
            let forced_child =
                old_of_new.iter().position(|&old| old == pv).expect("vertex present");
            let mut order: Vec<PatternTree> = Vec::with_capacity(comps.len());
            order.push(rooted);
            for (cj, c) in comps.iter().enumerate() {
                if cj != ci {
                    order.push(c.clone());
                }
            }
            if seeds
                .iter()
                .any(|s| s.forced_child == forced_child && s.comps == order)
            {
                continue;
            }
            seeds.push(SeededPattern { comps: order, forced_child });
        }
    }
    seeds
}

/// Does a rainbow copy of the pattern exist that uses the host edge
/// `(a, b)`? Used for incremental pruning over partial hosts: only copies
/// through the newest edge need checking.
pub(crate) fn rainbow_copy_through_edge(
    host: &HostView,
    seeds: &[SeededPattern],
    total_pattern_order: usize,
    a: usize,
    b: usize,
) -> bool {
    if total_pattern_order > host.n {
        return false;
    }
    for seed in seeds {
        for (x, y) in [(a, b), (b, a)] {
            let mut pins = vec![None; seed.comps[0].order()];
            pins[0] = Some(x);
            pins[seed.forced_child] = Some(y);
            let mut search = Search::new(host, &seed.comps, pins);
            if search.extend(0, 0) {
                return true;
            }
        }
    }
    false
}

/// Independent validator for a claimed embedding: distinct host vertices,
/// edges realizing the pattern, and pairwise distinct colors.
pub fn validate_embedding(
    col: &EdgeColoring,
    f: &ForestSpec,
    emb: &Embedding,
) -> Result<(), DetectError> {
    let comps = f
        .component_trees()
        .ok_or_else(|| DetectError::UnsupportedPattern(f.to_string()))?;
    if emb.vertices.len() != comps.len() {
        return Err(DetectError::InvalidEmbedding("component count mismatch".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (ci, tree) in comps.iter().enumerate() {
        if emb.vertices[ci].len() != tree.order() {
            return Err(DetectError::InvalidEmbedding(format!(
                "component {ci} maps {} vertices, expected {}",
                emb.vertices[ci].len(),
                tree.order()
            )));
        }
        for &h in &emb.vertices[ci] {
            if h >= col.n() {
                return Err(DetectError::InvalidEmbedding(format!("vertex {h} out of range")));
            }
            if !seen.insert(h) {
                return Err(DetectError::InvalidEmbedding(format!("vertex {h} mapped twice")));
            }
        }
    }
    let mut expected = std::collections::BTreeSet::new();
    for (ci, tree) in comps.iter().enumerate() {
        for (pu, pv) in tree.edges() {
            let (u, v) = (emb.vertices[ci][pu], emb.vertices[ci][pv]);
            expected.insert((u.min(v), u.max(v)));
        }
    }
    let mut claimed = std::collections::BTreeSet::new();
    let mut colors = std::collections::BTreeSet::new();
    for &(u, v, c) in &emb.edges {
        claimed.insert((u.min(v), u.max(v)));
        if col.color(u, v) != c {
            return Err(DetectError::InvalidEmbedding(format!(
                "edge ({u}, {v}) claims color {c}, coloring has {}",
                col.color(u, v)
            )));
        }
        if !colors.insert(c) {
            return Err(DetectError::InvalidEmbedding(format!("color {c} repeats")));
        }
    }
    if expected != claimed {
        return Err(DetectError::InvalidEmbedding(
            "edge list does not realize the pattern".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn f(s: &str) -> ForestSpec {
        s.parse().unwrap()
    }

    fn found(col: &EdgeColoring, spec: &str) -> bool {
        let pat = f(spec);
        match find_rainbow(col, &pat).unwrap() {
            Some(emb) => {
                validate_embedding(col, &pat, &emb).unwrap();
                true
            }
            None => false,
        }
    }

    #[test]
    fn trivial_presence_and_absence() {
        let rb6 = EdgeColoring::rainbow(6).unwrap();
        // 2 P_4 needs 8 vertices
        assert!(!found(&rb6, "P(4,4)"));
        let rb8 = EdgeColoring::rainbow(8).unwrap();
        assert!(found(&rb8, "P(4,4)"));

        let mono = EdgeColoring::monochromatic(10).unwrap();
        assert!(!found(&mono, "M(2)"));
        assert!(found(&mono, "M(1)"));
    }

    #[test]
    fn verify_no_rainbow_basics() {
        let mono = EdgeColoring::monochromatic(5).unwrap();
        assert!(verify_no_rainbow(&mono, &f("M(2)")).unwrap());
        let rb = EdgeColoring::rainbow(5).unwrap();
        assert!(!verify_no_rainbow(&rb, &f("M(2)")).unwrap());
    }

    #[test]
    fn star_avoider_blocks_exactly_the_right_stars() {
        let col = construct::star_avoider(10, 4).unwrap();
        // palettes have 3 colors: no rainbow K_{1,4}, but K_{1,3} can appear
        assert!(verify_no_rainbow(&col, &f("S(4)")).unwrap());
        assert!(found(&col, "S(3)"));
    }

    #[test]
    fn generated_colorings_have_no_rainbow_target() {
        let pat = f("P(4,4)");
        let (col, _) = construct::linear_forest(10, &pat, construct::Variant::Auto).unwrap();
        assert!(verify_no_rainbow(&col, &pat).unwrap());
    }

    #[test]
    fn omega2_is_unsupported() {
        let rb = EdgeColoring::rainbow(7).unwrap();
        assert!(matches!(
            find_rainbow(&rb, &f("OMEGA2")),
            Err(DetectError::UnsupportedPattern(_))
        ));
    }

    #[test]
    fn through_edge_search_agrees_with_full_search() {
        // a 2-coloring of K_5 with one special edge
        let col = EdgeColoring::from_fn(5, |u, v| u32::from((u, v) == (0, 1))).unwrap();
        let host = HostView::from_coloring(&col);
        let comps = f("M(2)").component_trees().unwrap();
        let seeds = seeded_patterns(&comps);
        // rainbow 2K_2 exists and every copy uses edge (0,1)
        assert!(found(&col, "M(2)"));
        assert!(rainbow_copy_through_edge(&host, &seeds, 4, 0, 1));
        // every edge disjoint from (0,1) pairs with it, but an edge at
        // vertex 0 has only same-colored partners
        assert!(rainbow_copy_through_edge(&host, &seeds, 4, 2, 3));
        assert!(!rainbow_copy_through_edge(&host, &seeds, 4, 0, 2));
    }

    #[test]
    fn refinement_preserves_found_copies() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let n = rng.gen_range(4..=7);
            let m = rng.gen_range(1..=(n * (n - 1) / 2) as u32);
            let col =
                EdgeColoring::from_edge_colors(n, {
                    (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..m)).collect()
                })
                .unwrap();
            let pat = f("P(3,2)");
            if find_rainbow(&col, &pat).unwrap().is_some() {
                // split one class into two by recoloring a random member
                let classes = col.classes();
                let class = &classes[rng.gen_range(0..col.num_colors()) as usize];
                let refined = if class.len() >= 2 {
                    let (su, sv) = class[rng.gen_range(0..class.len())];
                    EdgeColoring::from_fn(n, |u, v| {
                        if (u, v) == (su, sv) {
                            col.num_colors()
                        } else {
                            col.color(u, v)
                        }
                    })
                    .unwrap()
                } else {
                    col.clone()
                };
                assert!(find_rainbow(&refined, &pat).unwrap().is_some());
            }
        }
    }
}
