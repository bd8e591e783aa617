//! Edge-colorings of `K_n` and color-analysis primitives.
//!
//! A coloring assigns a color id to every unordered pair `(u, v)`, `u < v`,
//! with ids dense in `0..k`. Per-vertex palettes, stared colors (colors whose
//! entire class is a star at one vertex), representing subgraphs (one edge
//! per color) and the color-count bound for palette-capped colorings all
//! live here.
//!
//! File format (bit-exact): line 1 `antiramsey-coloring v1`, line 2 `n <n>`,
//! then exactly `n(n-1)/2` lines `u v c` with `u < v` in lexicographic order.
//! On ingestion color ids are re-assigned densely by first occurrence in that
//! edge order, which makes downstream outputs byte-reproducible.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub const COLORING_HEADER: &str = "antiramsey-coloring v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {0} out of range for K_{1}")]
    VertexOutOfRange(usize, usize),
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} edge colors for K_{n}, got {got}")]
    WrongEdgeCount { n: usize, expected: usize, got: usize },
    #[error("forced edges ({0}, {1}) and ({2}, {3}) share a color")]
    ForcedEdgesShareColor(usize, usize, usize, usize),
    #[error("caps must be sorted ascending with 1 <= cap")]
    BadCaps,
    #[error("palette caps must satisfy 3 * max_cap <= n")]
    CapsOutOfRange,
    #[error("caps list length {0} does not match n = {1}")]
    CapsLength(usize, usize),
    #[error("coloring file is malformed: {0}")]
    Format(String),
}

/// Total edge-coloring of `K_n` with dense color ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<u32>,
    num_colors: u32,
}

/// Index of edge `(u, v)`, `u < v`, in lexicographic order.
pub(crate) fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// All edges of `K_n` in lexicographic order.
pub(crate) fn lex_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

impl EdgeColoring {
    /// Build from raw per-edge ids in lexicographic edge order; ids are
    /// remapped densely by first occurrence.
    pub fn from_edge_colors(n: usize, raw: Vec<u32>) -> Result<Self, ColoringError> {
        if n < 2 {
            return Err(ColoringError::TooFewVertices(n));
        }
        let expected = n * (n - 1) / 2;
        if raw.len() != expected {
            return Err(ColoringError::WrongEdgeCount { n, expected, got: raw.len() });
        }
        let mut remap: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut colors = Vec::with_capacity(raw.len());
        for c in raw {
            let next = remap.len() as u32;
            colors.push(*remap.entry(c).or_insert(next));
        }
        let num_colors = remap.len() as u32;
        Ok(EdgeColoring { n, colors, num_colors })
    }

    /// Build by evaluating `f` on every lexicographic edge. Ids are kept
    /// as produced by `f` (they must already be dense).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Result<Self, ColoringError> {
        if n < 2 {
            return Err(ColoringError::TooFewVertices(n));
        }
        let colors: Vec<u32> = lex_edges(n).map(|(u, v)| f(u, v)).collect();
        let num_colors = match colors.iter().max() {
            Some(&m) => m + 1,
            None => 0,
        };
        let mut used = vec![false; num_colors as usize];
        for &c in &colors {
            used[c as usize] = true;
        }
        if used.iter().any(|&u| !u) {
            return Err(ColoringError::Format("color ids are not dense".into()));
        }
        Ok(EdgeColoring { n, colors, num_colors })
    }

    pub fn monochromatic(n: usize) -> Result<Self, ColoringError> {
        Self::from_fn(n, |_, _| 0)
    }

    pub fn rainbow(n: usize) -> Result<Self, ColoringError> {
        let mut next = 0u32;
        Self::from_fn(n, |_, _| {
            let c = next;
            next += 1;
            c
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        let (u, v) = (u.min(v), u.max(v));
        self.colors[edge_index(self.n, u, v)]
    }

    pub fn edge_colors(&self) -> &[u32] {
        &self.colors
    }

    /// Distinct colors on edges incident to `v`.
    pub fn palette(&self, v: usize) -> BTreeSet<u32> {
        (0..self.n).filter(|&w| w != v).map(|w| self.color(v, w)).collect()
    }

    /// Edges of each color class, classes indexed by color id.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut classes = vec![Vec::new(); self.num_colors as usize];
        for (u, v) in lex_edges(self.n) {
            classes[self.color(u, v) as usize].push((u, v));
        }
        classes
    }

    pub fn color_profile(&self, v: usize) -> Result<ColorProfile, ColoringError> {
        if v >= self.n {
            return Err(ColoringError::VertexOutOfRange(v, self.n));
        }
        let palette = self.palette(v);
        let classes = self.classes();
        let stared = palette
            .iter()
            .copied()
            .filter(|&c| {
                classes[c as usize].iter().all(|&(a, b)| a == v || b == v)
            })
            .collect();
        Ok(ColorProfile { vertex: v, palette, stared })
    }

    /// Spanning subgraph with exactly one edge per color: the forced edges,
    /// plus the lexicographically least edge of every remaining class.
    pub fn representing_subgraph(
        &self,
        forced: &[(usize, usize)],
    ) -> Result<Graph, ColoringError> {
        let mut chosen: Vec<Option<(usize, usize)>> = vec![None; self.num_colors as usize];
        for &(u, v) in forced {
            let (u, v) = (u.min(v), u.max(v));
            if v >= self.n || u == v {
                return Err(ColoringError::VertexOutOfRange(v, self.n));
            }
            let c = self.color(u, v) as usize;
            if let Some((a, b)) = chosen[c] {
                return Err(ColoringError::ForcedEdgesShareColor(a, b, u, v));
            }
            chosen[c] = Some((u, v));
        }
        for (u, v) in lex_edges(self.n) {
            let c = self.color(u, v) as usize;
            if chosen[c].is_none() {
                chosen[c] = Some((u, v));
            }
        }
        let edges = chosen.into_iter().map(|e| e.expect("ids are dense"));
        Graph::from_edges(self.n, edges).map_err(|e| ColoringError::Format(e.to_string()))
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{COLORING_HEADER}")?;
        writeln!(out, "n {}", self.n)?;
        for (u, v) in lex_edges(self.n) {
            writeln!(out, "{u} {v} {}", self.color(u, v))?;
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("output is ASCII")
    }

    /// Parse the file format; ids are canonicalized densely by first
    /// occurrence in lexicographic edge order.
    pub fn read_from<R: BufRead>(reader: R) -> Result<Self, ColoringError> {
        let mut lines = reader.lines().map(|l| l.map_err(|e| ColoringError::Format(e.to_string())));
        let header = lines.next().ok_or_else(|| ColoringError::Format("empty input".into()))??;
        if header.trim() != COLORING_HEADER {
            return Err(ColoringError::Format(format!("bad header `{header}`")));
        }
        let nline = lines.next().ok_or_else(|| ColoringError::Format("missing n line".into()))??;
        let n = nline
            .trim()
            .strip_prefix("n ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| ColoringError::Format(format!("expected `n <n>`, got `{nline}`")))?;
        if n < 2 {
            return Err(ColoringError::TooFewVertices(n));
        }
        let mut raw = Vec::with_capacity(n * (n - 1) / 2);
        for (u, v) in lex_edges(n) {
            let line = lines
                .next()
                .ok_or_else(|| ColoringError::Format("missing edge lines".into()))??;
            let mut it = line.split_whitespace();
            let (fu, fv, fc) = (
                it.next().and_then(|s| s.parse::<usize>().ok()),
                it.next().and_then(|s| s.parse::<usize>().ok()),
                it.next().and_then(|s| s.parse::<u32>().ok()),
            );
            match (fu, fv, fc) {
                (Some(fu), Some(fv), Some(c)) if fu == u && fv == v => raw.push(c),
                _ => {
                    return Err(ColoringError::Format(format!(
                        "expected edge ({u}, {v}), got line `{line}`"
                    )))
                }
            }
        }
        if let Some(extra) = lines.next() {
            let extra = extra?;
            if !extra.trim().is_empty() {
                return Err(ColoringError::Format("trailing content after edge lines".into()));
            }
        }
        Self::from_edge_colors(n, raw)
    }
}

/// Per-vertex color summary: the palette and the subset of stared colors.
/// A single-edge class counts as a star centered at both endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorProfile {
    pub vertex: usize,
    pub palette: BTreeSet<u32>,
    pub stared: BTreeSet<u32>,
}

/// Upper bound on the number of colors of any edge-coloring of `K_n` whose
/// per-vertex palette sizes are capped by `caps` (ascending): with caps
/// `p_1 <= ... <= p_n <= n/3` at most `(sum p_i - n)/2 + 1` colors fit.
pub fn palette_cap_color_bound(caps: &[u32]) -> Result<u64, ColoringError> {
    let n = caps.len();
    if n == 0 || caps[0] == 0 || caps.windows(2).any(|w| w[0] > w[1]) {
        return Err(ColoringError::BadCaps);
    }
    let max_cap = *caps.last().expect("non-empty") as usize;
    if 3 * max_cap > n {
        return Err(ColoringError::CapsOutOfRange);
    }
    let sum: u64 = caps.iter().map(|&c| c as u64).sum();
    Ok((sum - n as u64) / 2 + 1)
}

/// Whether the coloring respects the positional palette caps.
pub fn respects_palette_caps(col: &EdgeColoring, caps: &[u32]) -> Result<bool, ColoringError> {
    if caps.len() != col.n() {
        return Err(ColoringError::CapsLength(caps.len(), col.n()));
    }
    Ok((0..col.n()).all(|v| col.palette(v).len() <= caps[v] as usize))
}

/// Companion checker for the bound: a coloring respecting the caps must use
/// at most [`palette_cap_color_bound`] colors. Returns that comparison;
/// violated caps are an error.
pub fn verify_palette_cap_bound(col: &EdgeColoring, caps: &[u32]) -> Result<bool, ColoringError> {
    if !respects_palette_caps(col, caps)? {
        return Err(ColoringError::Format("coloring violates the stated caps".into()));
    }
    let bound = palette_cap_color_bound(caps)?;
    Ok(u64::from(col.num_colors()) <= bound)
}
