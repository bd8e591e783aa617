//! Forest pattern specifications and their grammar.
//!
//! A pattern is one of: a star forest `S(p1,...)` (component star sizes,
//! descending), a linear forest `P(l1,...)` (component path orders), a
//! matching `M(t)` (`t` independent edges), a double star `DS(p,q)` (two star
//! centers joined by an edge, `p >= q`), a spider `SP(a1,...)` (leg lengths in
//! edges, center is vertex 0), or `OMEGA2` (the family of graphs containing
//! two vertex-disjoint cycles). Parsing is whitespace-insensitive and
//! produces the canonical parameter order, so `parse(format(f)) == f`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestParseError {
    #[error("syntax error in forest spec `{0}`")]
    Syntax(String),
    #[error("forest parameters must be positive integers")]
    NonPositiveParam,
    #[error("double star requires p >= q, got p={p} q={q}")]
    DoubleStarOrder { p: u32, q: u32 },
    #[error("double star takes exactly two parameters")]
    DoubleStarArity,
    #[error("linear forest components must be paths on at least 2 vertices")]
    PathTooShort,
    #[error("matching takes exactly one parameter")]
    MatchingArity,
    #[error("parameter list must be non-empty")]
    EmptyParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForestKind {
    StarForest,
    LinearForest,
    Matching,
    DoubleStar,
    Spider,
    Omega2,
}

/// A target pattern together with its canonicalized parameter list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForestSpec {
    kind: ForestKind,
    params: Vec<u32>,
}

impl ForestSpec {
    pub fn star_forest(mut sizes: Vec<u32>) -> Result<Self, ForestParseError> {
        check_params(&sizes)?;
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ForestSpec { kind: ForestKind::StarForest, params: sizes })
    }

    pub fn linear_forest(mut orders: Vec<u32>) -> Result<Self, ForestParseError> {
        check_params(&orders)?;
        if orders.iter().any(|&p| p < 2) {
            return Err(ForestParseError::PathTooShort);
        }
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ForestSpec { kind: ForestKind::LinearForest, params: orders })
    }

    pub fn matching(t: u32) -> Result<Self, ForestParseError> {
        if t == 0 {
            return Err(ForestParseError::NonPositiveParam);
        }
        Ok(ForestSpec { kind: ForestKind::Matching, params: vec![t] })
    }

    pub fn double_star(p: u32, q: u32) -> Result<Self, ForestParseError> {
        if p == 0 || q == 0 {
            return Err(ForestParseError::NonPositiveParam);
        }
        if q > p {
            return Err(ForestParseError::DoubleStarOrder { p, q });
        }
        Ok(ForestSpec { kind: ForestKind::DoubleStar, params: vec![p, q] })
    }

    pub fn spider(mut legs: Vec<u32>) -> Result<Self, ForestParseError> {
        check_params(&legs)?;
        legs.sort_unstable();
        Ok(ForestSpec { kind: ForestKind::Spider, params: legs })
    }

    pub fn omega2() -> Self {
        ForestSpec { kind: ForestKind::Omega2, params: Vec::new() }
    }

    pub fn kind(&self) -> ForestKind {
        self.kind
    }

    pub fn params(&self) -> &[u32] {
        &self.params
    }

    pub fn is_forest(&self) -> bool {
        self.kind != ForestKind::Omega2
    }

    /// Number of vertices of the pattern. For `OMEGA2` this is 6, the order
    /// of the smallest member (two disjoint triangles).
    pub fn vertex_count(&self) -> usize {
        match self.kind {
            ForestKind::StarForest => self.params.iter().map(|&p| p as usize + 1).sum(),
            ForestKind::LinearForest => self.params.iter().map(|&p| p as usize).sum(),
            ForestKind::Matching => 2 * self.params[0] as usize,
            ForestKind::DoubleStar => self.params[0] as usize + self.params[1] as usize + 2,
            ForestKind::Spider => 1 + self.params.iter().map(|&a| a as usize).sum::<usize>(),
            ForestKind::Omega2 => 6,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            ForestKind::StarForest => self.params.iter().map(|&p| p as usize).sum(),
            ForestKind::LinearForest => {
                self.params.iter().map(|&p| p as usize - 1).sum()
            }
            ForestKind::Matching => self.params[0] as usize,
            ForestKind::DoubleStar => self.params[0] as usize + self.params[1] as usize + 1,
            ForestKind::Spider => self.params.iter().map(|&a| a as usize).sum(),
            ForestKind::Omega2 => 6,
        }
    }

    /// The pattern as rooted component trees, largest component (by edge
    /// count) first. Not defined for `OMEGA2`.
    pub fn component_trees(&self) -> Option<Vec<PatternTree>> {
        let mut comps = match self.kind {
            ForestKind::StarForest => {
                self.params.iter().map(|&p| PatternTree::star(p as usize)).collect()
            }
            ForestKind::LinearForest => {
                self.params.iter().map(|&p| PatternTree::path(p as usize)).collect()
            }
            ForestKind::Matching => {
                vec![PatternTree::path(2); self.params[0] as usize]
            }
            ForestKind::DoubleStar => {
                vec![PatternTree::double_star(self.params[0] as usize, self.params[1] as usize)]
            }
            ForestKind::Spider => {
                vec![PatternTree::spider(&self.params)]
            }
            ForestKind::Omega2 => return None,
        };
        comps.sort_by_key(|t| std::cmp::Reverse(t.edge_count()));
        Some(comps)
    }

    /// Maximum vertex degree of the pattern (0 for an edgeless pattern).
    pub fn max_degree(&self) -> usize {
        self.component_trees()
            .map(|trees| {
                trees
                    .iter()
                    .flat_map(|t| t.degrees().to_vec())
                    .max()
                    .unwrap_or(0)
            })
            .unwrap_or(0)
    }
}

fn check_params(params: &[u32]) -> Result<(), ForestParseError> {
    if params.is_empty() {
        return Err(ForestParseError::EmptyParams);
    }
    if params.contains(&0) {
        return Err(ForestParseError::NonPositiveParam);
    }
    Ok(())
}

impl fmt::Display for ForestSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ForestKind::StarForest => "S",
            ForestKind::LinearForest => "P",
            ForestKind::Matching => "M",
            ForestKind::DoubleStar => "DS",
            ForestKind::Spider => "SP",
            ForestKind::Omega2 => return write!(f, "OMEGA2"),
        };
        let list: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", tag, list.join(","))
    }
}

impl FromStr for ForestSpec {
    type Err = ForestParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "OMEGA2" {
            return Ok(ForestSpec::omega2());
        }
        let open = compact.find('(').ok_or_else(|| ForestParseError::Syntax(text.into()))?;
        if !compact.ends_with(')') {
            return Err(ForestParseError::Syntax(text.into()));
        }
        let tag = &compact[..open];
        let body = &compact[open + 1..compact.len() - 1];
        if body.is_empty() {
            return Err(ForestParseError::EmptyParams);
        }
        let params: Vec<u32> = body
            .split(',')
            .map(|tok| tok.parse::<u32>().map_err(|_| ForestParseError::Syntax(text.into())))
            .collect::<Result<_, _>>()?;
        match tag {
            "S" => ForestSpec::star_forest(params),
            "P" => ForestSpec::linear_forest(params),
            "M" => {
                if params.len() != 1 {
                    return Err(ForestParseError::MatchingArity);
                }
                ForestSpec::matching(params[0])
            }
            "DS" => {
                if params.len() != 2 {
                    return Err(ForestParseError::DoubleStarArity);
                }
                ForestSpec::double_star(params[0], params[1])
            }
            "SP" => ForestSpec::spider(params),
            _ => Err(ForestParseError::Syntax(text.into())),
        }
    }
}

/// Spider pattern: leg lengths in edges, canonically ascending. The realized
/// tree has the center at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpiderSpec {
    legs: Vec<u32>,
}

impl SpiderSpec {
    pub fn new(mut legs: Vec<u32>) -> Result<Self, ForestParseError> {
        check_params(&legs)?;
        legs.sort_unstable();
        Ok(SpiderSpec { legs })
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.legs.iter().map(|&a| a as usize).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.legs.iter().map(|&a| a as usize).sum()
    }

    /// Whether exactly one leg has even length.
    pub fn exactly_one_even_leg(&self) -> bool {
        self.legs.iter().filter(|&&a| a % 2 == 0).count() == 1
    }
}

impl TryFrom<&ForestSpec> for SpiderSpec {
    type Error = ForestParseError;

    fn try_from(f: &ForestSpec) -> Result<Self, Self::Error> {
        match f.kind {
            ForestKind::Spider => SpiderSpec::new(f.params.clone()),
            _ => Err(ForestParseError::Syntax(f.to_string())),
        }
    }
}

impl fmt::Display for SpiderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.legs.iter().map(|a| a.to_string()).collect();
        write!(f, "SP({})", list.join(","))
    }
}

/// One rooted tree component of a pattern, stored as a parent array in
/// preorder (`parent[0]` is unused for the root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTree {
    parent: Vec<usize>,
    degrees: Vec<usize>,
}

impl PatternTree {
    fn from_parents(parent: Vec<usize>) -> Self {
        let mut degrees = vec![0usize; parent.len()];
        for (v, &p) in parent.iter().enumerate().skip(1) {
            degrees[v] += 1;
            degrees[p] += 1;
        }
        PatternTree { parent, degrees }
    }

    fn star(p: usize) -> Self {
        Self::from_parents((0..=p).map(|v| if v == 0 { usize::MAX } else { 0 }).collect())
    }

    fn path(m: usize) -> Self {
        Self::from_parents((0..m).map(|v| v.wrapping_sub(1)).collect())
    }

    fn double_star(p: usize, q: usize) -> Self {
        // vertex 0: big center; 1..=p its leaves; p+1: small center; rest its leaves
        let mut parent = vec![usize::MAX];
        parent.extend(std::iter::repeat_n(0, p));
        parent.push(0);
        parent.extend(std::iter::repeat_n(p + 1, q));
        Self::from_parents(parent)
    }

    fn spider(legs: &[u32]) -> Self {
        let mut parent = vec![usize::MAX];
        for &len in legs {
            let mut prev = 0usize;
            for _ in 0..len {
                parent.push(prev);
                prev = parent.len() - 1;
            }
        }
        Self::from_parents(parent)
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        if v == 0 {
            None
        } else {
            Some(self.parent[v])
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.parent.len()).map(move |v| (self.parent[v], v))
    }

    /// The same tree re-rooted at `root`, as a new parent array in preorder,
    /// together with the map from new indices to the original ones.
    pub fn rooted_at(&self, root: usize) -> (PatternTree, Vec<usize>) {
        let n = self.order();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; 1];
        let mut old_of_new = vec![root];
        let mut new_of_old = vec![usize::MAX; n];
        new_of_old[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if new_of_old[w] == usize::MAX {
                    new_of_old[w] = old_of_new.len();
                    parent.push(new_of_old[u]);
                    old_of_new.push(w);
                    stack.push(w);
                }
            }
        }
        (PatternTree::from_parents(parent), old_of_new)
    }
}
