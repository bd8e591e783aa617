//! Simple undirected graphs and the matching-number machinery behind spider
//! lower bounds.
//!
//! Matching numbers are only ever needed on forests (spiders minus one or two
//! edges) and on complete graphs, so `matching_number` restricts its contract
//! to those two classes instead of carrying a blossom algorithm. Forests are
//! bipartite, where plain augmenting-path search is exact; on a complete
//! graph any two exposed vertices are adjacent, so the same search is exact
//! there too. A separate greedy tree routine serves as an independent
//! cross-check.

use std::io::{BufRead, Write};

use itertools::Itertools;
use thiserror::Error;

use crate::forest::SpiderSpec;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loops are not allowed")]
    SelfLoop,
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("matching number is only supported on forests and complete graphs")]
    UnsupportedGraphClass,
    #[error("not a forest")]
    NotAForest,
    #[error("spider legs must all have length at least 2, got a leg of length {0}")]
    SpiderLegTooShort(u32),
    #[error("graph file is malformed: {0}")]
    Format(String),
}

/// Undirected simple graph; only pairs `(u, v)` with `u < v` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).tuple_combinations()).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop);
        }
        let (u, v) = (u.min(v), u.max(v));
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u.min(v)].contains(&v.max(u))
    }

    /// Copy of the graph with the listed edges removed (missing edges are an
    /// error).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let norm: Vec<(usize, usize)> =
            removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for &(u, v) in &norm {
            if !self.has_edge(u, v) {
                return Err(GraphError::Format(format!("edge ({u}, {v}) not present")));
            }
        }
        Graph::from_edges(
            self.n,
            self.edges.iter().copied().filter(|e| !norm.contains(e)),
        )
    }

    pub fn is_forest(&self) -> bool {
        // acyclic iff every connected component has |E| = |V| - 1
        let mut seen = vec![false; self.n];
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut verts = 0usize;
            let mut deg_sum = 0usize;
            while let Some(u) = stack.pop() {
                verts += 1;
                deg_sum += self.adj[u].len();
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if deg_sum / 2 != verts - 1 {
                return false;
            }
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Serialize as `n <n>` followed by one `u v` line per edge.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n {}", self.n)?;
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        for (u, v) in sorted {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Format("empty input".into()))?
            .map_err(|e| GraphError::Format(e.to_string()))?;
        let n = header
            .strip_prefix("n ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| GraphError::Format(format!("expected `n <n>`, got `{header}`")))?;
        let mut g = Graph::new(n);
        for line in lines {
            let line = line.map_err(|e| GraphError::Format(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = (it.next(), it.next());
            match (u.and_then(|s| s.parse().ok()), v.and_then(|s| s.parse().ok())) {
                (Some(u), Some(v)) => g.add_edge(u, v)?,
                _ => return Err(GraphError::Format(format!("bad edge line `{line}`"))),
            }
        }
        Ok(g)
    }
}

/// Maximum matching size via augmenting-path search. Supported on forests
/// and complete graphs only; other inputs are rejected.
pub fn matching_number(g: &Graph) -> Result<usize, GraphError> {
    if g.is_forest() {
        // forests are bipartite, where augmenting from one side is exact
        let side = two_color(g);
        let mut mate: Vec<Option<usize>> = vec![None; g.n()];
        let mut size = 0usize;
        for u in (0..g.n()).filter(|&u| side[u] == 0) {
            let mut visited = vec![false; g.n()];
            if augment(g, u, &mut mate, &mut visited) {
                size += 1;
            }
        }
        Ok(size)
    } else if g.is_complete() {
        // with at least two exposed vertices there is always a length-one
        // augmenting path, so the search saturates all but at most one vertex
        Ok(g.n() / 2)
    } else {
        Err(GraphError::UnsupportedGraphClass)
    }
}

/// Bipartition sides by BFS; callers guarantee the graph is a forest.
fn two_color(g: &Graph) -> Vec<u8> {
    let mut side = vec![u8::MAX; g.n()];
    for start in 0..g.n() {
        if side[start] != u8::MAX {
            continue;
        }
        side[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                }
            }
        }
    }
    side
}

fn augment(g: &Graph, u: usize, mate: &mut Vec<Option<usize>>, visited: &mut Vec<bool>) -> bool {
    for &w in g.neighbors(u) {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match mate[w] {
            None => true,
            Some(x) => augment(g, x, mate, visited),
        };
        if free {
            mate[w] = Some(u);
            return true;
        }
    }
    false
}

/// Maximum matching size on a forest by greedy leaf matching in postorder;
/// independent of [`matching_number`] and used to cross-check it.
pub fn tree_matching_number(g: &Graph) -> Result<usize, GraphError> {
    if !g.is_forest() {
        return Err(GraphError::NotAForest);
    }
    let mut matched = vec![false; g.n()];
    let mut seen = vec![false; g.n()];
    let mut size = 0usize;
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        // iterative postorder
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; g.n()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        for &u in order.iter().rev() {
            let p = parent[u];
            if p != usize::MAX && !matched[u] && !matched[p] {
                matched[u] = true;
                matched[p] = true;
                size += 1;
            }
        }
    }
    Ok(size)
}

/// Realize a spider as a graph: center at vertex 0, legs laid out as
/// consecutive index runs.
pub fn spider_graph(sp: &SpiderSpec) -> Graph {
    let mut g = Graph::new(sp.vertex_count());
    let mut next = 1usize;
    for &len in sp.legs() {
        let mut prev = 0usize;
        for _ in 0..len {
            g.add_edge(prev, next).expect("spider edges are simple");
            prev = next;
            next += 1;
        }
    }
    g
}

fn require_long_legs(sp: &SpiderSpec) -> Result<(), GraphError> {
    if let Some(&short) = sp.legs().iter().find(|&&a| a < 2) {
        return Err(GraphError::SpiderLegTooShort(short));
    }
    Ok(())
}

/// Minimum over all single edge deletions `e` of the matching number of the
/// spider minus `e`. Defined only for legs of length at least 2.
pub fn spider_beta(sp: &SpiderSpec) -> Result<usize, GraphError> {
    require_long_legs(sp)?;
    let t = spider_graph(sp);
    t.edges()
        .iter()
        .map(|&e| matching_number(&t.without_edges(&[e])?))
        .fold_ok(usize::MAX, usize::min)
}

/// Minimum over all unordered pairs of distinct edges of the matching number
/// after deleting both.
pub fn spider_beta_pair(sp: &SpiderSpec) -> Result<usize, GraphError> {
    require_long_legs(sp)?;
    let t = spider_graph(sp);
    t.edges()
        .iter()
        .tuple_combinations()
        .map(|(&e1, &e2)| matching_number(&t.without_edges(&[e1, e2])?))
        .fold_ok(usize::MAX, usize::min)
}

/// Minimum matching number over all deletions of at most `k` edges from a
/// forest (`k = 0` is the plain matching number).
pub fn min_matching_after_deletions(t: &Graph, k: usize) -> Result<usize, GraphError> {
    if !t.is_forest() {
        return Err(GraphError::NotAForest);
    }
    let mut best = matching_number(t)?;
    if k >= 1 {
        for &e in t.edges() {
            best = best.min(matching_number(&t.without_edges(&[e])?)?);
        }
    }
    if k >= 2 {
        for (&e1, &e2) in t.edges().iter().tuple_combinations() {
            best = best.min(matching_number(&t.without_edges(&[e1, e2])?)?);
        }
    }
    if k >= 3 {
        return Err(GraphError::Format("deletion depth above 2 is not supported".into()));
    }
    Ok(best)
}
