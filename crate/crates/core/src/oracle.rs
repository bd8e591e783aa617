//! Exact computation of `ar(K_n, F)` for tiny hosts by canonical enumeration
//! of edge colorings, plus a color maximizer under per-vertex palette caps.
//!
//! Colorings are enumerated as restricted-growth strings over the
//! lexicographic edge order: the first edge takes color 0 and every later
//! edge a color at most one above the maximum so far, which kills all color
//! relabelings. A branch dies when
//!
//! * the colored prefix already contains a fully-colored rainbow copy of the
//!   pattern (such a copy survives every completion), or
//! * the colors used so far plus the uncolored edges cannot beat the best
//!   value found, or
//! * (caps mode) a vertex palette exceeds its cap.
//!
//! The tree splits at a fixed prefix depth into independent subtasks that
//! share a monotone best-value cell, so the returned value and status do not
//! depend on the thread count. A search that exhausts its budget reports the
//! best value found as a lower bound; `Exact` is only ever reported for a
//! completed search.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{lex_edges, EdgeColoring};
use crate::construct;
use crate::detect::{self, HostView, SeededPattern};
use crate::exec::run_tasks;
use crate::forest::{ForestSpec, PatternTree};

/// Hosts above this order would overflow the per-vertex color bitmasks
/// (and are far beyond exhaustive reach anyway).
pub const MAX_ORACLE_N: usize = 11;

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("K_{n} is too small for the pattern (needs at least {needed} vertices)")]
    HostTooSmall { needed: usize, n: usize },
    #[error("exhaustive search is limited to n <= {max}, got {n}")]
    HostTooLarge { n: usize, max: usize },
    #[error("pattern not supported by the oracle: {0}")]
    UnsupportedPattern(String),
    #[error("invalid caps: {0}")]
    BadCaps(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    /// The search space was exhausted; the value is `ar` exactly.
    Exact,
    /// The budget expired first; the value is a valid lower bound.
    LowerBoundOnly,
    /// Reserved for searches abandoned without a usable bound.
    Timeout,
}

/// Result of an exhaustive search: the best color count, how trustworthy it
/// is, and the best rainbow-free (or cap-respecting) coloring found.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub value: u64,
    pub status: SearchStatus,
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub witness: Option<EdgeColoring>,
}

enum Goal {
    RainbowFree { seeds: Vec<SeededPattern>, pattern_order: usize },
    Caps { caps: Vec<u32> },
}

struct Shared {
    best: AtomicU64,
    witness: Mutex<(u64, Option<Vec<u32>>)>,
    nodes: AtomicU64,
    timed_out: AtomicBool,
    deadline: Instant,
}

impl Shared {
    fn record(&self, value: u64, colors: &[u32]) {
        self.best.fetch_max(value, Ordering::SeqCst);
        let mut w = self.witness.lock().expect("witness lock");
        if value > w.0 {
            *w = (value, Some(colors.to_vec()));
        }
    }
}

struct Worker<'a> {
    edges: &'a [(usize, usize)],
    goal: &'a Goal,
    shared: &'a Shared,
    colors: Vec<u32>,
    palette_mask: Vec<u64>,
    host: HostView,
    local_nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(n: usize, edges: &'a [(usize, usize)], goal: &'a Goal, shared: &'a Shared) -> Self {
        Worker {
            edges,
            goal,
            shared,
            colors: Vec::with_capacity(edges.len()),
            palette_mask: vec![0; n],
            host: HostView::empty(n),
            local_nodes: 0,
        }
    }

    /// Try to color edge `idx` with `c`; on success internal state is
    /// updated and must be undone with `undo`.
    fn try_apply(&mut self, idx: usize, c: u32, used: u32) -> bool {
        let (u, v) = self.edges[idx];
        let bit = 1u64 << c;
        if let Goal::Caps { caps } = self.goal {
            let pu = (self.palette_mask[u] | bit).count_ones();
            let pv = (self.palette_mask[v] | bit).count_ones();
            if pu > caps[u] || pv > caps[v] {
                return false;
            }
        }
        self.colors.push(c);
        self.palette_mask[u] |= bit;
        self.palette_mask[v] |= bit;
        self.host.adj[u].push((v, c));
        self.host.adj[v].push((u, c));
        self.host.palette_size[u] = self.palette_mask[u].count_ones() as usize;
        self.host.palette_size[v] = self.palette_mask[v].count_ones() as usize;
        self.host.num_colors = used.max(c + 1);
        if let Goal::RainbowFree { seeds, pattern_order } = self.goal {
            if detect::rainbow_copy_through_edge(&self.host, seeds, *pattern_order, u, v) {
                self.undo(idx);
                return false;
            }
        }
        true
    }

    fn undo(&mut self, idx: usize) {
        let (u, v) = self.edges[idx];
        let c = self.colors.pop().expect("undo matches apply");
        self.host.adj[u].pop();
        self.host.adj[v].pop();
        let bit = 1u64 << c;
        let still_u = self.host.adj[u].iter().any(|&(_, cc)| cc == c);
        if !still_u {
            self.palette_mask[u] &= !bit;
        }
        let still_v = self.host.adj[v].iter().any(|&(_, cc)| cc == c);
        if !still_v {
            self.palette_mask[v] &= !bit;
        }
        self.host.palette_size[u] = self.palette_mask[u].count_ones() as usize;
        self.host.palette_size[v] = self.palette_mask[v].count_ones() as usize;
    }

    /// Exhaust the subtree at edge `idx` with `used` colors so far. Returns
    /// false when the subtree was abandoned because of the deadline.
    fn descend(&mut self, idx: usize, used: u32) -> bool {
        self.local_nodes += 1;
        if self.local_nodes & 0xFFF == 0 {
            self.shared.nodes.fetch_add(0x1000, Ordering::Relaxed);
            if Instant::now() >= self.shared.deadline {
                self.shared.timed_out.store(true, Ordering::SeqCst);
            }
        }
        if self.shared.timed_out.load(Ordering::Relaxed) {
            return false;
        }
        if idx == self.edges.len() {
            self.shared.record(u64::from(used), &self.colors);
            return true;
        }
        let rem = (self.edges.len() - idx - 1) as u64;
        let mut complete = true;
        // fresh color first: it has the greatest remaining potential
        for c in (0..=used).rev() {
            let after = if c == used { used + 1 } else { used };
            if u64::from(after) + rem <= self.shared.best.load(Ordering::Relaxed) {
                if c < used {
                    break;
                }
                continue;
            }
            if !self.try_apply(idx, c, used) {
                continue;
            }
            complete &= self.descend(idx + 1, after);
            self.undo(idx);
            if self.shared.timed_out.load(Ordering::Relaxed) {
                return false;
            }
        }
        complete
    }

    /// Replay an already-validated prefix (no checks, no pruning).
    fn replay(&mut self, prefix: &[u32]) {
        let mut used = 0u32;
        for (idx, &c) in prefix.iter().enumerate() {
            let ok = self.try_apply(idx, c, used);
            debug_assert!(ok, "prefix was validated at split time");
            used = used.max(c + 1);
        }
    }
}

/// Enumerate all valid colored prefixes of the given depth, applying the
/// same validity checks as the search itself.
fn expand_prefixes(
    n: usize,
    edges: &[(usize, usize)],
    goal: &Goal,
    shared: &Shared,
    target: usize,
) -> (usize, Vec<Vec<u32>>) {
    let mut depth = 0usize;
    let mut tasks: Vec<Vec<u32>> = vec![Vec::new()];
    while depth < edges.len() && tasks.len() < target {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for prefix in &tasks {
            let mut w = Worker::new(n, edges, goal, shared);
            w.replay(prefix);
            let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
            for c in 0..=used {
                if w.try_apply(depth, c, used) {
                    let mut ext = prefix.clone();
                    ext.push(c);
                    next.push(ext);
                    w.undo(depth);
                }
            }
        }
        depth += 1;
        tasks = next;
        if tasks.is_empty() {
            break;
        }
    }
    (depth, tasks)
}

fn run_search(
    n: usize,
    goal: Goal,
    seed: Option<(u64, Vec<u32>)>,
    budget: Duration,
    threads: usize,
) -> SearchOutcome {
    let started = Instant::now();
    let edges: Vec<(usize, usize)> = lex_edges(n).collect();
    let shared = Shared {
        best: AtomicU64::new(0),
        witness: Mutex::new((0, None)),
        nodes: AtomicU64::new(0),
        timed_out: AtomicBool::new(false),
        deadline: started + budget,
    };
    if let Some((value, colors)) = seed {
        shared.best.store(value, Ordering::SeqCst);
        *shared.witness.lock().expect("witness lock") = (value, Some(colors));
    }
    let parallelism = if threads == 0 { 8 } else { threads };
    let target = (parallelism * 16).clamp(16, 4096);
    let (depth, tasks) = expand_prefixes(n, &edges, &goal, &shared, target);
    let incomplete = AtomicBool::new(false);
    run_tasks(threads, tasks, |prefix| {
        if shared.timed_out.load(Ordering::Relaxed) {
            incomplete.store(true, Ordering::SeqCst);
            return;
        }
        let mut w = Worker::new(n, &edges, &goal, &shared);
        w.replay(&prefix);
        let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
        if !w.descend(depth, used) {
            incomplete.store(true, Ordering::SeqCst);
        }
        shared.nodes.fetch_add(w.local_nodes & 0xFFF, Ordering::Relaxed);
    });
    let value = shared.best.load(Ordering::SeqCst);
    let status = if incomplete.load(Ordering::SeqCst) || shared.timed_out.load(Ordering::SeqCst) {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::Exact
    };
    let witness = shared
        .witness
        .lock()
        .expect("witness lock")
        .1
        .take()
        .map(|colors| EdgeColoring::from_edge_colors(n, colors).expect("witness is total"));
    SearchOutcome {
        value,
        status,
        nodes: shared.nodes.load(Ordering::SeqCst),
        elapsed_ms: started.elapsed().as_millis(),
        witness,
    }
}

/// Exact anti-Ramsey value by exhaustive canonical enumeration. The search
/// is seeded with the matching construction when one exists, so the reported
/// value is never below the certified lower bound.
pub fn ar_exact(
    n: usize,
    f: &ForestSpec,
    budget: Duration,
    threads: usize,
) -> Result<SearchOutcome, OracleError> {
    if !f.is_forest() {
        return Err(OracleError::UnsupportedPattern(f.to_string()));
    }
    if n > MAX_ORACLE_N {
        return Err(OracleError::HostTooLarge { n, max: MAX_ORACLE_N });
    }
    if n < f.vertex_count().max(2) {
        return Err(OracleError::HostTooSmall { needed: f.vertex_count().max(2), n });
    }
    let comps: Vec<PatternTree> = f.component_trees().expect("forest checked");
    let pattern_order = f.vertex_count();
    let seeds = detect::seeded_patterns(&comps);
    let seed = construct::auto(n, f).ok().and_then(|(col, _)| {
        match detect::verify_no_rainbow(&col, f) {
            Ok(true) => Some((u64::from(col.num_colors()), col.edge_colors().to_vec())),
            _ => None,
        }
    });
    Ok(run_search(n, Goal::RainbowFree { seeds, pattern_order }, seed, budget, threads))
}

/// Maximum color count over colorings of `K_n` whose palette at vertex `i`
/// has at most `caps[i]` colors. Caps must be ascending (the host vertices
/// are interchangeable, so this loses no generality).
pub fn max_colors_with_caps(
    n: usize,
    caps: &[u32],
    budget: Duration,
    threads: usize,
) -> Result<SearchOutcome, OracleError> {
    if n > MAX_ORACLE_N {
        return Err(OracleError::HostTooLarge { n, max: MAX_ORACLE_N });
    }
    if n < 2 {
        return Err(OracleError::HostTooSmall { needed: 2, n });
    }
    if caps.len() != n {
        return Err(OracleError::BadCaps(format!("expected {n} caps, got {}", caps.len())));
    }
    if caps[0] == 0 {
        return Err(OracleError::BadCaps("caps must be positive".into()));
    }
    if caps.windows(2).any(|w| w[0] > w[1]) {
        return Err(OracleError::BadCaps("caps must be sorted ascending".into()));
    }
    // the all-one-color coloring satisfies any positive caps
    let mono = vec![0u32; n * (n - 1) / 2];
    let seed = Some((1, mono));
    Ok(run_search(n, Goal::Caps { caps: caps.to_vec() }, seed, budget, threads))
}
