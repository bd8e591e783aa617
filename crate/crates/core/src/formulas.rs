//! Closed-form anti-Ramsey (`ar`) and Turán (`ex`) evaluators for the forest
//! families with known values, each tagged with a status tied to the stated
//! validity range:
//!
//! * `Exact` — the value is proven at this `n` (explicit range);
//! * `Conditional` — the value is the known expression for "sufficiently
//!   large n" whose exact threshold is not pinned down; reported from a
//!   configurable minimum `n` onward;
//! * `BoundsOnly` — a construction-backed lower bound, possibly with a sound
//!   upper bound;
//! * `Asymptotic` — only the linear coefficient is known (general mixed
//!   linear forests); the lower bound is reported, the additive constant is
//!   not;
//! * `OutOfRange` — below the proven range and no values are asserted.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom2;
use crate::forest::{ForestKind, ForestSpec, SpiderSpec};
use crate::graph::spider_beta;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("K_{n} is too small for the pattern (needs at least {needed} vertices)")]
    HostTooSmall { needed: usize, n: u64 },
    #[error("no known formula for this family: {0}")]
    UnsupportedFamily(String),
    #[error("no Turán formula applies: {0}")]
    TuranUnsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaStatus {
    Exact,
    BoundsOnly,
    Asymptotic,
    Conditional,
    OutOfRange,
}

/// Derived quantities echoed for reporting: the join-part size `s`, the
/// residual color count `r`, the parity defect `epsilon` of a linear forest,
/// and a spider's `beta`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub s: Option<i64>,
    pub r: Option<u32>,
    pub epsilon: Option<u32>,
    pub beta: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub family: String,
    pub n: u64,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub status: FormulaStatus,
    pub source: String,
    pub derived: DerivedParams,
}

impl FormulaResult {
    fn new(f: &ForestSpec, n: u64, status: FormulaStatus, source: &str) -> Self {
        FormulaResult {
            family: f.to_string(),
            n,
            lower: None,
            upper: None,
            status,
            source: source.to_string(),
            derived: DerivedParams::default(),
        }
    }

    fn exact(f: &ForestSpec, n: u64, value: u64, source: &str) -> Self {
        let mut r = Self::new(f, n, FormulaStatus::Exact, source);
        r.lower = Some(value);
        r.upper = Some(value);
        r
    }

    fn conditional(f: &ForestSpec, n: u64, value: u64, source: &str) -> Self {
        let mut r = Self::new(f, n, FormulaStatus::Conditional, source);
        r.lower = Some(value);
        r.upper = Some(value);
        r
    }

    /// The asserted value when lower and upper coincide.
    pub fn value(&self) -> Option<u64> {
        match (self.lower, self.upper) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }
}

/// Knobs for families whose exact threshold is only "sufficiently large n":
/// their value is reported (as `Conditional`) once `n` reaches
/// `conditional_factor` times the pattern order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaConfig {
    pub conditional_factor: u64,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig { conditional_factor: 2 }
    }
}

impl FormulaConfig {
    fn threshold(&self, order: usize) -> u64 {
        self.conditional_factor.max(1) * order as u64
    }
}

fn nn(x: i128) -> u64 {
    u64::try_from(x).expect("formula value is non-negative on its validity range")
}

/// `ex(n, tK_2)` for `n >= 2t`: the larger of a clique on `2t-1` vertices
/// and a `(t-1)`-vertex dominating side joined to everything.
fn turan_matching_value(t: u64, n: u64) -> u64 {
    let clique = binom2(2 * t - 1);
    let join = binom2(t - 1) + (t - 1) * (n - t + 1);
    clique.max(join)
}

/// Parity data of a linear forest: `(epsilon, r, s, sum_half)` where
/// `epsilon` is 1 if all orders are odd and 2 otherwise, `r` is 2 when
/// exactly one order is even and 1 otherwise, and `s = sum_half - epsilon`.
fn linear_parity(orders: &[u32]) -> (u32, u32, i64, u64) {
    let evens = orders.iter().filter(|&&p| p % 2 == 0).count();
    let epsilon = if evens == 0 { 1 } else { 2 };
    let r = if evens == 1 { 2 } else { 1 };
    let sum_half: u64 = orders.iter().map(|&p| u64::from(p) / 2).sum();
    (epsilon, r, sum_half as i64 - i64::from(epsilon), sum_half)
}

/// Join-construction color count: rainbow `K_s` joined to everything plus
/// `r` colors inside the complement.
pub(crate) fn join_lower_value(s: i64, r: u32, n: u64) -> u64 {
    debug_assert!(s >= 0);
    let s = s as u64;
    nn(i128::from(s) * i128::from(n) - i128::from(binom2(s + 1)) + i128::from(r))
}

/// Clique-construction color count for a linear forest (rainbow clique plus
/// one residual color), if a sound clique size exists for this component
/// profile. Matchings take a clique on `2t-3` vertices, components all of
/// order at least 3 take `sum - 2`, and profiles mixing in 2-vertex paths
/// take `sum - 3`.
pub(crate) fn clique_lower_value(orders: &[u32]) -> Option<u64> {
    let sum: u64 = orders.iter().map(|&p| u64::from(p)).sum();
    let min = *orders.iter().min().expect("non-empty");
    let size = if orders.iter().all(|&p| p == 2) {
        let t = orders.len() as u64;
        if t < 2 {
            return None;
        }
        2 * t - 3
    } else if min >= 3 {
        sum - 2
    } else {
        if sum < 3 {
            return None;
        }
        sum - 3
    };
    Some(binom2(size) + 1)
}

fn linear_lower_bound(orders: &[u32], n: u64) -> u64 {
    let (_, r, s, _) = linear_parity(orders);
    let join = if s >= 0 { Some(join_lower_value(s, r, n)) } else { None };
    join.into_iter().chain(clique_lower_value(orders)).max().unwrap_or(0)
}

/// Value of `ar(K_n, P_m)` for a single path (sharp for sufficiently
/// large `n`).
fn single_path_value(m: u32, n: u64) -> u64 {
    debug_assert!(m >= 3);
    let k = u64::from(m) - 1;
    let half = k / 2;
    let parity = k % 2;
    nn(i128::from(half - 1) * i128::from(n) - i128::from(binom2(half)) + 1 + i128::from(parity))
}

/// Anti-Ramsey number evaluator. `f` is the target pattern, `n` the host
/// order.
pub fn ar_formula(
    f: &ForestSpec,
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let order = f.vertex_count();
    if n < order as u64 {
        return Err(FormulaError::HostTooSmall { needed: order, n });
    }
    match f.kind() {
        ForestKind::StarForest => ar_star_forest(f, n, cfg),
        ForestKind::LinearForest => ar_linear_forest(f, f.params(), n, cfg),
        ForestKind::Matching => ar_matching(f, f.params()[0], n),
        ForestKind::DoubleStar => ar_double_star(f, n, cfg),
        ForestKind::Spider => ar_spider(f, n, cfg),
        ForestKind::Omega2 => {
            // exact for every n >= 6
            Ok(FormulaResult::exact(f, n, (2 * n - 2).max(11), "two-disjoint-cycles"))
        }
    }
}

fn ar_matching(f: &ForestSpec, t: u32, n: u64) -> Result<FormulaResult, FormulaError> {
    if t == 1 {
        // a single edge is rainbow in every coloring
        return Ok(FormulaResult::exact(f, n, 0, "trivial-single-edge"));
    }
    let t = u64::from(t);
    if n == 2 * t {
        // host exactly the pattern order: the value jumps away from the
        // generic expression
        let (value, source) = if t == 2 {
            // the three perfect matchings of K_4, each monochromatic; the
            // quoted small-host expression ex(4, K_2) + 1 = 1 is contradicted
            // by exhaustive search
            (3, "matching-small-host-exhaustive")
        } else if t <= 6 {
            (turan_matching_value(t - 1, n) + 1, "matching-small-host")
        } else {
            (turan_matching_value(t - 1, n) + 2, "matching-small-host")
        };
        let mut res = FormulaResult::exact(f, n, value, source);
        res.derived.r = Some(1);
        return Ok(res);
    }
    // n >= 2t + 1
    let value = turan_matching_value(t - 1, n) + 1;
    let mut res = FormulaResult::exact(f, n, value, "matching");
    res.derived.s = Some(t as i64 - 2);
    res.derived.r = Some(1);
    Ok(res)
}

fn ar_star_forest(
    f: &ForestSpec,
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let p = f.params();
    let t = p.len();
    if p.iter().all(|&x| x == 1) {
        let mut res = ar_matching(f, t as u32, n)?;
        res.family = f.to_string();
        return Ok(res);
    }
    if p[0] <= 2 {
        // every component is a path on at most 3 vertices
        let orders: Vec<u32> = p.iter().map(|&x| x + 1).collect();
        return ar_linear_forest(f, &orders, n, cfg);
    }
    if t == 1 {
        return ar_single_star(f, p[0], n);
    }
    let (value, _best_i, r, s_idx) = star_forest_value(p, n);
    let in_range = {
        let tt = t as u64;
        let pp = u64::from(p[0]) + 1;
        n >= 3 * tt * tt * pp * pp
    };
    let mut res = if in_range {
        FormulaResult::exact(f, n, value, "star-forest")
    } else {
        let mut r = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "star-forest-lower");
        r.lower = Some(value);
        r
    };
    res.derived.s = Some(s_idx as i64);
    res.derived.r = r;
    Ok(res)
}

/// The star-forest maximum: over each prefix `1..=s` a rainbow join on `i-1`
/// vertices around a `K_{1,p_i}`-avoider, against the matching-style bound
/// when there are at least three components. Returns the value, the smallest
/// maximizing branch (`Some(i)` for a join branch, `None` for the matching
/// branch), the matching-branch residual count `r`, and `s`.
pub(crate) fn star_forest_value(p: &[u32], n: u64) -> (u64, Option<usize>, Option<u32>, usize) {
    let t = p.len();
    let s_idx = p.iter().rposition(|&x| x >= 2).map_or(0, |i| i + 1);
    let mut best: Option<(u64, Option<usize>)> = None;
    for i in 1..=s_idx {
        let pi = u64::from(p[i - 1]);
        let i64i = i as i128;
        let v = nn(
            (i64i - 1) * i128::from(n) - i128::from(binom2(i as u64))
                + i128::from((pi - 2) * (n - i as u64 + 1) / 2)
                + 1,
        );
        if best.is_none_or(|(bv, _)| v > bv) {
            best = Some((v, Some(i)));
        }
    }
    let mut r = None;
    if t >= 3 {
        let rr = if p[t - 2] == 1 { 1 } else { 2 };
        r = Some(rr);
        let v = nn(
            (t as i128 - 2) * i128::from(n) - i128::from(binom2(t as u64 - 1)) + i128::from(rr),
        );
        if best.is_none_or(|(bv, _)| v > bv) {
            best = Some((v, None));
        }
    }
    let (value, branch) = best.expect("at least one branch");
    (value, branch, r, s_idx)
}

fn ar_single_star(f: &ForestSpec, p: u32, n: u64) -> Result<FormulaResult, FormulaError> {
    if p == 1 {
        return Ok(FormulaResult::exact(f, n, 0, "trivial-single-edge"));
    }
    let p = u64::from(p);
    // bounds for a star with p edges, valid for every n >= p + 1; they
    // coincide from n >= 3p + 4 on (and often earlier), giving the exact
    // value floor((p-2)n/2) + 1
    let lower = (p - 2) * n / 2 + n / (n - p + 2);
    let upper = ((p - 2) * n + 2 * n / (n - p + 2)) / 2;
    debug_assert!(lower <= upper);
    if lower == upper {
        Ok(FormulaResult::exact(f, n, lower, "star"))
    } else {
        let mut res = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "star-bounds");
        res.lower = Some(lower);
        res.upper = Some(upper);
        Ok(res)
    }
}

fn ar_linear_forest(
    f: &ForestSpec,
    orders: &[u32],
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let k = orders.len();
    let order: usize = orders.iter().map(|&p| p as usize).sum();
    let (epsilon, r, s, sum_half) = linear_parity(orders);
    let with_parity = |mut res: FormulaResult| {
        res.derived.epsilon = Some(epsilon);
        res.derived.r = Some(r);
        res.derived.s = Some(s);
        res
    };
    let conditional_or_bounds = |value: u64, source: &str| {
        if n >= cfg.threshold(order) {
            with_parity(FormulaResult::conditional(f, n, value, source))
        } else {
            let mut res = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "linear-lower");
            res.lower = Some(linear_lower_bound(orders, n));
            with_parity(res)
        }
    };

    if orders.iter().all(|&p| p == 2) {
        let mut res = ar_matching(f, k as u32, n)?;
        res.family = f.to_string();
        return Ok(res);
    }
    if k == 1 {
        let m = orders[0];
        return Ok(conditional_or_bounds(single_path_value(m, n), "single-path"));
    }
    if orders == [4, 4] {
        // exact for every n >= 8
        return Ok(with_parity(FormulaResult::exact(f, n, (2 * n - 2).max(16), "two-p4")));
    }
    if orders == [3, 3] {
        // exact for every n >= 6
        return Ok(with_parity(FormulaResult::exact(f, n, n.max(7), "two-p3")));
    }
    if orders == [3, 3, 3] {
        if n >= 13 {
            return Ok(with_parity(FormulaResult::exact(f, n, 2 * n - 2, "three-p3")));
        }
        let mut res = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "linear-lower");
        res.lower = Some(linear_lower_bound(orders, n));
        return Ok(with_parity(res));
    }

    let count2 = orders.iter().filter(|&&p| p == 2).count();
    let count3 = orders.iter().filter(|&&p| p == 3).count();
    let half_join = |u: u64, extra: u64| {
        // (u-1)(n - u/2) + 1 + extra, computed exactly
        nn(i128::from(u - 1) * i128::from(2 * n - u) / 2 + 1 + i128::from(extra))
    };
    if count3 == k {
        // t >= 4 disjoint P_3 (t = 2, 3 handled above)
        return Ok(conditional_or_bounds(half_join(k as u64, 0), "p3-copies"));
    }
    if count3 == 1 && count2 == k - 1 && orders[0] == 3 && k >= 3 {
        let t = count2 as u64;
        return Ok(conditional_or_bounds(half_join(t, 0), "p3-with-matching"));
    }
    if orders[0] == 4 && count2 == k - 1 && k >= 2 {
        let t = count2 as u64;
        return Ok(conditional_or_bounds(half_join(t + 1, 0), "p4-with-matching"));
    }
    if orders[0] >= 4 && count3 == k - 1 && k >= 2 {
        let klen = u64::from(orders[0]) - 1;
        let u = count3 as u64 + klen / 2;
        return Ok(conditional_or_bounds(half_join(u, klen % 2), "long-path-with-p3s"));
    }
    if count3 == k - 1 && count2 == 1 && k >= 2 {
        let t = count3 as u64;
        return Ok(conditional_or_bounds(half_join(t, 1), "edge-with-p3s"));
    }
    if count2 >= 2 && count3 >= 2 && count2 + count3 == k {
        let u = (count2 + count3 - 1) as u64;
        return Ok(conditional_or_bounds(half_join(u, 0), "matchings-with-p3s"));
    }

    let all_odd = epsilon == 1;
    let all_even = orders.iter().all(|&p| p % 2 == 0);
    if all_odd {
        return Ok(conditional_or_bounds(join_lower_value(s, 1, n), "linear-all-odd"));
    }
    if all_even {
        // the value is pinned to a window of width one for large n
        let v1 = join_lower_value(s, 1, n);
        let lower = linear_lower_bound(orders, n);
        let mut res = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "linear-all-even");
        if n >= cfg.threshold(order) && lower <= v1 + 1 {
            res.lower = Some(v1.max(lower));
            res.upper = Some(v1 + 1);
        } else {
            res.source = "linear-lower".into();
            res.lower = Some(lower);
        }
        return Ok(with_parity(res));
    }
    // mixed parities: only the linear coefficient (s = sum_half - 2) is known
    let mut res = FormulaResult::new(f, n, FormulaStatus::Asymptotic, "linear-asymptotic");
    res.lower = Some(linear_lower_bound(orders, n));
    res.derived.s = Some(sum_half as i64 - 2);
    res.derived.epsilon = Some(epsilon);
    res.derived.r = Some(r);
    Ok(res)
}

fn ar_double_star(
    f: &ForestSpec,
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let (p, q) = (f.params()[0], f.params()[1]);
    if p == 1 && q == 1 {
        // two centers with one leaf each: a path on 4 vertices
        return ar_linear_forest(f, &[4], n, cfg);
    }
    let pp = u64::from(p);
    if n < 6 * (pp * pp + 2 * pp) {
        let mut res = FormulaResult::new(f, n, FormulaStatus::OutOfRange, "double-star");
        res.derived.r = Some(if q == p { 2 } else { 1 });
        return Ok(res);
    }
    let value = if q < p { (pp - 1) * n / 2 + 1 } else { pp * (n - 1) / 2 + 1 };
    Ok(FormulaResult::exact(f, n, value, "double-star"))
}

fn ar_spider(
    f: &ForestSpec,
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let legs = f.params();
    if legs.iter().all(|&a| a == 1) {
        // a star with one edge per leg
        return ar_single_star(f, legs.len() as u32, n);
    }
    if legs.contains(&1) {
        return Err(FormulaError::UnsupportedFamily(format!(
            "spider {f} mixes legs of length 1 with longer legs"
        )));
    }
    if legs.len() <= 2 {
        // one or two legs: the spider is a path
        let m: u32 = 1 + legs.iter().sum::<u32>();
        return ar_linear_forest(f, &[m], n, cfg);
    }
    let sp = SpiderSpec::try_from(f).expect("kind checked");
    let beta = spider_beta(&sp).expect("legs checked") as u64;
    let r = if sp.exactly_one_even_leg() { 2 } else { 1 };
    let lower = nn(
        i128::from(beta - 1) * i128::from(n) - i128::from(binom2(beta)) + i128::from(r),
    );
    let edges = sp.edge_count() as u64;
    let mut res = FormulaResult::new(f, n, FormulaStatus::BoundsOnly, "spider-lower");
    res.lower = Some(lower);
    // a tree with k edges never forces more than (k-1)n colors once n >= 2k
    res.upper = if n >= 2 * edges { Some((edges - 1) * n) } else { None };
    res.derived.beta = Some(beta);
    res.derived.r = Some(r);
    Ok(res)
}

/// Turán number evaluator for star forests, linear forests and matchings.
pub fn ex_formula(
    f: &ForestSpec,
    n: u64,
    cfg: &FormulaConfig,
) -> Result<FormulaResult, FormulaError> {
    let order = f.vertex_count();
    if n < order as u64 {
        return Err(FormulaError::HostTooSmall { needed: order, n });
    }
    match f.kind() {
        ForestKind::StarForest => {
            let p = f.params();
            if p.iter().all(|&x| x == 1) {
                return ex_matching(f, p.len() as u32, n);
            }
            let value = (1..=p.len() as u64)
                .map(|i| {
                    let pi = u64::from(p[i as usize - 1]);
                    nn((i as i128 - 1) * i128::from(n) - i128::from(binom2(i))
                        + i128::from((pi - 1) * (n - i + 1) / 2))
                })
                .max()
                .expect("non-empty");
            if n >= cfg.threshold(order) {
                Ok(FormulaResult::conditional(f, n, value, "turan-star-forest"))
            } else {
                Ok(FormulaResult::new(f, n, FormulaStatus::OutOfRange, "turan-star-forest"))
            }
        }
        ForestKind::LinearForest => {
            let orders = f.params();
            if orders.iter().all(|&p| p == 2) {
                return ex_matching(f, orders.len() as u32, n);
            }
            if orders.len() == 1 {
                return Err(FormulaError::TuranUnsupported(
                    "single paths are out of scope here".into(),
                ));
            }
            if orders.iter().all(|&p| p == 3) {
                return Err(FormulaError::TuranUnsupported(
                    "every component is a path on 3 vertices, which this formula excludes".into(),
                ));
            }
            let sum_half: u64 = orders.iter().map(|&p| u64::from(p) / 2).sum();
            let c = u64::from(orders.iter().all(|&p| p % 2 == 1));
            let value = nn(
                i128::from(sum_half - 1) * i128::from(n) - i128::from(binom2(sum_half))
                    + i128::from(c),
            );
            if n >= cfg.threshold(order) {
                Ok(FormulaResult::conditional(f, n, value, "turan-linear-forest"))
            } else {
                Ok(FormulaResult::new(f, n, FormulaStatus::OutOfRange, "turan-linear-forest"))
            }
        }
        ForestKind::Matching => ex_matching(f, f.params()[0], n),
        _ => Err(FormulaError::TuranUnsupported(format!(
            "Turán values are only provided for star forests, linear forests and matchings, got {f}"
        ))),
    }
}

fn ex_matching(f: &ForestSpec, t: u32, n: u64) -> Result<FormulaResult, FormulaError> {
    let t = u64::from(t);
    // exact for every n >= 2t
    Ok(FormulaResult::exact(f, n, turan_matching_value(t, n), "turan-matching"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> ForestSpec {
        s.parse().unwrap()
    }

    fn ar(spec: &str, n: u64) -> FormulaResult {
        ar_formula(&f(spec), n, &FormulaConfig::default()).unwrap()
    }

    fn ex(spec: &str, n: u64) -> FormulaResult {
        ex_formula(&f(spec), n, &FormulaConfig::default()).unwrap()
    }

    #[test]
    fn two_p4_values() {
        let r = ar("P(4,4)", 20);
        assert_eq!(r.status, FormulaStatus::Exact);
        assert_eq!(r.value(), Some(38));
        let r = ar("P(4,4)", 8);
        assert_eq!(r.value(), Some(16));
        for n in 8..=40 {
            // the exact value coincides with the larger of the two
            // construction lower bounds at every n
            let r = ar("P(4,4)", n);
            let clique = clique_lower_value(&[4, 4]).unwrap();
            let join = join_lower_value(2, 1, n);
            assert_eq!(r.value(), Some(clique.max(join)));
        }
    }

    #[test]
    fn matching_values() {
        let r = ar("M(3)", 12);
        assert_eq!(r.status, FormulaStatus::Exact);
        assert_eq!(r.value(), Some(12));
        assert_eq!(ar("M(2)", 5).value(), Some(1));
        assert_eq!(ar("M(2)", 4).value(), Some(3));
        assert_eq!(ar("M(1)", 9).value(), Some(0));
        assert!(matches!(
            ar_formula(&f("M(3)"), 5, &FormulaConfig::default()),
            Err(FormulaError::HostTooSmall { needed: 6, .. })
        ));
    }

    #[test]
    fn matching_cross_checks_turan() {
        for t in 2u32..=8 {
            for n in (2 * u64::from(t) + 1)..(2 * u64::from(t) + 30) {
                let a = ar(&format!("M({t})"), n).value().unwrap();
                let e = ex(&format!("M({})", t - 1), n).value().unwrap();
                assert_eq!(a, e + 1, "t={t} n={n}");
            }
        }
    }

    #[test]
    fn star_forest_instantiation() {
        let r = ar("S(3,1)", 192);
        assert_eq!(r.status, FormulaStatus::Exact);
        assert_eq!(r.value(), Some(97));
        // below the proven range only the construction lower bound is claimed
        let r = ar("S(3,1)", 191);
        assert_eq!(r.status, FormulaStatus::BoundsOnly);
        assert_eq!(r.lower, Some(96));
        assert_eq!(r.upper, None);
    }

    #[test]
    fn star_values() {
        // floor((p-2)n/2) + 1 once the two displayed bounds agree
        let r = ar("S(4)", 30);
        assert_eq!(r.status, FormulaStatus::Exact);
        assert_eq!(r.value(), Some(31));
        assert_eq!(ar("S(2)", 10).value(), Some(1));
        assert_eq!(ar("S(1)", 10).value(), Some(0));
    }

    #[test]
    fn double_star_values() {
        assert_eq!(ar("DS(2,1)", 48).value(), Some(25));
        assert_eq!(ar("DS(2,2)", 48).value(), Some(48));
        let r = ar("DS(2,2)", 10);
        assert_eq!(r.status, FormulaStatus::OutOfRange);
        assert_eq!(r.lower, None);
    }

    #[test]
    fn p3_copies_match_join_bound_at_n20() {
        // t = 2 and t = 3 have explicit ranges; both equal the join bound
        assert_eq!(ar("P(3,3)", 20).value(), Some(20));
        assert_eq!(join_lower_value(1, 1, 20), 20);
        assert_eq!(ar("P(3,3,3)", 20).value(), Some(38));
        assert_eq!(join_lower_value(2, 1, 20), 38);
    }

    #[test]
    fn spider_lower_bounds() {
        let r = ar("SP(2,3,3)", 100);
        assert_eq!(r.status, FormulaStatus::BoundsOnly);
        assert_eq!(r.lower, Some(199));
        assert_eq!(r.derived.beta, Some(3));
        assert_eq!(r.derived.r, Some(2));

        let r = ar("SP(2,2,2)", 100);
        assert_eq!(r.lower, Some(198));
        assert_eq!(r.derived.r, Some(1));
    }

    #[test]
    fn spider_routing() {
        // all legs of length one: a plain star
        assert_eq!(ar("SP(1,1,1,1)", 30).value(), ar("S(4)", 30).value());
        // two legs: a path
        assert_eq!(ar("SP(2,2)", 40).value(), ar("P(5)", 40).value());
        assert!(matches!(
            ar_formula(&f("SP(1,2,2)"), 30, &FormulaConfig::default()),
            Err(FormulaError::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn omega2_values() {
        assert_eq!(ar("OMEGA2", 6).value(), Some(11));
        assert_eq!(ar("OMEGA2", 9).value(), Some(16));
        assert!(ar_formula(&f("OMEGA2"), 5, &FormulaConfig::default()).is_err());
    }

    #[test]
    fn turan_values() {
        assert_eq!(ex("M(3)", 10).value(), Some(17));
        let r = ex("P(4,4)", 20);
        assert_eq!(r.status, FormulaStatus::Conditional);
        assert_eq!(r.value(), Some(54));
        // star forest with the maximum over prefixes
        assert_eq!(ex("S(3,3)", 40).value(), Some(2 * 40 - 2));
        assert!(matches!(
            ex_formula(&f("P(3,3)"), 30, &FormulaConfig::default()),
            Err(FormulaError::TuranUnsupported(_))
        ));
        assert!(matches!(
            ex_formula(&f("DS(2,1)"), 30, &FormulaConfig::default()),
            Err(FormulaError::TuranUnsupported(_))
        ));
    }

    #[test]
    fn star_forest_with_small_stars_routes_to_linear() {
        // 2 K_{1,2} is the same pattern as 2 P_3
        assert_eq!(ar("S(2,2)", 20).value(), ar("P(3,3)", 20).value());
        // K_{1,2} + 2 K_{1,1} is P_3 + 2 P_2
        assert_eq!(ar("S(2,1,1)", 20).value(), ar("P(3,2,2)", 20).value());
    }

    #[test]
    fn results_are_stable_and_ordered() {
        for spec in ["P(4,4)", "S(3,1)", "M(4)", "DS(3,2)", "SP(2,3,3)", "P(5,4,3)"] {
            for n in [10u64, 48, 192] {
                if let Ok(r) = ar_formula(&f(spec), n, &FormulaConfig::default()) {
                    if let (Some(lo), Some(hi)) = (r.lower, r.upper) {
                        assert!(lo <= hi, "{spec} at {n}");
                    }
                    let again = ar_formula(&f(spec), n, &FormulaConfig::default()).unwrap();
                    assert_eq!(r, again);
                }
            }
        }
    }
}
