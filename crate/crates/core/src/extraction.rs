//! The constructive procedures inside the lower-bound proofs.
//!
//! - [`thm1_extract`]: delete up to `t-1` disjoint cliques, certify the
//!   residual's clique number, and extract an exact maximum independent set;
//!   the Ramsey-type binomial bound then floors the extracted size.
//! - [`thm2_peel`]: the counting proof made operational — enumerate all
//!   independent t-sets of the shrinking pool `V_{i-1}`, pick the
//!   `ceil(t/2)`-seed `X_i` contained in the most of them, and let `V_i` be
//!   the union of the completions. The union of the seeds is independent.
//! - [`claim_peel`]: repeatedly remove maximum independent sets; the removed
//!   parts properly color their union with at most `t-1` colors, so the
//!   union contains no clique of size `t`.
//!
//! `ceil(t/2)` replaces the proofs' real-valued `t/2` for odd `t`: a larger
//! seed only strengthens the extracted set, and the oracle module re-checks
//! the counting inequality numerically instead of assuming it survives the
//! rounding.

use crate::bitset::VertexSet;
use crate::bounds::{es_guarantee, k_of, r_of};
use crate::graph::Graph;
use crate::solver;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on independent t-set enumeration per peeling round.
pub const DEFAULT_TSET_BUDGET: u64 = 10_000_000;

// ============================================================================
// Theorem 1: clique removal + Ramsey extraction
// ============================================================================

/// How the `t-1` disjoint cliques are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalMode {
    /// Repeatedly delete a maximum clique of the current residual.
    Greedy,
    /// Exact maximum-union removal (feasible to n = 14).
    Exact,
}

/// Outcome of the clique-removal extraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CliquePeelResult {
    pub removed_cliques: Vec<VertexSet>,
    pub residual: VertexSet,
    /// Exact clique number of the residual, certified by the solver.
    pub residual_clique_bound: u32,
    /// Exact maximum independent set of the residual.
    pub extracted_set: VertexSet,
    /// True when the residual's clique number is at most `k = floor(s/(t-1))`,
    /// which is what the proof guarantees under exact removal when the graph
    /// has the property.
    pub certified: bool,
    /// The removal was cut short because the union would have reached `s`,
    /// which contradicts the property.
    pub union_reached_s: bool,
    pub mode: RemovalMode,
}

/// Clique removal followed by Ramsey extraction.
///
/// Greedy mode removes a maximum clique of the residual up to `t-1` times
/// (stopping early if the union would reach `s`). If the greedy residual's
/// clique number exceeds `k = floor(s/(t-1))` and the graph is small enough,
/// the removal is retried in exact maximum-union mode; otherwise the result
/// reports `certified = false`.
pub fn thm1_extract(g: &Graph, s: u64, t: u64, mode: RemovalMode) -> Result<CliquePeelResult> {
    let n = g.n() as u64;
    if t < 2 {
        return Err(Error::invalid(format!("requires t >= 2, got t={t}")));
    }
    if !(t < s && 2 * s < n) {
        return Err(Error::invalid(format!(
            "requires t < s < n/2, got n={n} s={s} t={t}"
        )));
    }
    let k = k_of(s, t)?;
    let mut result = extract_with_mode(g, s, t, mode)?;
    if !result.certified && mode == RemovalMode::Greedy && g.n() <= 14 {
        let exact = extract_with_mode(g, s, t, RemovalMode::Exact)?;
        if exact.certified {
            result = exact;
        }
    }

    // Erdős–Szekeres floor: a graph with clique number w on m vertices has
    // an independent set of size es_guarantee(m, w). The solver's exact
    // maximum can never fall below that.
    let m = result.residual.len() as u64;
    let w = result.residual_clique_bound as u64;
    if m >= 1 && w >= 1 && w <= k {
        let floor = es_guarantee(m, w);
        assert!(
            result.extracted_set.len() as u64 >= floor,
            "extracted {} below the binomial floor {floor} (m={m}, clique bound {w})",
            result.extracted_set.len(),
        );
    }
    Ok(result)
}

fn extract_with_mode(g: &Graph, s: u64, t: u64, mode: RemovalMode) -> Result<CliquePeelResult> {
    if mode == RemovalMode::Exact && g.n() > 14 {
        return Err(Error::invalid(format!(
            "exact removal is limited to n <= 14, got n = {}",
            g.n()
        )));
    }
    let k = k_of(s, t)?;
    let (removed, union_reached_s) = match mode {
        RemovalMode::Greedy => greedy_removal(g, s, t),
        RemovalMode::Exact => exact_removal(g, t),
    };

    let mut residual = VertexSet::full(g.n());
    for c in &removed {
        residual.subtract(c);
    }
    let (sub, map) = g.induced_subgraph(&residual)?;
    let (clique_bound, _) = solver::max_clique(&sub);
    let (_, alpha_witness) = solver::independence_number(&sub);
    let mut extracted = VertexSet::empty(g.n());
    for i in alpha_witness.iter() {
        extracted.insert(map[i as usize]);
    }
    debug_assert!(g.is_independent(&extracted));

    Ok(CliquePeelResult {
        removed_cliques: removed,
        residual,
        residual_clique_bound: clique_bound,
        extracted_set: extracted,
        certified: clique_bound as u64 <= k,
        union_reached_s,
        mode,
    })
}

fn greedy_removal(g: &Graph, s: u64, t: u64) -> (Vec<VertexSet>, bool) {
    let mut region = VertexSet::full(g.n());
    let mut removed = Vec::new();
    let mut union_size = 0u64;
    let mut reached = false;
    for _ in 0..(t - 1) {
        if region.is_empty() {
            break;
        }
        let (sub, map) = g.induced_subgraph(&region).expect("region is valid");
        let (size, witness) = solver::max_clique(&sub);
        if size == 0 {
            break;
        }
        if union_size + size as u64 >= s {
            reached = true;
            break;
        }
        let mut clique = VertexSet::empty(g.n());
        for i in witness.iter() {
            clique.insert(map[i as usize]);
        }
        union_size += size as u64;
        region.subtract(&clique);
        removed.push(clique);
    }
    (removed, reached)
}

/// Exact maximum-union choice of up to `t-1` disjoint cliques, by memoized
/// recursion over vertex subsets (n <= 14).
fn exact_removal(g: &Graph, t: u64) -> (Vec<VertexSet>, bool) {
    let n = g.n();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            let mut r = 0u32;
            for u in 0..n {
                if g.has_edge(v, u) {
                    r |= 1 << u;
                }
            }
            r
        })
        .collect();

    // best(j, avail) = largest total size of j disjoint cliques inside
    // avail, with the cliques themselves for reconstruction.
    fn best(
        j: u64,
        avail: u32,
        rows: &[u32],
        memo: &mut std::collections::HashMap<(u64, u32), (u32, Vec<u32>)>,
    ) -> (u32, Vec<u32>) {
        if j == 0 || avail == 0 {
            return (0, Vec::new());
        }
        if let Some(hit) = memo.get(&(j, avail)) {
            return hit.clone();
        }
        let v = avail.trailing_zeros();
        // option 1: v joins no clique
        let mut winner = best(j, avail & !(1 << v), rows, memo);
        // option 2: each clique containing v
        let mut stack = vec![(1u32 << v, avail & rows[v as usize])];
        while let Some((clique, cand)) = stack.pop() {
            let (rest_size, rest) = best(j - 1, avail & !clique, rows, memo);
            let total = clique.count_ones() + rest_size;
            if total > winner.0 {
                let mut cliques = vec![clique];
                cliques.extend(rest);
                winner = (total, cliques);
            }
            let mut ext = cand;
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                stack.push((
                    clique | (1 << u),
                    cand & rows[u as usize] & !((1 << (u + 1)) - 1),
                ));
            }
        }
        memo.insert((j, avail), winner.clone());
        winner
    }

    let mut memo = std::collections::HashMap::new();
    let (_, cliques) = best(t - 1, full, &rows, &mut memo);
    let removed = cliques
        .into_iter()
        .filter(|&mask| mask != 0)
        .map(|mask| {
            let members: Vec<u32> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            VertexSet::from_members(n, &members)
        })
        .collect();
    (removed, false)
}

// ============================================================================
// Theorem 2: X_i / V_i peeling
// ============================================================================

/// Full record of one peeling run. Serializes to
/// `{rounds, X, V_sizes, result, contraction_ok}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeelingTrace {
    pub rounds: u64,
    #[serde(rename = "X")]
    pub x_sets: Vec<VertexSet>,
    #[serde(rename = "V_sizes")]
    pub v_sizes: Vec<u64>,
    pub result: VertexSet,
    /// Per round: `|V_i| >= (t^2/(4 e^2 s^2)) |V_{i-1}|`.
    pub contraction_ok: Vec<bool>,
}

/// Iterates the counting extraction: in round `i`, enumerate every
/// independent t-set of the graph induced on `V_{i-1}`, pick the
/// `ceil(t/2)`-subset `X_i` contained in the most of them (ties broken
/// lexicographically least), and set `V_i` to the union of the completions
/// `T \ X_i` over all enumerated `T` containing `X_i`.
///
/// Rounds stop when the pool drops below `s` vertices or after `r_of(n,s,t)`
/// rounds (`beyond_cap` lifts the cap). Enumerating more than `tset_budget`
/// sets in a round is an explicit refusal, never silent sampling: the
/// contraction guarantee is only provable under exact maximization.
pub fn thm2_peel(
    g: &Graph,
    s: u64,
    t: u64,
    tset_budget: u64,
    beyond_cap: bool,
) -> Result<PeelingTrace> {
    let n = g.n() as u64;
    if !(2 * t <= s && 2 * s < n) {
        return Err(Error::invalid(format!(
            "requires 2t <= s < n/2, got n={n} s={s} t={t}"
        )));
    }
    let r_cap = r_of(n, s, t)?;
    let x_size = t.div_ceil(2);
    let q = (t * t) as f64 / (4.0 * std::f64::consts::E.powi(2) * (s * s) as f64);

    let mut pool = VertexSet::full(g.n());
    let mut x_sets: Vec<VertexSet> = Vec::new();
    let mut v_sizes = Vec::new();
    let mut contraction_ok = Vec::new();
    let mut result = VertexSet::empty(g.n());

    loop {
        let m = pool.len() as u64;
        if m < s {
            break;
        }
        if x_sets.len() as u64 >= r_cap && !beyond_cap {
            break;
        }

        let tsets = enumerate_independent_tsets(g, &pool, t as usize, tset_budget)?;
        if tsets.is_empty() {
            break; // the property fails on this pool; nothing to extract
        }

        // Count, for every ceil(t/2)-subset of every enumerated t-set, how
        // many t-sets contain it. BTreeMap order makes the arg-max
        // tie-break lexicographic.
        let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut scratch = Vec::with_capacity(x_size as usize);
        for tset in &tsets {
            for_each_subset(tset, x_size as usize, &mut scratch, &mut |x| {
                *counts.entry(x.to_vec()).or_insert(0) += 1;
            });
        }
        let best_x: Vec<u32> = counts
            .iter()
            .fold(None::<(&Vec<u32>, u64)>, |acc, (x, &c)| match acc {
                Some((_, best)) if best >= c => acc,
                _ => Some((x, c)),
            })
            .expect("counts nonempty because tsets is nonempty")
            .0
            .clone();
        let x_set = VertexSet::from_members(g.n(), &best_x);

        let mut next_pool = VertexSet::empty(g.n());
        for tset in &tsets {
            if best_x.iter().all(|v| tset.contains(v)) {
                for &v in tset {
                    if !best_x.contains(&v) {
                        next_pool.insert(v);
                    }
                }
            }
        }

        // round-local invariant: nothing in V_i touches X_i
        for v in next_pool.iter() {
            for x in x_set.iter() {
                assert!(!g.has_edge(v, x), "edge between X_i and V_i at ({x},{v})");
            }
        }

        contraction_ok.push(next_pool.len() as f64 >= q * m as f64);
        v_sizes.push(next_pool.len() as u64);
        result.union_with(&x_set);
        x_sets.push(x_set);
        pool = next_pool;
    }

    assert!(
        g.is_independent(&result),
        "the union of the extracted seeds must be independent"
    );
    Ok(PeelingTrace {
        rounds: x_sets.len() as u64,
        x_sets,
        v_sizes,
        result,
        contraction_ok,
    })
}

/// All independent subsets of size `t` inside `pool`, ascending members,
/// in lexicographic order. Exceeding `budget` sets is an error.
pub(crate) fn enumerate_independent_tsets(
    g: &Graph,
    pool: &VertexSet,
    t: usize,
    budget: u64,
) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(t);
    let mut cands: Vec<VertexSet> = Vec::with_capacity(t + 1);
    cands.push(pool.clone());
    dfs_tsets(g, t, budget, &mut chosen, &mut cands, &mut out)?;
    Ok(out)
}

fn dfs_tsets(
    g: &Graph,
    t: usize,
    budget: u64,
    chosen: &mut Vec<u32>,
    cands: &mut Vec<VertexSet>,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    if chosen.len() == t {
        if out.len() as u64 >= budget {
            return Err(Error::budget(
                "independent t-set enumeration".to_string(),
                out.len() as u128 + 1,
                budget as u128,
            ));
        }
        out.push(chosen.clone());
        return Ok(());
    }
    let need = t - chosen.len();
    let cand = cands.last().expect("candidate stack nonempty").clone();
    if cand.len() < need {
        return Ok(());
    }
    for v in cand.iter() {
        // members are chosen ascending: restrict to labels > v, drop N(v)
        let mut next = cand.clone();
        for u in cand.iter() {
            if u <= v {
                next.remove(u);
            } else {
                break;
            }
        }
        for (w, r) in next.words_mut().iter_mut().zip(g.row(v)) {
            *w &= !r;
        }
        chosen.push(v);
        cands.push(next);
        dfs_tsets(g, t, budget, chosen, cands, out)?;
        cands.pop();
        chosen.pop();
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of the ascending slice `items`.
fn for_each_subset(items: &[u32], k: usize, scratch: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    fn rec(
        items: &[u32],
        k: usize,
        start: usize,
        scratch: &mut Vec<u32>,
        f: &mut impl FnMut(&[u32]),
    ) {
        if scratch.len() == k {
            f(scratch);
            return;
        }
        let need = k - scratch.len();
        for i in start..=items.len().saturating_sub(need) {
            scratch.push(items[i]);
            rec(items, k, i + 1, scratch, f);
            scratch.pop();
        }
    }
    scratch.clear();
    rec(items, k, 0, scratch, f);
}

// ============================================================================
// Section-4 claim: repeated maximum independent sets
// ============================================================================

/// Outcome of the repeated-MIS peeling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimPeel {
    pub union: VertexSet,
    /// Pairwise disjoint independent sets; the color classes of the union.
    pub parts: Vec<VertexSet>,
    /// Exact clique number of the union's induced subgraph, when computed.
    /// Always at most `parts.len()` since the parts are a proper coloring.
    pub union_clique_bound: Option<u32>,
}

/// Extracts a maximum independent set from the not-yet-removed vertices, up
/// to `t-1` times or until the union holds at least `n/2` vertices. The
/// parts properly color the union, so it cannot contain a clique of size
/// `t`; the clique number is certified exactly when the union has at most
/// `max_certify` vertices.
pub fn claim_peel(g: &Graph, s: u64, t: u64, max_certify: u32) -> Result<ClaimPeel> {
    let n = g.n() as u64;
    if !(t >= 2 && s > t && n > 2 * s) {
        return Err(Error::invalid(format!(
            "requires n/2 > s > t >= 2, got n={n} s={s} t={t}"
        )));
    }
    let mut remaining = VertexSet::full(g.n());
    let mut union = VertexSet::empty(g.n());
    let mut parts: Vec<VertexSet> = Vec::new();
    while (parts.len() as u64) < t - 1 && 2 * union.len() < n as usize && !remaining.is_empty() {
        let (sub, map) = g.induced_subgraph(&remaining)?;
        let (_, witness) = solver::independence_number(&sub);
        let mut part = VertexSet::empty(g.n());
        for i in witness.iter() {
            part.insert(map[i as usize]);
        }
        debug_assert!(g.is_independent(&part));
        union.union_with(&part);
        remaining.subtract(&part);
        parts.push(part);
    }

    // the parts are a proper coloring of the union: every part is an
    // independent color class
    for part in &parts {
        assert!(g.is_independent(part), "a color class contains an edge");
    }

    let union_clique_bound = if union.len() as u32 <= max_certify {
        let (sub, _) = g.induced_subgraph(&union)?;
        let (w, _) = solver::max_clique(&sub);
        assert!(
            w as usize <= parts.len(),
            "clique number {w} exceeds the color count {}",
            parts.len()
        );
        Some(w)
    } else {
        None
    };

    Ok(ClaimPeel {
        union,
        parts,
        union_clique_bound,
    })
}
