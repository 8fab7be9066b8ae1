//! Ground truth at desk scale: exact `f(n,s,t)` by exhaustive enumeration
//! of all graphs on `n` labeled vertices (or one representative per
//! isomorphism class), and direct numeric verification of the peeling
//! proof's two counting inequalities.
//!
//! Labeled enumeration walks the integer encodings of the upper-triangular
//! adjacency bits in ascending order; the extremal graph reported is the
//! first one attaining the minimum. Isomorphism pruning generates one
//! canonical representative per class by vertex augmentation, with the
//! canonical form defined as the minimum adjacency bitstring over all
//! vertex permutations. The contract is `n <= 7` labeled and `n = 8` with
//! pruning; anything larger is refused.

use crate::bitset::VertexSet;
use crate::combin::binomial;
use crate::exec::{self, Parallelism};
use crate::extraction::enumerate_independent_tsets;
use crate::graph::Graph;
use crate::property::{self, ParamTriple};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Largest order enumerable without isomorphism pruning (2^21 graphs).
pub const MAX_LABELED_ORDER: u32 = 7;
/// Largest order enumerable at all.
pub const MAX_PRUNED_ORDER: u32 = 8;

/// Exact `f` value for one parameter triple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleResult {
    pub params: ParamTriple,
    pub f_value: u32,
    /// Edge list of a property-holding graph attaining the minimum alpha.
    pub extremal_graph: Vec<(u32, u32)>,
    pub graphs_enumerated: u64,
    pub property_holders: u64,
}

// ============================================================================
// Labeled and pruned enumeration share the per-graph analysis
// ============================================================================

/// Pairs (u, v), u < v, in the row-major encoding order: bit b of a graph
/// code corresponds to `pairs(n)[b]`.
fn pairs(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity((n * (n - 1) / 2) as usize);
    for u in 0..n {
        for v in (u + 1)..n {
            out.push((u, v));
        }
    }
    out
}

fn rows_of_code(code: u64, pairs: &[(u32, u32)], n: u32) -> Vec<u32> {
    let mut rows = vec![0u32; n as usize];
    for (b, &(u, v)) in pairs.iter().enumerate() {
        if code >> b & 1 == 1 {
            rows[u as usize] |= 1 << v;
            rows[v as usize] |= 1 << u;
        }
    }
    rows
}

fn code_of_rows(rows: &[u32], pairs: &[(u32, u32)]) -> u64 {
    let mut code = 0u64;
    for (b, &(u, v)) in pairs.iter().enumerate() {
        if rows[u as usize] >> v & 1 == 1 {
            code |= 1 << b;
        }
    }
    code
}

/// Independence numbers of every induced subgraph at once: `table[S]` is
/// alpha of the subgraph induced on the bit-subset `S`.
fn alpha_table(rows: &[u32]) -> Vec<u8> {
    let n = rows.len();
    let mut table = vec![0u8; 1 << n];
    for sub in 1usize..(1 << n) {
        let v = sub.trailing_zeros() as usize;
        let without = table[sub & (sub - 1)];
        let closed = rows[v] | (1u32 << v);
        let with_v = 1 + table[sub & !(closed as usize)];
        table[sub] = without.max(with_v);
    }
    table
}

/// For each subset size `k`, the minimum alpha over all induced subgraphs
/// on `k` vertices. The graph has the `(s,t)`-property iff `msmin[s] >= t`.
fn min_alpha_per_size(table: &[u8], n: u32) -> Vec<u8> {
    let mut msmin = vec![u8::MAX; n as usize + 1];
    for (sub, &a) in table.iter().enumerate() {
        let k = (sub as u32).count_ones() as usize;
        if a < msmin[k] {
            msmin[k] = a;
        }
    }
    msmin
}

/// Per-(s,t) running state folded over the enumeration: minimum alpha, the
/// code attaining it first, and how many graphs hold the property.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    best_alpha: u8,
    best_code: u64,
    holders: u64,
}

impl Cell {
    fn empty() -> Self {
        Cell {
            best_alpha: u8::MAX,
            best_code: u64::MAX,
            holders: 0,
        }
    }

    fn absorb(&mut self, alpha: u8, code: u64) {
        self.holders += 1;
        if (alpha, code) < (self.best_alpha, self.best_code) {
            self.best_alpha = alpha;
            self.best_code = code;
        }
    }

    fn merge(&mut self, other: &Cell) {
        self.holders += other.holders;
        if (other.best_alpha, other.best_code) < (self.best_alpha, self.best_code) {
            self.best_alpha = other.best_alpha;
            self.best_code = other.best_code;
        }
    }
}

/// All (s, t) pairs with `1 <= t < s <= n`, in a fixed order.
fn all_params(n: u32) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 2..=n as u64 {
        for t in 1..s {
            out.push((s, t));
        }
    }
    out
}

fn fold_graph(cells: &mut [Cell], params: &[(u64, u64)], rows: &[u32], code: u64, n: u32) {
    let table = alpha_table(rows);
    let msmin = min_alpha_per_size(&table, n);
    let alpha_full = table[(1usize << n) - 1];
    for (cell, &(s, t)) in cells.iter_mut().zip(params) {
        if msmin[s as usize] as u64 >= t {
            cell.absorb(alpha_full, code);
        }
    }
}

/// One full enumeration pass producing the table for every valid (s, t).
fn enumerate_cells(n: u32, iso: bool, par: Parallelism) -> Result<(Vec<Cell>, u64)> {
    let params = all_params(n);
    if iso {
        if n > MAX_PRUNED_ORDER {
            return Err(Error::budget(
                format!("isomorphism-pruned enumeration at n={n}"),
                n as u128,
                MAX_PRUNED_ORDER as u128,
            ));
        }
        let reps = canonical_representatives(n);
        let total = reps.len() as u64;
        let pair_list = pairs(n);
        let mut cells = vec![Cell::empty(); params.len()];
        for rows in &reps {
            let code = code_of_rows(rows, &pair_list);
            fold_graph(&mut cells, &params, rows, code, n);
        }
        Ok((cells, total))
    } else {
        if n > MAX_LABELED_ORDER {
            return Err(Error::budget(
                format!("labeled enumeration at n={n} (enable isomorphism pruning for n=8)"),
                n as u128,
                MAX_LABELED_ORDER as u128,
            ));
        }
        let pair_list = pairs(n);
        let total = 1u64 << pair_list.len();
        let ranges = exec::split_ranges(total, exec::default_chunks(par));
        let cells = exec::map_reduce(
            par,
            ranges.len() as u64,
            vec![Cell::empty(); params.len()],
            |chunk| {
                let (start, end) = ranges[chunk as usize];
                let mut cells = vec![Cell::empty(); params.len()];
                for code in start..end {
                    let rows = rows_of_code(code, &pair_list, n);
                    fold_graph(&mut cells, &params, &rows, code, n);
                }
                cells
            },
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    x.merge(y);
                }
                a
            },
        );
        Ok((cells, total))
    }
}

fn cell_to_result(
    cell: &Cell,
    n: u32,
    s: u64,
    t: u64,
    graphs_enumerated: u64,
) -> Result<OracleResult> {
    // the empty graph always has the property for t <= s, so a holder exists
    assert!(
        cell.holders > 0,
        "no property holder found for n={n} s={s} t={t}; enumeration bug"
    );
    let pair_list = pairs(n);
    let extremal: Vec<(u32, u32)> = pair_list
        .iter()
        .enumerate()
        .filter(|&(b, _)| cell.best_code >> b & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Ok(OracleResult {
        params: ParamTriple::new(n as u64, s, t)?,
        f_value: cell.best_alpha as u32,
        extremal_graph: extremal,
        graphs_enumerated,
        property_holders: cell.holders,
    })
}

/// Exact `f(n,s,t)` by exhaustive enumeration.
///
/// Every graph on `n` labeled vertices (or one per isomorphism class with
/// `use_iso_pruning`) is checked for the property; the result is the
/// minimum independence number over the holders, with the first attaining
/// graph as the extremal witness.
pub fn f_bruteforce(
    n: u32,
    s: u64,
    t: u64,
    use_iso_pruning: bool,
    par: Parallelism,
) -> Result<OracleResult> {
    ParamTriple::new(n as u64, s, t)?;
    let params = all_params(n);
    let (cells, total) = enumerate_cells(n, use_iso_pruning, par)?;
    let idx = params
        .iter()
        .position(|&(ps, pt)| ps == s && pt == t)
        .expect("validated params are in the table");
    cell_to_result(&cells[idx], n, s, t, total)
}

/// The full oracle table: `f(n,s,t)` for every valid `(s, t)` at this `n`,
/// from a single enumeration pass.
pub fn oracle_table(n: u32, use_iso_pruning: bool, par: Parallelism) -> Result<Vec<OracleResult>> {
    if n < 2 {
        return Err(Error::invalid(format!("requires n >= 2, got n={n}")));
    }
    let params = all_params(n);
    let (cells, total) = enumerate_cells(n, use_iso_pruning, par)?;
    params
        .iter()
        .zip(&cells)
        .map(|(&(s, t), cell)| cell_to_result(cell, n, s, t, total))
        .collect()
}

// ============================================================================
// Canonical forms and augmentation
// ============================================================================

/// The canonical code of a graph: the minimum, over all vertex orderings,
/// of the adjacency bitstring read block by block as positions are
/// assigned (block `j` holds the edges between position `j` and positions
/// `0..j`, placed at the most significant end first so that depth-first
/// assignment can prune on the prefix).
pub fn canonical_code(rows: &[u32]) -> u64 {
    let n = rows.len();
    if n <= 1 {
        return 0;
    }
    let total_bits: u32 = (n * (n - 1) / 2) as u32;
    let mut best = u64::MAX;
    let mut assigned: Vec<u32> = Vec::with_capacity(n);
    let mut used = 0u32;
    canon_dfs(
        rows,
        n,
        total_bits,
        &mut assigned,
        &mut used,
        0,
        0,
        &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn canon_dfs(
    rows: &[u32],
    n: usize,
    total_bits: u32,
    assigned: &mut Vec<u32>,
    used: &mut u32,
    code: u64,
    bits_filled: u32,
    best: &mut u64,
) {
    let j = assigned.len();
    if j == n {
        if code < *best {
            *best = code;
        }
        return;
    }
    for v in 0..n as u32 {
        if *used >> v & 1 == 1 {
            continue;
        }
        // block j: edges from the new position j back to positions 0..j,
        // most significant end of the code first
        let mut block = 0u64;
        for (i, &u) in assigned.iter().enumerate() {
            if rows[v as usize] >> u & 1 == 1 {
                block |= 1 << (j - 1 - i);
            }
        }
        let block_bits = j as u32;
        let new_filled = bits_filled + block_bits;
        let new_code = code | (block << (total_bits - new_filled));
        // prefix pruning: compare against the best code's same-length prefix
        if *best != u64::MAX {
            let shift = total_bits - new_filled;
            if new_code >> shift > *best >> shift {
                continue;
            }
        }
        assigned.push(v);
        *used |= 1 << v;
        canon_dfs(
            rows, n, total_bits, assigned, used, new_code, new_filled, best,
        );
        *used &= !(1 << v);
        assigned.pop();
    }
}

/// Decodes a canonical code back into adjacency rows.
fn rows_of_canonical(code: u64, n: u32) -> Vec<u32> {
    let total_bits = n * (n - 1) / 2;
    let mut rows = vec![0u32; n as usize];
    let mut filled = 0u32;
    for j in 1..n {
        for i in 0..j {
            // block j sits below the `filled` prefix, position i first
            let pos = total_bits - filled - 1 - i;
            if code >> pos & 1 == 1 {
                rows[i as usize] |= 1 << j;
                rows[j as usize] |= 1 << i;
            }
        }
        filled += j;
    }
    rows
}

/// One representative (adjacency rows) per isomorphism class of graphs on
/// `n` vertices, generated by vertex augmentation: every (k+1)-vertex graph
/// arises from some k-vertex graph by attaching a new vertex, so extending
/// every representative with every neighborhood and canonicalizing covers
/// every class.
pub fn canonical_representatives(n: u32) -> Vec<Vec<u32>> {
    let mut current: Vec<Vec<u32>> = vec![vec![0u32]]; // the 1-vertex graph
    for k in 1..n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for rows in &current {
            for nb in 0u32..(1 << k) {
                let mut child: Vec<u32> = rows.clone();
                child.push(nb);
                for u in 0..k {
                    if nb >> u & 1 == 1 {
                        child[u as usize] |= 1 << k;
                    }
                }
                let canon = canonical_code(&child);
                if seen.insert(canon) {
                    next.push(rows_of_canonical(canon, k + 1));
                }
            }
        }
        next.sort_by_key(|rows| canonical_code(rows));
        current = next;
    }
    current
}

// ============================================================================
// Counting-bound verification
// ============================================================================

/// `ceil(a/b)` for exact nonnegative rationals.
fn ceil_ratio(num: &BigUint, den: &BigUint) -> BigUint {
    (num + den - BigUint::from(1u32)) / den
}

/// Outcome of [`verify_counting_bound`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountingBound {
    /// Exact number of independent t-subsets of the region.
    pub count: u64,
    /// The bound `C(m,s)/C(m-t,s-t)` as an exact rational (numerator,
    /// denominator as decimal strings) plus a float approximation.
    pub bound_num: String,
    pub bound_den: String,
    pub bound_approx: f64,
    pub ok: bool,
}

fn region_property_precondition(
    g: &Graph,
    region: &VertexSet,
    s: u64,
    t: u64,
    subset_budget: u64,
    par: Parallelism,
) -> Result<(Graph, u64)> {
    let m = region.len() as u64;
    if m < s {
        return Err(Error::invalid(format!(
            "region has {m} vertices, below s={s}"
        )));
    }
    let (sub, _) = g.induced_subgraph(region)?;
    let report = property::check_exhaustive(&sub, s, t, subset_budget, par)?;
    if report.verdict != property::Verdict::Holds {
        return Err(Error::invalid(format!(
            "region does not satisfy the ({s},{t})-property; the counting bound assumes it"
        )));
    }
    Ok((sub, m))
}

/// Verifies the double-counting step: a region of `m >= s` vertices with the
/// `(s,t)`-property contains at least `C(m,s)/C(m-t,s-t)` independent
/// t-sets. Exact big-rational arithmetic; `ok` uses the ceiling since the
/// count is an integer.
pub fn verify_counting_bound(
    g: &Graph,
    region: &VertexSet,
    s: u64,
    t: u64,
    subset_budget: u64,
    tset_budget: u64,
    par: Parallelism,
) -> Result<CountingBound> {
    let (sub, m) = region_property_precondition(g, region, s, t, subset_budget, par)?;
    let tsets =
        enumerate_independent_tsets(&sub, &VertexSet::full(sub.n()), t as usize, tset_budget)?;
    let count = tsets.len() as u64;
    let num = binomial(m, s);
    let den = binomial(m - t, s - t);
    let needed = ceil_ratio(&num, &den);
    let ok = BigUint::from(count) >= needed;
    Ok(CountingBound {
        count,
        bound_num: num.to_string(),
        bound_den: den.to_string(),
        bound_approx: num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(1.0),
        ok,
    })
}

/// Outcome of [`verify_x_selection_bound`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XSelectionBound {
    /// Max over all ceil(t/2)-subsets of the number of independent t-sets
    /// containing it.
    pub best_count: u64,
    /// The averaging threshold `C(m,s)/(C(m-t,s-t) C(m,ceil(t/2)))`.
    pub threshold_num: String,
    pub threshold_den: String,
    pub threshold_approx: f64,
    pub ok: bool,
}

/// Verifies the seed-selection step: some `ceil(t/2)`-subset is contained
/// in at least `C(m,s)/(C(m-t,s-t) C(m,ceil(t/2)))` independent t-sets.
pub fn verify_x_selection_bound(
    g: &Graph,
    region: &VertexSet,
    s: u64,
    t: u64,
    subset_budget: u64,
    tset_budget: u64,
    par: Parallelism,
) -> Result<XSelectionBound> {
    let (sub, m) = region_property_precondition(g, region, s, t, subset_budget, par)?;
    let tsets =
        enumerate_independent_tsets(&sub, &VertexSet::full(sub.n()), t as usize, tset_budget)?;
    let x_size = t.div_ceil(2) as usize;
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut scratch = Vec::with_capacity(x_size);
    for tset in &tsets {
        for_each_combination(tset, x_size, &mut scratch, &mut |x| {
            *counts.entry(x.to_vec()).or_insert(0) += 1;
        });
    }
    let best_count = counts.values().copied().max().unwrap_or(0);

    let num = binomial(m, s);
    let den = binomial(m - t, s - t) * binomial(m, x_size as u64);
    let needed = ceil_ratio(&num, &den);
    let ok = BigUint::from(best_count) >= needed;
    Ok(XSelectionBound {
        best_count,
        threshold_num: num.to_string(),
        threshold_den: den.to_string(),
        threshold_approx: num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(1.0),
        ok,
    })
}

fn for_each_combination(
    items: &[u32],
    k: usize,
    scratch: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngSpec;

    fn par() -> Parallelism {
        Parallelism::auto()
    }

    // ------------------------------------------------------------------
    // alpha table
    // ------------------------------------------------------------------

    #[test]
    fn alpha_table_matches_direct_solver() {
        for seed in 0..20u64 {
            let g = Graph::gnp(7, 0.4, RngSpec::new(seed)).unwrap();
            let rows: Vec<u32> = (0..7).map(|v| g.row(v)[0] as u32).collect();
            let table = alpha_table(&rows);
            let rows64: Vec<u64> = rows.iter().map(|&r| r as u64).collect();
            for sub in 0u64..(1 << 7) {
                let expect = crate::small::alpha(&rows64, sub);
                assert_eq!(
                    table[sub as usize] as u32, expect,
                    "seed {seed} sub {sub:b}"
                );
            }
        }
    }

    // ------------------------------------------------------------------
    // f values frozen from independent enumeration
    // ------------------------------------------------------------------

    #[test]
    fn f_5_3_2_is_two() {
        let r = f_bruteforce(5, 3, 2, false, par()).unwrap();
        assert_eq!(r.f_value, 2);
        assert_eq!(r.graphs_enumerated, 1 << 10);
        assert_eq!(r.property_holders, 388);
    }

    #[test]
    fn f_with_t_one_is_one() {
        // the property with t = 1 always holds, so f = min alpha = 1 (K_n)
        for n in [4u32, 5, 6] {
            for s in 2..=n as u64 {
                let r = f_bruteforce(n, s, 1, false, par()).unwrap();
                assert_eq!(r.f_value, 1, "n={n} s={s}");
                assert_eq!(r.property_holders, 1 << (n * (n - 1) / 2));
            }
        }
    }

    #[test]
    fn f_table_n6_frozen() {
        let table = oracle_table(6, false, par()).unwrap();
        let get = |s: u64, t: u64| {
            table
                .iter()
                .find(|r| r.params.s == s && r.params.t == t)
                .unwrap()
        };
        assert_eq!(get(3, 2).f_value, 3);
        assert_eq!(get(3, 2).property_holders, 5789);
        assert_eq!(get(4, 2).f_value, 2);
        assert_eq!(get(4, 2).property_holders, 27626);
        assert_eq!(get(4, 3).f_value, 5);
        assert_eq!(get(4, 3).property_holders, 172);
        assert_eq!(get(5, 3).f_value, 3);
        assert_eq!(get(6, 4).f_value, 4);
    }

    #[test]
    fn extremal_graph_is_recheckable() {
        let r = f_bruteforce(5, 3, 2, false, par()).unwrap();
        let g = Graph::from_edge_list(5, &r.extremal_graph).unwrap();
        let rep = property::check_exhaustive(&g, 3, 2, 1_000_000, par()).unwrap();
        assert_eq!(rep.verdict, property::Verdict::Holds);
        let (alpha, _) = crate::solver::independence_number(&g);
        assert_eq!(alpha, r.f_value);
    }

    #[test]
    fn oracle_refuses_out_of_contract_orders() {
        assert!(f_bruteforce(8, 4, 2, false, par()).is_err());
        assert!(f_bruteforce(9, 4, 2, true, par()).is_err());
    }

    // ------------------------------------------------------------------
    // canonical forms
    // ------------------------------------------------------------------

    #[test]
    fn canonical_code_is_isomorphism_invariant() {
        use rand::seq::SliceRandom;
        let mut rng = RngSpec::new(3).rng();
        for seed in 0..30u64 {
            let g = Graph::gnp(6, 0.5, RngSpec::new(seed)).unwrap();
            let rows: Vec<u32> = (0..6).map(|v| g.row(v)[0] as u32).collect();
            let base = canonical_code(&rows);
            // relabel by a random permutation; the canonical code must agree
            let mut perm: Vec<u32> = (0..6).collect();
            perm.shuffle(&mut rng);
            let mut relabeled = vec![0u32; 6];
            for u in 0..6u32 {
                for v in 0..6u32 {
                    if u != v && rows[u as usize] >> v & 1 == 1 {
                        relabeled[perm[u as usize] as usize] |= 1 << perm[v as usize];
                    }
                }
            }
            assert_eq!(canonical_code(&relabeled), base, "seed {seed}");
        }
    }

    #[test]
    fn canonical_roundtrip() {
        for seed in 0..20u64 {
            let g = Graph::gnp(7, 0.35, RngSpec::new(seed)).unwrap();
            let rows: Vec<u32> = (0..7).map(|v| g.row(v)[0] as u32).collect();
            let code = canonical_code(&rows);
            let decoded = rows_of_canonical(code, 7);
            assert_eq!(canonical_code(&decoded), code);
            // same number of edges
            let edges = |r: &[u32]| r.iter().map(|x| x.count_ones()).sum::<u32>();
            assert_eq!(edges(&rows), edges(&decoded));
        }
    }

    #[test]
    fn class_counts_match_known_sequence() {
        // numbers of graphs on n unlabeled vertices
        let expect = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, &want) in expect.iter().enumerate() {
            let n = i as u32 + 1;
            assert_eq!(canonical_representatives(n).len(), want, "n={n}");
        }
    }

    #[test]
    fn pruned_enumeration_reaches_n8() {
        let reps = canonical_representatives(8);
        assert_eq!(reps.len(), 12346);
        let r = f_bruteforce(8, 4, 2, true, par()).unwrap();
        assert_eq!(r.graphs_enumerated, 12346);
        // deleting a vertex preserves the property, so f grows with n
        let r7 = f_bruteforce(7, 4, 2, false, par()).unwrap();
        assert!(r.f_value >= r7.f_value);
        let g = Graph::from_edge_list(8, &r.extremal_graph).unwrap();
        let rep = property::check_exhaustive(&g, 4, 2, 1_000_000, par()).unwrap();
        assert_eq!(rep.verdict, property::Verdict::Holds);
        assert_eq!(crate::solver::independence_number(&g).0, r.f_value);
    }

    #[test]
    fn labeled_and_pruned_agree_on_f() {
        for n in [4u32, 5, 6] {
            let labeled = oracle_table(n, false, par()).unwrap();
            let pruned = oracle_table(n, true, par()).unwrap();
            for (a, b) in labeled.iter().zip(&pruned) {
                assert_eq!(a.params, b.params);
                assert_eq!(
                    a.f_value, b.f_value,
                    "n={n} s={} t={}",
                    a.params.s, a.params.t
                );
                // the pruned extremal graph holds the property and attains f
                let g = Graph::from_edge_list(n, &b.extremal_graph).unwrap();
                let (alpha, _) = crate::solver::independence_number(&g);
                assert_eq!(alpha, b.f_value);
            }
        }
    }

    // ------------------------------------------------------------------
    // f monotonicity
    // ------------------------------------------------------------------

    #[test]
    fn f_monotone_in_all_three_parameters() {
        let tables: Vec<Vec<OracleResult>> = (4..=6)
            .map(|n| oracle_table(n, false, par()).unwrap())
            .collect();
        let get = |n: u32, s: u64, t: u64| {
            tables
                .get(n as usize - 4)?
                .iter()
                .find(|r| r.params.s == s && r.params.t == t)
                .map(|r| r.f_value)
        };
        for n in 4u32..=6 {
            for s in 2..=n as u64 {
                for t in 1..s {
                    let f = get(n, s, t).unwrap();
                    if let Some(f_next_n) = get(n + 1, s, t) {
                        assert!(f_next_n >= f, "f not monotone in n at ({n},{s},{t})");
                    }
                    if let Some(f_next_s) = get(n, s + 1, t) {
                        assert!(f_next_s <= f, "f not monotone in s at ({n},{s},{t})");
                    }
                    if t + 1 < s {
                        let f_next_t = get(n, s, t + 1).unwrap();
                        assert!(f_next_t >= f, "f not monotone in t at ({n},{s},{t})");
                    }
                }
            }
        }
    }

    #[test]
    fn f_dominates_what_extraction_delivers() {
        // the extremal graph's maximum independent set IS f, and the
        // clique-removal extraction can only deliver a subset of one
        use crate::extraction::{thm1_extract, thm2_peel, RemovalMode};
        for (n, s, t) in [(7u32, 3u64, 2u64), (6, 2, 1), (7, 2, 1)] {
            let r = f_bruteforce(n, s, t, false, par()).unwrap();
            let g = Graph::from_edge_list(n, &r.extremal_graph).unwrap();
            if t >= 2 && 2 * s < n as u64 {
                let ext = thm1_extract(&g, s, t, RemovalMode::Greedy).unwrap();
                assert!(
                    ext.extracted_set.len() as u32 <= r.f_value,
                    "extraction exceeded alpha at ({n},{s},{t})"
                );
            }
            if 2 * t <= s && 2 * s < n as u64 {
                let trace = thm2_peel(&g, s, t, 1_000_000, false).unwrap();
                assert!(trace.result.len() as u32 <= r.f_value);
            }
        }
    }

    // ------------------------------------------------------------------
    // counting bounds
    // ------------------------------------------------------------------

    #[test]
    fn counting_bound_on_empty_region() {
        // empty graph, m=8, s=4, t=2: count = C(8,2) = 28, bound = 70/15
        let g = Graph::empty(8);
        let r = verify_counting_bound(&g, &VertexSet::full(8), 4, 2, 1_000_000, 1_000_000, par())
            .unwrap();
        assert_eq!(r.count, 28);
        assert_eq!(r.bound_num, "70");
        assert_eq!(r.bound_den, "15");
        assert!(r.ok);
    }

    #[test]
    fn x_selection_on_empty_region() {
        // each single vertex lies in 7 independent pairs; threshold
        // (70/15)/8 ~ 0.58 -> ceil 1
        let g = Graph::empty(8);
        let r =
            verify_x_selection_bound(&g, &VertexSet::full(8), 4, 2, 1_000_000, 1_000_000, par())
                .unwrap();
        assert_eq!(r.best_count, 7);
        assert!(r.ok);
        assert!((r.threshold_approx - 70.0 / 15.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn counting_bound_rejects_non_holding_region() {
        let g = Graph::complete(8);
        let err = verify_counting_bound(&g, &VertexSet::full(8), 4, 2, 1_000_000, 1_000_000, par());
        assert!(err.is_err());
    }

    #[test]
    fn counting_bounds_on_matched_pairs() {
        // perfect matching on 12 vertices, s=6, t=3
        let edges: Vec<(u32, u32)> = (0..6).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_edge_list(12, &edges).unwrap();
        let c = verify_counting_bound(&g, &VertexSet::full(12), 6, 3, 1_000_000, 1_000_000, par())
            .unwrap();
        assert!(
            c.ok,
            "count {} bound {}/{}",
            c.count, c.bound_num, c.bound_den
        );
        let x =
            verify_x_selection_bound(&g, &VertexSet::full(12), 6, 3, 1_000_000, 1_000_000, par())
                .unwrap();
        assert!(x.ok);
        // averaging: best * C(m, x) >= count is implied by pigeonhole
        assert!(x.best_count >= 1);
    }
}
