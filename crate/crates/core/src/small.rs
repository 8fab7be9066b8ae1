//! Single-word kernels for graphs on at most 64 vertices.
//!
//! Adjacency is a slice of `u64` neighbor masks and a vertex subset is one
//! `u64`. These routines back every per-subset property check, so they avoid
//! allocation and use greedy fast paths before exact search. The exact search
//! is branch-and-bound for a clique in the complement, pruned by a greedy
//! coloring bound.

#[inline(always)]
fn bit(v: u32) -> u64 {
    1u64 << v
}

/// True iff `mask` is independent in `adj`.
#[inline]
pub fn is_independent(adj: &[u64], mask: u64) -> bool {
    let mut t = mask;
    while t != 0 {
        let v = t.trailing_zeros();
        t &= t - 1;
        if adj[v as usize] & mask != 0 {
            return false;
        }
    }
    true
}

/// Greedy independent set inside `mask`, scanning ascending vertex index.
#[inline]
pub fn greedy_independent(adj: &[u64], mask: u64) -> u64 {
    let mut cand = mask;
    let mut chosen = 0u64;
    while cand != 0 {
        let v = cand.trailing_zeros();
        chosen |= bit(v);
        cand &= !(adj[v as usize] | bit(v));
    }
    chosen
}

/// Does the subgraph induced on `mask` contain an independent set of size `t`?
///
/// Tries the greedy scan first; falls back to exact search only when the
/// greedy set is too small.
#[inline]
pub fn alpha_at_least(adj: &[u64], mask: u64, t: u32) -> bool {
    if t == 0 {
        return true;
    }
    if mask.count_ones() < t {
        return false;
    }
    if greedy_independent(adj, mask).count_ones() >= t {
        return true;
    }
    let comp = complement_in(adj, mask);
    clique_at_least(&comp, mask, t)
}

/// Exact independence number of the subgraph induced on `mask`.
pub fn alpha(adj: &[u64], mask: u64) -> u32 {
    let comp = complement_in(adj, mask);
    max_clique(&comp, mask).0
}

/// Exact independence number together with a witness mask.
pub fn alpha_witness(adj: &[u64], mask: u64) -> (u32, u64) {
    let comp = complement_in(adj, mask);
    max_clique(&comp, mask)
}

/// Exact clique number together with a witness mask, restricted to `mask`.
pub fn clique_witness(adj: &[u64], mask: u64) -> (u32, u64) {
    let restricted = restrict(adj, mask);
    max_clique(&restricted, mask)
}

/// Complement adjacency restricted to `mask` (no self-loops).
fn complement_in(adj: &[u64], mask: u64) -> Vec<u64> {
    adj.iter()
        .enumerate()
        .map(|(v, &row)| (!row) & mask & !bit(v as u32))
        .collect()
}

fn restrict(adj: &[u64], mask: u64) -> Vec<u64> {
    adj.iter().map(|&row| row & mask).collect()
}

// ============================================================================
// Branch and bound for maximum clique
// ============================================================================

/// Greedy coloring of `cand`: vertices are emitted color class by color
/// class into `order`, with `colors[i]` the number of classes used up to and
/// including `order[i]`. That running count is an upper bound on the largest
/// clique within the emitted prefix, which is what the search prunes on.
fn color_sort(adj: &[u64], mut cand: u64, order: &mut [u32; 64], colors: &mut [u32; 64]) -> usize {
    let mut len = 0usize;
    let mut color = 0u32;
    while cand != 0 {
        color += 1;
        let mut avail = cand;
        while avail != 0 {
            let v = avail.trailing_zeros();
            order[len] = v;
            colors[len] = color;
            len += 1;
            cand &= !bit(v);
            avail &= !(bit(v) | adj[v as usize]);
        }
    }
    len
}

fn max_clique_rec(
    adj: &[u64],
    cand: u64,
    size: u32,
    best: &mut u32,
    current: u64,
    best_mask: &mut u64,
) {
    if cand == 0 {
        if size > *best {
            *best = size;
            *best_mask = current;
        }
        return;
    }
    let mut order = [0u32; 64];
    let mut colors = [0u32; 64];
    let len = color_sort(adj, cand, &mut order, &mut colors);
    let mut cand = cand;
    for idx in (0..len).rev() {
        if size + colors[idx] <= *best {
            return;
        }
        let v = order[idx];
        max_clique_rec(
            adj,
            cand & adj[v as usize],
            size + 1,
            best,
            current | bit(v),
            best_mask,
        );
        cand &= !bit(v);
    }
}

/// Maximum clique in `adj` restricted to `mask`: (size, witness mask).
pub fn max_clique(adj: &[u64], mask: u64) -> (u32, u64) {
    let mut best = 0u32;
    let mut best_mask = 0u64;
    max_clique_rec(adj, mask, 0, &mut best, 0, &mut best_mask);
    (best, best_mask)
}

fn clique_at_least_rec(adj: &[u64], cand: u64, size: u32, target: u32) -> bool {
    if size >= target {
        return true;
    }
    if size + cand.count_ones() < target {
        return false;
    }
    let mut order = [0u32; 64];
    let mut colors = [0u32; 64];
    let len = color_sort(adj, cand, &mut order, &mut colors);
    let mut cand = cand;
    for idx in (0..len).rev() {
        if size + colors[idx] < target {
            return false;
        }
        let v = order[idx];
        if clique_at_least_rec(adj, cand & adj[v as usize], size + 1, target) {
            return true;
        }
        cand &= !bit(v);
    }
    false
}

/// Does `adj` restricted to `mask` contain a clique of size `target`?
pub fn clique_at_least(adj: &[u64], mask: u64, target: u32) -> bool {
    if target == 0 {
        return true;
    }
    clique_at_least_rec(adj, mask, 0, target)
}

/// Extracts the rows of the subgraph of `g` induced on `members` (at most 64
/// of them) into single-word masks over the new labels `0..members.len()-1`.
pub fn induced_rows(g: &crate::graph::Graph, members: &[u32]) -> Vec<u64> {
    debug_assert!(members.len() <= 64);
    let mut rows = vec![0u64; members.len()];
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                rows[i] |= bit(j as u32);
                rows[j] |= bit(i as u32);
            }
        }
    }
    rows
}
