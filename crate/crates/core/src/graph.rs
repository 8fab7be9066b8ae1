//! Immutable simple graphs over word-packed adjacency bitsets.
//!
//! Vertices are labeled `0..n-1`. The adjacency matrix is stored row-major,
//! one bitset row per vertex, and is symmetric with a zero diagonal by
//! construction. A graph never changes after it is built, so it is safe to
//! share across threads; every operation on it is a pure function.

use crate::bitset::{words_for, VertexSet, WORD_BITS};
use crate::rng::RngSpec;
use crate::{Error, Result};
use rand::Rng;
use std::fmt::Write as _;
use std::path::Path;

/// An immutable simple graph with bit-matrix adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    stride: usize,
    rows: Vec<u64>,
    edge_count: u64,
}

impl Graph {
    // ------------------------------------------------------------------
    // Construction
    // ------------------------------------------------------------------

    /// Builds the graph with exactly the given edges (duplicates collapsed).
    ///
    /// Rejects out-of-range endpoints and self-loops.
    pub fn from_edge_list(n: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let stride = words_for(n as usize);
        let mut rows = vec![0u64; stride * n as usize];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            rows[u as usize * stride + v as usize / WORD_BITS] |= 1u64 << (v as usize % WORD_BITS);
            rows[v as usize * stride + u as usize / WORD_BITS] |= 1u64 << (u as usize % WORD_BITS);
        }
        let edge_count = rows.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2;
        Ok(Graph {
            n,
            stride,
            rows,
            edge_count,
        })
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: u32) -> Graph {
        Graph::from_edge_list(n, &[]).expect("empty graph is always valid")
    }

    /// The complete graph K_n.
    pub fn complete(n: u32) -> Graph {
        let mut edges = Vec::with_capacity((n as usize * (n as usize).saturating_sub(1)) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges).expect("complete graph is always valid")
    }

    /// The cycle C_n (n >= 3).
    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).expect("cycle is always valid")
    }

    /// The path P_n with edges i -- i+1.
    pub fn path(n: u32) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).expect("path is always valid")
    }

    /// Samples G(n, p): each of the C(n,2) potential edges is included
    /// independently with probability `p`, scanning pairs (u,v), u < v, in
    /// lexicographic order. Deterministic given the [`RngSpec`].
    pub fn gnp(n: u32, p: f64, rng_spec: RngSpec) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("edge probability {p} not in [0,1]")));
        }
        let mut rng = rng_spec.rng();
        let stride = words_for(n as usize);
        let mut rows = vec![0u64; stride * n as usize];
        let mut edge_count = 0u64;
        for u in 0..n as usize {
            for v in (u + 1)..n as usize {
                if rng.random_bool(p) {
                    rows[u * stride + v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
                    rows[v * stride + u / WORD_BITS] |= 1u64 << (u % WORD_BITS);
                    edge_count += 1;
                }
            }
        }
        Ok(Graph {
            n,
            stride,
            rows,
            edge_count,
        })
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    #[inline(always)]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline(always)]
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// The adjacency bitset row of vertex `v`.
    #[inline(always)]
    pub fn row(&self, v: u32) -> &[u64] {
        let base = v as usize * self.stride;
        &self.rows[base..base + self.stride]
    }

    #[inline(always)]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.row(u)[v as usize / WORD_BITS] >> (v as usize % WORD_BITS) & 1 == 1
    }

    #[inline(always)]
    pub fn degree(&self, v: u32) -> u32 {
        self.row(v).iter().map(|w| w.count_ones()).sum()
    }

    /// All edges (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count as usize);
        for u in 0..self.n {
            for (wi, &w) in self.row(u).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let v = wi as u32 * WORD_BITS as u32 + bits.trailing_zeros();
                    bits &= bits - 1;
                    if v > u {
                        out.push((u, v));
                    }
                }
            }
        }
        out
    }

    /// Neighbors of `v` inside `set`, as a fresh set.
    pub fn neighbors_in(&self, v: u32, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for (a, b) in out.words_mut().iter_mut().zip(self.row(v)) {
            *a &= b;
        }
        out
    }

    /// Number of edges inside the induced subgraph on `set`.
    pub fn induced_edge_count(&self, set: &VertexSet) -> u64 {
        let mut twice = 0u64;
        for v in set.iter() {
            twice += self
                .row(v)
                .iter()
                .zip(set.words())
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum::<u64>();
        }
        twice / 2
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.row(v).iter().zip(set.words()).all(|(a, b)| a & b == 0))
    }

    /// True iff all members of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len() as u64;
        if k <= 1 {
            return true;
        }
        self.induced_edge_count(set) == k * (k - 1) / 2
    }

    // ------------------------------------------------------------------
    // Derived graphs
    // ------------------------------------------------------------------

    /// The complement graph (computed on demand, never cached).
    pub fn complement(&self) -> Graph {
        let n = self.n as usize;
        let stride = self.stride;
        let mut rows = vec![0u64; stride * n];
        for v in 0..n {
            let src = self.row(v as u32);
            let dst = &mut rows[v * stride..(v + 1) * stride];
            for w in 0..stride {
                dst[w] = !src[w];
            }
            // mask off the diagonal and bits beyond n
            dst[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
            let rem = n % WORD_BITS;
            if rem != 0 {
                dst[stride - 1] &= (1u64 << rem) - 1;
            }
        }
        let total = n as u64 * (n as u64 - 1) / 2;
        Graph {
            n: self.n,
            stride,
            rows,
            edge_count: total - self.edge_count,
        }
    }

    /// The induced subgraph on `set`, relabeled to `0..|set|-1`.
    ///
    /// Returns the subgraph together with the old labels in new-label order,
    /// so `map[new] = old`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Vec<u32>)> {
        if set.universe() != self.n {
            return Err(Error::invalid(format!(
                "vertex set universe {} does not match graph order {}",
                set.universe(),
                self.n
            )));
        }
        let map = set.to_vec();
        let m = map.len() as u32;
        let mut edges = Vec::new();
        for (iu, &u) in map.iter().enumerate() {
            for (iv, &v) in map.iter().enumerate().skip(iu + 1) {
                if self.has_edge(u, v) {
                    edges.push((iu as u32, iv as u32));
                }
            }
        }
        Ok((Graph::from_edge_list(m, &edges)?, map))
    }

    // ------------------------------------------------------------------
    // Counting
    // ------------------------------------------------------------------

    /// Per-vertex triangle counts; the graph's triangle total is the sum
    /// divided by 3.
    pub fn triangle_counts(&self) -> Vec<u64> {
        let n = self.n;
        let mut counts = vec![0u64; n as usize];
        for u in 0..n {
            let row_u = self.row(u);
            for (wi, &w) in row_u.iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let v = wi as u32 * WORD_BITS as u32 + bits.trailing_zeros();
                    bits &= bits - 1;
                    if v <= u {
                        continue;
                    }
                    // common neighbors of the edge (u, v) each close a triangle
                    let common: u64 = row_u
                        .iter()
                        .zip(self.row(v))
                        .map(|(a, b)| (a & b).count_ones() as u64)
                        .sum();
                    counts[u as usize] += common;
                    counts[v as usize] += common;
                }
            }
        }
        // every triangle through w was counted once per incident edge scan:
        // for vertex w it is seen via.. the two edge-ends; halve per vertex
        for c in &mut counts {
            debug_assert!(*c % 2 == 0);
            *c /= 2;
        }
        counts
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n;
        let mut seen = VertexSet::empty(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::empty(n);
            let mut stack = vec![start];
            comp.insert(start);
            while let Some(v) = stack.pop() {
                for (wi, &w) in self.row(v).iter().enumerate() {
                    let mut bits = w & !comp.words()[wi];
                    while bits != 0 {
                        let u = wi as u32 * WORD_BITS as u32 + bits.trailing_zeros();
                        bits &= bits - 1;
                        comp.insert(u);
                        stack.push(u);
                    }
                }
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    // ------------------------------------------------------------------
    // Greedy maximal independent set
    // ------------------------------------------------------------------

    /// Scans `order` and adds each vertex not adjacent to anything already
    /// added. The result is a maximal (inclusion-wise) independent set.
    ///
    /// `order` must be a permutation of `0..n-1`.
    pub fn greedy_mis(&self, order: &[u32]) -> Result<VertexSet> {
        if order.len() != self.n as usize {
            return Err(Error::invalid(format!(
                "order has length {} but the graph has {} vertices",
                order.len(),
                self.n
            )));
        }
        let mut seen = VertexSet::empty(self.n);
        for &v in order {
            if v >= self.n || seen.contains(v) {
                return Err(Error::invalid(
                    "order is not a permutation of the vertices".to_string(),
                ));
            }
            seen.insert(v);
        }
        Ok(self.greedy_mis_in(order, &VertexSet::full(self.n)))
    }

    /// Greedy maximal independent set restricted to `region`, scanning
    /// `order` and skipping vertices outside the region. Used by the
    /// iterated-greedy machinery; does not validate `order`.
    pub(crate) fn greedy_mis_in(&self, order: &[u32], region: &VertexSet) -> VertexSet {
        let mut chosen = VertexSet::empty(self.n);
        let mut blocked = VertexSet::empty(self.n);
        for &v in order {
            if !region.contains(v) || blocked.contains(v) {
                continue;
            }
            chosen.insert(v);
            blocked.insert(v);
            for (b, r) in blocked.words_mut().iter_mut().zip(self.row(v)) {
                *b |= r;
            }
        }
        chosen
    }

    // ------------------------------------------------------------------
    // Edge-list file format
    // ------------------------------------------------------------------
    //
    // Canonical format: line 1 is `n m`; then m lines `u v` with
    // 0 <= u < v < n, whitespace-separated. Lines starting with `#` are
    // comments. The writer emits edges sorted lexicographically.

    /// Serializes the graph in the canonical edge-list format.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        let edges = self.edges();
        writeln!(out, "{} {}", self.n, edges.len()).unwrap();
        for (u, v) in edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the canonical edge-list format.
    pub fn from_edge_list_str(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("empty graph file".to_string()))?;
        let mut parts = header.split_whitespace();
        let n: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::invalid(format!("bad header line {header:?}")))?;
        let m: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::invalid(format!("bad header line {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::invalid(format!(
                "trailing tokens in header {header:?}"
            )));
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut parts = line.split_whitespace();
            let u: u32 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad edge line {line:?}")))?;
            let v: u32 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad edge line {line:?}")))?;
            if parts.next().is_some() {
                return Err(Error::invalid(format!(
                    "trailing tokens in edge line {line:?}"
                )));
            }
            if u >= v {
                return Err(Error::invalid(format!("edge line {line:?} violates u < v")));
            }
            if v >= n {
                return Err(Error::invalid(format!(
                    "edge line {line:?} out of range for n={n}"
                )));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::invalid(format!(
                "header declares {m} edges but {} were given",
                edges.len()
            )));
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edge_list_string())?;
        Ok(())
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
        Graph::from_edge_list_str(&std::fs::read_to_string(path)?)
    }
}
