//! Randomized upper-bound witnesses and the iterated-greedy machinery.
//!
//! A witness is a `G(n,p)` graph at the prescribed edge probability whose
//! `(s,t)`-property is supported by sampled evidence (direct checks plus the
//! Turán edge-budget certificate) while its independence number stays small.
//! The second regime's pipeline is also exposed piecewise: edge-budget scans
//! against `2 s^2 p`, max-degree pruning to half order, per-vertex triangle
//! sparsity against `d^(2-gamma/2)`, and the triangle-aware independence
//! bound `0.1 (m/d)(ln d - 0.5 ln T)`.
//!
//! Everything is deterministic given the [`RngSpec`]: generation draws from
//! the spec's own stream, the property scan from sub-stream base `1<<32`,
//! the edge scan from base `2<<32`, and greedy iteration `i` from
//! sub-stream `i`. Solver caps are search-node budgets, never wall time, so
//! capped runs are reproducible too.

use crate::bitset::VertexSet;
use crate::bounds::{self, Constants, Thm4Regime};
use crate::exec::{self, Parallelism};
use crate::graph::Graph;
use crate::property::{self, CertificateScan, PropertyReport};
use crate::rng::RngSpec;
use crate::solver;
use crate::{combin, Error, Result};
use serde::{Deserialize, Serialize};

/// Sub-stream bases reserved by [`build_witness`].
const STREAM_PROPERTY: u64 = 1 << 32;
const STREAM_EDGE_SCAN: u64 = 2 << 32;

/// Default number of sampled subsets for witness verification.
pub const DEFAULT_WITNESS_SAMPLES: u64 = 10_000;
/// Default solver node budget: the nominal 60-second cap expressed as a
/// deterministic search-node count (5e6 nodes/second nominal).
pub const DEFAULT_SOLVER_NODES: u64 = 300_000_000;
/// Nominal solver speed used to translate a seconds cap into nodes.
pub const SOLVER_NODES_PER_SECOND: u64 = 5_000_000;

/// Which theorem's edge probability the witness uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Thm3,
    Thm4a,
    Thm4b,
}

/// Parameters of one witness construction.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub regime: Regime,
    pub constants: Constants,
    pub rng: RngSpec,
}

/// Verification budgets for [`build_witness`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerificationBudgets {
    pub samples: u64,
    pub solver_nodes: u64,
}

impl Default for VerificationBudgets {
    fn default() -> Self {
        VerificationBudgets {
            samples: DEFAULT_WITNESS_SAMPLES,
            solver_nodes: DEFAULT_SOLVER_NODES,
        }
    }
}

/// Exact value or bracket for the witness's independence number.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AlphaMeasurement {
    pub lower: u32,
    pub upper: u32,
    /// False when the solver budget ran out and only the bracket is known.
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TriangleCheck {
    pub d: f64,
    pub max_per_vertex: u64,
    /// `d^(2 - gamma/2)`.
    pub bound: f64,
    pub ok: bool,
}

/// Everything measured about one witness graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub config: WitnessConfig,
    pub p_used: f64,
    pub alpha: AlphaMeasurement,
    pub property_evidence: PropertyReport,
    /// The per-subset edge budget the scan enforced: `s^2/(2t) - s/2` for
    /// the first regime, `2 s^2 p` for the others.
    pub edge_budget: f64,
    pub edge_budget_failures: u64,
    pub triangle_check: Option<TriangleCheck>,
    /// Triangle-free subgraphs clamp the per-vertex count to 1 before the
    /// logarithm; recorded so the report is honest about it.
    pub triangles_clamped: Option<bool>,
    pub aks_value: Option<f64>,
    pub ub_formula_value: f64,
    /// `alpha.upper / ub_formula_value`; recorded, never asserted here.
    pub ratio: f64,
}

/// Generates the witness graph for the configured regime and verifies it:
/// a sampled property check, a sampled edge-budget scan, and an alpha
/// measurement (exact when the solver budget allows, a bracket otherwise).
/// The second regime also runs the prune/triangle/bound pipeline on the
/// subgraph induced by the first `s` vertices.
pub fn build_witness(
    config: &WitnessConfig,
    budgets: &VerificationBudgets,
    par: Parallelism,
) -> Result<(Graph, WitnessReport)> {
    let WitnessConfig {
        n, s, t, regime, ..
    } = *config;
    let consts = &config.constants;
    let (p, ub) = match regime {
        Regime::Thm3 => (
            bounds::thm3_p(n, s, t)?,
            bounds::thm3_ub(n, s, t, consts.c_thm3)?,
        ),
        Regime::Thm4a => (
            bounds::thm4_p(n, s, t, Thm4Regime::A, consts)?,
            bounds::thm4_ub(n, s, t, consts.c_thm4)?,
        ),
        Regime::Thm4b => (
            bounds::thm4_p(n, s, t, Thm4Regime::B, consts)?,
            bounds::thm4_ub(n, s, t, consts.c_thm4)?,
        ),
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "regime probability p = {p} falls outside [0,1]"
        )));
    }
    let g = Graph::gnp(n as u32, p, config.rng)?;

    let property_evidence = property::check_sampled(
        &g,
        s,
        t,
        budgets.samples,
        config.rng.substream(STREAM_PROPERTY),
        par,
    )?;

    let scan_rng = config.rng.substream(STREAM_EDGE_SCAN);
    let (edge_budget, edge_budget_failures) = match regime {
        Regime::Thm3 => {
            let cert = property::turan_certificate(
                &g,
                s,
                t,
                CertificateScan::Sampled {
                    samples: budgets.samples,
                    rng: scan_rng,
                },
                par,
            )?;
            let budget = (s * s) as f64 / (2.0 * t as f64) - s as f64 / 2.0;
            (budget, cert.failures_found)
        }
        Regime::Thm4a | Regime::Thm4b => {
            let budget = 2.0 * (s * s) as f64 * p;
            let scan = edge_budget_scan(
                &g,
                s,
                budget,
                ScanMode::Sampled {
                    samples: budgets.samples,
                    rng: scan_rng,
                },
                par,
            )?;
            (budget, scan.violations)
        }
    };

    let bracket = solver::independence_number_budgeted(&g, budgets.solver_nodes);
    let alpha = AlphaMeasurement {
        lower: bracket.lower,
        upper: bracket.upper,
        exact: bracket.exact,
    };

    let (triangle_check, triangles_clamped, aks_value) = match regime {
        Regime::Thm3 => (None, None, None),
        Regime::Thm4a | Regime::Thm4b => {
            let members: Vec<u32> = (0..s as u32).collect();
            let (h, _) = g.induced_subgraph(&VertexSet::from_members(g.n(), &members))?;
            let (h_prime, _, _) = degree_prune(&h, s.div_ceil(2))?;
            let d = 8.0 * s as f64 * p;
            let check = if d > 1.0 {
                Some(triangle_sparsity_check(&h_prime, d, consts.gamma)?)
            } else {
                None
            };
            let max_tri = h_prime.triangle_counts().into_iter().max().unwrap_or(0);
            let clamped = max_tri == 0;
            let aks = if d > 1.0 {
                Some(aks_bound(h_prime.n() as u64, d, max_tri.max(1) as f64)?)
            } else {
                None
            };
            (check, Some(clamped), aks)
        }
    };

    let report = WitnessReport {
        config: *config,
        p_used: p,
        alpha,
        property_evidence,
        edge_budget,
        edge_budget_failures,
        triangle_check,
        triangles_clamped,
        aks_value,
        ub_formula_value: ub,
        ratio: alpha.upper as f64 / ub,
    };
    Ok((g, report))
}

// ============================================================================
// Edge-budget scan
// ============================================================================

#[derive(Clone, Copy, Debug)]
pub enum ScanMode {
    Exhaustive { budget: u64 },
    Sampled { samples: u64, rng: RngSpec },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EdgeScan {
    pub violations: u64,
    pub max_edges_seen: u64,
    pub subsets_checked: u64,
}

/// Counts s-subsets whose induced edge count exceeds `budget`, and the
/// maximum induced edge count seen. Exhaustive mode scans every subset in
/// colex order; sampled mode draws one sub-stream per sample index.
pub fn edge_budget_scan(
    g: &Graph,
    s: u64,
    budget: f64,
    mode: ScanMode,
    par: Parallelism,
) -> Result<EdgeScan> {
    let n = g.n() as u64;
    if s > n || s == 0 {
        return Err(Error::invalid(format!(
            "requires 1 <= s <= n, got s={s} n={n}"
        )));
    }
    let count_edges = |members: &[u32]| -> u64 {
        let set = VertexSet::from_members(g.n(), members);
        g.induced_edge_count(&set)
    };
    match mode {
        ScanMode::Exhaustive {
            budget: scan_budget,
        } => {
            use crate::combin::{binomial, colex_next, colex_unrank};
            use num_traits::ToPrimitive;
            let total_big = binomial(n, s);
            let total = total_big
                .to_u64()
                .filter(|&c| c <= scan_budget)
                .ok_or_else(|| {
                    Error::budget(
                        format!("exhaustive edge scan of C({n},{s}) subsets"),
                        total_big.to_u128().unwrap_or(u128::MAX),
                        scan_budget as u128,
                    )
                })?;
            let ranges = exec::split_ranges(total, exec::default_chunks(par));
            let (violations, max_seen) = exec::map_reduce(
                par,
                ranges.len() as u64,
                (0u64, 0u64),
                |chunk| {
                    let (start, end) = ranges[chunk as usize];
                    let mut members = vec![0u32; s as usize];
                    colex_unrank(start, &mut members);
                    let mut violations = 0u64;
                    let mut max_seen = 0u64;
                    for rank in start..end {
                        let edges = count_edges(&members);
                        max_seen = max_seen.max(edges);
                        if edges as f64 > budget {
                            violations += 1;
                        }
                        if rank + 1 < end {
                            colex_next(&mut members, g.n());
                        }
                    }
                    (violations, max_seen)
                },
                |a, b| (a.0 + b.0, a.1.max(b.1)),
            );
            Ok(EdgeScan {
                violations,
                max_edges_seen: max_seen,
                subsets_checked: total,
            })
        }
        ScanMode::Sampled { samples, rng } => {
            if samples == 0 {
                return Err(Error::invalid("samples must be >= 1".to_string()));
            }
            let (violations, max_seen) = exec::map_reduce(
                par,
                samples,
                (0u64, 0u64),
                |i| {
                    let mut sample_rng = rng.substream(i).rng();
                    let mut members = Vec::with_capacity(s as usize);
                    combin::sample_subset(&mut sample_rng, g.n(), s as u32, &mut members);
                    let edges = count_edges(&members);
                    (u64::from(edges as f64 > budget), edges)
                },
                |a, b| (a.0 + b.0, a.1.max(b.1)),
            );
            Ok(EdgeScan {
                violations,
                max_edges_seen: max_seen,
                subsets_checked: samples,
            })
        }
    }
}

// ============================================================================
// Degree pruning
// ============================================================================

/// Repeatedly deletes a vertex of maximum degree (lowest label on ties)
/// until `target_order` vertices remain. Returns the pruned graph, the
/// old-label map, and the pruned graph's maximum degree.
pub fn degree_prune(h: &Graph, target_order: u64) -> Result<(Graph, Vec<u32>, u32)> {
    let n = h.n() as u64;
    if target_order > n {
        return Err(Error::invalid(format!(
            "target order {target_order} exceeds graph order {n}"
        )));
    }
    let mut region = VertexSet::full(h.n());
    let mut deg: Vec<u32> = (0..h.n()).map(|v| h.degree(v)).collect();
    for _ in 0..(n - target_order) {
        let worst = region
            .iter()
            .max_by_key(|&v| (deg[v as usize], std::cmp::Reverse(v)))
            .expect("region is nonempty while pruning");
        region.remove(worst);
        for u in h.neighbors_in(worst, &region).iter() {
            deg[u as usize] -= 1;
        }
    }
    let (pruned, map) = h.induced_subgraph(&region)?;
    let max_degree = (0..pruned.n()).map(|v| pruned.degree(v)).max().unwrap_or(0);
    Ok((pruned, map, max_degree))
}

// ============================================================================
// Triangle sparsity and the triangle-aware independence bound
// ============================================================================

/// Compares per-vertex triangle counts against `d^(2 - gamma/2)`.
pub fn triangle_sparsity_check(h: &Graph, d: f64, gamma: f64) -> Result<TriangleCheck> {
    if d <= 1.0 {
        return Err(Error::invalid(format!("requires d > 1, got d={d}")));
    }
    let max_per_vertex = h.triangle_counts().into_iter().max().unwrap_or(0);
    let bound = d.powf(2.0 - gamma / 2.0);
    Ok(TriangleCheck {
        d,
        max_per_vertex,
        bound,
        ok: max_per_vertex as f64 <= bound,
    })
}

/// The triangle-aware independence bound
/// `0.1 (order/d) (ln d - 0.5 ln triangles_per_vertex)`.
///
/// May be negative; callers read a nonpositive value as "no guarantee".
/// Triangle-free callers clamp the count to 1 (and flag it) since the
/// logarithm is undefined at 0.
pub fn aks_bound(order: u64, d: f64, triangles_per_vertex: f64) -> Result<f64> {
    if d <= 1.0 {
        return Err(Error::invalid(format!("requires d > 1, got d={d}")));
    }
    if triangles_per_vertex < 1.0 {
        return Err(Error::invalid(format!(
            "requires triangles_per_vertex >= 1, got {triangles_per_vertex}; clamp 0 to 1"
        )));
    }
    Ok(0.1 * (order as f64 / d) * (d.ln() - 0.5 * triangles_per_vertex.ln()))
}

// ============================================================================
// Iterated greedy
// ============================================================================

/// Trace of the iterated greedy procedure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IteratedGreedy {
    pub found: bool,
    pub iterations: u64,
    /// The maximal independent sets found, one per iteration.
    pub sets: Vec<VertexSet>,
    pub remaining_at_stop: u64,
    pub target: u64,
}

/// Runs the greedy maximal-independent-set construction on the remaining
/// vertices in a fresh random order each iteration (sub-stream `i` of the
/// spec for iteration `i`, zero-based). Stops with `found = true` as soon
/// as an iteration produces at least `k` vertices, deletes the found set
/// and retries otherwise, and gives up once fewer than half the original
/// vertices remain.
pub fn iterated_greedy(g: &Graph, k: u64, rng: RngSpec) -> Result<IteratedGreedy> {
    if k == 0 {
        return Err(Error::invalid("requires k >= 1".to_string()));
    }
    let n = g.n() as u64;
    let mut remaining = VertexSet::full(g.n());
    let mut sets = Vec::new();
    let mut found = false;
    let mut iteration = 0u64;
    while 2 * (remaining.len() as u64) >= n && !remaining.is_empty() {
        let mut order: Vec<u32> = (0..g.n()).collect();
        shuffle(&mut order, rng.substream(iteration));
        let set = g.greedy_mis_in(&order, &remaining);
        iteration += 1;
        let hit = set.len() as u64 >= k;
        remaining.subtract(&set);
        sets.push(set);
        if hit {
            found = true;
            break;
        }
    }
    Ok(IteratedGreedy {
        found,
        iterations: iteration,
        sets,
        remaining_at_stop: remaining.len() as u64,
        target: k,
    })
}

/// Fisher–Yates with draws from the given spec.
fn shuffle(items: &mut [u32], spec: RngSpec) {
    use rand::Rng;
    let mut rng = spec.rng();
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

// ============================================================================
// Lemma: failure probability of the iterated greedy
// ============================================================================

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LemmaBound {
    /// The greedy target `k = (epsilon/p) ln(sp)`.
    pub k: f64,
    /// `ln` of the failure bound `e^{-s (sp)^{1 - 3 eps/2}}`; kept in log
    /// space because the bound underflows any float for interesting sizes.
    pub log_failure_bound: f64,
    /// `ln` of the per-set maximality probability `(1-(1-p)^k)^{s/2}`,
    /// exposed for comparison against observed maximal-set statistics.
    pub log_maximality_prob: f64,
}

/// Evaluates the lemma's failure bound at `(s, p, epsilon)`.
pub fn lemma_failure_bound(s: u64, p: f64, epsilon: f64) -> Result<LemmaBound> {
    let sp = s as f64 * p;
    if sp <= 1.0 {
        return Err(Error::invalid(format!("requires sp > 1, got sp={sp}")));
    }
    if !(0.0 < epsilon && epsilon < 2.0 / 3.0) {
        return Err(Error::invalid(format!(
            "requires 0 < epsilon < 2/3, got {epsilon}"
        )));
    }
    let k = (epsilon / p) * sp.ln();
    let log_failure_bound = -(s as f64) * sp.powf(1.0 - 1.5 * epsilon);
    // (1-p)^k in log space, then log(1 - that) via ln_1p
    let log_q_pow_k = k * (-p).ln_1p();
    let log_maximality_prob = (s as f64 / 2.0) * (-log_q_pow_k.exp()).ln_1p();
    Ok(LemmaBound {
        k,
        log_failure_bound,
        log_maximality_prob,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::property::Verdict;

    const EPS: f64 = 1e-9;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= EPS * b.abs().max(1.0)
    }

    // ------------------------------------------------------------------
    // edge_budget_scan
    // ------------------------------------------------------------------

    #[test]
    fn edge_scan_on_empty_graph() {
        let g = Graph::empty(10);
        let scan = edge_budget_scan(
            &g,
            4,
            3.0,
            ScanMode::Exhaustive { budget: 1_000_000 },
            Parallelism::auto(),
        )
        .unwrap();
        assert_eq!(scan.violations, 0);
        assert_eq!(scan.max_edges_seen, 0);
        assert_eq!(scan.subsets_checked, 210);
    }

    #[test]
    fn edge_scan_on_complete_graph_violates_everywhere() {
        let g = Graph::complete(8);
        let scan = edge_budget_scan(
            &g,
            4,
            5.0,
            ScanMode::Exhaustive { budget: 1_000_000 },
            Parallelism::auto(),
        )
        .unwrap();
        assert_eq!(scan.violations, 70); // C(8,4), every subset spans C(4,2)=6 > 5
        assert_eq!(scan.max_edges_seen, 6);
    }

    #[test]
    fn clean_edge_scan_agrees_with_turan_certificate() {
        // an exhaustive scan at the certificate's budget with zero
        // violations must coincide with certificate_holds, and vice versa
        use crate::property::{turan_certificate, CertificateScan, Verdict};
        for seed in 0..40u64 {
            let g = Graph::gnp(9, 0.1 + 0.07 * (seed % 8) as f64, RngSpec::new(seed)).unwrap();
            let (s, t) = (5u64, 2u64);
            let budget = (s * s) as f64 / (2.0 * t as f64) - s as f64 / 2.0;
            let scan = edge_budget_scan(
                &g,
                s,
                budget,
                ScanMode::Exhaustive { budget: 1_000_000 },
                Parallelism::auto(),
            )
            .unwrap();
            let cert = turan_certificate(
                &g,
                s,
                t,
                CertificateScan::Exhaustive { budget: 1_000_000 },
                Parallelism::auto(),
            )
            .unwrap();
            assert_eq!(
                scan.violations == 0,
                cert.verdict == Verdict::CertificateHolds,
                "seed {seed}: scan saw {} violations but certificate said {:?}",
                scan.violations,
                cert.verdict
            );
        }
    }

    #[test]
    fn sampled_edge_scan_is_deterministic() {
        let g = Graph::gnp(50, 0.3, RngSpec::new(8)).unwrap();
        let run = |par| {
            edge_budget_scan(
                &g,
                10,
                10.0,
                ScanMode::Sampled {
                    samples: 300,
                    rng: RngSpec::new(77),
                },
                par,
            )
            .unwrap()
        };
        let a = run(Parallelism::sequential());
        let b = run(Parallelism::auto());
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.max_edges_seen, b.max_edges_seen);
    }

    // ------------------------------------------------------------------
    // degree_prune
    // ------------------------------------------------------------------

    #[test]
    fn prune_empty_graph() {
        let g = Graph::empty(10);
        let (pruned, _, maxdeg) = degree_prune(&g, 4).unwrap();
        assert_eq!(pruned.n(), 4);
        assert_eq!(maxdeg, 0);
    }

    #[test]
    fn prune_star_removes_center_first() {
        // K_{1,9}: center 0 has degree 9, leaves degree 1
        let edges: Vec<(u32, u32)> = (1..10).map(|v| (0, v)).collect();
        let g = Graph::from_edge_list(10, &edges).unwrap();
        let (pruned, map, maxdeg) = degree_prune(&g, 5).unwrap();
        assert_eq!(pruned.n(), 5);
        assert_eq!(
            maxdeg, 0,
            "residual must be edgeless once the center is gone"
        );
        assert!(!map.contains(&0));
    }

    #[test]
    fn prune_never_increases_max_degree() {
        for seed in 0..20u64 {
            let g = Graph::gnp(64, 0.2, RngSpec::new(seed)).unwrap();
            let before = (0..64).map(|v| g.degree(v)).max().unwrap();
            let (pruned, _, after) = degree_prune(&g, 32).unwrap();
            assert_eq!(pruned.n(), 32);
            assert!(after <= before, "seed {seed}");
        }
    }

    #[test]
    fn prune_respects_edge_budget_arithmetic() {
        // if H spans at most E edges, pruning to m vertices leaves max
        // degree at most E/m: each removed vertex had degree >= the final
        // max degree, and those degrees sum to at most E.
        for seed in 0..10u64 {
            let g = Graph::gnp(60, 0.15, RngSpec::new(seed)).unwrap();
            let edges = g.edge_count();
            let (pruned, _, maxdeg) = degree_prune(&g, 30).unwrap();
            assert!(
                (maxdeg as u64) * 30 <= 2 * edges,
                "seed {seed}: degree {maxdeg} too large for {edges} edges"
            );
            let _ = pruned;
        }
    }

    #[test]
    fn prune_rejects_oversized_target() {
        assert!(degree_prune(&Graph::empty(5), 6).is_err());
    }

    // ------------------------------------------------------------------
    // triangle sparsity + aks bound
    // ------------------------------------------------------------------

    #[test]
    fn triangle_check_on_known_graphs() {
        // triangle-free
        let c5 = Graph::cycle(5);
        let ok = triangle_sparsity_check(&c5, 3.0, 2.0).unwrap();
        assert!(ok.ok);
        assert_eq!(ok.max_per_vertex, 0);

        // K4 at d=3, gamma=2: bound = 3^1 = 3, counts are exactly 3
        let k4 = Graph::complete(4);
        let check = triangle_sparsity_check(&k4, 3.0, 2.0).unwrap();
        assert!(close(check.bound, 3.0));
        assert_eq!(check.max_per_vertex, 3);
        assert!(check.ok);

        // K5: 6 triangles per vertex > 3
        let k5 = Graph::complete(5);
        let check = triangle_sparsity_check(&k5, 3.0, 2.0).unwrap();
        assert_eq!(check.max_per_vertex, 6);
        assert!(!check.ok);

        assert!(triangle_sparsity_check(&k4, 0.5, 2.0).is_err());
    }

    #[test]
    fn aks_bound_frozen_values() {
        let e2 = std::f64::consts::E.powi(2);
        let v = aks_bound(100, e2, 1.0).unwrap();
        assert!(close(v, 2.7067056647322545), "{v}");
        // triangles = d^2 cancels the logarithm entirely
        let v0 = aks_bound(50, 7.0, 49.0).unwrap();
        assert!(v0.abs() < 1e-12);
        assert!(aks_bound(10, 0.9, 1.0).is_err());
        assert!(aks_bound(10, 3.0, 0.0).is_err());
    }

    #[test]
    fn aks_bound_algebraic_identity_at_sparsity_threshold() {
        // with T = d^(2-gamma/2) the logs collapse: the bound equals
        // (gamma/40)(order/d) ln d, i.e. (gamma s / 80 d) ln d at order s/2
        for (order, d, gamma) in [(100u64, 7.3f64, 0.5f64), (512, 8.87, 0.5), (64, 2.5, 1.0)] {
            let t = d.powf(2.0 - gamma / 2.0);
            let lhs = aks_bound(order, d, t).unwrap();
            let rhs = (gamma / 40.0) * (order as f64 / d) * d.ln();
            let s = 2 * order;
            let paper_form = (gamma * s as f64 / (80.0 * d)) * d.ln();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0),
                "identity failed at ({order},{d},{gamma}): {lhs} vs {rhs}"
            );
            assert!((lhs - paper_form).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }

    // ------------------------------------------------------------------
    // iterated greedy
    // ------------------------------------------------------------------

    #[test]
    fn greedy_on_empty_graph_finds_immediately() {
        let g = Graph::empty(30);
        let r = iterated_greedy(&g, 30, RngSpec::new(1)).unwrap();
        assert!(r.found);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.sets[0].len(), 30);
    }

    #[test]
    fn greedy_on_complete_graph_never_finds() {
        let g = Graph::complete(20);
        let r = iterated_greedy(&g, 2, RngSpec::new(3)).unwrap();
        assert!(!r.found);
        // each iteration removes exactly one vertex until half are gone
        assert_eq!(r.iterations, 11);
        assert!(r.remaining_at_stop < 10);
        for set in &r.sets {
            assert_eq!(set.len(), 1);
        }
    }

    #[test]
    fn greedy_failure_iteration_count_floor() {
        // when found = false every failed set has < k vertices, so the
        // iteration count is at least n/(2k)
        for seed in 0..10u64 {
            let g = Graph::gnp(60, 0.5, RngSpec::new(seed)).unwrap();
            let k = 40;
            let r = iterated_greedy(&g, k, RngSpec::new(seed + 100)).unwrap();
            if !r.found {
                assert!(r.iterations >= 60 / (2 * k), "seed {seed}");
                for set in &r.sets {
                    assert!((set.len() as u64) < k);
                    assert!(g.is_independent(set));
                }
            }
        }
    }

    #[test]
    fn greedy_sets_are_disjoint_and_independent() {
        let g = Graph::gnp(100, 0.3, RngSpec::new(4)).unwrap();
        let r = iterated_greedy(&g, 50, RngSpec::new(5)).unwrap();
        for (i, a) in r.sets.iter().enumerate() {
            assert!(g.is_independent(a));
            for b in &r.sets[i + 1..] {
                assert!(a.is_disjoint(b));
            }
        }
    }

    #[test]
    fn greedy_is_seed_deterministic() {
        let g = Graph::gnp(80, 0.2, RngSpec::new(6)).unwrap();
        let a = iterated_greedy(&g, 25, RngSpec::new(7)).unwrap();
        let b = iterated_greedy(&g, 25, RngSpec::new(7)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    // ------------------------------------------------------------------
    // lemma bound
    // ------------------------------------------------------------------

    #[test]
    fn lemma_frozen_values() {
        let b = lemma_failure_bound(2000, 0.01, 0.5).unwrap();
        assert!(close(b.k, 149.78661367769953), "{}", b.k);
        assert!(
            close(b.log_failure_bound, -4229.485053762256),
            "{}",
            b.log_failure_bound
        );
        assert!(b.log_maximality_prob < 0.0);
    }

    #[test]
    fn lemma_epsilon_limit_and_monotonicity() {
        // epsilon -> 2/3 sends the exponent to (sp)^0 = 1: log bound -> -s
        let b = lemma_failure_bound(500, 0.01, 0.666666).unwrap();
        assert!((b.log_failure_bound + 500.0).abs() < 0.1);
        // decreasing in s for fixed p, eps
        let mut prev = 0.0;
        for s in [200u64, 400, 800, 1600] {
            let b = lemma_failure_bound(s, 0.01, 0.5).unwrap();
            assert!(b.log_failure_bound < prev);
            prev = b.log_failure_bound;
        }
        assert!(lemma_failure_bound(50, 0.01, 0.5).is_err()); // sp <= 1
        assert!(lemma_failure_bound(2000, 0.01, 0.7).is_err()); // eps >= 2/3
    }

    // ------------------------------------------------------------------
    // build_witness
    // ------------------------------------------------------------------

    #[test]
    fn witness_p_zero_override_shape() {
        // tiny instance: the regime formulas stay in range and the report
        // is internally consistent
        let config = WitnessConfig {
            n: 128,
            s: 16,
            t: 4,
            regime: Regime::Thm3,
            constants: Constants::default(),
            rng: RngSpec::new(7),
        };
        let budgets = VerificationBudgets {
            samples: 200,
            solver_nodes: 10_000_000,
        };
        let (g, report) = build_witness(&config, &budgets, Parallelism::auto()).unwrap();
        assert_eq!(g.n(), 128);
        assert!(report.p_used > 0.0 && report.p_used < 1.0);
        assert!(report.alpha.lower <= report.alpha.upper);
        assert!(report.ub_formula_value > 0.0);
        assert!(close(
            report.ratio,
            report.alpha.upper as f64 / report.ub_formula_value
        ));
        assert!(report.triangle_check.is_none());
        assert_eq!(report.property_evidence.subsets_checked, 200);
    }

    #[test]
    fn witness_determinism_across_thread_counts() {
        let config = WitnessConfig {
            n: 96,
            s: 12,
            t: 3,
            regime: Regime::Thm4a,
            constants: Constants::default(),
            rng: RngSpec::new(11),
        };
        let budgets = VerificationBudgets {
            samples: 150,
            solver_nodes: 10_000_000,
        };
        let (ga, ra) = build_witness(&config, &budgets, Parallelism::sequential()).unwrap();
        let (gb, rb) = build_witness(&config, &budgets, Parallelism::auto()).unwrap();
        assert_eq!(ga, gb);
        assert_eq!(
            serde_json::to_string(&ra).unwrap(),
            serde_json::to_string(&rb).unwrap()
        );
    }

    #[test]
    fn witness_thm4_pipeline_fields_present() {
        let config = WitnessConfig {
            n: 256,
            s: 64,
            t: 4,
            regime: Regime::Thm4b,
            constants: Constants {
                gamma: 0.5,
                ..Constants::default()
            },
            rng: RngSpec::new(13),
        };
        let budgets = VerificationBudgets {
            samples: 100,
            solver_nodes: 50_000_000,
        };
        let (_, report) = build_witness(&config, &budgets, Parallelism::auto()).unwrap();
        // d = 8sp may or may not exceed 1 here; the report stays coherent
        if let Some(check) = &report.triangle_check {
            assert!(check.d > 1.0);
            assert!(check.bound > 0.0);
        }
        assert!(report.edge_budget > 0.0);
        if report.property_evidence.verdict == Verdict::Fails {
            assert!(report.property_evidence.failures_found > 0);
        }
    }
}
