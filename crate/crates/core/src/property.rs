//! Deciding the `(s,t)`-property: does every induced subgraph on `s`
//! vertices contain an independent set of size `t`?
//!
//! Three modes:
//! - exhaustive: scan all C(n,s) subsets in colexicographic order;
//! - sampled: Monte Carlo over uniform s-subsets, one RNG sub-stream per
//!   sample index (so the drawn subsets do not depend on thread count);
//! - Turán certificate: check the sufficient edge-budget condition
//!   `edges(S) <= s^2/(2t) - s/2`, which forces average degree <= s/t - 1
//!   and hence an independent set of size >= t by Turán's theorem.
//!
//! Sampling never returns `holds` (it cannot prove a universal statement),
//! and a subset over the Turán budget makes the certificate `inconclusive`,
//! not `fails`: the condition is sufficient, not necessary.

use crate::bitset::VertexSet;
use crate::combin::{self, binomial, colex_next, colex_unrank};
use crate::exec::{self, Parallelism};
use crate::graph::Graph;
use crate::rng::RngSpec;
use crate::small;
use crate::{Error, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Default cap on exhaustive subset enumeration.
pub const DEFAULT_SUBSET_BUDGET: u64 = 100_000_000;

/// The (n, s, t) parameters. Validity here is only the set-theoretic
/// convention `1 <= t < s <= n`; theorem-specific hypotheses (like
/// `2t <= s < n/2`) are checked by the operations that need them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamTriple {
    pub n: u64,
    pub s: u64,
    pub t: u64,
}

impl ParamTriple {
    pub fn new(n: u64, s: u64, t: u64) -> Result<Self> {
        if !(1 <= t && t < s && s <= n) {
            return Err(Error::invalid(format!(
                "parameters must satisfy 1 <= t < s <= n, got n={n} s={s} t={t}"
            )));
        }
        Ok(ParamTriple { n, s, t })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled,
    TuranCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    CertificateHolds,
    Inconclusive,
}

/// Outcome of a property check. Serializes to exactly
/// `{mode, verdict, counterexample, subsets_checked, failures_found, seed}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropertyReport {
    pub mode: Mode,
    pub verdict: Verdict,
    /// An s-subset whose induced subgraph has alpha < t, when `verdict` is
    /// `fails`; `null` otherwise.
    pub counterexample: Option<VertexSet>,
    pub subsets_checked: u64,
    pub failures_found: u64,
    /// Master seed of the sampling stream; `null` for exhaustive scans.
    pub seed: Option<u64>,
}

// ============================================================================
// Subset testers
// ============================================================================

/// Whether the subgraph induced on `members` has an independent set of size
/// `t`. `rows64` must be the full single-word adjacency when n <= 64.
fn members_alpha_at_least(g: &Graph, rows64: Option<&[u64]>, members: &[u32], t: u32) -> bool {
    if let Some(rows) = rows64 {
        let mut mask = 0u64;
        for &v in members {
            mask |= 1 << v;
        }
        small::alpha_at_least(rows, mask, t)
    } else {
        let rows = small::induced_rows(g, members);
        let mask = if members.len() == 64 {
            !0
        } else {
            (1u64 << members.len()) - 1
        };
        small::alpha_at_least(&rows, mask, t)
    }
}

fn members_edge_count(g: &Graph, rows64: Option<&[u64]>, members: &[u32]) -> u64 {
    if let Some(rows) = rows64 {
        let mut mask = 0u64;
        for &v in members {
            mask |= 1 << v;
        }
        let mut twice = 0u64;
        for &v in members {
            twice += (rows[v as usize] & mask).count_ones() as u64;
        }
        twice / 2
    } else {
        let mut count = 0u64;
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                count += u64::from(g.has_edge(u, v));
            }
        }
        count
    }
}

/// Full single-word adjacency rows when the graph fits in one word.
fn rows64_of(g: &Graph) -> Option<Vec<u64>> {
    if g.n() > 64 {
        return None;
    }
    Some((0..g.n()).map(|v| g.row(v)[0]).collect())
}

// ============================================================================
// Exhaustive scan driver
// ============================================================================

struct ScanHit {
    rank: u64,
    members: Vec<u32>,
}

fn checked_total(n: u64, s: u64, budget: u64) -> Result<u64> {
    let total_big = binomial(n, s);
    total_big.to_u64().filter(|&c| c <= budget).ok_or_else(|| {
        Error::budget(
            format!("exhaustive scan of C({n},{s}) subsets"),
            total_big.to_u128().unwrap_or(u128::MAX),
            budget as u128,
        )
    })
}

fn merge_first_hit<T>(a: Option<(u64, T)>, b: Option<(u64, T)>) -> Option<(u64, T)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Gosper's hack: the next larger integer with the same popcount. For
/// fixed-size subsets of `0..n-1` this walks exactly the colex order.
#[inline(always)]
fn next_same_popcount(mask: u64) -> u64 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

/// Scans all s-subsets in colex order, returning the first (lowest-rank)
/// subset failing `ok` plus the scan size. Chunks are merged by minimum
/// rank, so the winner is identical for every thread count. Graphs on at
/// most 64 vertices take an allocation-free single-word path.
fn scan_subsets<F, G2>(
    g: &Graph,
    s: u64,
    budget: u64,
    par: Parallelism,
    ok: F,
    ok_mask: Option<G2>,
) -> Result<(Option<ScanHit>, u64)>
where
    F: Fn(&[u32]) -> bool + Sync + Send,
    G2: Fn(u64) -> bool + Sync + Send,
{
    let n = g.n() as u64;
    let total = checked_total(n, s, budget)?;
    let ranges = exec::split_ranges(total, exec::default_chunks(par));

    if let Some(ok_mask) = ok_mask.filter(|_| n <= 64) {
        let hit = exec::map_reduce(
            par,
            ranges.len() as u64,
            None::<(u64, u64)>,
            |chunk| {
                let (start, end) = ranges[chunk as usize];
                let mut members = vec![0u32; s as usize];
                colex_unrank(start, &mut members);
                let mut mask = 0u64;
                for &v in &members {
                    mask |= 1 << v;
                }
                for rank in start..end {
                    if !ok_mask(mask) {
                        return Some((rank, mask));
                    }
                    mask = next_same_popcount(mask);
                }
                None
            },
            merge_first_hit,
        );
        return Ok((
            hit.map(|(rank, mask)| ScanHit {
                rank,
                members: (0..64).filter(|&v| mask >> v & 1 == 1).collect(),
            }),
            total,
        ));
    }

    let hit = exec::map_reduce(
        par,
        ranges.len() as u64,
        None::<(u64, Vec<u32>)>,
        |chunk| {
            let (start, end) = ranges[chunk as usize];
            let mut members = vec![0u32; s as usize];
            colex_unrank(start, &mut members);
            let mut rank = start;
            loop {
                if !ok(&members) {
                    return Some((rank, members));
                }
                rank += 1;
                if rank >= end {
                    return None;
                }
                let advanced = colex_next(&mut members, g.n());
                debug_assert!(advanced);
            }
        },
        merge_first_hit,
    );
    Ok((hit.map(|(rank, members)| ScanHit { rank, members }), total))
}

// ============================================================================
// Operations
// ============================================================================

/// Exhaustively decides the property by scanning every s-subset.
///
/// Refuses (rather than silently sampling) when C(n,s) exceeds `budget`.
/// On failure the counterexample is the first failing subset in colex
/// order and `subsets_checked` counts the scan up to and including it.
pub fn check_exhaustive(
    g: &Graph,
    s: u64,
    t: u64,
    budget: u64,
    par: Parallelism,
) -> Result<PropertyReport> {
    ParamTriple::new(g.n() as u64, s, t)?;
    let rows64 = rows64_of(g);
    let (hit, total) = scan_subsets(
        g,
        s,
        budget,
        par,
        |members| members_alpha_at_least(g, rows64.as_deref(), members, t as u32),
        rows64
            .as_deref()
            .map(|rows| move |mask: u64| small::alpha_at_least(rows, mask, t as u32)),
    )?;
    Ok(match hit {
        Some(hit) => PropertyReport {
            mode: Mode::Exhaustive,
            verdict: Verdict::Fails,
            counterexample: Some(VertexSet::from_members(g.n(), &hit.members)),
            subsets_checked: hit.rank + 1,
            failures_found: 1,
            seed: None,
        },
        None => PropertyReport {
            mode: Mode::Exhaustive,
            verdict: Verdict::Holds,
            counterexample: None,
            subsets_checked: total,
            failures_found: 0,
            seed: None,
        },
    })
}

/// Monte Carlo check: draws `samples` uniform s-subsets (with replacement)
/// and tests each. Sample `i` uses sub-stream `rng.substream(i)`, so the
/// drawn subsets are a pure function of the spec.
///
/// Returns `fails` with the lowest-index failing sample as counterexample,
/// or `inconclusive` — never `holds`, since sampling cannot prove the
/// universal statement.
pub fn check_sampled(
    g: &Graph,
    s: u64,
    t: u64,
    samples: u64,
    rng: RngSpec,
    par: Parallelism,
) -> Result<PropertyReport> {
    ParamTriple::new(g.n() as u64, s, t)?;
    if samples == 0 {
        return Err(Error::invalid("samples must be >= 1".to_string()));
    }
    let rows64 = rows64_of(g);
    let (failures, first) = exec::map_reduce(
        par,
        samples,
        (0u64, None::<(u64, Vec<u32>)>),
        |i| {
            let mut sample_rng = rng.substream(i).rng();
            let mut members = Vec::with_capacity(s as usize);
            combin::sample_subset(&mut sample_rng, g.n(), s as u32, &mut members);
            if members_alpha_at_least(g, rows64.as_deref(), &members, t as u32) {
                (0, None)
            } else {
                (1, Some((i, members)))
            }
        },
        |(ca, fa), (cb, fb)| {
            let first = match (fa, fb) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, None) => x,
                (None, y) => y,
            };
            (ca + cb, first)
        },
    );
    Ok(PropertyReport {
        mode: Mode::Sampled,
        verdict: if failures > 0 {
            Verdict::Fails
        } else {
            Verdict::Inconclusive
        },
        counterexample: first.map(|(_, members)| VertexSet::from_members(g.n(), &members)),
        subsets_checked: samples,
        failures_found: failures,
        seed: Some(rng.master_seed),
    })
}

/// How [`turan_certificate`] should scan subsets.
#[derive(Clone, Copy, Debug)]
pub enum CertificateScan {
    Exhaustive { budget: u64 },
    Sampled { samples: u64, rng: RngSpec },
}

/// The exact integer form of `edges <= s^2/(2t) - s/2`: both sides times 2t.
///
/// The budget equals `s(s-t)/(2t)`, which may be fractional; an integer edge
/// count passes iff it is at most the floor, and `2t*edges <= s(s-t)` is
/// that comparison without any rounding.
#[inline]
pub fn within_turan_budget(edges: u64, s: u64, t: u64) -> bool {
    2 * (t as u128) * (edges as u128) <= (s as u128) * ((s - t) as u128)
}

/// Checks the sufficient Turán condition: every scanned s-subset spans at
/// most `s^2/(2t) - s/2` edges. If all scanned subsets pass, average degree
/// is at most `s/t - 1` in each and Turán guarantees an independent set of
/// size `t`, so the verdict is `certificate_holds`. A subset over budget
/// makes the certificate `inconclusive` — it does NOT witness a property
/// failure. A non-null `seed` in the report marks a sampled scan.
pub fn turan_certificate(
    g: &Graph,
    s: u64,
    t: u64,
    scan: CertificateScan,
    par: Parallelism,
) -> Result<PropertyReport> {
    ParamTriple::new(g.n() as u64, s, t)?;
    let rows64 = rows64_of(g);
    let within = |members: &[u32]| {
        within_turan_budget(members_edge_count(g, rows64.as_deref(), members), s, t)
    };
    match scan {
        CertificateScan::Exhaustive { budget } => {
            let within_mask = rows64.as_deref().map(|rows| {
                move |mask: u64| {
                    let mut twice = 0u64;
                    let mut bits = mask;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        twice += (rows[v] & mask).count_ones() as u64;
                    }
                    within_turan_budget(twice / 2, s, t)
                }
            });
            let (hit, total) = scan_subsets(g, s, budget, par, within, within_mask)?;
            Ok(match hit {
                Some(hit) => PropertyReport {
                    mode: Mode::TuranCertificate,
                    verdict: Verdict::Inconclusive,
                    counterexample: None,
                    subsets_checked: hit.rank + 1,
                    failures_found: 1,
                    seed: None,
                },
                None => PropertyReport {
                    mode: Mode::TuranCertificate,
                    verdict: Verdict::CertificateHolds,
                    counterexample: None,
                    subsets_checked: total,
                    failures_found: 0,
                    seed: None,
                },
            })
        }
        CertificateScan::Sampled { samples, rng } => {
            if samples == 0 {
                return Err(Error::invalid("samples must be >= 1".to_string()));
            }
            let over = exec::map_reduce(
                par,
                samples,
                0u64,
                |i| {
                    let mut sample_rng = rng.substream(i).rng();
                    let mut members = Vec::with_capacity(s as usize);
                    combin::sample_subset(&mut sample_rng, g.n(), s as u32, &mut members);
                    u64::from(!within(&members))
                },
                |a, b| a + b,
            );
            Ok(PropertyReport {
                mode: Mode::TuranCertificate,
                verdict: if over == 0 {
                    Verdict::CertificateHolds
                } else {
                    Verdict::Inconclusive
                },
                counterexample: None,
                subsets_checked: samples,
                failures_found: over,
                seed: Some(rng.master_seed),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver;

    fn par() -> Parallelism {
        Parallelism::auto()
    }

    #[test]
    fn empty_graph_holds() {
        let g = Graph::empty(6);
        let r = check_exhaustive(&g, 4, 3, DEFAULT_SUBSET_BUDGET, par()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.subsets_checked, 15); // C(6,4)
        assert_eq!(r.failures_found, 0);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn complete_graph_fails_with_first_colex_counterexample() {
        let g = Graph::complete(6);
        let r = check_exhaustive(&g, 4, 2, DEFAULT_SUBSET_BUDGET, par()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        let ce = r.counterexample.clone().unwrap();
        assert_eq!(ce.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(r.subsets_checked, 1);
        assert_eq!(r.failures_found, 1);
        // soundness: the counterexample really has alpha < t
        let (sub, _) = g.induced_subgraph(&ce).unwrap();
        assert!(solver::independence_number(&sub).0 < 2);
    }

    #[test]
    fn c5_holds_for_s4_t2() {
        let r = check_exhaustive(&Graph::cycle(5), 4, 2, DEFAULT_SUBSET_BUDGET, par()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.subsets_checked, 5);
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let g = Graph::empty(30);
        let err = check_exhaustive(&g, 15, 2, 1000, par()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn invalid_params_rejected() {
        let g = Graph::empty(5);
        assert!(check_exhaustive(&g, 6, 2, 100, par()).is_err()); // s > n
        assert!(check_exhaustive(&g, 3, 3, 100, par()).is_err()); // t = s
        assert!(check_exhaustive(&g, 3, 0, 100, par()).is_err()); // t = 0
    }

    #[test]
    fn sampled_on_clique_fails_immediately() {
        let g = Graph::complete(20);
        let r = check_sampled(&g, 5, 2, 10, RngSpec::new(1), par()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.subsets_checked, 10);
        assert_eq!(r.failures_found, 10);
        assert_eq!(r.seed, Some(1));
        let ce = r.counterexample.unwrap();
        assert_eq!(ce.len(), 5);
    }

    #[test]
    fn sampled_on_empty_graph_is_inconclusive() {
        let g = Graph::empty(12);
        let r = check_sampled(&g, 5, 3, 50, RngSpec::new(2), par()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.failures_found, 0);
    }

    #[test]
    fn sampled_is_thread_count_invariant() {
        let g = Graph::gnp(40, 0.6, RngSpec::new(5)).unwrap();
        let a = check_sampled(&g, 6, 3, 500, RngSpec::new(9), Parallelism::sequential()).unwrap();
        let b = check_sampled(&g, 6, 3, 500, RngSpec::new(9), Parallelism::auto()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn exhaustive_holds_implies_sampled_clean() {
        for seed in 0..20u64 {
            let g = Graph::gnp(10, 0.2, RngSpec::new(seed)).unwrap();
            let ex = check_exhaustive(&g, 5, 2, DEFAULT_SUBSET_BUDGET, par()).unwrap();
            if ex.verdict == Verdict::Holds {
                let sm = check_sampled(&g, 5, 2, 200, RngSpec::new(seed + 1000), par()).unwrap();
                assert_eq!(sm.failures_found, 0, "seed {seed}");
            }
        }
    }

    #[test]
    fn sampled_witness_at_prescribed_probability_sees_no_failures() {
        // G(1024, p) at the first-regime p for (1024, 32, 4), generation
        // seed 7, sampling seed 13: ten thousand samples, zero failures.
        let p = crate::bounds::thm3_p(1024, 32, 4).unwrap();
        let g = Graph::gnp(1024, p, RngSpec::new(7)).unwrap();
        let r = check_sampled(&g, 32, 4, 10_000, RngSpec::new(13), par()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.failures_found, 0);
        assert_eq!(r.subsets_checked, 10_000);
    }

    #[test]
    fn failing_counterexample_is_recheckable() {
        for seed in 0..30u64 {
            let g = Graph::gnp(11, 0.55, RngSpec::new(seed)).unwrap();
            let r = check_exhaustive(&g, 5, 3, DEFAULT_SUBSET_BUDGET, par()).unwrap();
            if let Some(ce) = &r.counterexample {
                assert_eq!(r.verdict, Verdict::Fails);
                let (sub, _) = g.induced_subgraph(ce).unwrap();
                assert!(
                    solver::independence_number(&sub).0 < 3,
                    "counterexample not sound for seed {seed}"
                );
            }
        }
    }

    #[test]
    fn turan_budget_arithmetic() {
        // s=6, t=2: budget = 36/4 - 3 = 6 edges per 6-subset
        assert!(within_turan_budget(6, 6, 2));
        assert!(!within_turan_budget(7, 6, 2));
        // fractional budget: s=5, t=2 -> 25/4 - 5/2 = 3.75, floor 3
        assert!(within_turan_budget(3, 5, 2));
        assert!(!within_turan_budget(4, 5, 2));
    }

    #[test]
    fn turan_certificate_on_c5_plus_isolated() {
        // C5 plus an isolated vertex: the unique 6-subset spans 5 <= 6 edges.
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let r = turan_certificate(
            &g,
            6,
            2,
            CertificateScan::Exhaustive { budget: 1000 },
            par(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::CertificateHolds);
        assert_eq!(r.subsets_checked, 1);
    }

    #[test]
    fn turan_certificate_empty_graph_always_holds() {
        let g = Graph::empty(9);
        let r = turan_certificate(
            &g,
            4,
            2,
            CertificateScan::Exhaustive { budget: 1000 },
            par(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::CertificateHolds);
        assert_eq!(r.failures_found, 0);
    }

    #[test]
    fn certificate_soundness_over_seeded_graphs() {
        // certificate_holds (exhaustive) must imply the property holds
        for seed in 0..200u64 {
            let n = 6 + (seed % 5) as u32;
            let p = 0.1 + 0.1 * (seed % 8) as f64;
            let g = Graph::gnp(n, p, RngSpec::new(seed)).unwrap();
            let (s, t) = (5u64, 2u64);
            let cert = turan_certificate(
                &g,
                s,
                t,
                CertificateScan::Exhaustive {
                    budget: DEFAULT_SUBSET_BUDGET,
                },
                par(),
            )
            .unwrap();
            match cert.verdict {
                Verdict::CertificateHolds => {
                    let ex = check_exhaustive(&g, s, t, DEFAULT_SUBSET_BUDGET, par()).unwrap();
                    assert_eq!(ex.verdict, Verdict::Holds, "seed {seed}");
                }
                Verdict::Inconclusive => assert!(cert.failures_found > 0),
                other => panic!("unexpected certificate verdict {other:?}"),
            }
        }
    }

    #[test]
    fn property_monotone_in_t_and_s() {
        for seed in 0..30u64 {
            let g = Graph::gnp(9, 0.35, RngSpec::new(seed)).unwrap();
            let holds = |s, t| {
                check_exhaustive(&g, s, t, DEFAULT_SUBSET_BUDGET, par())
                    .unwrap()
                    .verdict
                    == Verdict::Holds
            };
            for s in 3..=8u64 {
                for t in 2..s {
                    if holds(s, t) {
                        assert!(
                            holds(s, t - 1),
                            "monotone in t failed: seed {seed} s={s} t={t}"
                        );
                        if s + 1 <= 9 {
                            assert!(
                                holds(s + 1, t),
                                "monotone in s failed: seed {seed} s={s} t={t}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn report_json_schema_is_exact() {
        let g = Graph::complete(5);
        let r = check_exhaustive(&g, 3, 2, DEFAULT_SUBSET_BUDGET, par()).unwrap();
        // field order is fixed by the struct, field set by the schema
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"mode":"exhaustive","verdict":"fails","counterexample":[0,1,2],"subsets_checked":1,"failures_found":1,"seed":null}"#
        );
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(
            keys,
            vec![
                "counterexample",
                "failures_found",
                "mode",
                "seed",
                "subsets_checked",
                "verdict"
            ]
        );
    }
}
