//! Exact combinatorial arithmetic: big-integer binomials, colexicographic
//! subset ranking, and uniform subset sampling.
//!
//! Everything here is exact. Binomials are computed over `BigUint` (with a
//! saturating `u128` fast path for loop bounds), and subset ranks use the
//! combinatorial number system so that enumeration ranges can be partitioned
//! deterministically across threads.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

// ============================================================================
// Binomials
// ============================================================================

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// C(n, k) saturated to `u64::MAX`. Handy for budget comparisons.
pub fn binomial_saturating(n: u64, k: u64) -> u64 {
    binomial(n, k).to_u64().unwrap_or(u64::MAX)
}

// ============================================================================
// Colexicographic subset order
// ============================================================================
//
// Subsets are ordered by the combinatorial number system: a sorted subset
// {a_0 < a_1 < ... < a_{s-1}} has rank sum_i C(a_i, i+1). Rank 0 is
// {0,...,s-1}; the vertex that changes most slowly is the largest one, which
// is what makes the order colexicographic.

/// Colex rank of a strictly increasing subset.
pub fn colex_rank(subset: &[u32]) -> u64 {
    let mut rank = 0u64;
    for (i, &a) in subset.iter().enumerate() {
        rank += binomial_saturating(a as u64, i as u64 + 1);
    }
    rank
}

/// Writes the subset with the given colex rank into `out` (ascending).
///
/// `out.len()` determines the subset size s; the rank must be < C(n, s) for
/// the intended universe, which the caller is responsible for.
pub fn colex_unrank(mut rank: u64, out: &mut [u32]) {
    let s = out.len();
    for i in (0..s).rev() {
        if rank == 0 {
            out[i] = i as u32;
            continue;
        }
        // Largest a with C(a, i+1) <= rank, tracking c = C(a, i+1) as we go.
        let (mut a, mut c) = (i as u64 + 1, 1u64); // C(i+1, i+1) = 1 <= rank
        loop {
            // C(a+1, i+1) = C(a, i+1) * (a+1) / (a - i)
            let next = match c.checked_mul(a + 1).map(|x| x / (a - i as u64)) {
                Some(x) => x,
                None => break, // next binomial exceeds u64, so it exceeds rank
            };
            if next > rank {
                break;
            }
            a += 1;
            c = next;
        }
        out[i] = a as u32;
        rank -= c;
    }
}

/// Advances `subset` to its colex successor among s-subsets of {0..n-1}.
///
/// Returns `false` (leaving the subset unspecified) when the input was the
/// colex-maximal subset {n-s, ..., n-1}.
pub fn colex_next(subset: &mut [u32], n: u32) -> bool {
    let s = subset.len();
    for i in 0..s {
        let limit = if i + 1 < s { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j as u32;
            }
            return true;
        }
    }
    false
}

// ============================================================================
// Uniform subset sampling
// ============================================================================

/// Draws a uniform s-subset of {0..n-1} by selection sampling, ascending.
///
/// Knuth's Algorithm S: walk the universe once, accepting each element with
/// probability (still needed) / (still available). Unbiased, and consumes a
/// deterministic amount of randomness structure per draw.
pub fn sample_subset<R: Rng>(rng: &mut R, n: u32, s: u32, out: &mut Vec<u32>) {
    debug_assert!(s <= n);
    out.clear();
    let mut needed = s;
    for v in 0..n {
        if needed == 0 {
            break;
        }
        let available = n - v;
        // accept with probability needed/available
        if rng.random_range(0..available) < needed {
            out.push(v);
            needed -= 1;
        }
    }
    debug_assert_eq!(out.len(), s as usize);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(48, 8), BigUint::from(377_348_994u64));
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(binomial(1000, 2), BigUint::from(499_500u64));
    }

    #[test]
    fn binomial_pascal_identity() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "pascal failed at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn colex_order_enumerates_all_subsets_in_rank_order() {
        let (n, s) = (7u32, 3usize);
        let mut subset: Vec<u32> = (0..s as u32).collect();
        let mut rank = 0u64;
        loop {
            assert_eq!(colex_rank(&subset), rank);
            let mut un = vec![0u32; s];
            colex_unrank(rank, &mut un);
            assert_eq!(un, subset);
            rank += 1;
            if !colex_next(&mut subset, n) {
                break;
            }
        }
        assert_eq!(rank, binomial_saturating(n as u64, s as u64));
    }

    #[test]
    fn colex_first_and_last() {
        let mut s = vec![0u32; 4];
        colex_unrank(0, &mut s);
        assert_eq!(s, vec![0, 1, 2, 3]);
        let last = binomial_saturating(9, 4) - 1;
        colex_unrank(last, &mut s);
        assert_eq!(s, vec![5, 6, 7, 8]);
    }

    #[test]
    fn sample_subset_is_sorted_and_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut out = Vec::new();
        for _ in 0..500 {
            sample_subset(&mut rng, 20, 6, &mut out);
            assert_eq!(out.len(), 6);
            assert!(out.windows(2).all(|w| w[0] < w[1]));
            assert!(out.iter().all(|&v| v < 20));
        }
    }

    #[test]
    fn sample_subset_is_roughly_uniform_per_element() {
        // Each element of {0..9} should appear in a 3-subset with prob 3/10.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0u32; 10];
        let mut out = Vec::new();
        let trials = 20_000;
        for _ in 0..trials {
            sample_subset(&mut rng, 10, 3, &mut out);
            for &v in &out {
                counts[v as usize] += 1;
            }
        }
        for (v, &c) in counts.iter().enumerate() {
            let freq = c as f64 / trials as f64;
            assert!(
                (freq - 0.3).abs() < 0.02,
                "element {v} frequency {freq} too far from 0.3"
            );
        }
    }

    proptest! {
        #[test]
        fn colex_rank_unrank_roundtrip(n in 3u32..32, s in 1usize..6, seed in 0u64..1000) {
            let s = s.min(n as usize);
            let total = binomial_saturating(n as u64, s as u64);
            let rank = seed % total;
            let mut subset = vec![0u32; s];
            colex_unrank(rank, &mut subset);
            prop_assert!(subset.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(subset.iter().all(|&v| v < n));
            prop_assert_eq!(colex_rank(&subset), rank);
        }
    }
}
