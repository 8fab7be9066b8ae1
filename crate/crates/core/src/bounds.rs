//! Exact, non-asymptotic evaluation of every closed-form quantity in the
//! theorems: `k = floor(s/(t-1))`, the Ramsey-type guarantee from the
//! binomial bound, the largest peeling round count `r`, the prescribed edge
//! probabilities, the upper-bound formulas, the section-4 claim inequality,
//! and the special-case parameterizations.
//!
//! Asymptotic constants are unspecified in the source material, so every
//! Omega/O constant defaults to 1 and is configurable through [`Constants`];
//! reports always record the constants used. Logarithms are natural
//! throughout.
//!
//! The boundary of `r` (the largest integer with `n q^{r-1} >= s`,
//! `q = t^2/(4 e^2 s^2)`) cannot be decided in floating point or plain
//! rationals because `e` is irrational. [`r_of`] therefore verifies the
//! boundary with interval arithmetic: rational Taylor brackets of `e^m` are
//! widened until the comparison is strict, which always terminates because
//! `e^m` is irrational for integer `m >= 1`.

use crate::combin::binomial;
use crate::property::ParamTriple;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

/// Tunable constants: the implicit Omega/O factors of the four theorems
/// (default 1) and the regime parameters delta, gamma, epsilon.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Constants {
    pub c_thm1: f64,
    pub c_thm2: f64,
    pub c_thm3: f64,
    pub c_thm4: f64,
    pub delta: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            c_thm1: 1.0,
            c_thm2: 1.0,
            c_thm3: 1.0,
            c_thm4: 1.0,
            delta: 0.5,
            gamma: 0.5,
            epsilon: 0.5,
        }
    }
}

// ============================================================================
// k and the Erdős–Szekeres-type guarantee
// ============================================================================

/// `k = floor(s / (t-1))`. Requires `t >= 2`: with `t = 1` the property is
/// vacuous on nonempty subsets and the quotient is undefined.
pub fn k_of(s: u64, t: u64) -> Result<u64> {
    if t < 2 {
        return Err(Error::invalid(format!("k is undefined for t={t} < 2")));
    }
    Ok(s / (t - 1))
}

/// The independent-set size guaranteed in any `m`-vertex graph whose clique
/// number is at most `k`: one more than the largest `l` with
/// `C(k+l, k) < m`. Exact big-integer binomials; no floating point.
pub fn es_guarantee(m: u64, k: u64) -> u64 {
    assert!(m >= 1 && k >= 1, "es_guarantee requires m >= 1, k >= 1");
    let m_big = num_bigint::BigUint::from(m);
    let mut l = 0u64;
    while binomial(k + l + 1, k) < m_big {
        l += 1;
    }
    // C(k+l, k) < m <= C(k+l+1, k), except when even l = 0 fails
    if binomial(k + l, k) >= m_big {
        l // only possible at l = 0 with m = 1; the loop keeps the rest tight
    } else {
        l + 1
    }
}

/// Which branch of the first lower-bound theorem applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm1Branch {
    /// `k <= 2 ln n`: value is `c * k * n^(1/k)`.
    KTimesRoot,
    /// `k > 2 ln n`: value is `c * ln n / ln(k / ln n)`.
    LogRatio,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Thm1Value {
    pub value: f64,
    pub branch: Thm1Branch,
    /// Both branch formulas, for boundary bookkeeping. The second is `None`
    /// when `k <= ln n` makes its logarithm nonpositive.
    pub k_times_root: f64,
    pub log_ratio: Option<f64>,
}

/// The first lower bound with constant `c`: `c k n^{1/k}` when
/// `k <= 2 ln n`, else `c ln n / ln(k/ln n)`.
pub fn thm1_value(n: u64, s: u64, t: u64, c: f64) -> Result<Thm1Value> {
    if 2 * s >= n {
        return Err(Error::invalid(format!("requires s < n/2, got s={s} n={n}")));
    }
    let k = k_of(s, t)?;
    let ln_n = (n as f64).ln();
    let kf = k as f64;
    let k_times_root = c * kf * (n as f64).powf(1.0 / kf);
    let log_ratio = if kf > ln_n {
        Some(c * ln_n / (kf / ln_n).ln())
    } else {
        None
    };
    let branch = if kf <= 2.0 * ln_n {
        Thm1Branch::KTimesRoot
    } else {
        Thm1Branch::LogRatio
    };
    let value = match branch {
        Thm1Branch::KTimesRoot => k_times_root,
        Thm1Branch::LogRatio => log_ratio.expect("k > 2 ln n implies k > ln n"),
    };
    Ok(Thm1Value {
        value,
        branch,
        k_times_root,
        log_ratio,
    })
}

// ============================================================================
// r and the second lower bound
// ============================================================================

fn require_thm2(n: u64, s: u64, t: u64) -> Result<()> {
    ParamTriple::new(n, s, t)?;
    if !(2 * t <= s && 2 * s < n) {
        return Err(Error::invalid(format!(
            "requires 2t <= s < n/2, got n={n} s={s} t={t}"
        )));
    }
    Ok(())
}

/// Rational brackets `[lo, hi]` of `e^m` from the Taylor series with an
/// explicit tail bound. Widening `terms` tightens the bracket.
fn exp_brackets(m: u64, terms: u64) -> (BigRational, BigRational) {
    let m_int = BigInt::from(m);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for j in 1..=terms {
        term = term * &m_int / BigInt::from(j);
        sum += &term;
    }
    // tail = sum_{j > terms} m^j/j! < term * (m/(terms+1)) / (1 - m/(terms+2))
    // valid once terms + 2 > 2m
    debug_assert!(terms + 2 > 2 * m);
    let ratio = BigRational::new(m_int.clone(), BigInt::from(terms + 1));
    let denom = BigRational::one() - BigRational::new(m_int, BigInt::from(terms + 2));
    let tail = &term * ratio / denom;
    (sum.clone(), sum + tail)
}

/// Decides `n * q^(r-1) >= s` exactly, where `q = t^2 / (4 e^2 s^2)`.
///
/// Equivalent to `n t^(2(r-1)) / (s (4 s^2)^(r-1)) >= e^(2(r-1))`; the left
/// side is rational and the right side is bracketed until the comparison is
/// strict.
fn peel_inequality_holds(n: u64, s: u64, t: u64, r: u64) -> bool {
    debug_assert!(r >= 1);
    let m = 2 * (r - 1);
    if m == 0 {
        return n >= s;
    }
    let lhs = {
        let num = BigInt::from(n) * BigInt::from(t).pow(m as u32);
        let den = BigInt::from(s)
            * (BigInt::from(4u32) * BigInt::from(s) * BigInt::from(s)).pow((r - 1) as u32);
        BigRational::new(num, den)
    };
    if !lhs.is_positive() {
        return false;
    }
    let mut terms = 2 * m + 40;
    loop {
        let (lo, hi) = exp_brackets(m, terms);
        if lhs >= hi {
            return true;
        }
        if lhs < lo {
            return false;
        }
        terms *= 2; // e^m is irrational, so this terminates
    }
}

/// The largest integer `r` with `n (t^2/(4 e^2 s^2))^(r-1) >= s`, under the
/// hypothesis `2t <= s < n/2`. Floating point seeds the search; the boundary
/// itself is decided by exact interval arithmetic.
pub fn r_of(n: u64, s: u64, t: u64) -> Result<u64> {
    require_thm2(n, s, t)?;
    let q = (t * t) as f64 / (4.0 * std::f64::consts::E.powi(2) * (s * s) as f64);
    debug_assert!(q < 1.0); // forced by t <= s/2
    let guess = (1.0 + ((n as f64 / s as f64).ln() / (1.0 / q).ln()).floor()).max(1.0) as u64;
    let mut r = guess.max(1);
    while !peel_inequality_holds(n, s, t, r) {
        r -= 1; // r = 1 always holds since n >= s
    }
    while peel_inequality_holds(n, s, t, r + 1) {
        r += 1;
    }
    Ok(r)
}

/// The exact constant-free guarantee the peeling proof delivers: `r t / 2`
/// (real-valued; the extraction rounds the per-round set size up instead).
pub fn thm2_value(n: u64, s: u64, t: u64) -> Result<f64> {
    Ok(r_of(n, s, t)? as f64 * t as f64 / 2.0)
}

/// The asymptotic form of the second lower bound with constant `c`:
/// `c t ln(n/s) / ln(s/t)`.
pub fn thm2_asymptotic(n: u64, s: u64, t: u64, c: f64) -> Result<f64> {
    require_thm2(n, s, t)?;
    Ok(c * t as f64 * (n as f64 / s as f64).ln() / (s as f64 / t as f64).ln())
}

// ============================================================================
// Theorem 3: p and the upper bound
// ============================================================================

fn require_thm3(n: u64, s: u64, t: u64) -> Result<()> {
    ParamTriple::new(n, s, t)?;
    if !(2 * t <= s && 2 * s <= n) {
        return Err(Error::invalid(format!(
            "requires 2t <= s <= n/2, got n={n} s={s} t={t}"
        )));
    }
    Ok(())
}

/// The prescribed edge probability `p = (n/s)^(-2t/(s-t)) / (4 e^3 t)`.
///
/// Always lies in (0,1) under the hypothesis: `4 e^3 t > 1` and the power
/// factor is at most 1.
pub fn thm3_p(n: u64, s: u64, t: u64) -> Result<f64> {
    require_thm3(n, s, t)?;
    let ratio = n as f64 / s as f64;
    let expo = -2.0 * t as f64 / (s - t) as f64;
    Ok(ratio.powf(expo) / (4.0 * std::f64::consts::E.powi(3) * t as f64))
}

/// The third theorem's upper-bound formula with constant `c`:
/// `c t (n/s)^(2t/(s-t)) ln(n/t)`.
pub fn thm3_ub(n: u64, s: u64, t: u64, c: f64) -> Result<f64> {
    require_thm3(n, s, t)?;
    let ratio = n as f64 / s as f64;
    let expo = 2.0 * t as f64 / (s - t) as f64;
    Ok(c * t as f64 * ratio.powf(expo) * (n as f64 / t as f64).ln())
}

// ============================================================================
// Theorem 4: two regimes
// ============================================================================

/// Which edge-probability regime of the fourth theorem to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm4Regime {
    /// `p = delta ln(s/t) / (2 t)`.
    A,
    /// `p = gamma ln(s/t) / (640 t)`.
    B,
}

fn require_thm4(n: u64, s: u64, t: u64) -> Result<()> {
    ParamTriple::new(n, s, t)?;
    if 2 * s > n {
        return Err(Error::invalid(format!(
            "requires s <= n/2, got n={n} s={s}"
        )));
    }
    // s <= e^{2t} guarantees p < 1 in regime a
    if (s as f64).ln() > 2.0 * t as f64 {
        return Err(Error::invalid(format!(
            "requires s <= e^(2t), got s={s} t={t}"
        )));
    }
    Ok(())
}

/// The prescribed edge probability for the chosen regime.
pub fn thm4_p(n: u64, s: u64, t: u64, regime: Thm4Regime, constants: &Constants) -> Result<f64> {
    require_thm4(n, s, t)?;
    let log_ratio = (s as f64 / t as f64).ln();
    Ok(match regime {
        Thm4Regime::A => constants.delta * log_ratio / (2.0 * t as f64),
        Thm4Regime::B => constants.gamma * log_ratio / (640.0 * t as f64),
    })
}

/// The fourth theorem's upper-bound formula with constant `c`:
/// `c (t / ln(s/t)) ln(n/t)`.
pub fn thm4_ub(n: u64, s: u64, t: u64, c: f64) -> Result<f64> {
    require_thm4(n, s, t)?;
    Ok(c * (t as f64 / (s as f64 / t as f64).ln()) * (n as f64 / t as f64).ln())
}

/// Whether regime a's side hypothesis `(s/t)^(1-delta) >= ln n` holds with
/// the configured delta. Recorded, never enforced.
pub fn thm4a_hypothesis(n: u64, s: u64, t: u64, delta: f64) -> bool {
    (s as f64 / t as f64).powf(1.0 - delta) >= (n as f64).ln()
}

/// Whether regime b's side hypotheses `s/t >= ln n` (constant 1) and
/// `ln t >= (ln n)^gamma` hold. Recorded, never enforced.
pub fn thm4b_hypothesis(n: u64, s: u64, t: u64, gamma: f64) -> bool {
    let ln_n = (n as f64).ln();
    s as f64 / t as f64 >= ln_n && (t as f64).ln() >= ln_n.powf(gamma)
}

// ============================================================================
// The section-4 claim
// ============================================================================

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub holds: bool,
    /// `(t-1) * thm2_value(n/2, s, t)`, the lower bound plugged into
    /// `(t-1) f(n/2, s, t) >= s`.
    pub lhs: f64,
}

/// Evaluates `(t-1) f(n/2, s, t) >= s` with the exact peeling guarantee as
/// the lower bound for `f`. Requires `n/2 > s > t >= 2` plus the peeling
/// hypothesis at `n/2` (`2t <= s < n/4`).
pub fn claim_check(n: u64, s: u64, t: u64) -> Result<ClaimCheck> {
    if !(t >= 2 && s > t && n > 2 * s) {
        return Err(Error::invalid(format!(
            "requires n/2 > s > t >= 2, got n={n} s={s} t={t}"
        )));
    }
    let lhs = (t - 1) as f64 * thm2_value(n / 2, s, t)?;
    Ok(ClaimCheck {
        holds: lhs >= s as f64,
        lhs,
    })
}

/// The section-4 instantiation `t = ln n`, `s = c ln^3 n / ln ln n`,
/// rounded to integers.
pub fn claim_instantiation(n: u64, c: f64) -> (u64, u64) {
    let ln_n = (n as f64).ln();
    let t = ln_n.round() as u64;
    let s = (c * ln_n.powi(3) / ln_n.ln()).round() as u64;
    (s, t)
}

// ============================================================================
// Special cases: f(n) and q(n)
// ============================================================================

/// Bound values for one special-case instantiation (s, t fixed by n).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseBounds {
    pub s: u64,
    /// `t < s < n/2` after rounding.
    pub params_valid: bool,
    pub thm2_value: Option<f64>,
    pub thm3_ub: Option<f64>,
    pub thm4_ub: Option<f64>,
}

/// The two section-1 parameterizations evaluated at one `n`:
/// `f(n)` uses `(s,t) = (ln^2 n, ln n)` and `q(n)` uses `(ln^3 n, ln n)`,
/// both rounded. `target_order` is `ln^2 n / ln ln n`, the growth rate both
/// quantities share.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecialCasesReport {
    pub n: u64,
    pub t: u64,
    pub target_order: f64,
    pub f_case: CaseBounds,
    pub q_case: CaseBounds,
    pub constants: Constants,
}

fn case_bounds(n: u64, s: u64, t: u64, constants: &Constants) -> CaseBounds {
    CaseBounds {
        s,
        params_valid: t < s && 2 * s < n,
        thm2_value: thm2_value(n, s, t).ok(),
        thm3_ub: thm3_ub(n, s, t, constants.c_thm3).ok(),
        thm4_ub: thm4_ub(n, s, t, constants.c_thm4).ok(),
    }
}

/// Instantiates both special cases at `n`. Requires `n >= 16` so that
/// `ln ln n` is safely positive after rounding.
pub fn special_cases(n: u64, constants: &Constants) -> Result<SpecialCasesReport> {
    if n < 16 {
        return Err(Error::invalid(format!("requires n >= 16, got n={n}")));
    }
    let ln_n = (n as f64).ln();
    let t = ln_n.round() as u64;
    let s_f = (ln_n * ln_n).round() as u64;
    let s_q = (ln_n * ln_n * ln_n).round() as u64;
    Ok(SpecialCasesReport {
        n,
        t,
        target_order: ln_n * ln_n / ln_n.ln(),
        f_case: case_bounds(n, s_f, t, constants),
        q_case: case_bounds(n, s_q, t, constants),
        constants: *constants,
    })
}

// ============================================================================
// Assembled report
// ============================================================================

/// Every closed-form quantity for one parameter triple. Quantities whose
/// theorem hypotheses fail are `null`, with the reason in `notes`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: ParamTriple,
    pub k: Option<u64>,
    pub es_guarantee: Option<u64>,
    pub thm1_value: Option<f64>,
    pub thm1_branch: Option<Thm1Branch>,
    pub r: Option<u64>,
    pub thm2_value: Option<f64>,
    pub thm2_asymptotic: Option<f64>,
    pub p_thm3: Option<f64>,
    pub ub_thm3: Option<f64>,
    pub p_thm4a: Option<f64>,
    pub p_thm4b: Option<f64>,
    pub ub_thm4: Option<f64>,
    pub thm4a_hypothesis_ok: Option<bool>,
    pub thm4b_hypothesis_ok: Option<bool>,
    pub constants: Constants,
    pub notes: Vec<String>,
}

/// Evaluates everything evaluable for `(n, s, t)`, recording per-quantity
/// hypothesis failures instead of erroring; only `1 <= t < s <= n` is a hard
/// requirement.
pub fn bounds_report(n: u64, s: u64, t: u64, constants: &Constants) -> Result<BoundReport> {
    let params = ParamTriple::new(n, s, t)?;
    let mut notes = Vec::new();
    let note_err = |notes: &mut Vec<String>, what: &str, e: &Error| {
        notes.push(format!("{what}: {e}"));
    };

    let k = match k_of(s, t) {
        Ok(v) => Some(v),
        Err(e) => {
            note_err(&mut notes, "k", &e);
            None
        }
    };
    // The clique-removal proof leaves a residual of more than n - s
    // vertices, so the guarantee is instantiated at order n - s + 1.
    let es = k.map(|k| es_guarantee(n - s + 1, k));
    let thm1 = match thm1_value(n, s, t, constants.c_thm1) {
        Ok(v) => Some(v),
        Err(e) => {
            note_err(&mut notes, "thm1_value", &e);
            None
        }
    };
    let r = match r_of(n, s, t) {
        Ok(v) => Some(v),
        Err(e) => {
            note_err(&mut notes, "r", &e);
            None
        }
    };
    let p3 = match thm3_p(n, s, t) {
        Ok(v) => Some(v),
        Err(e) => {
            note_err(&mut notes, "p_thm3", &e);
            None
        }
    };
    let p4a = match thm4_p(n, s, t, Thm4Regime::A, constants) {
        Ok(v) => {
            if !(0.0..1.0).contains(&v) {
                notes.push(format!(
                    "p_thm4a = {v} outside (0,1) with delta = {}",
                    constants.delta
                ));
            }
            Some(v)
        }
        Err(e) => {
            note_err(&mut notes, "p_thm4a", &e);
            None
        }
    };
    let p4b = match thm4_p(n, s, t, Thm4Regime::B, constants) {
        Ok(v) => Some(v),
        Err(e) => {
            note_err(&mut notes, "p_thm4b", &e);
            None
        }
    };

    Ok(BoundReport {
        params,
        k,
        es_guarantee: es,
        thm1_value: thm1.map(|v| v.value),
        thm1_branch: thm1.map(|v| v.branch),
        r,
        thm2_value: r.map(|r| r as f64 * t as f64 / 2.0),
        thm2_asymptotic: thm2_asymptotic(n, s, t, constants.c_thm2).ok(),
        p_thm3: p3,
        ub_thm3: thm3_ub(n, s, t, constants.c_thm3).ok(),
        p_thm4a: p4a,
        p_thm4b: p4b,
        ub_thm4: thm4_ub(n, s, t, constants.c_thm4).ok(),
        thm4a_hypothesis_ok: p4a.map(|_| thm4a_hypothesis(n, s, t, constants.delta)),
        thm4b_hypothesis_ok: p4b.map(|_| thm4b_hypothesis(n, s, t, constants.gamma)),
        constants: *constants,
        notes,
    })
}
