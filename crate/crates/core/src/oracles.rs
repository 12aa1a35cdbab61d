//! Closed-form and semi-analytic expectations for the random-graph models,
//! plus an exhaustive brute-force evaluator that serves as independent
//! ground truth for small node counts.
//!
//! Erdős–Rényi results: `E[DI_2] = 6 C(n,3) p(1-p)`; the expected absolute
//! difference of two i.i.d. binomials (exact double sum, exact big-integer
//! closed form at `p = 1/2`, and the `2 sqrt(m p (1-p) / pi)` asymptotic),
//! which give `E[DI_1]` through the pair decomposition; and the expected
//! local clustering coefficient. Two-phase model: `E[CI_1]`. Plus the
//! simulation-observed large-`n` reference value for `CI_2`.

use crate::graph::{Graph, GraphBuilder};
use crate::numeric::KahanSum;
use num_bigint::BigUint;
use std::fmt;

/// Parameters of a binomial distribution `Bin(trials, success_prob)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialParams {
    pub trials: usize,
    pub success_prob: f64,
}

impl BinomialParams {
    /// Validates `success_prob` into `[0, 1]`.
    pub fn new(trials: usize, success_prob: f64) -> Result<Self, OracleError> {
        if !(success_prob.is_finite() && (0.0..=1.0).contains(&success_prob)) {
            return Err(OracleError::InvalidProbability {
                name: "success_prob",
                value: success_prob,
            });
        }
        Ok(Self { trials, success_prob })
    }
}

/// How an [`ExactExpectation`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    DoubleSum,
    ExhaustiveEnumeration,
}

/// An expectation together with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactExpectation {
    pub value: f64,
    pub method: Method,
}

/// Errors raised by the expectation oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// A probability argument fell outside its allowed interval.
    InvalidProbability { name: &'static str, value: f64 },
    /// The operation needs a larger node count.
    NodeCountTooSmall { n: usize, required: usize },
    /// Exhaustive enumeration refuses beyond its cost guard.
    NodeCountTooLarge { n: usize, max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::InvalidProbability { name, value } => {
                write!(f, "{name} out of range: {value}")
            }
            OracleError::NodeCountTooSmall { n, required } => {
                write!(f, "need n >= {required}, got n={n}")
            }
            OracleError::NodeCountTooLarge { n, max } => {
                write!(f, "exhaustive enumeration supports n <= {max}, got n={n}")
            }
        }
    }
}

impl std::error::Error for OracleError {}

fn check_open_probability(name: &'static str, value: f64) -> Result<(), OracleError> {
    if value.is_finite() && 0.0 < value && value < 1.0 {
        Ok(())
    } else {
        Err(OracleError::InvalidProbability { name, value })
    }
}

fn check_closed_probability(name: &'static str, value: f64) -> Result<(), OracleError> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(OracleError::InvalidProbability { name, value })
    }
}

/// `C(n, 2)` as a float (exact for any feasible `n`).
fn binom2(n: usize) -> f64 {
    (n as u128 * (n as u128 - 1) / 2) as f64
}

/// `C(n, 3)` as a float; 0 for `n < 3`.
fn binom3(n: usize) -> f64 {
    if n < 3 {
        0.0
    } else {
        (n as u128 * (n as u128 - 1) * (n as u128 - 2) / 6) as f64
    }
}

/// Expected degree index `E[DI_2]` of `G(n, p)`: `6 C(n,3) p (1-p)`.
///
/// Each pair contributes `E[(d_i - d_j)^2] = Var(d_i - d_j) = 2(n-2)p(1-p)`
/// (the shared pair-edge cancels), and `C(n,2) * 2(n-2) = n(n-1)(n-2)
/// = 6 C(n,3)`.
pub fn expected_di2_er(n: usize, p: f64) -> Result<f64, OracleError> {
    if n < 2 {
        return Err(OracleError::NodeCountTooSmall { n, required: 2 });
    }
    check_open_probability("p", p)?;
    Ok(6.0 * binom3(n) * p * (1.0 - p))
}

/// Table of `ln(k!)` for `k = 0..=m`, accumulated with compensation so the
/// entries stay accurate to a few ulps even for large `m`.
fn ln_factorial_table(m: usize) -> Vec<f64> {
    let mut table = vec![0.0; m + 1];
    let mut acc = KahanSum::new();
    for (k, entry) in table.iter_mut().enumerate().skip(1) {
        acc.add((k as f64).ln());
        *entry = acc.value();
    }
    table
}

/// `E|X - Y|` for independent `X, Y ~ Bin(m, p)`, by the exact `O(m^2)`
/// double sum with log-gamma-based pmf evaluation.
pub fn mean_abs_diff_binomial(bp: BinomialParams) -> f64 {
    let m = bp.trials;
    let p = bp.success_prob;
    if m == 0 || p == 0.0 || p == 1.0 {
        // Degenerate distributions: X = Y almost surely.
        return 0.0;
    }
    let ln_fact = ln_factorial_table(m);
    let ln_p = p.ln();
    let ln_q = (1.0 - p).ln();
    let pmf: Vec<f64> = (0..=m)
        .map(|k| {
            let ln_pmf = ln_fact[m] - ln_fact[k] - ln_fact[m - k]
                + k as f64 * ln_p
                + (m - k) as f64 * ln_q;
            ln_pmf.exp()
        })
        .collect();
    // E|X - Y| = 2 * sum over k < l of (l - k) pmf(k) pmf(l).
    let mut acc = KahanSum::new();
    for k in 0..=m {
        for l in (k + 1)..=m {
            acc.add((l - k) as f64 * pmf[k] * pmf[l]);
        }
    }
    2.0 * acc.value()
}

/// `E|X - Y|` for independent `X, Y ~ Bin(m, 1/2)`: exactly
/// `m C(2m, m) / 2^(2m)`, evaluated with exact big-integer binomials and a
/// single final float conversion. Valid well past `m = 1000`.
pub fn mean_abs_diff_binomial_half(m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    // C(2m, m) built multiplicatively; every partial quotient C(m+i, i)
    // is integral, so the division is exact at each step.
    let mut central = BigUint::from(1u32);
    for i in 1..=m {
        central = central * BigUint::from(m + i) / BigUint::from(i);
    }
    let numerator = central * BigUint::from(m);
    big_times_pow2(&numerator, -2 * (m as i64))
}

/// `value * 2^exponent` as f64 without overflowing intermediate
/// conversions: takes the top 64 bits of `value` and rescales.
fn big_times_pow2(value: &BigUint, exponent: i64) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return 0.0;
    }
    let dropped = bits.saturating_sub(64);
    let top = u64::try_from(&(value >> dropped)).expect("top 64 bits fit");
    (top as f64) * 2f64.powi((dropped as i64 + exponent) as i32)
}

/// Large-`m` asymptotic `E|X - Y| ~ 2 sqrt(m p (1-p) / pi)` for independent
/// `X, Y ~ Bin(m, p)` (their difference is asymptotically normal with
/// variance `2 m p (1-p)`, and a centered normal has `E|Z| = sqrt(2/pi) sd`).
pub fn mean_abs_diff_binomial_asymptotic(bp: BinomialParams) -> Result<f64, OracleError> {
    if bp.trials < 1 {
        return Err(OracleError::NodeCountTooSmall { n: bp.trials, required: 1 });
    }
    check_open_probability("success_prob", bp.success_prob)?;
    let m = bp.trials as f64;
    let p = bp.success_prob;
    Ok(2.0 * (m * p * (1.0 - p) / std::f64::consts::PI).sqrt())
}

/// Expected degree index `E[DI_1]` of `G(n, p)`.
///
/// Conditioned on the shared pair-edge, `d_i - d_j` is the difference of
/// two independent `Bin(n-2, p)` counts, so each of the `C(n,2)` pairs
/// contributes `E|B_1 - B_2|`.
pub fn expected_di1_er(n: usize, p: f64) -> Result<f64, OracleError> {
    if n < 2 {
        return Err(OracleError::NodeCountTooSmall { n, required: 2 });
    }
    check_open_probability("p", p)?;
    let per_pair = mean_abs_diff_binomial(BinomialParams { trials: n - 2, success_prob: p });
    Ok(binom2(n) * per_pair)
}

/// Upper bound on `E[DI_1]`: `C(n,2) * 2 sqrt((n-2) p (1-p))`, from
/// `E|B_1 - B_2| <= sqrt(E (B_1 - B_2)^2) = sqrt(2 (n-2) p (1-p)) <
/// 2 sqrt((n-2) p (1-p))`.
pub fn expected_di1_upper_bound(n: usize, p: f64) -> Result<f64, OracleError> {
    if n < 3 {
        return Err(OracleError::NodeCountTooSmall { n, required: 3 });
    }
    check_open_probability("p", p)?;
    Ok(binom2(n) * 2.0 * ((n as f64 - 2.0) * p * (1.0 - p)).sqrt())
}

/// Expected local clustering coefficient of a node of `G(n, p)`:
/// `p (1 - (1-p)^(n-1) - (n-1) p (1-p)^(n-2))`.
///
/// The bracket is the probability that the node has degree at least 2
/// (complement of the degree-0 and degree-1 events over its `n-1`
/// potential neighbors); given that, each neighbor pair closes with
/// probability `p`.
pub fn expected_local_clustering_er(n: usize, p: f64) -> Result<f64, OracleError> {
    if n < 1 {
        return Err(OracleError::NodeCountTooSmall { n, required: 1 });
    }
    check_closed_probability("p", p)?;
    if n < 3 {
        // Degree is at most 1, so the coefficient is identically 0.
        return Ok(0.0);
    }
    let q = 1.0 - p;
    let n_minus_1 = (n - 1) as f64;
    Ok(p * (1.0 - q.powi((n - 1) as i32) - n_minus_1 * p * q.powi((n - 2) as i32)))
}

/// Simulation-observed large-`n` reference value for `CI_2` of `G(n, p)`:
/// `2 (1-p) (1-p^2) / p`.
///
/// This is an empirical fit reported for the model's simulations, not a
/// proved limit; treat it as a loose reference, never an exact contract.
pub fn ci2_empirical_limit(p: f64) -> Result<f64, OracleError> {
    if !(p.is_finite() && 0.0 < p && p <= 1.0) {
        return Err(OracleError::InvalidProbability { name: "p", value: p });
    }
    Ok(2.0 * (1.0 - p) * (1.0 - p * p) / p)
}

/// Expected clustering index `E[CI_1]` of the two-phase clique/null model:
/// `(n^2 - n) p (1-p)`.
///
/// With `N` clique members, pairs straddling the clique/null split
/// contribute 1 each; `E[N(n - N)]` for `N ~ Bin(n, 1-p)` expands to the
/// displayed form. (The tiny `N <= 2` corner, where clique members still
/// have coefficient 0, is ignored by this reference formula; its
/// probability vanishes for the node counts the model targets.)
pub fn expected_ci1_two_phase(n: usize, p: f64) -> Result<f64, OracleError> {
    if n < 2 {
        return Err(OracleError::NodeCountTooSmall { n, required: 2 });
    }
    check_closed_probability("p", p)?;
    let nf = n as f64;
    Ok((nf * nf - nf) * p * (1.0 - p))
}

/// Exact `E[statistic(G)]` for `G ~ G(n, p)` by exhaustive enumeration of
/// all `2^(C(n,2))` labeled graphs, each weighted by its product-law
/// probability. Refuses `n > 6` (cost guard: `2^15` graphs at `n = 6`).
pub fn brute_force_er_expectation<F>(
    n: usize,
    p: f64,
    statistic: F,
) -> Result<ExactExpectation, OracleError>
where
    F: Fn(&Graph) -> f64,
{
    if n < 2 {
        return Err(OracleError::NodeCountTooSmall { n, required: 2 });
    }
    if n > 6 {
        return Err(OracleError::NodeCountTooLarge { n, max: 6 });
    }
    check_closed_probability("p", p)?;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let pair_count = pairs.len();
    let mut value = KahanSum::new();
    let mut total_weight = KahanSum::new();
    for mask in 0u64..(1u64 << pair_count) {
        let mut builder = GraphBuilder::new(n);
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                builder.add_edge(i, j).expect("enumerated endpoints valid");
            }
        }
        let graph = builder.build();
        let edges = mask.count_ones() as i32;
        let weight = p.powi(edges) * (1.0 - p).powi(pair_count as i32 - edges);
        total_weight.add(weight);
        value.add(weight * statistic(&graph));
    }
    debug_assert!(
        (total_weight.value() - 1.0).abs() <= 1e-12,
        "product-law weights must sum to 1, got {}",
        total_weight.value()
    );
    Ok(ExactExpectation { value: value.value(), method: Method::ExhaustiveEnumeration })
}
