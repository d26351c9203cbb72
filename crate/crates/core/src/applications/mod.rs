//! Consequences of the two characterizations of `𝒢(k)`: forbidden prime
//! factors for odd `k`, the largest modulus with a given Fibonacci period,
//! odd-index Lucas numbers as gcds, and an empirical explorer for sums of
//! consecutive squares.

pub mod factor;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcdsum::gcd_sum_value;
use crate::pisano::{period_if_at_most, pisano_period};
use crate::sequences::{fib, lucas, recurrence_terms, Seed};
use factor::{divisors, trial_divide};

/// Primes `p ≡ 3, 7, 13, 17 (mod 20)`.
pub fn is_forbidden_residue(p: &BigInt) -> bool {
    matches!(p.mod_floor(&BigInt::from(20)).to_u64(), Some(3 | 7 | 13 | 17))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRestrictionReport {
    pub seed: Seed,
    pub k: u64,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
    #[serde(with = "crate::serde_int::vec")]
    pub prime_factors: Vec<BigInt>,
    /// Prime factors `≡ 3, 7, 13, 17 (mod 20)`; expected empty.
    #[serde(with = "crate::serde_int::vec")]
    pub offending: Vec<BigInt>,
    /// Part of the value left unfactored by trial division.
    #[serde(with = "crate::serde_int::option")]
    pub cofactor: Option<BigInt>,
    pub prime_bound: u64,
}

pub fn prime_restriction_check(
    seed: &Seed,
    k: u64,
    prime_bound: u64,
) -> Result<PrimeRestrictionReport> {
    if k.is_multiple_of(2) {
        return Err(Error::invalid("k", "must be odd"));
    }
    seed.ensure_coprime()?;
    let value = gcd_sum_value(seed, k)?;
    let td = trial_divide(&value, prime_bound);
    let offending = td
        .primes
        .iter()
        .filter(|p| is_forbidden_residue(p))
        .cloned()
        .collect();
    Ok(PrimeRestrictionReport {
        seed: seed.clone(),
        k,
        value,
        prime_factors: td.primes,
        offending,
        cofactor: td.cofactor,
        prime_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusKind {
    Fibonacci,
    Lucas,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibLucasPeriodRow {
    pub kind: ModulusKind,
    pub i: u64,
    pub modulus: u64,
    pub predicted: u64,
    pub computed: u64,
}

impl FibLucasPeriodRow {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed
    }
}

/// Predicted Fibonacci period modulo `F(i)` (`i >= 4`) or `L(i)` (`i >= 2`).
pub fn predicted_period(kind: ModulusKind, i: u64) -> Option<u64> {
    match kind {
        ModulusKind::Fibonacci if i >= 4 => Some(if i.is_multiple_of(2) { 2 * i } else { 4 * i }),
        ModulusKind::Lucas if i >= 2 => Some(if i.is_multiple_of(2) { 4 * i } else { 2 * i }),
        _ => None,
    }
}

/// Rows for `π_F(F(i))`, `4 <= i <= i_max`, then `π_F(L(i))`, `2 <= i <= i_max`.
pub fn pisano_of_fib_lucas_moduli(i_max: u64) -> Result<Vec<FibLucasPeriodRow>> {
    if i_max < 5 {
        return Err(Error::invalid("i_max", "must be at least 5"));
    }
    let f = Seed::fibonacci();
    let mut rows = Vec::new();
    for (kind, start) in [(ModulusKind::Fibonacci, 4u64), (ModulusKind::Lucas, 2)] {
        for i in start..=i_max {
            let value = match kind {
                ModulusKind::Fibonacci => fib(i as i64),
                ModulusKind::Lucas => lucas(i as i64),
            };
            let modulus = value.to_u64().ok_or(Error::TooLarge {
                value,
                context: "a u64 modulus",
            })?;
            rows.push(FibLucasPeriodRow {
                kind,
                i,
                modulus,
                predicted: predicted_period(kind, i).expect("index in predicted range"),
                computed: pisano_period(&f, modulus)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedForm {
    FibHalf,
    LucasHalf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxModulusResult {
    pub k: u64,
    #[serde(with = "crate::serde_int")]
    pub m_f: BigInt,
    pub predicted_form: PredictedForm,
    pub verified_period: u64,
    pub exhaustive_check: bool,
    /// Divisors of `𝓕(k)` whose Fibonacci period is exactly `k`.
    pub divisors_with_period_k: Vec<u64>,
    /// Upper end of the direct scan `m ∈ [1, scan_bound]`; 0 when not run.
    pub scan_bound: u64,
    /// Moduli found by the direct scan with period `k` that are larger than
    /// `m_F` or fail to divide it; expected empty.
    pub scan_counterexamples: Vec<u64>,
}

/// Largest `m` with `π_F(m) = k`, for even `k >= 6`.
///
/// The candidate is `𝓕(k)`, which equals `F(k/2)` or `L(k/2)` by the parity
/// of `k/2`. With `exhaustive` set, every divisor of `𝓕(k)` has its period
/// computed, and every `m <= 4·m_F` is scanned directly, confirming that no
/// modulus with period `k` exceeds or fails to divide `m_F`.
pub fn max_modulus_for_period(k: u64, exhaustive: bool) -> Result<MaxModulusResult> {
    if k % 2 == 1 || k < 6 {
        return Err(Error::invalid("k", "must be even and at least 6"));
    }
    let f = Seed::fibonacci();
    let m_f = gcd_sum_value(&f, k)?;
    let half = (k / 2) as i64;
    let (form, expected) = if k.is_multiple_of(4) {
        (PredictedForm::FibHalf, fib(half))
    } else {
        (PredictedForm::LucasHalf, lucas(half))
    };
    if m_f != expected {
        return Err(Error::Mismatch {
            what: "closed-formula modulus",
            expected: expected.to_string(),
            actual: m_f.to_string(),
        });
    }
    let m = m_f.to_u64().ok_or_else(|| Error::TooLarge {
        value: m_f.clone(),
        context: "a u64 modulus",
    })?;
    let verified_period = pisano_period(&f, m)?;

    let mut with_k = Vec::new();
    let mut counterexamples = Vec::new();
    let mut scan_bound = 0;
    let mut ok = verified_period == k;
    if exhaustive {
        for d in divisors(m)? {
            let p = pisano_period(&f, d)?;
            if p == k {
                with_k.push(d);
            }
            // every divisor of 𝓕(k) must have period dividing k
            ok &= k.is_multiple_of(p);
        }
        ok &= with_k.last() == Some(&m);

        scan_bound = m.saturating_mul(4);
        for cand in 1..=scan_bound {
            if period_if_at_most(&f, cand, k)? == Some(k) && (cand > m || m % cand != 0) {
                counterexamples.push(cand);
            }
        }
        ok &= counterexamples.is_empty();
    }
    Ok(MaxModulusResult {
        k,
        m_f,
        predicted_form: form,
        verified_period,
        exhaustive_check: ok,
        divisors_with_period_k: with_k,
        scan_bound,
        scan_counterexamples: counterexamples,
    })
}

/// `L(j) = gcd(G(2j+1) - G(1), G(2j+2) - G(2))` for odd `j` and coprime seeds.
pub fn lucas_from_gcd(seed: &Seed, j: u64) -> Result<BigInt> {
    if j.is_multiple_of(2) {
        return Err(Error::invalid("j", "must be odd"));
    }
    seed.ensure_coprime()?;
    gcd_sum_value(seed, 2 * j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquaresGcdRecord {
    pub seed: Seed,
    pub k: u64,
    #[serde(with = "crate::serde_int")]
    pub empirical_value: BigInt,
    pub windows_used: u64,
    /// `F(k)` for the Fibonacci seed and even `k`.
    #[serde(with = "crate::serde_int::option")]
    pub conjectured: Option<BigInt>,
    pub matches_conjecture: Option<bool>,
    /// Always `"empirical"`: no closed form backs these values.
    pub label: String,
}

pub fn default_square_windows(k: u64) -> u64 {
    (2 * k + 10).max(50)
}

/// gcd of the first `num_windows` sums `G(n)² + ... + G(n+k-1)²`, `n >= 1`.
pub fn squares_gcd(seed: &Seed, k: u64, num_windows: u64) -> Result<SquaresGcdRecord> {
    seed.ensure_nondegenerate()?;
    let conjectured = (*seed == Seed::fibonacci() && k.is_multiple_of(2)).then(|| fib(k as i64));
    let empirical_value = if k == 0 {
        BigInt::zero()
    } else {
        if num_windows < 2 {
            return Err(Error::invalid("num_windows", "at least two windows are needed"));
        }
        let last = i64::try_from(num_windows + k - 1)
            .map_err(|_| Error::invalid("num_windows", "too large"))?;
        let squares: Vec<BigInt> = recurrence_terms(seed, 1, last)
            .into_iter()
            .map(|g| &g * &g)
            .collect();
        squares
            .windows(k as usize)
            .map(|w| w.iter().sum::<BigInt>())
            .fold(BigInt::zero(), |acc, s| acc.gcd(&s))
    };
    let matches_conjecture = conjectured.as_ref().map(|c| *c == empirical_value);
    Ok(SquaresGcdRecord {
        seed: seed.clone(),
        k,
        empirical_value,
        windows_used: if k == 0 { 0 } else { num_windows },
        conjectured,
        matches_conjecture,
        label: "empirical".to_string(),
    })
}
