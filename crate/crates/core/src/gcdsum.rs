//! The GCD of all sums of `k` consecutive Gibonacci numbers, `𝒢(k)`.
//!
//! Three routes are provided and cross-checked by the suites:
//! the closed formula `gcd(G(k+1) - G(1), G(k+2) - G(2))`, a brute-force gcd
//! over directly summed windows, and the lcm of all moduli whose period
//! divides `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::applications::factor::divisors;
use crate::error::{Error, Result};
use crate::pisano::{pisano_period, residue_sequence_period};
use crate::sequences::{fib, gib_term, lucas, recurrence_terms, seed_invariants, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedGcd,
    BruteForce,
    LcmPeriods,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdSumResult {
    pub seed: Seed,
    pub k: u64,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
    pub method: Method,
    /// Set by a bounded lcm scan whose bound is below the true value.
    #[serde(default)]
    pub partial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "bound")]
pub enum LcmMode {
    /// lcm over the divisors of the closed-formula value, asserted equal to it.
    DivisorVerified,
    /// lcm over every `m <= B`; a lower bound on the true value.
    BoundedScan(u64),
}

fn check_args(seed: &Seed, k: u64) -> Result<i64> {
    seed.ensure_nondegenerate()?;
    if k == 0 {
        return Err(Error::EmptyWindow);
    }
    i64::try_from(k).map_err(|_| Error::invalid("k", "exceeds i64 range"))
}

/// Closed-formula value of `𝒢(k)`, valid for any nondegenerate seed.
pub fn gcd_sum_value(seed: &Seed, k: u64) -> Result<BigInt> {
    let k = check_args(seed, k)?;
    let a = gib_term(seed, k + 1) - &seed.g1;
    let b = gib_term(seed, k + 2) - (&seed.g0 + &seed.g1);
    Ok(a.gcd(&b))
}

pub fn gcd_sum(seed: &Seed, k: u64) -> Result<GcdSumResult> {
    Ok(GcdSumResult {
        seed: seed.clone(),
        k,
        value: gcd_sum_value(seed, k)?,
        method: Method::ClosedGcd,
        partial: false,
    })
}

/// gcd of the first `num_windows` window sums, each added up term by term.
pub fn gcd_sum_bruteforce(seed: &Seed, k: u64, num_windows: u64) -> Result<GcdSumResult> {
    let k_i = check_args(seed, k)?;
    if num_windows < 2 {
        return Err(Error::invalid("num_windows", "at least two windows are needed"));
    }
    let n = i64::try_from(num_windows).map_err(|_| Error::invalid("num_windows", "too large"))?;
    // G(1) ..= G(num_windows + k - 1)
    let terms = recurrence_terms(seed, 1, n + k_i - 1);
    let k_u = k as usize;
    let value = terms
        .windows(k_u)
        .map(|w| w.iter().sum::<BigInt>())
        .fold(BigInt::zero(), |acc, s| acc.gcd(&s));
    Ok(GcdSumResult {
        seed: seed.clone(),
        k,
        value,
        method: Method::BruteForce,
        partial: false,
    })
}

/// `𝒢(k)` as `lcm { m : π(m) | k }`.
pub fn gcd_sum_lcm(seed: &Seed, k: u64, mode: LcmMode) -> Result<GcdSumResult> {
    check_args(seed, k)?;
    let (value, partial) = match mode {
        LcmMode::DivisorVerified => {
            seed.ensure_coprime()?;
            let candidate = gcd_sum_value(seed, k)?;
            let v = candidate.to_u64().ok_or_else(|| Error::TooLarge {
                value: candidate.clone(),
                context: "divisor enumeration",
            })?;
            let mut acc = 1u64;
            for d in divisors(v)? {
                if k.is_multiple_of(pisano_period(seed, d)?) {
                    acc = acc.lcm(&d);
                }
            }
            if BigInt::from(acc) != candidate {
                return Err(Error::Mismatch {
                    what: "lcm over divisors",
                    expected: candidate.to_string(),
                    actual: acc.to_string(),
                });
            }
            (candidate, false)
        }
        LcmMode::BoundedScan(bound) => {
            if bound < 1 {
                return Err(Error::invalid("bound", "must be at least 1"));
            }
            let mut acc = BigInt::one();
            for m in 1..=bound {
                if k.is_multiple_of(residue_sequence_period(seed, m)?) {
                    acc = acc.lcm(&BigInt::from(m));
                }
            }
            let partial = BigInt::from(bound) < gcd_sum_value(seed, k)?;
            (acc, partial)
        }
    };
    Ok(GcdSumResult {
        seed: seed.clone(),
        k,
        value,
        method: Method::LcmPeriods,
        partial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSeed {
    #[serde(with = "crate::serde_int")]
    pub d: BigInt,
    pub reduced: Seed,
}

/// Splits off `d = gcd(G0, G1)`; then `𝒢(k) = d · 𝒢'(k)` for the reduced seed.
pub fn reduce_seed(seed: &Seed) -> Result<ReducedSeed> {
    seed.ensure_nondegenerate()?;
    let d = seed.content();
    Ok(ReducedSeed {
        reduced: Seed::new(&seed.g0 / &d, &seed.g1 / &d),
        d,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseRow {
    /// `k ≡ 0, 4, 8 (mod 12)`
    #[serde(rename = "row_048")]
    Row048,
    /// `k ≡ 2, 6, 10 (mod 12)`
    #[serde(rename = "row_2610")]
    Row2610,
    /// `k ≡ 3, 9 (mod 12)`
    #[serde(rename = "row_39")]
    Row39,
    /// `k ≡ 1, 5, 7, 11 (mod 12)`
    #[serde(rename = "row_15711")]
    Row15711,
}

impl CaseRow {
    pub fn for_k(k: u64) -> CaseRow {
        match k % 12 {
            0 | 4 | 8 => CaseRow::Row048,
            2 | 6 | 10 => CaseRow::Row2610,
            3 | 9 => CaseRow::Row39,
            _ => CaseRow::Row15711,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Footnote {
    #[serde(rename = "delta_is_1")]
    DeltaIs1,
    #[serde(rename = "delta_is_5")]
    DeltaIs5,
    DIsUnit,
    DNotUnit,
    None,
}

/// Serialized as a decimal string, or `"table-inapplicable"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    Value(BigInt),
    TableInapplicable,
}

const INAPPLICABLE: &str = "table-inapplicable";

impl Serialize for Prediction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Prediction::Value(v) => s.serialize_str(&v.to_string()),
            Prediction::TableInapplicable => s.serialize_str(INAPPLICABLE),
        }
    }
}

impl<'de> Deserialize<'de> for Prediction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == INAPPLICABLE {
            return Ok(Prediction::TableInapplicable);
        }
        text.parse()
            .map(Prediction::Value)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub seed: Seed,
    pub k: u64,
    pub residue_mod_12: u64,
    pub case_row: CaseRow,
    pub predicted: Prediction,
    pub footnote: Footnote,
    #[serde(with = "crate::serde_int")]
    pub delta: BigInt,
    #[serde(with = "crate::serde_int")]
    pub d: BigInt,
    #[serde(with = "crate::serde_int")]
    pub actual: BigInt,
}

impl Classification {
    /// True unless the table applies and disagrees with the closed formula.
    pub fn conforms(&self) -> bool {
        match &self.predicted {
            Prediction::Value(v) => *v == self.actual,
            Prediction::TableInapplicable => true,
        }
    }
}

/// Places `(seed, k)` in its residue-class row and compares the row's
/// predicted value with the closed formula. Requires a coprime seed.
pub fn classify(seed: &Seed, k: u64) -> Result<Classification> {
    seed.ensure_coprime()?;
    let actual = gcd_sum_value(seed, k)?;
    let inv = seed_invariants(seed)?;
    let row = CaseRow::for_k(k);
    let half = (k / 2) as i64;
    let (predicted, footnote) = match row {
        CaseRow::Row048 => {
            let foot = if inv.delta.is_one() {
                Footnote::DeltaIs1
            } else {
                Footnote::DeltaIs5
            };
            (Prediction::Value(&inv.delta * fib(half)), foot)
        }
        CaseRow::Row2610 => (Prediction::Value(lucas(half)), Footnote::None),
        CaseRow::Row39 | CaseRow::Row15711 => {
            if inv.d_is_unit() {
                let v = if row == CaseRow::Row39 { 2 } else { 1 };
                (Prediction::Value(BigInt::from(v)), Footnote::DIsUnit)
            } else {
                (Prediction::TableInapplicable, Footnote::DNotUnit)
            }
        }
    };
    Ok(Classification {
        seed: seed.clone(),
        k,
        residue_mod_12: k % 12,
        case_row: row,
        predicted,
        footnote,
        delta: inv.delta,
        d: inv.d,
        actual,
    })
}

/// Classification of an arbitrary seed through its coprime reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledClassification {
    #[serde(with = "crate::serde_int")]
    pub scale: BigInt,
    pub classification: Classification,
    /// `scale · predicted`, when the table applies.
    #[serde(with = "crate::serde_int::option")]
    pub scaled_predicted: Option<BigInt>,
    #[serde(with = "crate::serde_int")]
    pub scaled_actual: BigInt,
}

pub fn classify_with_reduction(seed: &Seed, k: u64) -> Result<ScaledClassification> {
    let ReducedSeed { d, reduced } = reduce_seed(seed)?;
    let classification = classify(&reduced, k)?;
    let scaled_predicted = match &classification.predicted {
        Prediction::Value(v) => Some(v * &d),
        Prediction::TableInapplicable => None,
    };
    let scaled_actual = &classification.actual * &d;
    Ok(ScaledClassification {
        scale: d,
        classification,
        scaled_predicted,
        scaled_actual,
    })
}

/// A point where `π(m) | k` and `m | 𝒢(k)` disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconditionalViolation {
    pub seed: Seed,
    pub m: u64,
    pub k: u64,
    pub period_divides: bool,
    pub modulus_divides: bool,
}

/// Exhaustively compares `π(m) | k` with `m | 𝒢(k)` over the given ranges.
///
/// Coprime seeds only, unless `allow_non_coprime` is set; in that case a
/// modulus dividing both seed entries counts as period 1.
pub fn biconditional_violations(
    seed: &Seed,
    m_range: (u64, u64),
    k_range: (u64, u64),
    allow_non_coprime: bool,
) -> Result<Vec<BiconditionalViolation>> {
    if allow_non_coprime {
        seed.ensure_nondegenerate()?;
    } else {
        seed.ensure_coprime()?;
    }
    let values = (k_range.0..=k_range.1)
        .map(|k| gcd_sum_value(seed, k).map(|v| (k, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for m in m_range.0.max(1)..=m_range.1 {
        let p = residue_sequence_period(seed, m)?;
        let big_m = BigInt::from(m);
        for (k, v) in &values {
            let period_divides = k % p == 0;
            let modulus_divides = (v % &big_m).is_zero();
            if period_divides != modulus_divides {
                out.push(BiconditionalViolation {
                    seed: seed.clone(),
                    m,
                    k: *k,
                    period_divides,
                    modulus_divides,
                });
            }
        }
    }
    Ok(out)
}

/// `actual / F(k/2)` for `k ≡ 0 (mod 4)`; `None` for other `k`.
pub fn row048_ratio(seed: &Seed, k: u64) -> Result<Option<BigInt>> {
    if !k.is_multiple_of(4) {
        return Ok(None);
    }
    let v = gcd_sum_value(seed, k)?;
    let f = fib((k / 2) as i64).abs();
    Ok(Some(v / f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{small_grid, suite_grid};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn closed_examples() {
        assert_eq!(gcd_sum(&Seed::fibonacci(), 20).unwrap().value, big(55));
        assert_eq!(gcd_sum(&Seed::new(1, 4), 5).unwrap().value, big(11));
        assert_eq!(gcd_sum(&Seed::fibonacci(), 60).unwrap().value, big(832040));
        for seed in small_grid() {
            assert_eq!(gcd_sum_value(&seed, 1).unwrap(), big(1));
        }
        assert_eq!(gcd_sum(&Seed::fibonacci(), 0), Err(Error::EmptyWindow));
        assert_eq!(gcd_sum(&Seed::new(0, 0), 3), Err(Error::DegenerateSeed));
    }

    #[test]
    fn bruteforce_examples() {
        let r = gcd_sum_bruteforce(&Seed::new(1, 4), 5, 4).unwrap();
        assert_eq!((r.value, r.method), (big(11), Method::BruteForce));
        // F1..F20 sums to 17710 and F2..F21 to 28655; gcd is 55.
        let direct: Vec<BigInt> = (1..=2)
            .map(|n| (n..n + 20).map(fib).sum())
            .collect();
        assert_eq!(direct, vec![big(17710), big(28655)]);
        assert_eq!(big(17710).gcd(&big(28655)), big(55));
        assert_eq!(gcd_sum_bruteforce(&Seed::fibonacci(), 20, 2).unwrap().value, big(55));
        assert_eq!(gcd_sum_bruteforce(&Seed::fibonacci(), 1, 10).unwrap().value, big(1));
        assert!(gcd_sum_bruteforce(&Seed::fibonacci(), 5, 1).is_err());
    }

    #[test]
    fn lcm_examples() {
        let f = Seed::fibonacci();
        let r = gcd_sum_lcm(&f, 12, LcmMode::DivisorVerified).unwrap();
        assert_eq!(r.value, big(8));
        assert_eq!(pisano_period(&f, 8).unwrap(), 12);
        assert_eq!(gcd_sum_lcm(&Seed::new(1, 4), 5, LcmMode::DivisorVerified).unwrap().value, big(11));
        for seed in small_grid() {
            let r = gcd_sum_lcm(&seed, 1, LcmMode::BoundedScan(100)).unwrap();
            assert_eq!(r.value, big(1));
            assert!(!r.partial);
        }
        let partial = gcd_sum_lcm(&f, 60, LcmMode::BoundedScan(100)).unwrap();
        assert!(partial.partial);
        assert!(gcd_sum_lcm(&f, 5, LcmMode::BoundedScan(0)).is_err());
        assert!(matches!(
            gcd_sum_lcm(&Seed::new(2, 4), 5, LcmMode::DivisorVerified),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn bounded_scan_handles_non_coprime_seeds() {
        for k in 1..=12 {
            let seed = Seed::new(3, 9);
            let closed = gcd_sum_value(&seed, k).unwrap();
            let bound = closed.to_u64().unwrap();
            assert_eq!(gcd_sum_lcm(&seed, k, LcmMode::BoundedScan(bound)).unwrap().value, closed);
        }
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_seed(&Seed::new(2, 4)).unwrap();
        assert_eq!((r.d, r.reduced), (big(2), Seed::new(1, 2)));
        let r = reduce_seed(&Seed::fibonacci()).unwrap();
        assert_eq!((r.d, r.reduced), (big(1), Seed::fibonacci()));
        assert_eq!(
            gcd_sum_value(&Seed::new(3, 9), 6).unwrap(),
            big(3) * gcd_sum_value(&Seed::new(1, 3), 6).unwrap()
        );
        let r = reduce_seed(&Seed::new(-4, 6)).unwrap();
        assert_eq!((r.d, r.reduced), (big(2), Seed::new(-2, 3)));
        assert_eq!(reduce_seed(&Seed::new(0, 0)), Err(Error::DegenerateSeed));
    }

    #[test]
    fn scaling_law() {
        for seed in small_grid() {
            for d in 1..=5 {
                for k in 1..=40 {
                    assert_eq!(
                        gcd_sum_value(&seed.scaled(&big(d)), k).unwrap(),
                        big(d) * gcd_sum_value(&seed, k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&Seed::fibonacci(), 20).unwrap();
        assert_eq!(c.case_row, CaseRow::Row048);
        assert_eq!(c.predicted, Prediction::Value(big(55)));
        assert_eq!(c.actual, big(55));
        assert_eq!(c.footnote, Footnote::DeltaIs1);

        let c = classify(&Seed::lucas(), 12).unwrap();
        assert_eq!(c.predicted, Prediction::Value(big(40)));
        assert_eq!(c.footnote, Footnote::DeltaIs5);
        assert!(c.conforms());

        let c = classify(&Seed::fibonacci(), 6).unwrap();
        assert_eq!(c.case_row, CaseRow::Row2610);
        assert_eq!(c.predicted, Prediction::Value(big(4)));
        assert_eq!(big(12).gcd(&big(20)), big(4));

        let c = classify(&Seed::new(1, 4), 5).unwrap();
        assert_eq!(c.case_row, CaseRow::Row15711);
        assert_eq!(c.predicted, Prediction::TableInapplicable);
        assert_eq!(c.footnote, Footnote::DNotUnit);
        assert_eq!(c.actual, big(11));

        let c = classify(&Seed::fibonacci(), 9).unwrap();
        assert_eq!((c.case_row, c.predicted), (CaseRow::Row39, Prediction::Value(big(2))));

        assert!(matches!(classify(&Seed::new(2, 4), 4), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn classify_with_reduction_scales() {
        let c = classify_with_reduction(&Seed::new(0, 3), 20).unwrap();
        assert_eq!(c.scale, big(3));
        assert_eq!(c.scaled_predicted, Some(big(165)));
        assert_eq!(c.scaled_actual, gcd_sum_value(&Seed::new(0, 3), 20).unwrap());
    }

    #[test]
    fn table_conforms_on_grid() {
        for seed in suite_grid() {
            for k in 1..=120 {
                let c = classify(&seed, k).unwrap();
                assert!(c.conforms(), "{seed}, k={k}: {c:?}");
            }
        }
    }

    #[test]
    fn row048_ratio_is_delta() {
        for seed in suite_grid() {
            let delta = seed_invariants(&seed).unwrap().delta;
            for k in (4..=120).step_by(4) {
                assert_eq!(row048_ratio(&seed, k).unwrap(), Some(delta.clone()));
            }
        }
        assert_eq!(row048_ratio(&Seed::fibonacci(), 6).unwrap(), None);
    }

    #[test]
    fn biconditional_on_grid() {
        for seed in small_grid() {
            assert!(biconditional_violations(&seed, (2, 60), (1, 36), false).unwrap().is_empty());
        }
        assert!(biconditional_violations(&Seed::new(2, 4), (2, 10), (1, 5), false).is_err());
    }

    #[test]
    fn biconditional_non_coprime_experiment() {
        for seed in [Seed::new(2, 4), Seed::new(3, 9), Seed::new(-6, 10)] {
            assert!(biconditional_violations(&seed, (2, 60), (1, 36), true).unwrap().is_empty());
        }
    }

    #[test]
    fn window_multiples_of_period() {
        use crate::sequences::window_sum;
        for seed in small_grid() {
            for m in 2..=50u64 {
                let p = pisano_period(&seed, m).unwrap();
                for n in 1..=(2 * p) as i64 {
                    let s = window_sum(&seed, n, p).unwrap();
                    assert!((s % BigInt::from(m)).is_zero());
                }
            }
        }
    }
}
