//! Generalized Pisano periods and related modular scans.
//!
//! Residues are canonical in `[0, m)`. The pair map `(x, y) -> (y, x + y)` is
//! invertible modulo `m`, so every residue sequence is purely periodic and
//! returns to its starting pair within `m²` steps.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{seed_invariants, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub seed: Seed,
    pub modulus: u64,
    pub period: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityScanReport {
    pub seed: Seed,
    pub m_min: u64,
    pub m_max: u64,
    /// `(m, period)` for every scanned `m` with an odd period.
    pub odd_period_moduli: Vec<(u64, u64)>,
    /// Moduli where the seed reduces to `(0, 0)`.
    pub skipped_moduli: Vec<u64>,
}

pub fn residue(value: &BigInt, m: u64) -> u64 {
    value
        .mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue lies in [0, m)")
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

/// Period of the residue sequence starting at `(a, b)`. The all-zero
/// sequence has period 1.
fn residue_period(a: u64, b: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let cap = m.saturating_mul(m);
    let (mut x, mut y) = (b, add_mod(a, b, m));
    let mut steps = 1u64;
    while (x, y) != (a, b) {
        let z = add_mod(x, y, m);
        x = y;
        y = z;
        steps += 1;
        assert!(steps <= cap, "residue period modulo {m} exceeded m^2 steps");
    }
    steps
}

/// Periods keyed by `(g0 mod m, g1 mod m, m)`.
type PeriodCache = HashMap<(u64, u64, u64), u64>;

fn cache() -> &'static Mutex<PeriodCache> {
    static CACHE: OnceLock<Mutex<PeriodCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_residue_period(a: u64, b: u64, m: u64) -> u64 {
    if let Some(&p) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&(a, b, m)) {
        return p;
    }
    let p = residue_period(a, b, m);
    cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((a, b, m), p);
    p
}

fn checked_residues(seed: &Seed, m: u64) -> Result<(u64, u64)> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let (a, b) = (residue(&seed.g0, m), residue(&seed.g1, m));
    if m > 1 && a == 0 && b == 0 {
        return Err(Error::DegenerateResidues {
            g0: seed.g0.clone(),
            g1: seed.g1.clone(),
            m,
        });
    }
    Ok((a, b))
}

/// Least `r >= 1` with `(G(r), G(r+1)) ≡ (G0, G1) (mod m)`; `1` when `m = 1`.
pub fn pisano_period(seed: &Seed, m: u64) -> Result<u64> {
    let (a, b) = checked_residues(seed, m)?;
    Ok(cached_residue_period(a, b, m))
}

/// Same as [`pisano_period`] but never touches the shared cache.
pub fn pisano_period_uncached(seed: &Seed, m: u64) -> Result<u64> {
    let (a, b) = checked_residues(seed, m)?;
    Ok(residue_period(a, b, m))
}

/// Period of the residue sequence modulo `m`, treating a seed that vanishes
/// modulo `m` as the constant sequence of period 1. With this convention
/// `m | 𝒢(k)` holds exactly when the returned value divides `k`, for any seed.
pub fn residue_sequence_period(seed: &Seed, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(cached_residue_period(
        residue(&seed.g0, m),
        residue(&seed.g1, m),
        m,
    ))
}

/// Returns the period when it is at most `limit`, without iterating further.
pub fn period_if_at_most(seed: &Seed, m: u64, limit: u64) -> Result<Option<u64>> {
    let (a, b) = checked_residues(seed, m)?;
    if m == 1 {
        return Ok((limit >= 1).then_some(1));
    }
    let (mut x, mut y) = (a, b);
    for step in 1..=limit {
        let z = add_mod(x, y, m);
        x = y;
        y = z;
        if (x, y) == (a, b) {
            return Ok(Some(step));
        }
    }
    Ok(None)
}

pub fn period_record(seed: &Seed, m: u64) -> Result<PeriodRecord> {
    Ok(PeriodRecord {
        seed: seed.clone(),
        modulus: m,
        period: pisano_period(seed, m)?,
    })
}

/// Whether the period modulo `m` divides `k`.
pub fn period_divides_k(seed: &Seed, m: u64, k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::EmptyWindow);
    }
    Ok(k.is_multiple_of(pisano_period(seed, m)?))
}

/// Least `s >= 1` such that `m` divides every sum of `s` consecutive terms
/// `G(n) + ... + G(n+s-1)`, `n >= 1`, searching `s <= cap`.
///
/// A window sum equals `G(n+s+1) - G(n+1)`, and two consecutive vanishing
/// windows force every later one to vanish, so checking the starts
/// `1..=max(s, 2)` certifies a candidate exactly.
pub fn minimal_window_length(seed: &Seed, m: u64, cap: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::invalid("m", "modulus must be at least 2"));
    }
    seed.ensure_nondegenerate()?;
    let cap_len = usize::try_from(cap).map_err(|_| Error::invalid("cap", "too large"))?;
    // residues G(0) ..= G(2·cap + 3)
    let mut r = Vec::with_capacity(2 * cap_len + 4);
    r.push(residue(&seed.g0, m));
    r.push(residue(&seed.g1, m));
    while r.len() < 2 * cap_len + 4 {
        let n = r.len();
        r.push(add_mod(r[n - 1], r[n - 2], m));
    }
    for s in 1..=cap_len {
        let certified = (1..=s.max(2)).all(|n| r[n + s + 1] == r[n + 1]);
        if certified {
            return Ok(s as u64);
        }
    }
    Err(Error::SearchCapTooSmall { m, cap })
}

/// Lists every `m` in `(2, m_max]` whose period is odd.
pub fn parity_scan(seed: &Seed, m_max: u64) -> Result<ParityScanReport> {
    if m_max < 3 {
        return Err(Error::invalid("m_max", "must be at least 3"));
    }
    seed.ensure_nondegenerate()?;
    let mut odd = Vec::new();
    let mut skipped = Vec::new();
    for m in 3..=m_max {
        match pisano_period(seed, m) {
            Ok(p) if p % 2 == 1 => odd.push((m, p)),
            Ok(_) => {}
            Err(Error::DegenerateResidues { .. }) => skipped.push(m),
            Err(e) => return Err(e),
        }
    }
    Ok(ParityScanReport {
        seed: seed.clone(),
        m_min: 3,
        m_max,
        odd_period_moduli: odd,
        skipped_moduli: skipped,
    })
}

/// If the two residue sequences modulo `m` share a period and
/// `A(r + n) ≡ B(n)` for all `n`, returns the least such shift `r`.
pub fn equivalent_up_to_shift(a: &Seed, b: &Seed, m: u64) -> Result<Option<u64>> {
    let pa = pisano_period(a, m)?;
    let pb = pisano_period(b, m)?;
    if pa != pb {
        return Ok(None);
    }
    let target = (residue(&b.g0, m), residue(&b.g1, m));
    let (mut x, mut y) = (residue(&a.g0, m), residue(&a.g1, m));
    for r in 0..pa {
        if (x, y) == target {
            return Ok(Some(r));
        }
        let z = add_mod(x, y, m);
        x = y;
        y = z;
    }
    Ok(None)
}

/// `lcm(π(m1), π(m2))` for coprime `m1, m2`, checked against `π(m1·m2)`.
pub fn period_lcm_compose(seed: &Seed, m1: u64, m2: u64) -> Result<u64> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::ZeroModulus);
    }
    if m1.gcd(&m2) != 1 {
        return Err(Error::NonCoprimeModuli { m1, m2 });
    }
    let composed = pisano_period(seed, m1)?.lcm(&pisano_period(seed, m2)?);
    let product = m1
        .checked_mul(m2)
        .ok_or_else(|| Error::invalid("m1*m2", "product overflows u64"))?;
    let direct = pisano_period(seed, product)?;
    if composed != direct {
        return Err(Error::Mismatch {
            what: "lcm of coprime periods",
            expected: direct.to_string(),
            actual: composed.to_string(),
        });
    }
    Ok(composed)
}

/// `(-1)^π · D ≡ D (mod m)`.
pub fn sign_congruence_holds(seed: &Seed, m: u64) -> Result<bool> {
    let p = pisano_period(seed, m)?;
    let d = seed_invariants(seed)?.d;
    let lhs = if p % 2 == 0 { d.clone() } else { -d.clone() };
    Ok(residue(&lhs, m) == residue(&d, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{small_grid, suite_grid};
    use crate::sequences::recurrence_terms;

    #[test]
    fn period_examples() {
        assert_eq!(pisano_period(&Seed::fibonacci(), 10).unwrap(), 60);
        assert_eq!(pisano_period(&Seed::new(1, 4), 11).unwrap(), 5);
        assert_eq!(pisano_period(&Seed::lucas(), 5).unwrap(), 4);
        for seed in suite_grid() {
            assert_eq!(pisano_period(&seed, 2).unwrap(), 3, "{seed}");
            assert_eq!(pisano_period(&seed, 1).unwrap(), 1);
        }
        assert_eq!(pisano_period(&Seed::new(0, 0), 1).unwrap(), 1);
    }

    #[test]
    fn period_errors() {
        assert_eq!(pisano_period(&Seed::fibonacci(), 0), Err(Error::ZeroModulus));
        assert!(matches!(
            pisano_period(&Seed::new(3, 6), 3),
            Err(Error::DegenerateResidues { m: 3, .. })
        ));
        assert_eq!(residue_sequence_period(&Seed::new(3, 6), 3).unwrap(), 1);
        assert_eq!(pisano_period(&Seed::new(-1, -3), 7).unwrap(), pisano_period(&Seed::new(6, 4), 7).unwrap());
    }

    #[test]
    fn cached_and_uncached_agree() {
        for seed in small_grid() {
            for m in 1..80 {
                assert_eq!(pisano_period(&seed, m), pisano_period_uncached(&seed, m));
            }
        }
    }

    #[test]
    fn divides_k_examples() {
        assert!(period_divides_k(&Seed::fibonacci(), 2, 9).unwrap());
        assert!(!period_divides_k(&Seed::fibonacci(), 2, 8).unwrap());
        assert!(period_divides_k(&Seed::new(1, 4), 11, 5).unwrap());
        assert_eq!(period_divides_k(&Seed::fibonacci(), 2, 0), Err(Error::EmptyWindow));
    }

    #[test]
    fn minimal_window_examples() {
        assert_eq!(minimal_window_length(&Seed::fibonacci(), 2, 12).unwrap(), 3);
        assert_eq!(minimal_window_length(&Seed::lucas(), 5, 24).unwrap(), 4);
        assert_eq!(minimal_window_length(&Seed::fibonacci(), 10, 60).unwrap(), 60);
        assert_eq!(
            minimal_window_length(&Seed::fibonacci(), 10, 59),
            Err(Error::SearchCapTooSmall { m: 10, cap: 59 })
        );
    }

    #[test]
    fn minimal_window_equals_period() {
        // Empirical check of the minimality claim for window sums.
        for seed in small_grid() {
            for m in 2..=60 {
                let p = pisano_period(&seed, m).unwrap();
                assert_eq!(minimal_window_length(&seed, m, 6 * m).unwrap(), p, "{seed} mod {m}");
            }
        }
    }

    #[test]
    fn parity_scan_examples() {
        assert!(parity_scan(&Seed::fibonacci(), 500).unwrap().odd_period_moduli.is_empty());
        assert!(parity_scan(&Seed::lucas(), 500).unwrap().odd_period_moduli.is_empty());
        let r = parity_scan(&Seed::new(1, 4), 500).unwrap();
        assert!(r.odd_period_moduli.contains(&(11, 5)));
        assert!(parity_scan(&Seed::fibonacci(), 2).is_err());
    }

    #[test]
    fn shift_equivalence_examples() {
        let f = Seed::fibonacci();
        let l = Seed::lucas();
        for m in 2..30 {
            assert_eq!(equivalent_up_to_shift(&f, &f, m).unwrap(), Some(0));
        }
        assert_eq!(equivalent_up_to_shift(&f, &l, 5).unwrap(), None);
        // (1, 3) is the Lucas sequence shifted by one
        assert_eq!(equivalent_up_to_shift(&l, &Seed::new(1, 3), 5).unwrap(), Some(1));
    }

    #[test]
    fn delta_five_iff_lucas_mod_five() {
        for seed in suite_grid() {
            let delta = seed_invariants(&seed).unwrap().delta;
            let eq = equivalent_up_to_shift(&seed, &Seed::lucas(), 5).unwrap().is_some();
            assert_eq!(delta == BigInt::from(5), eq, "{seed}");
        }
    }

    #[test]
    fn lcm_compose_examples() {
        assert_eq!(period_lcm_compose(&Seed::fibonacci(), 2, 5).unwrap(), 60);
        assert_eq!(
            period_lcm_compose(&Seed::lucas(), 5, 3).unwrap(),
            pisano_period(&Seed::lucas(), 15).unwrap()
        );
        for m in 1..50 {
            assert_eq!(
                period_lcm_compose(&Seed::new(1, 4), 1, m).unwrap(),
                pisano_period(&Seed::new(1, 4), m).unwrap()
            );
        }
        assert_eq!(
            period_lcm_compose(&Seed::fibonacci(), 4, 6),
            Err(Error::NonCoprimeModuli { m1: 4, m2: 6 })
        );
    }

    #[test]
    fn periodicity_and_minimality() {
        for seed in small_grid() {
            for m in 2..=200u64 {
                let p = pisano_period(&seed, m).unwrap();
                let r: Vec<u64> = recurrence_terms(&seed, 0, 4 * p as i64 + 1)
                    .iter()
                    .map(|v| residue(v, m))
                    .collect();
                for n in 0..=(3 * p) as usize {
                    assert_eq!(r[n + p as usize], r[n]);
                }
                for q in 1..p as usize {
                    assert!((r[q], r[q + 1]) != (r[0], r[1]));
                }
            }
        }
    }

    #[test]
    fn period_bound_and_range() {
        let f = Seed::fibonacci();
        for m in 2..=1000u64 {
            let p = pisano_period(&f, m).unwrap();
            assert!(p <= 6 * m, "π({m}) = {p}");
            assert!(p == 3 || (p.is_multiple_of(2) && p >= 6), "π({m}) = {p}");
        }
        assert_eq!(pisano_period(&f, 10).unwrap(), 60);
    }

    #[test]
    fn inert_prime_power_periods_match_fibonacci() {
        let f = Seed::fibonacci();
        for p in [3u64, 7, 13, 17, 23, 43] {
            for e in 1..=2 {
                let q = p.pow(e);
                let pf = pisano_period(&f, q).unwrap();
                for seed in suite_grid() {
                    assert_eq!(pisano_period(&seed, q).unwrap(), pf, "{seed} mod {q}");
                }
            }
        }
    }

    #[test]
    fn sign_congruence() {
        for seed in suite_grid() {
            for m in 3..=200 {
                assert!(sign_congruence_holds(&seed, m).unwrap(), "{seed} mod {m}");
            }
        }
    }

    #[test]
    fn bounded_period_search() {
        let f = Seed::fibonacci();
        assert_eq!(period_if_at_most(&f, 10, 60).unwrap(), Some(60));
        assert_eq!(period_if_at_most(&f, 10, 59).unwrap(), None);
        assert_eq!(period_if_at_most(&f, 1, 5).unwrap(), Some(1));
    }
}
