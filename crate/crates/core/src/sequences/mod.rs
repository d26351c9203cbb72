//! Exact evaluation of Fibonacci, Lucas and Gibonacci terms.
//!
//! Single terms are computed by fast doubling in `O(log n)` big-integer
//! multiplications. Negative indices are handled by the reflection formulas
//! `F(-n) = (-1)^(n+1) F(n)` and `L(-n) = (-1)^n L(n)` rather than by running
//! the doubling backwards. Ranges of consecutive terms are produced by plain
//! recurrence stepping, which gives the test-suites a second, independent
//! route to every value.

pub mod identities;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Initial conditions `(G0, G1)` of a Gibonacci sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    #[serde(with = "crate::serde_int")]
    pub g0: BigInt,
    #[serde(with = "crate::serde_int")]
    pub g1: BigInt,
}

impl Seed {
    pub fn new(g0: impl Into<BigInt>, g1: impl Into<BigInt>) -> Self {
        Seed {
            g0: g0.into(),
            g1: g1.into(),
        }
    }

    /// `(0, 1)`
    pub fn fibonacci() -> Self {
        Seed::new(0, 1)
    }

    /// `(2, 1)`
    pub fn lucas() -> Self {
        Seed::new(2, 1)
    }

    pub fn is_degenerate(&self) -> bool {
        self.g0.is_zero() && self.g1.is_zero()
    }

    /// Nonnegative `gcd(G0, G1)`.
    pub fn content(&self) -> BigInt {
        self.g0.gcd(&self.g1)
    }

    pub fn is_coprime(&self) -> bool {
        self.content().is_one()
    }

    pub fn scaled(&self, factor: &BigInt) -> Seed {
        Seed {
            g0: &self.g0 * factor,
            g1: &self.g1 * factor,
        }
    }

    pub(crate) fn ensure_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateSeed)
        } else {
            Ok(())
        }
    }

    pub(crate) fn ensure_coprime(&self) -> Result<()> {
        self.ensure_nondegenerate()?;
        if self.is_coprime() {
            Ok(())
        } else {
            Err(Error::NotCoprime {
                g0: self.g0.clone(),
                g1: self.g1.clone(),
            })
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g0, self.g1)
    }
}

impl FromStr for Seed {
    type Err = Error;

    /// Parses `g0,g1`, e.g. `-3,7`; the displayed form `(g0, g1)` is accepted too.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("seed", format!("expected 'g0,g1', got '{s}'"));
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let g0 = a.trim().parse::<BigInt>().map_err(|_| bad())?;
        let g1 = b.trim().parse::<BigInt>().map_err(|_| bad())?;
        Ok(Seed { g0, g1 })
    }
}

/// The seed invariants `Δ = gcd(G0 + G2, G1 + G3)` and `D = G1² − G0·G1 − G0²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedInvariants {
    #[serde(with = "crate::serde_int")]
    pub delta: BigInt,
    #[serde(with = "crate::serde_int")]
    pub d: BigInt,
}

impl SeedInvariants {
    /// True when `D = ±1`.
    pub fn d_is_unit(&self) -> bool {
        self.d.abs().is_one()
    }
}

fn sign_for(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `(F(n), F(n+1))` for `n >= 0` by fast doubling.
fn fib_pair_nonneg(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    if n == 0 {
        return (a, b);
    }
    for bit in (0..64 - n.leading_zeros()).rev() {
        // (F(k), F(k+1)) -> (F(2k), F(2k+1))
        let two_b_minus_a = (&b << 1u32) - &a;
        let even = &a * two_b_minus_a;
        let odd = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &even + &odd;
            a = odd;
        } else {
            a = even;
            b = odd;
        }
    }
    (a, b)
}

/// `(L(n), L(n+1))` for `n >= 0` by fast doubling on the Lucas numbers
/// directly, independent of the Fibonacci routine.
fn lucas_pair_nonneg(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::from(2);
    let mut b = BigInt::one();
    let mut k_odd = false;
    if n == 0 {
        return (a, b);
    }
    for bit in (0..64 - n.leading_zeros()).rev() {
        // L(2k) = L(k)^2 - 2(-1)^k, L(2k+1) = L(k)L(k+1) - (-1)^k
        let sign = sign_for(k_odd);
        let even = &a * &a - &sign * 2;
        let odd = &a * &b - &sign;
        if (n >> bit) & 1 == 1 {
            b = &even + &odd;
            a = odd;
            k_odd = true;
        } else {
            a = even;
            b = odd;
            k_odd = false;
        }
    }
    (a, b)
}

/// The Fibonacci number `F(n)` for any integer `n`.
pub fn fib(n: i64) -> BigInt {
    let (f, _) = fib_pair_nonneg(n.unsigned_abs());
    if n < 0 && n % 2 == 0 {
        -f
    } else {
        f
    }
}

/// The Lucas number `L(n)` for any integer `n`.
pub fn lucas(n: i64) -> BigInt {
    let (l, _) = lucas_pair_nonneg(n.unsigned_abs());
    if n < 0 && n % 2 != 0 {
        -l
    } else {
        l
    }
}

/// `(F(n-1), F(n))` for any integer `n`.
fn fib_prev_pair(n: i64) -> (BigInt, BigInt) {
    if n >= 1 {
        let (f_prev, f) = fib_pair_nonneg((n - 1) as u64);
        (f_prev, f)
    } else {
        (fib(n - 1), fib(n))
    }
}

/// The Gibonacci term `G(n) = G0·F(n-1) + G1·F(n)` for any integer `n`.
pub fn gib_term(seed: &Seed, n: i64) -> BigInt {
    let (f_prev, f) = fib_prev_pair(n);
    &seed.g0 * f_prev + &seed.g1 * f
}

/// Consecutive terms `G(lo), ..., G(hi)` by stepping the recurrence forwards
/// from `(G0, G1)` and backwards via `G(n-1) = G(n+1) - G(n)`.
pub fn recurrence_terms(seed: &Seed, lo: i64, hi: i64) -> Vec<BigInt> {
    if hi < lo {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    // Walk to G(lo) first.
    let (mut cur, mut next) = (seed.g0.clone(), seed.g1.clone());
    let mut idx = 0i64;
    while idx > lo {
        let prev = &next - &cur;
        next = cur;
        cur = prev;
        idx -= 1;
    }
    while idx < lo {
        let after = &cur + &next;
        cur = next;
        next = after;
        idx += 1;
    }
    loop {
        out.push(cur.clone());
        if idx == hi {
            break;
        }
        let after = &cur + &next;
        cur = next;
        next = after;
        idx += 1;
    }
    out
}

/// Iterator over `G(0), G(1), G(2), ...`
#[derive(Debug, Clone)]
pub struct Terms {
    cur: BigInt,
    next: BigInt,
}

impl Iterator for Terms {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let after = &self.cur + &self.next;
        let out = std::mem::replace(&mut self.cur, std::mem::replace(&mut self.next, after));
        Some(out)
    }
}

pub fn terms(seed: &Seed) -> Terms {
    Terms {
        cur: seed.g0.clone(),
        next: seed.g1.clone(),
    }
}

/// `G(n) + ... + G(n+k-1)`, computed as `G(n+k+1) - G(n+1)`.
pub fn window_sum(seed: &Seed, n: i64, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::EmptyWindow);
    }
    let k = i64::try_from(k).map_err(|_| Error::invalid("k", "exceeds i64 range"))?;
    Ok(gib_term(seed, n + k + 1) - gib_term(seed, n + 1))
}

/// Window sum by adding the `k` terms one at a time.
pub fn window_sum_direct(seed: &Seed, n: i64, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::EmptyWindow);
    }
    let k = i64::try_from(k).map_err(|_| Error::invalid("k", "exceeds i64 range"))?;
    Ok(recurrence_terms(seed, n, n + k - 1).into_iter().sum())
}

/// `D` evaluated on an arbitrary consecutive pair `(a, b)`: `b² − ab − a²`.
pub fn d_of_pair(a: &BigInt, b: &BigInt) -> BigInt {
    b * b - a * b - a * a
}

pub fn seed_invariants(seed: &Seed) -> Result<SeedInvariants> {
    seed.ensure_nondegenerate()?;
    let g2 = &seed.g0 + &seed.g1;
    let g3 = &seed.g1 + &g2;
    let delta = (&seed.g0 + &g2).gcd(&(&seed.g1 + &g3));
    Ok(SeedInvariants {
        delta,
        d: d_of_pair(&seed.g0, &seed.g1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_fib(n: i64) -> BigInt {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        if n >= 0 {
            for _ in 0..n {
                let t = &a + &b;
                a = b;
                b = t;
            }
        } else {
            // F(k-1) = F(k+1) - F(k)
            for _ in 0..-n {
                let prev = &b - &a;
                b = a;
                a = prev;
            }
        }
        a
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib(10), BigInt::from(55));
        assert_eq!(fib(0), BigInt::zero());
        assert_eq!(fib(-1), BigInt::one());
        assert_eq!(fib(30), BigInt::from(832040));
        assert_eq!(fib(-2), BigInt::from(-1));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas(0), BigInt::from(2));
        assert_eq!(lucas(9), BigInt::from(76));
        assert_eq!(lucas(5), BigInt::from(11));
        assert_eq!(lucas(-1), BigInt::from(-1));
    }

    #[test]
    fn fast_doubling_matches_naive() {
        let mut naive = BigInt::zero();
        let mut naive_next = BigInt::one();
        for n in 0..=2000i64 {
            assert_eq!(fib(n), naive, "F({n})");
            let t = &naive + &naive_next;
            naive = std::mem::replace(&mut naive_next, t);
        }
        for n in [-1i64, -2, -17, -500, -1999, -2000] {
            assert_eq!(fib(n), naive_fib(n), "F({n})");
        }
    }

    #[test]
    fn lucas_matches_recurrence() {
        let seq = recurrence_terms(&Seed::lucas(), -300, 300);
        for (i, v) in seq.iter().enumerate() {
            assert_eq!(&lucas(i as i64 - 300), v);
        }
    }

    #[test]
    fn reflection_formulas() {
        for n in 0..=200i64 {
            let sign_f = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let sign_l = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(fib(-n), fib(n) * sign_f);
            assert_eq!(lucas(-n), lucas(n) * sign_l);
        }
    }

    #[test]
    fn large_index_is_exact() {
        let f = fib(1_000_000);
        let g = fib(999_999) + fib(999_998);
        assert_eq!(f, g);
        assert_eq!(f.to_string().len(), 208_988);
    }

    #[test]
    fn gib_term_examples() {
        let s = Seed::new(1, 4);
        let got: Vec<BigInt> = (0..8).map(|n| gib_term(&s, n)).collect();
        let want: Vec<BigInt> = [1, 4, 5, 9, 14, 23, 37, 60].iter().map(|&v| v.into()).collect();
        assert_eq!(got, want);
        assert_eq!(gib_term(&Seed::fibonacci(), 10), BigInt::from(55));
        assert_eq!(gib_term(&Seed::lucas(), -1), BigInt::from(-1));
    }

    #[test]
    fn window_sum_examples() {
        let s = Seed::new(1, 4);
        assert_eq!(window_sum(&s, 1, 5).unwrap(), BigInt::from(55));
        assert_eq!(window_sum(&s, 2, 5).unwrap(), BigInt::from(88));
        assert_eq!(window_sum(&Seed::fibonacci(), 1, 1).unwrap(), BigInt::one());
        assert_eq!(window_sum(&s, 1, 0), Err(Error::EmptyWindow));
        assert_eq!(window_sum_direct(&s, 1, 0), Err(Error::EmptyWindow));
    }

    #[test]
    fn seed_invariant_examples() {
        let fibo = seed_invariants(&Seed::fibonacci()).unwrap();
        assert_eq!((fibo.delta, fibo.d), (BigInt::one(), BigInt::one()));
        let luc = seed_invariants(&Seed::lucas()).unwrap();
        assert_eq!((luc.delta, luc.d), (BigInt::from(5), BigInt::from(-5)));
        // G = 1, 4, 5, 9: gcd(1 + 5, 4 + 9) = 1
        let s = seed_invariants(&Seed::new(1, 4)).unwrap();
        assert_eq!((s.delta, s.d), (BigInt::one(), BigInt::from(11)));
        assert_eq!(seed_invariants(&Seed::new(0, 0)), Err(Error::DegenerateSeed));
    }

    #[test]
    fn seed_parsing() {
        assert_eq!("-3,7".parse::<Seed>().unwrap(), Seed::new(-3, 7));
        assert_eq!(" 2 , 1 ".parse::<Seed>().unwrap(), Seed::lucas());
        assert!("3".parse::<Seed>().is_err());
        assert!("a,1".parse::<Seed>().is_err());
    }

    #[test]
    fn terms_iterator() {
        let v: Vec<BigInt> = terms(&Seed::lucas()).take(5).collect();
        assert_eq!(v, recurrence_terms(&Seed::lucas(), 0, 4));
    }

    fn seed_strategy() -> impl Strategy<Value = Seed> {
        (-10i64..=10, -10i64..=10)
            .prop_filter("nondegenerate", |(a, b)| *a != 0 || *b != 0)
            .prop_map(|(a, b)| Seed::new(a, b))
    }

    proptest! {
        #[test]
        fn gib_term_satisfies_recurrence(seed in seed_strategy(), n in -100i64..=100) {
            prop_assert_eq!(
                gib_term(&seed, n + 2),
                gib_term(&seed, n + 1) + gib_term(&seed, n)
            );
        }

        #[test]
        fn gib_term_matches_stepping(seed in seed_strategy(), lo in -60i64..0, len in 1i64..120) {
            let seq = recurrence_terms(&seed, lo, lo + len);
            for (i, v) in seq.iter().enumerate() {
                prop_assert_eq!(&gib_term(&seed, lo + i as i64), v);
            }
        }

        #[test]
        fn window_closed_form_matches_direct(seed in seed_strategy(), n in 1i64..=50, k in 1u64..=50) {
            prop_assert_eq!(window_sum(&seed, n, k).unwrap(), window_sum_direct(&seed, n, k).unwrap());
        }

        #[test]
        fn consecutive_gcd_is_content(seed in seed_strategy(), n in -50i64..=50) {
            let a = gib_term(&seed, n);
            let b = gib_term(&seed, n + 1);
            prop_assert_eq!(a.gcd(&b), seed.content());
        }

        #[test]
        fn d_alternates_in_sign(seed in seed_strategy(), n in 0i64..=100) {
            let d0 = seed_invariants(&seed).unwrap().d;
            let dn = d_of_pair(&gib_term(&seed, n), &gib_term(&seed, n + 1));
            let expected = if n % 2 == 0 { d0 } else { -d0 };
            prop_assert_eq!(dn, expected);
        }

        #[test]
        fn delta_is_shift_invariant(seed in seed_strategy(), n in 0i64..=100) {
            prop_assume!(seed.is_coprime());
            let delta = seed_invariants(&seed).unwrap().delta;
            prop_assert!(delta == BigInt::one() || delta == BigInt::from(5));
            let g = recurrence_terms(&seed, n, n + 3);
            let shifted = (&g[0] + &g[2]).gcd(&(&g[1] + &g[3]));
            prop_assert_eq!(shifted, delta);
        }
    }
}
