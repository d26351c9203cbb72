//! Factorization of `u64` values: trial division, then Pollard rho (Brent)
//! backed by a deterministic Miller-Rabin test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 12;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut ys = y;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn push_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    push_factors(d, out);
    push_factors(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs; empty for 1.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    push_factors(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("n", "zero has no finite divisor list"));
    }
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Outcome of trial division up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialDivision {
    /// Primes found, with multiplicity collapsed.
    pub primes: Vec<BigInt>,
    /// Remaining factor whose primality was not settled; `None` when fully
    /// factored.
    pub cofactor: Option<BigInt>,
}

/// Trial division of `|value|` by every integer up to `bound`. A leftover
/// `r` with `d² > r` for the last tried `d` is prime and is reported as a
/// prime even if it exceeds `bound`.
pub fn trial_divide(value: &BigInt, bound: u64) -> TrialDivision {
    let mut rest = num_traits::Signed::abs(value);
    let mut primes = Vec::new();
    if rest.is_zero() {
        return TrialDivision {
            primes,
            cofactor: Some(rest),
        };
    }
    let mut d = 2u64;
    while d <= bound {
        let big_d = BigInt::from(d);
        if &big_d * &big_d > rest {
            break;
        }
        if (&rest % &big_d).is_zero() {
            primes.push(big_d.clone());
            while (&rest % &big_d).is_zero() {
                rest /= &big_d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return TrialDivision {
            primes,
            cofactor: None,
        };
    }
    let settled = {
        let big_d = BigInt::from(d);
        &big_d * &big_d > rest
    } || rest.to_u64().is_some_and(is_prime);
    if settled {
        primes.push(rest);
        TrialDivision {
            primes,
            cofactor: None,
        }
    } else {
        TrialDivision {
            primes,
            cofactor: Some(rest),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn divisors_match_brute_force() {
        for n in 1..=3000 {
            assert_eq!(divisors(n).unwrap(), brute_divisors(n), "n={n}");
        }
        assert!(divisors(0).is_err());
    }

    #[test]
    fn factorizes_large_semiprime() {
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize(p * q), vec![(q, 1), (p, 1)]);
        assert_eq!(factorize(832040), vec![(2, 3), (5, 1), (11, 1), (31, 1), (61, 1)]);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn trial_division_reports_cofactor() {
        let t = trial_divide(&BigInt::from(2 * 3 * 3 * 1_000_003u64), 100);
        assert_eq!(t.primes, vec![BigInt::from(2), BigInt::from(3), BigInt::from(1_000_003)]);
        assert_eq!(t.cofactor, None);
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * BigInt::from(1_000_037u64);
        let t = trial_divide(&big, 1000);
        assert!(t.primes.is_empty());
        assert_eq!(t.cofactor, Some(big));
        let t = trial_divide(&BigInt::from(-11), 10);
        assert_eq!(t.primes, vec![BigInt::from(11)]);
    }
}
