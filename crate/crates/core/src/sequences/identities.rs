//! Executable checks for the classical Fibonacci / Lucas / Gibonacci identities.
//!
//! Both sides of every identity are evaluated on their own. Gibonacci terms
//! come from recurrence stepping, while Fibonacci and Lucas terms come from
//! their separate fast-doubling routines, so an identity that merely restates
//! how one of those is computed still compares two different code paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{d_of_pair, fib, lucas, recurrence_terms, Seed};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `L(n) = F(n+1) + F(n-1)`, all `n`.
    LucasFromFib,
    /// `F(2n) = F(n) L(n)`, all `n`.
    FibDoubling,
    /// `G(m+n) = F(m-1) G(n) + F(m) G(n+1)`, `m, n >= 1`.
    GibAddition,
    /// `G(i) = G0 F(i-1) + G1 F(i)`, `i >= 1`.
    GibFromFib,
    /// `G(1) + ... + G(n) = G(n+2) - G(2)`, `n >= 1`.
    GibPrefixSum,
    /// `G(n+1) G(n-1) - G(n)^2 = (-1)^n D`, `n >= 0`.
    Cassini,
    /// `G(j-1) + G(j+1) = G0 L(j-1) + G1 L(j)`, `j >= 1`.
    GapTwoSum,
    /// `F(4j+1) - 1 = F(2j) L(2j+1)`, `j >= 0`.
    Fib4j1,
    /// `F(4j+3) - 1 = F(2j+2) L(2j+1)`, `j >= 0`.
    Fib4j3,
    /// `F(4j+4) - 1 = F(2j+3) L(2j+1)`, `j >= 0`.
    Fib4j4,
    /// `F(4j+r+1) - F(r-1) = F(2j+r) L(2j+1)`, all `j, r`.
    FibShiftFamily,
    /// `G(4j+1) - G(1) = F(2j) (G(2j) + G(2j+2))`, `j >= 0`.
    Gib4j1,
    /// `G(4j+2) - G(2) = F(2j) (G(2j+1) + G(2j+3))`, `j >= 0`.
    Gib4j2,
    /// `G(4j+3) - G(1) = L(2j+1) G(2j+2)`, `j >= 0`.
    Gib4j3,
    /// `G(4j+4) - G(2) = L(2j+1) G(2j+3)`, `j >= 0`.
    Gib4j4,
}

impl Identity {
    pub const ALL: [Identity; 15] = [
        Identity::LucasFromFib,
        Identity::FibDoubling,
        Identity::GibAddition,
        Identity::GibFromFib,
        Identity::GibPrefixSum,
        Identity::Cassini,
        Identity::GapTwoSum,
        Identity::Fib4j1,
        Identity::Fib4j3,
        Identity::Fib4j4,
        Identity::FibShiftFamily,
        Identity::Gib4j1,
        Identity::Gib4j2,
        Identity::Gib4j3,
        Identity::Gib4j4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::LucasFromFib => "lucas-from-fib",
            Identity::FibDoubling => "fib-doubling",
            Identity::GibAddition => "gib-addition",
            Identity::GibFromFib => "gib-from-fib",
            Identity::GibPrefixSum => "gib-prefix-sum",
            Identity::Cassini => "cassini",
            Identity::GapTwoSum => "gap-two-sum",
            Identity::Fib4j1 => "fib4j1",
            Identity::Fib4j3 => "fib4j3",
            Identity::Fib4j4 => "fib4j4",
            Identity::FibShiftFamily => "fib-shift-family",
            Identity::Gib4j1 => "gib4j1",
            Identity::Gib4j2 => "gib4j2",
            Identity::Gib4j3 => "gib4j3",
            Identity::Gib4j4 => "gib4j4",
        }
    }

    /// Parameter names, primary first.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Identity::LucasFromFib | Identity::FibDoubling | Identity::Cassini => &["n"],
            Identity::GibPrefixSum => &["n"],
            Identity::GibFromFib => &["i"],
            Identity::GibAddition => &["m", "n"],
            Identity::FibShiftFamily => &["j", "r"],
            _ => &["j"],
        }
    }

    /// Smallest admissible parameter value, `None` when every integer is allowed.
    pub fn domain_min(self) -> Option<i64> {
        match self {
            Identity::LucasFromFib | Identity::FibDoubling | Identity::FibShiftFamily => None,
            Identity::GibAddition
            | Identity::GibFromFib
            | Identity::GibPrefixSum
            | Identity::GapTwoSum => Some(1),
            _ => Some(0),
        }
    }

    /// Whether the identity involves a Gibonacci seed.
    pub fn uses_seed(self) -> bool {
        !matches!(
            self,
            Identity::LucasFromFib
                | Identity::FibDoubling
                | Identity::Fib4j1
                | Identity::Fib4j3
                | Identity::Fib4j4
                | Identity::FibShiftFamily
        )
    }

    fn evaluate(self, t: &TermTable, seed: &Seed, p: &[i64]) -> (BigInt, BigInt) {
        let (f, l, g) = (|i| t.f(i), |i| t.l(i), |i| t.g(i));
        match self {
            Identity::LucasFromFib => {
                let n = p[0];
                (l(n), f(n + 1) + f(n - 1))
            }
            Identity::FibDoubling => {
                let n = p[0];
                (f(2 * n), f(n) * l(n))
            }
            Identity::GibAddition => {
                let (m, n) = (p[0], p[1]);
                (g(m + n), f(m - 1) * g(n) + f(m) * g(n + 1))
            }
            Identity::GibFromFib => {
                let i = p[0];
                (g(i), &seed.g0 * f(i - 1) + &seed.g1 * f(i))
            }
            Identity::GibPrefixSum => {
                let n = p[0];
                let lhs: BigInt = (1..=n).map(g).sum();
                (lhs, g(n + 2) - g(2))
            }
            Identity::Cassini => {
                let n = p[0];
                let gn = g(n);
                let d = d_of_pair(&seed.g0, &seed.g1);
                let rhs = if n % 2 == 0 { d } else { -d };
                (g(n + 1) * g(n - 1) - &gn * &gn, rhs)
            }
            Identity::GapTwoSum => {
                let j = p[0];
                (g(j - 1) + g(j + 1), &seed.g0 * l(j - 1) + &seed.g1 * l(j))
            }
            Identity::Fib4j1 => {
                let j = p[0];
                (f(4 * j + 1) - BigInt::one(), f(2 * j) * l(2 * j + 1))
            }
            Identity::Fib4j3 => {
                let j = p[0];
                (f(4 * j + 3) - BigInt::one(), f(2 * j + 2) * l(2 * j + 1))
            }
            Identity::Fib4j4 => {
                let j = p[0];
                (f(4 * j + 4) - BigInt::one(), f(2 * j + 3) * l(2 * j + 1))
            }
            Identity::FibShiftFamily => {
                let (j, r) = (p[0], p[1]);
                (f(4 * j + r + 1) - f(r - 1), f(2 * j + r) * l(2 * j + 1))
            }
            Identity::Gib4j1 => {
                let j = p[0];
                (g(4 * j + 1) - g(1), f(2 * j) * (g(2 * j) + g(2 * j + 2)))
            }
            Identity::Gib4j2 => {
                let j = p[0];
                (g(4 * j + 2) - g(2), f(2 * j) * (g(2 * j + 1) + g(2 * j + 3)))
            }
            Identity::Gib4j3 => {
                let j = p[0];
                (g(4 * j + 3) - g(1), l(2 * j + 1) * g(2 * j + 2))
            }
            Identity::Gib4j4 => {
                let j = p[0];
                (g(4 * j + 4) - g(2), l(2 * j + 1) * g(2 * j + 3))
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub seed: Option<Seed>,
    pub params: Vec<i64>,
    #[serde(with = "crate::serde_int")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_int")]
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub ranges: Vec<ParamRange>,
    pub seeds_checked: usize,
    pub points_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Precomputed `F`, `L` and `G` values over a contiguous index window.
struct TermTable {
    lo: i64,
    f: Vec<BigInt>,
    l: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl TermTable {
    fn new(lo: i64, hi: i64) -> Self {
        TermTable {
            lo,
            f: (lo..=hi).map(fib).collect(),
            l: (lo..=hi).map(lucas).collect(),
            g: Vec::new(),
        }
    }

    fn with_seed(&mut self, seed: &Seed) {
        let hi = self.lo + self.f.len() as i64 - 1;
        self.g = recurrence_terms(seed, self.lo, hi);
    }

    fn idx(&self, i: i64) -> usize {
        usize::try_from(i - self.lo).expect("index below table window")
    }

    fn f(&self, i: i64) -> BigInt {
        self.f[self.idx(i)].clone()
    }

    fn l(&self, i: i64) -> BigInt {
        self.l[self.idx(i)].clone()
    }

    fn g(&self, i: i64) -> BigInt {
        self.g[self.idx(i)].clone()
    }
}

/// Checks `id` at every point of `primary × secondary` (the secondary range
/// defaults to the primary one for two-parameter identities) for each seed.
/// Seed-free identities are evaluated once and ignore `seeds`.
pub fn verify_identity(
    id: Identity,
    primary: (i64, i64),
    secondary: Option<(i64, i64)>,
    seeds: &[Seed],
) -> Result<IdentityReport> {
    run_checks(id, primary, secondary, seeds, |t, seed, p| id.evaluate(t, seed, p))
}

/// Runs every identity over `[lo, hi]`, raising `lo` to each identity's
/// domain minimum. The shift family is checked over `[-10, 10]²`.
pub fn verify_all(lo: i64, hi: i64, seeds: &[Seed]) -> Result<Vec<IdentityReport>> {
    Identity::ALL
        .into_iter()
        .map(|id| match id {
            Identity::FibShiftFamily => verify_identity(id, (-10, 10), Some((-10, 10)), seeds),
            _ => {
                let start = id.domain_min().map_or(lo, |m| lo.max(m));
                verify_identity(id, (start, hi), None, seeds)
            }
        })
        .collect()
}

fn run_checks<E>(
    id: Identity,
    primary: (i64, i64),
    secondary: Option<(i64, i64)>,
    seeds: &[Seed],
    eval: E,
) -> Result<IdentityReport>
where
    E: Fn(&TermTable, &Seed, &[i64]) -> (BigInt, BigInt),
{
    let names = id.params();
    let mut ranges = vec![primary];
    if names.len() == 2 {
        ranges.push(secondary.unwrap_or(primary));
    }
    for (&(lo, hi), name) in ranges.iter().zip(names) {
        if lo > hi {
            return Err(Error::invalid("range", format!("{name} range [{lo}, {hi}] is empty")));
        }
        if let Some(min) = id.domain_min() {
            if lo < min {
                return Err(Error::invalid(
                    "range",
                    format!("{id} requires {name} >= {min}, got {lo}"),
                ));
            }
        }
    }
    let default_seed = [Seed::fibonacci()];
    let seeds: &[Seed] = if id.uses_seed() {
        if seeds.is_empty() {
            return Err(Error::invalid("seeds", "seed grid is empty"));
        }
        if seeds.iter().any(Seed::is_degenerate) {
            return Err(Error::DegenerateSeed);
        }
        seeds
    } else {
        &default_seed
    };

    // Every index used by any identity lies within 5·max|param| + 4 of zero.
    let reach = ranges
        .iter()
        .map(|&(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()))
        .max()
        .unwrap_or(0) as i64;
    let span = 6 * reach + 8;
    let mut table = TermTable::new(-span, span);

    let points: Vec<Vec<i64>> = match ranges.as_slice() {
        [(lo, hi)] => (*lo..=*hi).map(|a| vec![a]).collect(),
        [(lo, hi), (lo2, hi2)] => (*lo..=*hi)
            .flat_map(|a| (*lo2..=*hi2).map(move |b| vec![a, b]))
            .collect(),
        _ => unreachable!(),
    };

    let mut failures = Vec::new();
    for seed in seeds {
        table.with_seed(seed);
        for p in &points {
            let (lhs, rhs) = eval(&table, seed, p);
            if lhs != rhs {
                failures.push(IdentityFailure {
                    seed: id.uses_seed().then(|| seed.clone()),
                    params: p.clone(),
                    lhs,
                    rhs,
                });
            }
        }
    }

    Ok(IdentityReport {
        identity: id,
        ranges: ranges
            .iter()
            .zip(names)
            .map(|(&(lo, hi), name)| ParamRange {
                name: name.to_string(),
                lo,
                hi,
            })
            .collect(),
        seeds_checked: if id.uses_seed() { seeds.len() } else { 0 },
        points_checked: points.len() * seeds.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::small_grid;

    #[test]
    fn cassini_fibonacci() {
        let r = verify_identity(Identity::Cassini, (0, 100), None, &[Seed::fibonacci()]).unwrap();
        assert!(r.passed());
        assert_eq!(r.points_checked, 101);
    }

    #[test]
    fn shift_family_over_negative_indices() {
        let r = verify_identity(Identity::FibShiftFamily, (-10, 10), Some((-10, 10)), &[]).unwrap();
        assert!(r.passed());
        assert_eq!(r.points_checked, 21 * 21);
    }

    #[test]
    fn perturbed_identity_fails_everywhere() {
        let id = Identity::Gib4j3;
        let grid = small_grid();
        let r = run_checks(id, (0, 30), None, &grid, |t, s, p| {
            let (lhs, rhs) = id.evaluate(t, s, p);
            (lhs, rhs + 1)
        })
        .unwrap();
        assert_eq!(r.failures.len(), r.points_checked);
        assert_eq!(r.points_checked, 31 * 25);
    }

    #[test]
    fn every_identity_holds_on_small_grid() {
        for r in verify_all(0, 60, &small_grid()).unwrap() {
            assert!(r.passed(), "{} failed: {:?}", r.identity, &r.failures[..1]);
        }
    }

    #[test]
    fn domain_and_name_errors() {
        let grid = small_grid();
        assert!(matches!(
            verify_identity(Identity::GapTwoSum, (0, 5), None, &grid),
            Err(Error::InvalidArgument { .. })
        ));
        assert!(matches!(
            verify_identity(Identity::Cassini, (5, 4), None, &grid),
            Err(Error::InvalidArgument { .. })
        ));
        assert_eq!(
            "nope".parse::<Identity>(),
            Err(Error::UnknownIdentity("nope".into()))
        );
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
    }
}
