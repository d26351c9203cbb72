//! Seed grids used by the verification suites.

use num_integer::Integer;

use crate::sequences::Seed;

/// Every coprime seed with `|g0|, |g1| <= bound`, ordered by `|g0| + |g1|`
/// and then lexicographically.
pub fn coprime_grid(bound: i64) -> Vec<Seed> {
    let mut pairs: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|a| (-bound..=bound).map(move |b| (a, b)))
        .filter(|&(a, b)| a.gcd(&b) == 1)
        .collect();
    pairs.sort_by_key(|&(a, b)| (a.abs() + b.abs(), a, b));
    pairs.into_iter().map(|(a, b)| Seed::new(a, b)).collect()
}

/// The full suite grid: coprime seeds with entries bounded by 10.
pub fn suite_grid() -> Vec<Seed> {
    coprime_grid(10)
}

/// The 25 smallest seeds of [`suite_grid`]; contains `(0, 1)` and `(2, 1)`.
pub fn small_grid() -> Vec<Seed> {
    coprime_grid(10).into_iter().take(25).collect()
}
