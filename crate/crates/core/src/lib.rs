//! Greatest common divisors of sums of `k` consecutive Gibonacci numbers.
//!
//! A Gibonacci sequence obeys `G(n) = G(n-1) + G(n-2)` from arbitrary integer
//! initial values `(G0, G1)`. This crate computes `𝒢(k)`, the gcd of all sums
//! of `k` consecutive terms, in three independent ways, together with
//! generalized Pisano periods, the residue-class classification of `𝒢(k)`
//! and several applications.
//!
//! ```
//! use gibsum_core::{gcdsum, pisano, Seed};
//!
//! let seed = Seed::new(1, 4);
//! assert_eq!(gcdsum::gcd_sum_value(&seed, 5).unwrap(), 11.into());
//! assert_eq!(pisano::pisano_period(&seed, 11).unwrap(), 5);
//! ```

pub mod applications;
pub mod error;
pub mod gcdsum;
pub mod grid;
pub mod pisano;
pub mod sequences;
pub mod serde_int;
pub mod suite;

pub use error::{Error, Result};
pub use sequences::{fib, gib_term, lucas, Seed, SeedInvariants};
