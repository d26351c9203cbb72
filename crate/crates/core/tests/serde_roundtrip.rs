use std::fmt::Debug;

use proptest::prelude::*;
use serde::{de::DeserializeOwned, Serialize};

use gibsum_core::applications::{
    max_modulus_for_period, pisano_of_fib_lucas_moduli, prime_restriction_check, squares_gcd,
};
use gibsum_core::gcdsum::{
    classify, classify_with_reduction, gcd_sum, gcd_sum_bruteforce, gcd_sum_lcm, reduce_seed,
    LcmMode,
};
use gibsum_core::pisano::{parity_scan, period_record};
use gibsum_core::sequences::identities::{verify_identity, Identity};
use gibsum_core::sequences::seed_invariants;
use gibsum_core::Seed;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value, "{text}");
}

/// Every integer that may exceed 64 bits is a JSON string.
fn no_large_numbers(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(n) => n.is_u64() || n.is_i64(),
        serde_json::Value::Array(a) => a.iter().all(no_large_numbers),
        serde_json::Value::Object(o) => o.values().all(no_large_numbers),
        _ => true,
    }
}

fn coprime_seed() -> impl Strategy<Value = Seed> {
    (-50i64..=50, -50i64..=50)
        .prop_filter("coprime", |(a, b)| num_integer::gcd(*a, *b) == 1)
        .prop_map(|(a, b)| Seed::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_results(seed in coprime_seed(), k in 1u64..200) {
        let r = gcd_sum(&seed, k).unwrap();
        round_trip(&r);
        prop_assert!(r.value.to_string() == serde_json::to_value(&r).unwrap()["value"]);
        round_trip(&gcd_sum_bruteforce(&seed, k, 4).unwrap());
        round_trip(&classify(&seed, k).unwrap());
    }

    #[test]
    fn scaled_results(seed in coprime_seed(), scale in 2i64..20, k in 1u64..80) {
        let s = seed.scaled(&scale.into());
        round_trip(&reduce_seed(&s).unwrap());
        round_trip(&classify_with_reduction(&s, k).unwrap());
    }

    #[test]
    fn period_results(seed in coprime_seed(), m in 1u64..300) {
        if let Ok(r) = period_record(&seed, m) {
            round_trip(&r);
        }
    }

    #[test]
    fn seeds_and_invariants(a in any::<i64>(), b in any::<i64>()) {
        let seed = Seed::new(a, b);
        round_trip(&seed);
        prop_assert_eq!(seed.to_string().parse::<Seed>().unwrap(), seed.clone());
        if let Ok(inv) = seed_invariants(&seed) {
            round_trip(&inv);
        }
    }
}

#[test]
fn application_results() {
    let s = Seed::new(1, 4);
    round_trip(&gcd_sum_lcm(&s, 5, LcmMode::DivisorVerified).unwrap());
    round_trip(&gcd_sum_lcm(&s, 5, LcmMode::BoundedScan(7)).unwrap());
    round_trip(&LcmMode::BoundedScan(7));
    round_trip(&parity_scan(&s, 100).unwrap());
    round_trip(&prime_restriction_check(&s, 7, 1000).unwrap());
    round_trip(&squares_gcd(&Seed::fibonacci(), 12, 50).unwrap());
    round_trip(&max_modulus_for_period(30, true).unwrap());
    round_trip(&pisano_of_fib_lucas_moduli(10).unwrap());
    round_trip(&verify_identity(Identity::Cassini, (1, 30), None, &[s]).unwrap());
}

#[test]
fn big_values_serialize_as_strings() {
    let r = gcd_sum(&Seed::fibonacci(), 180).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert!(v["value"].is_string());
    assert!(no_large_numbers(&v));
    let c = serde_json::to_value(classify(&Seed::new(-9, 10), 360).unwrap()).unwrap();
    assert!(c["predicted"].is_string() && c["actual"].is_string());
    assert!(no_large_numbers(&c));
}
