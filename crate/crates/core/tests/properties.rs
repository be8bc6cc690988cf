mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed};

use common::props;

fn config() -> Config {
    Config {
        cases: 24,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(common::SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

macro_rules! property {
    ($name:ident) => {
        proptest! {
            #![proptest_config(config())]
            #[test]
            fn $name(seed in any::<u64>()) {
                if let Err(msg) = props::$name(seed) {
                    prop_assert!(false, "seed {}: {}", seed, msg);
                }
            }
        }
    };
}

property!(vanishing);
property!(restricted_vanishing);
property!(divisor_relation);
property!(ray_sum);
property!(subdivision_independence);
property!(principal_degrees);
property!(hilbert_vs_enumeration);
property!(iota_balanced);
property!(iota_additive);
property!(section_independence);
