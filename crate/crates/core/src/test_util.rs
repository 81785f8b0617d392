use proptest::test_runner::{Config, RngSeed};

/// Proptest configuration with a seed pinned in the repository.
pub fn seeded(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed_f177), failure_persistence: None, ..Config::default() }
}
