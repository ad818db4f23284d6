#![allow(dead_code)]

pub mod oracle_values;

use aqaw_core::{QParameters, C64};

pub fn c(v: (f64, f64)) -> C64 {
    C64::new(v.0, v.1)
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

#[track_caller]
pub fn assert_close(got: C64, want: (f64, f64), tol: f64) {
    let r = rel(got, c(want));
    assert!(r <= tol, "got {got}, want {:?}, relative error {r:e} > {tol:e}", want);
}

/// q = 0.5, alpha = 0.3, beta = 0.25, gamma = 0.2, delta = 0.15 with the given eps.
pub fn small_params(eps: f64) -> QParameters {
    QParameters::real(0.5, 0.3, 0.25, 0.2, 0.15, eps).unwrap()
}

/// q = 0.5, alpha = beta = gamma = delta = 0.4, eps = 0.5.
pub fn default_params() -> QParameters {
    QParameters::real(0.5, 0.4, 0.4, 0.4, 0.4, 0.5).unwrap()
}

/// q = 0.5, alpha = 0.4, beta = 0.35, gamma = 0.3, delta = 0.25, eps = 0.5.
pub fn mixed_params() -> QParameters {
    QParameters::real(0.5, 0.4, 0.35, 0.3, 0.25, 0.5).unwrap()
}

pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_a0a0),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}
