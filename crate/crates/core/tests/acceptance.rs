//! Acceptance gate: the eight release criteria, one test each, with a
//! single pass/fail line per criterion.  The same checks back the CLI
//! selftest command; this target pins the default seed.

use perdiv::selftest::{self, CriterionOutcome, DEFAULT_SEED};

fn check(outcome: CriterionOutcome) {
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {}: {} ({})", outcome.id, outcome.name, outcome.detail);
    assert!(outcome.pass, "criterion {} failed: {}", outcome.id, outcome.detail);
}

#[test]
fn criterion_1_index_formula_vs_continuation_oracle() {
    check(selftest::criterion1_index_vs_oracle(DEFAULT_SEED));
}

#[test]
fn criterion_2_nu_against_bruteforce() {
    check(selftest::criterion2_nu_agreement(DEFAULT_SEED));
}

#[test]
fn criterion_3_phi_functional_equations() {
    check(selftest::criterion3_phi_functional_equations(DEFAULT_SEED));
}

#[test]
fn criterion_4_end_to_end_accept_and_reject() {
    check(selftest::criterion4_end_to_end(DEFAULT_SEED));
}

#[test]
fn criterion_5_transformation_laws() {
    check(selftest::criterion5_transformation_laws(DEFAULT_SEED));
}

#[test]
fn criterion_6_gauge_invariance() {
    check(selftest::criterion6_gauge_invariance(DEFAULT_SEED));
}

#[test]
fn criterion_7_symmetry_certificates() {
    check(selftest::criterion7_symmetry_certificates(DEFAULT_SEED));
}

#[test]
fn criterion_8_exact_corrector_identity() {
    check(selftest::criterion8_corrector_identity(DEFAULT_SEED));
}
