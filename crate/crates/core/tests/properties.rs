//! Randomized and exhaustive-range invariant checks.

mod common;

use common::props;

fn run(check: props::Check) {
    if let Err(e) = check() {
        panic!("{e}");
    }
}

#[test]
fn twist_homomorphism() {
    run(props::twist_homomorphism);
}

#[test]
fn divrem_and_expansion() {
    run(props::divrem_reconstruction);
}

#[test]
fn laurent_agrees_with_exact_fractions() {
    run(props::laurent_matches_ratfrac);
}

#[test]
fn reconstruction_round_trip() {
    run(props::reconstruct_round_trip);
}

#[test]
fn h_generating_function() {
    run(props::h_generating_function);
}

#[test]
fn exp_inversion() {
    run(props::exp_inversion);
}

#[test]
fn factorials() {
    run(props::factorial_identities);
}

#[test]
fn delta_compatibility() {
    run(props::delta_compatibility);
}

#[test]
fn delta_kernel() {
    run(props::delta_kernel);
}

#[test]
fn nilpotency() {
    run(props::nilpotency);
}

#[test]
fn depth_one_operator_and_point() {
    run(props::depth_one_agreement);
}

#[test]
fn rho_ring_homomorphism() {
    run(props::rho_ring_homomorphism);
}

#[test]
fn rho_linearity() {
    run(props::rho_linearity);
}

#[test]
fn precheck_soundness() {
    run(props::precheck_soundness);
}

#[test]
fn primitive_reduction_agreement() {
    run(props::primitive_reduction_agreement);
}

#[test]
fn annihilator_vs_nullspace() {
    run(props::annihilator_vs_nullspace);
}

#[test]
fn fitting_ideal_stages() {
    run(props::fitting_ideal_stages);
}

#[test]
fn depth_one_truth() {
    run(props::depth_one_truth);
}

#[test]
fn tail_bound_soundness() {
    run(props::tail_bound_soundness);
}

#[test]
fn pi_power_law() {
    run(props::pi_power_law);
}

#[test]
fn frobenius() {
    run(props::frobenius);
}

#[test]
fn identity_corpus() {
    run(props::identity_corpus);
}

#[test]
fn family_invariants() {
    run(props::family_invariants);
}
