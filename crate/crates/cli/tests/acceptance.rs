//! One test per acceptance criterion. Run with `--nocapture` to see the report lines.

use turan_cli::suite::run_criterion;

fn check(criterion: u8) {
    let outcome = run_criterion(criterion, 0);
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_1_lagrangian_targets() {
    check(1);
}

#[test]
fn criterion_2_segment_certificates() {
    check(2);
}

#[test]
fn criterion_3_construction_fidelity() {
    check(3);
}

#[test]
fn criterion_4_extremal_counts() {
    check(4);
}

#[test]
fn criterion_5_homomorphism_rigidity() {
    check(5);
}

#[test]
fn criterion_6_feasible_region() {
    check(6);
}

#[test]
fn criterion_7_property_suites() {
    check(7);
}

#[test]
fn criterion_8_stability_fit() {
    check(8);
}
