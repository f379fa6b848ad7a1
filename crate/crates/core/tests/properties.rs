mod support;

use support::properties as props;

const CASES: u32 = 1000;

#[test]
fn ring_axioms() {
    props::ring_axioms(CASES).unwrap();
}

#[test]
fn leibniz() {
    props::leibniz(CASES).unwrap();
}

#[test]
fn substitution_is_a_ring_homomorphism() {
    props::substitution_is_a_ring_homomorphism(CASES).unwrap();
}

#[test]
fn exact_divide_round_trip() {
    props::exact_divide_round_trip(CASES).unwrap();
}

#[test]
fn exact_divide_rejects_remainders() {
    props::exact_divide_rejects_remainders(CASES).unwrap();
}

#[test]
fn jacobian_chain_rule() {
    props::jacobian_chain_rule(CASES).unwrap();
}

#[test]
fn rf_equal_is_an_equivalence() {
    props::rf_equal_is_an_equivalence(CASES).unwrap();
}

#[test]
fn rf_field_operations() {
    props::rf_field_operations(CASES).unwrap();
}

#[test]
fn dual_is_an_involution() {
    props::dual_is_an_involution(CASES).unwrap();
}

#[test]
fn sign_average_is_idempotent() {
    props::sign_average_is_idempotent(CASES).unwrap();
}

#[test]
fn reduction_mod_p_is_a_homomorphism() {
    props::reduction_mod_p_is_a_homomorphism(CASES).unwrap();
}
