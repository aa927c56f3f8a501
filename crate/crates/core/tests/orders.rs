mod common;

use common::criteria::{lpo_of, mixed_signature, order_properties, partition_property, tkbo_of};

#[test]
fn lpo_is_a_simplification_order_on_random_terms() {
    let (sig, syms, vars) = mixed_signature();
    for check in order_properties(&lpo_of(&sig), &sig, &syms, &vars, 10_000, 1) {
        assert!(check.passed(), "{check}");
    }
}

#[test]
fn tkbo_is_a_simplification_order_on_random_terms() {
    let (sig, syms, vars) = mixed_signature();
    for check in order_properties(&tkbo_of(&sig), &sig, &syms, &vars, 10_000, 2) {
        assert!(check.passed(), "{check}");
    }
}

#[test]
fn partitioned_orders_put_uncomputable_terms_on_top() {
    for tkbo in [false, true] {
        for check in partition_property(tkbo) {
            assert!(check.passed(), "{check}");
        }
    }
}
