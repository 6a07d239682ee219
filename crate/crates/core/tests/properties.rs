mod common;

#[test]
fn monoidal_order() {
    common::prop_monoidal_order(256).unwrap();
}

#[test]
fn normal_form_independent_of_strategy() {
    common::prop_strategy_independence(256).unwrap();
}

#[test]
fn reduction_is_sound() {
    common::prop_soundness(256).unwrap();
}

#[test]
fn sparse_rank_matches_dense() {
    common::prop_rank_agreement(256).unwrap();
}
