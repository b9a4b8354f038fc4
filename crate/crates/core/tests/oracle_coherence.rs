mod common;

use common::{exhaustive, restricted_specs, sampled};

#[test]
fn exhaustive_at_p2() {
    assert!(exhaustive(&restricted_specs(2, 2), 2) > 0);
}

#[test]
fn sampled_at_p3() {
    sampled(&restricted_specs(3, 2), 2, 240, 7);
}
