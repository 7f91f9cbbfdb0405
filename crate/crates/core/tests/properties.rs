mod props;

const CASES: u32 = 96;

#[test]
fn ring_laws() {
    props::ring_laws(CASES).unwrap();
}

#[test]
fn inverse_and_sqrt() {
    props::inverse_and_sqrt(CASES).unwrap();
}

#[test]
fn nonneg_part_is_linear_and_idempotent() {
    props::nonneg_part(CASES).unwrap();
}

#[test]
fn series_root_is_idempotent() {
    props::series_root_idempotent(CASES).unwrap();
}

#[test]
fn asymptotic_expansions_have_zero_residual() {
    props::asymptotic_residual(CASES).unwrap();
}

#[test]
fn linear_resultants_are_sound() {
    props::linear_resultants(CASES).unwrap();
}
