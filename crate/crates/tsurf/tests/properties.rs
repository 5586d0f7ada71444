mod common;

#[test]
fn field_axioms() {
    common::field_axioms(&mut common::runner(1)).unwrap();
}

#[test]
fn json_round_trip() {
    common::json_round_trip(&mut common::runner(2)).unwrap();
}

#[test]
fn cylinder_area_additivity() {
    common::cylinder_area_additivity(&mut common::runner(3)).unwrap();
}

#[test]
fn trace_retracing() {
    common::trace_retracing(&mut common::runner(4)).unwrap();
}

#[test]
fn intersection_form() {
    common::intersection_form(&mut common::runner(5)).unwrap();
}

#[test]
fn iota_anti_homomorphism() {
    common::iota_anti_homomorphism(&mut common::runner(6)).unwrap();
}
