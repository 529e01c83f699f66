//! Each cargo example, run as a test.

#[allow(dead_code)]
mod normalize {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/normalize.rs"));
}

#[test]
fn normalize_runs() {
    normalize::run_example().expect("normalize example");
}

#[allow(dead_code)]
mod bracket_abstraction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bracket_abstraction.rs"));
}

#[test]
fn bracket_abstraction_runs() {
    bracket_abstraction::run_example().expect("bracket_abstraction example");
}

#[allow(dead_code)]
mod derived_combinators {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/derived_combinators.rs"));
}

#[test]
fn derived_combinators_runs() {
    derived_combinators::run_example().expect("derived_combinators example");
}

#[allow(dead_code)]
mod observational_equality {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/observational_equality.rs"));
}

#[test]
fn observational_equality_runs() {
    observational_equality::run_example().expect("observational_equality example");
}

#[allow(dead_code)]
mod proof_script {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/proof_script.rs"));
}

#[test]
fn proof_script_runs() {
    proof_script::run_example().expect("proof_script example");
}

#[allow(dead_code)]
mod congruence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/congruence.rs"));
}

#[test]
fn congruence_runs() {
    congruence::run_example().expect("congruence example");
}

#[allow(dead_code)]
mod dialectica {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dialectica.rs"));
}

#[test]
fn dialectica_runs() {
    dialectica::run_example().expect("dialectica example");
}
