mod common;

use common::*;

#[test]
fn facet_partition_is_unique() {
    run_property("facet partition", facet_partition).unwrap();
}

#[test]
fn pairing_with_facet_labels() {
    run_property("pairing identity", pairing_identity).unwrap();
}

#[test]
fn lambda_projection_axioms() {
    run_property("lambda axioms", lambda_axioms).unwrap();
}

#[test]
fn lambda_coefficients_are_integral() {
    run_property("lambda integrality", lambda_integrality).unwrap();
}

#[test]
fn mutation_multiplicities_match() {
    sweep_dual_basis_mutation().unwrap();
}

#[test]
fn smc_is_dual_to_silting() {
    sweep_duality().unwrap();
}

#[test]
fn mtf_fans_of_random_modules() {
    sweep_mtf().unwrap();
}

#[test]
fn interval_inclusion_equivalences() {
    run_property("D(U) inclusion", inclusion_equivalences).unwrap();
}
