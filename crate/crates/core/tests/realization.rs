mod common;

use std::collections::BTreeMap;

use common::{criteria, hom_from_cell_model};
use shpoisson::gradedmixed::{cell_model, shift, unit, unit_at};

#[test]
fn realization_agrees_with_the_hom_complex() {
    println!("{}", criteria::realization_matches_cell_model().unwrap_or_else(|e| panic!("{e}")));
}

#[test]
fn hom_oracle_on_units() {
    assert_eq!(hom_from_cell_model(&unit(), 3), BTreeMap::from([(0, 1)]));
    assert_eq!(hom_from_cell_model(&unit_at(2), 3), BTreeMap::from([(0, 1)]));
    assert_eq!(hom_from_cell_model(&shift(&unit_at(1), -2, 0), 3), BTreeMap::from([(2, 1)]));
    assert!(hom_from_cell_model(&unit_at(5), 3).is_empty());
}

#[test]
fn hom_oracle_sees_the_cell_model_as_acyclic_beyond_its_truncation() {
    assert!(hom_from_cell_model(&cell_model(2), 3).is_empty());
}

#[test]
fn tate_comparison_is_a_quasi_isomorphism() {
    println!("{}", criteria::tate_comparison().unwrap_or_else(|e| panic!("{e}")));
}
