mod common;

use common::criteria;
use shpoisson::compare::darboux_leading_term;
use shpoisson::fixtures;
use shpoisson::polyvec::MaurerCartanTower;
use shpoisson::report::Verdict;

#[test]
fn poisson_and_symplectic_round_trip() {
    println!("{}", criteria::poisson_symplectic_round_trip().unwrap_or_else(|e| panic!("{e}")));
}

#[test]
fn darboux_core() {
    println!("{}", criteria::darboux_core().unwrap_or_else(|e| panic!("{e}")));
}

#[test]
fn obstructed_constant_term_fails_the_rewritten_equation() {
    let (pol, p0) = fixtures::obstructed_bivector();
    let tower = MaurerCartanTower::new(0, vec![p0, Default::default()]);
    let out = darboux_leading_term(&pol, &tower).unwrap();
    assert_eq!(out.report.verdict(), Verdict::Fail);
}
