mod common;

use common::criteria;
use common::NaiveSchouten;
use shpoisson::exactlin::q;
use shpoisson::fixtures;
use shpoisson::freecdga::{FreeCdga, GcAlgebra, Generator, Poly};
use shpoisson::polyvec::polyvectors;

#[test]
fn random_cdgas_satisfy_the_structural_identities() {
    let summary = criteria::structural_identities().unwrap_or_else(|e| panic!("{e}"));
    println!("{summary}");
}

#[test]
fn naive_bracket_agrees_on_odd_generators() {
    let alg = GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("t", 1), Generator::new("s", -1)]);
    let b = FreeCdga::from_algebra(alg, vec![Poly::zero(); 3]).unwrap();
    let mut rng = fixtures::rng(7);
    for shift in -1..=3 {
        let pol = polyvectors(&b, shift);
        common::criteria::schouten_identities(&mut rng, &pol, 12).unwrap_or_else(|e| panic!("N = {shift}: {e}"));
    }
}

#[test]
fn vector_field_pairs_to_one() {
    let pol = polyvectors(&FreeCdga::polynomial_ring(&["x", "y"]), 1);
    let naive = NaiveSchouten::new(&pol);
    let a = pol.algebra();
    assert_eq!(naive.bracket(&pol.vector(0), &pol.coordinate(0)), a.one());
    let pi = a.mul(&pol.vector(1), &pol.vector(0));
    let xy = naive.bracket(&naive.bracket(&pi, &pol.coordinate(0)), &pol.coordinate(1));
    assert_eq!(xy, a.one().scale(&q(1)));
}
