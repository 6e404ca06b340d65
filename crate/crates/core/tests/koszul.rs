mod common;

use common::criteria;
use shpoisson::freecdga::{koszul, FreeCdga, Window};

#[test]
fn koszul_homotopy_and_cotangent_tower() {
    println!("{}", criteria::koszul_claims().unwrap_or_else(|e| panic!("{e}")));
}

#[test]
fn cube_of_the_coordinate() {
    let line = FreeCdga::polynomial_ring(&["x"]);
    let x = line.algebra().gen(0);
    let k = koszul(&line, &[x], &[3]).unwrap();
    let pi = k.homotopy(&Window::new(8, 0, -3, 2)).unwrap();
    assert_eq!(pi.get(&0), Some(&3));
    assert_eq!(pi.get(&1), Some(&0));
}
