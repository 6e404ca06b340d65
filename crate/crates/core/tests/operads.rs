mod common;

use common::{arnold_series, criteria};
use shpoisson::operads::{arnold_algebra, ArnoldAlgebra};

#[test]
fn operad_layer() {
    println!("{}", criteria::operad_layer().unwrap_or_else(|e| panic!("{e}")));
}

#[test]
fn arnold_series_by_subsets() {
    assert_eq!(arnold_series(3), vec![1, 3, 2]);
    assert_eq!(arnold_series(4), vec![1, 6, 11, 6]);
    for k in 1..=4 {
        assert_eq!(ArnoldAlgebra::expected_dims(k), arnold_series(k));
    }
    assert_eq!(arnold_algebra(2, 4).unwrap().dims()[..4], [1, 6, 11, 6]);
}
