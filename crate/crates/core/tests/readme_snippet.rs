use qclim_core::rat::rat_int;
use qclim_core::{limit_points, LimitConfig, MPoly, RegularChain, VarOrder};

#[test]
fn readme_library_example() {
    let vars = VarOrder::new(vec!["X1", "X2"]).unwrap();
    // r = X1*X2 - 1
    let r = MPoly::monomial(2, vec![1, 1], rat_int(1))
        .add(&MPoly::monomial(2, vec![0, 0], rat_int(-1)));
    let chain = RegularChain::new(vars, vec![r]);
    let pts = limit_points(&chain, &LimitConfig::default()).unwrap();
    assert!(pts.is_empty()); // the hyperbola is closed
}
