//! Trees whose root is k-protected, via the closed form and via the recursion.

use rankgen::genfun::{self, RootMethod};

fn main() {
    let order = 10;
    for k in 1..=5 {
        let closed = genfun::root_protected_series(k, order, RootMethod::Closed).unwrap();
        let recursive = genfun::root_protected_series(k, order, RootMethod::Recursive).unwrap();
        assert_eq!(closed, recursive);
        println!("R_{k} = {closed}");
    }
    println!("n_3 = {}", genfun::n_poly(3));
    println!("d_3 = {}", genfun::d_poly(3).unwrap());
}
