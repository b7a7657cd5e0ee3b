//! Trees counted by size and number of leaves (Narayana numbers).

use rankgen::genfun;

fn main() {
    let order = 8;
    let b = genfun::bivariate_series(order);
    for n in 1..=order {
        println!("n = {n}: {}", b.x_coeff(n));
    }
    assert!(b.functional_equation_residual().is_zero());
    println!("leaves from d/dy at y = 1: {}", genfun::leaf_series_from_bivariate(order).unwrap());
}
