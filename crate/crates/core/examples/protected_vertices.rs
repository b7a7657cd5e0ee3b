//! Total number of k-protected vertices over all trees of each size.

use rankgen::genfun;

fn main() {
    let order = 10;
    for k in 1..=5 {
        println!("T_{k} = {}", genfun::protected_vertex_series(k, order).unwrap());
    }
}
