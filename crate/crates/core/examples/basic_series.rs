//! Trees, vertices and leaves counted by size.

use rankgen::genfun;

fn main() {
    let order = 12;
    println!("trees    {}", genfun::catalan_series(order));
    println!("vertices {}", genfun::vertex_series(order));
    println!("leaves   {}", genfun::leaf_series(order));

    let t = genfun::catalan_series(order).to_integers().unwrap();
    println!("t(n), n = 1..={order}: {:?}", t[1..].iter().map(|c| c.to_string()).collect::<Vec<_>>());
}
