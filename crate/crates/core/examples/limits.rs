//! Limiting fractions and the expected-rank constants.

use rankgen::asymptotics::{self, LimitFamily};
use rankgen::series::BigRational;

fn main() {
    for k in 0..=5 {
        println!(
            "k = {k}: protected {}  root protected {}  rank exactly k {}",
            asymptotics::protected_fraction_limit(k),
            asymptotics::root_protected_limit(k.max(1)),
            asymptotics::rank_fraction_limit(k),
        );
    }
    let tol = BigRational::new(1.into(), 1_000_000.into());
    let er = asymptotics::expected_root_rank_constant(&tol).unwrap();
    let et = asymptotics::expected_vertex_rank_constant(&tol).unwrap();
    println!("mean root rank   in [{}, {}] after {} terms", er.decimal(8), rankgen::decimal::to_fixed(&er.upper(), 8), er.terms);
    println!("mean vertex rank in [{}, {}] after {} terms", et.decimal(8), rankgen::decimal::to_fixed(&et.upper(), 8), et.terms);
    for family in [LimitFamily::ExpectedRootRank, LimitFamily::ExpectedVertexRank] {
        println!("{}: {}", family.tag(), asymptotics::certified_constant_decimal(family, 6).unwrap());
    }
}
