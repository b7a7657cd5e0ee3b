//! Exact finite-size fractions approaching their limits.

use rankgen::asymptotics::{self, LimitFamily};
use rankgen::decimal;

fn main() {
    for (family, k) in [(LimitFamily::ProtectedFraction, 3), (LimitFamily::ExpectedRootRank, 0)] {
        println!("{} (k = {k})", family.tag());
        let rows = asymptotics::convergence_report(family, k, 60).unwrap();
        for row in rows.iter().filter(|r| r.n % 10 == 0) {
            println!(
                "  n = {:>2}  ratio {}  gap {}",
                row.n,
                decimal::to_significant(&row.exact_ratio, 8),
                decimal::to_significant(&row.abs_gap, 3)
            );
        }
    }
}
