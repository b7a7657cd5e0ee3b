//! Write a coefficient list in b-file layout ("n value" per line).

use std::fmt::Write;

use rankgen::genfun::SeriesFamily;

fn main() {
    let family: SeriesFamily = "R_2".parse().unwrap();
    let series = family.series(20);
    let mut out = String::new();
    for (n, c) in series.coeffs().iter().enumerate().skip(1) {
        writeln!(out, "{n} {c}").unwrap();
    }
    print!("{out}");
}
