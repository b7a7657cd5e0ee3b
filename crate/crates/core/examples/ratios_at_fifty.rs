//! The three exact ratios at n = 50 next to their reference fractions.

use rankgen::verify;

fn main() {
    for r in verify::fifty_ratios() {
        println!("{}", r.name);
        println!("  {}", r.describe());
        println!(
            "  reduced ratio matches: {}, decimal matches: {}",
            r.exact_match(),
            r.decimal_match()
        );
    }
}
