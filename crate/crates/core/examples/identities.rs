//! Polynomial identities behind the closed forms, checked exactly.

use rankgen::genfun;

fn main() {
    let reports = [
        genfun::check_d_recurrence(30),
        genfun::check_nd_identity(30),
        genfun::check_quarter_evaluations(30),
        genfun::check_closed_vs_recursive(10, 100),
    ];
    for r in &reports {
        println!("{}: {} checks, {} failed", r.title, r.len(), r.failures().count());
    }
}
