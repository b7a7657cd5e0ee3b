//! Sample |d_k(x)| on the disk |x| <= 4/15 looking for zeros.

use rankgen::asymptotics;
use rankgen::decimal;

fn main() {
    let check = asymptotics::disk_spotcheck_dk(30, 64);
    println!("{}", check.report.title);
    println!("failed points: {}", check.report.failures().count());
    let (re, im) = &check.argmin_point;
    println!(
        "smallest |d_k|^2 = {} at k = {}, x = {} + {}i",
        decimal::to_significant(&check.min_modulus_sq, 6),
        check.argmin_k,
        decimal::to_significant(re, 4),
        decimal::to_significant(im, 4)
    );
}
