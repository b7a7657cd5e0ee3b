//! Enumerate plane trees, tally ranks, and compare with the series.

use rankgen::oracle::{self, Enumerator, PlaneTree};

fn main() {
    let tree = PlaneTree::node(vec![
        PlaneTree::node(vec![PlaneTree::leaf(), PlaneTree::leaf()]),
        PlaneTree::path(3),
    ]);
    println!("preorder degrees {:?}", tree.preorder_degrees());
    println!("vertex ranks {:?}, root rank {}", tree.vertex_ranks(), tree.root_rank());

    let e = Enumerator::new();
    for n in 1..=4 {
        for t in e.enumerate(n).unwrap() {
            println!("n = {n}: {:?} root rank {}", t.preorder_degrees(), t.root_rank());
        }
    }
    let tally = e.tally(8).unwrap();
    println!("n = 8: {} trees, rank histogram {:?}", tally.trees, tally.rank_histogram);

    let report = oracle::cross_check(10, 9).unwrap();
    println!("{} comparisons against the series, {} failed", report.len(), report.failures().count());
}
