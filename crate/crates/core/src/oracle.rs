//! Brute-force ground truth: enumerate every rooted plane tree of a given
//! size and read ranks directly off each tree.
//!
//! Trees are generated by the size of the root's first subtree. Every
//! smaller size is materialized once as a flat table of preorder
//! child-count words (a tree on `s` vertices is exactly `s` bytes), and the
//! top level is streamed from those tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::genfun::{self, RootMethod};
use crate::report::VerificationReport;
use crate::series::BigRational;

pub const DEFAULT_SIZE_CAP: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("tree size must be at least 1")]
    EmptyTree,
    #[error("size {n} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("invalid preorder child-count word")]
    MalformedWord,
}

/// A rooted tree whose children are ordered. A vertex with no children is a
/// leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree::default()
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    /// The path on `n` vertices, rooted at one end.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(PlaneTree::leaf(), |t, _| PlaneTree::node(vec![t]))
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::size).sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(PlaneTree::leaf_count).sum()
        }
    }

    /// Child counts in preorder.
    pub fn preorder_degrees(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t.children.len() as u8);
            stack.extend(t.children.iter().rev());
        }
        out
    }

    /// Rebuild a tree from its preorder child counts.
    pub fn from_preorder_degrees(word: &[u8]) -> Result<Self, OracleError> {
        fn build(word: &[u8], pos: &mut usize) -> Result<PlaneTree, OracleError> {
            let d = *word.get(*pos).ok_or(OracleError::MalformedWord)?;
            *pos += 1;
            let children = (0..d)
                .map(|_| build(word, pos))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PlaneTree { children })
        }
        let mut pos = 0;
        let t = build(word, &mut pos)?;
        if pos != word.len() {
            return Err(OracleError::MalformedWord);
        }
        Ok(t)
    }

    /// Rank of every vertex in preorder: leaves have rank 0 and an internal
    /// vertex has rank one more than its lowest-ranked child.
    pub fn vertex_ranks(&self) -> Vec<u32> {
        ranks_of_word(&self.preorder_degrees())
    }

    pub fn root_rank(&self) -> u32 {
        self.vertex_ranks()[0]
    }
}

/// Ranks in preorder from a preorder child-count word, in one backward pass.
fn ranks_of_word(word: &[u8]) -> Vec<u32> {
    let mut ranks = vec![0u32; word.len()];
    let mut stack: Vec<u32> = Vec::with_capacity(word.len());
    for (i, &d) in word.iter().enumerate().rev() {
        let r = if d == 0 {
            0
        } else {
            let start = stack.len() - d as usize;
            let m = stack.drain(start..).min().expect("d > 0");
            m + 1
        };
        ranks[i] = r;
        stack.push(r);
    }
    ranks
}

/// All ordered forests with a fixed vertex total, as fixed-width words.
/// Each forest also records how many trees it has.
#[derive(Debug, Default)]
struct ForestTable {
    width: usize,
    words: Vec<u8>,
    tree_counts: Vec<u8>,
}

impl ForestTable {
    fn len(&self) -> usize {
        self.tree_counts.len()
    }

    fn get(&self, i: usize) -> (&[u8], u8) {
        (&self.words[i * self.width..(i + 1) * self.width], self.tree_counts[i])
    }
}

/// Plane tree enumerator with a size cap and memoized forest tables.
#[derive(Debug, Clone)]
pub struct Enumerator {
    cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: usize) -> Self {
        Enumerator { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 {
            return Err(OracleError::EmptyTree);
        }
        if n > self.cap {
            return Err(OracleError::SizeCapExceeded { n, cap: self.cap });
        }
        Ok(())
    }

    /// Forest tables for totals `0..=max_total`. A tree on `s` vertices is a
    /// root followed by a forest on `s - 1` vertices.
    fn forest_tables(max_total: usize) -> Vec<ForestTable> {
        let mut tables: Vec<ForestTable> = vec![ForestTable {
            width: 0,
            words: Vec::new(),
            tree_counts: vec![0],
        }];
        for m in 1..=max_total {
            let mut table = ForestTable {
                width: m,
                ..Default::default()
            };
            for first in 1..=m {
                let subtrees = &tables[first - 1];
                let rest = &tables[m - first];
                for i in 0..subtrees.len() {
                    let (sub, sub_roots) = subtrees.get(i);
                    for j in 0..rest.len() {
                        let (tail, tail_trees) = rest.get(j);
                        table.words.push(sub_roots);
                        table.words.extend_from_slice(sub);
                        table.words.extend_from_slice(tail);
                        table.tree_counts.push(tail_trees + 1);
                    }
                }
            }
            tables.push(table);
        }
        tables
    }

    /// Visit every tree on `n` vertices as a preorder child-count word. The
    /// work is split by the size of the root's first subtree and partitions
    /// run in parallel.
    fn for_each_word<A, F, M>(&self, n: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> Result<A, OracleError>
    where
        A: Send,
        F: Fn(&mut A, &[u8]) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        self.check(n)?;
        if n == 1 {
            let mut acc = init();
            fold(&mut acc, &[0]);
            return Ok(acc);
        }
        let tables = Self::forest_tables(n - 2);
        let acc = (1..n)
            .into_par_iter()
            .map(|first| {
                let mut acc = init();
                let subtrees = &tables[first - 1];
                let rest = &tables[n - 1 - first];
                let mut word = vec![0u8; n];
                for i in 0..subtrees.len() {
                    let (sub, sub_roots) = subtrees.get(i);
                    word[1] = sub_roots;
                    word[2..2 + sub.len()].copy_from_slice(sub);
                    for j in 0..rest.len() {
                        let (tail, tail_trees) = rest.get(j);
                        word[0] = tail_trees + 1;
                        word[first + 1..].copy_from_slice(tail);
                        fold(&mut acc, &word);
                    }
                }
                acc
            })
            .reduce(&init, &merge);
        Ok(acc)
    }

    /// Every plane tree on `n` vertices, each exactly once.
    pub fn enumerate(&self, n: usize) -> Result<impl Iterator<Item = PlaneTree>, OracleError> {
        self.check(n)?;
        let tables = Arc::new(Self::forest_tables(n - 1));
        let count = tables[n - 1].len();
        Ok((0..count).map(move |i| {
            let (forest, roots) = tables[n - 1].get(i);
            let mut word = Vec::with_capacity(n);
            word.push(roots);
            word.extend_from_slice(forest);
            PlaneTree::from_preorder_degrees(&word).expect("generated words are well formed")
        }))
    }

    /// Number of plane trees on `n` vertices, by enumeration.
    pub fn count(&self, n: usize) -> Result<u64, OracleError> {
        self.for_each_word(n, || 0u64, |c, _| *c += 1, |a, b| a + b)
    }

    /// Aggregate ranks over every tree on `n` vertices.
    pub fn tally(&self, n: usize) -> Result<RankTally, OracleError> {
        let raw = self.for_each_word(
            n,
            || RawTally::new(n),
            |acc, word| acc.add_tree(word),
            RawTally::merge,
        )?;
        Ok(raw.finish())
    }
}

pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = PlaneTree>, OracleError> {
    Enumerator::new().enumerate(n)
}

pub fn tally(n: usize) -> Result<RankTally, OracleError> {
    Enumerator::new().tally(n)
}

#[derive(Debug, Clone)]
struct RawTally {
    n: usize,
    trees: u64,
    rank_histogram: Vec<u64>,
    root_rank_histogram: Vec<u64>,
    by_leaves: Vec<u64>,
}

impl RawTally {
    fn new(n: usize) -> Self {
        RawTally {
            n,
            trees: 0,
            rank_histogram: vec![0; n],
            root_rank_histogram: vec![0; n],
            by_leaves: vec![0; n + 1],
        }
    }

    fn add_tree(&mut self, word: &[u8]) {
        let ranks = ranks_of_word(word);
        self.trees += 1;
        for &r in &ranks {
            self.rank_histogram[r as usize] += 1;
        }
        self.root_rank_histogram[ranks[0] as usize] += 1;
        let leaves = word.iter().filter(|&&d| d == 0).count();
        self.by_leaves[leaves] += 1;
    }

    fn merge(mut self, other: RawTally) -> RawTally {
        self.trees += other.trees;
        for (a, b) in [
            (&mut self.rank_histogram, &other.rank_histogram),
            (&mut self.root_rank_histogram, &other.root_rank_histogram),
            (&mut self.by_leaves, &other.by_leaves),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }

    fn finish(self) -> RankTally {
        let big = |v: u64| BigInt::from(v);
        let rank_histogram: BTreeMap<u32, BigInt> = self
            .rank_histogram
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k as u32, big(c)))
            .collect();
        let top = rank_histogram.keys().next_back().copied().unwrap_or(0);
        let at_least = |hist: &[u64], k: usize| hist[k.min(hist.len())..].iter().sum::<u64>();
        let vertex_counts = (0..=top)
            .map(|k| (k, big(at_least(&self.rank_histogram, k as usize))))
            .collect();
        let root_top = self
            .root_rank_histogram
            .iter()
            .rposition(|&c| c > 0)
            .unwrap_or(0) as u32;
        let root_counts = (1..=root_top)
            .map(|k| (k, big(at_least(&self.root_rank_histogram, k as usize))))
            .collect();
        let weighted = |hist: &[u64]| -> BigInt {
            hist.iter()
                .enumerate()
                .map(|(k, &c)| BigInt::from(k) * c)
                .sum()
        };
        let bivariate = self
            .by_leaves
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| (m as u32, big(c)))
            .collect();
        RankTally {
            n: self.n,
            trees: big(self.trees),
            leaf_total: big(self.rank_histogram[0]),
            vertex_counts,
            root_counts,
            rank_histogram,
            root_rank_sum: weighted(&self.root_rank_histogram),
            vertex_rank_sum: weighted(&self.rank_histogram),
            bivariate,
        }
    }
}

/// Exact counts over all trees of one size.
///
/// `vertex_counts[k]` counts k-protected vertices (so `vertex_counts[0]` is
/// every vertex), `root_counts[k]` counts trees with a k-protected root for
/// `k >= 1`, `rank_histogram[k]` counts vertices of rank exactly `k`, and
/// `bivariate[m]` counts trees with `m` leaves. Zero entries are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTally {
    pub n: usize,
    pub trees: BigInt,
    pub vertex_counts: BTreeMap<u32, BigInt>,
    pub root_counts: BTreeMap<u32, BigInt>,
    pub leaf_total: BigInt,
    pub rank_histogram: BTreeMap<u32, BigInt>,
    pub root_rank_sum: BigInt,
    pub vertex_rank_sum: BigInt,
    pub bivariate: BTreeMap<u32, BigInt>,
}

impl RankTally {
    pub fn vertex_count(&self, k: u32) -> BigInt {
        self.vertex_counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn root_count(&self, k: u32) -> BigInt {
        if k == 0 {
            return self.trees.clone();
        }
        self.root_counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn trees_with_leaves(&self, m: u32) -> BigInt {
        self.bivariate.get(&m).cloned().unwrap_or_default()
    }
}

/// Compare oracle tallies with generating-function coefficients for every
/// `1 <= n <= n_max` and `1 <= k <= k_max`.
pub fn cross_check(n_max: usize, k_max: u32) -> Result<VerificationReport, OracleError> {
    cross_check_with(&Enumerator::new(), n_max, k_max)
}

pub fn cross_check_with(
    enumerator: &Enumerator,
    n_max: usize,
    k_max: u32,
) -> Result<VerificationReport, OracleError> {
    let mut report =
        VerificationReport::new(format!("oracle vs generating functions, n <= {n_max}, k <= {k_max}"));
    let order = n_max;
    let trees = genfun::catalan_series(order);
    let vertices = genfun::vertex_series(order);
    let leaves = genfun::leaf_series(order);
    let biv = genfun::bivariate_series(order);
    let root_sum = genfun::root_rank_sum_series(order);
    let vertex_sum = genfun::vertex_rank_sum_series(order);
    let roots: Vec<_> = (1..=k_max)
        .into_par_iter()
        .map(|k| genfun::root_protected_series(k, order, RootMethod::Closed).expect("k >= 1"))
        .collect();
    let protected: Vec<_> = roots.iter().map(|r| &leaves * r).collect();

    let tallies = (1..=n_max)
        .map(|n| enumerator.tally(n))
        .collect::<Result<Vec<_>, _>>()?;

    fn compare(report: &mut VerificationReport, name: String, oracle: &BigInt, series: &BigRational) {
        let expected = BigRational::from_integer(oracle.clone());
        report.push(
            name,
            expected == *series,
            format!("oracle {oracle}, series {series}"),
        );
    }
    for t in &tallies {
        let n = t.n;
        compare(&mut report, format!("t({n})"), &t.trees, &trees.coeffs()[n]);
        compare(&mut report, format!("v({n})"), &t.vertex_count(0), &vertices.coeffs()[n]);
        compare(&mut report, format!("l({})", n - 1), &t.leaf_total, &leaves.coeffs()[n - 1]);
        for k in 1..=k_max {
            let i = k as usize - 1;
            compare(&mut report, format!("t_{k}({n})"), &t.vertex_count(k), &protected[i].coeffs()[n]);
            compare(&mut report, format!("r_{k}({n})"), &t.root_count(k), &roots[i].coeffs()[n]);
        }
        for m in 0..=n {
            compare(&mut report, 
                format!("t_({n},{m})"),
                &t.trees_with_leaves(m as u32),
                &biv.coeff(n, m),
            );
        }
        compare(&mut report, format!("r({n})"), &t.root_rank_sum, &root_sum.coeffs()[n]);
        compare(&mut report, format!("vertex rank sum({n})"), &t.vertex_rank_sum, &vertex_sum.coeffs()[n]);
        let hist_total: BigInt = t.rank_histogram.values().sum();
        report.push(
            format!("rank partition({n})"),
            hist_total == t.vertex_count(0) && t.vertex_count(n as u32).is_zero(),
            format!("sum of rank histogram {hist_total}, no rank >= {n}"),
        );
    }
    Ok(report)
}
