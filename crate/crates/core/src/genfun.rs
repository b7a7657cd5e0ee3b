//! Generating functions for rooted plane trees and their k-protected
//! vertices, together with exact checks of the polynomial identities that
//! tie them together.
//!
//! Notation used in names and docs:
//!
//! * `T(x)`: trees by size, `[x^n] T = Catalan(n-1)`.
//! * `V(x) = x / sqrt(1-4x)`: total vertices over all trees of size `n`.
//! * `L(x) = (1 + 1/sqrt(1-4x)) / 2`: `[x^n] L` is the total number of
//!   leaves over all trees of size `n+1`.
//! * `R_k(x)`: trees whose root is k-protected.
//! * `T_k(x) = L(x) R_k(x)`: k-protected vertices over all trees.
//! * `n_k(x) = 1 - 2x - ... - 2x^k` and `d_k(x)` are the polynomials of the
//!   closed form `R_k = x^(k-2) (n_k - sqrt(1-4x)) / (2 d_k)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::report::VerificationReport;
use crate::series::{rat, BigRational, Polynomial, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error("index k = {k} is not supported here (need k >= {min})")]
    UnsupportedIndex { k: u32, min: u32 },
    #[error("order {order} is too small (need at least {min})")]
    OrderTooSmall { order: usize, min: usize },
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `sqrt(1 - 4x)` through `x^order`.
pub fn sqrt_one_minus_4x(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_integers(order, &[1, -4])
        .sqrt_unit()
        .expect("constant term is 1")
}

/// Catalan numbers `c_0 .. c_{count-1}` by the convolution recurrence
/// `c_{m+1} = sum_i c_i c_{m-i}`.
pub fn catalan_numbers(count: usize) -> Vec<BigInt> {
    let mut c: Vec<BigInt> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            c.push(BigInt::one());
            continue;
        }
        let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
        c.push(next);
    }
    c
}

/// `T(x) = (1 - sqrt(1-4x)) / 2`.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let s = sqrt_one_minus_4x(order);
    (&TruncatedSeries::one(order) - &s).scale(&half())
}

/// `V(x) = x / sqrt(1-4x)`.
pub fn vertex_series(order: usize) -> TruncatedSeries {
    let s = sqrt_one_minus_4x(order);
    TruncatedSeries::one(order)
        .div(&s)
        .expect("constant term is 1")
        .shift(1)
}

/// `L(x) = (1 + 1/sqrt(1-4x)) / 2`.
pub fn leaf_series(order: usize) -> TruncatedSeries {
    let s = sqrt_one_minus_4x(order);
    let inv = TruncatedSeries::one(order).div(&s).expect("constant term is 1");
    (&TruncatedSeries::one(order) + &inv).scale(&half())
}

/// Power series in `x` whose coefficients are polynomials in `y`.
///
/// Coefficient `x^n y^m` of the tree series counts trees on `n` vertices
/// with `m` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    by_x: Vec<Polynomial>,
}

impl BivariatePoly {
    pub fn new(order: usize, mut by_x: Vec<Polynomial>) -> Self {
        by_x.resize(order + 1, Polynomial::zero());
        BivariatePoly { by_x }
    }

    pub fn order(&self) -> usize {
        self.by_x.len() - 1
    }

    /// The polynomial in `y` multiplying `x^n`.
    pub fn x_coeff(&self, n: usize) -> &Polynomial {
        &self.by_x[n]
    }

    /// `[x^n y^m]`.
    pub fn coeff(&self, n: usize, m: usize) -> BigRational {
        self.by_x[n].coeff(m)
    }

    fn mul_truncated(&self, rhs: &BivariatePoly) -> BivariatePoly {
        let order = self.order().min(rhs.order());
        let by_x = (0..=order)
            .map(|n| {
                (0..=n).fold(Polynomial::zero(), |acc, i| {
                    &acc + &(&self.by_x[i] * &rhs.by_x[n - i])
                })
            })
            .collect();
        BivariatePoly { by_x }
    }

    /// Inverse of a series whose `x^0` coefficient is the constant 1.
    fn inverse_unit(&self) -> BivariatePoly {
        debug_assert_eq!(self.by_x[0], Polynomial::constant(BigRational::one()));
        let mut q: Vec<Polynomial> = vec![Polynomial::constant(BigRational::one())];
        for n in 1..=self.order() {
            let acc = (1..=n).fold(Polynomial::zero(), |acc, i| {
                &acc - &(&self.by_x[i] * &q[n - i])
            });
            q.push(acc);
        }
        BivariatePoly { by_x: q }
    }

    /// `self - (x y + x self / (1 - self))` through the order of `self`.
    /// Zero exactly when `self` solves the tree functional equation.
    pub fn functional_equation_residual(&self) -> BivariatePoly {
        let order = self.order();
        let one = Polynomial::constant(BigRational::one());
        let mut one_minus: Vec<Polynomial> = self.by_x.iter().map(|p| -p).collect();
        one_minus[0] = &one_minus[0] + &one;
        let ratio = self.mul_truncated(&BivariatePoly::new(order, one_minus).inverse_unit());
        let by_x = (0..=order)
            .map(|n| {
                let mut rhs = if n >= 1 {
                    ratio.by_x[n - 1].clone()
                } else {
                    Polynomial::zero()
                };
                if n == 1 {
                    rhs = &rhs + &Polynomial::from_integers(&[0, 1]);
                }
                &self.by_x[n] - &rhs
            })
            .collect();
        BivariatePoly { by_x }
    }

    pub fn is_zero(&self) -> bool {
        self.by_x.iter().all(Polynomial::is_zero)
    }

    /// `d/dy` evaluated at `y = 1`, as a series in `x`.
    pub fn d_dy_at_one(&self) -> TruncatedSeries {
        let one = BigRational::one();
        TruncatedSeries::new(
            self.order(),
            self.by_x.iter().map(|p| p.derivative().eval(&one)).collect(),
        )
    }

    /// Evaluate at `y = 1`.
    pub fn at_y_one(&self) -> TruncatedSeries {
        let one = BigRational::one();
        TruncatedSeries::new(self.order(), self.by_x.iter().map(|p| p.eval(&one)).collect())
    }
}

/// Solution of `T(x,y) = x y + x T / (1 - T)` with zero constant term.
///
/// Round `n` fixes `[x^n]` from the lower coefficients, so exactly
/// `order + 1` rounds are run.
pub fn bivariate_series(order: usize) -> BivariatePoly {
    let mut trees: Vec<Polynomial> = vec![Polynomial::zero()];
    // forests[m] = [x^m] T / (1 - T), nonempty ordered forests.
    let mut forests: Vec<Polynomial> = vec![Polynomial::zero()];
    for n in 1..=order {
        if n >= 2 {
            let m = n - 1;
            let mut f = trees[m].clone();
            for i in 1..m {
                f = &f + &(&trees[i] * &forests[m - i]);
            }
            forests.push(f);
        }
        let t = if n == 1 {
            Polynomial::from_integers(&[0, 1])
        } else {
            forests[n - 1].clone()
        };
        trees.push(t);
    }
    BivariatePoly::new(order, trees)
}

/// `L(x)` recovered as `(1/x) d/dy T(x,y)` at `y = 1`. Returns order
/// `order - 1`.
pub fn leaf_series_from_bivariate(order: usize) -> Result<TruncatedSeries, GenfunError> {
    if order < 1 {
        return Err(GenfunError::OrderTooSmall { order, min: 1 });
    }
    Ok(bivariate_series(order).d_dy_at_one().unshift(1))
}

/// `n_k(x) = 1 - 2x - 2x^2 - ... - 2x^k`; `k = 0` gives the constant 1.
pub fn n_poly(k: u32) -> Polynomial {
    let mut c = vec![1i64];
    c.extend(std::iter::repeat_n(-2, k as usize));
    Polynomial::from_integers(&c)
}

/// `d_k(x) = sum_{i=0}^{k-3} (i+1) x^i + sum_{i=k-2}^{2k-3} (2k-2-i) x^i`
/// for `k >= 2`, and `d_1 = 1`.
///
/// This is the unique polynomial with `n_k^2 - (1-4x) = 4 x^3 d_k`; it gives
/// `d_2 = 2 + x` and `d_3 = 1 + 3x + 2x^2 + x^3`.
pub fn d_poly(k: u32) -> Result<Polynomial, GenfunError> {
    match k {
        0 => Err(GenfunError::UnsupportedIndex { k, min: 1 }),
        1 => Ok(Polynomial::constant(BigRational::one())),
        _ => {
            let k = k as i64;
            let c: Vec<i64> = (0..=2 * k - 3)
                .map(|i| if i <= k - 3 { i + 1 } else { 2 * k - 2 - i })
                .collect();
            Ok(Polynomial::from_integers(&c))
        }
    }
}

fn x_pow(m: usize) -> Polynomial {
    Polynomial::monomial(BigRational::one(), m)
}

fn first_difference(lhs: &Polynomial, rhs: &Polynomial) -> Option<(usize, BigRational, BigRational)> {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..len)
        .map(|i| (i, lhs.coeff(i), rhs.coeff(i)))
        .find(|(_, a, b)| a != b)
}

fn push_poly_check(report: &mut VerificationReport, name: String, lhs: &Polynomial, rhs: &Polynomial) {
    match first_difference(lhs, rhs) {
        None => report.push(name, true, format!("both sides = {lhs}")),
        Some((i, a, b)) => report.push(
            name,
            false,
            format!("coefficient of x^{i} differs: lhs {a}, rhs {b}"),
        ),
    }
}

/// `d_{k+1} = d_k - x^(k-2) n_k + x^(2k-1)` for `2 <= k <= k_max`.
pub fn check_d_recurrence(k_max: u32) -> VerificationReport {
    check_d_recurrence_using(k_max, |k| d_poly(k).expect("k >= 2"))
}

/// As [`check_d_recurrence`] with a caller-supplied `d_k`.
pub fn check_d_recurrence_using(k_max: u32, d: impl Fn(u32) -> Polynomial) -> VerificationReport {
    let mut report = VerificationReport::new(format!("d_(k+1) recurrence, 2 <= k <= {k_max}"));
    for k in 2..=k_max {
        let lhs = d(k + 1);
        let dk = d(k);
        let rhs = &(&dk - &n_poly(k).shift(k as usize - 2)) + &x_pow(2 * k as usize - 1);
        push_poly_check(&mut report, format!("d_{} = d_{k} - x^{} n_{k} + x^{}", k + 1, k - 2, 2 * k - 1), &lhs, &rhs);
    }
    report
}

/// `n_k^2 - (1 - 4x) = 4 x^3 d_k` for `2 <= k <= k_max`.
pub fn check_nd_identity(k_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!("n_k^2 - (1-4x) = 4x^3 d_k, 2 <= k <= {k_max}"));
    let one_minus_4x = Polynomial::from_integers(&[1, -4]);
    for k in 2..=k_max {
        let n = n_poly(k);
        let lhs = &(&n * &n) - &one_minus_4x;
        let rhs = d_poly(k).expect("k >= 2").shift(3).scale(&rat(4));
        push_poly_check(&mut report, format!("n_{k}^2 - (1-4x) = 4x^3 d_{k}"), &lhs, &rhs);
    }
    report
}

/// `n_k(1/4) = (2 + 4^k) / (3 * 4^k)` and `d_k(1/4) = 16 n_k(1/4)^2` for
/// `1 <= k <= k_max` (the second only from `k = 2`).
pub fn check_quarter_evaluations(k_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!("evaluations at x = 1/4, k <= {k_max}"));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    for k in 1..=k_max {
        let four_k = num_traits::pow(BigInt::from(4), k as usize);
        let expected = BigRational::new(BigInt::from(2) + &four_k, BigInt::from(3) * &four_k);
        let nk = n_poly(k).eval(&quarter);
        report.push(
            format!("n_{k}(1/4) = (2+4^{k})/(3*4^{k})"),
            nk == expected,
            format!("n_{k}(1/4) = {nk}, closed form {expected}"),
        );
        if k >= 2 {
            let dk = d_poly(k).expect("k >= 2").eval(&quarter);
            let rhs = rat(16) * &nk * &nk;
            report.push(
                format!("d_{k}(1/4) = 16 n_{k}(1/4)^2"),
                dk == rhs,
                format!("d_{k}(1/4) = {dk}, 16 n_{k}(1/4)^2 = {rhs}"),
            );
        }
    }
    report
}

/// How [`root_protected_series`] builds `R_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootMethod {
    /// `x^(k-2) (n_k - sqrt(1-4x)) / (2 d_k)`, with the explicit `R_1`.
    #[default]
    Closed,
    /// `R_k = x R_(k-1) / (1 - R_(k-1))` iterated from `R_1`.
    Recursive,
}

fn r1_series(order: usize, sqrt: &TruncatedSeries) -> TruncatedSeries {
    let one_minus_2x = TruncatedSeries::from_integers(order, &[1, -2]);
    (&one_minus_2x - sqrt).scale(&half())
}

fn closed_root_series(k: u32, order: usize, sqrt: &TruncatedSeries) -> TruncatedSeries {
    if k == 1 {
        return r1_series(order, sqrt);
    }
    let numer = (&TruncatedSeries::from_polynomial(&n_poly(k), order) - sqrt).shift(k as usize - 2);
    let denom = TruncatedSeries::from_polynomial(&d_poly(k).expect("k >= 2"), order).scale(&rat(2));
    numer.div(&denom).expect("d_k(0) != 0")
}

fn recursive_step(prev: &TruncatedSeries) -> TruncatedSeries {
    let one_minus = &TruncatedSeries::one(prev.order()) - prev;
    prev.div(&one_minus).expect("R_k(0) = 0").shift(1)
}

/// `R_k(x)`: `[x^n]` counts trees on `n` vertices whose root is k-protected.
pub fn root_protected_series(
    k: u32,
    order: usize,
    method: RootMethod,
) -> Result<TruncatedSeries, GenfunError> {
    if k == 0 {
        return Err(GenfunError::UnsupportedIndex { k, min: 1 });
    }
    let sqrt = sqrt_one_minus_4x(order);
    Ok(match method {
        RootMethod::Closed => closed_root_series(k, order, &sqrt),
        RootMethod::Recursive => {
            let mut r = r1_series(order, &sqrt);
            for _ in 1..k {
                r = recursive_step(&r);
            }
            r
        }
    })
}

/// `R_1 .. R_{k_max}` by the recursion, sharing the intermediate steps.
pub fn root_protected_family_recursive(k_max: u32, order: usize) -> Vec<TruncatedSeries> {
    let sqrt = sqrt_one_minus_4x(order);
    let mut out: Vec<TruncatedSeries> = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let next = match out.last() {
            None => r1_series(order, &sqrt),
            Some(prev) => recursive_step(prev),
        };
        debug_assert_eq!(out.len() + 1, k as usize);
        out.push(next);
    }
    out
}

/// `T_k(x) = L(x) R_k(x)`: `[x^n]` counts k-protected vertices over all
/// trees on `n` vertices.
pub fn protected_vertex_series(k: u32, order: usize) -> Result<TruncatedSeries, GenfunError> {
    let r = root_protected_series(k, order, RootMethod::Closed)?;
    Ok(&leaf_series(order) * &r)
}

/// `sum_{k=1}^{order-1} R_k`: `[x^n]` is the sum of root ranks over all trees
/// on `n` vertices. No tree on `n` vertices has an `n`-protected vertex, so
/// the truncated sum is exact through `x^order`.
pub fn root_rank_sum_series(order: usize) -> TruncatedSeries {
    let sqrt = sqrt_one_minus_4x(order);
    (1..order as u32)
        .into_par_iter()
        .map(|k| closed_root_series(k, order, &sqrt))
        .reduce(|| TruncatedSeries::zero(order), |a, b| &a + &b)
}

/// `sum_{k=1}^{order-1} T_k`: `[x^n]` is the sum of the ranks of all vertices
/// of all trees on `n` vertices.
pub fn vertex_rank_sum_series(order: usize) -> TruncatedSeries {
    let sqrt = sqrt_one_minus_4x(order);
    let leaves = leaf_series(order);
    (1..order as u32)
        .into_par_iter()
        .map(|k| &leaves * &closed_root_series(k, order, &sqrt))
        .reduce(|| TruncatedSeries::zero(order), |a, b| &a + &b)
}

/// `R_k` by both constructions for `1 <= k <= k_max` through `x^order`.
pub fn check_closed_vs_recursive(k_max: u32, order: usize) -> VerificationReport {
    let mut report =
        VerificationReport::new(format!("closed vs recursive R_k, k <= {k_max}, order {order}"));
    let recursive = root_protected_family_recursive(k_max, order);
    let sqrt = sqrt_one_minus_4x(order);
    let closed: Vec<TruncatedSeries> = (1..=k_max)
        .into_par_iter()
        .map(|k| closed_root_series(k, order, &sqrt))
        .collect();
    for (i, (c, r)) in closed.iter().zip(&recursive).enumerate() {
        let k = i + 1;
        match c.coeffs().iter().zip(r.coeffs()).position(|(a, b)| a != b) {
            None => report.push(
                format!("R_{k} closed = recursive"),
                true,
                format!("{} coefficients agree", order + 1),
            ),
            Some(n) => report.push(
                format!("R_{k} closed = recursive"),
                false,
                format!("[x^{n}] closed {} vs recursive {}", c.coeffs()[n], r.coeffs()[n]),
            ),
        }
    }
    report
}

/// Selection handle for the series families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesFamily {
    Trees,
    Vertices,
    Leaves,
    RootProtected(u32),
    ProtectedVertices(u32),
    RootRankSum,
    VertexRankSum,
}

impl SeriesFamily {
    /// Build from a tag (`T`, `V`, `L`, `R`, `Tk`, `ER`, `ET`) and an optional
    /// `k`, which `R` and `Tk` require to be at least 1.
    pub fn from_tag(tag: &str, k: Option<u32>) -> Result<Self, String> {
        let need_k = || match k {
            Some(k) if k >= 1 => Ok(k),
            Some(k) => Err(format!("family {tag} needs k >= 1, got {k}")),
            None => Err(format!("family {tag} needs --k")),
        };
        Ok(match tag {
            "T" => SeriesFamily::Trees,
            "V" => SeriesFamily::Vertices,
            "L" => SeriesFamily::Leaves,
            "R" => SeriesFamily::RootProtected(need_k()?),
            "Tk" => SeriesFamily::ProtectedVertices(need_k()?),
            "ER" | "RootRankSum" => SeriesFamily::RootRankSum,
            "ET" | "VertexRankSum" => SeriesFamily::VertexRankSum,
            other => return Err(format!("unknown series family {other:?}")),
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SeriesFamily::Trees => "T",
            SeriesFamily::Vertices => "V",
            SeriesFamily::Leaves => "L",
            SeriesFamily::RootProtected(_) => "R",
            SeriesFamily::ProtectedVertices(_) => "Tk",
            SeriesFamily::RootRankSum => "ER",
            SeriesFamily::VertexRankSum => "ET",
        }
    }

    pub fn k(&self) -> Option<u32> {
        match *self {
            SeriesFamily::RootProtected(k) | SeriesFamily::ProtectedVertices(k) => Some(k),
            _ => None,
        }
    }

    pub fn series(&self, order: usize) -> TruncatedSeries {
        match *self {
            SeriesFamily::Trees => catalan_series(order),
            SeriesFamily::Vertices => vertex_series(order),
            SeriesFamily::Leaves => leaf_series(order),
            SeriesFamily::RootProtected(k) => {
                root_protected_series(k, order, RootMethod::Closed).expect("k >= 1")
            }
            SeriesFamily::ProtectedVertices(k) => protected_vertex_series(k, order).expect("k >= 1"),
            SeriesFamily::RootRankSum => root_rank_sum_series(order),
            SeriesFamily::VertexRankSum => vertex_rank_sum_series(order),
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k() {
            Some(k) => write!(f, "{}_{k}", self.tag()),
            None => write!(f, "{}", self.tag()),
        }
    }
}

impl FromStr for SeriesFamily {
    type Err = String;

    /// Accepts `T`, `V`, `L`, `ER`, `ET`, `R_3`, `Tk_2`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once('_') {
            Some((tag, k)) => {
                let k = k.parse().map_err(|_| format!("bad index in {s:?}"))?;
                SeriesFamily::from_tag(tag, Some(k))
            }
            None => SeriesFamily::from_tag(s, None),
        }
    }
}
