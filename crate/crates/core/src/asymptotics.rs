//! Limit fractions and expected-rank constants, kept as exact rationals
//! with certified tail bounds, plus finite-n convergence tables computed
//! from exact series coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::decimal;
use crate::genfun::{self, RootMethod};
use crate::report::VerificationReport;
use crate::series::{rat, BigRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("{what} needs k >= {min}, got {k}")]
    UnsupportedIndex { what: &'static str, k: u32, min: u32 },
}

fn pow4(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(4), e as usize)
}

/// `4^e` for any integer `e`.
fn pow4_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow4(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow4((-e) as u32))
    }
}

/// A limit value: exact when the limit is a closed-form rational, otherwise a
/// partial sum with a certified bound on the omitted tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitValue {
    pub exact: Option<BigRational>,
    pub partial_sum: BigRational,
    pub terms: u32,
    pub tail_bound: BigRational,
}

impl LimitValue {
    pub fn exact(value: BigRational) -> Self {
        LimitValue {
            exact: Some(value.clone()),
            partial_sum: value,
            terms: 0,
            tail_bound: BigRational::zero(),
        }
    }

    /// Best available value: the exact limit or the partial sum.
    pub fn value(&self) -> &BigRational {
        self.exact.as_ref().unwrap_or(&self.partial_sum)
    }

    /// Upper end of the certified bracket `[partial_sum, partial_sum + tail]`.
    /// Every term summed here is positive, so the true value lies inside.
    pub fn upper(&self) -> BigRational {
        &self.partial_sum + &self.tail_bound
    }

    pub fn decimal(&self, places: u32) -> String {
        decimal::to_fixed(self.value(), places)
    }

    /// The rounding to `places` digits if both ends of the certified bracket
    /// round the same way.
    pub fn certified_decimal(&self, places: u32) -> Option<String> {
        let lo = decimal::to_fixed(&self.partial_sum, places);
        let hi = decimal::to_fixed(&self.upper(), places);
        (lo == hi).then_some(lo)
    }
}

impl fmt::Display for LimitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(v) => write!(f, "{v}"),
            None => write!(
                f,
                "{} (+ tail <= {})",
                decimal::to_fixed(&self.partial_sum, 12),
                decimal::to_significant(&self.tail_bound, 3)
            ),
        }
    }
}

/// Limiting fraction of vertices that are k-protected: `3 / (4^k + 2)`.
pub fn protected_fraction_limit(k: u32) -> LimitValue {
    LimitValue::exact(BigRational::new(BigInt::from(3), pow4(k) + 2))
}

/// Limiting fraction of trees whose root is k-protected:
/// `9 / (4^(1-k) + 4 + 4^k)`.
pub fn root_protected_limit(k: u32) -> LimitValue {
    let denom = pow4_rat(1 - k as i64) + rat(4) + pow4_rat(k as i64);
    LimitValue::exact(rat(9) / denom)
}

/// Limiting fraction of vertices of rank exactly `k`:
/// `9 / (10 + 4^(1-k) + 4^(1+k))`.
pub fn rank_fraction_limit(k: u32) -> LimitValue {
    let denom = rat(10) + pow4_rat(1 - k as i64) + pow4_rat(1 + k as i64);
    LimitValue::exact(rat(9) / denom)
}

/// The k-protected vertex fraction in its unsimplified form
/// `(1/4)^(k-3) (n_k(1/4) - 1 + 4/4) / (4 d_k(1/4))`, from the polynomials.
pub fn protected_fraction_limit_from_polynomials(k: u32) -> Result<BigRational, AsymptoticsError> {
    if k < 2 {
        return Err(AsymptoticsError::UnsupportedIndex { what: "polynomial form", k, min: 2 });
    }
    let quarter = pow4_rat(-1);
    let nk = genfun::n_poly(k).eval(&quarter);
    let dk = genfun::d_poly(k).expect("k >= 2").eval(&quarter);
    Ok(pow4_rat(3 - k as i64) * (nk - rat(1) + rat(4) * &quarter) / (rat(4) * dk))
}

/// The root-protected fraction as `(1/4)^(k-2) / d_k(1/4)`.
pub fn root_protected_limit_from_polynomials(k: u32) -> Result<BigRational, AsymptoticsError> {
    if k < 2 {
        return Err(AsymptoticsError::UnsupportedIndex { what: "polynomial form", k, min: 2 });
    }
    let quarter = pow4_rat(-1);
    let dk = genfun::d_poly(k).expect("k >= 2").eval(&quarter);
    Ok(pow4_rat(2 - k as i64) / dk)
}

/// Sum positive terms `term(1..=K)` with `K` the least value for which the
/// geometric majorant `tail(K)` falls below `tol`.
fn certified_sum(
    tol: &BigRational,
    term: impl Fn(u32) -> BigRational,
    tail: impl Fn(u32) -> BigRational,
) -> Result<LimitValue, AsymptoticsError> {
    if !tol.is_positive() {
        return Err(AsymptoticsError::NonPositiveTolerance);
    }
    let mut k = 0;
    let mut sum = BigRational::zero();
    while tail(k) >= *tol {
        k += 1;
        sum += term(k);
    }
    Ok(LimitValue {
        exact: None,
        partial_sum: sum,
        terms: k,
        tail_bound: tail(k),
    })
}

/// Expected root rank in the limit, `sum_{k>=1} 9 / (4^(1-k) + 4 + 4^k)`.
/// Terms are below `9 * 4^-k`, so the tail after `K` terms is below
/// `3 * 4^-K`.
pub fn expected_root_rank_constant(tol: &BigRational) -> Result<LimitValue, AsymptoticsError> {
    certified_sum(
        tol,
        |k| root_protected_limit(k).partial_sum,
        |k| rat(3) * pow4_rat(-(k as i64)),
    )
}

/// Expected vertex rank in the limit, `sum_{k>=1} 3 / (4^k + 2)`. Terms are
/// below `3 * 4^-k`, so the tail after `K` terms is below `4^-K`.
pub fn expected_vertex_rank_constant(tol: &BigRational) -> Result<LimitValue, AsymptoticsError> {
    certified_sum(
        tol,
        |k| protected_fraction_limit(k).partial_sum,
        |k| pow4_rat(-(k as i64)),
    )
}

/// Certified rounding of an expected-rank constant to `places` decimals.
///
/// The minimal-`K` partial sum at tolerance `10^-places` can sit on the
/// wrong side of a rounding boundary (for the vertex constant at six places
/// it rounds to `0.727648`), so the tolerance is tightened until both ends of
/// the bracket `[partial_sum, partial_sum + tail]` round identically.
pub fn certified_constant_decimal(family: LimitFamily, places: u32) -> Option<String> {
    (places..places + 40).find_map(|p| {
        let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), p as usize));
        family
            .limit(0, &tol)
            .ok()
            .and_then(|v| v.certified_decimal(places))
    })
}

/// Which finite-n ratio a convergence table follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LimitFamily {
    /// `t_k(n) / v(n)`.
    ProtectedFraction,
    /// `r_k(n) / t(n)`.
    RootProtected,
    /// `(t_k(n) - t_{k+1}(n)) / v(n)`.
    RankFraction,
    /// `r(n) / t(n)`, mean root rank.
    ExpectedRootRank,
    /// vertex rank sum over `v(n)`, mean vertex rank.
    ExpectedVertexRank,
}

impl LimitFamily {
    pub fn needs_k(&self) -> bool {
        matches!(
            self,
            LimitFamily::ProtectedFraction | LimitFamily::RootProtected | LimitFamily::RankFraction
        )
    }

    pub fn tag(&self) -> &'static str {
        match self {
            LimitFamily::ProtectedFraction => "pk",
            LimitFamily::RootProtected => "rk",
            LimitFamily::RankFraction => "rankk",
            LimitFamily::ExpectedRootRank => "ER",
            LimitFamily::ExpectedVertexRank => "ET",
        }
    }

    /// The limit for this family. `k` is ignored for the expected ranks and
    /// `tol` is ignored for the closed forms.
    pub fn limit(&self, k: u32, tol: &BigRational) -> Result<LimitValue, AsymptoticsError> {
        match self {
            LimitFamily::ProtectedFraction => Ok(protected_fraction_limit(k)),
            LimitFamily::RootProtected => Ok(root_protected_limit(k)),
            LimitFamily::RankFraction => Ok(rank_fraction_limit(k)),
            LimitFamily::ExpectedRootRank => expected_root_rank_constant(tol),
            LimitFamily::ExpectedVertexRank => expected_vertex_rank_constant(tol),
        }
    }
}

impl FromStr for LimitFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "pk" => LimitFamily::ProtectedFraction,
            "rk" => LimitFamily::RootProtected,
            "rankk" => LimitFamily::RankFraction,
            "ER" => LimitFamily::ExpectedRootRank,
            "ET" => LimitFamily::ExpectedVertexRank,
            other => return Err(format!("unknown limit family {other:?}")),
        })
    }
}

/// Exact ratio at one size and its distance to the limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub exact_ratio: BigRational,
    pub limit: LimitValue,
    pub abs_gap: BigRational,
}

/// Exact finite-n ratios for `1 <= n <= n_max` next to their limit. The
/// expected-rank constants are summed to within `10^-30`.
pub fn convergence_report(
    family: LimitFamily,
    k: u32,
    n_max: usize,
) -> Result<Vec<ConvergenceRow>, AsymptoticsError> {
    if family.needs_k() {
        let min = if family == LimitFamily::RootProtected { 1 } else { 0 };
        if k < min {
            return Err(AsymptoticsError::UnsupportedIndex { what: family.tag(), k, min });
        }
    }
    let tol = pow4_rat(-50);
    let limit = family.limit(k, &tol)?;
    let order = n_max;
    let protected = |k: u32| {
        if k == 0 {
            genfun::vertex_series(order)
        } else {
            genfun::protected_vertex_series(k, order).expect("k >= 1")
        }
    };
    let (numer, denom) = match family {
        LimitFamily::ProtectedFraction => (protected(k), genfun::vertex_series(order)),
        LimitFamily::RootProtected => (
            genfun::root_protected_series(k, order, RootMethod::Closed).expect("k >= 1"),
            genfun::catalan_series(order),
        ),
        LimitFamily::RankFraction => (&protected(k) - &protected(k + 1), genfun::vertex_series(order)),
        LimitFamily::ExpectedRootRank => (genfun::root_rank_sum_series(order), genfun::catalan_series(order)),
        LimitFamily::ExpectedVertexRank => (genfun::vertex_rank_sum_series(order), genfun::vertex_series(order)),
    };
    let target = limit.value().clone();
    Ok((1..=n_max)
        .into_par_iter()
        .map(|n| {
            let exact_ratio = &numer.coeffs()[n] / &denom.coeffs()[n];
            let abs_gap = (&exact_ratio - &target).abs();
            ConvergenceRow {
                n,
                exact_ratio,
                limit: limit.clone(),
                abs_gap,
            }
        })
        .collect())
}

/// Deterministic rational sample points in the closed disk of radius
/// `radius`: the real endpoints, the origin, and rational points
/// `s * radius * ((1-t^2)/(1+t^2), 2t/(1+t^2))` (exactly on the circle of
/// radius `s * radius`) spread over all four quadrants.
pub fn disk_sample_points(radius: &BigRational, samples: usize) -> Vec<(BigRational, BigRational)> {
    let mut points = vec![
        (radius.clone(), BigRational::zero()),
        (-radius, BigRational::zero()),
        (BigRational::zero(), BigRational::zero()),
    ];
    let scales = [rat(1), BigRational::new(3.into(), 4.into()), BigRational::new(1.into(), 2.into())];
    for i in 0..samples {
        let t = BigRational::new(BigInt::from(i), BigInt::from(samples.max(1)));
        let denom = rat(1) + &t * &t;
        let cos = (rat(1) - &t * &t) / &denom;
        let sin = rat(2) * &t / &denom;
        let s = &scales[(i / 4) % scales.len()] * radius;
        let (re, im) = match i % 4 {
            0 => (cos, sin),
            1 => (-sin, cos),
            2 => (-cos, -sin),
            _ => (sin, -cos),
        };
        points.push((re * &s, im * &s));
    }
    points
}

/// Summary of [`disk_spotcheck_dk`].
#[derive(Debug, Clone)]
pub struct DiskSpotCheck {
    pub report: VerificationReport,
    /// Smallest `|d_k(x)|^2` seen over all `k` and sample points.
    pub min_modulus_sq: BigRational,
    pub argmin_k: u32,
    pub argmin_point: (BigRational, BigRational),
}

/// Evaluate `|d_k(x)|^2` exactly at rational points of the closed disk of
/// radius 4/15 for `1 <= k <= k_max`. This can falsify nonvanishing, not
/// prove it.
pub fn disk_spotcheck_dk(k_max: u32, samples: usize) -> DiskSpotCheck {
    let radius = BigRational::new(4.into(), 15.into());
    let points = disk_sample_points(&radius, samples);
    let per_k: Vec<(u32, BigRational, usize)> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let d = genfun::d_poly(k).expect("k >= 1");
            let (best, at) = points
                .iter()
                .enumerate()
                .map(|(i, (re, im))| {
                    let (a, b) = d.eval_complex(re, im);
                    (&a * &a + &b * &b, i)
                })
                .min_by(|x, y| x.0.cmp(&y.0))
                .expect("points are nonempty");
            (k, best, at)
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "d_k nonvanishing on |x| <= 4/15, k <= {k_max}, {} points",
        points.len()
    ));
    for (k, m, _) in &per_k {
        report.push(
            format!("min |d_{k}|^2 > 0"),
            m.is_positive(),
            format!("min |d_{k}(x)|^2 = {}", decimal::to_significant(m, 6)),
        );
    }
    let (k, m, at) = per_k
        .into_iter()
        .min_by(|x, y| x.1.cmp(&y.1))
        .unwrap_or((0, BigRational::zero(), 0));
    DiskSpotCheck {
        report,
        min_modulus_sq: m,
        argmin_k: k,
        argmin_point: points[at].clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn protected_fraction_sequence() {
        let got: Vec<_> = (0..=4).map(|k| protected_fraction_limit(k).exact.unwrap()).collect();
        assert_eq!(got, [q(1, 1), q(1, 2), q(1, 6), q(1, 22), q(1, 86)]);
        // successive ratios approach 1/4
        let r = protected_fraction_limit(11).partial_sum / protected_fraction_limit(10).partial_sum;
        assert!((r - q(1, 4)).abs() < q(1, 1_000_000));
    }

    #[test]
    fn root_protected_sequence() {
        let got: Vec<_> = (0..=4).map(|k| root_protected_limit(k).exact.unwrap()).collect();
        assert_eq!(got, [q(1, 1), q(1, 1), q(4, 9), q(16, 121), q(64, 1849)]);
        let k10 = rat(9) / (pow4_rat(-9) + rat(4) + pow4_rat(10));
        assert_eq!(root_protected_limit(10).exact.unwrap(), k10);
    }

    #[test]
    fn rank_fraction_values() {
        assert_eq!(rank_fraction_limit(0).partial_sum, q(1, 2));
        assert_eq!(rank_fraction_limit(1).partial_sum, q(1, 3));
        for k in 0..=30 {
            let diff = protected_fraction_limit(k).partial_sum - protected_fraction_limit(k + 1).partial_sum;
            assert_eq!(diff, rank_fraction_limit(k).partial_sum, "k = {k}");
        }
        // telescoping: sum_{k<K} rank fractions = 1 - p_K
        let partial: BigRational = (0..20).map(|k| rank_fraction_limit(k).partial_sum).sum();
        assert_eq!(rat(1) - partial, protected_fraction_limit(20).partial_sum);
    }

    #[test]
    fn polynomial_forms_agree() {
        for k in 2..=40 {
            assert_eq!(
                protected_fraction_limit_from_polynomials(k).unwrap(),
                protected_fraction_limit(k).partial_sum
            );
            assert_eq!(
                root_protected_limit_from_polynomials(k).unwrap(),
                root_protected_limit(k).partial_sum
            );
        }
        assert!(protected_fraction_limit_from_polynomials(1).is_err());
    }

    #[test]
    fn expected_root_rank() {
        let v = expected_root_rank_constant(&q(1, 100_000)).unwrap();
        assert!(v.tail_bound < q(1, 100_000));
        assert_eq!(v.certified_decimal(5).as_deref(), Some("1.62297"));
        // minimal K: 3 * 4^-K < 1e-5 first at K = 10
        assert_eq!(v.terms, 10);
        let one_term = expected_root_rank_constant(&rat(1)).unwrap();
        assert_eq!(one_term.terms, 1);
        assert!(expected_root_rank_constant(&rat(0)).is_err());
        assert!(expected_root_rank_constant(&rat(-1)).is_err());
    }

    #[test]
    fn partial_sums_increase_and_brackets_nest() {
        let tols = [q(1, 10), q(1, 1000), q(1, 100_000), q(1, 10_000_000)];
        let vals: Vec<_> = tols.iter().map(|t| expected_root_rank_constant(t).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[0].partial_sum <= w[1].partial_sum);
            assert!(w[1].upper() <= w[0].upper());
        }
        let first = root_protected_limit(1).partial_sum;
        assert_eq!(first, rat(1));
    }

    #[test]
    fn expected_vertex_rank() {
        let v = expected_vertex_rank_constant(&q(1, 1_000_000)).unwrap();
        assert!(v.tail_bound < q(1, 1_000_000));
        assert!(v.partial_sum < q(727649, 1_000_000) && q(727649, 1_000_000) < v.upper());
        assert_eq!(v.decimal(6), "0.727648");
        assert_eq!(v.certified_decimal(6), None);
        assert_eq!(
            certified_constant_decimal(LimitFamily::ExpectedVertexRank, 6).as_deref(),
            Some("0.727649")
        );
        assert_eq!(
            certified_constant_decimal(LimitFamily::ExpectedRootRank, 5).as_deref(),
            Some("1.62297")
        );
        let two: BigRational = (1..=2).map(|k| protected_fraction_limit(k).partial_sum).sum();
        assert_eq!(two, q(2, 3));
        let tail_at_10 = pow4_rat(-10);
        let exact_tail: BigRational = (11..=60).map(|k| protected_fraction_limit(k).partial_sum).sum();
        assert!(exact_tail <= tail_at_10);
    }

    #[test]
    fn convergence_p3_at_fifty() {
        let rows = convergence_report(LimitFamily::ProtectedFraction, 3, 50).unwrap();
        let r50 = &rows[49];
        assert_eq!(r50.n, 50);
        assert_eq!(
            r50.exact_ratio,
            BigRational::new(
                "88972411304864387146864997".parse().unwrap(),
                "1959816327613912069440802200".parse().unwrap()
            )
        );
        assert_eq!(r50.limit.exact, Some(q(1, 22)));
        assert!(rows[49].abs_gap < rows[9].abs_gap);
    }

    #[test]
    fn convergence_other_families() {
        let er = convergence_report(LimitFamily::ExpectedRootRank, 0, 12).unwrap();
        assert_eq!(er[3].exact_ratio, q(8, 5));
        let et = convergence_report(LimitFamily::ExpectedVertexRank, 0, 12).unwrap();
        assert_eq!(et[3].exact_ratio, q(14, 20));
        let rank0 = convergence_report(LimitFamily::RankFraction, 0, 12).unwrap();
        // n = 4: 10 leaves among 20 vertices
        assert_eq!(rank0[3].exact_ratio, q(1, 2));
        let r1 = convergence_report(LimitFamily::RootProtected, 1, 6).unwrap();
        assert_eq!(r1[5].exact_ratio, rat(1));
        assert!(convergence_report(LimitFamily::RootProtected, 0, 6).is_err());
    }

    #[test]
    fn disk_points_lie_in_disk() {
        let radius = q(4, 15);
        let pts = disk_sample_points(&radius, 40);
        assert_eq!(pts.len(), 43);
        let r2 = &radius * &radius;
        assert!(pts.iter().all(|(a, b)| a * a + b * b <= r2));
        assert!(pts.iter().filter(|(a, b)| a * a + b * b == r2).count() >= 14);
    }

    #[test]
    fn disk_spotcheck_values() {
        let d2 = genfun::d_poly(2).unwrap();
        assert_eq!(d2.eval(&q(-4, 15)), q(26, 15));
        let d3 = genfun::d_poly(3).unwrap();
        assert!(d3.eval(&q(4, 15)) >= q(131, 3375));
        let check = disk_spotcheck_dk(30, 100);
        assert!(check.report.all_passed());
        assert!(check.min_modulus_sq.is_positive());
        assert_eq!(check.report.len(), 30);
    }
}
