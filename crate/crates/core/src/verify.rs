//! Named verification suites shared by the `verify` subcommand, the
//! examples and the acceptance tests.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::asymptotics;
use crate::decimal;
use crate::genfun;
use crate::oracle;
use crate::report::VerificationReport;
use crate::series::BigRational;

/// Reference fractions for three exact ratios at `n = 50`, in lowest terms:
/// the 3-protected vertex fraction, the mean root rank, and the mean vertex
/// rank. Each comes with its quoted decimal approximation.
pub const REFERENCE_P3_50: (&str, &str, &str) = (
    "88972411304864387146864997",
    "1959816327613912069440802200",
    "0.0453986",
);
pub const REFERENCE_ROOT_RANK_50: (&str, &str, &str) = (
    "1874097069430998779470999",
    "1152833133890536511435766",
    "1.62564",
);
pub const REFERENCE_VERTEX_RANK_50: (&str, &str, &str) = (
    "4630522930774422812075437903",
    "6369403064745214225682607150",
    "0.726995",
);

/// One exact ratio `numerator / denominator` of series coefficients next to
/// its reference fraction.
#[derive(Debug, Clone)]
pub struct RatioCheck {
    pub name: &'static str,
    pub numerator: BigInt,
    pub denominator: BigInt,
    pub reference_numerator: BigInt,
    pub reference_denominator: BigInt,
    pub reference_decimal: &'static str,
}

impl RatioCheck {
    fn new(name: &'static str, numerator: BigInt, denominator: BigInt, reference: (&str, &str, &'static str)) -> Self {
        RatioCheck {
            name,
            numerator,
            denominator,
            reference_numerator: reference.0.parse().expect("integer literal"),
            reference_denominator: reference.1.parse().expect("integer literal"),
            reference_decimal: reference.2,
        }
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }

    pub fn reference_ratio(&self) -> BigRational {
        BigRational::new(self.reference_numerator.clone(), self.reference_denominator.clone())
    }

    /// Common factor removed when reducing the raw coefficient ratio.
    pub fn common_factor(&self) -> BigInt {
        self.numerator.gcd(&self.denominator)
    }

    pub fn raw_integers_match(&self) -> bool {
        self.numerator == self.reference_numerator && self.denominator == self.reference_denominator
    }

    pub fn exact_match(&self) -> bool {
        self.ratio() == self.reference_ratio()
    }

    /// Computed ratio rounded to as many significant digits as the reference
    /// decimal carries.
    pub fn computed_decimal(&self) -> String {
        decimal::to_significant(&self.ratio(), self.reference_significant_digits())
    }

    pub fn reference_significant_digits(&self) -> u32 {
        self.reference_decimal
            .chars()
            .filter(char::is_ascii_digit)
            .skip_while(|&c| c == '0')
            .count() as u32
    }

    pub fn decimal_match(&self) -> bool {
        self.computed_decimal() == self.reference_decimal
    }

    pub fn describe(&self) -> String {
        let reduced = self.ratio();
        format!(
            "raw {}/{} (common factor {}), reduced {}/{}, reference {}/{}, decimal {} vs reference {}",
            self.numerator,
            self.denominator,
            self.common_factor(),
            reduced.numer(),
            reduced.denom(),
            self.reference_numerator,
            self.reference_denominator,
            self.computed_decimal(),
            self.reference_decimal
        )
    }
}

/// The three `n = 50` ratios computed from series of order 50.
pub fn fifty_ratios() -> Vec<RatioCheck> {
    let n = 50;
    let int = |s: &crate::series::TruncatedSeries| s.coeffs()[n].to_integer();
    let t3 = genfun::protected_vertex_series(3, n).expect("k = 3");
    let v = genfun::vertex_series(n);
    let t = genfun::catalan_series(n);
    let root_sum = genfun::root_rank_sum_series(n);
    let vertex_sum = genfun::vertex_rank_sum_series(n);
    vec![
        RatioCheck::new("[x^50] T_3 / [x^50] V", int(&t3), int(&v), REFERENCE_P3_50),
        RatioCheck::new(
            "[x^50] sum_{k<50} R_k / [x^50] T",
            int(&root_sum),
            int(&t),
            REFERENCE_ROOT_RANK_50,
        ),
        RatioCheck::new(
            "[x^50] sum_{k<50} T_k / [x^50] V",
            int(&vertex_sum),
            int(&v),
            REFERENCE_VERTEX_RANK_50,
        ),
    ]
}

pub fn paper50_suite() -> VerificationReport {
    let mut report = VerificationReport::new("exact ratios at n = 50");
    for r in fifty_ratios() {
        report.push(r.name, r.exact_match(), r.describe());
    }
    report
}

pub fn identities_suite() -> VerificationReport {
    let mut report = VerificationReport::new("polynomial identities and closed forms");
    report.extend(genfun::check_d_recurrence(50));
    report.extend(genfun::check_nd_identity(50));
    report.extend(genfun::check_quarter_evaluations(50));
    report.extend(genfun::check_closed_vs_recursive(20, 200));
    for k in 2..=50 {
        let p = asymptotics::protected_fraction_limit(k).partial_sum;
        let p_poly = asymptotics::protected_fraction_limit_from_polynomials(k).expect("k >= 2");
        report.push(
            format!("3/(4^{k}+2) from n_{k}, d_{k}"),
            p == p_poly,
            format!("closed {p}, polynomial form {p_poly}"),
        );
        let r = asymptotics::root_protected_limit(k).partial_sum;
        let r_poly = asymptotics::root_protected_limit_from_polynomials(k).expect("k >= 2");
        report.push(
            format!("9/(4^(1-{k})+4+4^{k}) from d_{k}"),
            r == r_poly,
            format!("closed {r}, polynomial form {r_poly}"),
        );
    }
    report
}

pub fn oracle_suite() -> VerificationReport {
    oracle::cross_check(12, 11).expect("n = 12 is within the default cap")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Oracle,
    Paper50,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "identities" => Suite::Identities,
            "oracle" => Suite::Oracle,
            "paper50" => Suite::Paper50,
            "all" => Suite::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

pub fn run_suite(suite: Suite) -> VerificationReport {
    match suite {
        Suite::Identities => identities_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::Paper50 => paper50_suite(),
        Suite::All => {
            let mut report = VerificationReport::new("all suites");
            report.extend(identities_suite());
            report.extend(oracle_suite());
            report.extend(paper50_suite());
            report
        }
    }
}
