//! Exact polynomials and truncated power series over the rationals.
//!
//! Every coefficient is a [`BigRational`]; nothing here ever rounds. A
//! [`TruncatedSeries`] carries the order `N` through which its coefficients
//! are known, and binary operations propagate the minimum order of their
//! operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("square root needs constant term 1, found {0}")]
    NonUnitConstantTerm(BigRational),
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense polynomial in one variable, lowest degree first.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has no coefficients and structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Multiply by `x^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at the complex point `re + i*im`, returned as
    /// `(re, im)`.
    pub fn eval_complex(&self, re: &BigRational, im: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let r = &acc.0 * re - &acc.1 * im + c;
            let i = &acc.0 * im + &acc.1 * re;
            acc = (r, i);
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let show_mag = i == 0 || !mag.is_one();
        if show_mag {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

/// A formal power series known exactly through `x^order`.
///
/// Always stores exactly `order + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series of the given order whose leading coefficients are `coeffs`;
    /// missing coefficients are zero and extra ones are dropped.
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        Self::new(order, p.coeffs().to_vec())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![BigRational::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// `[x^n]`, or `None` past the known order.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, or `None` if any coefficient has a denominator.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^m`. The order is unchanged.
    pub fn shift(&self, m: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); m.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take(order + 1 - coeffs.len()).cloned());
        TruncatedSeries { coeffs }
    }

    /// Divide by `x^m`, dropping the first `m` coefficients (which the caller
    /// asserts are zero). The order drops by `m`.
    pub fn unshift(&self, m: usize) -> Self {
        debug_assert!(self.coeffs[..m].iter().all(Zero::is_zero));
        TruncatedSeries {
            coeffs: self.coeffs[m..].to_vec(),
        }
    }

    /// Quotient `q` with `q * rhs = self` through the common order.
    pub fn div(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let order = self.order().min(rhs.order());
        let inv_b0 = b0.recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..=n {
                let b = &rhs.coeffs[i];
                if !b.is_zero() {
                    acc -= b * &q[n - i];
                }
            }
            q.push(acc * &inv_b0);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Square root with constant term 1 of a series with constant term 1.
    pub fn sqrt_unit(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NonUnitConstantTerm(self.coeffs[0].clone()));
        }
        let order = self.order();
        let two = rat(2);
        let mut s: Vec<BigRational> = Vec::with_capacity(order + 1);
        s.push(BigRational::one());
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s.push(acc / &two);
        }
        Ok(TruncatedSeries { coeffs: s })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

forward_owned_binop!(TruncatedSeries, Add, add);
forward_owned_binop!(TruncatedSeries, Sub, sub);
forward_owned_binop!(TruncatedSeries, Mul, mul);

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")?;
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(order: usize, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(order, c)
    }

    #[test]
    fn add_cancels_and_takes_min_order() {
        let sum = &ts(4, &[1, 1]) + &ts(4, &[1, -1]);
        assert_eq!(sum, ts(4, &[2]));
        let sum = &ts(5, &[1, 2, 3]) + &ts(3, &[0, 1]);
        assert_eq!(sum.order(), 3);
        assert_eq!(sum, ts(3, &[1, 3, 3]));
        let t = ts(6, &[0, 1, 1, 2, 5, 14, 42]);
        assert_eq!(&t + &TruncatedSeries::zero(6), t);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&ts(5, &[1, 1]) * &ts(5, &[1, 1]), ts(5, &[1, 2, 1]));
        let geometric = ts(8, &[1; 9]);
        assert_eq!(&geometric * &ts(8, &[1, -1]), TruncatedSeries::one(8));
        // L(x) * R_1(x)
        let leaves = ts(3, &[1, 1, 3, 10]);
        let r1 = ts(3, &[0, 0, 1, 2]);
        assert_eq!(&leaves * &r1, ts(3, &[0, 0, 1, 3]));
    }

    #[test]
    fn div_examples() {
        let q = TruncatedSeries::one(6).div(&ts(6, &[1, -1])).unwrap();
        assert_eq!(q, ts(6, &[1; 7]));
        let a = ts(5, &[3, -1, 4, 1, -5, 9]);
        assert_eq!(a.div(&a).unwrap(), TruncatedSeries::one(5));
        assert_eq!(
            ts(3, &[1]).div(&ts(3, &[0, 1])),
            Err(SeriesError::ZeroConstantTerm)
        );
    }

    #[test]
    fn r1_from_catalan_by_division() {
        // T = (1 - sqrt(1-4x))/2 ; R_1 = x T / (1 - T)
        let order = 6;
        let s = ts(order, &[1, -4]).sqrt_unit().unwrap();
        let t = (&TruncatedSeries::one(order) - &s).scale(&BigRational::new(1.into(), 2.into()));
        let one_minus_t = &TruncatedSeries::one(order) - &t;
        let r1 = t.div(&one_minus_t).unwrap().shift(1);
        assert_eq!(r1, ts(order, &[0, 0, 1, 2, 5, 14, 42]));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            TruncatedSeries::one(4).sqrt_unit().unwrap(),
            TruncatedSeries::one(4)
        );
        let s = ts(5, &[1, -4]).sqrt_unit().unwrap();
        assert_eq!(s, ts(5, &[1, -2, -2, -4, -10, -28]));
        assert_eq!(&s * &s, ts(5, &[1, -4]));
        assert_eq!(ts(7, &[1, 2, 1]).sqrt_unit().unwrap(), ts(7, &[1, 1]));
        assert!(matches!(
            ts(3, &[4, 1]).sqrt_unit(),
            Err(SeriesError::NonUnitConstantTerm(_))
        ));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(TruncatedSeries::one(5).shift(3), ts(5, &[0, 0, 0, 1]));
        let a = ts(5, &[0, 0, 1, 2]);
        assert_eq!(a.shift(0), a);
        assert_eq!(a.shift(1), ts(5, &[0, 0, 0, 1, 2]));
        assert_eq!(a.shift(9), TruncatedSeries::zero(5));
        assert_eq!(a.shift(1).unshift(1), a.truncate(4));
    }

    #[test]
    fn poly_eval_examples() {
        let quarter = BigRational::new(1.into(), 4.into());
        let n2 = Polynomial::from_integers(&[1, -2, -2]);
        assert_eq!(n2.eval(&quarter), BigRational::new(3.into(), 8.into()));
        let d2 = Polynomial::from_integers(&[2, 1]);
        assert_eq!(d2.eval(&quarter), BigRational::new(9.into(), 4.into()));
        let p = Polynomial::from_integers(&[7, 3, -1]);
        assert_eq!(p.eval(&BigRational::zero()), rat(7));
    }

    #[test]
    fn polynomial_normalizes_and_prints() {
        let p = Polynomial::from_integers(&[1, -2, -2, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "1 - 2x - 2x^2");
        assert!(Polynomial::from_integers(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().to_string(), "0");
        let x = Polynomial::from_integers(&[0, 1]);
        assert_eq!((&x * &x).shift(1), Polynomial::from_integers(&[0, 0, 0, 1]));
        assert_eq!(
            Polynomial::from_integers(&[1, 3, 2, 1]).derivative(),
            Polynomial::from_integers(&[3, 4, 3])
        );
    }

    #[test]
    fn complex_eval_matches_real_on_axis() {
        let p = Polynomial::from_integers(&[1, 3, 2, 1]);
        let x = BigRational::new((-4).into(), 15.into());
        let (re, im) = p.eval_complex(&x, &BigRational::zero());
        assert_eq!(re, p.eval(&x));
        assert!(im.is_zero());
        // (1 + i)^2 = 2i
        let sq = Polynomial::from_integers(&[0, 0, 1]);
        assert_eq!(sq.eval_complex(&rat(1), &rat(1)), (rat(0), rat(2)));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(small_rational(), order + 1)
            .prop_map(move |c| TruncatedSeries::new(order, c))
    }

    fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        series(order).prop_map(|s| {
            let mut c = s.into_coeffs();
            c[0] = BigRational::one();
            let order = c.len() - 1;
            TruncatedSeries::new(order, c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn div_then_mul_round_trips(a in series(8), b in unit_series(8), c0 in 1i64..5) {
            let mut bc = b.into_coeffs();
            bc[0] = rat(c0);
            let b = TruncatedSeries::new(8, bc);
            let q = a.div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }

        #[test]
        fn sqrt_squares_back(a in unit_series(9)) {
            let s = a.sqrt_unit().unwrap();
            prop_assert!(s.coeffs()[0].is_one());
            prop_assert_eq!(&s * &s, a);
        }

        #[test]
        fn mul_commutes_and_associates(a in series(6), b in series(6), c in series(5)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!((&(&a * &b) * &c).order(), 5);
        }
    }
}
