//! Truncated formal power series over exact rationals.
//!
//! Every generating function in this crate is carried as a [`QSeries`]: the
//! coefficients `c_0..c_N` of a series modulo `x^{N+1}`, each an exact
//! `BigRational`. No floating point is used anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational coefficient. `BigRational` keeps the invariants we need:
/// positive denominator, fully reduced.
pub type Rational = BigRational;

/// Shorthand for an integer-valued coefficient.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,
    #[error("cannot divide by x^{m}: coefficient {index} is non-zero")]
    ShiftNonZeroPrefix { m: usize, index: usize },
    #[error("series square root requires constant term 1")]
    SqrtConstantTerm,
    #[error("fixed-point update is not an x-adic contraction (coefficient {index} changed after stabilizing)")]
    NonContraction { index: usize },
}

/// Dense polynomial with rational coefficients; the carrier for the
/// numerators and denominators of rational closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rational::one()] }
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// View as a truncated series of the given order.
    pub fn to_series(&self, order: usize) -> QSeries {
        QSeries::from_fn(order, |k| self.coeff(k))
    }
}

/// Truncated power series: exactly `order + 1` rational coefficients,
/// representing the series modulo `x^{order+1}`.
///
/// Binary operations truncate to the smaller operand order, so precision
/// degrades explicitly rather than silently inventing coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        QSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        QSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty());
        QSeries { coeffs: coeffs.iter().map(|&c| rat(c)).collect() }
    }

    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        QSeries::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    /// `c * x^k` truncated at `order`; coefficients past the order are dropped.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn x(order: usize) -> Self {
        QSeries::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        let order = order.min(self.order());
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        QSeries::from_fn(order, |n| self.coeff(n) + other.coeff(n))
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        QSeries::from_fn(order, |n| self.coeff(n) - other.coeff(n))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        QSeries { coeffs }
    }

    /// Long division; requires the divisor to be a unit (non-zero constant term).
    pub fn div(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        if other.coeff(0).is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let order = self.order().min(other.order());
        let b0 = other.coeff(0);
        let mut q = vec![Rational::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for (i, qi) in q.iter().enumerate().take(n) {
                acc -= qi * other.coeff(n - i);
            }
            q[n] = acc / &b0;
        }
        Ok(QSeries { coeffs: q })
    }

    pub fn inverse(&self, order: usize) -> Result<QSeries, SeriesError> {
        QSeries::one(order.min(self.order())).div(self)
    }

    /// Integer power by repeated multiplication (exponents here are tiny).
    pub fn pow(&self, mut e: usize) -> QSeries {
        let mut acc = QSeries::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by `x^m`: shifts coefficients down, failing if any of the first
    /// `m` coefficients is non-zero. The result loses `m` orders of precision.
    pub fn shift_div(&self, m: usize) -> Result<QSeries, SeriesError> {
        assert!(m >= 1, "shift_div by x^0 is the identity");
        assert!(m <= self.order(), "cannot shift past the truncation order");
        for i in 0..m {
            if !self.coeff(i).is_zero() {
                return Err(SeriesError::ShiftNonZeroPrefix { m, index: i });
            }
        }
        Ok(QSeries { coeffs: self.coeffs[m..].to_vec() })
    }

    /// Multiply by `x^m` (the truncation order is unchanged; top coefficients
    /// fall off the end).
    pub fn shift_mul(&self, m: usize) -> QSeries {
        QSeries::from_fn(self.order(), |n| {
            if n >= m {
                self.coeff(n - m)
            } else {
                Rational::zero()
            }
        })
    }

    /// Unique square root with constant term 1, by coefficient recursion:
    /// `2 r_n = a_n - sum_{i=1}^{n-1} r_i r_{n-i}`.
    pub fn sqrt(&self) -> Result<QSeries, SeriesError> {
        if !self.coeff(0).is_one() {
            return Err(SeriesError::SqrtConstantTerm);
        }
        let order = self.order();
        let mut r = vec![Rational::one()];
        let two = rat(2);
        for n in 1..=order {
            let mut acc = self.coeff(n);
            for i in 1..n {
                acc -= &r[i] * &r[n - i];
            }
            r.push(acc / &two);
        }
        Ok(QSeries { coeffs: r })
    }

    /// True when the two series agree on all coefficients `0..=n`.
    pub fn agrees_to(&self, other: &QSeries, n: usize) -> bool {
        assert!(n <= self.order() && n <= other.order());
        (0..=n).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Exact decimal rendering: integers as plain decimals, everything else
    /// as `p/q`. Never a float.
    pub fn coeff_string(&self, n: usize) -> String {
        format_rational(&self.coeff(n))
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        (0..=self.order()).map(|n| self.coeff_string(n)).collect()
    }

    /// Coefficient as `u64`, when it is a non-negative integer that fits.
    pub fn coeff_u64(&self, n: usize) -> Option<u64> {
        let c = self.coeff(n);
        if !c.is_integer() || c.is_negative() {
            return None;
        }
        c.to_integer().try_into().ok()
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff_strings().join(", "))
    }
}

/// Solve `s = update(s)` modulo `x^{order+1}` by naive iteration from the
/// zero series.
///
/// The update map must be an x-adic contraction: coefficient `n` of the
/// output may depend only on coefficients `< n` of the input (true whenever
/// every occurrence of the unknown is multiplied by `x`). Under that
/// condition coefficient `n` is final after `n + 1` iterations; a coefficient
/// that changes after stabilizing is reported as a non-contraction. The
/// result is checked to satisfy its defining equation before it is returned.
pub fn solve_fixed_point(
    update: impl Fn(&QSeries) -> QSeries,
    order: usize,
) -> Result<QSeries, SeriesError> {
    let mut cur = QSeries::zero(order);
    for step in 1..=order + 2 {
        let next = update(&cur).truncate(order);
        assert_eq!(next.order(), order, "update map must preserve the truncation order");
        let first_diff = (0..=order).find(|&n| cur.coeff(n) != next.coeff(n));
        match first_diff {
            None => {
                // Residual check; with the loop above this cannot fail, but
                // the contract promises it explicitly.
                let residual = update(&cur).truncate(order);
                if residual != cur {
                    return Err(SeriesError::NonContraction { index: 0 });
                }
                return Ok(cur);
            }
            Some(d) => {
                if d + 1 < step {
                    return Err(SeriesError::NonContraction { index: d });
                }
            }
        }
        cur = next;
    }
    Err(SeriesError::NonContraction { index: order })
}

/// Motzkin numbers 1, 1, 2, 4, 9, 21, 51, 127, ... as the unique solution of
/// `M = 1 + x M + x^2 M^2`.
pub fn motzkin_series(order: usize) -> QSeries {
    solve_fixed_point(
        |m| {
            let one = QSeries::one(order);
            one.add(&m.shift_mul(1)).add(&m.mul(m).shift_mul(2))
        },
        order,
    )
    .expect("the Motzkin equation is an x-adic contraction")
}

/// Catalan numbers 1, 1, 2, 5, 14, ... (`C = 1 + x C^2`).
pub fn catalan_series(order: usize) -> QSeries {
    solve_fixed_point(
        |c| QSeries::one(order).add(&c.mul(c).shift_mul(1)),
        order,
    )
    .expect("the Catalan equation is an x-adic contraction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn geometric(order: usize) -> QSeries {
        // 1/(1-x)
        QSeries::from_fn(order, |_| Rational::one())
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = geometric(10);
        let b = QSeries::from_i64s(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(a.mul(&b), QSeries::one(10));
    }

    #[test]
    fn rational_function_expansion() {
        // (1-x)/(1-2x) = 1, 1, 2, 4, 8, 16
        let num = QSeries::from_i64s(&[1, -1, 0, 0, 0, 0]);
        let den = QSeries::from_i64s(&[1, -2, 0, 0, 0, 0]);
        let q = num.div(&den).unwrap();
        assert_eq!(q, QSeries::from_i64s(&[1, 1, 2, 4, 8, 16]));
    }

    #[test]
    fn division_by_non_unit_is_rejected() {
        let a = QSeries::one(4);
        let b = QSeries::x(4);
        assert_eq!(a.div(&b), Err(SeriesError::DivisionByNonUnit));
    }

    #[test]
    fn shift_div_examples() {
        // (2x^2 + 2x^3 + 4x^4)/x^2 scaled by 1/2 -> 1, 1, 2
        let a = QSeries::from_i64s(&[0, 0, 2, 2, 4]);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(a.shift_div(2).unwrap().scale(&half), QSeries::from_i64s(&[1, 1, 2]));

        let x3 = QSeries::monomial(Rational::one(), 3, 6);
        assert_eq!(x3.shift_div(3).unwrap(), QSeries::from_i64s(&[1, 0, 0, 0]));

        let bad = QSeries::from_i64s(&[1, 0, 0]);
        assert_eq!(
            bad.shift_div(1),
            Err(SeriesError::ShiftNonZeroPrefix { m: 1, index: 0 })
        );
    }

    #[test]
    fn sqrt_of_motzkin_radicand() {
        // sqrt(1 - 2x - 3x^2) = 1, -1, -2, -2, -4, ...
        let a = QSeries::from_i64s(&[1, -2, -3, 0, 0, 0, 0, 0]);
        let r = a.sqrt().unwrap();
        assert!(r.agrees_to(&QSeries::from_i64s(&[1, -1, -2, -2, -4, 0, 0, 0]), 4));
        assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let a = QSeries::from_i64s(&[1, -2, 1, 0, 0]);
        assert_eq!(a.sqrt().unwrap(), QSeries::from_i64s(&[1, -1, 0, 0, 0]));
    }

    #[test]
    fn sqrt_of_quartic_radicand() {
        // sqrt(1 - 4x + 2x^2 + x^4) = 1, -2, -1, -2, -4, -10, -26, ...
        let a = QSeries::from_i64s(&[1, -4, 2, 0, 1, 0, 0, 0]);
        let r = a.sqrt().unwrap();
        assert!(r.agrees_to(&QSeries::from_i64s(&[1, -2, -1, -2, -4, -10, -26, 0]), 6));
        assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn sqrt_requires_unit_constant_term() {
        let a = QSeries::from_i64s(&[4, 1, 1]);
        assert_eq!(a.sqrt(), Err(SeriesError::SqrtConstantTerm));
    }

    #[test]
    fn fixed_point_motzkin() {
        let m = motzkin_series(10);
        assert_eq!(
            m,
            QSeries::from_i64s(&[1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188])
        );
    }

    #[test]
    fn fixed_point_geometric() {
        // F = sum_{j=0}^{1} (xF)^j = 1 + xF  ->  1/(1-x)
        let f = solve_fixed_point(|s| QSeries::one(8).add(&s.shift_mul(1)), 8).unwrap();
        assert_eq!(f, geometric(8));
    }

    #[test]
    fn fixed_point_detects_non_contraction() {
        // s -> s + 1 moves the constant term forever.
        let r = solve_fixed_point(|s| s.add(&QSeries::one(6)), 6);
        assert!(matches!(r, Err(SeriesError::NonContraction { .. })));
    }

    #[test]
    fn motzkin_matches_radical_form() {
        // (1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2)
        let order = 16;
        let radicand = Poly::from_i64s(&[1, -2, -3]).to_series(order);
        let num = Poly::from_i64s(&[1, -1])
            .to_series(order)
            .sub(&radicand.sqrt().unwrap());
        let m = num.shift_div(2).unwrap().scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(m, motzkin_series(order - 2));
    }

    #[test]
    fn catalan_series_values() {
        assert_eq!(
            catalan_series(10),
            QSeries::from_i64s(&[1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796])
        );
    }

    fn arb_series(order: usize) -> impl Strategy<Value = QSeries> {
        proptest::collection::vec(-20i64..20, order + 1..=order + 1)
            .prop_map(|v| QSeries::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms_hold_exactly(a in arb_series(20), b in arb_series(20), c in arb_series(20)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn sqrt_squares_back(mut v in proptest::collection::vec(-9i64..9, 16)) {
            v.insert(0, 1); // constant term 1
            let a = QSeries::from_i64s(&v);
            let r = a.sqrt().unwrap();
            prop_assert_eq!(r.mul(&r), a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_series(14), mut v in proptest::collection::vec(-9i64..9, 14)) {
            v.insert(0, 1); // unit divisor
            let b = QSeries::from_i64s(&v);
            let q = a.div(&b).unwrap();
            prop_assert_eq!(q.mul(&b), a);
        }
    }
}
