//! Chebyshev-backed building blocks, in rescaled rational form.
//!
//! The closed forms in the catalog are stated via Chebyshev polynomials of
//! the second kind evaluated at `t = 1/(2 sqrt(x))`. Working with `U_k(t)`
//! directly would drag half powers of `x` through every expression, so the
//! whole layer is built on the rescaling
//!
//! ```text
//!     V_k(x) = x^{k/2} * U_k(1/(2 sqrt(x)))
//! ```
//!
//! which satisfies `V_0 = V_1 = 1` and `V_k = V_{k-1} - x V_{k-2}` and is an
//! ordinary polynomial. Every `U`-expression is converted by tracking powers
//! of `sqrt(x)` in integer half-units; a conversion that leaves an odd
//! residue is a bug in the caller's formula and is reported as an error
//! rather than silently truncated.

use crate::series::{Poly, QSeries, Rational, SeriesError};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChebyshevError {
    #[error("U-expression leaves a half-power residue x^({halves}/2); the formula is not a power series in x")]
    HalfPowerResidue { halves: i32 },
    #[error("U-expression has a pole of order x^({halves}/2) at the origin")]
    NegativePower { halves: i32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The rescaled polynomial `V_k(x) = x^{k/2} U_k(1/(2 sqrt(x)))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPoly {
    pub k: u32,
    pub poly: Poly,
}

/// `V_k` by the three-term recurrence `V_k = V_{k-1} - x V_{k-2}`.
pub fn v_poly(k: u32) -> VPoly {
    let mut prev = Poly::one(); // V_0
    let mut cur = Poly::one(); // V_1
    if k == 0 {
        return VPoly { k, poly: prev };
    }
    for _ in 2..=k {
        let next = cur.sub(&prev.shift_up(1));
        prev = cur;
        cur = next;
    }
    VPoly { k, poly: cur }
}

/// Realize `coeff * sqrt(x)^{sqrt_x_power} * prod U_a(t) / prod U_b(t)`
/// (all `U` at `t = 1/(2 sqrt(x))`) as a rational power series.
///
/// `sqrt_x_power` counts net factors of `sqrt(x)` in the numerator, so a
/// standalone `1/(4t^3) = 2 x^{3/2}` enters as coefficient 2 with power 3.
/// After substituting `U_m = x^{-m/2} V_m` the total half-power must come
/// out even and non-negative; anything else is reported as an error.
pub fn u_ratio_series(
    coeff: Rational,
    sqrt_x_power: i32,
    num_indices: &[u32],
    den_indices: &[u32],
    order: usize,
) -> Result<QSeries, ChebyshevError> {
    let mut halves = sqrt_x_power;
    let mut num = Poly::one();
    for &a in num_indices {
        halves -= a as i32;
        num = num.mul(&v_poly(a).poly);
    }
    let mut den = Poly::one();
    for &b in den_indices {
        halves += b as i32;
        den = den.mul(&v_poly(b).poly);
    }
    if halves % 2 != 0 {
        return Err(ChebyshevError::HalfPowerResidue { halves });
    }
    if halves < 0 {
        return Err(ChebyshevError::NegativePower { halves });
    }
    let shifted = num.shift_up(halves as usize / 2);
    let series = shifted
        .to_series(order)
        .div(&den.to_series(order))?
        .scale(&coeff);
    Ok(series)
}

/// `R_k(x) = U_{k-1}(t) / (sqrt(x) U_k(t)) = V_{k-1}/V_k`, computed both as
/// the polynomial ratio and by the continued fraction
/// `R_1 = 1, R_k = 1/(1 - x R_{k-1})`; the two routes must agree exactly.
pub fn r_series(k: u32, order: usize) -> QSeries {
    assert!(k >= 1, "R_k is defined for k >= 1");
    let ratio = u_ratio_series(Rational::one(), -1, &[k - 1], &[k], order)
        .expect("V_{k-1}/V_k is always a power series");

    let mut cf = QSeries::one(order);
    for _ in 2..=k {
        cf = QSeries::one(order)
            .sub(&cf.shift_mul(1))
            .inverse(order)
            .expect("1 - x R has constant term 1");
    }
    assert_eq!(
        ratio, cf,
        "polynomial-ratio and continued-fraction routes for R_{k} disagree"
    );
    ratio
}

/// `1 / U_k(t)^2 = x^k / V_k(x)^2` as a power series.
pub fn inv_u_squared(k: u32, order: usize) -> QSeries {
    assert!(k >= 1);
    u_ratio_series(Rational::one(), 0, &[], &[k, k], order)
        .expect("x^k/V_k^2 is always a power series")
}

/// Floating-point Horner evaluation of a rational-coefficient polynomial.
/// The one place floats appear: validating the `V_k` rescaling against the
/// trigonometric recurrence. All series work stays exact.
pub fn poly_eval_f64(poly: &Poly, x: f64) -> f64 {
    let mut acc = 0.0;
    let degree = match poly.degree() {
        Some(d) => d,
        None => return 0.0,
    };
    for k in (0..=degree).rev() {
        let c = poly.coeff(k);
        let num = c.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let den = c.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        acc = acc * x + num / den;
    }
    acc
}

/// Floating-point `U_k(t)` by the three-term recurrence. Only used to
/// validate the `V_k` rescaling numerically; all series work stays exact.
pub fn u_eval_f64(k: u32, t: f64) -> f64 {
    let mut prev = 1.0; // U_0
    let mut cur = 2.0 * t; // U_1
    if k == 0 {
        return prev;
    }
    for _ in 2..=k {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}
