//! Closed forms and recursion engines for the four counting families.
//!
//! Families, all over the fixed forbidden classical pattern 1-3-2:
//!
//! - `F`: avoid 1-3-2 and avoid a generalized pattern `tau`,
//! - `G`: avoid 1-3-2, contain `tau` exactly once,
//! - `H`: contain 1-3-2 exactly once, avoid `tau`,
//! - `PHI`: contain both 1-3-2 and `tau` exactly once.
//!
//! Each known closed form is a builder function here; [`catalog`] wires them
//! to concrete patterns, enumeration bounds and expected statuses. On top of
//! the per-formula builders sit two generic recursion engines driven by the
//! canonical decomposition `tau = phi^0-m_0-...-phi^r-m_r`:
//!
//! - [`theorem1_f_engine`]: `F_tau = 1 + x sum_j (F_{pi^j} - F_{pi^{j-1}}) F_{sigma^j}`,
//!   solved as an x-adic fixed point (`pi^r` and `sigma^0` are `tau` itself);
//! - [`contain1_g_engine`]: the companion recursion for `G`, whose output is
//!   advisory only — the verify harness compares it against enumeration and
//!   records agreement per pattern rather than assuming validity.

pub mod catalog;

pub use catalog::{build_catalog, series_for_pattern, CatalogEntry, Status};

use crate::chebyshev::{inv_u_squared, r_series, u_ratio_series, ChebyshevError};
use crate::enumerate::{count_series, mixed_avoid_contain_series, Family};
use crate::pattern::{
    canonical_decomposition, DecompositionError, GeneralizedPattern, ParseError,
};
use crate::series::{
    motzkin_series, rat, solve_fixed_point, Poly, QSeries, Rational, SeriesError,
};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Enumeration horizon for the F and G families (base class: 1-3-2-avoiders).
pub const F_G_HORIZON: usize = 12;
/// Enumeration horizon for the H and PHI families (base class: exactly one
/// 1-3-2 occurrence).
pub const H_PHI_HORIZON: usize = 10;

#[derive(Debug, Error)]
pub enum CfError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Chebyshev(#[from] ChebyshevError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("parameters outside the formula's hypotheses: {0}")]
    OutOfRange(String),
    #[error("no series route for {family} of pattern {pattern}")]
    Unsupported { family: Family, pattern: String },
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

fn rational_fn(num: &Poly, den: &Poly, order: usize) -> QSeries {
    num.to_series(order)
        .div(&den.to_series(order))
        .expect("denominator has non-zero constant term")
}

// ---------------------------------------------------------------------------
// F family: closed forms
// ---------------------------------------------------------------------------

/// `F` for the fully adjacent monotone patterns `12...k` and `k...21`: the
/// unique solution of `F = sum_{j=0}^{k-1} (x F)^j`. Both orientations
/// satisfy the same equation.
pub fn f_all_adjacent(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 1 {
        return Err(CfError::OutOfRange("monotone run needs k >= 1".into()));
    }
    let s = solve_fixed_point(
        |f| {
            let xf = f.shift_mul(1);
            let mut acc = QSeries::one(order);
            let mut pw = QSeries::one(order);
            for _ in 1..k {
                pw = pw.mul(&xf);
                acc = acc.add(&pw);
            }
            acc
        },
        order,
    )?;
    Ok(s)
}

/// `F` for a dashed chain `tau-3-4-...-k` with two-letter head
/// `tau in {12, 1-2, 21, 2-1}`: always `R_k`, independent of the head.
pub fn f_chain(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 2 {
        return Err(CfError::OutOfRange("chain needs k >= 2".into()));
    }
    Ok(r_series(k, order))
}

/// `F` for `tau'-(d+1)(d+2)...k` (dashed head on `1..=d`, adjacent increasing
/// tail): solves `F = sum_{j=0}^{k-d-1}(xF)^j + x^{k-d} F^{k-d} F_{tau'}`.
/// The head's own series is supplied by the caller.
pub fn f_tail_adjacent(
    f_head: &QSeries,
    d: u32,
    k: u32,
    order: usize,
) -> Result<QSeries, CfError> {
    if !(k > d && d >= 1) {
        return Err(CfError::OutOfRange(format!("tail run needs k > d >= 1, got k={k}, d={d}")));
    }
    let order = order.min(f_head.order());
    let head = f_head.truncate(order);
    let e = (k - d) as usize;
    let s = solve_fixed_point(
        |f| {
            let xf = f.shift_mul(1);
            let mut acc = QSeries::one(order);
            let mut pw = QSeries::one(order);
            for _ in 1..e {
                pw = pw.mul(&xf);
                acc = acc.add(&pw);
            }
            acc.add(&f.pow(e).shift_mul(e).mul(&head))
        },
        order,
    )?;
    Ok(s)
}

/// `F` for the double-run shapes ending in an adjacent pair
/// (`1-2-...-(k-2)-(k-1)k` and its three head variants):
/// `(1 - x - sqrt(1 - 2x + x^2 - 4x^2 R_{k-2})) / (2 x^2 R_{k-2})`.
pub fn f_double_run(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 3 {
        return Err(CfError::OutOfRange("double run needs k >= 3".into()));
    }
    let work = order + 2;
    let r = r_series(k - 2, work);
    let radicand = Poly::from_i64s(&[1, -2, 1])
        .to_series(work)
        .sub(&r.shift_mul(2).scale(&rat(4)));
    let num = Poly::from_i64s(&[1, -1]).to_series(work).sub(&radicand.sqrt()?);
    let f = num.shift_div(2)?.scale(&half()).div(&r.truncate(order))?;
    Ok(f)
}

/// `F` for `tau'-k-tau''-d` (minimum letter of `tau'` is `d+1`):
/// `1 / (1 - x (1 - x F' F'') / (1 - x (F' + F'')))`.
pub fn f_two_layer(
    f_first: &QSeries,
    f_second: &QSeries,
    order: usize,
) -> Result<QSeries, CfError> {
    let order = order.min(f_first.order()).min(f_second.order());
    let a = f_first.truncate(order);
    let b = f_second.truncate(order);
    let one = QSeries::one(order);
    let num = one.sub(&a.mul(&b).shift_mul(1));
    let den = one.sub(&a.add(&b).shift_mul(1));
    let inner = num.div(&den)?;
    Ok(one.sub(&inner.shift_mul(1)).inverse(order)?)
}

/// The six fully adjacent patterns of length 3.
pub fn f_small(pattern: &str, order: usize) -> Result<QSeries, CfError> {
    let work = order + 2;
    let series = match pattern {
        // (1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2): the Motzkin numbers.
        "123" | "321" => {
            let num = Poly::from_i64s(&[1, -1])
                .to_series(work)
                .sub(&Poly::from_i64s(&[1, -2, -3]).to_series(work).sqrt()?);
            Ok(num.shift_div(2)?.scale(&half()))
        }
        // (1 - sqrt(1 - 4x)) / (2x): the Catalan numbers (avoiding 1-3-2
        // already implies avoiding the adjacent shape 132).
        "132" => {
            let num = QSeries::one(work).sub(&Poly::from_i64s(&[1, -4]).to_series(work).sqrt()?);
            Ok(num.shift_div(1)?.scale(&half()))
        }
        // (1 - x^2 - sqrt((1 + x^2)^2 - 4x)) / (2x(1-x)).
        "213" | "312" => {
            let radicand = Poly::from_i64s(&[1, -4, 2, 0, 1]).to_series(work);
            let num = Poly::from_i64s(&[1, 0, -1]).to_series(work).sub(&radicand.sqrt()?);
            let f = num
                .shift_div(1)?
                .scale(&half())
                .div(&Poly::from_i64s(&[1, -1]).to_series(order))?;
            Ok(f)
        }
        "231" => Ok(rational_fn(
            &Poly::from_i64s(&[1, -1]),
            &Poly::from_i64s(&[1, -2]),
            order,
        )),
        other => Err(CfError::OutOfRange(format!("no small form for pattern {other}"))),
    };
    series.map(|s| s.truncate(order))
}

/// `F_{123-4} = F_{321-4} = 1/(1 - x M(x))`, the directed-animals sequence
/// 1, 1, 2, 5, 13, 35, ...
pub fn f_dir_animals(order: usize) -> Result<QSeries, CfError> {
    let m = motzkin_series(order);
    Ok(QSeries::one(order).sub(&m.shift_mul(1)).inverse(order)?)
}

/// The literal radical `1/2 sqrt((1+x)/(1-3x))` sometimes quoted for the
/// directed-animals series. Its constant term is 1/2, so it cannot be a
/// counting sequence; the catalog keeps it as a documented erratum.
pub fn f_dir_animals_radical(order: usize) -> Result<QSeries, CfError> {
    let ratio = Poly::from_i64s(&[1, 1])
        .to_series(order)
        .div(&Poly::from_i64s(&[1, -3]).to_series(order))?;
    Ok(ratio.sqrt()?.scale(&half()))
}

// ---------------------------------------------------------------------------
// G family: closed forms
// ---------------------------------------------------------------------------

/// `G_{12-3-...-k} = 1/((1-x) U_k^2) = x^k / ((1-x) V_k^2)` for `k >= 2`.
pub fn g_cd2(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 2 {
        return Err(CfError::OutOfRange("cd2 needs k >= 2".into()));
    }
    Ok(inv_u_squared(k, order).div(&Poly::from_i64s(&[1, -1]).to_series(order))?)
}

/// `G_{12..d-(d+1)-...-k} = (U_d^2/U_k^2) G_{[d]} = x^{k-d} (V_d^2/V_k^2) G_{[d]}`.
pub fn g_gdd1(d: u32, k: u32, order: usize) -> Result<QSeries, CfError> {
    if !(k >= d && d >= 1) {
        return Err(CfError::OutOfRange(format!("gdd1 needs k >= d >= 1, got k={k}, d={d}")));
    }
    let factor = u_ratio_series(Rational::one(), 0, &[d, d], &[k, k], order)?;
    Ok(factor.mul(&g_con11(d, order)?))
}

/// `G_{21-3-...-k} = 1/U_k^2 = x^k/V_k^2` for `k >= 3`.
pub fn g_g21(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 3 {
        return Err(CfError::OutOfRange("g21 needs k >= 3".into()));
    }
    Ok(inv_u_squared(k, order))
}

/// `G_{[k]}` from the linear equation
/// `G = sum_{j=1}^{k-1} j x^j G F^{j-1} + x^k F^k` with `F = F_{[k]}`.
pub fn g_con11(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 1 {
        return Err(CfError::OutOfRange("con11 needs k >= 1".into()));
    }
    let f = f_all_adjacent(k, order)?;
    let mut den = QSeries::one(order);
    for j in 1..k {
        let term = f.pow(j as usize - 1).shift_mul(j as usize).scale(&rat(j as i64));
        den = den.sub(&term);
    }
    let num = f.pow(k as usize).shift_mul(k as usize);
    Ok(num.div(&den)?)
}

/// `G_12 = G_21 = x^2/(1-x)^3`.
pub fn g_small_pair(order: usize) -> QSeries {
    rational_fn(
        &Poly::from_i64s(&[0, 0, 1]),
        &Poly::from_i64s(&[1, -3, 3, -1]),
        order,
    )
}

/// `G_123 = G_321 = x^3 M^3 / (1 - x - 2 x^2 M)`.
pub fn g_small_triple(order: usize) -> Result<QSeries, CfError> {
    let m = motzkin_series(order);
    let num = m.pow(3).shift_mul(3);
    let den = QSeries::one(order)
        .sub(&QSeries::x(order))
        .sub(&m.shift_mul(2).scale(&rat(2)));
    Ok(num.div(&den)?)
}

// ---------------------------------------------------------------------------
// H family: closed forms
// ---------------------------------------------------------------------------

/// `H_{12-3-...-k} = (x/U_k^2) sum_{j=1}^{k-2} U_j^2
///                 = sum_{j=1}^{k-2} x^{k+1-j} V_j^2/V_k^2` for `k >= 2`
/// (the empty sum at `k = 2` gives the zero series).
pub fn h_h1(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 2 {
        return Err(CfError::OutOfRange("h1 needs k >= 2".into()));
    }
    let mut acc = QSeries::zero(order);
    for j in 1..=k.saturating_sub(2) {
        acc = acc.add(&u_ratio_series(Rational::one(), 2, &[j, j], &[k, k], order)?);
    }
    Ok(acc)
}

/// `H_{21-3-...-k} = (x/U_k^2) (sum_{j=1}^{k-2} U_j^2 - 1)` for `k >= 3`.
pub fn h_h21(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 3 {
        return Err(CfError::OutOfRange("h21 needs k >= 3".into()));
    }
    let correction = u_ratio_series(-Rational::one(), 2, &[], &[k, k], order)?;
    Ok(h_h1(k, order)?.add(&correction))
}

// ---------------------------------------------------------------------------
// PHI family: closed forms
// ---------------------------------------------------------------------------

/// `PHI_{12-3-...-k}` for `k >= 2`:
/// `(1/(U_2 U_k^2)) [ 1 + sum_{i=2}^{k-1} (2 sqrt(x)/(U_i U_{i+1}))
///                        (sum_{j=1}^i U_j^2 - 1) ]`,
/// realized term by term through the half-power-checked conversion layer.
pub fn phi_12k(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 2 {
        return Err(CfError::OutOfRange("phi 12-chain needs k >= 2".into()));
    }
    let mut acc = u_ratio_series(Rational::one(), 0, &[], &[2, k, k], order)?;
    for i in 2..k {
        for j in 1..=i {
            acc = acc.add(&u_ratio_series(rat(2), 1, &[j, j], &[2, k, k, i, i + 1], order)?);
        }
        acc = acc.add(&u_ratio_series(rat(-2), 1, &[], &[2, k, k, i, i + 1], order)?);
    }
    Ok(acc)
}

/// `PHI_{21-3-...-k}` for `k >= 3`:
/// `(1/(4 t^3 U_k^2)) [ U_2^2/U_3 + sum_{i=3}^{k-1} (1/(U_i U_{i+1}))
///                          (sum_{j=1}^i U_j^2 - 2) ]`
/// with `1/(4 t^3) = 2 x^{3/2}` entering as three half-powers.
pub fn phi_21k(k: u32, order: usize) -> Result<QSeries, CfError> {
    if k < 3 {
        return Err(CfError::OutOfRange("phi 21-chain needs k >= 3".into()));
    }
    let mut acc = u_ratio_series(rat(2), 3, &[2, 2], &[k, k, 3], order)?;
    for i in 3..k {
        for j in 1..=i {
            acc = acc.add(&u_ratio_series(rat(2), 3, &[j, j], &[k, k, i, i + 1], order)?);
        }
        acc = acc.add(&u_ratio_series(rat(-4), 3, &[], &[k, k, i, i + 1], order)?);
    }
    Ok(acc)
}

/// `PHI_21 = x^3/(1-x)^2`.
pub fn phi_21(order: usize) -> QSeries {
    rational_fn(
        &Poly::from_i64s(&[0, 0, 0, 1]),
        &Poly::from_i64s(&[1, -2, 1]),
        order,
    )
}

// ---------------------------------------------------------------------------
// Pattern constructors for the parameterized families
// ---------------------------------------------------------------------------

/// The two-letter heads a chain or double-run family can start with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairHead {
    Adj12,
    Dash12,
    Adj21,
    Dash21,
}

impl PairHead {
    pub const ALL: [PairHead; 4] = [PairHead::Adj12, PairHead::Dash12, PairHead::Adj21, PairHead::Dash21];

    fn letters(self) -> [u8; 2] {
        match self {
            PairHead::Adj12 | PairHead::Dash12 => [1, 2],
            PairHead::Adj21 | PairHead::Dash21 => [2, 1],
        }
    }

    fn adjacent(self) -> bool {
        matches!(self, PairHead::Adj12 | PairHead::Adj21)
    }
}

impl fmt::Display for PairHead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PairHead::Adj12 => "12",
            PairHead::Dash12 => "1-2",
            PairHead::Adj21 => "21",
            PairHead::Dash21 => "2-1",
        };
        write!(f, "{s}")
    }
}

impl FromStr for PairHead {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "12" => Ok(PairHead::Adj12),
            "1-2" => Ok(PairHead::Dash12),
            "21" => Ok(PairHead::Adj21),
            "2-1" => Ok(PairHead::Dash21),
            other => Err(format!("unknown pair head {other:?} (expected 12, 1-2, 21 or 2-1)")),
        }
    }
}

/// `12...k` with every gap adjacent.
pub fn increasing_run(k: u32) -> GeneralizedPattern {
    let letters: Vec<u8> = (1..=k as u8).collect();
    let flags = vec![true; (k as usize).saturating_sub(1)];
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `k...21` with every gap adjacent.
pub fn decreasing_run(k: u32) -> GeneralizedPattern {
    let letters: Vec<u8> = (1..=k as u8).rev().collect();
    let flags = vec![true; (k as usize).saturating_sub(1)];
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `tau-3-4-...-k` for a two-letter head.
pub fn chain_pattern(head: PairHead, k: u32) -> GeneralizedPattern {
    assert!(k >= 2);
    let mut letters: Vec<u8> = head.letters().to_vec();
    letters.extend(3..=k as u8);
    let mut flags = vec![head.adjacent()];
    flags.extend(vec![false; (k - 2) as usize]);
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `tau-3-...-(k-2)-(k-1)k`: dashed middles, adjacent final pair.
pub fn double_run_pattern(head: PairHead, k: u32) -> GeneralizedPattern {
    assert!(k >= 3);
    let mut letters: Vec<u8> = head.letters().to_vec();
    letters.extend(3..=k as u8);
    let mut flags = vec![false; (k - 1) as usize];
    flags[0] = head.adjacent();
    flags[(k - 2) as usize] = true;
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `12...d-(d+1)-(d+2)-...-k`: an adjacent increasing block of length `d`
/// followed by dashed singletons. `d = 2` is the `12-3-...-k` shape shared
/// by the cd2/h1/phi families.
pub fn block_chain_pattern(d: u32, k: u32) -> GeneralizedPattern {
    assert!(k >= d && d >= 1);
    let letters: Vec<u8> = (1..=k as u8).collect();
    let mut flags = vec![false; (k - 1) as usize];
    for f in flags.iter_mut().take((d - 1) as usize) {
        *f = true;
    }
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `21-3-4-...-k`.
pub fn descent_chain_pattern(k: u32) -> GeneralizedPattern {
    assert!(k >= 2);
    let mut letters: Vec<u8> = vec![2, 1];
    letters.extend(3..=k as u8);
    let mut flags = vec![false; (k - 1) as usize];
    flags[0] = true;
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// `tau'-k-tau''-d` with `tau'` an increasing chain on `d+1..k-1` and
/// `tau''` an increasing chain on `1..d-1`; `adj_first`/`adj_second` glue
/// the first two letters of the respective chain.
pub fn two_layer_pattern(d: u32, k: u32, adj_first: bool, adj_second: bool) -> GeneralizedPattern {
    assert!(k >= d + 2 && d >= 2);
    let first_len = (k - 1 - d) as usize;
    let second_len = (d - 1) as usize;
    assert!(!(adj_first && first_len < 2));
    assert!(!(adj_second && second_len < 2));
    let mut letters: Vec<u8> = ((d + 1) as u8..k as u8).collect();
    letters.push(k as u8);
    letters.extend(1..d as u8);
    letters.push(d as u8);
    let mut flags = Vec::with_capacity((k - 1) as usize);
    for i in 1..first_len {
        flags.push(i == 1 && adj_first);
    }
    flags.push(false); // dash before k
    flags.push(false); // dash after k
    for i in 1..second_len {
        flags.push(i == 1 && adj_second);
    }
    flags.push(false); // dash before d
    GeneralizedPattern::new(letters, flags).unwrap()
}

/// The fixed catalog of generalized wedge patterns: the two nine-letter
/// examples plus every two-layer chain instance with `k <= 6`. Every member
/// satisfies `F = R_k`, which the verify harness asserts against enumeration.
pub fn wedge_catalog() -> Vec<GeneralizedPattern> {
    let mut out: Vec<GeneralizedPattern> = vec![
        "6-4-5-7-8-3-9-12".parse().unwrap(),
        "45-6-3-7-8-12-9".parse().unwrap(),
    ];
    for d in 2..=4u32 {
        for k in d + 2..=6 {
            let first_len = k - 1 - d;
            let second_len = d - 1;
            for adj_first in [false, true] {
                if adj_first && first_len < 2 {
                    continue;
                }
                for adj_second in [false, true] {
                    if adj_second && second_len < 2 {
                        continue;
                    }
                    out.push(two_layer_pattern(d, k, adj_first, adj_second));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Recursion engines
// ---------------------------------------------------------------------------

/// Where a resolved series came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSource {
    ClosedForm,
    Engine,
    Enumeration,
}

impl fmt::Display for SeriesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesSource::ClosedForm => "closed-form",
            SeriesSource::Engine => "engine",
            SeriesSource::Enumeration => "enumeration",
        };
        write!(f, "{s}")
    }
}

type Memo = HashMap<GeneralizedPattern, QSeries>;

/// `F_tau` by the canonical-decomposition recursion, with memoization on
/// reduced patterns. Base cases: `F` of the empty pattern is 0; fully
/// adjacent blocks fall through to their closed forms where one is known
/// and to enumeration (valid to `horizon`) as a last resort, which lowers
/// the order of the result accordingly.
pub fn theorem1_f_engine(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
) -> Result<QSeries, CfError> {
    canonical_decomposition(pat)?;
    let mut memo = Memo::new();
    resolve_f(pat, order, horizon, &mut memo)
}

/// Best series route for `F_tau`: known fully-adjacent closed forms, the
/// canonical-decomposition recursion, enumeration.
pub fn resolve_f(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
    memo: &mut Memo,
) -> Result<QSeries, CfError> {
    if pat.is_empty() {
        return Ok(QSeries::zero(order)); // no permutation avoids the empty pattern
    }
    if let Some(hit) = memo.get(pat) {
        return Ok(hit.clone());
    }
    let series = resolve_f_uncached(pat, order, horizon, memo)?;
    memo.insert(pat.clone(), series.clone());
    Ok(series)
}

fn resolve_f_uncached(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
    memo: &mut Memo,
) -> Result<QSeries, CfError> {
    if pat.is_fully_adjacent() {
        if pat.is_increasing() || pat.is_decreasing() {
            return f_all_adjacent(pat.len() as u32, order);
        }
        if pat.len() == 3 {
            return f_small(&pat.to_string(), order);
        }
    }
    match canonical_decomposition(pat) {
        Ok(d) => {
            let r = d.r();
            // pi^0..pi^{r-1} and sigma^1..sigma^r are strictly shorter than
            // tau and resolve recursively; for r >= 1, pi^r and sigma^0 are
            // tau itself, the fixed-point unknown (for r = 0 only sigma^0 is).
            let mut prefixes = Vec::with_capacity(r.max(1));
            for j in 0..r {
                prefixes.push(resolve_f(&d.prefix(j as isize), order, horizon, memo)?);
            }
            if r == 0 {
                prefixes.push(resolve_f(&d.prefix(0), order, horizon, memo)?);
            }
            let mut suffixes = Vec::with_capacity(r);
            for j in 1..=r {
                suffixes.push(resolve_f(&d.suffix(j), order, horizon, memo)?);
            }
            let eff = prefixes
                .iter()
                .chain(suffixes.iter())
                .map(QSeries::order)
                .fold(order, usize::min);
            let prefixes: Vec<QSeries> = prefixes.iter().map(|p| p.truncate(eff)).collect();
            let suffixes: Vec<QSeries> = suffixes.iter().map(|p| p.truncate(eff)).collect();
            let one = QSeries::one(eff);
            let f = solve_fixed_point(
                |s| {
                    let mut acc = QSeries::zero(eff);
                    for j in 0..=r {
                        let pj = if r >= 1 && j == r { s } else { &prefixes[j] };
                        let sj = if j == 0 { s } else { &suffixes[j - 1] };
                        let mut diff = pj.clone();
                        if j > 0 {
                            diff = diff.sub(&prefixes[j - 1]);
                        }
                        acc = acc.add(&diff.mul(sj));
                    }
                    one.add(&acc.shift_mul(1))
                },
                eff,
            )?;
            Ok(f)
        }
        Err(_) => {
            // Last resort: enumeration, valid to the oracle horizon.
            let bound = order.min(horizon);
            Ok(count_series(Family::F, pat, bound).to_series())
        }
    }
}

/// `G_tau` by the containment recursion. For `r = 0`,
/// `G = x F_tau G_{pi^0} / (1 - x F_{pi^0})`; for `r >= 1`,
/// `(1 - x F_{pi^0} - x F_{sigma^r}) G = x sum_{j=1}^r G^{pi^j}_{pi^{j-1}} G^{sigma^{j-1}}_{sigma^j}`
/// with the mixed avoid/contain series supplied by enumeration.
///
/// The output is advisory: the verify harness compares it to enumeration and
/// records agreement or disagreement per pattern.
pub fn contain1_g_engine(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
) -> Result<QSeries, CfError> {
    canonical_decomposition(pat)?;
    let mut memo = Memo::new();
    let mut gmemo = Memo::new();
    resolve_g(pat, order, horizon, &mut memo, &mut gmemo)
}

fn resolve_g(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
    fmemo: &mut Memo,
    gmemo: &mut Memo,
) -> Result<QSeries, CfError> {
    if pat.is_empty() {
        return Err(CfError::Unsupported { family: Family::G, pattern: "(empty)".into() });
    }
    if let Some(hit) = gmemo.get(pat) {
        return Ok(hit.clone());
    }
    let series = resolve_g_uncached(pat, order, horizon, fmemo, gmemo)?;
    gmemo.insert(pat.clone(), series.clone());
    Ok(series)
}

fn resolve_g_uncached(
    pat: &GeneralizedPattern,
    order: usize,
    horizon: usize,
    fmemo: &mut Memo,
    gmemo: &mut Memo,
) -> Result<QSeries, CfError> {
    if pat.len() == 1 {
        // Exactly one occurrence of the single letter: length-1 permutations.
        return Ok(QSeries::x(order));
    }
    if pat.is_fully_adjacent() && (pat.is_increasing() || pat.is_decreasing()) {
        return g_con11(pat.len() as u32, order);
    }
    match canonical_decomposition(pat) {
        Ok(d) if d.r() == 0 => {
            let f_tau = resolve_f(pat, order, horizon, fmemo)?;
            let pi0 = d.prefix(0);
            let f_pi0 = resolve_f(&pi0, order, horizon, fmemo)?;
            let g_pi0 = resolve_g(&pi0, order, horizon, fmemo, gmemo)?;
            let eff = order.min(f_tau.order()).min(f_pi0.order()).min(g_pi0.order());
            let num = f_tau.truncate(eff).mul(&g_pi0.truncate(eff)).shift_mul(1);
            let den = QSeries::one(eff).sub(&f_pi0.truncate(eff).shift_mul(1));
            Ok(num.div(&den)?)
        }
        Ok(d) => {
            let r = d.r();
            let f_pi0 = resolve_f(&d.prefix(0), order, horizon, fmemo)?;
            let f_sigma_r = resolve_f(&d.suffix(r), order, horizon, fmemo)?;
            let bound = order.min(horizon);
            let mut acc = QSeries::zero(bound);
            for j in 1..=r {
                // avoid pi^j, contain pi^{j-1} exactly once
                let left = mixed_avoid_contain_series(
                    &d.prefix(j as isize),
                    &d.prefix(j as isize - 1),
                    bound,
                )
                .to_series();
                // avoid sigma^{j-1}, contain sigma^j exactly once
                let right =
                    mixed_avoid_contain_series(&d.suffix(j - 1), &d.suffix(j), bound).to_series();
                acc = acc.add(&left.mul(&right));
            }
            let eff = bound.min(f_pi0.order()).min(f_sigma_r.order());
            let den = QSeries::one(eff)
                .sub(&f_pi0.truncate(eff).shift_mul(1))
                .sub(&f_sigma_r.truncate(eff).shift_mul(1));
            Ok(acc.truncate(eff).shift_mul(1).div(&den)?)
        }
        Err(_) => {
            let bound = order.min(horizon);
            Ok(count_series(Family::G, pat, bound).to_series())
        }
    }
}
