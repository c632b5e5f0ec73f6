//! Ground-truth enumeration oracles.
//!
//! Two structural generators drive everything: a streaming generator for
//! 1-3-2-avoiding permutations (place the maximum, recurse on the block of
//! larger values to its left and smaller values to its right) and a
//! streaming generator for permutations containing 1-3-2 exactly once (the
//! three-structure decomposition: the unique occurrence sits left of the
//! maximum, right of it, or spans it as `(v, max, v+1)`).
//!
//! Counting is partition-parallel: streams split into disjoint pieces by the
//! top-level structural choice and partial counts merge by addition, so
//! totals are deterministic regardless of the split.

use crate::pattern::{GeneralizedPattern, PatternMatcher, Permutation};
use crate::series::QSeries;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Which counting family a table belongs to: avoiders of a pattern among
/// 1-3-2-avoiders (F), one-occurrence containers among 1-3-2-avoiders (G),
/// pattern avoiders among exactly-one-1-3-2 permutations (H), one-occurrence
/// containers among those (PHI), and the avoid-one/contain-another mixed
/// count (MIXED).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    F,
    G,
    H,
    Phi,
    Mixed,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::F => "F",
            Family::G => "G",
            Family::H => "H",
            Family::Phi => "PHI",
            Family::Mixed => "MIXED",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            "H" => Ok(Family::H),
            "PHI" => Ok(Family::Phi),
            "MIXED" => Ok(Family::Mixed),
            other => Err(format!("unknown family {other:?} (expected F, G, H or PHI)")),
        }
    }
}

/// A table of enumerated counts `c_0..c_N`, the ground truth that every
/// closed form is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub family: Family,
    pub pattern: GeneralizedPattern,
    /// Only for `Family::Mixed`: the pattern that must occur exactly once
    /// (`pattern` is then the avoided one).
    pub aux_pattern: Option<GeneralizedPattern>,
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_series(&self) -> QSeries {
        QSeries::from_fn(self.max_n(), |n| crate::series::rat(self.counts[n] as i64))
    }
}

/// All permutations of `1..=n` in no particular order (plain recursive
/// generation; used as the independent base for cross-checks).
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut buf: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, buf: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if buf.len() == n {
            out.push(Permutation::new(buf.clone()).unwrap());
            return;
        }
        for v in 1..=n as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                buf.push(v);
                rec(n, buf, used, out);
                buf.pop();
                used[v as usize] = false;
            }
        }
    }
    rec(n, &mut buf, &mut used, &mut out);
    out
}

/// Catalan numbers `C_0..C_n` via the convolution recurrence.
pub fn catalan_numbers(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for m in 1..=n {
        c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
    }
    c
}

pub fn factorials(n: usize) -> Vec<u64> {
    let mut f = vec![1u64; n + 1];
    for m in 1..=n {
        f[m] = f[m - 1] * m as u64;
    }
    f
}

/// Fill `buf[pos..pos+size]` with every 1-3-2-avoiding arrangement of the
/// `size` consecutive values `low..low+size`, calling `cont` for each.
fn visit_avoiders(
    buf: &mut Vec<u8>,
    pos: usize,
    size: usize,
    low: u8,
    cont: &mut dyn FnMut(&mut Vec<u8>),
) {
    if size == 0 {
        cont(buf);
        return;
    }
    let max = low + size as u8 - 1;
    for a in 1..=size {
        // Maximum at relative position a; everything left of it must be the
        // a-1 largest remaining values or a 1-3-2 spanning the maximum
        // appears.
        buf[pos + a - 1] = max;
        let left_low = low + (size - a) as u8;
        visit_avoiders(buf, pos, a - 1, left_low, &mut |buf| {
            visit_avoiders(buf, pos + a, size - a, low, cont)
        });
    }
}

/// Stream all 1-3-2-avoiding permutations of `1..=n`, each exactly once.
pub fn for_each_avoider(n: usize, mut f: impl FnMut(&[u8])) {
    let mut buf = vec![0u8; n];
    visit_avoiders(&mut buf, 0, n, 1, &mut |buf| f(&buf[..]));
}

/// Materialized variant of [`for_each_avoider`]; stream size is Catalan(n).
pub fn avoiders_132(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(n, |p| out.push(Permutation::new(p.to_vec()).unwrap()));
    out
}

/// Count avoiders satisfying `pred`, split by the position of the maximum
/// and counted in parallel.
pub fn count_avoiders_matching(n: usize, pred: impl Fn(&[u8]) -> bool + Sync) -> u64 {
    if n == 0 {
        return u64::from(pred(&[]));
    }
    (1..=n)
        .into_par_iter()
        .map(|a| {
            let mut buf = vec![0u8; n];
            let mut count = 0u64;
            buf[a - 1] = n as u8;
            let left_low = 1 + (n - a) as u8;
            visit_avoiders(&mut buf, 0, a - 1, left_low, &mut |buf| {
                visit_avoiders(buf, a, n - a, 1, &mut |buf| {
                    if pred(&buf[..]) {
                        count += 1;
                    }
                })
            });
            count
        })
        .sum()
}

/// One top-level structural choice for the exactly-one-1-3-2 generator.
#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `(left, max, right)` with the occurrence inside `left`.
    OccurrenceLeft { t: usize },
    /// `(left, max, right)` with the occurrence inside `right`.
    OccurrenceRight { t: usize },
    /// `(alpha, v, max, beta, v+1, gamma)`: the occurrence `(v, max, v+1)`
    /// spans the maximum; all three outer parts avoid 1-3-2.
    Spanning { a: usize, b: usize },
}

fn exactly_one_pieces(size: usize) -> Vec<Piece> {
    let mut pieces = Vec::new();
    if size < 3 {
        return pieces;
    }
    for t in 4..=size {
        pieces.push(Piece::OccurrenceLeft { t });
    }
    for t in 1..=size - 3 {
        pieces.push(Piece::OccurrenceRight { t });
    }
    for a in 0..=size - 3 {
        for b in 0..=size - 3 - a {
            pieces.push(Piece::Spanning { a, b });
        }
    }
    pieces
}

fn visit_exactly_one_piece(
    buf: &mut Vec<u8>,
    pos: usize,
    size: usize,
    low: u8,
    piece: Piece,
    cont: &mut dyn FnMut(&mut Vec<u8>),
) {
    let max = low + size as u8 - 1;
    match piece {
        Piece::OccurrenceLeft { t } => {
            buf[pos + t - 1] = max;
            let left_low = low + (size - t) as u8;
            visit_exactly_one(buf, pos, t - 1, left_low, &mut |buf| {
                visit_avoiders(buf, pos + t, size - t, low, cont)
            });
        }
        Piece::OccurrenceRight { t } => {
            buf[pos + t - 1] = max;
            let left_low = low + (size - t) as u8;
            visit_avoiders(buf, pos, t - 1, left_low, &mut |buf| {
                visit_exactly_one(buf, pos + t, size - t, low, cont)
            });
        }
        Piece::Spanning { a, b } => {
            let c = size - 3 - a - b;
            let v = low + (b + c) as u8;
            buf[pos + a] = v;
            buf[pos + a + 1] = max;
            buf[pos + a + 2 + b] = v + 1;
            visit_avoiders(buf, pos, a, v + 2, &mut |buf| {
                visit_avoiders(buf, pos + a + 2, b, low + c as u8, &mut |buf| {
                    visit_avoiders(buf, pos + a + 3 + b, c, low, cont)
                })
            });
        }
    }
}

fn visit_exactly_one(
    buf: &mut Vec<u8>,
    pos: usize,
    size: usize,
    low: u8,
    cont: &mut dyn FnMut(&mut Vec<u8>),
) {
    for piece in exactly_one_pieces(size) {
        visit_exactly_one_piece(buf, pos, size, low, piece, cont);
    }
}

/// Stream all permutations of `1..=n` containing 1-3-2 exactly once, each
/// exactly once, by the three-structure decomposition.
pub fn for_each_exactly_one(n: usize, mut f: impl FnMut(&[u8])) {
    let mut buf = vec![0u8; n];
    visit_exactly_one(&mut buf, 0, n, 1, &mut |buf| f(&buf[..]));
}

pub fn exactly_one_132(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_exactly_one(n, |p| out.push(Permutation::new(p.to_vec()).unwrap()));
    out
}

/// Count exactly-one-1-3-2 permutations satisfying `pred`, one parallel task
/// per top-level structural piece.
pub fn count_exactly_one_matching(n: usize, pred: impl Fn(&[u8]) -> bool + Sync) -> u64 {
    exactly_one_pieces(n)
        .into_par_iter()
        .map(|piece| {
            let mut buf = vec![0u8; n];
            let mut count = 0u64;
            visit_exactly_one_piece(&mut buf, 0, n, 1, piece, &mut |buf| {
                if pred(&buf[..]) {
                    count += 1;
                }
            });
            count
        })
        .sum()
}

/// Enumerated counting table for one family and pattern, `n = 0..=n_max`.
///
/// F and G count over 1-3-2-avoiders (avoidance of `pat` / exactly one
/// occurrence of `pat`); H and PHI count the same over permutations with
/// exactly one 1-3-2 occurrence.
pub fn count_series(family: Family, pat: &GeneralizedPattern, n_max: usize) -> CountTable {
    assert!(family != Family::Mixed, "use mixed_avoid_contain_series for MIXED");
    let matcher = PatternMatcher::new(pat);
    let counts: Vec<u64> = (0..=n_max)
        .map(|n| match family {
            Family::F => count_avoiders_matching(n, |p| matcher.avoids(p)),
            Family::G => count_avoiders_matching(n, |p| matcher.contains_exactly_once(p)),
            Family::H => count_exactly_one_matching(n, |p| matcher.avoids(p)),
            Family::Phi => count_exactly_one_matching(n, |p| matcher.contains_exactly_once(p)),
            Family::Mixed => unreachable!(),
        })
        .collect();
    CountTable { family, pattern: pat.clone(), aux_pattern: None, counts }
}

/// Counts of 1-3-2-avoiders that avoid one pattern and contain another
/// exactly once.
pub fn mixed_avoid_contain_series(
    avoid: &GeneralizedPattern,
    contain_once: &GeneralizedPattern,
    n_max: usize,
) -> CountTable {
    let avoid_m = PatternMatcher::new(avoid);
    let contain_m = PatternMatcher::new(contain_once);
    let counts: Vec<u64> = (0..=n_max)
        .map(|n| {
            count_avoiders_matching(n, |p| {
                avoid_m.avoids(p) && contain_m.contains_exactly_once(p)
            })
        })
        .collect();
    CountTable {
        family: Family::Mixed,
        pattern: avoid.clone(),
        aux_pattern: Some(contain_once.clone()),
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{count_132_capped, parse_pattern};
    use std::collections::BTreeSet;

    fn pat(text: &str) -> GeneralizedPattern {
        parse_pattern(text).unwrap()
    }

    #[test]
    fn avoider_counts_are_catalan() {
        for (n, expected) in catalan_numbers(10).into_iter().enumerate() {
            let mut count = 0u64;
            for_each_avoider(n, |_| count += 1);
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn avoiders_at_small_sizes() {
        assert_eq!(avoiders_132(0), vec![Permutation::empty()]);
        let got: BTreeSet<_> = avoiders_132(3).into_iter().collect();
        let expected: BTreeSet<_> = all_permutations(3)
            .into_iter()
            .filter(|p| count_132_capped(p.as_slice(), 1) == 0)
            .collect();
        assert_eq!(got.len(), 5);
        assert_eq!(got, expected);
    }

    #[test]
    fn avoiders_are_distinct_and_avoid() {
        for n in 0..=8usize {
            let list = avoiders_132(n);
            let set: BTreeSet<_> = list.iter().cloned().collect();
            assert_eq!(set.len(), list.len(), "duplicates at n = {n}");
            for p in &list {
                assert_eq!(count_132_capped(p.as_slice(), 1), 0, "{p} contains 1-3-2");
            }
        }
    }

    #[test]
    fn exactly_one_at_small_sizes() {
        assert!(exactly_one_132(0).is_empty());
        assert!(exactly_one_132(1).is_empty());
        assert!(exactly_one_132(2).is_empty());
        assert_eq!(
            exactly_one_132(3),
            vec![Permutation::new(vec![1, 3, 2]).unwrap()]
        );
    }

    #[test]
    fn exactly_one_matches_filtering_small() {
        for n in 0..=7usize {
            let structural: BTreeSet<_> = exactly_one_132(n).into_iter().collect();
            let filtered: BTreeSet<_> = all_permutations(n)
                .into_iter()
                .filter(|p| count_132_capped(p.as_slice(), 2) == 1)
                .collect();
            assert_eq!(structural, filtered, "n = {n}");
        }
    }

    #[test]
    fn classes_partition_the_symmetric_group() {
        for (n, expected) in factorials(9).into_iter().enumerate() {
            let avoiders = count_avoiders_matching(n, |_| true);
            let once = count_exactly_one_matching(n, |_| true);
            let more = all_permutations(n)
                .iter()
                .filter(|p| count_132_capped(p.as_slice(), 2) >= 2)
                .count() as u64;
            assert_eq!(avoiders + once + more, expected, "n = {n}");
        }
    }

    #[test]
    fn count_series_motzkin_example() {
        let t = count_series(Family::F, &pat("1-23"), 7);
        assert_eq!(t.counts, vec![1, 1, 2, 4, 9, 21, 51, 127]);
    }

    #[test]
    fn count_series_g_example() {
        let t = count_series(Family::G, &pat("21-3"), 5);
        assert_eq!(t.counts, vec![0, 0, 0, 1, 4, 12]);
    }

    #[test]
    fn count_series_phi_example() {
        let t = count_series(Family::Phi, &pat("12"), 4);
        assert_eq!(t.counts, vec![0, 0, 0, 1, 3]);
    }

    #[test]
    fn fully_adjacent_132_does_not_bind() {
        // Avoiding 1-3-2 already implies avoiding the adjacent shape 132.
        let t = count_series(Family::F, &pat("132"), 8);
        assert_eq!(t.counts, catalan_numbers(8));
    }

    #[test]
    fn count_series_is_monotone_under_dash_refinement() {
        let coarse = count_series(Family::F, &pat("1-2-3"), 8);
        let mid = count_series(Family::F, &pat("12-3"), 8);
        let fine = count_series(Family::F, &pat("123"), 8);
        for n in 0..=8usize {
            assert!(coarse.counts[n] <= mid.counts[n]);
            assert!(mid.counts[n] <= fine.counts[n]);
        }
    }

    #[test]
    fn mixed_series_examples() {
        // Only decreasing permutations avoid 1-2; they contain the adjacent
        // descent 21 exactly once only at n = 2.
        let t = mixed_avoid_contain_series(&pat("1-2"), &pat("21"), 5);
        assert_eq!(t.counts, vec![0, 0, 1, 0, 0, 0]);

        // Contradictory requirements.
        let t = mixed_avoid_contain_series(&pat("123"), &pat("123"), 4);
        assert_eq!(t.counts, vec![0, 0, 0, 0, 0]);

        // Avoid 21-3 while containing the adjacent descent 21 exactly once:
        // the n-1 rotations with the unique descent closing the word.
        let t = mixed_avoid_contain_series(&pat("21-3"), &pat("21"), 5);
        assert_eq!(t.counts, vec![0, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn parallel_and_serial_counts_agree() {
        let matcher = PatternMatcher::new(&pat("12-3"));
        for n in 0..=8usize {
            let mut serial = 0u64;
            for_each_avoider(n, |p| {
                if matcher.avoids(p) {
                    serial += 1;
                }
            });
            assert_eq!(serial, count_avoiders_matching(n, |p| matcher.avoids(p)));
        }
    }
}
