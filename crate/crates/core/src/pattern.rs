//! Permutations, generalized (vincular) patterns, occurrence counting, and
//! the canonical decomposition at right-to-left maxima.
//!
//! A generalized pattern is a permutation of `1..=k` plus one adjacency flag
//! per gap: `true` means the two letters must sit in adjacent positions of
//! the permutation (no dash in the text form), `false` means any gap is
//! allowed (a dash). `1-23` therefore matches index triples `i < j, j+1`
//! with `pi_i < pi_j < pi_{j+1}`.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A permutation of `{1, ..., n}`; `n = 0` (the empty permutation) is legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermutationError {
    #[error("entries must be a bijection on 1..={expected}, found {found} at index {index}")]
    NotBijection { expected: usize, found: u8, index: usize },
}

impl Permutation {
    pub fn new(entries: Vec<u8>) -> Result<Self, PermutationError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for (index, &v) in entries.iter().enumerate() {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PermutationError::NotBijection { expected: n, found: v, index });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.entries
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.entries {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A generalized (vincular) pattern: letters forming a permutation of
/// `1..=k`, plus `k - 1` adjacency flags (`true` = no dash).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedPattern {
    letters: Vec<u8>,
    adjacency: Vec<bool>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error(transparent)]
    Letters(#[from] PermutationError),
    #[error("adjacency has {found} flags, expected {expected}")]
    AdjacencyLength { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("illegal character {character:?} at position {position}")]
    IllegalCharacter { position: usize, character: char },
    #[error("empty block at position {position}")]
    EmptyBlock { position: usize },
    #[error("duplicate letter {letter} at position {position}")]
    DuplicateLetter { position: usize, letter: u8 },
    #[error("letters do not span 1..={count}: largest letter is {max_letter}")]
    NotSpanning { max_letter: u8, count: usize },
}

impl GeneralizedPattern {
    pub fn new(letters: Vec<u8>, adjacency: Vec<bool>) -> Result<Self, PatternError> {
        Permutation::new(letters.clone())?;
        let expected = letters.len().saturating_sub(1);
        if adjacency.len() != expected {
            return Err(PatternError::AdjacencyLength { expected, found: adjacency.len() });
        }
        Ok(GeneralizedPattern { letters, adjacency })
    }

    pub fn empty() -> Self {
        GeneralizedPattern { letters: Vec::new(), adjacency: Vec::new() }
    }

    /// The classical pattern `1-2-...-k` (every gap dashed).
    pub fn classical(letters: Vec<u8>) -> Result<Self, PatternError> {
        let flags = letters.len().saturating_sub(1);
        GeneralizedPattern::new(letters, vec![false; flags])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn adjacency(&self) -> &[bool] {
        &self.adjacency
    }

    /// The underlying classical permutation, dashes forgotten.
    pub fn underlying(&self) -> Permutation {
        Permutation { entries: self.letters.clone() }
    }

    pub fn is_fully_adjacent(&self) -> bool {
        self.adjacency.iter().all(|&a| a)
    }

    pub fn is_increasing(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] > w[1])
    }

    /// Order-isomorphic renumbering of a (letters, adjacency) fragment onto
    /// `1..=len`, keeping the adjacency flags.
    pub fn reduce(letters: &[u8], adjacency: &[bool]) -> Self {
        debug_assert_eq!(adjacency.len(), letters.len().saturating_sub(1));
        let mut sorted: Vec<u8> = letters.to_vec();
        sorted.sort_unstable();
        let reduced = letters
            .iter()
            .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
            .collect();
        GeneralizedPattern { letters: reduced, adjacency: adjacency.to_vec() }
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.letters.iter().enumerate() {
            if i > 0 && !self.adjacency[i - 1] {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parse the dash grammar `pattern := block ('-' block)*; block := digit+`
/// with digits 1..9. The empty pattern is not parseable; build it with
/// [`GeneralizedPattern::empty`].
pub fn parse_pattern(text: &str) -> Result<GeneralizedPattern, ParseError> {
    let mut letters: Vec<u8> = Vec::new();
    let mut adjacency: Vec<bool> = Vec::new();
    let mut block_len = 0usize;
    for (position, character) in text.chars().enumerate() {
        match character {
            '1'..='9' => {
                let letter = character as u8 - b'0';
                if let Some(prev) = letters.iter().position(|&l| l == letter) {
                    let _ = prev;
                    return Err(ParseError::DuplicateLetter { position, letter });
                }
                if !letters.is_empty() {
                    adjacency.push(block_len > 0);
                }
                letters.push(letter);
                block_len += 1;
            }
            '-' => {
                if block_len == 0 {
                    return Err(ParseError::EmptyBlock { position });
                }
                block_len = 0;
            }
            _ => return Err(ParseError::IllegalCharacter { position, character }),
        }
    }
    if block_len == 0 {
        // Trailing dash, or empty input.
        return Err(ParseError::EmptyBlock { position: text.chars().count() });
    }
    let max_letter = letters.iter().copied().max().unwrap_or(0);
    if max_letter as usize != letters.len() {
        return Err(ParseError::NotSpanning { max_letter, count: letters.len() });
    }
    Ok(GeneralizedPattern { letters, adjacency })
}

impl FromStr for GeneralizedPattern {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

/// Precomputed matcher for one pattern: the adjacency structure is split
/// into maximal adjacent blocks once, and occurrences are counted by a
/// depth-first placement of blocks with incremental order-isomorphism
/// checks. Blocks after the first may start anywhere strictly after the end
/// of the previous block.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    letters: Vec<u8>,
    /// (start index in `letters`, length) of each adjacent block.
    blocks: Vec<(usize, usize)>,
    /// Total letters from block `b` to the end.
    suffix_len: Vec<usize>,
}

impl PatternMatcher {
    pub fn new(pat: &GeneralizedPattern) -> Self {
        let mut blocks = Vec::new();
        let mut start = 0usize;
        for i in 0..pat.len() {
            let block_continues = i + 1 < pat.len() && pat.adjacency[i];
            if !block_continues {
                blocks.push((start, i - start + 1));
                start = i + 1;
            }
        }
        let mut suffix_len = vec![0usize; blocks.len() + 1];
        for b in (0..blocks.len()).rev() {
            suffix_len[b] = suffix_len[b + 1] + blocks[b].1;
        }
        PatternMatcher { letters: pat.letters.clone(), blocks, suffix_len }
    }

    /// Number of occurrences in `perm`, stopping early once `cap` is
    /// reached; the result is `min(true count, cap)`.
    pub fn count(&self, perm: &[u8], cap: Option<u64>) -> u64 {
        if cap == Some(0) {
            return 0;
        }
        let k = self.letters.len();
        if k == 0 {
            return 1; // the empty subsequence
        }
        if k > perm.len() {
            return 0;
        }
        let mut chosen: Vec<u8> = Vec::with_capacity(k);
        let mut count = 0u64;
        self.dfs(perm, 0, 0, &mut chosen, &mut count, cap);
        count
    }

    pub fn avoids(&self, perm: &[u8]) -> bool {
        self.count(perm, Some(1)) == 0
    }

    pub fn contains_exactly_once(&self, perm: &[u8]) -> bool {
        self.count(perm, Some(2)) == 1
    }

    fn dfs(
        &self,
        perm: &[u8],
        block_idx: usize,
        min_pos: usize,
        chosen: &mut Vec<u8>,
        count: &mut u64,
        cap: Option<u64>,
    ) -> bool {
        if block_idx == self.blocks.len() {
            *count += 1;
            return cap.is_some_and(|c| *count >= c);
        }
        let (start, len) = self.blocks[block_idx];
        let needed = self.suffix_len[block_idx];
        if perm.len() < min_pos + needed {
            return false;
        }
        let base = chosen.len();
        for pos in min_pos..=perm.len() - needed {
            let mut ok = true;
            for off in 0..len {
                let v = perm[pos + off];
                let lp = start + off;
                if chosen
                    .iter()
                    .enumerate()
                    .any(|(q, &w)| (v > w) != (self.letters[lp] > self.letters[q]))
                {
                    ok = false;
                    break;
                }
                chosen.push(v);
            }
            let stop = ok && self.dfs(perm, block_idx + 1, pos + len, chosen, count, cap);
            chosen.truncate(base);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Occurrence count of `pat` in `perm`; with `cap`, counting stops early and
/// the result is `min(true count, cap)`.
pub fn occurrences(perm: &Permutation, pat: &GeneralizedPattern, cap: Option<u64>) -> u64 {
    PatternMatcher::new(pat).count(perm.as_slice(), cap)
}

pub fn avoids(perm: &Permutation, pat: &GeneralizedPattern) -> bool {
    occurrences(perm, pat, Some(1)) == 0
}

/// Classical `1-3-2` occurrence test on a raw word, used by the enumeration
/// oracles. Capped so callers can classify into avoid / exactly once / more.
pub fn count_132_capped(perm: &[u8], cap: u64) -> u64 {
    let mut count = 0u64;
    let n = perm.len();
    for i in 0..n {
        for j in i + 1..n {
            if perm[j] <= perm[i] {
                continue;
            }
            for l in j + 1..n {
                if perm[i] < perm[l] && perm[l] < perm[j] {
                    count += 1;
                    if count >= cap {
                        return count;
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("decomposition inapplicable: underlying pattern contains 1-3-2")]
    ContainsOneThreeTwo,
    #[error("decomposition inapplicable: right-to-left maximum at position {position} is not dash-separated")]
    MaximumNotDashSeparated { position: usize },
}

/// Canonical decomposition of a 1-3-2-avoiding generalized pattern at its
/// right-to-left maxima: `tau = phi^0 - m_0 - phi^1 - m_1 - ... - phi^r - m_r`,
/// every maximum dash-separated from both neighbours, blocks reduced.
#[derive(Debug, Clone)]
pub struct CanonicalDecomposition {
    original: GeneralizedPattern,
    /// Positions of `m_0..m_r` in the original letters, left to right.
    maxima_positions: Vec<usize>,
    /// Reduced block fragments `phi^0..phi^r`.
    blocks: Vec<GeneralizedPattern>,
}

impl CanonicalDecomposition {
    /// Index `r` of the last maximum.
    pub fn r(&self) -> usize {
        self.maxima_positions.len() - 1
    }

    /// The maxima values `m_0 > m_1 > ... > m_r`.
    pub fn maxima(&self) -> Vec<u8> {
        self.maxima_positions.iter().map(|&p| self.original.letters[p]).collect()
    }

    pub fn blocks(&self) -> &[GeneralizedPattern] {
        &self.blocks
    }

    /// The reduced prefix `pi^i`: empty for `i = -1`, the bare block `phi^0`
    /// for `i = 0`, and everything through `m_i` for `1 <= i <= r`.
    pub fn prefix(&self, i: isize) -> GeneralizedPattern {
        if i < 0 {
            return GeneralizedPattern::empty();
        }
        if i == 0 {
            return self.blocks[0].clone();
        }
        let end = self.maxima_positions[i as usize];
        GeneralizedPattern::reduce(
            &self.original.letters[..=end],
            &self.original.adjacency[..end],
        )
    }

    /// The reduced suffix `sigma^i`, starting at block `phi^i`; empty for
    /// `i = r + 1`.
    pub fn suffix(&self, i: usize) -> GeneralizedPattern {
        if i == self.r() + 1 {
            return GeneralizedPattern::empty();
        }
        let start = if i == 0 { 0 } else { self.maxima_positions[i - 1] + 1 };
        GeneralizedPattern::reduce(
            &self.original.letters[start..],
            &self.original.adjacency[start.min(self.original.adjacency.len())..],
        )
    }

    /// Rebuild the pattern from the reduced blocks, the maxima, and the
    /// stored spans; equal to the input by construction, which the tests
    /// assert as the round-trip invariant.
    pub fn reassemble(&self) -> GeneralizedPattern {
        let mut letters = Vec::with_capacity(self.original.len());
        let mut adjacency = Vec::new();
        let mut start = 0usize;
        for (i, &mpos) in self.maxima_positions.iter().enumerate() {
            let span = &self.original.letters[start..mpos];
            let mut sorted = span.to_vec();
            sorted.sort_unstable();
            let block = &self.blocks[i];
            for (j, &reduced_letter) in block.letters().iter().enumerate() {
                if j > 0 {
                    adjacency.push(block.adjacency()[j - 1]);
                } else if !letters.is_empty() {
                    adjacency.push(false); // dash after the previous maximum
                }
                letters.push(sorted[reduced_letter as usize - 1]);
            }
            if !letters.is_empty() {
                adjacency.push(false); // dash before the maximum
            }
            letters.push(self.original.letters[mpos]);
            start = mpos + 1;
        }
        GeneralizedPattern { letters, adjacency }
    }
}

/// Decompose `pat` at its right-to-left maxima. Fails when the underlying
/// classical pattern contains 1-3-2 or when some maximum is glued to a
/// neighbour by a missing dash.
pub fn canonical_decomposition(
    pat: &GeneralizedPattern,
) -> Result<CanonicalDecomposition, DecompositionError> {
    assert!(!pat.is_empty(), "the empty pattern has no canonical decomposition");
    if count_132_capped(&pat.letters, 1) > 0 {
        return Err(DecompositionError::ContainsOneThreeTwo);
    }
    let k = pat.len();
    let mut maxima_positions = Vec::new();
    let mut best = 0u8;
    for p in (0..k).rev() {
        if pat.letters[p] > best {
            best = pat.letters[p];
            maxima_positions.push(p);
        }
    }
    maxima_positions.reverse();
    debug_assert_eq!(pat.letters[maxima_positions[0]] as usize, k);

    for &p in &maxima_positions {
        let sep_left = p == 0 || !pat.adjacency[p - 1];
        let sep_right = p == k - 1 || !pat.adjacency[p];
        if !(sep_left && sep_right) {
            return Err(DecompositionError::MaximumNotDashSeparated { position: p });
        }
    }

    let mut blocks = Vec::with_capacity(maxima_positions.len());
    let mut start = 0usize;
    for &mpos in &maxima_positions {
        let letters = &pat.letters[start..mpos];
        let adjacency = if letters.len() <= 1 {
            &[][..]
        } else {
            &pat.adjacency[start..mpos - 1]
        };
        blocks.push(GeneralizedPattern::reduce(letters, adjacency));
        start = mpos + 1;
    }

    Ok(CanonicalDecomposition { original: pat.clone(), maxima_positions, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_permutations;

    fn pat(text: &str) -> GeneralizedPattern {
        parse_pattern(text).unwrap()
    }

    fn perm(entries: &[u8]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    /// Independent oracle: enumerate every index subsequence and check the
    /// adjacency constraints and order-isomorphism directly.
    fn naive_occurrences(p: &[u8], t: &GeneralizedPattern) -> u64 {
        let k = t.len();
        if k == 0 {
            return 1;
        }
        let n = p.len();
        if k > n {
            return 0;
        }
        let mut indices = Vec::with_capacity(k);
        let mut count = 0u64;
        fn rec(
            p: &[u8],
            t: &GeneralizedPattern,
            next_min: usize,
            indices: &mut Vec<usize>,
            count: &mut u64,
        ) {
            if indices.len() == t.len() {
                for j in 0..t.len() - 1 {
                    if t.adjacency()[j] && indices[j + 1] != indices[j] + 1 {
                        return;
                    }
                }
                for a in 0..t.len() {
                    for b in a + 1..t.len() {
                        if (p[indices[a]] < p[indices[b]])
                            != (t.letters()[a] < t.letters()[b])
                        {
                            return;
                        }
                    }
                }
                *count += 1;
                return;
            }
            for i in next_min..p.len() {
                indices.push(i);
                rec(p, t, i + 1, indices, count);
                indices.pop();
            }
        }
        rec(p, t, 0, &mut indices, &mut count);
        count
    }

    #[test]
    fn parse_examples() {
        let p = pat("1-23");
        assert_eq!(p.letters(), &[1, 2, 3]);
        assert_eq!(p.adjacency(), &[false, true]);

        let p = pat("123");
        assert_eq!(p.adjacency(), &[true, true]);

        assert_eq!(
            parse_pattern("11-2"),
            Err(ParseError::DuplicateLetter { position: 1, letter: 1 })
        );
        assert_eq!(
            parse_pattern("1-3"),
            Err(ParseError::NotSpanning { max_letter: 3, count: 2 })
        );
        assert_eq!(parse_pattern("1--2"), Err(ParseError::EmptyBlock { position: 2 }));
        assert_eq!(parse_pattern("-12"), Err(ParseError::EmptyBlock { position: 0 }));
        assert_eq!(parse_pattern("12-"), Err(ParseError::EmptyBlock { position: 3 }));
        assert_eq!(parse_pattern(""), Err(ParseError::EmptyBlock { position: 0 }));
        assert_eq!(
            parse_pattern("1a2"),
            Err(ParseError::IllegalCharacter { position: 1, character: 'a' })
        );
        assert_eq!(
            parse_pattern("10-2"),
            Err(ParseError::IllegalCharacter { position: 1, character: '0' })
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["1-23", "123", "45-6-12-3", "1", "2-1-3-4-5"] {
            assert_eq!(pat(text).to_string(), text);
        }
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&perm(&[2, 1, 3]), &pat("21-3"), None), 1);
        assert_eq!(occurrences(&perm(&[1, 2, 3, 4]), &pat("123"), None), 2);
        // The only occurrence is (1,2,3) via the adjacent ascent (2,3); the
        // window (1,2) has no smaller letter before it.
        assert_eq!(occurrences(&perm(&[4, 1, 2, 3]), &pat("1-23"), None), 1);
        assert_eq!(
            occurrences(&perm(&[4, 1, 2, 3]), &GeneralizedPattern::empty(), None),
            1
        );
        assert_eq!(occurrences(&Permutation::empty(), &GeneralizedPattern::empty(), None), 1);
    }

    #[test]
    fn avoids_examples() {
        assert!(!avoids(&perm(&[1, 3, 2]), &pat("1-3-2")));
        assert!(avoids(&perm(&[3, 1, 2]), &pat("21-3")));
        assert!(avoids(&Permutation::empty(), &pat("1-2")));
    }

    #[test]
    fn matcher_agrees_with_naive_enumerator_and_caps() {
        // All permutations up to n = 6, against every adjacency shape of
        // every pattern of length 2..=4.
        let mut patterns = Vec::new();
        for k in 2..=4usize {
            for letters in all_permutations(k) {
                for mask in 0..(1u32 << (k - 1)) {
                    let adjacency = (0..k - 1).map(|i| mask >> i & 1 == 1).collect();
                    patterns.push(
                        GeneralizedPattern::new(letters.as_slice().to_vec(), adjacency).unwrap(),
                    );
                }
            }
        }
        for n in 0..=6usize {
            for p in all_permutations(n) {
                for t in &patterns {
                    let expected = naive_occurrences(p.as_slice(), t);
                    let m = PatternMatcher::new(t);
                    assert_eq!(m.count(p.as_slice(), None), expected, "perm {p} pat {t}");
                    for cap in 1..=3u64 {
                        assert_eq!(
                            m.count(p.as_slice(), Some(cap)),
                            expected.min(cap),
                            "cap {cap}, perm {p}, pat {t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn occurrences_bounded_by_binomial() {
        let t = pat("1-2-3");
        for p in all_permutations(6) {
            assert!(occurrences(&p, &t, None) <= 20); // C(6,3)
        }
    }

    #[test]
    fn dash_refinement_is_monotone() {
        // Adding adjacency requirements can only lose occurrences.
        for letters in all_permutations(3) {
            for p in all_permutations(5) {
                let mut by_mask = Vec::new();
                for mask in 0..4u32 {
                    let adjacency = (0..2).map(|i| mask >> i & 1 == 1).collect();
                    let t = GeneralizedPattern::new(letters.as_slice().to_vec(), adjacency)
                        .unwrap();
                    by_mask.push(occurrences(&p, &t, None));
                }
                for (coarse, fine) in [(0usize, 1usize), (0, 2), (0, 3), (1, 3), (2, 3)] {
                    assert!(
                        by_mask[fine] <= by_mask[coarse],
                        "perm {p}, letters {letters}, masks {coarse}->{fine}"
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_of_12_dash_3() {
        let d = canonical_decomposition(&pat("12-3")).unwrap();
        assert_eq!(d.r(), 0);
        assert_eq!(d.maxima(), vec![3]);
        assert_eq!(d.blocks(), &[pat("12")]);
        assert_eq!(d.prefix(0), pat("12"));
        assert_eq!(d.prefix(-1), GeneralizedPattern::empty());
        assert_eq!(d.suffix(0), pat("12-3"));
        assert_eq!(d.suffix(1), GeneralizedPattern::empty());
    }

    #[test]
    fn decomposition_of_two_layer_example() {
        let d = canonical_decomposition(&pat("45-6-12-3")).unwrap();
        assert_eq!(d.r(), 1);
        assert_eq!(d.maxima(), vec![6, 3]);
        assert_eq!(d.blocks(), &[pat("12"), pat("12")]);
        assert_eq!(d.prefix(0), pat("12"));
        assert_eq!(d.prefix(1), pat("45-6-12-3"));
        assert_eq!(d.suffix(0), pat("45-6-12-3"));
        assert_eq!(d.suffix(1), pat("12-3"));
    }

    #[test]
    fn decomposition_preconditions() {
        assert!(matches!(
            canonical_decomposition(&pat("1-3-2")),
            Err(DecompositionError::ContainsOneThreeTwo)
        ));
        assert!(matches!(
            canonical_decomposition(&pat("12")),
            Err(DecompositionError::MaximumNotDashSeparated { position: 1 })
        ));
        assert!(matches!(
            canonical_decomposition(&pat("1-23")),
            Err(DecompositionError::MaximumNotDashSeparated { .. })
        ));
    }

    #[test]
    fn decomposition_round_trip_exhaustive() {
        // Every dash shape of every 1-3-2-avoiding underlying pattern of
        // length <= 5 whose maxima are dash-separated.
        for k in 1..=5usize {
            for letters in all_permutations(k) {
                if count_132_capped(letters.as_slice(), 1) > 0 {
                    continue;
                }
                for mask in 0..(1u32 << (k - 1)) {
                    let adjacency: Vec<bool> =
                        (0..k - 1).map(|i| mask >> i & 1 == 1).collect();
                    let t =
                        GeneralizedPattern::new(letters.as_slice().to_vec(), adjacency).unwrap();
                    match canonical_decomposition(&t) {
                        Ok(d) => assert_eq!(d.reassemble(), t, "pattern {t}"),
                        Err(DecompositionError::MaximumNotDashSeparated { .. }) => {}
                        Err(e) => panic!("unexpected error {e} for {t}"),
                    }
                }
            }
        }
    }
}
