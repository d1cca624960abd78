//! Cyclic Gray codes, their transition sequences, balance classification and
//! the inductive Construction B for balanced codes.
//!
//! Transition index `i` (1-based) flips the word bit of value `2^(i-1)`, so
//! index 1 is the least significant bit of the integer encoding. Under this
//! convention the binary-reflected code on two bits has transition sequence
//! `1,2,1,2` and the code `000,100,101,001,011,111,110,010` has
//! `3,1,3,2,3,1,3,2`.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::{join_decimal, parse_decimal_list, Error, Result, MAX_BITS};

fn check_bits(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_BITS {
        return Err(Error::BitCount { n, min, max: MAX_BITS });
    }
    Ok(())
}

/// Infers `n` from a sequence length that must be `2^n`.
fn bits_for_len(len: usize) -> Result<u32> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Parse { reason: format!("length {len} is not a power of two >= 2") });
    }
    let n = len.trailing_zeros();
    check_bits(n, 1)?;
    Ok(n)
}

/// The bit positions flipped along a cyclic Gray code, one per step
/// including the wrap-around step from the last word back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionSequence {
    n: u32,
    items: Vec<u32>,
}

impl TransitionSequence {
    /// Validates that `items` drives a walk from the all-zero word through
    /// all `2^n` words and back.
    pub fn new(n: u32, items: Vec<u32>) -> Result<Self> {
        check_bits(n, 1)?;
        let len = 1usize << n;
        if items.len() != len {
            return Err(Error::Length { expected: len, actual: items.len() });
        }
        let mut first_seen = vec![usize::MAX; len];
        let mut word = 0u32;
        for (position, &index) in items.iter().enumerate() {
            if index == 0 || index > n {
                return Err(Error::TransitionIndex { position, index, n });
            }
            let slot = &mut first_seen[word as usize];
            if *slot != usize::MAX {
                return Err(Error::RepeatedWord { position, first: *slot, word });
            }
            *slot = position;
            word ^= 1 << (index - 1);
        }
        if word != 0 {
            return Err(Error::NotCyclic { start: 0, end: word });
        }
        Ok(Self { n, items })
    }

    /// Parses the comma-separated text form; `n` is inferred from the length.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse_decimal_list(text)?;
        let n = bits_for_len(raw.len())?;
        let items = raw
            .iter()
            .enumerate()
            .map(|(position, &v)| u32::try_from(v).map_err(|_| Error::TransitionIndex { position, index: u32::MAX, n }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, items)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn items(&self) -> &[u32] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Replays the flips from `start`.
    pub fn to_gray(&self, start: u32) -> Result<GrayCode> {
        if u64::from(start) >= 1u64 << self.n {
            return Err(Error::WordRange { position: 0, word: start.into(), n: self.n });
        }
        let mut words = Vec::with_capacity(self.items.len());
        let mut word = start;
        for &index in &self.items {
            words.push(word);
            word ^= 1 << (index - 1);
        }
        Ok(GrayCode { n: self.n, words })
    }

    pub fn transition_count(&self) -> TransitionCount {
        let mut counts = vec![0usize; self.n as usize];
        for &index in &self.items {
            counts[index as usize - 1] += 1;
        }
        TransitionCount { n: self.n, counts }
    }
}

impl fmt::Display for TransitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_decimal(&self.items))
    }
}

/// An ordered list of all `2^n` words where cyclically consecutive words
/// differ in exactly one bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayCode {
    n: u32,
    words: Vec<u32>,
}

impl GrayCode {
    pub fn new(n: u32, words: Vec<u32>) -> Result<Self> {
        check_bits(n, 1)?;
        let len = 1usize << n;
        if words.len() != len {
            return Err(Error::Length { expected: len, actual: words.len() });
        }
        let mut first_seen = vec![usize::MAX; len];
        for (position, &word) in words.iter().enumerate() {
            if word as usize >= len {
                return Err(Error::WordRange { position, word: word.into(), n });
            }
            let slot = &mut first_seen[word as usize];
            if *slot != usize::MAX {
                return Err(Error::RepeatedWord { position, first: *slot, word });
            }
            *slot = position;
        }
        for position in 0..len {
            let next = (position + 1) % len;
            let (from, to) = (words[position], words[next]);
            if (from ^ to).count_ones() != 1 {
                return Err(Error::NotAdjacent { position, next, from, to });
            }
        }
        Ok(Self { n, words })
    }

    /// Parses comma-separated decimal codewords; `n` is inferred from the
    /// number of words.
    pub fn parse(text: &str) -> Result<Self> {
        let raw = parse_decimal_list(text)?;
        let n = bits_for_len(raw.len())?;
        let words = raw
            .iter()
            .enumerate()
            .map(|(position, &w)| u32::try_from(w).map_err(|_| Error::WordRange { position, word: w, n }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, words)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn to_transitions(&self) -> TransitionSequence {
        let len = self.words.len();
        let items = (0..len).map(|t| (self.words[t] ^ self.words[(t + 1) % len]).trailing_zeros() + 1).collect();
        TransitionSequence { n: self.n, items }
    }
}

impl fmt::Display for GrayCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_decimal(&self.words))
    }
}

/// Binary-reflected Gray code on `n` bits, starting at 0.
pub fn reflected_gray(n: u32) -> Result<GrayCode> {
    check_bits(n, 1)?;
    let words = (0..1u32 << n).map(|i| i ^ (i >> 1)).collect();
    Ok(GrayCode { n, words })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Balance {
    TotallyBalanced,
    Balanced,
    Unbalanced,
}

impl Balance {
    /// True for both balanced classes.
    pub fn is_balanced(self) -> bool {
        !matches!(self, Balance::Unbalanced)
    }
}

impl fmt::Display for Balance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Balance::TotallyBalanced => "totally balanced",
            Balance::Balanced => "balanced",
            Balance::Unbalanced => "unbalanced",
        })
    }
}

/// Number of occurrences of each transition index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TransitionCount {
    n: u32,
    counts: Vec<usize>,
}

impl TransitionCount {
    /// Builds a count table directly. Counts must sum to `2^n` and be even.
    pub fn from_counts(n: u32, counts: Vec<usize>) -> Result<Self> {
        check_bits(n, 1)?;
        if counts.len() != n as usize {
            return Err(Error::Length { expected: n as usize, actual: counts.len() });
        }
        let total: usize = counts.iter().sum();
        if total != 1usize << n {
            return Err(Error::Parameter(format!("counts sum to {total}, expected {}", 1usize << n)));
        }
        if let Some(pos) = counts.iter().position(|c| c % 2 != 0) {
            return Err(Error::Parameter(format!("count for index {} is odd", pos + 1)));
        }
        Ok(Self { n, counts })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Count for the 1-based transition index `i`.
    pub fn get(&self, i: u32) -> usize {
        self.counts[i as usize - 1]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn classify(&self) -> Balance {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        let min = self.counts.iter().copied().min().unwrap_or(0);
        if max == min && max * self.n as usize == 1usize << self.n {
            Balance::TotallyBalanced
        } else if max - min <= 2 {
            Balance::Balanced
        } else {
            Balance::Unbalanced
        }
    }
}

pub fn classify_balance(tc: &TransitionCount) -> Balance {
    tc.classify()
}

/// Largest even `l` with `l <= 2^n / n`.
pub fn choose_l(n: u32) -> Result<usize> {
    check_bits(n, 4)?;
    let q = (1usize << n) / n as usize;
    Ok(q & !1)
}

/// A split of an `(n-2)`-bit transition sequence into `l` special elements
/// `s_{i_1}, ..., s_{i_l}` (with `i_1 = 1`, `i_2 = 2`), the blocks
/// `u_0 .. u_{l-2}` between consecutive special elements, and the tail `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<'a> {
    base: &'a TransitionSequence,
    special: Vec<usize>,
}

impl<'a> Decomposition<'a> {
    /// `special` holds the 1-based positions `i_1 < ... < i_l`.
    pub fn new(base: &'a TransitionSequence, special: Vec<usize>) -> Result<Self> {
        let l = special.len();
        if l < 2 || !l.is_multiple_of(2) {
            return Err(Error::Decomposition(format!("l = {l} must be even and at least 2")));
        }
        if special[0] != 1 || special[1] != 2 {
            return Err(Error::Decomposition("the first two special positions must be 1 and 2".into()));
        }
        if let Some((a, b)) = special.iter().tuple_windows().find(|(a, b)| a >= b) {
            return Err(Error::Decomposition(format!("positions {a} and {b} are not increasing")));
        }
        if special[l - 1] > base.len() {
            return Err(Error::Decomposition(format!(
                "position {} exceeds base length {}",
                special[l - 1],
                base.len()
            )));
        }
        Ok(Self { base, special })
    }

    pub fn base(&self) -> &TransitionSequence {
        self.base
    }

    pub fn l(&self) -> usize {
        self.special.len()
    }

    pub fn special_indices(&self) -> &[usize] {
        &self.special
    }

    /// Blocks `u_0 .. u_{l-2}`; `u_0` is always empty.
    pub fn blocks(&self) -> Vec<&'a [u32]> {
        let items = self.base.items();
        self.special.iter().tuple_windows().map(|(&a, &b)| &items[a..b - 1]).collect()
    }

    pub fn tail(&self) -> &'a [u32] {
        &self.base.items()[*self.special.last().unwrap()..]
    }

    /// Concatenates special elements, blocks and tail back into a sequence.
    pub fn reassemble(&self) -> Vec<u32> {
        let items = self.base.items();
        let mut out = Vec::with_capacity(items.len());
        let blocks = self.blocks();
        for (k, &pos) in self.special.iter().enumerate() {
            out.push(items[pos - 1]);
            if let Some(block) = blocks.get(k) {
                out.extend_from_slice(block);
            }
        }
        out.extend_from_slice(self.tail());
        out
    }
}

/// Iterator over every decomposition of a base with a fixed `l`, in
/// lexicographic order of `(i_3, ..., i_l)`.
pub struct Decompositions<'a> {
    base: &'a TransitionSequence,
    inner: itertools::Combinations<std::ops::RangeInclusive<usize>>,
}

impl<'a> Iterator for Decompositions<'a> {
    type Item = Decomposition<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        let chosen = self.inner.next()?;
        let mut special = Vec::with_capacity(chosen.len() + 2);
        special.extend([1, 2]);
        special.extend(chosen);
        Some(Decomposition { base: self.base, special })
    }
}

pub fn enumerate_decompositions(base: &TransitionSequence, l: usize) -> Result<Decompositions<'_>> {
    let base_len = base.len();
    if l < 2 || !l.is_multiple_of(2) {
        return Err(Error::InfeasibleL { l, base_len, reason: "l must be even and at least 2" });
    }
    if l > base_len {
        return Err(Error::InfeasibleL { l, base_len, reason: "more special elements than the base holds" });
    }
    Ok(Decompositions { base, inner: (3..=base_len).combinations(l - 2) })
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

fn sum_decompositions(n: u32, first_half_l: u64) -> Result<BigUint> {
    check_bits(n, 4)?;
    let pool = (1u64 << (n - 2)) - 2;
    Ok((first_half_l..=1u64 << (n - 3)).map(|lh| binomial(pool, 2 * lh - 2)).sum())
}

/// Number of decompositions over all even `l`, summing `C(2^(n-2)-2, 2l'-2)`
/// for `l' = 1 ..= 2^(n-3)`.
pub fn count_all_decompositions(n: u32) -> Result<BigUint> {
    sum_decompositions(n, 1)
}

/// Same sum without the degenerate `l = 2` term. This is the variant that
/// agrees with the published count table.
pub fn count_all_decompositions_excluding_l2(n: u32) -> Result<BigUint> {
    sum_decompositions(n, 2)
}

/// Number of decompositions with `l = choose_l(n)`.
pub fn count_fixed_l_decompositions(n: u32) -> Result<BigUint> {
    let l = choose_l(n)? as u64;
    Ok(binomial((1u64 << (n - 2)) - 2, l - 2))
}

fn reversed(block: &[u32]) -> impl Iterator<Item = u32> + '_ {
    block.iter().rev().copied()
}

/// Construction B: lifts a decomposition of an `(n-2)`-bit sequence to an
/// `n`-bit cyclic Gray code whose two new indices each occur exactly `l`
/// times.
pub fn construction_b(d: &Decomposition<'_>) -> Result<TransitionSequence> {
    let base = d.base().items();
    let n = d.base().n() + 2;
    let (hi, top) = (n - 1, n);
    let blocks = d.blocks();
    let tail = d.tail();

    // U: the base with u_0 replaced by n-1 and u_k by u_k, x, u_k^R, y, u_k.
    let mut u_seq = Vec::with_capacity(1 << n);
    for (k, &pos) in d.special_indices().iter().enumerate() {
        u_seq.push(base[pos - 1]);
        let Some(block) = blocks.get(k) else { break };
        if k == 0 {
            u_seq.push(hi);
            continue;
        }
        let (x, y) = if k % 2 == 1 { (hi, top) } else { (top, hi) };
        u_seq.extend_from_slice(block);
        u_seq.push(x);
        u_seq.extend(reversed(block));
        u_seq.push(y);
        u_seq.extend_from_slice(block);
    }
    u_seq.extend_from_slice(tail);

    let mut items = Vec::with_capacity(1 << n);
    items.extend(reversed(&u_seq));
    // V = v^R, n, v
    items.extend(reversed(tail));
    items.push(top);
    items.extend_from_slice(tail);
    // W' = s_1, n-1, s_2 .. s_last, n
    items.push(base[0]);
    items.push(hi);
    items.extend_from_slice(&base[1..]);
    items.push(top);

    let seq = TransitionSequence::new(n, items).map_err(|e| Error::Construction(e.to_string()))?;
    let tc = seq.transition_count();
    let l = d.l();
    if tc.get(hi) != l || tc.get(top) != l {
        return Err(Error::Construction(format!(
            "new indices occur {} and {} times, expected {l}",
            tc.get(hi),
            tc.get(top)
        )));
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedCandidate {
    #[serde(serialize_with = "serialize_items")]
    pub sequence: TransitionSequence,
    pub counts: TransitionCount,
    pub balance: Balance,
}

fn serialize_items<S: serde::Serializer>(seq: &TransitionSequence, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(seq.items())
}

#[derive(Debug, Clone, Copy)]
pub struct GenerateOptions {
    /// Maximum number of decompositions examined across all base codes.
    pub limit: Option<usize>,
    /// Worker threads; 1 runs inline.
    pub jobs: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        Self { limit: None, jobs: 1 }
    }
}

const CHUNK: usize = 2048;

/// Runs the induction for `n` in `4..=8`: seed codes are the reflected codes
/// on 2 or 3 bits, intermediate levels reuse the balanced codes found at
/// `n-2`. Every decomposition with `l = choose_l(n)` is lifted, balanced
/// results are kept, and duplicates dropped. Output order follows the
/// decomposition order and does not depend on `jobs`.
pub fn generate_balanced(n: u32, opts: GenerateOptions) -> Result<Vec<BalancedCandidate>> {
    if !(4..=8).contains(&n) {
        return Err(Error::BitCount { n, min: 4, max: 8 });
    }
    let bases: Vec<TransitionSequence> = if n - 2 <= 3 {
        vec![reflected_gray(n - 2)?.to_transitions()]
    } else {
        generate_balanced(n - 2, opts)?.into_iter().map(|c| c.sequence).collect()
    };
    let l = choose_l(n)?;

    let mut work = Vec::new();
    for base in &bases {
        work.push(enumerate_decompositions(base, l)?);
    }
    let mut decomps = work.into_iter().flatten().take(opts.limit.unwrap_or(usize::MAX));

    let pool = if opts.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::Parameter(e.to_string()))?,
        )
    } else {
        None
    };

    let lift = |d: &Decomposition<'_>| -> Result<Option<BalancedCandidate>> {
        let sequence = construction_b(d)?;
        let counts = sequence.transition_count();
        let balance = counts.classify();
        Ok(balance.is_balanced().then_some(BalancedCandidate { sequence, counts, balance }))
    };

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let chunk: Vec<Decomposition<'_>> = decomps.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let lifted: Vec<Result<Option<BalancedCandidate>>> = match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(lift).collect()),
            None => chunk.iter().map(lift).collect(),
        };
        for cand in lifted {
            if let Some(cand) = cand? {
                if seen.insert(cand.sequence.items().to_vec()) {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(items: &[u32]) -> TransitionSequence {
        TransitionSequence::parse(&join_decimal(items)).unwrap()
    }

    const L_STAR: [u32; 8] = [0b000, 0b100, 0b101, 0b001, 0b011, 0b111, 0b110, 0b010];
    const S_STAR: [u32; 8] = [3, 1, 3, 2, 3, 1, 3, 2];
    const S_FOUR: [u32; 16] = [2, 3, 4, 1, 4, 3, 2, 3, 1, 4, 1, 3, 2, 1, 2, 4];

    #[test]
    fn reflected_small() {
        assert_eq!(reflected_gray(1).unwrap().words(), &[0, 1]);
        assert_eq!(reflected_gray(2).unwrap().to_transitions().items(), &[1, 2, 1, 2]);
        let g3 = reflected_gray(3).unwrap();
        assert!(GrayCode::new(3, g3.words().to_vec()).is_ok());
        assert!(matches!(reflected_gray(0), Err(Error::BitCount { .. })));
    }

    #[test]
    fn l_star_round_trip() {
        let code = GrayCode::new(3, L_STAR.to_vec()).unwrap();
        let s = code.to_transitions();
        assert_eq!(s.items(), &S_STAR);
        assert_eq!(s.to_gray(0).unwrap(), code);
        let single = TransitionSequence::new(1, vec![1, 1]).unwrap();
        assert_eq!(single.to_gray(0).unwrap().words(), &[0, 1]);
    }

    #[test]
    fn invalid_inputs_name_first_violation() {
        assert_eq!(
            GrayCode::new(2, vec![0, 1, 1, 2]).unwrap_err(),
            Error::RepeatedWord { position: 2, first: 1, word: 1 }
        );
        assert_eq!(
            GrayCode::new(2, vec![0, 3, 1, 2]).unwrap_err(),
            Error::NotAdjacent { position: 0, next: 1, from: 0, to: 3 }
        );
        // 1,1 returns to 0 after two steps.
        assert_eq!(
            TransitionSequence::new(2, vec![1, 1, 2, 2]).unwrap_err(),
            Error::RepeatedWord { position: 2, first: 0, word: 0 }
        );
        assert_eq!(
            TransitionSequence::new(2, vec![1, 3, 1, 2]).unwrap_err(),
            Error::TransitionIndex { position: 1, index: 3, n: 2 }
        );
        assert!(TransitionSequence::parse("1,2,1").is_err());
    }

    #[test]
    fn transition_counts_and_balance() {
        let tc = seq(&S_STAR).transition_count();
        assert_eq!(tc.counts(), &[2, 2, 4]);
        assert_eq!(tc.classify(), Balance::Balanced);

        let tc4 = seq(&S_FOUR).transition_count();
        assert_eq!(tc4.counts(), &[4, 4, 4, 4]);
        assert_eq!(classify_balance(&tc4), Balance::TotallyBalanced);
        assert!(tc4.classify().is_balanced());

        let lopsided = TransitionCount::from_counts(4, vec![2, 2, 2, 10]).unwrap();
        assert_eq!(lopsided.classify(), Balance::Unbalanced);

        assert_eq!(TransitionSequence::new(1, vec![1, 1]).unwrap().transition_count().counts(), &[2]);
    }

    #[test]
    fn l_choice() {
        assert_eq!(choose_l(4).unwrap(), 4);
        assert_eq!(choose_l(5).unwrap(), 6);
        assert_eq!(choose_l(6).unwrap(), 10);
        assert_eq!(choose_l(7).unwrap(), 18);
        assert_eq!(choose_l(8).unwrap(), 32);
        assert!(choose_l(3).is_err());
    }

    #[test]
    fn decomposition_counts() {
        let s2 = reflected_gray(2).unwrap().to_transitions();
        let ds: Vec<_> = enumerate_decompositions(&s2, 4).unwrap().collect();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].special_indices(), &[1, 2, 3, 4]);

        let s3 = reflected_gray(3).unwrap().to_transitions();
        assert_eq!(enumerate_decompositions(&s3, 6).unwrap().count(), 15);

        let s4 = seq(&S_FOUR);
        assert_eq!(enumerate_decompositions(&s4, 10).unwrap().count(), 3003);

        assert!(enumerate_decompositions(&s2, 3).is_err());
        assert!(enumerate_decompositions(&s2, 6).is_err());
    }

    #[test]
    fn decompositions_are_lexicographic_and_reassemble() {
        let s3 = reflected_gray(3).unwrap().to_transitions();
        let all: Vec<Vec<usize>> = enumerate_decompositions(&s3, 4)
            .unwrap()
            .map(|d| {
                assert_eq!(d.reassemble(), s3.items());
                assert!(d.blocks()[0].is_empty());
                d.special_indices().to_vec()
            })
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.first().unwrap(), &vec![1, 2, 3, 4]);
        assert_eq!(all.last().unwrap(), &vec![1, 2, 7, 8]);
    }

    #[test]
    fn decomposition_rejects_bad_specials() {
        let s3 = reflected_gray(3).unwrap().to_transitions();
        assert!(Decomposition::new(&s3, vec![1, 3, 4, 5]).is_err());
        assert!(Decomposition::new(&s3, vec![1, 2, 5, 4]).is_err());
        assert!(Decomposition::new(&s3, vec![1, 2, 3]).is_err());
        assert!(Decomposition::new(&s3, vec![1, 2, 3, 9]).is_err());
        let d = Decomposition::new(&s3, vec![1, 2, 4, 7]).unwrap();
        assert_eq!(d.blocks(), vec![&[][..], &[1][..], &[1, 2][..]]);
        assert_eq!(d.tail(), &[3]);
    }

    #[test]
    fn counting_matches_binomials() {
        assert_eq!(count_fixed_l_decompositions(4).unwrap(), 1u32.into());
        assert_eq!(count_fixed_l_decompositions(5).unwrap(), 15u32.into());
        assert_eq!(count_fixed_l_decompositions(6).unwrap(), 3003u32.into());
        assert_eq!(count_fixed_l_decompositions(7).unwrap(), 145_422_675u32.into());
        // Sum over even subsets of an m-set is 2^(m-1).
        assert_eq!(count_all_decompositions(4).unwrap(), 2u32.into());
        assert_eq!(count_all_decompositions(5).unwrap(), 32u32.into());
        assert_eq!(count_all_decompositions(6).unwrap(), 8192u32.into());
        assert_eq!(count_all_decompositions_excluding_l2(4).unwrap(), 1u32.into());
        assert_eq!(count_all_decompositions_excluding_l2(5).unwrap(), 31u32.into());
        assert_eq!(count_all_decompositions_excluding_l2(6).unwrap(), 8191u32.into());
        assert_eq!(binomial(62, 30), "450883717216034179".parse().unwrap());
    }

    #[test]
    fn construction_b_on_two_bit_seed_gives_the_totally_balanced_four_bit_code() {
        let s2 = reflected_gray(2).unwrap().to_transitions();
        let d = Decomposition::new(&s2, vec![1, 2, 3, 4]).unwrap();
        let s4 = construction_b(&d).unwrap();
        assert_eq!(s4.items(), &S_FOUR);
        assert_eq!(s4.transition_count().classify(), Balance::TotallyBalanced);
    }

    #[test]
    fn construction_b_contract_over_every_decomposition() {
        for (base, n) in [(reflected_gray(3).unwrap().to_transitions(), 5), (seq(&S_FOUR), 6)] {
            for l in (2..=base.len()).step_by(2) {
                for d in enumerate_decompositions(&base, l).unwrap().take(500) {
                    let out = construction_b(&d).unwrap();
                    let tc = out.transition_count();
                    assert_eq!(out.len(), 1 << n);
                    assert_eq!(tc.counts().iter().sum::<usize>(), 1 << n);
                    assert!(tc.counts().iter().all(|c| c % 2 == 0));
                    assert_eq!((tc.get(n - 1), tc.get(n)), (l, l));
                }
            }
        }
    }

    #[test]
    fn generator_counts_small() {
        let four = generate_balanced(4, GenerateOptions::default()).unwrap();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].balance, Balance::TotallyBalanced);

        let five = generate_balanced(5, GenerateOptions::default()).unwrap();
        assert_eq!(five.len(), 2);
        assert!(five.iter().all(|c| c.balance == Balance::Balanced));

        assert!(generate_balanced(3, GenerateOptions::default()).is_err());
        assert!(generate_balanced(9, GenerateOptions::default()).is_err());
    }

    #[test]
    fn generator_is_independent_of_jobs() {
        let one = generate_balanced(6, GenerateOptions { limit: Some(1000), jobs: 1 }).unwrap();
        let four = generate_balanced(6, GenerateOptions { limit: Some(1000), jobs: 4 }).unwrap();
        assert_eq!(one, four);
        assert!(!one.is_empty());
    }

    #[test]
    fn text_round_trip() {
        let s = seq(&S_FOUR);
        assert_eq!(TransitionSequence::parse(&s.to_string()).unwrap(), s);
        let g = GrayCode::new(3, L_STAR.to_vec()).unwrap();
        assert_eq!(g.to_string(), "0,4,5,1,3,7,6,2");
        assert_eq!(GrayCode::parse(&g.to_string()).unwrap(), g);
    }
}
