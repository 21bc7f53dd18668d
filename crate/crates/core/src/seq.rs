//! Sequences over `{0,…,k}`, their statistics and the component structure.
//!
//! Positions are 1-indexed throughout, matching the ground set `[n]`.

use std::collections::BTreeSet;
use std::fmt;

use crate::count::{binomial, checked_binomial, checked_pow};
use crate::order::{self, ColexSubsets, ReducedWords};
use crate::{Error, Result};

/// A word of length `n` over the alphabet `{0,…,k}`.
///
/// The empty word ε (length 0) is a valid value; it is the only member of
/// `{0,…,k}^0` and shows up as the shadow of length-1 words.
///
/// `Ord` compares the alphabet ceiling, then the length, then the `≤` order,
/// so a `BTreeSet<Sequence>` of one cube iterates in `≤` order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    k: u8,
    entries: Vec<u8>,
}

impl Sequence {
    pub fn new(k: u8, entries: Vec<u8>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroAlphabet);
        }
        if let Some((i, &v)) = entries.iter().enumerate().find(|(_, &v)| v > k) {
            return Err(Error::EntryOutOfRange {
                position: i + 1,
                value: u64::from(v),
                k,
            });
        }
        Ok(Self { k, entries })
    }

    /// Builds a sequence from arbitrary integers, rejecting anything outside `[0, k]`.
    pub fn from_values<I: IntoIterator<Item = u64>>(k: u8, values: I) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroAlphabet);
        }
        let mut entries = Vec::new();
        for (i, v) in values.into_iter().enumerate() {
            if v > u64::from(k) {
                return Err(Error::EntryOutOfRange {
                    position: i + 1,
                    value: v,
                    k,
                });
            }
            entries.push(v as u8);
        }
        Ok(Self { k, entries })
    }

    /// Parses the compact notation used in examples: `"00121"` is the word
    /// 0,0,1,2,1. Separators (`,` or whitespace) switch to one integer per
    /// token, which is needed once `k ≥ 10`. `""` and `"ε"` denote ε.
    pub fn parse(k: u8, text: &str) -> Result<Self> {
        Self::from_values(k, parse_word(text)?)
    }

    pub(crate) fn from_raw(k: u8, entries: Vec<u8>) -> Self {
        debug_assert!(k >= 1 && entries.iter().all(|&v| v <= k));
        Self { k, entries }
    }

    pub fn empty(k: u8) -> Result<Self> {
        Self::new(k, Vec::new())
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Entry at 1-indexed position `i`.
    pub fn get(&self, i: usize) -> Option<u8> {
        i.checked_sub(1).and_then(|j| self.entries.get(j).copied())
    }

    /// `|x|`, the sum of the entries.
    pub fn rank(&self) -> u64 {
        self.entries.iter().map(|&v| u64::from(v)).sum()
    }

    /// `w(x)`: the number of zero coordinates.
    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v == 0).count()
    }

    /// `v_r(x)`: the number of coordinates in `{0,…,r}`.
    pub fn low_count(&self, r: u8) -> usize {
        self.entries.iter().filter(|&&v| v <= r).count()
    }

    /// `R_r(x) = {i : x_i = r}`.
    pub fn positions_of(&self, value: u8) -> PositionSet {
        PositionSet {
            n: self.len(),
            elems: self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == value)
                .map(|(i, _)| i + 1)
                .collect(),
        }
    }

    /// `R(x) = R_0(x)`.
    pub fn zero_positions(&self) -> PositionSet {
        self.positions_of(0)
    }

    pub fn stats(&self) -> SequenceStats {
        let mut value_counts = vec![0usize; usize::from(self.k) + 1];
        for &v in &self.entries {
            value_counts[usize::from(v)] += 1;
        }
        SequenceStats {
            n: self.len(),
            rank: self.rank(),
            value_counts,
        }
    }

    /// `re(x)`: drop every zero, keeping the order of the rest.
    pub fn reduced(&self) -> ReducedWord {
        ReducedWord {
            k: self.k,
            entries: self.entries.iter().copied().filter(|&v| v != 0).collect(),
        }
    }

    /// Deletes the coordinate at 1-indexed position `i`.
    pub fn delete(&self, i: usize) -> Sequence {
        let mut entries = Vec::with_capacity(self.len().saturating_sub(1));
        entries.extend_from_slice(&self.entries[..i - 1]);
        entries.extend_from_slice(&self.entries[i..]);
        Sequence { k: self.k, entries }
    }

    pub fn reversed(&self) -> Sequence {
        let mut entries = self.entries.clone();
        entries.reverse();
        Sequence { k: self.k, entries }
    }

    /// Component of `{0,…,k}^n` containing this sequence.
    pub fn component(&self) -> Component {
        Component {
            label: self.reduced(),
            n: self.len(),
        }
    }
}

impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.k
            .cmp(&other.k)
            .then(self.len().cmp(&other.len()))
            .then_with(|| order::leq_cmp_unchecked(&self.entries, &other.entries))
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.k, &self.entries)
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, k: u8, entries: &[u8]) -> fmt::Result {
    if entries.is_empty() {
        return f.write_str("ε");
    }
    if k <= 9 {
        for v in entries {
            write!(f, "{v}")?;
        }
    } else {
        for (i, v) in entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
    }
    Ok(())
}

fn parse_word(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() || text == "ε" || text == "-" {
        return Ok(Vec::new());
    }
    let bad = |tok: &str| Error::InvalidParameter(format!("cannot parse word entry {tok:?}"));
    if text.contains(|c: char| c == ',' || c.is_whitespace()) {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| bad(t)))
            .collect()
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(u64::from)
                    .ok_or_else(|| bad(&c.to_string()))
            })
            .collect()
    }
}

/// Derived counts of a sequence: rank, `w_r` for every value and `v_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceStats {
    pub n: usize,
    pub rank: u64,
    /// `value_counts[r] = w_r(x)`.
    pub value_counts: Vec<usize>,
}

impl SequenceStats {
    pub fn zero_count(&self) -> usize {
        self.value_counts[0]
    }

    /// `v_r(x) = w_0(x) + … + w_r(x)`; saturates at `n` for `r ≥ k`.
    pub fn low_count(&self, r: u8) -> usize {
        self.value_counts
            .iter()
            .take(usize::from(r) + 1)
            .sum()
    }
}

/// A zero-free word over `{1,…,k}`; the label of a component.
///
/// `Ord` is alphabet ceiling, then length, then `≤_c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    k: u8,
    entries: Vec<u8>,
}

impl ReducedWord {
    pub fn new(k: u8, entries: Vec<u8>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroAlphabet);
        }
        for (i, &v) in entries.iter().enumerate() {
            if v == 0 {
                return Err(Error::ZeroInReducedWord { position: i + 1 });
            }
            if v > k {
                return Err(Error::EntryOutOfRange {
                    position: i + 1,
                    value: u64::from(v),
                    k,
                });
            }
        }
        Ok(Self { k, entries })
    }

    pub fn parse(k: u8, text: &str) -> Result<Self> {
        let values = parse_word(text)?;
        let mut entries = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            if v > u64::from(k) {
                return Err(Error::EntryOutOfRange {
                    position: i + 1,
                    value: v,
                    k,
                });
            }
            entries.push(v as u8);
        }
        Self::new(k, entries)
    }

    pub(crate) fn from_raw(k: u8, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&v| v >= 1 && v <= k));
        Self { k, entries }
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// `R_i` of the word itself (positions within the reduced word).
    pub fn positions_of(&self, value: u8) -> PositionSet {
        PositionSet {
            n: self.len(),
            elems: self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == value)
                .map(|(i, _)| i + 1)
                .collect(),
        }
    }

    /// The word of length `n` with zeros exactly at `zeros` and this word,
    /// in order, on the remaining positions.
    pub fn expand(&self, zeros: &PositionSet) -> Result<Sequence> {
        let n = zeros.ground_size();
        if zeros.len() + self.len() != n {
            return Err(Error::LengthMismatch {
                left: n - zeros.len(),
                right: self.len(),
            });
        }
        Ok(self.expand_unchecked(n, zeros.elements()))
    }

    pub(crate) fn expand_unchecked(&self, n: usize, zeros: &[usize]) -> Sequence {
        let mut entries = Vec::with_capacity(n);
        let mut z = zeros.iter().peekable();
        let mut rest = self.entries.iter();
        for pos in 1..=n {
            if z.peek() == Some(&&pos) {
                z.next();
                entries.push(0);
            } else {
                entries.push(*rest.next().expect("label shorter than free positions"));
            }
        }
        Sequence::from_raw(self.k, entries)
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.k
            .cmp(&other.k)
            .then(self.len().cmp(&other.len()))
            .then_with(|| order::c_cmp_unchecked(&self.entries, &other.entries, self.k))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.k, &self.entries)
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of the ground set `[n] = {1,…,n}`, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSet {
    n: usize,
    elems: Vec<usize>,
}

impl PositionSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::PositionOutOfRange { element: e, n });
        }
        Ok(Self {
            n,
            elems: set.into_iter().collect(),
        })
    }

    pub(crate) fn from_sorted(n: usize, elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elems.iter().all(|&e| e >= 1 && e <= n));
        Self { n, elems }
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.elems.last().copied()
    }

    /// `[n] \ self`.
    pub fn complement(&self) -> PositionSet {
        let elems = (1..=self.n).filter(|e| !self.contains(*e)).collect();
        PositionSet { n: self.n, elems }
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of sequences of one common length `n` over one alphabet `{0,…,k}`.
///
/// Iteration is in `≤` order, so anything written out is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    k: u8,
    members: BTreeSet<Sequence>,
}

impl Family {
    pub fn new(n: usize, k: u8) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroAlphabet);
        }
        Ok(Self {
            n,
            k,
            members: BTreeSet::new(),
        })
    }

    pub fn from_sequences<I: IntoIterator<Item = Sequence>>(n: usize, k: u8, seqs: I) -> Result<Self> {
        let mut family = Self::new(n, k)?;
        for s in seqs {
            family.insert(s)?;
        }
        Ok(family)
    }

    /// Convenience for tests and examples: `Family::parse(2, &["01", "10"])`.
    pub fn parse(k: u8, words: &[&str]) -> Result<Self> {
        let seqs = words
            .iter()
            .map(|w| Sequence::parse(k, w))
            .collect::<Result<Vec<_>>>()?;
        let n = seqs.first().map_or(0, Sequence::len);
        Self::from_sequences(n, k, seqs)
    }

    pub(crate) fn from_set_unchecked(n: usize, k: u8, members: BTreeSet<Sequence>) -> Self {
        debug_assert!(members.iter().all(|s| s.len() == n && s.k() == k));
        Self { n, k, members }
    }

    /// The whole cube `{0,…,k}^n`.
    pub fn cube(n: usize, k: u8) -> Result<Self> {
        let size = crate::count::cube_size(n, k)?;
        let mut family = Self::new(n, k)?;
        for idx in 0..size {
            family.members.insert(decode_index(n, k, idx));
        }
        Ok(family)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn check_member(&self, s: &Sequence) -> Result<()> {
        if s.len() != self.n || s.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected_n: self.n,
                expected_k: self.k,
                found_n: s.len(),
                found_k: s.k(),
            });
        }
        Ok(())
    }

    /// Inserts `s`; returns whether it was new. Duplicate inserts are no-ops.
    pub fn insert(&mut self, s: Sequence) -> Result<bool> {
        self.check_member(&s)?;
        Ok(self.members.insert(s))
    }

    pub fn remove(&mut self, s: &Sequence) -> bool {
        self.members.remove(s)
    }

    pub fn contains(&self, s: &Sequence) -> bool {
        self.members.contains(s)
    }

    /// Members in ascending `≤` order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Sequence> + ExactSizeIterator + '_ {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Sequence> {
        &self.members
    }

    pub fn into_members(self) -> BTreeSet<Sequence> {
        self.members
    }

    pub fn same_space(&self, other: &Family) -> Result<()> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected_n: self.n,
                expected_k: self.k,
                found_n: other.n,
                found_k: other.k,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_space(other)?;
        let members = self.members.union(&other.members).cloned().collect();
        Ok(Self::from_set_unchecked(self.n, self.k, members))
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.same_space(other)?;
        let members = self.members.difference(&other.members).cloned().collect();
        Ok(Self::from_set_unchecked(self.n, self.k, members))
    }

    pub fn is_subset(&self, other: &Family) -> bool {
        self.n == other.n && self.k == other.k && self.members.is_subset(&other.members)
    }

    /// Members whose reduced word is `label`.
    pub fn restrict_to(&self, label: &ReducedWord) -> Family {
        let members = self
            .members
            .iter()
            .filter(|s| s.entries().iter().filter(|&&v| v != 0).eq(label.entries().iter()))
            .cloned()
            .collect();
        Self::from_set_unchecked(self.n, self.k, members)
    }

    /// Number of members with exactly `i` zeros.
    pub fn level_count(&self, i: usize) -> usize {
        self.members.iter().filter(|s| s.zero_count() == i).count()
    }

    pub fn reversed(&self) -> Family {
        let members = self.members.iter().map(Sequence::reversed).collect();
        Self::from_set_unchecked(self.n, self.k, members)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, k={}) ", self.n, self.k)?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Sequence;
    type IntoIter = std::collections::btree_set::Iter<'a, Sequence>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Sequence with base-`(k+1)` index `idx`, first coordinate most significant.
pub fn decode_index(n: usize, k: u8, mut idx: u64) -> Sequence {
    let base = u64::from(k) + 1;
    let mut entries = vec![0u8; n];
    for slot in entries.iter_mut().rev() {
        *slot = (idx % base) as u8;
        idx /= base;
    }
    Sequence::from_raw(k, entries)
}

/// Inverse of [`decode_index`].
pub fn encode_index(s: &Sequence) -> u64 {
    let base = u64::from(s.k()) + 1;
    s.entries().iter().fold(0u64, |acc, &v| acc * base + u64::from(v))
}

/// Every sequence of `{0,…,k}^n` in index order.
pub fn all_sequences(n: usize, k: u8) -> Result<impl Iterator<Item = Sequence>> {
    let size = crate::count::cube_size(n, k)?;
    Ok((0..size).map(move |i| decode_index(n, k, i)))
}

/// `C_s = {x ∈ {0,…,k}^n : re(x) = s}`.
///
/// Members are produced in colex order of their zero sets, so a prefix of
/// [`Component::members`] is exactly a colex initial segment.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Component {
    pub label: ReducedWord,
    pub n: usize,
}

impl Component {
    pub fn new(label: ReducedWord, n: usize) -> Self {
        Self { label, n }
    }

    /// Number of zeros of every member, `None` when the label is longer than `n`.
    pub fn zero_count(&self) -> Option<usize> {
        self.n.checked_sub(self.label.len())
    }

    /// `|C_s| = C(n, n − len(s))`, zero when the label does not fit.
    pub fn size(&self) -> u64 {
        match self.zero_count() {
            Some(i) => binomial(self.n as u64, i as u64),
            None => 0,
        }
    }

    pub fn contains(&self, x: &Sequence) -> bool {
        x.len() == self.n
            && x.k() == self.label.k()
            && x.entries().iter().filter(|&&v| v != 0).eq(self.label.entries().iter())
    }

    pub fn members(&self) -> Vec<Sequence> {
        self.initial_members(usize::MAX)
    }

    /// The first `q` members in colex order of zero sets.
    pub fn initial_members(&self, q: usize) -> Vec<Sequence> {
        let Some(i) = self.zero_count() else {
            return Vec::new();
        };
        ColexSubsets::new(self.n, i)
            .take(q)
            .map(|zeros| self.label.expand_unchecked(self.n, &zeros))
            .collect()
    }
}

/// All `k^(n−i)` components of level `L_i(n)`, ascending in `≤_c`.
pub fn components(n: usize, k: u8, zero_count: usize) -> Result<Vec<Component>> {
    if k == 0 {
        return Err(Error::ZeroAlphabet);
    }
    if zero_count > n {
        return Err(Error::OutOfRange {
            what: "zero count",
            value: zero_count as u64,
            max: n as u64,
        });
    }
    checked_pow(u64::from(k), n - zero_count)?;
    Ok(ReducedWords::new(n - zero_count, k)?
        .map(|label| Component::new(label, n))
        .collect())
}

/// `|L_i(n)|` for the levels of `v_r`: `C(n,i)·(r+1)^i·(k−r)^(n−i)`.
/// With `r = 0` these are the zero-count levels.
pub fn level_size(n: usize, k: u8, r_del: u8, i: usize) -> Result<u64> {
    if i > n {
        return Ok(0);
    }
    let low = u64::from(r_del) + 1;
    let high = u64::from(k) - u64::from(r_del.min(k));
    let c = checked_binomial(n as u64, i as u64)?;
    c.checked_mul(checked_pow(low, i)?)
        .and_then(|v| v.checked_mul(checked_pow(high, n - i).ok()?))
        .ok_or(Error::Overflow("level size"))
}
