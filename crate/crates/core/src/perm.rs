//! Signed permutations and the pointwise operators on them.
//!
//! A signed permutation of length `n` is written in one-line notation as a
//! sequence of nonzero integers whose absolute values are exactly `1..=n`.
//! All positions in the public API are 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::PermError;

/// An element of the hyperoctahedral group `B_n`, including the empty
/// permutation (ε) for `n = 0`.
///
/// The canonical text form is the entries as signed decimal integers joined
/// by single spaces; ε is the empty string.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedPerm {
    entries: Vec<i32>,
}

/// A word of nonzero signed integers with pairwise distinct absolute values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedWord {
    entries: Vec<i32>,
}

/// Block sizes used to inflate a signed permutation, one per entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct InflationVector {
    sizes: Vec<usize>,
}

fn check_distinct_nonzero(entries: &[i32], bound: Option<usize>) -> Result<(), PermError> {
    let limit = bound.unwrap_or(0);
    let mut seen = std::collections::HashSet::with_capacity(entries.len());
    for (idx, &x) in entries.iter().enumerate() {
        if x == 0 {
            return Err(PermError::ZeroEntry { position: idx + 1 });
        }
        if bound.is_some() && x.unsigned_abs() as usize > limit {
            return Err(PermError::NotStandard {
                value: x,
                len: limit,
            });
        }
        if !seen.insert(x.unsigned_abs()) {
            return Err(PermError::RepeatedValue {
                value: x.unsigned_abs(),
            });
        }
    }
    Ok(())
}

impl SignedWord {
    pub fn new(entries: Vec<i32>) -> Result<Self, PermError> {
        check_distinct_nonzero(&entries, None)?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// The unique signed permutation order-isomorphic to this word.
    pub fn standardize(&self) -> SignedPerm {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_unstable_by_key(|&i| self.entries[i].unsigned_abs());
        let mut out = vec![0; self.entries.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = self.entries[i].signum() * (rank as i32 + 1);
        }
        SignedPerm { entries: out }
    }
}

impl FromStr for SignedWord {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignedWord::new(parse_tokens(s)?)
    }
}

fn parse_tokens(s: &str) -> Result<Vec<i32>, PermError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<i32>().map_err(|_| PermError::InvalidToken {
                token: tok.to_string(),
            })
        })
        .collect()
}

impl SignedPerm {
    /// Validates that `entries` is a signed permutation of `1..=len`.
    pub fn new(entries: Vec<i32>) -> Result<Self, PermError> {
        check_distinct_nonzero(&entries, Some(entries.len()))?;
        Ok(Self { entries })
    }

    /// Caller guarantees the entries form a valid signed permutation.
    pub(crate) fn from_entries_unchecked(entries: Vec<i32>) -> Self {
        debug_assert!(SignedPerm::new(entries.clone()).is_ok(), "{entries:?}");
        Self { entries }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The sorted permutation `1 2 … n`.
    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.entries
    }

    /// Entry at 1-based `position`.
    pub fn get(&self, position: usize) -> Option<i32> {
        position
            .checked_sub(1)
            .and_then(|i| self.entries.get(i).copied())
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as i32 + 1)
    }

    /// Whether `pattern` occurs in `self` as a (not necessarily contiguous)
    /// subsequence with the same relative order of absolute values and the
    /// same signs.
    pub fn contains(&self, pattern: &SignedPerm) -> bool {
        fn search(text: &[i32], pat: &[i32], chosen: &mut Vec<usize>, start: usize) -> bool {
            let j = chosen.len();
            if j == pat.len() {
                return true;
            }
            let p = pat[j];
            let last = text.len() - (pat.len() - j);
            for i in start..=last {
                let x = text[i];
                if (x < 0) != (p < 0) {
                    continue;
                }
                let consistent = chosen.iter().zip(pat).all(|(&c, &q)| {
                    (text[c].unsigned_abs() < x.unsigned_abs())
                        == (q.unsigned_abs() < p.unsigned_abs())
                });
                if consistent {
                    chosen.push(i);
                    if search(text, pat, chosen, i + 1) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }

        if pattern.len() > self.len() {
            return false;
        }
        search(
            &self.entries,
            &pattern.entries,
            &mut Vec::with_capacity(pattern.len()),
            0,
        )
    }

    /// Removes the entry at 1-based `position` and standardizes.
    pub fn delete(&self, position: usize) -> Result<SignedPerm, PermError> {
        self.check_position(position)?;
        let mut out = Vec::with_capacity(self.len() - 1);
        delete_into(&self.entries, position - 1, &mut out);
        Ok(SignedPerm { entries: out })
    }

    /// `π[v]`: entry `i` becomes a same-sign monotone block of `v(i)`
    /// consecutive absolute values (increasing when positive, decreasing when
    /// negative), with blocks keeping the relative order of `|π(i)|`.
    pub fn inflate(&self, v: &InflationVector) -> Result<SignedPerm, PermError> {
        if v.len() != self.len() {
            return Err(PermError::LengthMismatch {
                perm: self.len(),
                vector: v.len(),
            });
        }
        let mut out = Vec::with_capacity(v.total());
        inflate_into(&self.entries, &v.sizes, &mut out, &mut Vec::new());
        Ok(SignedPerm { entries: out })
    }

    /// No two adjacent entries with `π(i+1) − π(i) = 1`, i.e. no interval
    /// patterned `1 2` or `−2 −1`.
    pub fn is_compact(&self) -> bool {
        is_compact_slice(&self.entries)
    }

    /// The unique compact permutation this one fills, with the filling vector.
    pub fn compactify(&self) -> (SignedPerm, InflationVector) {
        let mut heads = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for (i, &x) in self.entries.iter().enumerate() {
            if i > 0 && x - self.entries[i - 1] == 1 {
                *sizes.last_mut().expect("run started") += 1;
            } else {
                heads.push(x);
                sizes.push(1);
            }
        }
        let core = SignedWord { entries: heads }.standardize();
        (core, InflationVector { sizes })
    }

    /// `f_i`: reverse the first `i` entries and flip their signs.
    pub fn prefix_reversal(&self, i: usize) -> Result<SignedPerm, PermError> {
        self.check_position(i)?;
        let mut out = self.entries.clone();
        flip_range(&mut out, 0, i);
        Ok(SignedPerm { entries: out })
    }

    /// `b_{i,j}`: reverse entries `i..=j` and flip their signs.
    pub fn block_reversal(&self, i: usize, j: usize) -> Result<SignedPerm, PermError> {
        if i == 0 || i > j || j > self.len() {
            return Err(PermError::InvalidRange {
                start: i,
                end: j,
                len: self.len(),
            });
        }
        let mut out = self.entries.clone();
        flip_range(&mut out, i - 1, j);
        Ok(SignedPerm { entries: out })
    }

    fn check_position(&self, position: usize) -> Result<(), PermError> {
        if position == 0 || position > self.len() {
            return Err(PermError::PositionOutOfRange {
                position,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// ε renders as `ε`, everything else in canonical form.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }
}

/// Reverses `buf[start..end]` and negates every entry in it.
pub(crate) fn flip_range(buf: &mut [i32], start: usize, end: usize) {
    let slice = &mut buf[start..end];
    slice.reverse();
    for x in slice {
        *x = -*x;
    }
}

/// Writes `src[sizes]` into `out`; `offsets` is reused working storage.
pub(crate) fn inflate_into(
    src: &[i32],
    sizes: &[usize],
    out: &mut Vec<i32>,
    offsets: &mut Vec<i32>,
) {
    // offsets[a - 1] = number of values allotted to entries with |x| < a
    offsets.clear();
    offsets.resize(src.len(), 0);
    for (&x, &size) in src.iter().zip(sizes) {
        offsets[x.unsigned_abs() as usize - 1] = size as i32;
    }
    let mut acc = 0;
    for slot in offsets.iter_mut() {
        let size = *slot;
        *slot = acc;
        acc += size;
    }
    out.clear();
    for (&x, &size) in src.iter().zip(sizes) {
        let base = offsets[x.unsigned_abs() as usize - 1];
        if x > 0 {
            out.extend((1..=size as i32).map(|t| base + t));
        } else {
            out.extend((1..=size as i32).rev().map(|t| -(base + t)));
        }
    }
}

pub(crate) fn is_compact_slice(entries: &[i32]) -> bool {
    entries.windows(2).all(|w| w[1] - w[0] != 1)
}

/// Writes `src` with index `idx` (0-based) removed, standardized, into `out`.
pub(crate) fn delete_into(src: &[i32], idx: usize, out: &mut Vec<i32>) {
    let gone = src[idx].unsigned_abs();
    out.clear();
    out.extend(
        src.iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, &x)| {
                if x.unsigned_abs() > gone {
                    x - x.signum()
                } else {
                    x
                }
            }),
    );
}

/// Replaces `buf` by its compact core (the permutation it fills).
/// `scratch` is reused working storage.
pub(crate) fn reduce_to_core(buf: &mut Vec<i32>, scratch: &mut Vec<u32>) {
    scratch.clear();
    let mut kept = 0;
    let mut prev = None;
    for r in 0..buf.len() {
        let x = buf[r];
        match prev {
            Some(p) if x - p == 1 => scratch.push(x.unsigned_abs()),
            _ => {
                buf[kept] = x;
                kept += 1;
            }
        }
        prev = Some(x);
    }
    if scratch.is_empty() {
        return;
    }
    buf.truncate(kept);
    for x in buf.iter_mut() {
        let a = x.unsigned_abs();
        let shift = scratch.iter().filter(|&&b| b < a).count() as i32;
        *x -= x.signum() * shift;
    }
}

/// Shortlex order: shorter first, then entrywise by absolute value with a
/// positive entry before its negative.
impl Ord for SignedPerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let key = |x: &i32| (x.unsigned_abs(), *x < 0);
            self.entries
                .iter()
                .map(key)
                .cmp(other.entries.iter().map(key))
        })
    }
}

impl PartialOrd for SignedPerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.entries)
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm[{}]", self.pretty())
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl FromStr for SignedPerm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignedPerm::new(parse_tokens(s)?)
    }
}

impl TryFrom<Vec<i32>> for SignedPerm {
    type Error = PermError;

    fn try_from(entries: Vec<i32>) -> Result<Self, Self::Error> {
        SignedPerm::new(entries)
    }
}

impl From<SignedPerm> for SignedWord {
    fn from(p: SignedPerm) -> Self {
        SignedWord { entries: p.entries }
    }
}

impl InflationVector {
    pub fn new(sizes: Vec<usize>) -> Self {
        Self { sizes }
    }

    /// Rejects negative components.
    pub fn from_signed(components: &[i64]) -> Result<Self, PermError> {
        components
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                usize::try_from(c).map_err(|_| PermError::NegativeComponent {
                    position: i + 1,
                    value: c,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    /// The all-ones vector `𝟏`.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![1; len])
    }

    /// The standard basis vector `e_i` (1-based `i`).
    pub fn unit(len: usize, i: usize) -> Result<Self, PermError> {
        if i == 0 || i > len {
            return Err(PermError::PositionOutOfRange { position: i, len });
        }
        let mut sizes = vec![0; len];
        sizes[i - 1] = 1;
        Ok(Self::new(sizes))
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Sum of all components, the length of any inflation by this vector.
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// All components positive.
    pub fn is_filling(&self) -> bool {
        self.sizes.iter().all(|&s| s > 0)
    }

    /// Sum of the first `count` components.
    pub fn prefix_sum(&self, count: usize) -> usize {
        self.sizes[..count].iter().sum()
    }

    /// Reverses components `i..=j` (1-based), the action of a reversal on
    /// block sizes.
    pub(crate) fn reverse_range(&mut self, i: usize, j: usize) {
        self.sizes[i - 1..j].reverse();
    }
}

impl std::ops::Add for &InflationVector {
    type Output = InflationVector;

    fn add(self, rhs: &InflationVector) -> InflationVector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        InflationVector::new(
            self.sizes
                .iter()
                .zip(&rhs.sizes)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Display for InflationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.sizes)
    }
}

impl FromStr for InflationVector {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let comps = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| PermError::InvalidToken {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        InflationVector::from_signed(&comps)
    }
}
