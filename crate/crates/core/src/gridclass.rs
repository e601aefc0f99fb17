//! Completion and compacting: from a finite generating set to the compact
//! class representatives and their length histogram.
//!
//! Every member of `Grid(Π)` fills exactly one compact permutation, in
//! exactly one way, and the compact permutations below `Π` are closed under
//! taking compact cores of deletions. The closure here therefore walks only
//! compact permutations: each single-entry deletion is immediately reduced to
//! the compact core it fills. Layers are processed from the longest length
//! down, with one sorted, deduplicated set per length shared by the whole
//! input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::io::BufRead;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::packed::{Packed, PermKey, PACKED_MAX_LEN};
use crate::perm::{delete_into, reduce_to_core, SignedPerm};
use crate::polynomial::Polynomial;

const CHUNK: usize = 1 << 13;

/// A set of signed permutations, iterated in shortlex order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PermSet {
    members: BTreeSet<SignedPerm>,
}

impl PermSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(perm: SignedPerm) -> Self {
        std::iter::once(perm).collect()
    }

    pub fn insert(&mut self, perm: SignedPerm) -> bool {
        self.members.insert(perm)
    }

    pub fn contains(&self, perm: &SignedPerm) -> bool {
        self.members.contains(perm)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignedPerm> + '_ {
        self.members.iter()
    }

    pub fn max_len(&self) -> usize {
        self.members.iter().map(SignedPerm::len).max().unwrap_or(0)
    }

    /// One canonical permutation per line in shortlex order; ε (if present)
    /// is the leading empty line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for perm in &self.members {
            out.push_str(&perm.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the line format written by [`PermSet::to_lines`].
    ///
    /// Lines starting with `#` are comments. An empty first data line is ε;
    /// empty lines anywhere else are rejected, except trailing ones.
    pub fn parse_lines<R: BufRead>(reader: R) -> Result<PermSet> {
        let mut set = PermSet::new();
        let mut data_lines = 0usize;
        let mut pending_blank: Option<usize> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::Format {
                line: line_no,
                reason: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if trimmed.is_empty() {
                if data_lines == 0 {
                    set.insert(SignedPerm::empty());
                    data_lines += 1;
                } else if pending_blank.is_none() {
                    pending_blank = Some(line_no);
                }
                continue;
            }
            if let Some(blank) = pending_blank {
                return Err(Error::Format {
                    line: blank,
                    reason: "empty line (ε) is only allowed as the first entry".into(),
                });
            }
            let perm = trimmed
                .parse::<SignedPerm>()
                .map_err(|source| Error::Line {
                    line: line_no,
                    source,
                })?;
            set.insert(perm);
            data_lines += 1;
        }
        Ok(set)
    }
}

impl FromIterator<SignedPerm> for PermSet {
    fn from_iter<I: IntoIterator<Item = SignedPerm>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().collect(),
        }
    }
}

impl Extend<SignedPerm> for PermSet {
    fn extend<I: IntoIterator<Item = SignedPerm>>(&mut self, iter: I) {
        self.members.extend(iter)
    }
}

impl<'a> IntoIterator for &'a PermSet {
    type Item = &'a SignedPerm;
    type IntoIter = std::collections::btree_set::Iter<'a, SignedPerm>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for PermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.members.iter().map(SignedPerm::pretty))
            .finish()
    }
}

/// Number of compact class representatives of each positive length, plus
/// whether ε is among them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthHistogram {
    counts: BTreeMap<usize, u64>,
    has_epsilon: bool,
}

impl LengthHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Zero counts and a zero length (which would be ε) are ignored.
    pub fn from_counts<I: IntoIterator<Item = (usize, u64)>>(counts: I, has_epsilon: bool) -> Self {
        let mut h = Self {
            counts: BTreeMap::new(),
            has_epsilon,
        };
        for (m, c) in counts {
            h.add(m, c);
        }
        h
    }

    pub fn add(&mut self, length: usize, count: u64) {
        if length == 0 {
            self.has_epsilon |= count > 0;
        } else if count > 0 {
            *self.counts.entry(length).or_insert(0) += count;
        }
    }

    pub fn count(&self, length: usize) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn has_epsilon(&self) -> bool {
        self.has_epsilon
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&m, &c)| (m, c))
    }

    /// Number of nonempty representatives.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn max_len(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }
}

/// Hands every layer of the compact closure of `seeds` to `visit`, longest
/// first, each as a sorted, duplicate-free vector of keys of one length.
/// The final call is for length 0 (ε) whenever `seeds` is nonempty.
pub(crate) fn for_each_closure_layer<K, F>(seeds: Vec<K>, mut visit: F)
where
    K: PermKey,
    F: FnMut(usize, Vec<K>),
{
    let Some(max_len) = seeds.iter().map(PermKey::length).max() else {
        return;
    };
    let mut buckets: Vec<Vec<K>> = vec![Vec::new(); max_len + 1];
    let cores: Vec<K> = seeds
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new()),
            |(buf, scratch), key| {
                key.decode_into(buf);
                reduce_to_core(buf, scratch);
                K::encode(buf)
            },
        )
        .collect();
    for key in cores {
        buckets[key.length()].push(key);
    }

    for m in (1..=max_len).rev() {
        let mut layer = std::mem::take(&mut buckets[m]);
        layer.par_sort_unstable();
        layer.dedup();
        let children: Vec<Vec<Vec<K>>> = layer
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut local: Vec<Vec<K>> = vec![Vec::new(); m];
                let mut src = Vec::with_capacity(m);
                let mut buf = Vec::with_capacity(m);
                let mut scratch = Vec::new();
                for key in chunk {
                    key.decode_into(&mut src);
                    for idx in 0..m {
                        delete_into(&src, idx, &mut buf);
                        reduce_to_core(&mut buf, &mut scratch);
                        local[buf.len()].push(K::encode(&buf));
                    }
                }
                for bucket in &mut local {
                    bucket.sort_unstable();
                    bucket.dedup();
                }
                local
            })
            .collect();
        for local in children {
            for (len, keys) in local.into_iter().enumerate() {
                buckets[len].extend(keys);
            }
        }
        visit(m, layer);
    }
    let mut empty = std::mem::take(&mut buckets[0]);
    empty.dedup();
    empty.truncate(1);
    if empty.is_empty() {
        empty.push(K::encode(&[]));
    }
    visit(0, empty);
}

fn with_seeds<R>(
    set: &PermSet,
    packed: impl FnOnce(Vec<Packed>) -> R,
    wide: impl FnOnce(Vec<SignedPerm>) -> R,
) -> R {
    if set.max_len() <= PACKED_MAX_LEN {
        packed(set.iter().map(|p| Packed::encode(p.entries())).collect())
    } else {
        wide(set.iter().cloned().collect())
    }
}

fn collect_closure<K: PermKey>(seeds: Vec<K>) -> PermSet {
    let mut out = PermSet::new();
    for_each_closure_layer(seeds, |_, layer| {
        out.extend(layer.iter().map(PermKey::to_perm));
    });
    out
}

pub(crate) fn histogram_of_closure<K: PermKey>(seeds: Vec<K>) -> LengthHistogram {
    let mut hist = LengthHistogram::new();
    for_each_closure_layer(seeds, |m, layer| hist.add(m, layer.len() as u64));
    hist
}

/// Completion followed by compacting: every compact permutation contained
/// in some member of `pi`, together with ε when `pi` is nonempty.
pub fn complete_and_compact(pi: &PermSet) -> PermSet {
    with_seeds(pi, collect_closure, collect_closure)
}

/// The length histogram of [`complete_and_compact`] without materializing
/// the set.
pub fn closure_histogram(pi: &PermSet) -> LengthHistogram {
    with_seeds(pi, histogram_of_closure, histogram_of_closure)
}

pub fn length_histogram(s: &PermSet) -> LengthHistogram {
    let mut hist = LengthHistogram::new();
    for perm in s {
        hist.add(perm.len(), 1);
    }
    hist
}

/// The polynomial `P` with `P(n) = |Grid(Π) ∩ B_n|` for every `n ≥ 1`.
pub fn enumerate(pi: &PermSet) -> Polynomial {
    Polynomial::from_histogram(&closure_histogram(pi))
}

/// Membership in `Grid(S)` for `S` the output of [`complete_and_compact`].
pub fn grid_member(sigma: &SignedPerm, s: &PermSet) -> bool {
    s.contains(&sigma.compactify().0)
}

/// The full downset of `sigma` (every permutation it contains, compact or
/// not), by exhaustive single-entry deletion.
pub fn downset(sigma: &SignedPerm) -> PermSet {
    let mut seen = PermSet::singleton(sigma.clone());
    let mut queue = VecDeque::from([sigma.clone()]);
    while let Some(perm) = queue.pop_front() {
        for pos in 1..=perm.len() {
            let child = perm.delete(pos).expect("position in range");
            if seen.insert(child.clone()) {
                queue.push_back(child);
            }
        }
    }
    seen
}
