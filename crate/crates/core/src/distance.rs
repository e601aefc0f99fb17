//! Generating sets whose grid classes are the signed permutations within a
//! given prefix-reversal (burnt pancake) or block-reversal distance of the
//! identity.
//!
//! Both families start from `Π_0 = {1}`. A level is produced from the
//! previous one by splitting blocks and applying one generator to the split
//! point:
//!
//! * prefix reversals: for each `π` and `1 ≤ i ≤ len(π)`, inflate by
//!   `e_i + 𝟏` and apply `f_i`;
//! * block reversals: for each `π` and `1 ≤ i ≤ j ≤ len(π)`, inflate by
//!   `e_i + e_j + 𝟏` and apply `b_{i+1,j+1}`.
//!
//! Every level is deduplicated before the next one is built.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gridclass::{histogram_of_closure, LengthHistogram, PermSet};
use crate::packed::{Packed, PermKey, PACKED_MAX_LEN};
use crate::perm::{flip_range, inflate_into, InflationVector, SignedPerm};
use crate::polynomial::Polynomial;
use crate::Limits;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistanceFamily {
    PrefixReversal,
    BlockReversal,
}

impl DistanceFamily {
    pub const ALL: [DistanceFamily; 2] = [
        DistanceFamily::PrefixReversal,
        DistanceFamily::BlockReversal,
    ];

    /// Short name used on the command line and in cache paths.
    pub fn name(self) -> &'static str {
        match self {
            DistanceFamily::PrefixReversal => "pancake",
            DistanceFamily::BlockReversal => "reversal",
        }
    }

    /// Length of every member of `Π_k`.
    pub fn member_len(self, k: usize) -> usize {
        match self {
            DistanceFamily::PrefixReversal => k + 1,
            DistanceFamily::BlockReversal => 2 * k + 1,
        }
    }

    /// All generators acting on permutations of length `n`.
    pub fn moves(self, n: usize) -> Vec<Move> {
        match self {
            DistanceFamily::PrefixReversal => (1..=n).map(Move::Prefix).collect(),
            DistanceFamily::BlockReversal => (1..=n)
                .flat_map(|i| (i..=n).map(move |j| Move::Block(i, j)))
                .collect(),
        }
    }

    pub fn ceiling(self, limits: &Limits) -> usize {
        match self {
            DistanceFamily::PrefixReversal => limits.max_pancake_k,
            DistanceFamily::BlockReversal => limits.max_reversal_k,
        }
    }
}

impl fmt::Display for DistanceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pancake" | "prefix" | "prefix-reversal" | "burnt-pancake" => {
                Ok(DistanceFamily::PrefixReversal)
            }
            "reversal" | "block" | "block-reversal" => Ok(DistanceFamily::BlockReversal),
            other => Err(format!(
                "unknown distance family {other:?} (expected pancake or reversal)"
            )),
        }
    }
}

/// One generator: `f_i` or `b_{i,j}`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Prefix(usize),
    Block(usize, usize),
}

impl Move {
    pub fn family(self) -> DistanceFamily {
        match self {
            Move::Prefix(_) => DistanceFamily::PrefixReversal,
            Move::Block(..) => DistanceFamily::BlockReversal,
        }
    }

    pub fn apply(self, perm: &SignedPerm) -> Result<SignedPerm> {
        Ok(match self {
            Move::Prefix(i) => perm.prefix_reversal(i)?,
            Move::Block(i, j) => perm.block_reversal(i, j)?,
        })
    }

    /// The 1-based inclusive range of positions this move reverses.
    fn range(self) -> (usize, usize) {
        match self {
            Move::Prefix(i) => (1, i),
            Move::Block(i, j) => (i, j),
        }
    }

    /// The same move acting on blocks of an inflation by `v`, or `None` when
    /// the affected blocks are all empty.
    fn on_inflation(self, v: &InflationVector) -> Option<Move> {
        let (i, j) = self.range();
        let start = v.prefix_sum(i - 1) + 1;
        let end = v.prefix_sum(j);
        if start > end {
            return None;
        }
        Some(match self {
            Move::Prefix(_) => Move::Prefix(end),
            Move::Block(..) => Move::Block(start, end),
        })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Prefix(i) => write!(f, "f{i}"),
            Move::Block(i, j) => write!(f, "b{i},{j}"),
        }
    }
}

/// Applies `moves` to `perm` left to right.
pub fn apply_moves(perm: &SignedPerm, moves: &[Move]) -> Result<SignedPerm> {
    moves
        .iter()
        .try_fold(perm.clone(), |acc, mv| mv.apply(&acc))
}

/// Translates a sorting sequence `s` of `pi` into one for `sigma = pi[v]`.
///
/// Each move reversing blocks `i..=j` becomes the move reversing the
/// positions those blocks occupy in `sigma`; the block sizes are then
/// permuted by the same reversal before the next move is translated. Moves
/// whose blocks are all empty act trivially on `sigma` and are dropped, so
/// the result is as long as `s` whenever `v` is a filling vector.
pub fn sorting_sequence(
    sigma: &SignedPerm,
    family: DistanceFamily,
    pi: &SignedPerm,
    v: &InflationVector,
    s: &[Move],
) -> Result<Vec<Move>> {
    if &pi.inflate(v)? != sigma {
        return Err(Error::InconsistentInflation {
            pi: pi.pretty(),
            vector: v.to_string(),
            sigma: sigma.pretty(),
        });
    }
    if let Some(mv) = s.iter().find(|mv| mv.family() != family) {
        return Err(Error::WrongFamily {
            mv: mv.to_string(),
            family: family.to_string(),
        });
    }
    if !apply_moves(pi, s)?.is_identity() {
        return Err(Error::NotSorting { perm: pi.pretty() });
    }

    let mut sizes = v.clone();
    let mut out = Vec::with_capacity(s.len());
    for &mv in s {
        out.extend(mv.on_inflation(&sizes));
        let (i, j) = mv.range();
        sizes.reverse_range(i, j);
    }
    Ok(out)
}

fn expand_into<K: PermKey>(
    family: DistanceFamily,
    src: &[i32],
    out: &mut Vec<K>,
    buf: &mut Vec<i32>,
    offsets: &mut Vec<i32>,
) {
    let len = src.len();
    let mut sizes = vec![1usize; len];
    match family {
        DistanceFamily::PrefixReversal => {
            for i in 1..=len {
                sizes[i - 1] += 1;
                inflate_into(src, &sizes, buf, offsets);
                flip_range(buf, 0, i);
                out.push(K::encode(buf));
                sizes[i - 1] -= 1;
            }
        }
        DistanceFamily::BlockReversal => {
            for i in 1..=len {
                for j in i..=len {
                    sizes[i - 1] += 1;
                    sizes[j - 1] += 1;
                    inflate_into(src, &sizes, buf, offsets);
                    // b_{i+1, j+1} covers 0-based positions i..=j
                    flip_range(buf, i, j + 1);
                    out.push(K::encode(buf));
                    sizes[i - 1] -= 1;
                    sizes[j - 1] -= 1;
                }
            }
        }
    }
}

fn next_level_keys<K: PermKey>(family: DistanceFamily, parents: &[K]) -> Vec<K> {
    let mut children: Vec<K> = parents
        .par_chunks(CHUNK)
        .flat_map_iter(|chunk| {
            let mut src = Vec::new();
            let mut buf = Vec::new();
            let mut offsets = Vec::new();
            let mut out = Vec::new();
            for key in chunk {
                key.decode_into(&mut src);
                expand_into(family, &src, &mut out, &mut buf, &mut offsets);
            }
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    children.par_sort_unstable();
    children.dedup();
    children
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Store {
    Packed(Vec<Packed>),
    Wide(Vec<SignedPerm>),
}

/// The deduplicated generating set `Π_k` of one distance family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    family: DistanceFamily,
    k: usize,
    store: Store,
}

impl Generators {
    /// `Π_0 = {1}`.
    pub fn base(family: DistanceFamily) -> Self {
        Self {
            family,
            k: 0,
            store: Store::Packed(vec![Packed::encode(&[1])]),
        }
    }

    /// `Π_k` built level by level from `Π_0`.
    pub fn build(family: DistanceFamily, k: usize) -> Self {
        (0..k).fold(Self::base(family), |level, _| level.next_level())
    }

    /// Wraps an existing `Π_k` (for example one read back from disk).
    pub fn from_perms<I>(family: DistanceFamily, k: usize, perms: I) -> Result<Self>
    where
        I: IntoIterator<Item = SignedPerm>,
    {
        let expected = family.member_len(k);
        let mut perms: Vec<SignedPerm> = perms.into_iter().collect();
        if let Some(bad) = perms.iter().find(|p| p.len() != expected) {
            return Err(Error::Polynomial(format!(
                "generator {} has length {}, expected {expected} for {family} k = {k}",
                bad.pretty(),
                bad.len()
            )));
        }
        let store = if expected <= PACKED_MAX_LEN {
            let mut keys: Vec<Packed> = perms.iter().map(|p| Packed::encode(p.entries())).collect();
            keys.par_sort_unstable();
            keys.dedup();
            Store::Packed(keys)
        } else {
            perms.par_sort_unstable();
            perms.dedup();
            Store::Wide(perms)
        };
        Ok(Self { family, k, store })
    }

    pub fn family(&self) -> DistanceFamily {
        self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        match &self.store {
            Store::Packed(keys) => keys.len(),
            Store::Wide(perms) => perms.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in shortlex order.
    pub fn perms(&self) -> Box<dyn Iterator<Item = SignedPerm> + '_> {
        match &self.store {
            Store::Packed(keys) => Box::new(keys.iter().map(PermKey::to_perm)),
            Store::Wide(perms) => Box::new(perms.iter().cloned()),
        }
    }

    pub fn to_perm_set(&self) -> PermSet {
        self.perms().collect()
    }

    /// `Π_{k+1}`.
    pub fn next_level(&self) -> Generators {
        let next_len = self.family.member_len(self.k + 1);
        let store = match &self.store {
            Store::Packed(keys) if next_len <= PACKED_MAX_LEN => {
                Store::Packed(next_level_keys(self.family, keys))
            }
            Store::Packed(keys) => {
                let wide: Vec<SignedPerm> = keys.iter().map(PermKey::to_perm).collect();
                Store::Wide(next_level_keys(self.family, &wide))
            }
            Store::Wide(perms) => Store::Wide(next_level_keys(self.family, perms)),
        };
        Generators {
            family: self.family,
            k: self.k + 1,
            store,
        }
    }

    /// Length histogram of the compact closure of this set.
    pub fn histogram(&self) -> LengthHistogram {
        match &self.store {
            Store::Packed(keys) => histogram_of_closure(keys.clone()),
            Store::Wide(perms) => histogram_of_closure(perms.clone()),
        }
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_histogram(&self.histogram())
    }
}

/// `Π_k` for prefix reversals.
pub fn pancake_pi(k: usize) -> PermSet {
    Generators::build(DistanceFamily::PrefixReversal, k).to_perm_set()
}

/// `Π_k` for block reversals.
pub fn reversal_pi(k: usize) -> PermSet {
    Generators::build(DistanceFamily::BlockReversal, k).to_perm_set()
}

pub fn check_ceiling(family: DistanceFamily, k: usize, limits: &Limits) -> Result<()> {
    let ceiling = family.ceiling(limits);
    if k > ceiling {
        return Err(Error::CeilingExceeded {
            what: match family {
                DistanceFamily::PrefixReversal => "pancake k",
                DistanceFamily::BlockReversal => "reversal k",
            },
            requested: k,
            ceiling,
        });
    }
    Ok(())
}

/// The polynomial counting signed permutations of length `n ≥ 1` within
/// distance `k` of the identity.
pub fn distance_polynomial(
    family: DistanceFamily,
    k: usize,
    limits: &Limits,
) -> Result<Polynomial> {
    check_ceiling(family, k, limits)?;
    Ok(Generators::build(family, k).polynomial())
}

/// `distance_polynomial(family, k)` for every `k` in `0..=k_max`, sharing
/// the level construction.
pub fn distance_polynomials(
    family: DistanceFamily,
    k_max: usize,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    check_ceiling(family, k_max, limits)?;
    let mut level = Generators::base(family);
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            level = level.next_level();
        }
        out.push(level.polynomial());
    }
    Ok(out)
}

/// Members of `Π_k` (with duplicates removed), each paired with a sequence
/// of exactly `k` moves that sorts it, derived from the construction.
pub fn witnessed_generators(
    family: DistanceFamily,
    k: usize,
) -> Result<Vec<(SignedPerm, Vec<Move>)>> {
    let mut level = vec![(SignedPerm::identity(1), Vec::new())];
    for _ in 0..k {
        let mut next: std::collections::BTreeMap<SignedPerm, Vec<Move>> = Default::default();
        for (pi, seq) in &level {
            let len = pi.len();
            let splits: Vec<(InflationVector, Move)> = match family {
                DistanceFamily::PrefixReversal => (1..=len)
                    .map(|i| {
                        Ok((
                            &InflationVector::unit(len, i)? + &InflationVector::ones(len),
                            Move::Prefix(i),
                        ))
                    })
                    .collect::<Result<_>>()?,
                DistanceFamily::BlockReversal => (1..=len)
                    .flat_map(|i| (i..=len).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let v = &(&InflationVector::unit(len, i)?
                            + &InflationVector::unit(len, j)?)
                            + &InflationVector::ones(len);
                        Ok((v, Move::Block(i + 1, j + 1)))
                    })
                    .collect::<Result<_>>()?,
            };
            for (v, mv) in splits {
                let inflated = pi.inflate(&v)?;
                let child = mv.apply(&inflated)?;
                let mut child_seq = vec![mv];
                child_seq.extend(sorting_sequence(&inflated, family, pi, &v, seq)?);
                next.entry(child).or_insert(child_seq);
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SignedPerm {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> PermSet {
        items.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn pancake_levels() {
        assert_eq!(pancake_pi(0), set(&["1"]));
        assert_eq!(pancake_pi(1), set(&["-1 2"]));
        assert_eq!(pancake_pi(2), set(&["2 -1 3", "-2 1 3"]));
    }

    #[test]
    fn reversal_levels() {
        assert_eq!(reversal_pi(0), set(&["1"]));
        assert_eq!(reversal_pi(1), set(&["1 -2 3"]));
        assert!(reversal_pi(2).iter().all(|q| q.len() == 5));
    }

    #[test]
    fn small_distance_polynomials() {
        let limits = Limits::default();
        assert_eq!(
            distance_polynomial(DistanceFamily::PrefixReversal, 3, &limits).unwrap(),
            Polynomial::from_integers(&[1, 1, -1, 1])
        );
        assert_eq!(
            distance_polynomial(DistanceFamily::PrefixReversal, 0, &limits).unwrap(),
            Polynomial::one()
        );
        let all = distance_polynomials(DistanceFamily::PrefixReversal, 3, &limits).unwrap();
        assert_eq!(all[2], Polynomial::from_integers(&[1, 0, 1]));
        assert_eq!(all[3], Polynomial::from_integers(&[1, 1, -1, 1]));
    }

    #[test]
    fn ceiling_is_enforced() {
        let limits = Limits {
            max_pancake_k: 2,
            ..Limits::default()
        };
        let err = distance_polynomial(DistanceFamily::PrefixReversal, 3, &limits).unwrap_err();
        assert!(matches!(
            err,
            Error::CeilingExceeded {
                requested: 3,
                ceiling: 2,
                ..
            }
        ));
    }

    #[test]
    fn sorting_sequence_worked_example() {
        let sigma = p("-3 1 2 4 5 6");
        let pi = p("-2 1 3");
        let v = InflationVector::new(vec![1, 2, 3]);
        let s = [Move::Prefix(2), Move::Prefix(1)];
        let out = sorting_sequence(&sigma, DistanceFamily::PrefixReversal, &pi, &v, &s).unwrap();
        assert_eq!(out, [Move::Prefix(3), Move::Prefix(2)]);
        assert!(apply_moves(&sigma, &out).unwrap().is_identity());
    }

    #[test]
    fn sorting_sequence_trivial_cases() {
        let pi = p("-2 1 3");
        let s = [Move::Prefix(2), Move::Prefix(1)];
        let ones = InflationVector::ones(3);
        assert_eq!(
            sorting_sequence(&pi, DistanceFamily::PrefixReversal, &pi, &ones, &s).unwrap(),
            s
        );
        let rev = p("1 -2 3");
        let out = sorting_sequence(
            &rev,
            DistanceFamily::BlockReversal,
            &rev,
            &ones,
            &[Move::Block(2, 2)],
        )
        .unwrap();
        assert_eq!(out, [Move::Block(2, 2)]);
        assert!(apply_moves(&rev, &out).unwrap().is_identity());
    }

    #[test]
    fn sorting_sequence_rejects_bad_input() {
        let pi = p("-2 1 3");
        let ones = InflationVector::ones(3);
        let s = [Move::Prefix(2), Move::Prefix(1)];
        assert!(matches!(
            sorting_sequence(&p("1 2 3"), DistanceFamily::PrefixReversal, &pi, &ones, &s),
            Err(Error::InconsistentInflation { .. })
        ));
        assert!(matches!(
            sorting_sequence(
                &pi,
                DistanceFamily::PrefixReversal,
                &pi,
                &ones,
                &[Move::Prefix(1)]
            ),
            Err(Error::NotSorting { .. })
        ));
        assert!(matches!(
            sorting_sequence(&pi, DistanceFamily::BlockReversal, &pi, &ones, &s),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn sorting_sequence_with_empty_blocks() {
        let pi = p("-2 1 3");
        let v = InflationVector::new(vec![0, 2, 1]);
        let sigma = pi.inflate(&v).unwrap();
        let s = [Move::Prefix(2), Move::Prefix(1)];
        let out = sorting_sequence(&sigma, DistanceFamily::PrefixReversal, &pi, &v, &s).unwrap();
        assert!(out.len() <= s.len());
        assert!(apply_moves(&sigma, &out).unwrap().is_identity());
    }

    #[test]
    fn witnesses_sort_their_generators() {
        for family in DistanceFamily::ALL {
            let k_max = if family == DistanceFamily::PrefixReversal {
                5
            } else {
                3
            };
            for k in 0..=k_max {
                let witnessed = witnessed_generators(family, k).unwrap();
                let expected = Generators::build(family, k).to_perm_set();
                assert_eq!(
                    witnessed
                        .iter()
                        .map(|(q, _)| q.clone())
                        .collect::<PermSet>(),
                    expected
                );
                for (perm, seq) in witnessed {
                    assert_eq!(seq.len(), k);
                    assert!(
                        apply_moves(&perm, &seq).unwrap().is_identity(),
                        "{family} {perm}"
                    );
                }
            }
        }
    }

    #[test]
    fn family_names_parse() {
        for family in DistanceFamily::ALL {
            assert_eq!(family.name().parse::<DistanceFamily>().unwrap(), family);
        }
        assert!("bogus".parse::<DistanceFamily>().is_err());
        assert_eq!(DistanceFamily::BlockReversal.moves(3).len(), 6);
    }
}
