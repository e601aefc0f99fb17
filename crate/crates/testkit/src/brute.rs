//! Naive reference implementations on plain `Vec<i32>` words.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

/// Order-isomorphic signed permutation of a word with distinct absolute values.
pub fn standardize(word: &[i32]) -> Vec<i32> {
    word.iter()
        .map(|&x| {
            let rank = word.iter().filter(|y| y.abs() <= x.abs()).count() as i32;
            rank * x.signum()
        })
        .collect()
}

/// Every element of `B_n`.
pub fn signed_perms(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for_each_signed_perm(n, |p| out.push(p.to_vec()));
    out
}

/// Calls `f` on every element of `B_n` without materializing the group.
pub fn for_each_signed_perm<F: FnMut(&[i32])>(n: usize, mut f: F) {
    fn rec<F: FnMut(&[i32])>(n: usize, current: &mut Vec<i32>, used: &mut [bool], f: &mut F) {
        if current.len() == n {
            f(current);
            return;
        }
        for a in 1..=n {
            if used[a] {
                continue;
            }
            used[a] = true;
            for s in [1, -1] {
                current.push(s * a as i32);
                rec(n, current, used, f);
                current.pop();
            }
            used[a] = false;
        }
    }
    rec(
        n,
        &mut Vec::with_capacity(n),
        &mut vec![false; n + 1],
        &mut f,
    );
}

/// Replaces entry `i` by a same-sign run of `v[i]` consecutive absolute
/// values; runs take value ranges in order of `|π(i)|`.
pub fn inflate(pi: &[i32], v: &[usize]) -> Vec<i32> {
    assert_eq!(pi.len(), v.len());
    let mut start = vec![0usize; pi.len()];
    let mut next = 0;
    for a in 1..=pi.len() as i32 {
        let i = pi
            .iter()
            .position(|x| x.abs() == a)
            .expect("valid permutation");
        start[i] = next;
        next += v[i];
    }
    let mut out = Vec::with_capacity(next);
    for (i, &x) in pi.iter().enumerate() {
        let lo = start[i] as i32;
        let hi = lo + v[i] as i32;
        if x > 0 {
            out.extend(lo + 1..=hi);
        } else {
            out.extend((lo + 1..=hi).rev().map(|a| -a));
        }
    }
    out
}

/// All patterns of `sigma`, by subsets of positions.
pub fn patterns(sigma: &[i32]) -> BTreeSet<Vec<i32>> {
    let n = sigma.len();
    (0u32..1 << n)
        .map(|mask| {
            let sub: Vec<i32> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sigma[i])
                .collect();
            standardize(&sub)
        })
        .collect()
}

pub fn contains(sigma: &[i32], pi: &[i32]) -> bool {
    let n = sigma.len();
    let m = pi.len();
    m <= n
        && (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize == m)
            .any(|mask| {
                let sub: Vec<i32> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sigma[i])
                    .collect();
                standardize(&sub) == pi
            })
}

/// Some interval (adjacent positions, adjacent absolute values) is order
/// isomorphic to `1 2` or `-2 -1`.
pub fn has_unit_interval(pi: &[i32]) -> bool {
    pi.windows(2).any(|w| {
        let s = standardize(w);
        w[0].abs().abs_diff(w[1].abs()) == 1 && (s == [1, 2] || s == [-2, -1])
    })
}

/// Vectors of `parts` components, each at least `min`, summing to `total`.
pub fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fn rec(
        left: usize,
        parts: usize,
        min: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() + 1 == parts {
            if left >= min {
                current.push(left);
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        for x in min..=left {
            current.push(x);
            rec(left - x, parts, min, current, out);
            current.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, min, &mut current, &mut out);
    out
}

pub fn zero_one_vectors(len: usize) -> Vec<Vec<usize>> {
    (0u32..1 << len)
        .map(|mask| (0..len).map(|i| (mask >> i & 1) as usize).collect())
        .collect()
}

/// Positive `v1` and nonnegative `v2 ≠ v1` with equal inflations never occur
/// for component sums up to `max_total ≤ 12`.
pub fn inflation_is_unique(pi: &[i32], max_total: usize) -> bool {
    assert!(max_total <= 12);
    let m = pi.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| pi[i].abs());
    let key = |v: &[usize]| -> u64 {
        let mut start = [0u64; 12];
        let mut next = 0;
        for &i in &order {
            start[i] = next;
            next += v[i] as u64;
        }
        let mut key = 0u64;
        for (i, &x) in pi.iter().enumerate() {
            for t in 0..v[i] as u64 {
                let a = if x > 0 {
                    start[i] + t + 1
                } else {
                    start[i] + v[i] as u64 - t
                };
                key = key << 5 | a << 1 | u64::from(x < 0);
            }
        }
        key
    };
    (m..=max_total).all(|total| {
        let positive = compositions(total, m, 1);
        let mut images: Vec<u64> = positive.iter().map(|v| key(v)).collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != positive.len() {
            return false;
        }
        let hits = compositions(total, m, 0)
            .iter()
            .filter(|v| images.binary_search(&key(v)).is_ok())
            .count();
        hits == positive.len()
    })
}

/// `#{σ ∈ B_n : σ = π[v] for some π ∈ pis, v ≥ 0}` by listing inflations.
pub fn grid_count(pis: &[Vec<i32>], n: usize) -> u64 {
    let mut seen = BTreeSet::new();
    for pi in pis {
        for v in compositions(n, pi.len(), 0) {
            seen.insert(inflate(pi, &v));
        }
    }
    seen.len() as u64
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<i32> {
    let mut abs: Vec<i32> = (1..=n as i32).collect();
    abs.shuffle(rng);
    abs.into_iter()
        .map(|a| if rng.gen_bool(0.5) { -a } else { a })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_inflation_examples() {
        assert_eq!(inflate(&[-1, 2], &[3, 3]), vec![-3, -2, -1, 4, 5, 6]);
        assert_eq!(inflate(&[-2, 1, 3], &[1, 2, 3]), vec![-3, 1, 2, 4, 5, 6]);
        assert_eq!(inflate(&[2, 1], &[0, 0]), Vec::<i32>::new());
    }

    #[test]
    fn reference_counts() {
        assert_eq!(signed_perms(3).len(), 48);
        assert_eq!(compositions(4, 2, 0).len(), 5);
        assert_eq!(compositions(4, 2, 1).len(), 3);
        assert_eq!(patterns(&[-2, 1, 3]).len(), 7);
        assert!(contains(&[-2, 1, 3], &[-1, 2]));
        assert!(!contains(&[-2, 1, 3], &[2, 1]));
        assert!(has_unit_interval(&[3, 1, 2]));
        assert!(has_unit_interval(&[1, -3, -2]));
        assert!(!has_unit_interval(&[2, 1, 3]));
        assert!(!has_unit_interval(&[-2, 1, 3]));
        assert!(inflation_is_unique(&[-2, 1, 3], 6));
        assert!(!inflation_is_unique(&[1, 2], 4));
        assert_eq!(grid_count(&[vec![-2, 1, 3]], 3), 7);
    }
}
