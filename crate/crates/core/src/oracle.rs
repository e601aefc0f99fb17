//! Ground truth by breadth-first search over all of `B_n`.
//!
//! States are ranked densely (Lehmer code of the absolute values, times
//! `2^n`, plus a sign mask) so the visited set is a flat bitmap.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{distance_polynomials, DistanceFamily, Move};
use crate::error::{Error, Result};
use crate::perm::{flip_range, SignedPerm};
use crate::polynomial::Polynomial;
use crate::Limits;

/// `counts[d]` is the number of elements of `B_n` at distance exactly `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceHistogram {
    pub n: usize,
    pub family: DistanceFamily,
    pub counts: Vec<u64>,
}

impl DistanceHistogram {
    pub fn diameter(&self) -> usize {
        self.counts.len() - 1
    }

    /// Number of elements within distance `k`.
    pub fn within(&self, k: usize) -> u64 {
        self.counts.iter().take(k + 1).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// `|B_n| = 2^n · n!`
pub fn group_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

fn factorials(n: usize) -> Vec<usize> {
    let mut f = vec![1usize; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i;
    }
    f
}

fn rank(perm: &[i32], fact: &[usize]) -> usize {
    let n = perm.len();
    let mut lehmer = 0;
    let mut signs = 0;
    for i in 0..n {
        let a = perm[i].unsigned_abs();
        let smaller = perm[i + 1..]
            .iter()
            .filter(|x| x.unsigned_abs() < a)
            .count();
        lehmer += smaller * fact[n - 1 - i];
        if perm[i] < 0 {
            signs |= 1 << i;
        }
    }
    (lehmer << n) | signs
}

fn unrank(code: usize, n: usize, fact: &[usize], out: &mut Vec<i32>) {
    let signs = code & ((1 << n) - 1);
    let mut lehmer = code >> n;
    let mut pool: Vec<i32> = (1..=n as i32).collect();
    out.clear();
    for i in 0..n {
        let f = fact[n - 1 - i];
        let digit = lehmer / f;
        lehmer %= f;
        let a = pool.remove(digit);
        out.push(if signs >> i & 1 == 1 { -a } else { a });
    }
}

fn check_oracle_ceiling(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_oracle_n {
        return Err(Error::CeilingExceeded {
            what: "oracle n",
            requested: n,
            ceiling: limits.max_oracle_n,
        });
    }
    Ok(())
}

/// Layer sizes of the Cayley graph of `B_n` under `family`, from the
/// identity outwards.
pub fn bfs_histogram(
    n: usize,
    family: DistanceFamily,
    limits: &Limits,
) -> Result<DistanceHistogram> {
    check_oracle_ceiling(n, limits)?;
    let fact = factorials(n);
    let total = group_order(n) as usize;
    let ranges: Vec<(usize, usize)> = family
        .moves(n)
        .into_iter()
        .map(|mv| match mv {
            Move::Prefix(i) => (0, i),
            Move::Block(i, j) => (i - 1, j),
        })
        .collect();

    let mut seen = vec![false; total];
    let start = rank(SignedPerm::identity(n).entries(), &fact);
    seen[start] = true;
    let mut frontier = vec![start];
    let mut counts = vec![1u64];
    loop {
        let mut next: Vec<usize> = frontier
            .par_chunks(1 << 10)
            .flat_map_iter(|chunk| {
                let mut perm = Vec::with_capacity(n);
                let mut buf = Vec::with_capacity(n);
                let mut out = Vec::new();
                for &code in chunk {
                    unrank(code, n, &fact, &mut perm);
                    for &(a, b) in &ranges {
                        buf.clear();
                        buf.extend_from_slice(&perm);
                        flip_range(&mut buf, a, b);
                        let r = rank(&buf, &fact);
                        if !seen[r] {
                            out.push(r);
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        for &r in &next {
            seen[r] = true;
        }
        counts.push(next.len() as u64);
        frontier = next;
    }
    Ok(DistanceHistogram { n, family, counts })
}

/// Number of elements of `B_n` within distance `k` of the identity.
pub fn count_within(n: usize, k: usize, family: DistanceFamily, limits: &Limits) -> Result<u64> {
    Ok(bfs_histogram(n, family, limits)?.within(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub k: usize,
    /// Exact value of the polynomial at `n`, as a rational string.
    pub polynomial_value: String,
    pub bfs_count: u64,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub family: DistanceFamily,
    pub rows: Vec<VerifyRow>,
    pub histograms: Vec<DistanceHistogram>,
}

impl VerifyReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &VerifyRow> + '_ {
        self.rows.iter().filter(|r| !r.matched)
    }

    /// Human-readable table, one row per `(n, k)` pair.
    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "family: {}", self.family).unwrap();
        writeln!(
            out,
            "{:>3} {:>3} {:>20} {:>20}  result",
            "n", "k", "polynomial", "bfs"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:>3} {:>3} {:>20} {:>20}  {}",
                r.n,
                r.k,
                r.polynomial_value,
                r.bfs_count,
                if r.matched { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
        let bad = self.mismatches().count();
        writeln!(out, "{} pairs checked, {} mismatches", self.rows.len(), bad).unwrap();
        out
    }
}

/// Compares `polys[k](n)` with the BFS count for every `1 ≤ n ≤ n_max` and
/// every `k` with a polynomial.
pub fn verify_against(
    family: DistanceFamily,
    polys: &[Polynomial],
    n_max: usize,
    limits: &Limits,
) -> Result<VerifyReport> {
    check_oracle_ceiling(n_max, limits)?;
    let mut rows = Vec::new();
    let mut histograms = Vec::new();
    for n in 1..=n_max {
        let hist = bfs_histogram(n, family, limits)?;
        for (k, poly) in polys.iter().enumerate() {
            let value = poly.evaluate_at(n as i64);
            let bfs_count = hist.within(k);
            rows.push(VerifyRow {
                n,
                k,
                matched: value == crate::polynomial::integer(bfs_count as i64),
                polynomial_value: value.to_string(),
                bfs_count,
            });
        }
        histograms.push(hist);
    }
    Ok(VerifyReport {
        family,
        rows,
        histograms,
    })
}

/// [`verify_against`] with freshly computed distance polynomials for
/// `k = 0..=k_max`.
pub fn verify(
    family: DistanceFamily,
    k_max: usize,
    n_max: usize,
    limits: &Limits,
) -> Result<VerifyReport> {
    check_oracle_ceiling(n_max, limits)?;
    let polys = distance_polynomials(family, k_max, limits)?;
    verify_against(family, &polys, n_max, limits)
}
