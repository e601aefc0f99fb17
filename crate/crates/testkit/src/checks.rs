//! Whole-property checks. Each returns a one-line summary on success and a
//! description of the first counterexample on failure.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use signed_grid::oracle::{bfs_histogram, group_order, verify_against};
use signed_grid::polynomial::integer;
use signed_grid::{
    complete_and_compact, enumerate, DistanceFamily, Generators, InflationVector, Limits, PermSet,
    Polynomial, SignedPerm,
};

use crate::{brute, tables};

pub type Check = Result<String, String>;

fn perm(entries: &[i32]) -> SignedPerm {
    SignedPerm::new(entries.to_vec()).expect("reference permutations are valid")
}

/// The six-element compact closure of `{-2 1 3}` and its polynomial.
pub fn worked_example() -> Check {
    let input = PermSet::singleton("-2 1 3".parse().unwrap());
    let s = complete_and_compact(&input);
    let expected: PermSet = ["", "1", "-1", "-1 2", "-2 1", "-2 1 3"]
        .iter()
        .map(|t| t.parse::<SignedPerm>().unwrap())
        .collect();
    if s != expected {
        return Err(format!("closure is {s:?}"));
    }
    let poly = enumerate(&input);
    if poly.to_string() != "[1, 1/2, 1/2]" {
        return Err(format!("polynomial is {poly}"));
    }
    Ok("S has 6 members, polynomial [1, 1/2, 1/2]".into())
}

/// `computed[k]` against the published array for each `k` in `ks`.
pub fn tables_match(
    family: DistanceFamily,
    computed: &[Polynomial],
    ks: std::ops::RangeInclusive<usize>,
) -> Check {
    for k in ks.clone() {
        let expected = match family {
            DistanceFamily::PrefixReversal => tables::pancake(k),
            DistanceFamily::BlockReversal => tables::reversal(k),
        };
        let got = computed
            .get(k)
            .ok_or_else(|| format!("no polynomial for k = {k}"))?;
        if *got != expected {
            return Err(format!("k = {k}: computed {got}, expected {expected}"));
        }
    }
    Ok(format!("k = {}..{} exact", ks.start(), ks.end()))
}

/// Successive differences of the prefix-reversal polynomials against the
/// expanded closed forms, `k = 4..=k_max`.
pub fn exact_distance_forms(pancake: &[Polynomial], k_max: usize) -> Check {
    for k in 4..=k_max {
        let diff = &pancake[k] - &pancake[k - 1];
        let form = tables::pancake_exact_factored(k);
        if diff != form {
            return Err(format!("k = {k}: difference {diff}, closed form {form}"));
        }
    }
    let diff4 = &pancake[4] - &pancake[3];
    if diff4 == tables::pancake_exact_4_without_n() {
        return Err("k = 4 difference matches the form without the factor n".into());
    }
    Ok(format!(
        "k = 4..{k_max} expand exactly; k = 4 carries the factor n"
    ))
}

/// Polynomials against BFS for `1 ≤ n ≤ n_max`, and saturation at `2^n·n!`
/// once `k` reaches the diameter.
pub fn oracle_agreement(family: DistanceFamily, polys: &[Polynomial], n_max: usize) -> Check {
    let report =
        verify_against(family, polys, n_max, &Limits::default()).map_err(|e| e.to_string())?;
    if let Some(row) = report.mismatches().next() {
        return Err(format!(
            "n = {}, k = {}: polynomial {}, bfs {}",
            row.n, row.k, row.polynomial_value, row.bfs_count
        ));
    }
    let mut saturated = 0;
    for hist in &report.histograms {
        let n = hist.n;
        for (k, poly) in polys.iter().enumerate().skip(hist.diameter()) {
            if poly.evaluate_at(n as i64) != integer(group_order(n) as i64) {
                return Err(format!("n = {n}, k = {k}: not 2^n n!"));
            }
            saturated += 1;
        }
    }
    Ok(format!(
        "{} pairs, 0 mismatches, {saturated} saturated pairs equal 2^n n!",
        report.rows.len()
    ))
}

/// `σ` contains `π` exactly when `π` is a 0/1 inflation of `σ`.
pub fn containment_duality(max_len: usize) -> Check {
    let small: Vec<Vec<i32>> = (0..=4).flat_map(brute::signed_perms).collect();
    let mut checked = 0u64;
    for m in 0..=max_len {
        let sigmas = brute::signed_perms(m);
        let zero_one = brute::zero_one_vectors(m);
        let failures: Vec<String> = sigmas
            .par_iter()
            .filter_map(|sigma| {
                let s = perm(sigma);
                let by_inflation: BTreeSet<Vec<i32>> = zero_one
                    .iter()
                    .map(|v| {
                        s.inflate(&InflationVector::new(v.clone()))
                            .unwrap()
                            .into_entries()
                    })
                    .collect();
                if by_inflation != brute::patterns(sigma) {
                    return Some(format!("0/1 inflations of {s} differ from its patterns"));
                }
                for p in small.iter().chain(by_inflation.iter()) {
                    if s.contains(&perm(p)) != by_inflation.contains(p) {
                        return Some(format!("contains({s}, {}) disagrees", perm(p)));
                    }
                }
                None
            })
            .collect();
        if let Some(f) = failures.into_iter().next() {
            return Err(f);
        }
        checked += sigmas.len() as u64;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20_000 {
        let n = rng.gen_range(0..=max_len);
        let m = rng.gen_range(0..=n);
        let sigma = brute::random_perm(&mut rng, n);
        let pi = brute::random_perm(&mut rng, m);
        if perm(&sigma).contains(&perm(&pi)) != brute::contains(&sigma, &pi) {
            return Err(format!(
                "contains({}, {}) disagrees with subsequence search",
                perm(&sigma),
                perm(&pi)
            ));
        }
    }
    Ok(format!(
        "{checked} permutations of length <= {max_len} against all patterns of length <= 4, plus 20000 random pairs"
    ))
}

/// Every element of `B_n`, `n ≤ max_len`, is `π[v]` for exactly one compact
/// `π` and positive `v`, and `compactify` returns that pair.
pub fn compactify_uniqueness(max_len: usize) -> Check {
    for n in 0..=max_len {
        let mut compact: Vec<Vec<Vec<i32>>> = vec![Vec::new(); n + 1];
        for (m, bucket) in compact.iter_mut().enumerate() {
            brute::for_each_signed_perm(m, |p| {
                if !brute::has_unit_interval(p) {
                    bucket.push(p.to_vec());
                }
            });
        }
        let mut produced = 0u64;
        for (m, bucket) in compact.iter().enumerate() {
            let vectors = brute::compositions(n, m, 1);
            let bad = bucket.par_iter().find_map_any(|p| {
                let pi = perm(p);
                for v in &vectors {
                    let iv = InflationVector::new(v.clone());
                    let sigma = pi.inflate(&iv).unwrap();
                    if sigma.entries() != brute::inflate(p, v).as_slice() {
                        return Some(format!("{pi}[{iv}] differs from the reference inflation"));
                    }
                    let (core, w) = sigma.compactify();
                    if core != pi || w != iv {
                        return Some(format!(
                            "compactify({sigma}) = ({core}, {w}), built from ({pi}, {iv})"
                        ));
                    }
                }
                None
            });
            if let Some(msg) = bad {
                return Err(msg);
            }
            produced += (bucket.len() * vectors.len()) as u64;
        }
        if produced != group_order(n) {
            return Err(format!(
                "n = {n}: {produced} filling pairs, |B_n| = {}",
                group_order(n)
            ));
        }
    }
    Ok(format!("bijection onto B_n for every n <= {max_len}"))
}

/// Compactness, absence of `1 2` and `-2 -1` intervals, and uniqueness of
/// inflation (component sums up to `len + 3`) agree.
pub fn compact_equivalence(max_len: usize) -> Check {
    let mut compact_count = 0u64;
    for m in 0..=max_len {
        let perms = brute::signed_perms(m);
        let bad = perms.par_iter().find_map_any(|p| {
            let a = perm(p).is_compact();
            let b = !brute::has_unit_interval(p);
            let c = brute::inflation_is_unique(p, m + 3);
            (a != b || b != c)
                .then(|| format!("{}: compact {a}, no unit interval {b}, unique {c}", perm(p)))
        });
        if let Some(msg) = bad {
            return Err(msg);
        }
        compact_count += perms
            .iter()
            .filter(|p| !brute::has_unit_interval(p))
            .count() as u64;
    }
    Ok(format!(
        "{compact_count} compact permutations of length <= {max_len}"
    ))
}

/// `enumerate(Π)(n)` against listing all inflations, for random `Π`.
pub fn disjoint_union_counts(seed: u64, trials: usize, max_pi_len: usize, n_max: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let size = rng.gen_range(1..=3);
        let pis: Vec<Vec<i32>> = (0..size)
            .map(|_| {
                let len = rng.gen_range(0..=max_pi_len);
                brute::random_perm(&mut rng, len)
            })
            .collect();
        let set: PermSet = pis.iter().map(|p| perm(p)).collect();
        let poly = enumerate(&set);
        for n in 1..=n_max {
            let expected = brute::grid_count(&pis, n);
            if poly.evaluate_at(n as i64) != integer(expected as i64) {
                return Err(format!(
                    "trial {trial}, {set:?}, n = {n}: polynomial {poly}, listing {expected}"
                ));
            }
        }
    }
    Ok(format!("{trials} random inputs, n = 1..{n_max}"))
}

/// Closures, generator sets and BFS layers are identical across thread pools.
pub fn determinism(threads: &[usize]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let random: PermSet = (0..12)
        .map(|_| {
            let len = rng.gen_range(4..=9);
            perm(&brute::random_perm(&mut rng, len))
        })
        .collect();
    let run = || {
        (
            complete_and_compact(&random),
            Generators::build(DistanceFamily::PrefixReversal, 6).to_perm_set(),
            Generators::build(DistanceFamily::BlockReversal, 3).to_perm_set(),
            complete_and_compact(
                &Generators::build(DistanceFamily::PrefixReversal, 5).to_perm_set(),
            ),
            bfs_histogram(6, DistanceFamily::PrefixReversal, &Limits::default()).unwrap(),
        )
    };
    let mut first = None;
    for &t in threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| e.to_string())?;
        let result = pool.install(run);
        match &first {
            None => first = Some(result),
            Some(expected) if *expected == result => {}
            Some(_) => {
                return Err(format!(
                    "results with {t} threads differ from {} thread(s)",
                    threads[0]
                ))
            }
        }
    }
    Ok(format!("identical results with {threads:?} threads"))
}

/// Gregory–Newton reconstruction of `R_{≤k} − R_{≤k−1}` from its values at
/// `1..=k`.
pub fn gregory_newton(pancake: &[Polynomial], ks: std::ops::RangeInclusive<usize>) -> Check {
    for k in ks.clone() {
        let exact = &pancake[k] - &pancake[k - 1];
        let values: Vec<_> = (1..=k as i64).map(|n| exact.evaluate_at(n)).collect();
        let rebuilt = Polynomial::gregory_newton(&values, k).map_err(|e| e.to_string())?;
        if rebuilt != exact {
            return Err(format!("k = {k}: rebuilt {rebuilt}, expected {exact}"));
        }
    }
    Ok(format!(
        "k = {}..{} reconstructed exactly",
        ks.start(),
        ks.end()
    ))
}
