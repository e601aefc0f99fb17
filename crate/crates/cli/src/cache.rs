//! On-disk cache of distance-class generating sets and closure histograms.
//!
//! Layout under the cache root:
//!
//! ```text
//! {family}/pi_{k}.perms   one generator per line, shortlex order
//! {family}/S_{k}.hist     "m count" per line; m = 0 is ε
//! ```
//!
//! Both start with a `#` header naming the format version. Files with an
//! unexpected header or unparsable body are ignored and rebuilt.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use signed_grid::distance::check_ceiling;
use signed_grid::{DistanceFamily, Generators, LengthHistogram, Limits, PermSet, Polynomial};

use crate::CliError;

pub const PERMS_HEADER: &str = "# signed-grid permset v1";
pub const HIST_HEADER: &str = "# signed-grid histogram v1";

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn pi_path(&self, family: DistanceFamily, k: usize) -> PathBuf {
        self.root.join(family.name()).join(format!("pi_{k}.perms"))
    }

    pub fn hist_path(&self, family: DistanceFamily, k: usize) -> PathBuf {
        self.root.join(family.name()).join(format!("S_{k}.hist"))
    }

    pub fn load_generators(&self, family: DistanceFamily, k: usize) -> Option<Generators> {
        let path = self.pi_path(family, k);
        let file = fs::File::open(&path).ok()?;
        let mut reader = BufReader::new(file);
        if !read_header(&mut reader, PERMS_HEADER) {
            warn_stale(&path);
            return None;
        }
        let parsed = PermSet::parse_lines(reader)
            .map_err(|e| e.to_string())
            .and_then(|set| {
                Generators::from_perms(family, k, set.iter().cloned()).map_err(|e| e.to_string())
            });
        match parsed {
            Ok(gens) => Some(gens),
            Err(reason) => {
                eprintln!("warning: ignoring cache file {}: {reason}", path.display());
                None
            }
        }
    }

    pub fn store_generators(&self, gens: &Generators) -> Result<(), CliError> {
        let path = self.pi_path(gens.family(), gens.k());
        write_atomically(&path, |out| {
            writeln!(out, "{PERMS_HEADER}")?;
            for perm in gens.perms() {
                writeln!(out, "{perm}")?;
            }
            Ok(())
        })
    }

    pub fn load_histogram(&self, family: DistanceFamily, k: usize) -> Option<LengthHistogram> {
        let path = self.hist_path(family, k);
        let text = fs::read_to_string(&path).ok()?;
        match parse_histogram(&text) {
            Ok(h) => Some(h),
            Err(reason) => {
                eprintln!("warning: ignoring cache file {}: {reason}", path.display());
                None
            }
        }
    }

    pub fn store_histogram(
        &self,
        family: DistanceFamily,
        k: usize,
        hist: &LengthHistogram,
    ) -> Result<(), CliError> {
        let path = self.hist_path(family, k);
        let text = histogram_to_text(hist);
        write_atomically(&path, |out| out.write_all(text.as_bytes()))
    }
}

fn read_header<R: BufRead>(reader: &mut R, expected: &str) -> bool {
    let mut first = String::new();
    reader.read_line(&mut first).is_ok() && first.trim_end() == expected
}

fn warn_stale(path: &Path) {
    eprintln!(
        "warning: ignoring cache file {} (missing or outdated header)",
        path.display()
    );
}

fn write_atomically<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>,
{
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir).map_err(io_err)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let file = fs::File::create(&tmp).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    body(&mut out).and_then(|_| out.flush()).map_err(io_err)?;
    drop(out);
    fs::rename(&tmp, path).map_err(io_err)
}

pub fn histogram_to_text(hist: &LengthHistogram) -> String {
    let mut out = format!("{HIST_HEADER}\n");
    if hist.has_epsilon() {
        out.push_str("0 1\n");
    }
    for (m, c) in hist.iter() {
        out.push_str(&format!("{m} {c}\n"));
    }
    out
}

pub fn parse_histogram(text: &str) -> Result<LengthHistogram, String> {
    let mut lines = text.lines();
    if lines.next().map(str::trim_end) != Some(HIST_HEADER) {
        return Err("missing or outdated header".into());
    }
    let mut hist = LengthHistogram::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace().map(str::parse::<u64>);
        match (fields.next(), fields.next(), fields.next()) {
            (Some(Ok(m)), Some(Ok(c)), None) => hist.add(m as usize, c),
            _ => return Err(format!("line {}: expected \"length count\"", idx + 2)),
        }
    }
    Ok(hist)
}

/// Builds distance classes, reading and writing the cache when one is
/// configured.
pub struct DistanceEngine {
    cache: Option<Cache>,
    limits: Limits,
}

impl DistanceEngine {
    pub fn new(cache: Option<Cache>, limits: Limits) -> Self {
        Self { cache, limits }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `Π_k`, resuming from the longest cached prefix of the chain.
    pub fn generators(&self, family: DistanceFamily, k: usize) -> Result<Generators, CliError> {
        check_ceiling(family, k, &self.limits)?;
        let Some(cache) = &self.cache else {
            return Ok(Generators::build(family, k));
        };
        let mut start = None;
        for j in (0..=k).rev() {
            if let Some(gens) = cache.load_generators(family, j) {
                start = Some(gens);
                break;
            }
        }
        let mut level = match start {
            Some(gens) => gens,
            None => {
                let base = Generators::base(family);
                cache.store_generators(&base)?;
                base
            }
        };
        while level.k() < k {
            level = level.next_level();
            cache.store_generators(&level)?;
        }
        Ok(level)
    }

    pub fn histogram(&self, family: DistanceFamily, k: usize) -> Result<LengthHistogram, CliError> {
        check_ceiling(family, k, &self.limits)?;
        if let Some(hist) = self
            .cache
            .as_ref()
            .and_then(|c| c.load_histogram(family, k))
        {
            return Ok(hist);
        }
        let hist = self.generators(family, k)?.histogram();
        if let Some(cache) = &self.cache {
            cache.store_histogram(family, k, &hist)?;
        }
        Ok(hist)
    }

    /// The polynomial counting elements within distance `k`.
    pub fn polynomial(&self, family: DistanceFamily, k: usize) -> Result<Polynomial, CliError> {
        Ok(Polynomial::from_histogram(&self.histogram(family, k)?))
    }

    /// The polynomial counting elements at distance exactly `k`.
    pub fn exact_polynomial(
        &self,
        family: DistanceFamily,
        k: usize,
    ) -> Result<Polynomial, CliError> {
        let within = self.polynomial(family, k)?;
        if k == 0 {
            return Ok(within);
        }
        Ok(&within - &self.polynomial(family, k - 1)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_text_round_trip() {
        let h = LengthHistogram::from_counts([(1, 2), (2, 2), (3, 1)], true);
        let text = histogram_to_text(&h);
        assert_eq!(text, format!("{HIST_HEADER}\n0 1\n1 2\n2 2\n3 1\n"));
        assert_eq!(parse_histogram(&text).unwrap(), h);
        assert!(parse_histogram("1 2\n").is_err());
        assert!(parse_histogram(&format!("{HIST_HEADER}\n1 x\n")).is_err());
    }

    #[test]
    fn engine_populates_and_reuses_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let engine = DistanceEngine::new(Some(cache.clone()), Limits::default());
        let cold = engine
            .polynomial(DistanceFamily::PrefixReversal, 4)
            .unwrap();
        for k in 0..=4 {
            assert!(
                cache.pi_path(DistanceFamily::PrefixReversal, k).exists(),
                "pi_{k}"
            );
        }
        assert!(cache.hist_path(DistanceFamily::PrefixReversal, 4).exists());
        let warm = engine
            .polynomial(DistanceFamily::PrefixReversal, 4)
            .unwrap();
        assert_eq!(cold, warm);
        let pi2 = fs::read_to_string(cache.pi_path(DistanceFamily::PrefixReversal, 2)).unwrap();
        assert_eq!(pi2, format!("{PERMS_HEADER}\n2 -1 3\n-2 1 3\n"));
    }

    #[test]
    fn corrupt_cache_files_are_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let family = DistanceFamily::BlockReversal;
        fs::create_dir_all(cache.hist_path(family, 1).parent().unwrap()).unwrap();
        fs::write(cache.hist_path(family, 1), "garbage\n").unwrap();
        fs::write(cache.pi_path(family, 1), format!("{PERMS_HEADER}\n1 2\n")).unwrap();
        let engine = DistanceEngine::new(Some(cache.clone()), Limits::default());
        let p = engine.polynomial(family, 1).unwrap();
        assert_eq!(p.to_string(), "[1, 1/2, 1/2]");
        assert_eq!(
            fs::read_to_string(cache.pi_path(family, 1)).unwrap(),
            format!("{PERMS_HEADER}\n1 -2 3\n")
        );
    }

    #[test]
    fn exact_polynomial_is_a_difference() {
        let engine = DistanceEngine::new(None, Limits::default());
        let r2 = engine
            .exact_polynomial(DistanceFamily::PrefixReversal, 2)
            .unwrap();
        assert_eq!(r2, Polynomial::from_integers(&[0, -1, 1]));
        assert_eq!(
            engine
                .exact_polynomial(DistanceFamily::PrefixReversal, 0)
                .unwrap(),
            Polynomial::one()
        );
    }
}
