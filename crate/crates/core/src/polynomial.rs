//! Exact univariate polynomials in `n` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridclass::LengthHistogram;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Coefficients in ascending degree; index `i` holds the coefficient of
/// `n^i`. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

/// How [`Polynomial::format`] renders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `[1, 1/2, 1/2]`, ascending degree. Lossless.
    CoeffArray,
    /// `\frac{1}{2}n^{2} + \frac{1}{2}n + 1`
    Latex,
    /// `1/2*n^2 + 1/2*n + 1`
    Text,
}

/// The JSON shape of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub basis: String,
    pub coeffs: Vec<String>,
    pub valid_for: String,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `n`.
    pub fn variable() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `n - a`
    pub fn linear_root(a: i64) -> Self {
        Self::new(vec![integer(-a), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs
            .get(degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn evaluate(&self, n: &BigInt) -> Rational {
        let x = Rational::from_integer(n.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn evaluate_at(&self, n: i64) -> Rational {
        self.evaluate(&BigInt::from(n))
    }

    /// Value at `n` when it is an integer.
    pub fn evaluate_integer(&self, n: i64) -> Option<BigInt> {
        let v = self.evaluate_at(n);
        v.is_integer().then(|| v.to_integer())
    }

    /// `C(n - 1, m - 1) = (n-1)(n-2)⋯(n-m+1) / (m-1)!`, the number of ways
    /// to fill a permutation of length `m` up to length `n`.
    pub fn binomial_basis(m: usize) -> Result<Polynomial> {
        if m == 0 {
            return Err(Error::Polynomial(
                "binomial basis index must be positive".into(),
            ));
        }
        Ok(shifted_choose(m - 1, 1))
    }

    /// `C(n, m) = n(n-1)⋯(n-m+1) / m!`
    pub fn choose(m: usize) -> Polynomial {
        shifted_choose(m, 0)
    }

    /// `Σ_m c_m · C(n - 1, m - 1)`; ε contributes nothing for `n ≥ 1`.
    pub fn from_histogram(hist: &LengthHistogram) -> Polynomial {
        BinomialCombination::from(hist).to_polynomial()
    }

    /// Gregory–Newton reconstruction of a polynomial vanishing at 0 from its
    /// values at `1..=k`:
    ///
    /// `R(n) = Σ_{j=1..k} ( Σ_{i=0..k-j} (-1)^i C(i+j, i) C(n, i+j) ) R(j)`
    ///
    /// The weight `C(i+j, i)` comes from expanding the forward differences
    /// `Δ^m R(0)`; with `C(i+j-1, i)` in its place the identity fails from
    /// `k = 3` on.
    pub fn gregory_newton(values: &[Rational], k: usize) -> Result<Polynomial> {
        if k == 0 || values.len() != k {
            return Err(Error::SampleCount {
                expected: k.max(1),
                actual: values.len(),
            });
        }
        let choose: Vec<Polynomial> = (0..=k).map(Polynomial::choose).collect();
        let mut out = Polynomial::zero();
        for j in 1..=k {
            let mut weight = Polynomial::zero();
            for i in 0..=k - j {
                let c = Rational::from_integer(binomial(i + j, i));
                let c = if i % 2 == 1 { -c } else { c };
                weight = &weight + &choose[i + j].scale(&c);
            }
            out = &out + &weight.scale(&values[j - 1]);
        }
        Ok(out)
    }

    pub fn format(&self, style: Style) -> String {
        match style {
            Style::CoeffArray => {
                let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
                format!("[{}]", parts.join(", "))
            }
            Style::Text => self.format_terms(|c, d| {
                let mag = c.abs();
                let unit = mag.is_one() && d > 0;
                let mut s = String::new();
                if !unit {
                    write!(s, "{mag}").unwrap();
                }
                match d {
                    0 => {}
                    1 if unit => s.push('n'),
                    1 => s.push_str("*n"),
                    _ if unit => write!(s, "n^{d}").unwrap(),
                    _ => write!(s, "*n^{d}").unwrap(),
                }
                s
            }),
            Style::Latex => self.format_terms(|c, d| {
                let mag = c.abs();
                let mut s = String::new();
                if !(mag.is_one() && d > 0) {
                    if mag.is_integer() {
                        write!(s, "{}", mag.numer()).unwrap();
                    } else {
                        write!(s, "\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()).unwrap();
                    }
                }
                match d {
                    0 => {}
                    1 => s.push('n'),
                    _ => write!(s, "n^{{{d}}}").unwrap(),
                }
                s
            }),
        }
    }

    /// Descending-degree sum of nonzero terms; `term` renders magnitudes.
    fn format_terms(&self, term: impl Fn(&Rational, usize) -> String) -> String {
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = term(c, d);
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            basis: "monomial".into(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            valid_for: "n>=1".into(),
        }
    }

    /// Parses `"a"` or `"a/b"` coefficient strings; the result is reduced.
    pub fn from_record(record: &PolynomialRecord) -> Result<Polynomial> {
        if record.basis != "monomial" {
            return Err(Error::Polynomial(format!(
                "unsupported basis {:?}",
                record.basis
            )));
        }
        record
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Polynomial(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `C(n - shift, m)` as a polynomial in `n`.
fn shifted_choose(m: usize, shift: i64) -> Polynomial {
    let mut acc = Polynomial::one();
    for t in 0..m as i64 {
        acc = &acc * &Polynomial::linear_root(t + shift);
    }
    acc.scale(&Rational::new(BigInt::one(), factorial(m)))
}

pub(crate) fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, t| acc * t)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::CoeffArray))
    }
}

/// `Σ_m c_m · C(n - 1, m - 1)` with nonnegative integer weights, the
/// lossless form of an enumerating polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BinomialCombination {
    terms: BTreeMap<usize, u64>,
}

impl BinomialCombination {
    pub fn new<I: IntoIterator<Item = (usize, u64)>>(terms: I) -> Result<Self> {
        let mut out = Self::default();
        for (m, c) in terms {
            if m == 0 {
                return Err(Error::Polynomial("binomial index must be positive".into()));
            }
            if c > 0 {
                *out.terms.entry(m).or_insert(0) += c;
            }
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let Some(&top) = self.terms.keys().next_back() else {
            return Polynomial::zero();
        };
        // build C(n-1, m-1) incrementally: multiply by (n - m) / m each step
        let mut basis = Polynomial::one();
        let mut out = Polynomial::zero();
        for m in 1..=top {
            if m > 1 {
                let step = Polynomial::linear_root(m as i64 - 1)
                    .scale(&Rational::new(BigInt::one(), BigInt::from(m - 1)));
                basis = &basis * &step;
            }
            if let Some(&c) = self.terms.get(&m) {
                out = &out + &basis.scale(&Rational::from_integer(BigInt::from(c)));
            }
        }
        out
    }

    /// Recovers the weights from forward differences of `p` at `n = 1, 2, …`.
    /// Fails unless every weight is a nonnegative integer.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let Some(deg) = p.degree() else {
            return Ok(Self::default());
        };
        let mut diffs: Vec<Rational> = (1..=deg as i64 + 1).map(|n| p.evaluate_at(n)).collect();
        let mut terms = Vec::with_capacity(deg + 1);
        for m in 1..=deg + 1 {
            let c = &diffs[0];
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Polynomial(format!(
                    "weight {c} of C(n-1, {}) is not a nonnegative integer",
                    m - 1
                )));
            }
            let c = c
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Polynomial("weight overflows u64".into()))?;
            terms.push((m, c));
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self::new(terms)
    }
}

impl From<&LengthHistogram> for BinomialCombination {
    fn from(h: &LengthHistogram) -> Self {
        Self {
            terms: h.iter().collect(),
        }
    }
}
