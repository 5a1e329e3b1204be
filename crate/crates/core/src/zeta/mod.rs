//! Point counts over `D_k`, counting polynomials and zeta functions.

mod gf;
mod weil;

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::scheme::{points_over, MScheme};

pub use gf::{galois_field, hasse_weil_crosscheck, HasseWeil};
pub use weil::{limit_check, weil_series, LimitCheck, WeilSeries};

pub const DEFAULT_RANGE: RangeInclusive<usize> = 2..=12;

/// `#X(D_k)` for each `k` of a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub scheme: String,
    pub counts: Vec<(i64, i64)>,
}

pub fn count_points(x: &MScheme, k: usize) -> Result<i64> {
    Ok(points_over(x, &Monoid::dk(k)?)?.total as i64)
}

pub fn count_table(x: &MScheme, ks: RangeInclusive<usize>) -> Result<CountTable> {
    let counts = std::thread::scope(|s| {
        let handles: Vec<_> = ks
            .map(|k| s.spawn(move || count_points(x, k).map(|c| (k as i64, c))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("count worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(CountTable {
        scheme: x.name().to_string(),
        counts,
    })
}

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * x + BigInt::from(c))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Polynomial(IntPoly),
    /// No integer polynomial reproduces the table; `first_failure` is the
    /// first `k` that the best low-degree fit gets wrong.
    NonPolynomial {
        first_failure: Option<i64>,
        reason: String,
    },
}

fn fit(points: &[(i64, i64)]) -> Vec<BigRational> {
    // Newton divided differences, expanded into the monomial basis.
    let n = points.len();
    let xs: Vec<BigRational> = points.iter().map(|p| BigRational::from_integer(p.0.into())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|p| BigRational::from_integer(p.1.into())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs := coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn eval_rational(coeffs: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(x.into());
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Least-degree exact interpolation, verified on every remaining entry.
///
/// Degree `d` is fitted through the first `d + 1` entries and must reproduce
/// the rest; at least one entry is always held out. When no degree works,
/// the reported failure is the first break of the lowest-degree fit that
/// verified at least one held-out entry, or else the last entry.
pub fn interpolate(table: &CountTable) -> Result<Verdict> {
    let pts = &table.counts;
    if pts.len() < 2 {
        return Err(Error::InvalidArgument("interpolation needs at least two counts".into()));
    }
    let mut fallback = None;
    for d in 0..pts.len() - 1 {
        let coeffs = fit(&pts[..=d]);
        let fails = pts[d + 1..]
            .iter()
            .find(|&&(k, c)| eval_rational(&coeffs, k) != BigRational::from_integer(c.into()));
        match fails {
            None => {
                if coeffs.iter().any(|c| !c.is_integer()) {
                    return Ok(Verdict::NonPolynomial {
                        first_failure: None,
                        reason: format!("interpolant of degree {d} has non-integer coefficients"),
                    });
                }
                let ints = coeffs
                    .iter()
                    .map(|c| c.to_integer().to_i64().expect("coefficient fits in i64"))
                    .collect();
                return Ok(Verdict::Polynomial(IntPoly(ints)));
            }
            Some(&(k, _)) => {
                if fallback.is_none() && k != pts[d + 1].0 {
                    fallback = Some(k);
                }
            }
        }
    }
    Ok(Verdict::NonPolynomial {
        first_failure: Some(fallback.unwrap_or(pts.last().unwrap().0)),
        reason: "no polynomial of degree below the table length fits every count".into(),
    })
}

/// `ζ_X(s) = ∏ (s − i)^{a_i}`, stored as the exponents `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFactors(pub Vec<i64>);

pub fn zeta_factor(n: &IntPoly) -> ZetaFactors {
    ZetaFactors(n.0.clone())
}

impl ZetaFactors {
    pub fn eval(&self, s: f64) -> f64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| (s - i as f64).powi(a as i32))
            .product()
    }

    /// Exponents of `N + M` are the sums of the exponents.
    pub fn mul(&self, other: &ZetaFactors) -> ZetaFactors {
        let n = self.0.len().max(other.0.len());
        ZetaFactors(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl fmt::Display for ZetaFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                let base = if i == 0 { "s".to_string() } else { format!("(s-{i})") };
                if a == 1 {
                    base
                } else {
                    format!("{base}^{a}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(""))
        }
    }
}

/// `∏ (1 − pⁱT)^{−a_i}` as text.
pub fn weil_factors(n: &IntPoly) -> String {
    let parts: Vec<String> =
        n.0.iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                let base = match i {
                    0 => "(1-T)".to_string(),
                    1 => "(1-pT)".to_string(),
                    _ => format!("(1-p^{i}T)"),
                };
                if a == -1 {
                    base
                } else {
                    format!("{base}^{}", -a)
                }
            })
            .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub table: CountTable,
    pub verdict: Verdict,
    pub zeta: Option<ZetaFactors>,
    pub weil: Option<String>,
    /// Set when `N = x − 1`, whose zeta function is `(s−1)/s` and not the
    /// inverse value sometimes quoted for `GL₁`.
    pub note: Option<String>,
}

pub fn zeta_report(x: &MScheme, ks: RangeInclusive<usize>) -> Result<ZetaReport> {
    report_from_table(count_table(x, ks)?)
}

pub fn report_from_table(table: CountTable) -> Result<ZetaReport> {
    let verdict = interpolate(&table)?;
    let (zeta, weil, note) = match &verdict {
        Verdict::Polynomial(n) => {
            let note = (n.0 == [-1, 1]).then(|| {
                "N(x) = x-1 gives zeta = s^-1(s-1) = (s-1)/s; the value s/(s-1) quoted for GL1 is its inverse"
                    .to_string()
            });
            (Some(zeta_factor(n)), Some(weil_factors(n)), note)
        }
        Verdict::NonPolynomial { .. } => (None, None, None),
    };
    Ok(ZetaReport {
        table,
        verdict,
        zeta,
        weil,
        note,
    })
}

impl ZetaReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "scheme": self.table.scheme,
            "counts": self.table.counts.iter().map(|&(k, c)| json!([k, c])).collect::<Vec<_>>(),
            "polynomial": matches!(self.verdict, Verdict::Polynomial(_)),
        });
        match &self.verdict {
            Verdict::Polynomial(n) => {
                v["poly_coeffs"] = json!(n.0);
                v["poly"] = json!(n.to_string());
            }
            Verdict::NonPolynomial { first_failure, reason } => {
                v["first_failure"] = json!(first_failure);
                v["reason"] = json!(reason);
            }
        }
        if let Some(z) = &self.zeta {
            v["zeta_factors"] = json!(z.0);
            v["zeta"] = json!(z.to_string());
        }
        if let Some(w) = &self.weil {
            v["weil_factors"] = json!(w);
        }
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

impl fmt::Display for ZetaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scheme {}", self.table.scheme)?;
        for (k, c) in &self.table.counts {
            writeln!(f, "  #X(D{k}) = {c}")?;
        }
        match &self.verdict {
            Verdict::Polynomial(n) => writeln!(f, "N(x) = {n}")?,
            Verdict::NonPolynomial { first_failure, reason } => {
                writeln!(f, "non-polynomial: {reason}")?;
                if let Some(k) = first_failure {
                    writeln!(f, "first failure at k = {k}")?;
                }
            }
        }
        if let Some(z) = &self.zeta {
            writeln!(f, "zeta(s) = {z}")?;
        }
        if let Some(w) = &self.weil {
            writeln!(f, "Z(p,T) = {w}")?;
        }
        if let Some(n) = &self.note {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
