//! Exact supporting-hyperplane search for finitely generated cones.
//!
//! A face of the cone spanned by some generators is certified by a linear
//! functional `w` vanishing on the kept generators and strictly positive on
//! the excluded ones (while nonnegative on everything). The search runs
//! Fourier–Motzkin elimination over rationals and back-substitutes a witness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<BigRational>,
    bound: BigRational,
}

impl Constraint {
    /// `coeffs · w ≥ bound`
    fn new(coeffs: &[i64], bound: i64) -> Self {
        Constraint {
            coeffs: coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            bound: BigRational::from_integer(BigInt::from(bound)),
        }
    }

    fn normalized(mut self) -> Self {
        // scale so the leading nonzero coefficient has absolute value 1
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = lead.abs();
            for c in &mut self.coeffs {
                *c = &*c / &s;
            }
            self.bound = &self.bound / &s;
        }
        self
    }
}

/// Finds an integer functional `w` with `⟨w,g⟩ = 0` on `zero`, `⟨w,g⟩ ≥ 1` on
/// `positive` and `⟨w,g⟩ ≥ 0` on `nonneg`. All vectors have length `dim`.
pub fn find_functional(dim: usize, zero: &[Vec<i64>], positive: &[Vec<i64>], nonneg: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mut system: Vec<Constraint> = Vec::new();
    for g in zero {
        system.push(Constraint::new(g, 0));
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        system.push(Constraint::new(&neg, 0));
    }
    for g in positive {
        system.push(Constraint::new(g, 1));
    }
    for g in nonneg {
        system.push(Constraint::new(g, 0));
    }

    // levels[k] holds the system in variables 0..=k (higher ones eliminated)
    let mut levels: Vec<Vec<Constraint>> = vec![Vec::new(); dim];
    let mut current = system;
    for var in (0..dim).rev() {
        levels[var] = current.clone();
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.coeffs[var].is_positive() {
                pos.push(c);
            } else if c.coeffs[var].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let sp = p.coeffs[var].clone();
                let sn = -n.coeffs[var].clone();
                let coeffs: Vec<BigRational> = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * &sn + b * &sp).collect();
                let bound = &p.bound * &sn + &n.bound * &sp;
                rest.push(Constraint { coeffs, bound }.normalized());
            }
        }
        dedup(&mut rest);
        current = rest;
    }
    // everything eliminated: remaining constraints read 0 ≥ bound
    if current.iter().any(|c| c.bound.is_positive()) {
        return None;
    }

    let mut w: Vec<BigRational> = vec![BigRational::zero(); dim];
    for var in 0..dim {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for c in &levels[var] {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rhs = c.bound.clone();
            for (j, wj) in w.iter().enumerate().take(var) {
                rhs -= &c.coeffs[j] * wj;
            }
            let v = rhs / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| &v > l) {
                    lower = Some(v);
                }
            } else if upper.as_ref().is_none_or(|u| &v < u) {
                upper = Some(v);
            }
        }
        w[var] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }

    let mut denom = BigInt::one();
    for x in &w {
        denom = denom.lcm(x.denom());
    }
    let wi: Vec<i64> = w
        .iter()
        .map(|x| {
            let v = x.numer() * (&denom / x.denom());
            i64::try_from(v).expect("functional coefficient overflow")
        })
        .collect();
    let dot = |g: &[i64]| -> i64 { g.iter().zip(&wi).map(|(a, b)| a * b).sum() };
    let ok =
        zero.iter().all(|g| dot(g) == 0) && positive.iter().all(|g| dot(g) > 0) && nonneg.iter().all(|g| dot(g) >= 0);
    debug_assert!(ok, "Fourier-Motzkin back-substitution produced an invalid witness");
    ok.then_some(wi)
}

fn dedup(cs: &mut Vec<Constraint>) {
    let mut seen: Vec<Constraint> = Vec::new();
    for c in cs.drain(..) {
        if c.coeffs.iter().all(|x| x.is_zero()) && !c.bound.is_positive() {
            continue; // trivially satisfied
        }
        if !seen.iter().any(|s| s.coeffs == c.coeffs && s.bound == c.bound) {
            seen.push(c);
        }
    }
    *cs = seen;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn quadrant_faces() {
        let x = vec![1, 0];
        let y = vec![0, 1];
        let w = find_functional(2, std::slice::from_ref(&y), std::slice::from_ref(&x), &[]).unwrap();
        assert_eq!(dot(&w, &y), 0);
        assert!(dot(&w, &x) > 0);
        assert!(find_functional(2, &[], &[x.clone(), y.clone()], &[]).is_some());
    }

    #[test]
    fn group_has_no_proper_face() {
        // ℤ generated by 1 and -1
        assert!(find_functional(1, &[], &[vec![1], vec![-1]], &[]).is_none());
        assert!(find_functional(1, &[vec![-1]], &[vec![1]], &[]).is_none());
        assert_eq!(find_functional(1, &[vec![1], vec![-1]], &[], &[]), Some(vec![0]));
    }

    #[test]
    fn nonneg_side_constraints() {
        // generators (1,0),(1,1),(1,2); face spanned by (1,0)
        let gens = [vec![1, 0], vec![1, 1], vec![1, 2]];
        let w = find_functional(2, &[gens[0].clone()], &gens[1..], &[]).unwrap();
        assert!(dot(&w, &gens[1]) > 0 && dot(&w, &gens[2]) > 0);
        // the middle ray is not a face
        assert!(find_functional(2, &[gens[1].clone()], &[gens[0].clone(), gens[2].clone()], &[]).is_none());
    }
}
