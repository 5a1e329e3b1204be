//! Finitely generated submonoids of ℤ^d.
//!
//! These are written additively: the monoid product of two elements is the
//! vector sum and the identity is the zero vector. `(ℕ,+)` stands for the
//! multiplicative `C_{∞,+} = {1, τ, τ², …}`, and `ℤ` for `C_∞`.

use std::sync::OnceLock;

use crate::cone::find_functional;
use crate::intmat::{hilbert_basis, solve_integer, IntMatrix};

#[derive(Clone, Debug)]
pub struct LatticeMonoid {
    pub(crate) name: String,
    pub(crate) dim: usize,
    pub(crate) generators: Vec<Vec<i64>>,
    cache: OnceLock<LatticeData>,
}

#[derive(Clone, Debug)]
struct LatticeData {
    /// Generators lying in the minimal face, i.e. the invertible ones.
    unit_mask: Vec<bool>,
    /// Vanishes on unit generators, strictly positive on the others.
    closed_functional: Vec<i64>,
    /// Generating pairs `(c, c')` of the kernel congruence of `ℕⁿ → ℤ^d`.
    relations: Vec<(Vec<u32>, Vec<u32>)>,
}

impl PartialEq for LatticeMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for LatticeMonoid {}

impl LatticeMonoid {
    pub fn new(name: impl Into<String>, dim: usize, generators: Vec<Vec<i64>>) -> Self {
        assert!(
            generators.iter().all(|g| g.len() == dim),
            "generator dimension mismatch"
        );
        LatticeMonoid {
            name: name.into(),
            dim,
            generators,
            cache: OnceLock::new(),
        }
    }

    /// `ℕ^n` with the standard basis.
    pub fn nat(n: usize) -> Self {
        let gens = (0..n).map(|i| unit_vector(n, i, 1)).collect();
        let name = if n == 1 { "N".to_string() } else { format!("N^{n}") };
        Self::new(name, n, gens)
    }

    /// `ℤ^n = C_∞ⁿ` generated by `±eᵢ`.
    pub fn integers(n: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..n {
            gens.push(unit_vector(n, i, 1));
            gens.push(unit_vector(n, i, -1));
        }
        let name = if n == 1 {
            "Cinf".to_string()
        } else {
            format!("Cinf^{n}")
        };
        Self::new(name, n, gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    fn data(&self) -> &LatticeData {
        self.cache.get_or_init(|| {
            let n = self.generators.len();
            let unit_mask: Vec<bool> = (0..n)
                .map(|i| {
                    let others: Vec<Vec<i64>> =
                        (0..n).filter(|&j| j != i).map(|j| self.generators[j].clone()).collect();
                    find_functional(self.dim, &[], &[self.generators[i].clone()], &others).is_none()
                })
                .collect();
            let (units, rest): (Vec<_>, Vec<_>) = (0..n).partition(|&i| unit_mask[i]);
            let pick = |ix: &[usize]| ix.iter().map(|&i| self.generators[i].clone()).collect::<Vec<_>>();
            let closed_functional =
                find_functional(self.dim, &pick(&units), &pick(&rest), &[]).expect("the non-units always form a prime");
            let relations = if n == 0 {
                Vec::new()
            } else {
                let mut cols = self.generators.clone();
                cols.extend(self.generators.iter().map(|g| g.iter().map(|x| -x).collect::<Vec<_>>()));
                hilbert_basis(&IntMatrix::from_columns(&cols, self.dim))
                    .into_iter()
                    .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
                    .filter(|(a, b)| a != b)
                    .collect()
            };
            LatticeData {
                unit_mask,
                closed_functional,
                relations,
            }
        })
    }

    pub fn unit_mask(&self) -> &[bool] {
        &self.data().unit_mask
    }

    pub fn closed_functional(&self) -> &[i64] {
        &self.data().closed_functional
    }

    pub fn kernel_relations(&self) -> &[(Vec<u32>, Vec<u32>)] {
        &self.data().relations
    }

    pub fn unit_generators(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .zip(self.unit_mask())
            .filter(|(_, &u)| u)
            .map(|(g, _)| g.clone())
            .collect()
    }

    /// Coefficients `c` with `v = Σ cᵢ gᵢ`, nonnegative on non-unit generators
    /// and arbitrary integers on unit generators. `None` iff `v ∉ A`.
    ///
    /// The non-unit part is bounded by `⟨w,v⟩` for the closed-point functional
    /// `w`; the remainder is solved exactly in the unit lattice.
    pub fn decompose(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.dim {
            return None;
        }
        let w = self.closed_functional();
        let dot = |a: &[i64]| -> i64 { a.iter().zip(w).map(|(x, y)| x * y).sum() };
        let target = dot(v);
        if target < 0 {
            return None;
        }
        let mask = self.unit_mask();
        let free: Vec<usize> = (0..self.generators.len()).filter(|&i| !mask[i]).collect();
        let units: Vec<usize> = (0..self.generators.len()).filter(|&i| mask[i]).collect();
        let weights: Vec<i64> = free.iter().map(|&i| dot(&self.generators[i])).collect();
        let unit_matrix = IntMatrix::from_columns(
            &units.iter().map(|&i| self.generators[i].clone()).collect::<Vec<_>>(),
            self.dim,
        );
        let mut counts = vec![0i64; free.len()];
        let mut found = None;
        self.search(&free, &weights, 0, target, &mut counts, &mut |counts| {
            let mut residual = v.to_vec();
            for (k, &i) in free.iter().enumerate() {
                for (r, g) in residual.iter_mut().zip(&self.generators[i]) {
                    *r -= counts[k] * g;
                }
            }
            let z = if units.is_empty() {
                residual.iter().all(|&x| x == 0).then(Vec::new)
            } else {
                solve_integer(&unit_matrix, &residual)
            };
            if let Some(z) = z {
                let mut coeffs = vec![0i64; self.generators.len()];
                for (k, &i) in free.iter().enumerate() {
                    coeffs[i] = counts[k];
                }
                for (k, &i) in units.iter().enumerate() {
                    coeffs[i] = z[k];
                }
                found = Some(coeffs);
                true
            } else {
                false
            }
        });
        found
    }

    fn search(
        &self,
        free: &[usize],
        weights: &[i64],
        pos: usize,
        remaining: i64,
        counts: &mut Vec<i64>,
        accept: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if pos == free.len() {
            return remaining == 0 && accept(counts);
        }
        let wt = weights[pos];
        let max = remaining / wt;
        for c in 0..=max {
            counts[pos] = c;
            if self.search(free, weights, pos + 1, remaining - c * wt, counts, accept) {
                return true;
            }
        }
        counts[pos] = 0;
        false
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.decompose(v).is_some()
    }

    pub fn is_unit(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.contains(v) && self.contains(&neg)
    }
}

/// Generators of `A ∩ B` inside the common ambient lattice, from the Hilbert
/// basis of `{(c, c') ∈ ℕ^{n+n'} : Σ cᵢaᵢ = Σ c'ⱼbⱼ}`.
pub fn intersect(a: &LatticeMonoid, b: &LatticeMonoid) -> LatticeMonoid {
    assert_eq!(a.dim, b.dim, "intersection needs a common ambient lattice");
    let mut cols = a.generators.clone();
    cols.extend(b.generators.iter().map(|g| g.iter().map(|x| -x).collect::<Vec<_>>()));
    let n = a.generators.len();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    if !cols.is_empty() {
        for h in hilbert_basis(&IntMatrix::from_columns(&cols, a.dim)) {
            let mut v = vec![0i64; a.dim];
            for (c, g) in h[..n].iter().zip(&a.generators) {
                for (x, y) in v.iter_mut().zip(g) {
                    *x += *c as i64 * y;
                }
            }
            if v.iter().any(|&x| x != 0) && !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    gens.sort();
    LatticeMonoid::new(format!("{}&{}", a.name, b.name), a.dim, gens)
}

pub(crate) fn unit_vector(n: usize, i: usize, value: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = value;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive membership oracle: all combinations with coefficients ≤ bound.
    fn brute_member(gens: &[Vec<i64>], v: &[i64], bound: i64) -> bool {
        fn go(gens: &[Vec<i64>], acc: Vec<i64>, v: &[i64], bound: i64) -> bool {
            match gens.split_first() {
                None => acc == v,
                Some((g, rest)) => (0..=bound).any(|c| {
                    let next: Vec<i64> = acc.iter().zip(g).map(|(a, x)| a + c * x).collect();
                    go(rest, next, v, bound)
                }),
            }
        }
        go(gens, vec![0; v.len()], v, bound)
    }

    #[test]
    fn membership_examples() {
        let n2 = LatticeMonoid::nat(2);
        assert!(n2.contains(&[2, 3]));
        assert!(!n2.contains(&[-1, 0]));
        let two_three = LatticeMonoid::new("<2,3>", 1, vec![vec![2], vec![3]]);
        assert!(!two_three.contains(&[1]));
        assert!(two_three.contains(&[7]));
        let z = LatticeMonoid::integers(1);
        assert!(z.contains(&[-7]));
        assert!(z.is_unit(&[5]));
    }

    #[test]
    fn membership_matches_brute_force() {
        let gens = vec![vec![2], vec![3]];
        let m = LatticeMonoid::new("<2,3>", 1, gens.clone());
        for v in -3..=12 {
            assert_eq!(m.contains(&[v]), brute_member(&gens, &[v], 6), "v = {v}");
        }
    }

    #[test]
    fn unit_detection() {
        // ℕ × ℤ
        let m = LatticeMonoid::new("NxZ", 2, vec![vec![1, 0], vec![0, 1], vec![0, -1]]);
        assert_eq!(m.unit_mask(), &[false, true, true]);
        assert!(m.is_unit(&[0, -4]));
        assert!(!m.is_unit(&[1, 0]));
        let c = m.decompose(&[2, -3]).unwrap();
        assert_eq!(c[0], 2);
    }

    #[test]
    fn intersection_of_half_lines() {
        let plus = LatticeMonoid::nat(1);
        let minus = LatticeMonoid::new("N-", 1, vec![vec![-1]]);
        assert!(intersect(&plus, &minus).generators().is_empty());
        let z = LatticeMonoid::integers(1);
        let two_three = LatticeMonoid::new("<2,3>", 1, vec![vec![2], vec![3]]);
        let i = intersect(&z, &two_three);
        for v in -3..10 {
            assert_eq!(i.contains(&[v]), two_three.contains(&[v]));
        }
    }

    #[test]
    fn kernel_relations_of_integers() {
        let z = LatticeMonoid::integers(1);
        assert!(z.kernel_relations().contains(&(vec![1, 1], vec![0, 0])));
        assert!(LatticeMonoid::nat(2).kernel_relations().is_empty());
    }
}
