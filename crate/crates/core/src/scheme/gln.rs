//! `GLₙ` as a scheme, monomial matrices, and the point sets of `Oₙ` and `Sp₂ₗ`.
//!
//! A point `(σ, u)` is the monomial matrix with entry `u_i` at `(i, σ(i))`.
//! Matrix multiplication gives `(σ, u)(τ, v) = (τ∘σ, i ↦ u_i v_{σ(i)})`.

use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{hom_enumerate, Element, Monoid, MonoidHom};
use crate::zext::{MonoidRing, MonoidRingElem};

use super::{glue, MScheme};

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub entries: Vec<Element>,
}

pub type GlPoint = MonomialMatrix;

impl MonomialMatrix {
    pub fn identity(n: usize, a: &Monoid) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            entries: vec![a.one(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Self, a: &Monoid) -> Result<Self> {
        let entries = (0..self.n())
            .map(|i| a.mul(&self.entries[i], &other.entries[self.perm[i]]))
            .collect::<Result<_>>()?;
        Ok(MonomialMatrix {
            perm: compose(&other.perm, &self.perm),
            entries,
        })
    }

    pub fn inverse(&self, a: &Monoid) -> Result<Self> {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut entries = vec![a.one(); n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            entries[j] = a
                .inverse(&self.entries[i])
                .ok_or_else(|| Error::InvalidArgument(format!("entry {} is not a unit", a.label(&self.entries[i]))))?;
        }
        Ok(MonomialMatrix { perm, entries })
    }

    /// The matrix over `ℤ[A]`.
    pub fn to_ring(&self) -> Vec<Vec<MonoidRingElem>> {
        let n = self.n();
        let mut m = vec![vec![MonoidRingElem::zero(); n]; n];
        for i in 0..n {
            m[i][self.perm[i]] = MonoidRingElem::basis(self.entries[i].clone());
        }
        m
    }

    pub fn display(&self, a: &Monoid) -> String {
        let rows: Vec<String> = (0..self.n())
            .map(|i| {
                let cells: Vec<String> = (0..self.n())
                    .map(|j| {
                        if self.perm[i] == j {
                            a.label(&self.entries[i])
                        } else {
                            ".".into()
                        }
                    })
                    .collect();
                cells.join(" ")
            })
            .collect();
        rows.join("\n")
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}", self.perm, self.entries)
    }
}

/// `GLₙ(F_A)`: all monomial matrices with entries in `A^×`.
pub fn monomial_matrix_group(n: usize, a: &Monoid) -> Result<Vec<MonomialMatrix>> {
    let units = a.units();
    let units = units
        .finite_elements()
        .ok_or_else(|| Error::Unsupported(format!("monomial matrices over {a} with infinitely many units")))?;
    let mut entry_choices: Vec<Vec<Element>> = vec![vec![]];
    for _ in 0..n {
        entry_choices = entry_choices
            .into_iter()
            .flat_map(|e| units.iter().map(move |u| [e.clone(), vec![u.clone()]].concat()))
            .collect();
    }
    Ok(permutations(n)
        .into_iter()
        .flat_map(|p| {
            entry_choices.iter().map(move |e| MonomialMatrix {
                perm: p.clone(),
                entries: e.clone(),
            })
        })
        .collect())
}

/// `q = diag(J, …, J)` with a trailing `1` when `n` is odd.
pub fn orthogonal_form(n: usize) -> Vec<Vec<i64>> {
    let mut q = vec![vec![0; n]; n];
    for b in 0..n / 2 {
        q[2 * b][2 * b + 1] = 1;
        q[2 * b + 1][2 * b] = 1;
    }
    if n % 2 == 1 {
        q[n - 1][n - 1] = 1;
    }
    q
}

/// The `2l × 2l` matrix with anti-diagonal `(1, …, 1, −1, …, −1)`.
pub fn symplectic_form(l: usize) -> Vec<Vec<i64>> {
    let n = 2 * l;
    let mut s = vec![vec![0; n]; n];
    for i in 0..n {
        s[i][n - 1 - i] = if i < l { 1 } else { -1 };
    }
    s
}

/// `#{g ∈ GLₙ(F_A) : g·F·gᵗ = F}` with the products taken in `ℤ[A]`.
pub fn form_preserving_count(a: &Monoid, form: &[Vec<i64>]) -> Result<usize> {
    let n = form.len();
    if form.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("form must be square".into()));
    }
    let ring = MonoidRing::new(a);
    let f: Vec<Vec<MonoidRingElem>> = form
        .iter()
        .map(|r| r.iter().map(|&c| ring.integer(c)).collect())
        .collect();
    let matmul = |x: &[Vec<MonoidRingElem>], y: &[Vec<MonoidRingElem>]| -> Vec<Vec<MonoidRingElem>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| (0..n).fold(MonoidRingElem::zero(), |acc, j| acc.add(&ring.mul(&x[i][j], &y[j][k]))))
                    .collect()
            })
            .collect()
    };
    let mut count = 0;
    for g in monomial_matrix_group(n, a)? {
        let gm = g.to_ring();
        let gt: Vec<Vec<MonoidRingElem>> = (0..n).map(|i| (0..n).map(|j| gm[j][i].clone()).collect()).collect();
        if matmul(&matmul(&gm, &f), &gt) == f {
            count += 1;
        }
    }
    Ok(count)
}

/// `GLₙ` as `n!` disjoint copies of `Spec C_∞ⁿ`, one per permutation.
#[derive(Clone, Debug)]
pub struct GlScheme {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
    pub scheme: MScheme,
    coords: Monoid,
    pairs: Monoid,
}

pub fn gl_n(n: usize) -> Result<GlScheme> {
    if n == 0 {
        return Err(Error::InvalidArgument("GL_n needs n >= 1".into()));
    }
    let perms = permutations(n);
    let charts = perms
        .iter()
        .map(|p| {
            let name: String = p.iter().map(|i| i.to_string()).collect();
            (format!("X{name}"), Monoid::inf_cyclic_pow(n))
        })
        .collect();
    let scheme = glue(format!("GL{n}"), charts, vec![])?;
    let coords = scheme.charts()[0].monoid().clone();
    Ok(GlScheme {
        n,
        perms,
        scheme,
        coords,
        pairs: Monoid::inf_cyclic_pow(2 * n),
    })
}

fn coordinate(n: usize, i: usize, sign: i64) -> Element {
    let mut v = vec![0; n];
    v[i] = sign;
    Element::Vector(v)
}

impl GlScheme {
    fn chart_of(&self, perm: &[usize]) -> usize {
        self.perms
            .iter()
            .position(|p| p == perm)
            .expect("every permutation has a chart")
    }

    /// `μ_{σ,τ}: C_∞ⁿ → C_∞ⁿ × C_∞ⁿ` for the chart of `τ∘σ`: `e_i ↦ (e_i, e_{σ(i)})`.
    pub fn comultiplication(&self, sigma: usize, tau: usize) -> Result<(usize, MonoidHom)> {
        let n = self.n;
        let s = &self.perms[sigma];
        let images = (0..n)
            .flat_map(|i| {
                [1, -1].map(|sign| {
                    let mut v = vec![0; 2 * n];
                    v[i] = sign;
                    v[n + s[i]] = sign;
                    Element::Vector(v)
                })
            })
            .collect();
        let chart = self.chart_of(&compose(&self.perms[tau], s));
        Ok((chart, MonoidHom::new(self.coords.clone(), self.pairs.clone(), images)?))
    }

    /// Reads off `(σ, u)` from a morphism `Spec B → X_σ`, i.e. `φ: C_∞ⁿ → B`.
    pub fn point(&self, chart: usize, phi: &MonoidHom) -> Result<GlPoint> {
        let entries = (0..self.n)
            .map(|i| phi.apply(&coordinate(self.n, i, 1)))
            .collect::<Result<_>>()?;
        Ok(MonomialMatrix {
            perm: self.perms[chart].clone(),
            entries,
        })
    }

    fn chart_map(&self, p: &GlPoint, b: &Monoid) -> Result<MonoidHom> {
        let images = p
            .entries
            .iter()
            .flat_map(|u| {
                [
                    Ok(u.clone()),
                    b.inverse(u)
                        .ok_or_else(|| Error::InvalidArgument("entry is not a unit".into())),
                ]
            })
            .collect::<Result<_>>()?;
        MonoidHom::new(self.coords.clone(), b.clone(), images)
    }

    /// `GLₙ(B) = Hom(Spec B, GLₙ)`.
    pub fn points(&self, b: &Monoid) -> Result<Vec<GlPoint>> {
        let mut out = Vec::new();
        for (chart, c) in self.scheme.charts().iter().enumerate() {
            for phi in hom_enumerate(c.monoid(), b)? {
                out.push(self.point(chart, &phi)?);
            }
        }
        Ok(out)
    }

    /// The product of two `B`-points, computed through the comultiplication.
    pub fn multiply(&self, p: &GlPoint, q: &GlPoint, b: &Monoid) -> Result<GlPoint> {
        let (sigma, tau) = (self.chart_of(&p.perm), self.chart_of(&q.perm));
        let (chart, mu) = self.comultiplication(sigma, tau)?;
        let (fp, fq) = (self.chart_map(p, b)?, self.chart_map(q, b)?);
        let pair = MonoidHom::new(
            self.pairs.clone(),
            b.clone(),
            fp.images().iter().chain(fq.images()).cloned().collect(),
        )?;
        self.point(chart, &mu.then(&pair)?)
    }

    /// Closure, identity, inverses and associativity on `GLₙ(B)`.
    pub fn check_group_law(&self, b: &Monoid) -> Result<bool> {
        let pts = self.points(b)?;
        let e = MonomialMatrix::identity(self.n, b);
        if !pts.contains(&e) {
            return Ok(false);
        }
        for p in &pts {
            if self.multiply(p, &e, b)? != *p || self.multiply(&e, p, b)? != *p {
                return Ok(false);
            }
            if self.multiply(p, &p.inverse(b)?, b)? != e {
                return Ok(false);
            }
            for q in &pts {
                let pq = self.multiply(p, q, b)?;
                if !pts.contains(&pq) || pq != p.mul(q, b)? {
                    return Ok(false);
                }
            }
        }
        for p in pts.iter().take(6) {
            for q in pts.iter().take(6) {
                for r in pts.iter().take(6) {
                    let left = self.multiply(&self.multiply(p, q, b)?, r, b)?;
                    let right = self.multiply(p, &self.multiply(q, r, b)?, b)?;
                    if left != right {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::points_over;

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(2), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn gl_counts() {
        let gl1 = gl_n(1).unwrap();
        let gl2 = gl_n(2).unwrap();
        assert_eq!(gl2.scheme.f1_points(), 2);
        for k in 2..6 {
            let d = Monoid::dk(k).unwrap();
            assert_eq!(points_over(&gl1.scheme, &d).unwrap().total, k - 1);
            assert_eq!(points_over(&gl2.scheme, &d).unwrap().total, 2 * (k - 1) * (k - 1));
            assert_eq!(monomial_matrix_group(2, &d).unwrap().len(), 2 * (k - 1) * (k - 1));
        }
    }

    #[test]
    fn group_law_over_d3() {
        let d3 = Monoid::dk(3).unwrap();
        for n in 1..=3 {
            assert!(gl_n(n).unwrap().check_group_law(&d3).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn symmetric_group_over_f1() {
        let f1 = Monoid::trivial();
        let g = monomial_matrix_group(3, &f1).unwrap();
        assert_eq!(g.len(), 6);
        let gl1 = monomial_matrix_group(1, &Monoid::cyclic(4).unwrap()).unwrap();
        assert_eq!(gl1.len(), 4);
    }

    /// Permutations preserving the support and entries of `F`, times unit
    /// choices with `u_a u_b = 1` wherever `F[a][b] ≠ 0`.
    fn form_oracle(a: &Monoid, f: &[Vec<i64>]) -> usize {
        let n = f.len();
        let units = a.units();
        let units = units.finite_elements().unwrap().to_vec();
        let mut count = 0;
        for p in permutations(n) {
            if !(0..n).all(|i| (0..n).all(|j| f[p[i]][p[j]] == f[i][j])) {
                continue;
            }
            let mut idx = vec![0usize; n];
            loop {
                let u: Vec<&Element> = idx.iter().map(|&k| &units[k]).collect();
                let ok = (0..n).all(|i| (0..n).all(|j| f[i][j] == 0 || a.mul(u[i], u[j]).unwrap() == a.one()));
                count += usize::from(ok);
                let mut pos = 0;
                while pos < n {
                    idx[pos] += 1;
                    if idx[pos] < units.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
        count
    }

    #[test]
    fn orthogonal_and_symplectic_over_f1() {
        let f1 = Monoid::trivial();
        assert_eq!(form_preserving_count(&f1, &orthogonal_form(2)).unwrap(), 2);
        assert_eq!(form_preserving_count(&f1, &orthogonal_form(3)).unwrap(), 2);
        assert_eq!(form_preserving_count(&f1, &symplectic_form(1)).unwrap(), 1);
        for a in [Monoid::trivial(), Monoid::cyclic(2).unwrap(), Monoid::dk(3).unwrap()] {
            for f in [
                orthogonal_form(2),
                orthogonal_form(3),
                orthogonal_form(4),
                symplectic_form(1),
                symplectic_form(2),
            ] {
                assert_eq!(form_preserving_count(&a, &f).unwrap(), form_oracle(&a, &f), "{a}");
            }
        }
    }
}
