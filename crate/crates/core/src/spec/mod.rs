//! Prime spectra of monoids as finite posets.
//!
//! Primes are keyed by `G = p ∩ generators`, which determines `p = A·G`.
//! Specialization is inclusion of primes; open sets are down-closed under
//! it, closed sets up-closed. The generic point is `∅` and the closed point
//! `A ∖ A^×`.

mod morphism;
mod sheaf;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::json;

use crate::cone::find_functional;
use crate::error::{Error, Result};
use crate::monoid::{Element, Ideal, Monoid};

pub use morphism::{local_morphisms, preimage_point, spec_morphism, LocalMorphism, SpecMorphism};
pub use sheaf::{Sections, StructureSheaf};

pub type PointSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Membership {
    Finite(Vec<bool>),
    /// Nonzero lattice elements lie in `p` iff the functional is positive.
    Lattice {
        functional: Vec<i64>,
        nonempty: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    /// Indices into the owner's generator list.
    generators: Vec<usize>,
    membership: Membership,
}

impl PrimeIdeal {
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (&self.membership, e) {
            (Membership::Finite(mask), Element::Index(i)) => mask.get(*i).copied().unwrap_or(false),
            (Membership::Lattice { nonempty, .. }, Element::Zero) => *nonempty,
            (Membership::Lattice { functional, .. }, Element::Vector(v)) => {
                v.iter().zip(functional).map(|(a, b)| a * b).sum::<i64>() > 0
            }
            _ => false,
        }
    }

    /// Elements of the owner not in `p`, when the owner is finite.
    pub fn complement_generators(&self, owner: &Monoid) -> Vec<Element> {
        owner
            .generators()
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !self.generators.contains(i))
            .map(|(_, g)| g)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SpecSpace {
    owner: Monoid,
    points: Vec<PrimeIdeal>,
    /// `leq[i][j]` iff `p_i ⊆ p_j`.
    leq: Vec<Vec<bool>>,
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn finite_prime(owner: &Monoid, g: &[usize]) -> Option<PrimeIdeal> {
    let f = owner.as_finite()?;
    let n = f.size();
    let gens = f.generators();
    let mut mask = vec![false; n];
    for &k in g {
        for a in 0..n {
            mask[f.table()[gens[k]][a]] = true;
        }
    }
    let key_ok = (0..gens.len()).all(|k| mask[gens[k]] == g.contains(&k));
    let proper = !mask[f.identity()];
    let closed = (0..n).all(|a| (0..n).all(|b| mask[a] || mask[b] || !mask[f.table()[a][b]]));
    (key_ok && proper && closed).then(|| PrimeIdeal {
        generators: g.to_vec(),
        membership: Membership::Finite(mask),
    })
}

fn lattice_prime(owner: &Monoid, g: &[usize]) -> Option<PrimeIdeal> {
    let l = owner.as_lattice()?;
    let n = l.generators().len();
    let with_zero = matches!(owner, Monoid::LatticeWithZero(_));
    if with_zero {
        if g.is_empty() {
            return Some(PrimeIdeal {
                generators: Vec::new(),
                membership: Membership::Lattice {
                    functional: vec![0; l.dim()],
                    nonempty: false,
                },
            });
        }
        if !g.contains(&n) {
            return None;
        }
    }
    let lattice_part: Vec<usize> = g.iter().copied().filter(|&i| i < n).collect();
    let kept: Vec<Vec<i64>> = (0..n)
        .filter(|i| !lattice_part.contains(i))
        .map(|i| l.generators()[i].clone())
        .collect();
    let excluded: Vec<Vec<i64>> = lattice_part.iter().map(|&i| l.generators()[i].clone()).collect();
    let w = find_functional(l.dim(), &kept, &excluded, &[])?;
    Some(PrimeIdeal {
        generators: g.to_vec(),
        membership: Membership::Lattice {
            functional: w,
            nonempty: !g.is_empty(),
        },
    })
}

/// The prime spectrum of `A`.
pub fn spec(owner: &Monoid) -> Result<SpecSpace> {
    let ngens = owner.generators().len();
    if ngens > 20 {
        return Err(Error::Unsupported(format!(
            "{} has too many generators to enumerate primes",
            owner.name()
        )));
    }
    let mut points: Vec<PrimeIdeal> = subsets(ngens)
        .filter_map(|g| {
            if owner.is_finite() {
                finite_prime(owner, &g)
            } else {
                lattice_prime(owner, &g)
            }
        })
        .collect();
    points.sort_by(|a, b| {
        a.generators
            .len()
            .cmp(&b.generators.len())
            .then_with(|| a.generators.cmp(&b.generators))
    });
    let leq = points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| p.generators.iter().all(|i| q.generators.contains(i)))
                .collect()
        })
        .collect();
    Ok(SpecSpace {
        owner: owner.clone(),
        points,
        leq,
    })
}

impl SpecSpace {
    pub fn owner(&self) -> &Monoid {
        &self.owner
    }

    pub fn points(&self) -> &[PrimeIdeal] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// `p_i ⊆ p_j`, i.e. `i` is a generization of `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn generic_point(&self) -> usize {
        0
    }

    /// The maximal prime `A ∖ A^×`.
    pub fn closed_point(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
            .expect("closed point exists")
    }

    pub fn point_with_generators(&self, g: &[usize]) -> Option<usize> {
        let mut g = g.to_vec();
        g.sort_unstable();
        self.points.iter().position(|p| p.generators == g)
    }

    pub fn label(&self, i: usize) -> String {
        let gens = self.owner.generators();
        let parts: Vec<String> = self.points[i]
            .generators
            .iter()
            .map(|&k| self.owner.label(&gens[k]))
            .collect();
        format!("<{}>", parts.join(","))
    }

    pub fn is_open(&self, u: &PointSet) -> bool {
        u.iter()
            .all(|&p| (0..self.len()).all(|q| !self.leq[q][p] || u.contains(&q)))
    }

    pub fn is_closed(&self, z: &PointSet) -> bool {
        let complement: PointSet = self.all().difference(z).copied().collect();
        self.is_open(&complement)
    }

    /// `U_p`: all generizations of `p`, the smallest open neighbourhood.
    pub fn star(&self, p: usize) -> PointSet {
        (0..self.len()).filter(|&q| self.leq[q][p]).collect()
    }

    /// The closure `{p}⁻`: all specializations.
    pub fn closure_of_point(&self, p: usize) -> PointSet {
        (0..self.len()).filter(|&q| self.leq[p][q]).collect()
    }

    /// `V(a) = {p ⊇ a}`.
    pub fn v(&self, ideal: &Ideal) -> Result<PointSet> {
        if ideal.owner() != &self.owner {
            return Err(Error::OwnerMismatch("ideal belongs to another monoid".into()));
        }
        Ok((0..self.len())
            .filter(|&i| ideal.generators().iter().all(|t| self.points[i].contains(t)))
            .collect())
    }

    /// `D(f) = {p : f ∉ p}`.
    pub fn d(&self, f: &Element) -> Result<PointSet> {
        self.owner.check(f)?;
        Ok((0..self.len()).filter(|&i| !self.points[i].contains(f)).collect())
    }

    /// Maximal points of a subset.
    pub fn maximal(&self, u: &PointSet) -> Vec<usize> {
        u.iter()
            .copied()
            .filter(|&p| !u.iter().any(|&q| q != p && self.leq[p][q]))
            .collect()
    }

    /// Pairs `(i, j)` with `p_i ⊂ p_j` and nothing strictly between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph spec {\n");
        for i in 0..self.len() {
            let _ = writeln!(s, "  p{i} [label=\"{}\"];", self.label(i));
        }
        for (i, j) in self.covering_pairs() {
            let _ = writeln!(s, "  p{i} -> p{j};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let order: Vec<Vec<usize>> = self.covering_pairs().into_iter().map(|(i, j)| vec![i, j]).collect();
        json!({
            "monoid": self.owner.name(),
            "points": (0..self.len()).map(|i| self.label(i)).collect::<Vec<_>>(),
            "order": order,
            "closed_point": self.closed_point(),
            "generic_point": self.generic_point(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::ideal_generated;

    #[test]
    fn point_counts() {
        assert_eq!(spec(&Monoid::trivial()).unwrap().len(), 1);
        for k in [2, 3, 5] {
            assert_eq!(spec(&Monoid::dk(k).unwrap()).unwrap().len(), 2);
        }
        assert_eq!(spec(&Monoid::nat()).unwrap().len(), 2);
        assert_eq!(spec(&Monoid::nat_pow(2)).unwrap().len(), 4);
        assert_eq!(spec(&Monoid::inf_cyclic()).unwrap().len(), 1);
        assert_eq!(spec(&Monoid::nat().adjoin_zero().unwrap()).unwrap().len(), 3);
    }

    /// Oracle: primes of a finite monoid by testing every subset of elements.
    fn brute_prime_count(m: &Monoid) -> usize {
        let f = m.as_finite().unwrap();
        let n = f.size();
        (0u32..1 << n)
            .filter(|mask| {
                let inp = |x: usize| mask >> x & 1 == 1;
                let ideal = (0..n).all(|x| !inp(x) || (0..n).all(|a| inp(f.table()[x][a])));
                let proper = !inp(f.identity());
                let prime = (0..n).all(|a| (0..n).all(|b| !inp(f.table()[a][b]) || inp(a) || inp(b)));
                ideal && proper && prime
            })
            .count()
    }

    #[test]
    fn finite_primes_match_subset_oracle() {
        let d3 = Monoid::dk(3).unwrap();
        for m in [
            Monoid::trivial(),
            Monoid::cyclic(4).unwrap(),
            Monoid::dk(5).unwrap(),
            d3.product(&Monoid::dk(2).unwrap()).unwrap(),
            d3.product(&d3).unwrap(),
        ] {
            assert_eq!(spec(&m).unwrap().len(), brute_prime_count(&m), "{m}");
        }
    }

    #[test]
    fn closed_and_generic_points() {
        let x = spec(&Monoid::nat_pow(2)).unwrap();
        let c = x.closed_point();
        assert_eq!(x.points()[c].generator_indices(), &[0, 1]);
        assert!(x.points()[x.generic_point()].is_empty());
        for p in 0..x.len() {
            assert!(x.leq(x.generic_point(), p));
            assert!(x.leq(p, c));
        }
    }

    #[test]
    fn v_and_d_examples() {
        let d3 = Monoid::dk(3).unwrap();
        let x = spec(&d3).unwrap();
        let zero = d3.zero().unwrap();
        let v = x.v(&ideal_generated(&d3, &[zero]).unwrap()).unwrap();
        assert_eq!(v, PointSet::from([x.closed_point()]));
        let n = Monoid::nat();
        let xn = spec(&n).unwrap();
        assert_eq!(xn.d(&Element::Vector(vec![1])).unwrap(), PointSet::from([0]));
        assert_eq!(xn.v(&ideal_generated(&n, &[]).unwrap()).unwrap(), xn.all());
    }

    #[test]
    fn v_of_intersection_is_union() {
        let m = Monoid::dk(3).unwrap().product(&Monoid::dk(2).unwrap()).unwrap();
        let x = spec(&m).unwrap();
        let elems = m.elements().unwrap();
        for a in &elems {
            for b in &elems {
                let ia = ideal_generated(&m, std::slice::from_ref(a)).unwrap();
                let ib = ideal_generated(&m, std::slice::from_ref(b)).unwrap();
                let both: Vec<Element> = elems
                    .iter()
                    .filter(|e| ia.contains(e) && ib.contains(e))
                    .cloned()
                    .collect();
                let inter = ideal_generated(&m, &both).unwrap();
                let lhs: PointSet = x.v(&ia).unwrap().union(&x.v(&ib).unwrap()).copied().collect();
                assert_eq!(lhs, x.v(&inter).unwrap());
                assert!(x.is_closed(&lhs));
                assert!(x.is_open(&x.d(a).unwrap()));
            }
        }
    }

    #[test]
    fn dot_for_d3() {
        let dot = spec(&Monoid::dk(3).unwrap()).unwrap().to_dot();
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
    }
}
