use crate::error::{Error, Result};

use super::finite::FiniteMonoid;
use super::{Element, Monoid, MonoidHom};

/// The ideal `TA` generated by a finite set `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    owner: Monoid,
    generators: Vec<Element>,
}

pub fn ideal_generated(owner: &Monoid, generators: &[Element]) -> Result<Ideal> {
    for t in generators {
        owner.check(t)?;
    }
    Ok(Ideal {
        owner: owner.clone(),
        generators: generators.to_vec(),
    })
}

impl Ideal {
    pub fn owner(&self) -> &Monoid {
        &self.owner
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `x ∈ TA` iff `x = t·a` for some `t ∈ T`, `a ∈ A`.
    pub fn contains(&self, x: &Element) -> bool {
        if !self.owner.contains(x) {
            return false;
        }
        self.generators.iter().any(|t| divides(&self.owner, t, x))
    }

    /// Explicit element set, for finite owners.
    pub fn elements(&self) -> Option<Vec<Element>> {
        Some(
            self.owner
                .elements()?
                .into_iter()
                .filter(|x| self.contains(x))
                .collect(),
        )
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(&self.owner.one())
    }
}

/// Whether `t` divides `x` in the monoid.
pub(crate) fn divides(m: &Monoid, t: &Element, x: &Element) -> bool {
    match (m, t, x) {
        (Monoid::Finite(f), Element::Index(t), Element::Index(x)) => (0..f.size()).any(|a| f.table[*t][a] == *x),
        (_, _, Element::Zero) => true,
        (_, Element::Zero, _) => false,
        (Monoid::Lattice(l) | Monoid::LatticeWithZero(l), Element::Vector(t), Element::Vector(x)) => {
            let d: Vec<i64> = x.iter().zip(t).map(|(a, b)| a - b).collect();
            l.contains(&d)
        }
        _ => false,
    }
}

/// A congruence on a finite monoid, stored as its class partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    owner: Monoid,
    pairs: Vec<(Element, Element)>,
    /// Smallest element index of each class.
    class_of: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Smallest multiplicative equivalence relation containing `pairs`.
pub fn congruence_closure(owner: &Monoid, pairs: &[(Element, Element)]) -> Result<Congruence> {
    let f = owner
        .as_finite()
        .ok_or_else(|| Error::Unsupported("congruence closure needs a finite monoid".into()))?;
    let n = f.size();
    let mut uf = UnionFind((0..n).collect());
    let mut pending = Vec::new();
    for (a, b) in pairs {
        owner.check(a)?;
        owner.check(b)?;
        if let (Element::Index(a), Element::Index(b)) = (a, b) {
            pending.push((*a, *b));
        }
    }
    while let Some((a, b)) = pending.pop() {
        if uf.union(a, b) {
            for x in 0..n {
                pending.push((f.table[a][x], f.table[b][x]));
            }
        }
    }
    let class_of = (0..n).map(|x| uf.find(x)).collect();
    Ok(Congruence {
        owner: owner.clone(),
        pairs: pairs.to_vec(),
        class_of,
    })
}

impl Congruence {
    pub fn owner(&self) -> &Monoid {
        &self.owner
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        &self.pairs
    }

    pub fn related(&self, a: &Element, b: &Element) -> bool {
        match (a, b) {
            (Element::Index(a), Element::Index(b)) => {
                *a < self.class_of.len() && *b < self.class_of.len() && self.class_of[*a] == self.class_of[*b]
            }
            _ => false,
        }
    }

    pub fn classes(&self) -> Vec<Vec<Element>> {
        let mut reps: Vec<usize> = self.class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.iter()
            .map(|&r| {
                (0..self.class_of.len())
                    .filter(|&x| self.class_of[x] == r)
                    .map(Element::Index)
                    .collect()
            })
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }

    /// `A/∼` with the projection `A → A/∼`.
    pub fn quotient(&self, name: impl Into<String>) -> Result<(Monoid, MonoidHom)> {
        let f = self.owner.as_finite().expect("finite owner");
        let mut reps: Vec<usize> = self.class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let pos = |x: usize| reps.binary_search(&self.class_of[x]).expect("representative");
        let labels = reps.iter().map(|&r| f.labels[r].clone()).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| pos(f.table[a][b])).collect())
            .collect();
        let gens: Vec<usize> = f.generators.iter().map(|&g| pos(g)).collect();
        let q: Monoid = FiniteMonoid::from_table(name, labels, table, &gens)?.into();
        let qf = q.as_finite().expect("finite");
        let images = f.generators.iter().map(|&g| Element::Index(pos(g))).collect();
        debug_assert_eq!(qf.size(), reps.len());
        let proj = MonoidHom::new(self.owner.clone(), q.clone(), images)?;
        Ok((q, proj))
    }
}
