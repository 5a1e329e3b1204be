use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{intersect, localize, Element, FiniteMonoid, LatticeMonoid, Localization, Monoid, MonoidHom};

use super::{PointSet, SpecSpace};

/// `O` on `Spec A`, stored stalkwise: `O_p = A_p` with generization maps.
#[derive(Clone, Debug)]
pub struct StructureSheaf {
    space: SpecSpace,
    stalks: Vec<Localization>,
}

/// `Γ(U, O)` with its restriction maps to the stalks of `U`.
#[derive(Clone, Debug)]
pub struct Sections {
    pub monoid: Monoid,
    pub restrictions: BTreeMap<usize, MonoidHom>,
}

impl StructureSheaf {
    pub fn new(space: &SpecSpace) -> Result<Self> {
        let owner = space.owner();
        let stalks = space
            .points()
            .iter()
            .map(|p| localize(owner, &p.complement_generators(owner)))
            .collect::<Result<_>>()?;
        Ok(StructureSheaf {
            space: space.clone(),
            stalks,
        })
    }

    pub fn of(owner: &Monoid) -> Result<Self> {
        Self::new(&super::spec(owner)?)
    }

    pub fn space(&self) -> &SpecSpace {
        &self.space
    }

    pub fn stalk(&self, p: usize) -> &Monoid {
        &self.stalks[p].monoid
    }

    pub fn localization(&self, p: usize) -> &Localization {
        &self.stalks[p]
    }

    /// `A_p → A_q` for a generization `q` of `p`.
    pub fn generization(&self, p: usize, q: usize) -> Result<MonoidHom> {
        if !self.space.leq(q, p) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a generization of {}",
                self.space.label(q),
                self.space.label(p)
            )));
        }
        self.stalks[p].induced(&self.stalks[q].map)
    }

    pub fn sections(&self, u: &PointSet) -> Result<Sections> {
        if !self.space.is_open(u) {
            return Err(Error::NotOpen(format!("{u:?} in Spec {}", self.space.owner().name())));
        }
        if u.is_empty() {
            return Ok(Sections {
                monoid: Monoid::trivial(),
                restrictions: BTreeMap::new(),
            });
        }
        let maxima = self.space.maximal(u);
        if let [m] = maxima[..] {
            let restrictions = u
                .iter()
                .map(|&q| Ok((q, self.generization(m, q)?)))
                .collect::<Result<_>>()?;
            return Ok(Sections {
                monoid: self.stalk(m).clone(),
                restrictions,
            });
        }
        match self.space.owner() {
            Monoid::Finite(_) => self.finite_sections(u, &maxima),
            _ => self.lattice_sections(u, &maxima),
        }
    }

    /// Compatible tuples over the maximal points, multiplied componentwise.
    fn finite_sections(&self, u: &PointSet, maxima: &[usize]) -> Result<Sections> {
        let stalks: Vec<&FiniteMonoid> = maxima
            .iter()
            .map(|&m| self.stalk(m).as_finite().expect("finite stalk"))
            .collect();
        let mut checks = Vec::new();
        for (i, &mi) in maxima.iter().enumerate() {
            for (j, &mj) in maxima.iter().enumerate().skip(i + 1) {
                for &q in u {
                    if self.space.leq(q, mi) && self.space.leq(q, mj) {
                        checks.push((i, j, self.generization(mi, q)?, self.generization(mj, q)?));
                    }
                }
            }
        }
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for s in &stalks {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..s.size()).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        tuples.retain(|t| {
            checks
                .iter()
                .all(|(i, j, gi, gj)| gi.apply(&Element::Index(t[*i])).ok() == gj.apply(&Element::Index(t[*j])).ok())
        });
        let index: BTreeMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let table = tuples
            .iter()
            .map(|a| {
                tuples
                    .iter()
                    .map(|b| {
                        let prod: Vec<usize> = stalks.iter().enumerate().map(|(k, s)| s.mul(a[k], b[k])).collect();
                        index[&prod]
                    })
                    .collect()
            })
            .collect();
        let labels = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().zip(&stalks).map(|(&x, s)| s.labels()[x].clone()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let monoid: Monoid = FiniteMonoid::from_table("Gamma", labels, table, &[])?.into();
        let gens = monoid.as_finite().expect("finite").generators().to_vec();
        let mut restrictions = BTreeMap::new();
        for &q in u {
            let k = maxima
                .iter()
                .position(|&m| self.space.leq(q, m))
                .expect("q lies below a maximal point");
            let images = gens.iter().map(|&g| Element::Index(tuples[g][k])).collect();
            let proj = MonoidHom::new(monoid.clone(), self.stalk(maxima[k]).clone(), images)?;
            restrictions.insert(q, proj.then(&self.generization(maxima[k], q)?)?);
        }
        Ok(Sections { monoid, restrictions })
    }

    /// All stalks sit inside `gp(A)` (plus `0`), so a compatible family is a
    /// single element of the intersection of the stalks at the maximal points.
    fn lattice_sections(&self, u: &PointSet, maxima: &[usize]) -> Result<Sections> {
        let with_zero = matches!(self.space.owner(), Monoid::LatticeWithZero(_));
        let parts: Vec<&LatticeMonoid> = maxima
            .iter()
            .map(|&m| self.stalk(m).as_lattice().expect("lattice stalk"))
            .collect();
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = intersect(&acc, p);
        }
        let acc = LatticeMonoid::new("Gamma", acc.dim(), acc.generators().to_vec());
        let monoid = if with_zero {
            Monoid::LatticeWithZero(acc.into())
        } else {
            acc.into()
        };
        let mut restrictions = BTreeMap::new();
        for &q in u {
            let target = self.stalk(q).clone();
            let h = if target.as_lattice().is_none() {
                MonoidHom::trivial(&monoid, &target)
            } else {
                MonoidHom::new(monoid.clone(), target, monoid.generators())?
            };
            restrictions.insert(q, h);
        }
        Ok(Sections { monoid, restrictions })
    }
}
