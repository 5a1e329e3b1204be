//! Localization `S⁻¹A`, with `(m,s) ∼ (m′,s′)` iff `s″s′m = s″sm′` for some `s″ ∈ S`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::finite::FiniteMonoid;
use super::lattice::LatticeMonoid;
use super::{Element, Monoid, MonoidHom};

#[derive(Clone, Debug)]
pub struct Localization {
    pub monoid: Monoid,
    /// The canonical map `A → S⁻¹A`.
    pub map: MonoidHom,
    /// Generators of `S` in `A`.
    pub inverted: Vec<Element>,
    /// For finite `A`: a representative `(m, s)` of every element of `S⁻¹A`.
    fractions: Vec<(Element, Element)>,
}

fn saturation(a: &Monoid, gens: &[Element]) -> Vec<Element> {
    let mut seen: BTreeSet<Element> = BTreeSet::from([a.one()]);
    let mut frontier = vec![a.one()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = a.mul_unchecked(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Localizes at the submonoid generated by `s_gens`.
pub fn localize(a: &Monoid, s_gens: &[Element]) -> Result<Localization> {
    for s in s_gens {
        a.check(s)?;
    }
    match a {
        Monoid::Finite(f) => localize_finite(a, f, s_gens),
        Monoid::Lattice(l) => {
            let (m, images) = localize_lattice(l, s_gens);
            let monoid: Monoid = m.into();
            let map = MonoidHom::new(a.clone(), monoid.clone(), images)?;
            Ok(Localization {
                monoid,
                map,
                inverted: s_gens.to_vec(),
                fractions: Vec::new(),
            })
        }
        Monoid::LatticeWithZero(l) => {
            if s_gens.contains(&Element::Zero) {
                let monoid = Monoid::trivial();
                let map = MonoidHom::trivial(a, &monoid);
                return Ok(Localization {
                    monoid,
                    map,
                    inverted: s_gens.to_vec(),
                    fractions: Vec::new(),
                });
            }
            let (m, mut images) = localize_lattice(l, s_gens);
            images.push(Element::Zero);
            let monoid = Monoid::LatticeWithZero(m.into());
            let map = MonoidHom::new(a.clone(), monoid.clone(), images)?;
            Ok(Localization {
                monoid,
                map,
                inverted: s_gens.to_vec(),
                fractions: Vec::new(),
            })
        }
    }
}

fn localize_lattice(l: &LatticeMonoid, s_gens: &[Element]) -> (LatticeMonoid, Vec<Element>) {
    let mut gens = l.generators.clone();
    for s in s_gens {
        if let Element::Vector(v) = s {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            if !gens.contains(&neg) && v.iter().any(|&x| x != 0) {
                gens.push(neg);
            }
        }
    }
    let name = if gens.len() == l.generators.len() {
        l.name.clone()
    } else {
        format!("{}[S^-1]", l.name)
    };
    let images = l.generators.iter().cloned().map(Element::Vector).collect();
    (LatticeMonoid::new(name, l.dim, gens), images)
}

fn localize_finite(a: &Monoid, f: &FiniteMonoid, s_gens: &[Element]) -> Result<Localization> {
    let s = saturation(a, s_gens);
    let n = f.size();
    let idx = |e: &Element| match e {
        Element::Index(i) => *i,
        _ => unreachable!("finite monoid element"),
    };
    let s_idx: Vec<usize> = s.iter().map(idx).collect();
    let equiv = |(m, s1): (usize, usize), (m2, s2): (usize, usize)| {
        let l = f.table[s2][m];
        let r = f.table[s1][m2];
        s_idx.iter().any(|&t| f.table[t][l] == f.table[t][r])
    };
    // classes of pairs (m, s); the relation is an equivalence by the usual argument
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class_of = vec![vec![usize::MAX; n]; n];
    for &sv in &s_idx {
        for (m, row) in class_of.iter_mut().enumerate() {
            let k = match reps.iter().position(|&r| equiv(r, (m, sv))) {
                Some(k) => k,
                None => {
                    reps.push((m, sv));
                    reps.len() - 1
                }
            };
            row[sv] = k;
        }
    }
    let size = reps.len();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&(m, s1)| {
            reps.iter()
                .map(|&(m2, s2)| class_of[f.table[m][m2]][f.table[s1][s2]])
                .collect()
        })
        .collect();
    // prefer labels m (when some s=1 representative exists) over m/s
    let labels: Vec<String> = (0..size)
        .map(|k| match (0..n).find(|&m| class_of[m][f.identity] == k) {
            Some(m) => f.labels[m].clone(),
            None => {
                let (m, sv) = reps[k];
                format!("{}/{}", f.labels[m], f.labels[sv])
            }
        })
        .collect();
    let mut gens: Vec<usize> = f.generators.iter().map(|&g| class_of[g][f.identity]).collect();
    for sv in s_gens.iter().map(idx) {
        gens.push(class_of[f.identity][sv]);
    }
    let name = if s_gens.is_empty() {
        f.name.clone()
    } else {
        format!("{}[S^-1]", f.name)
    };
    let monoid: Monoid = FiniteMonoid::from_table(name, labels, table, &gens)?.into();
    let images = f
        .generators
        .iter()
        .map(|&g| Element::Index(class_of[g][f.identity]))
        .collect();
    let map = MonoidHom::new(a.clone(), monoid.clone(), images)?;
    let fractions = reps
        .iter()
        .map(|&(m, sv)| (Element::Index(m), Element::Index(sv)))
        .collect();
    Ok(Localization {
        monoid,
        map,
        inverted: s_gens.to_vec(),
        fractions,
    })
}

impl Localization {
    pub fn source(&self) -> &Monoid {
        self.map.source()
    }

    /// A fraction `(m, s)` equal to `e`, for finite `A`.
    pub fn fraction(&self, e: &Element) -> Option<(Element, Element)> {
        match e {
            Element::Index(i) => self.fractions.get(*i).cloned(),
            _ => None,
        }
    }

    /// The unique `S⁻¹A → B` through which `psi: A → B` factors, when `psi`
    /// sends `S` to units.
    pub fn induced(&self, psi: &MonoidHom) -> Result<MonoidHom> {
        if psi.source() != self.source() {
            return Err(Error::OwnerMismatch("induced map needs a homomorphism out of A".into()));
        }
        let b = psi.target();
        for s in &self.inverted {
            if !b.is_unit(&psi.apply(s)?) {
                return Err(Error::NotAHomomorphism(format!(
                    "{} does not map {} to a unit",
                    psi,
                    self.source().label(s)
                )));
            }
        }
        let images: Vec<Element> = match &self.monoid {
            Monoid::Finite(loc) => {
                let frac_image = |k: usize| -> Result<Element> {
                    let (m, s) = &self.fractions[k];
                    let sm = psi.apply(s)?;
                    let inv = b
                        .inverse(&sm)
                        .ok_or_else(|| Error::NotAHomomorphism("S not inverted".into()))?;
                    Ok(b.mul_unchecked(&psi.apply(m)?, &inv))
                };
                loc.generators.iter().map(|&g| frac_image(g)).collect::<Result<_>>()?
            }
            Monoid::Lattice(_) | Monoid::LatticeWithZero(_) => {
                let src = self.source().as_lattice().expect("lattice source");
                let loc = self.monoid.as_lattice().expect("lattice localization");
                let mut out = Vec::new();
                for g in &loc.generators {
                    let e = Element::Vector(g.clone());
                    if src.contains(g) {
                        out.push(psi.apply(&e)?);
                    } else {
                        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
                        let img = psi.apply(&Element::Vector(neg))?;
                        out.push(
                            b.inverse(&img)
                                .ok_or_else(|| Error::NotAHomomorphism("S not inverted".into()))?,
                        );
                    }
                }
                if matches!(self.monoid, Monoid::LatticeWithZero(_)) {
                    out.push(psi.apply(&Element::Zero)?);
                }
                out
            }
        };
        MonoidHom::new(self.monoid.clone(), b.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::super::hom::hom_enumerate;
    use super::*;

    #[test]
    fn localize_at_units_is_identity() {
        let d3 = Monoid::dk(3).unwrap();
        let g = d3.parse_element("g").unwrap();
        let loc = localize(&d3, &[g]).unwrap();
        assert_eq!(loc.monoid.size(), Some(3));
        assert!(loc.map.inverse().is_ok());
    }

    #[test]
    fn group_completion_of_n() {
        let loc = localize(&Monoid::nat(), &[Element::Vector(vec![1])]).unwrap();
        for x in -5..=5 {
            let e = Element::Vector(vec![x]);
            assert!(loc.monoid.contains(&e));
            assert!(loc.monoid.is_unit(&e));
        }
    }

    #[test]
    fn inverting_zero_collapses() {
        let d3 = Monoid::dk(3).unwrap();
        let loc = localize(&d3, &[d3.zero().unwrap()]).unwrap();
        assert_eq!(loc.monoid.size(), Some(1));
        let nz = Monoid::nat().adjoin_zero().unwrap();
        assert_eq!(localize(&nz, &[Element::Zero]).unwrap().monoid.size(), Some(1));
    }

    #[test]
    fn universal_property_by_counting() {
        let zoo = [
            Monoid::dk(3).unwrap(),
            Monoid::dk(5).unwrap(),
            Monoid::cyclic(2).unwrap(),
        ];
        let d5 = Monoid::dk(5).unwrap();
        for s in d5.elements().unwrap() {
            let loc = localize(&d5, std::slice::from_ref(&s)).unwrap();
            for b in &zoo {
                let restricted = hom_enumerate(&d5, b)
                    .unwrap()
                    .into_iter()
                    .filter(|h| b.is_unit(&h.apply(&s).unwrap()))
                    .count();
                assert_eq!(restricted, hom_enumerate(&loc.monoid, b).unwrap().len());
                for h in hom_enumerate(&d5, b).unwrap() {
                    if b.is_unit(&h.apply(&s).unwrap()) {
                        let ind = loc.induced(&h).unwrap();
                        assert_eq!(loc.map.then(&ind).unwrap(), h);
                    }
                }
            }
        }
    }
}
