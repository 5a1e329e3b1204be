//! Pushouts `A ⊗_L B` of commutative monoids.

use crate::error::{Error, Result};

use super::ideal::congruence_closure;
use super::lattice::LatticeMonoid;
use super::{finite, Element, Monoid, MonoidHom};

#[derive(Clone, Debug)]
pub struct Pushout {
    pub monoid: Monoid,
    pub from_a: MonoidHom,
    pub from_b: MonoidHom,
}

fn is_identity(h: &MonoidHom) -> bool {
    h.source() == h.target() && h.images() == h.source().generators().as_slice()
}

fn is_trivial(h: &MonoidHom) -> bool {
    let one = h.target().one();
    h.images().iter().all(|e| *e == one)
}

/// Pushout of `phi_a: L → A` and `phi_b: L → B`.
///
/// Supported: two finite monoids (congruence closure on `A × B`), a leg that
/// is the identity, and two lattice monoids when both legs are trivial.
pub fn pushout(phi_a: &MonoidHom, phi_b: &MonoidHom) -> Result<Pushout> {
    if phi_a.source() != phi_b.source() {
        return Err(Error::OwnerMismatch("pushout legs have different sources".into()));
    }
    let (a, b) = (phi_a.target(), phi_b.target());
    if is_identity(phi_a) {
        return Ok(Pushout {
            monoid: b.clone(),
            from_a: phi_b.clone(),
            from_b: MonoidHom::identity(b),
        });
    }
    if is_identity(phi_b) {
        return Ok(Pushout {
            monoid: a.clone(),
            from_a: MonoidHom::identity(a),
            from_b: phi_a.clone(),
        });
    }
    match (a, b) {
        (Monoid::Finite(fa), Monoid::Finite(fb)) => {
            let prod: Monoid = finite::product(fa, fb).into();
            let nb = fb.size();
            let pair = |i: usize, j: usize| Element::Index(i * nb + j);
            let index = |e: &Element| match e {
                Element::Index(i) => *i,
                _ => unreachable!(),
            };
            let pairs: Vec<(Element, Element)> = phi_a
                .source()
                .generators()
                .iter()
                .map(|l| {
                    let x = index(&phi_a.apply(l)?);
                    let y = index(&phi_b.apply(l)?);
                    Ok((pair(x, fb.identity), pair(fa.identity, y)))
                })
                .collect::<Result<_>>()?;
            let cong = congruence_closure(&prod, &pairs)?;
            let (q, proj) = cong.quotient(format!("{}(x){}", fa.name, fb.name))?;
            let from_a = MonoidHom::new(
                a.clone(),
                q.clone(),
                fa.generators.iter().map(|&g| proj.apply(&pair(g, fb.identity))).collect::<Result<_>>()?,
            )?;
            let from_b = MonoidHom::new(
                b.clone(),
                q.clone(),
                fb.generators.iter().map(|&g| proj.apply(&pair(fa.identity, g))).collect::<Result<_>>()?,
            )?;
            Ok(Pushout { monoid: q, from_a, from_b })
        }
        (Monoid::Lattice(la), Monoid::Lattice(lb)) if is_trivial(phi_a) && is_trivial(phi_b) => {
            let (da, db) = (la.dim, lb.dim);
            let pad = |v: &[i64], before: usize, after: usize| -> Vec<i64> {
                std::iter::repeat_n(0, before).chain(v.iter().copied()).chain(std::iter::repeat_n(0, after)).collect()
            };
            let mut gens: Vec<Vec<i64>> = la.generators.iter().map(|g| pad(g, 0, db)).collect();
            gens.extend(lb.generators.iter().map(|g| pad(g, da, 0)));
            let name = format!("{}x{}", la.name, lb.name);
            let q: Monoid = LatticeMonoid::new(name, da + db, gens).into();
            let from_a = MonoidHom::new(
                a.clone(),
                q.clone(),
                la.generators.iter().map(|g| Element::Vector(pad(g, 0, db))).collect(),
            )?;
            let from_b = MonoidHom::new(
                b.clone(),
                q.clone(),
                lb.generators.iter().map(|g| Element::Vector(pad(g, da, 0))).collect(),
            )?;
            Ok(Pushout { monoid: q, from_a, from_b })
        }
        _ => Err(Error::Unsupported(format!(
            "pushout of {} <- {} -> {}: supported for finite monoids, identity legs, or lattice monoids over a trivial base",
            a,
            phi_a.source(),
            b
        ))),
    }
}

impl Pushout {
    /// The map `A ⊗_L B → T` induced by `alpha: A → T` and `beta: B → T`.
    pub fn induced(&self, alpha: &MonoidHom, beta: &MonoidHom) -> Result<MonoidHom> {
        let (a, b) = (self.from_a.source(), self.from_b.source());
        if alpha.source() != a || beta.source() != b || alpha.target() != beta.target() {
            return Err(Error::OwnerMismatch(
                "induced map from a pushout needs maps out of both factors".into(),
            ));
        }
        let t = alpha.target();
        let incompatible = || Error::NotAHomomorphism("the two maps disagree on the base".into());
        if let (Some(ea), Some(eb), Some(_)) = (a.elements(), b.elements(), self.monoid.size()) {
            let mut values: std::collections::BTreeMap<Element, Element> = Default::default();
            for x in &ea {
                for y in &eb {
                    let p = self.monoid.mul(&self.from_a.apply(x)?, &self.from_b.apply(y)?)?;
                    let v = t.mul(&alpha.apply(x)?, &beta.apply(y)?)?;
                    if values.insert(p, v.clone()).is_some_and(|old| old != v) {
                        return Err(incompatible());
                    }
                }
            }
            let images = self.monoid.generators().iter().map(|g| values[g].clone()).collect();
            return MonoidHom::new(self.monoid.clone(), t.clone(), images);
        }
        if is_identity(&self.from_b) {
            if self.from_a.then(beta)? != *alpha {
                return Err(incompatible());
            }
            return Ok(beta.clone());
        }
        if is_identity(&self.from_a) {
            if self.from_b.then(alpha)? != *beta {
                return Err(incompatible());
            }
            return Ok(alpha.clone());
        }
        let mut images = alpha.images().to_vec();
        images.extend(beta.images().iter().cloned());
        MonoidHom::new(self.monoid.clone(), t.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::super::hom::{hom_count, hom_enumerate};
    use super::*;

    #[test]
    fn unit_law() {
        let d3 = Monoid::dk(3).unwrap();
        let f1 = Monoid::trivial();
        let t = MonoidHom::trivial(&f1, &f1);
        let p = pushout(&MonoidHom::trivial(&f1, &d3), &t).unwrap();
        assert_eq!(p.monoid.size(), Some(3));
    }

    #[test]
    fn nat_tensor_nat() {
        let f1 = Monoid::trivial();
        let n = Monoid::nat();
        let leg = MonoidHom::trivial(&f1, &n);
        let p = pushout(&leg, &leg).unwrap();
        assert_eq!(p.monoid.generators().len(), 2);
        assert!(p.monoid.as_lattice().unwrap().kernel_relations().is_empty());
        // Hom(N², B) ↔ Hom(N,B)² for finite B
        let d3 = Monoid::dk(3).unwrap();
        let lhs = hom_count(&p.monoid, &d3).unwrap();
        assert_eq!(lhs, hom_count(&n, &d3).unwrap().pow(2));
    }

    #[test]
    fn d2_tensor_d2() {
        let f1 = Monoid::trivial();
        let d2 = Monoid::dk(2).unwrap();
        let leg = MonoidHom::trivial(&f1, &d2);
        let p = pushout(&leg, &leg).unwrap();
        assert_eq!(p.monoid.size(), Some(4));
    }

    #[test]
    fn universal_property_over_c2() {
        let c2 = Monoid::cyclic(2).unwrap();
        let d3 = Monoid::dk(3).unwrap();
        let c4 = Monoid::cyclic(4).unwrap();
        let to_d3 = hom_enumerate(&c2, &d3).unwrap();
        let to_c4 = hom_enumerate(&c2, &c4).unwrap();
        let tests = [
            Monoid::dk(3).unwrap(),
            Monoid::dk(5).unwrap(),
            Monoid::cyclic(2).unwrap(),
        ];
        for fa in &to_d3 {
            for fb in &to_c4 {
                let p = pushout(fa, fb).unwrap();
                for c in &tests {
                    let ha = hom_enumerate(&d3, c).unwrap();
                    let hb = hom_enumerate(&c4, c).unwrap();
                    let mut agreeing = 0;
                    for f in &ha {
                        for g in &hb {
                            if fa.then(f).unwrap() == fb.then(g).unwrap() {
                                agreeing += 1;
                            }
                        }
                    }
                    assert_eq!(agreeing, hom_count(&p.monoid, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn mixed_instances_are_unsupported() {
        let f1 = Monoid::trivial();
        let a = MonoidHom::trivial(&f1, &Monoid::nat());
        let b = MonoidHom::trivial(&f1, &Monoid::dk(3).unwrap());
        assert!(matches!(pushout(&a, &b), Err(Error::Unsupported(_))));
    }
}
