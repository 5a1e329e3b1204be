//! Commutative monoids: the instance zoo, elements, units and serialization.
//!
//! Every monoid is treated multiplicatively. Three representations cover the
//! zoo: explicit tables (finite tables, finite presented quotients, `D_k`,
//! products), finitely generated submonoids of ℤ^d written additively, and
//! such a submonoid with a formal absorbing zero adjoined.

mod finite;
mod hom;
mod ideal;
mod lattice;
mod localize;
mod presented;
mod pushout;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};

pub use finite::FiniteMonoid;
pub use hom::{hom_count, hom_enumerate, MonoidHom};
pub use ideal::{congruence_closure, ideal_generated, Congruence, Ideal};
pub use lattice::{intersect, LatticeMonoid};
pub use localize::{localize, Localization};
pub use presented::{Presentation, RewriteSystem, Word};
pub use pushout::{pushout, Pushout};

/// An element of some monoid. Which variant is valid depends on the owner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    /// Row index into a multiplication table.
    Index(usize),
    /// Lattice point (additive notation).
    Vector(Vec<i64>),
    /// The adjoined absorbing zero of a lattice monoid.
    Zero,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "#{i}"),
            Element::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Zero => write!(f, "0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monoid {
    Finite(Arc<FiniteMonoid>),
    Lattice(Arc<LatticeMonoid>),
    /// A lattice monoid with a formal absorbing zero adjoined.
    LatticeWithZero(Arc<LatticeMonoid>),
}

/// The unit group `A^×`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Units {
    Finite(Vec<Element>),
    /// Free abelian, spanned by these unit generators.
    Lattice {
        generators: Vec<Element>,
        rank: usize,
    },
}

impl Units {
    pub fn finite_elements(&self) -> Option<&[Element]> {
        match self {
            Units::Finite(v) => Some(v),
            Units::Lattice { .. } => None,
        }
    }
}

impl From<FiniteMonoid> for Monoid {
    fn from(m: FiniteMonoid) -> Self {
        Monoid::Finite(Arc::new(m))
    }
}

impl From<LatticeMonoid> for Monoid {
    fn from(m: LatticeMonoid) -> Self {
        Monoid::Lattice(Arc::new(m))
    }
}

impl Monoid {
    // ---- zoo -------------------------------------------------------------

    /// `F₁ = {1}`.
    pub fn trivial() -> Monoid {
        finite::trivial().into()
    }

    pub fn cyclic(n: usize) -> Result<Monoid> {
        Ok(finite::cyclic(n)?.into())
    }

    /// `D_k = C_{k−1} ∪ {0}`.
    pub fn dk(k: usize) -> Result<Monoid> {
        Ok(finite::dk(k)?.into())
    }

    /// `(ℕ,+) ≅ C_{∞,+}`.
    pub fn nat() -> Monoid {
        LatticeMonoid::nat(1).into()
    }

    pub fn nat_pow(n: usize) -> Monoid {
        LatticeMonoid::nat(n).into()
    }

    /// `C_∞ ≅ (ℤ,+)`.
    pub fn inf_cyclic() -> Monoid {
        LatticeMonoid::integers(1).into()
    }

    /// `C_∞ⁿ`.
    pub fn inf_cyclic_pow(n: usize) -> Monoid {
        LatticeMonoid::integers(n).into()
    }

    /// `C_{∞,+} = {1, τ, τ², …}`, a copy of `ℕ` under its own name.
    pub fn inf_cyclic_plus() -> Monoid {
        LatticeMonoid::new("Cinf+", 1, vec![vec![1]]).into()
    }

    /// `C_{∞,−} = {1, τ⁻¹, τ⁻², …}`.
    pub fn inf_cyclic_minus() -> Monoid {
        LatticeMonoid::new("Cinf-", 1, vec![vec![-1]]).into()
    }

    pub fn lattice(name: impl Into<String>, dim: usize, generators: Vec<Vec<i64>>) -> Result<Monoid> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::InvalidMonoid("lattice generator of wrong dimension".into()));
        }
        Ok(LatticeMonoid::new(name, dim, generators).into())
    }

    pub fn table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Monoid> {
        Ok(FiniteMonoid::from_table(name, labels, table, &[])?.into())
    }

    pub fn presented(name: impl Into<String>, presentation: Presentation) -> Result<Monoid> {
        Ok(presented::presented(name, presentation)?.into())
    }

    pub fn adjoin_zero(&self) -> Result<Monoid> {
        match self {
            Monoid::Finite(f) => Ok(finite::adjoin_zero(f).into()),
            Monoid::Lattice(l) => Ok(Monoid::LatticeWithZero(l.clone())),
            Monoid::LatticeWithZero(_) => Err(Error::Unsupported(
                "adjoining a second zero to a lattice monoid with zero".into(),
            )),
        }
    }

    pub fn product(&self, other: &Monoid) -> Result<Monoid> {
        match (self, other) {
            (Monoid::Finite(a), Monoid::Finite(b)) => Ok(finite::product(a, b).into()),
            (Monoid::Lattice(a), Monoid::Lattice(b)) => {
                let dim = a.dim + b.dim;
                let mut gens: Vec<Vec<i64>> = a
                    .generators
                    .iter()
                    .map(|g| g.iter().copied().chain(std::iter::repeat_n(0, b.dim)).collect())
                    .collect();
                gens.extend(
                    b.generators
                        .iter()
                        .map(|g| std::iter::repeat_n(0, a.dim).chain(g.iter().copied()).collect()),
                );
                Ok(LatticeMonoid::new(format!("{}x{}", a.name, b.name), dim, gens).into())
            }
            _ => Err(Error::Unsupported(
                "products are supported for two finite or two lattice monoids".into(),
            )),
        }
    }

    // ---- structure -------------------------------------------------------

    pub fn name(&self) -> String {
        match self {
            Monoid::Finite(f) => f.name.clone(),
            Monoid::Lattice(l) => l.name.clone(),
            Monoid::LatticeWithZero(l) => format!("{}+0", l.name),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteMonoid> {
        match self {
            Monoid::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_lattice(&self) -> Option<&LatticeMonoid> {
        match self {
            Monoid::Lattice(l) | Monoid::LatticeWithZero(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Monoid::Finite(_))
    }

    pub fn size(&self) -> Option<usize> {
        self.as_finite().map(|f| f.size())
    }

    /// All elements, for finite monoids (including lattice monoids whose
    /// generators are all zero).
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            Monoid::Finite(f) => Some((0..f.size()).map(Element::Index).collect()),
            Monoid::Lattice(l) if l.generators.iter().all(|g| g.iter().all(|&x| x == 0)) => Some(vec![self.one()]),
            Monoid::LatticeWithZero(l) if l.generators.iter().all(|g| g.iter().all(|&x| x == 0)) => {
                Some(vec![self.one(), Element::Zero])
            }
            _ => None,
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Monoid::Finite(f) => Element::Index(f.identity),
            Monoid::Lattice(l) | Monoid::LatticeWithZero(l) => Element::Vector(vec![0; l.dim]),
        }
    }

    /// Absorbing zero, if the monoid has one.
    pub fn zero(&self) -> Option<Element> {
        match self {
            Monoid::Finite(f) => (0..f.size())
                .find(|&z| (0..f.size()).all(|x| f.table[z][x] == z))
                .map(Element::Index),
            Monoid::Lattice(_) => None,
            Monoid::LatticeWithZero(_) => Some(Element::Zero),
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        match self {
            Monoid::Finite(f) => f.generators.iter().map(|&g| Element::Index(g)).collect(),
            Monoid::Lattice(l) => l.generators.iter().cloned().map(Element::Vector).collect(),
            Monoid::LatticeWithZero(l) => {
                let mut g: Vec<Element> = l.generators.iter().cloned().map(Element::Vector).collect();
                g.push(Element::Zero);
                g
            }
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Monoid::Finite(f), Element::Index(i)) => *i < f.size(),
            (Monoid::Lattice(l), Element::Vector(v)) | (Monoid::LatticeWithZero(l), Element::Vector(v)) => {
                l.contains(v)
            }
            (Monoid::LatticeWithZero(_), Element::Zero) => true,
            _ => false,
        }
    }

    /// Membership test for lattice monoids with the exact coefficient
    /// certificate over the generators.
    pub fn membership_certificate(&self, e: &Element) -> Option<Vec<i64>> {
        self.decompose(e)
    }

    pub fn is_member(&self, e: &Element) -> bool {
        self.contains(e)
    }

    pub(crate) fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: e.to_string(),
                monoid: self.name(),
            })
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (a, b) {
            (Element::Index(x), Element::Index(y)) => {
                Element::Index(self.as_finite().expect("index element in finite monoid").table[*x][*y])
            }
            (Element::Zero, _) | (_, Element::Zero) => Element::Zero,
            (Element::Vector(x), Element::Vector(y)) => Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn product_of(&self, items: &[Element]) -> Element {
        items.iter().fold(self.one(), |acc, x| self.mul_unchecked(&acc, x))
    }

    /// `a^n` for `n ≥ 0`; negative `n` requires `a` to be a unit.
    pub fn pow(&self, a: &Element, n: i64) -> Result<Element> {
        let base = if n < 0 {
            self.inverse(a)
                .ok_or_else(|| Error::InvalidArgument(format!("{} is not a unit", self.label(a))))?
        } else {
            a.clone()
        };
        let mut acc = self.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul_unchecked(&acc, &base);
        }
        Ok(acc)
    }

    pub fn is_unit(&self, e: &Element) -> bool {
        match (self, e) {
            (Monoid::Finite(f), Element::Index(i)) => *i < f.size() && f.is_unit(*i),
            (Monoid::Lattice(l) | Monoid::LatticeWithZero(l), Element::Vector(v)) => l.is_unit(v),
            _ => false,
        }
    }

    pub fn inverse(&self, e: &Element) -> Option<Element> {
        match (self, e) {
            (Monoid::Finite(f), Element::Index(i)) => f.inverse(*i).map(Element::Index),
            (Monoid::Lattice(l) | Monoid::LatticeWithZero(l), Element::Vector(v)) => {
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                (l.contains(v) && l.contains(&neg)).then_some(Element::Vector(neg))
            }
            _ => None,
        }
    }

    pub fn units(&self) -> Units {
        match self {
            Monoid::Finite(f) => Units::Finite(f.units().into_iter().map(Element::Index).collect()),
            Monoid::Lattice(l) | Monoid::LatticeWithZero(l) => {
                let gens = l.unit_generators();
                let rank = if gens.is_empty() {
                    0
                } else {
                    crate::intmat::IntMatrix::from_columns(&gens, l.dim).rank()
                };
                if rank == 0 {
                    Units::Finite(vec![self.one()])
                } else {
                    Units::Lattice {
                        generators: gens.into_iter().map(Element::Vector).collect(),
                        rank,
                    }
                }
            }
        }
    }

    /// Coefficients over `generators()`: nonnegative except on unit lattice
    /// generators, where any integer is allowed.
    pub fn decompose(&self, e: &Element) -> Option<Vec<i64>> {
        match (self, e) {
            (Monoid::Finite(f), Element::Index(i)) => f.words.get(*i).map(|w| w.iter().map(|&x| x as i64).collect()),
            (Monoid::Lattice(l), Element::Vector(v)) => l.decompose(v),
            (Monoid::LatticeWithZero(l), Element::Vector(v)) => l.decompose(v).map(|mut c| {
                c.push(0);
                c
            }),
            (Monoid::LatticeWithZero(l), Element::Zero) => {
                let mut c = vec![0; l.generators.len()];
                c.push(1);
                Some(c)
            }
            _ => None,
        }
    }

    pub fn label(&self, e: &Element) -> String {
        match (self, e) {
            (Monoid::Finite(f), Element::Index(i)) if *i < f.size() => f.labels[*i].clone(),
            _ => e.to_string(),
        }
    }

    /// Parses an element label (finite monoids) or a vector literal `(a,b)`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let e = match self {
            Monoid::Finite(f) => f.index_of(text).map(Element::Index),
            Monoid::Lattice(_) | Monoid::LatticeWithZero(_) => {
                if text == "0" && matches!(self, Monoid::LatticeWithZero(_)) {
                    Some(Element::Zero)
                } else {
                    parse_vector(text).map(Element::Vector)
                }
            }
        };
        match e {
            Some(e) if self.contains(&e) => Ok(e),
            _ => Err(Error::InvalidElement {
                element: text.to_string(),
                monoid: self.name(),
            }),
        }
    }

    /// Exhaustive check of the monoid axioms on a finite instance, or on the
    /// given sample elements for infinite ones.
    pub fn verify_axioms(&self, sample: &[Element]) -> bool {
        let elems = self.elements().unwrap_or_else(|| sample.to_vec());
        let one = self.one();
        for a in &elems {
            if self.mul_unchecked(a, &one) != *a {
                return false;
            }
            for b in &elems {
                let ab = self.mul_unchecked(a, b);
                if ab != self.mul_unchecked(b, a) || !self.contains(&ab) {
                    return false;
                }
                for c in &elems {
                    if self.mul_unchecked(&ab, c) != self.mul_unchecked(a, &self.mul_unchecked(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Monoid::Finite(f) => match &f.presentation {
                Some(p) => json!({
                    "kind": "presented",
                    "name": f.name,
                    "generators": p.generators,
                    "relations": p.relations,
                }),
                None => json!({
                    "kind": "table",
                    "name": f.name,
                    "generators": f.generators.iter().map(|&g| f.labels[g].clone()).collect::<Vec<_>>(),
                    "elements": f.labels,
                    "table": f.table,
                }),
            },
            Monoid::Lattice(l) => json!({
                "kind": "lattice",
                "name": l.name,
                "generators": l.generators.iter().map(|g| Element::Vector(g.clone()).to_string()).collect::<Vec<_>>(),
                "vectors": l.generators,
            }),
            Monoid::LatticeWithZero(l) => json!({
                "kind": "adjoined",
                "base": Monoid::Lattice(l.clone()).to_json(),
            }),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Monoid> {
        let bad = |m: &str| Error::InvalidArgument(format!("monoid JSON: {m}"));
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| bad("missing kind"))?;
        let name = value.get("name").and_then(|k| k.as_str()).unwrap_or("M").to_string();
        match kind {
            "table" => {
                let labels: Vec<String> =
                    serde_json::from_value(value["elements"].clone()).map_err(|e| bad(&e.to_string()))?;
                let table: Vec<Vec<usize>> =
                    serde_json::from_value(value["table"].clone()).map_err(|e| bad(&e.to_string()))?;
                let gens: Vec<String> = serde_json::from_value(value["generators"].clone()).unwrap_or_default();
                let pref: Vec<usize> = gens.iter().filter_map(|g| labels.iter().position(|l| l == g)).collect();
                Ok(FiniteMonoid::from_table(name, labels, table, &pref)?.into())
            }
            "presented" => {
                let generators: Vec<String> =
                    serde_json::from_value(value["generators"].clone()).map_err(|e| bad(&e.to_string()))?;
                let relations: Vec<(Word, Word)> =
                    serde_json::from_value(value["relations"].clone()).map_err(|e| bad(&e.to_string()))?;
                Monoid::presented(name, Presentation { generators, relations })
            }
            "lattice" => {
                let vectors: Vec<Vec<i64>> =
                    serde_json::from_value(value["vectors"].clone()).map_err(|e| bad(&e.to_string()))?;
                let dim = vectors.first().map_or(0, |v| v.len());
                Monoid::lattice(name, dim, vectors)
            }
            "adjoined" => Monoid::from_json(&value["base"])?.adjoin_zero(),
            other => Err(bad(&format!("unknown kind {other}"))),
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn parse_vector(text: &str) -> Option<Vec<i64>> {
    let inner = text.strip_prefix('(')?.strip_suffix(')')?;
    if inner.trim().is_empty() {
        return Some(vec![]);
    }
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_examples() {
        let d5 = Monoid::dk(5).unwrap();
        let g = d5.parse_element("g").unwrap();
        let g3 = d5.parse_element("g^3").unwrap();
        let zero = d5.parse_element("0").unwrap();
        assert_eq!(d5.mul(&g, &g3).unwrap(), d5.one());
        assert_eq!(d5.mul(&g, &zero).unwrap(), zero);
        let n = Monoid::nat();
        assert_eq!(
            n.mul(&Element::Vector(vec![2]), &Element::Vector(vec![3])).unwrap(),
            Element::Vector(vec![5])
        );
    }

    #[test]
    fn mul_rejects_foreign_elements() {
        let d3 = Monoid::dk(3).unwrap();
        assert!(matches!(
            d3.mul(&Element::Index(7), &d3.one()),
            Err(Error::InvalidElement { .. })
        ));
        let n = Monoid::nat();
        assert!(n.mul(&Element::Vector(vec![-1]), &n.one()).is_err());
        assert!(n.mul(&Element::Vector(vec![1, 1]), &n.one()).is_err());
    }

    #[test]
    fn units_examples() {
        assert_eq!(Monoid::dk(5).unwrap().units().finite_elements().unwrap().len(), 4);
        assert_eq!(Monoid::nat().units(), Units::Finite(vec![Element::Vector(vec![0])]));
        // (ℤ/6, ×): brute-force inverse search gives {1, 5}
        let labels: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let table = (0..6).map(|a| (0..6).map(|b| (a * b) % 6).collect()).collect();
        let z6 = Monoid::table("Z6x", labels, table).unwrap();
        let units: Vec<String> = z6
            .units()
            .finite_elements()
            .unwrap()
            .iter()
            .map(|u| z6.label(u))
            .collect();
        let oracle: Vec<String> = (0..6)
            .filter(|a| (0..6).any(|b| a * b % 6 == 1))
            .map(|a: i32| a.to_string())
            .collect();
        assert_eq!(units, oracle);
        assert_eq!(units, vec!["1", "5"]);
        match Monoid::inf_cyclic().units() {
            Units::Lattice { rank, .. } => assert_eq!(rank, 1),
            other => panic!("expected infinite unit group, got {other:?}"),
        }
    }

    #[test]
    fn is_member_examples() {
        let n2 = Monoid::nat_pow(2);
        assert!(n2.is_member(&Element::Vector(vec![2, 3])));
        let m = Monoid::lattice("<2,3>", 1, vec![vec![2], vec![3]]).unwrap();
        assert!(!m.is_member(&Element::Vector(vec![1])));
        let z = Monoid::inf_cyclic();
        let cert = z.membership_certificate(&Element::Vector(vec![-7])).unwrap();
        assert_eq!(cert[0] - cert[1], -7);
    }

    #[test]
    fn json_round_trip() {
        for m in [
            Monoid::dk(4).unwrap(),
            Monoid::nat_pow(2),
            Monoid::nat().adjoin_zero().unwrap(),
            Monoid::presented(
                "B",
                Presentation {
                    generators: vec!["x".into()],
                    relations: vec![(vec![2], vec![1])],
                },
            )
            .unwrap(),
        ] {
            let back = Monoid::from_json(&m.to_json()).unwrap();
            assert_eq!(back.to_json(), m.to_json());
        }
    }

    #[test]
    fn finite_zoo_satisfies_axioms() {
        for m in [Monoid::trivial(), Monoid::cyclic(4).unwrap(), Monoid::dk(5).unwrap()] {
            assert!(m.verify_axioms(&[]));
        }
        let n2 = Monoid::nat_pow(2);
        let sample: Vec<Element> = (0..3)
            .flat_map(|a| (0..3).map(move |b| Element::Vector(vec![a, b])))
            .collect();
        assert!(n2.verify_axioms(&sample));
    }
}
