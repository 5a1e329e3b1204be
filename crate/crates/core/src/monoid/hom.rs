use std::fmt;

use crate::error::{Error, Result};
use crate::intmat::{solve_integer, IntMatrix};

use super::{Element, Monoid};

/// A monoid homomorphism, stored by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    source: Monoid,
    target: Monoid,
    images: Vec<Element>,
}

impl MonoidHom {
    /// Builds and validates a homomorphism from generator images.
    pub fn new(source: Monoid, target: Monoid, images: Vec<Element>) -> Result<Self> {
        let h = MonoidHom { source, target, images };
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: Monoid, target: Monoid, images: Vec<Element>) -> Self {
        MonoidHom { source, target, images }
    }

    pub fn identity(m: &Monoid) -> Self {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            images: m.generators(),
        }
    }

    /// The map sending everything to `1`.
    pub fn trivial(source: &Monoid, target: &Monoid) -> Self {
        let one = target.one();
        MonoidHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![one; source.generators().len()],
        }
    }

    pub fn source(&self) -> &Monoid {
        &self.source
    }

    pub fn target(&self) -> &Monoid {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    fn image_of_coeffs(&self, coeffs: &[i64]) -> Option<Element> {
        let mut acc = self.target.one();
        for (img, &c) in self.images.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let base = if c < 0 { self.target.inverse(img)? } else { img.clone() };
            for _ in 0..c.unsigned_abs() {
                acc = self.target.mul_unchecked(&acc, &base);
            }
        }
        Some(acc)
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        self.source.check(e)?;
        let coeffs = self.source.decompose(e).ok_or_else(|| Error::InvalidElement {
            element: e.to_string(),
            monoid: self.source.name(),
        })?;
        self.image_of_coeffs(&coeffs)
            .ok_or_else(|| Error::NotAHomomorphism(format!("a unit of {} maps to a non-unit", self.source.name())))
    }

    pub fn validate(&self) -> Result<()> {
        let gens = self.source.generators();
        if gens.len() != self.images.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images given, {} expected",
                self.images.len(),
                gens.len()
            )));
        }
        for img in &self.images {
            if !self.target.contains(img) {
                return Err(Error::InvalidElement {
                    element: img.to_string(),
                    monoid: self.target.name(),
                });
            }
        }
        let fail = |why: String| Err(Error::NotAHomomorphism(why));
        match &self.source {
            Monoid::Finite(f) => {
                // f(x·g) = f(x)·f(g) for all x and generators g suffices by induction
                let values: Vec<Element> = (0..f.size())
                    .map(|x| {
                        let w: Vec<i64> = f.words[x].iter().map(|&c| c as i64).collect();
                        self.image_of_coeffs(&w).expect("nonnegative word")
                    })
                    .collect();
                for (k, &g) in f.generators.iter().enumerate() {
                    if values[g] != self.images[k] {
                        return fail(format!("generator {} has inconsistent image", f.labels[g]));
                    }
                    for x in 0..f.size() {
                        let lhs = &values[f.table[x][g]];
                        let rhs = self.target.mul_unchecked(&values[x], &values[g]);
                        if *lhs != rhs {
                            return fail(format!("fails on {} * {}", f.labels[x], f.labels[g]));
                        }
                    }
                }
                Ok(())
            }
            Monoid::Lattice(l) | Monoid::LatticeWithZero(l) => {
                let n = l.generators.len();
                for (a, b) in l.kernel_relations() {
                    let ca: Vec<i64> = a.iter().map(|&x| x as i64).collect();
                    let cb: Vec<i64> = b.iter().map(|&x| x as i64).collect();
                    if self.image_of_coeffs(&ca) != self.image_of_coeffs(&cb) {
                        return fail(format!("relation {a:?} = {b:?} of {} is violated", l.name));
                    }
                }
                if let Monoid::LatticeWithZero(_) = &self.source {
                    let z = &self.images[n];
                    if self.target.mul_unchecked(z, z) != *z {
                        return fail("the image of 0 is not idempotent".into());
                    }
                    for img in &self.images[..n] {
                        if self.target.mul_unchecked(z, img) != *z {
                            return fail("the image of 0 does not absorb the other generators".into());
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        if self.target != other.source {
            return Err(Error::OwnerMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let images = self.images.iter().map(|e| other.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(MonoidHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonoidHom) -> Result<MonoidHom> {
        inner.then(self)
    }

    /// Local: `φ⁻¹(B^×) = A^×`. Checked on generators, since a product is a
    /// unit only if each factor is.
    pub fn is_local(&self) -> bool {
        self.source
            .generators()
            .iter()
            .zip(&self.images)
            .all(|(g, img)| !self.target.is_unit(img) || self.source.is_unit(g))
    }

    /// Generator indices of the source whose image lies in the given set.
    pub fn generators_mapping_into(&self, pred: impl Fn(&Element) -> bool) -> Vec<usize> {
        (0..self.images.len()).filter(|&i| pred(&self.images[i])).collect()
    }

    /// Two-sided inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<MonoidHom> {
        let not_iso = || Error::NotAHomomorphism(format!("{} -> {} is not invertible", self.source, self.target));
        let images: Vec<Element> = match (&self.source, &self.target) {
            (Monoid::Finite(a), Monoid::Finite(_)) => {
                let values = (0..a.size())
                    .map(|x| self.apply(&Element::Index(x)))
                    .collect::<Result<Vec<_>>>()?;
                let mut sorted = values.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != values.len() || Some(values.len()) != self.target.size() {
                    return Err(not_iso());
                }
                self.target
                    .generators()
                    .iter()
                    .map(|t| Element::Index(values.iter().position(|v| v == t).expect("bijective")))
                    .collect()
            }
            (Monoid::Lattice(a), Monoid::Lattice(_)) | (Monoid::LatticeWithZero(a), Monoid::LatticeWithZero(_)) => {
                let n = a.generators.len();
                let cols: Vec<Vec<i64>> = self.images[..n]
                    .iter()
                    .map(|e| match e {
                        Element::Vector(v) => Ok(v.clone()),
                        _ => Err(not_iso()),
                    })
                    .collect::<Result<_>>()?;
                let b = self.target.as_lattice().expect("lattice target");
                let m = IntMatrix::from_columns(&cols, b.dim);
                let mut out = Vec::new();
                for t in &b.generators {
                    let c = solve_integer(&m, t).ok_or_else(not_iso)?;
                    let mut v = vec![0i64; a.dim];
                    for (ci, g) in c.iter().zip(&a.generators) {
                        for (x, y) in v.iter_mut().zip(g) {
                            *x += ci * y;
                        }
                    }
                    if !a.contains(&v) {
                        return Err(not_iso());
                    }
                    out.push(Element::Vector(v));
                }
                if matches!(self.target, Monoid::LatticeWithZero(_)) {
                    out.push(Element::Zero);
                }
                out
            }
            _ => return Err(not_iso()),
        };
        let inv = MonoidHom::new(self.target.clone(), self.source.clone(), images)?;
        // both composites must be identities on generators
        for g in self.source.generators() {
            if inv.apply(&self.apply(&g)?)? != g {
                return Err(not_iso());
            }
        }
        for g in self.target.generators() {
            if self.apply(&inv.apply(&g)?)? != g {
                return Err(not_iso());
            }
        }
        Ok(inv)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .map(|(g, i)| format!("{} -> {}", self.source.label(g), self.target.label(i)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Candidate images for each source generator.
fn candidates(source: &Monoid, target: &Monoid) -> Result<Vec<Vec<Element>>> {
    let gens = source.generators();
    if let Some(all) = target.elements() {
        return Ok(vec![all; gens.len()]);
    }
    if source.is_finite() {
        // torsion elements of a lattice (with zero) are idempotent: 1 and possibly 0
        let mut c = vec![target.one()];
        c.extend(target.zero());
        return Ok(vec![c; gens.len()]);
    }
    let units = target.units();
    gens.iter()
        .map(|g| match units.finite_elements() {
            Some(u) if source.is_unit(g) => Ok(u.to_vec()),
            _ => Err(Error::Unsupported(format!(
                "enumerating homomorphisms {} -> {} needs a finite target",
                source.name(),
                target.name()
            ))),
        })
        .collect()
}

/// All homomorphisms `A → B`, without duplicates, in lexicographic order of
/// generator images.
pub fn hom_enumerate(a: &Monoid, b: &Monoid) -> Result<Vec<MonoidHom>> {
    let cands = candidates(a, b)?;
    let gens = cands.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens];
    loop {
        let images: Vec<Element> = idx.iter().enumerate().map(|(k, &i)| cands[k][i].clone()).collect();
        let h = MonoidHom::new_unchecked(a.clone(), b.clone(), images);
        if h.validate().is_ok() {
            out.push(h);
        }
        let mut pos = 0;
        loop {
            if pos == gens {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < cands[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn hom_count(a: &Monoid, b: &Monoid) -> Result<usize> {
    Ok(hom_enumerate(a, b)?.len())
}
