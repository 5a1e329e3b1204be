//! Base extension to ℤ: monoid rings `ℤ[A]` and small finite test rings.
//!
//! The absorbing zero of a monoid such as `D_k` is an ordinary basis element
//! of `ℤ[A]`; it is not identified with the ring zero.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{hom_count, pushout, Element, FiniteMonoid, Monoid, MonoidHom};

/// A finitely supported integer combination of monoid elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidRingElem {
    terms: BTreeMap<Element, i64>,
}

impl MonoidRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(e: Element) -> Self {
        Self::term(e, 1)
    }

    pub fn term(e: Element, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        MonoidRingElem { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Element, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Element) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn add_term(&mut self, e: Element, c: i64) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MonoidRingElem {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        MonoidRingElem {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Convolution through the monoid operation of `ring`.
    pub fn mul(&self, other: &Self, ring: &Monoid) -> Self {
        let mut out = Self::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                out.add_term(ring.mul_unchecked(a, b), x * y);
            }
        }
        out
    }

    /// Canonical printed form over the monoid's labels, e.g. `2[1] - [g^2]`.
    pub fn display(&self, ring: &Monoid) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("[{}]", ring.label(e)));
        }
        s
    }
}

/// `ℤ[A]` for a monoid `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidRing {
    pub monoid: Monoid,
}

impl MonoidRing {
    pub fn new(monoid: &Monoid) -> Self {
        MonoidRing { monoid: monoid.clone() }
    }

    pub fn one(&self) -> MonoidRingElem {
        MonoidRingElem::basis(self.monoid.one())
    }

    pub fn integer(&self, k: i64) -> MonoidRingElem {
        MonoidRingElem::term(self.monoid.one(), k)
    }

    pub fn mul(&self, a: &MonoidRingElem, b: &MonoidRingElem) -> MonoidRingElem {
        a.mul(b, &self.monoid)
    }

    /// Rank of the underlying free abelian group, for finite `A`.
    pub fn rank(&self) -> Option<usize> {
        self.monoid.size()
    }

    /// `ℤ[φ]` applied to an element.
    pub fn map(phi: &MonoidHom, x: &MonoidRingElem) -> Result<MonoidRingElem> {
        let mut out = MonoidRingElem::zero();
        for (e, &c) in x.terms() {
            out.add_term(phi.apply(e)?, c);
        }
        Ok(out)
    }
}

/// `ℤ/n₁ × … × ℤ/n_r`, elements stored as residue tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    moduli: Vec<u64>,
}

pub type RingElem = Vec<u64>;

impl FiniteRing {
    pub fn zmod(n: u64) -> Result<Self> {
        Self::product(&[n])
    }

    pub fn product(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&n| n < 2) {
            return Err(Error::InvalidArgument(format!(
                "test ring moduli must be >= 2, got {moduli:?}"
            )));
        }
        Ok(FiniteRing {
            moduli: moduli.to_vec(),
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    pub fn elements(&self) -> Vec<RingElem> {
        let mut out: Vec<RingElem> = vec![vec![]];
        for &n in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }

    pub fn zero(&self) -> RingElem {
        vec![0; self.moduli.len()]
    }

    pub fn one(&self) -> RingElem {
        vec![1; self.moduli.len()]
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), n)| (x * y) % n)
            .collect()
    }

    pub fn from_int(&self, k: i64) -> RingElem {
        self.moduli.iter().map(|&n| k.rem_euclid(n as i64) as u64).collect()
    }

    pub fn label(&self, a: &RingElem) -> String {
        if a.len() == 1 {
            a[0].to_string()
        } else {
            format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }

    pub fn name(&self) -> String {
        self.moduli
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    /// The multiplicative monoid `(R, ×)` as a table.
    pub fn multiplicative_monoid(&self) -> Monoid {
        let elems = self.elements();
        let index: BTreeMap<RingElem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&self.mul(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|e| self.label(e)).collect();
        FiniteMonoid::from_table(format!("({},*)", self.name()), labels, table, &[])
            .expect("multiplication of a commutative ring is a commutative monoid")
            .into()
    }
}

/// A ring homomorphism `ℤ[A] → R`, by its values on the basis `A`.
pub type RingHom = Vec<RingElem>;

fn basis_index(_: &FiniteMonoid) -> impl Fn(&Element) -> usize {
    |e| match e {
        Element::Index(i) => *i,
        _ => unreachable!("finite monoid element"),
    }
}

/// All ring homomorphisms `ℤ[A] → R`. An additive map out of the free
/// abelian group `ℤ[A]` is an arbitrary assignment on the basis; it is a ring
/// map iff it preserves `1` and products of basis elements.
///
/// The basis is searched depth first, ordered so that an element which is a
/// product of earlier ones comes after them and has its value forced.
pub fn ring_homs(a: &Monoid, r: &FiniteRing) -> Result<Vec<RingHom>> {
    let f = a
        .as_finite()
        .ok_or_else(|| Error::Unsupported("ring homomorphisms are enumerated for finite A".into()))?;
    let n = f.size();
    let mut order = vec![f.identity()];
    let mut placed = vec![false; n];
    placed[f.identity()] = true;
    let mut forced: Vec<Option<(usize, usize)>> = vec![None; n];
    loop {
        let mut grew = true;
        while grew {
            grew = false;
            for i in 0..order.len() {
                for j in 0..=i {
                    let (x, y) = (order[i], order[j]);
                    let xy = f.mul(x, y);
                    if !placed[xy] {
                        placed[xy] = true;
                        forced[xy] = Some((x, y));
                        order.push(xy);
                        grew = true;
                    }
                }
            }
        }
        match placed.iter().position(|&p| !p) {
            Some(e) => {
                placed[e] = true;
                order.push(e);
            }
            None => break,
        }
    }
    let mut pos = vec![0usize; n];
    for (k, &e) in order.iter().enumerate() {
        pos[e] = k;
    }
    let elems = r.elements();
    let mut vals: Vec<Option<RingElem>> = vec![None; n];
    let mut out = Vec::new();
    search(f, r, &elems, &order, &pos, &forced, 0, &mut vals, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    f: &FiniteMonoid,
    r: &FiniteRing,
    elems: &[RingElem],
    order: &[usize],
    pos: &[usize],
    forced: &[Option<(usize, usize)>],
    k: usize,
    vals: &mut Vec<Option<RingElem>>,
    out: &mut Vec<RingHom>,
) {
    if k == order.len() {
        out.push(vals.iter().map(|v| v.clone().expect("assigned")).collect());
        return;
    }
    let e = order[k];
    let choices: Vec<RingElem> = if k == 0 {
        vec![r.one()]
    } else if let Some((x, y)) = forced[e] {
        let (vx, vy) = (vals[x].as_ref().expect("earlier"), vals[y].as_ref().expect("earlier"));
        vec![r.mul(vx, vy)]
    } else {
        elems.to_vec()
    };
    for c in choices {
        vals[e] = Some(c);
        let consistent = order[..=k].iter().all(|&x| {
            let xe = f.mul(x, e);
            pos[xe] > k || vals[xe] == Some(r.mul(vals[x].as_ref().unwrap(), vals[e].as_ref().unwrap()))
        }) && order[..k].iter().all(|&x| {
            order[..k].iter().all(|&y| {
                f.mul(x, y) != e || vals[e] == Some(r.mul(vals[x].as_ref().unwrap(), vals[y].as_ref().unwrap()))
            })
        });
        if consistent {
            search(f, r, elems, order, pos, forced, k + 1, vals, out);
        }
    }
    vals[e] = None;
}

pub fn ring_hom_count(a: &Monoid, r: &FiniteRing) -> Result<usize> {
    Ok(ring_homs(a, r)?.len())
}

/// `#Hom(A, (R,×))` through monoid homomorphism enumeration.
pub fn monoid_hom_count(a: &Monoid, r: &FiniteRing) -> Result<usize> {
    hom_count(a, &r.multiplicative_monoid())
}

/// Both sides of the adjunction `Hom(ℤ[A], R) ≅ Hom(A, (R,×))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub ring_side: usize,
    pub monoid_side: usize,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.ring_side == self.monoid_side
    }
}

pub fn adjunction(a: &Monoid, r: &FiniteRing) -> Result<AdjunctionCheck> {
    Ok(AdjunctionCheck {
        ring_side: ring_hom_count(a, r)?,
        monoid_side: monoid_hom_count(a, r)?,
    })
}

/// Evaluates a ring homomorphism on an element of `ℤ[A]`.
pub fn evaluate(h: &RingHom, r: &FiniteRing, a: &FiniteMonoid, x: &MonoidRingElem) -> RingElem {
    let ix = basis_index(a);
    x.terms()
        .iter()
        .fold(r.zero(), |acc, (e, &c)| r.add(&acc, &r.mul(&r.from_int(c), &h[ix(e)])))
}

/// Compares `#Hom(ℤ[A ⊗_L B], R)` with the number of pairs of ring maps out
/// of `ℤ[A]` and `ℤ[B]` that agree on `ℤ[L]`.
pub fn zext_compat_fibre(phi_a: &MonoidHom, phi_b: &MonoidHom, r: &FiniteRing) -> Result<(usize, usize)> {
    let p = pushout(phi_a, phi_b)?;
    let lhs = ring_hom_count(&p.monoid, r)?;
    let (a, b, l) = (phi_a.target(), phi_b.target(), phi_a.source());
    let (fa, fb) = match (a.as_finite(), b.as_finite()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::Unsupported(
                "ℤ-compatibility is checked for finite monoids".into(),
            ))
        }
    };
    let l_elems = l
        .elements()
        .ok_or_else(|| Error::Unsupported("ℤ-compatibility is checked for finite L".into()))?;
    let via_a: Vec<usize> = l_elems
        .iter()
        .map(|x| phi_a.apply(x).map(|e| basis_index(fa)(&e)))
        .collect::<Result<_>>()?;
    let via_b: Vec<usize> = l_elems
        .iter()
        .map(|x| phi_b.apply(x).map(|e| basis_index(fb)(&e)))
        .collect::<Result<_>>()?;
    let homs_a = ring_homs(a, r)?;
    let homs_b = ring_homs(b, r)?;
    let mut rhs = 0;
    for f in &homs_a {
        for g in &homs_b {
            if via_a.iter().zip(&via_b).all(|(&x, &y)| f[x] == g[y]) {
                rhs += 1;
            }
        }
    }
    Ok((lhs, rhs))
}

impl fmt::Display for AdjunctionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring homs: {}, monoid homs: {}", self.ring_side, self.monoid_side)
    }
}
