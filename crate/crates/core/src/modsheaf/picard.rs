use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::intmat::{integer_kernel, quotient_invariants, solve_integer, AbelianInvariants, IntMatrix};
use crate::monoid::{Element, Monoid, MonoidHom, Units};
use crate::scheme::MScheme;

use super::aset::ASet;
use super::sheaf::{Coherence, RingedSpace};

/// `A^×` presented as `ℤⁿ / R`, with `n` unit generators.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub monoid: Monoid,
    pub generators: Vec<Element>,
    pub relations: Vec<Vec<i64>>,
    lattice: Option<IntMatrix>,
}

impl UnitGroup {
    pub fn of(a: &Monoid) -> Result<Self> {
        match a.units() {
            Units::Finite(elems) => {
                let n = elems.len();
                let pos = |e: &Element| elems.iter().position(|x| x == e).expect("units are closed");
                let mut relations = Vec::new();
                for (i, x) in elems.iter().enumerate() {
                    for (j, y) in elems.iter().enumerate().skip(i) {
                        let mut r = vec![0i64; n];
                        r[i] += 1;
                        r[j] += 1;
                        r[pos(&a.mul_unchecked(x, y))] -= 1;
                        if r.iter().any(|&c| c != 0) {
                            relations.push(r);
                        }
                    }
                }
                if n == 1 {
                    relations.push(vec![1]);
                }
                Ok(UnitGroup {
                    monoid: a.clone(),
                    generators: elems,
                    relations,
                    lattice: None,
                })
            }
            Units::Lattice { generators, .. } => {
                let dim = a.as_lattice().expect("lattice units").dim;
                let cols: Vec<Vec<i64>> = generators
                    .iter()
                    .map(|g| match g {
                        Element::Vector(v) => v.clone(),
                        _ => unreachable!("unit generators are vectors"),
                    })
                    .collect();
                let m = IntMatrix::from_columns(&cols, dim);
                let relations = integer_kernel(&m);
                Ok(UnitGroup {
                    monoid: a.clone(),
                    generators,
                    relations,
                    lattice: Some(m),
                })
            }
        }
    }

    pub fn ambient(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of a unit over the generators.
    pub fn coordinates(&self, u: &Element) -> Result<Vec<i64>> {
        if !self.monoid.is_unit(u) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a unit",
                self.monoid.label(u)
            )));
        }
        match (&self.lattice, u) {
            (Some(m), Element::Vector(v)) => {
                solve_integer(m, v).ok_or_else(|| Error::InvalidArgument("unit outside the unit lattice".into()))
            }
            (None, _) => {
                let mut c = vec![0; self.ambient()];
                c[self.generators.iter().position(|x| x == u).expect("unit listed")] = 1;
                Ok(c)
            }
            _ => Err(Error::InvalidElement {
                element: u.to_string(),
                monoid: self.monoid.name(),
            }),
        }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        quotient_invariants(self.ambient(), &self.relations)
    }

    /// The matrix of `h|: A^× → B^×` in these coordinates.
    pub fn induced(&self, h: &MonoidHom, target: &UnitGroup) -> Result<Vec<Vec<i64>>> {
        self.generators
            .iter()
            .map(|g| target.coordinates(&h.apply(g)?))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_trivial()
    }
}

fn check_pairwise(x: &MScheme) -> Result<()> {
    for p in 0..x.len() {
        let charts: BTreeSet<usize> = x.representatives(p).iter().map(|r| r.0).collect();
        if charts.len() > 2 {
            return Err(Error::Unsupported(format!(
                "{} lies in {} charts; only pairwise overlaps are handled",
                x.label(p),
                charts.len()
            )));
        }
    }
    Ok(())
}

/// The Čech complex `C⁰ → C¹` of `O^×` on the chart cover.
struct Cech {
    /// Offsets of each overlap's unit group inside `C¹`.
    offsets: Vec<usize>,
    ambient: usize,
    overlap_units: Vec<UnitGroup>,
    /// Relations of `C¹` together with `im d⁰`.
    relations: Vec<Vec<i64>>,
}

impl Cech {
    fn new(x: &MScheme) -> Result<Self> {
        check_pairwise(x)?;
        let chart_units: Vec<UnitGroup> = x
            .charts()
            .iter()
            .map(|c| UnitGroup::of(c.monoid()))
            .collect::<Result<_>>()?;
        let overlap_units: Vec<UnitGroup> = x
            .transitions()
            .iter()
            .map(|t| UnitGroup::of(&t.loc_i.monoid))
            .collect::<Result<_>>()?;
        let mut offsets = Vec::new();
        let mut ambient = 0;
        for u in &overlap_units {
            offsets.push(ambient);
            ambient += u.ambient();
        }
        let mut relations = Vec::new();
        for (k, u) in overlap_units.iter().enumerate() {
            for r in &u.relations {
                let mut v = vec![0; ambient];
                v[offsets[k]..offsets[k] + u.ambient()].copy_from_slice(r);
                relations.push(v);
            }
        }
        // d⁰ on each generator of each chart's unit group
        for (c, cu) in chart_units.iter().enumerate() {
            for g in &cu.generators {
                let mut v = vec![0; ambient];
                for (k, (o, t)) in x.overlaps().iter().zip(x.transitions()).enumerate() {
                    let ou = &overlap_units[k];
                    let img = if o.i == c {
                        Some((1, t.loc_i.map.apply(g)?))
                    } else if o.j == c {
                        Some((-1, t.theta.apply(&t.loc_j.map.apply(g)?)?))
                    } else {
                        None
                    };
                    if let Some((sign, e)) = img {
                        for (i, a) in ou.coordinates(&e)?.into_iter().enumerate() {
                            v[offsets[k] + i] += sign * a;
                        }
                    }
                }
                if v.iter().any(|&a| a != 0) {
                    relations.push(v);
                }
            }
        }
        Ok(Cech {
            offsets,
            ambient,
            overlap_units,
            relations,
        })
    }

    fn cochain(&self, units: &[Element]) -> Result<Vec<i64>> {
        let mut v = vec![0; self.ambient];
        for (k, u) in units.iter().enumerate() {
            let c = self.overlap_units[k].coordinates(u)?;
            v[self.offsets[k]..self.offsets[k] + c.len()].copy_from_slice(&c);
        }
        Ok(v)
    }

    fn is_coboundary(&self, v: &[i64]) -> bool {
        if v.iter().all(|&a| a == 0) {
            return true;
        }
        if self.relations.is_empty() {
            return false;
        }
        solve_integer(&IntMatrix::from_columns(&self.relations, self.ambient), v).is_some()
    }
}

/// `Pic(X) = Ȟ¹(X, O^×)` on the chart cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Picard {
    pub group: AbelianInvariants,
}

impl Picard {
    pub fn to_json(&self) -> serde_json::Value {
        json!({"rank": self.group.rank, "torsion": self.group.torsion})
    }
}

pub fn picard(x: &MScheme) -> Result<Picard> {
    let cech = Cech::new(x)?;
    Ok(Picard {
        group: quotient_invariants(cech.ambient, &cech.relations),
    })
}

/// A line bundle given by a unit of `O(U_i ∩ U_j)` on each overlap, written
/// in the coordinates of chart `i`.
#[derive(Clone, Debug)]
pub struct LineBundle {
    scheme: MScheme,
    transitions: Vec<Element>,
}

impl LineBundle {
    pub fn new(x: &MScheme, transitions: Vec<Element>) -> Result<Self> {
        check_pairwise(x)?;
        if transitions.len() != x.overlaps().len() {
            return Err(Error::InvalidArgument("one transition per overlap is required".into()));
        }
        for (t, g) in x.transitions().iter().zip(&transitions) {
            if !t.loc_i.monoid.is_unit(g) {
                return Err(Error::InvalidArgument(format!(
                    "transition {} is not invertible on the overlap",
                    t.loc_i.monoid.label(g)
                )));
            }
        }
        Ok(LineBundle {
            scheme: x.clone(),
            transitions,
        })
    }

    pub fn trivial(x: &MScheme) -> Result<Self> {
        let ones = x.transitions().iter().map(|t| t.loc_i.monoid.one()).collect();
        LineBundle::new(x, ones)
    }

    /// `O(k)` on a scheme with one overlap whose unit group is `ℤ`.
    pub fn twist(x: &MScheme, k: i64) -> Result<Self> {
        let t = match x.transitions() {
            [t] => t,
            _ => return Err(Error::Unsupported("twists need a single overlap".into())),
        };
        let u = UnitGroup::of(&t.loc_i.monoid)?;
        if u.invariants()
            != (AbelianInvariants {
                rank: 1,
                torsion: vec![],
            })
        {
            return Err(Error::Unsupported("twists need overlap units isomorphic to Z".into()));
        }
        let g = u
            .generators
            .iter()
            .find(|g| u.coordinates(g).map(|c| c.iter().sum::<i64>() != 0).unwrap_or(false));
        let g = g.ok_or_else(|| Error::Unsupported("no generating unit".into()))?;
        LineBundle::new(x, vec![t.loc_i.monoid.pow(g, k)?])
    }

    pub fn scheme(&self) -> &MScheme {
        &self.scheme
    }

    pub fn transitions(&self) -> &[Element] {
        &self.transitions
    }

    pub fn dual(&self) -> Result<Self> {
        let inv = self
            .scheme
            .transitions()
            .iter()
            .zip(&self.transitions)
            .map(|(t, g)| t.loc_i.monoid.inverse(g).expect("transitions are units"))
            .collect();
        LineBundle::new(&self.scheme, inv)
    }

    pub fn tensor(&self, other: &LineBundle) -> Result<Self> {
        let prod = self
            .scheme
            .transitions()
            .iter()
            .zip(self.transitions.iter().zip(&other.transitions))
            .map(|(t, (a, b))| t.loc_i.monoid.mul(a, b))
            .collect::<Result<_>>()?;
        LineBundle::new(&self.scheme, prod)
    }

    /// Whether the class of this bundle in `Pic(X)` vanishes.
    pub fn is_trivial(&self) -> Result<bool> {
        let cech = Cech::new(&self.scheme)?;
        Ok(cech.is_coboundary(&cech.cochain(&self.transitions)?))
    }

    /// Whether `L ≅ M`.
    pub fn is_isomorphic(&self, other: &LineBundle) -> Result<bool> {
        self.tensor(&other.dual()?)?.is_trivial()
    }
}

/// A direct sum of line bundles.
#[derive(Clone, Debug)]
pub struct LocallyFree {
    summands: Vec<LineBundle>,
}

impl LocallyFree {
    pub fn from_line(l: LineBundle) -> Self {
        LocallyFree { summands: vec![l] }
    }

    pub fn structure(x: &MScheme) -> Result<Self> {
        Ok(Self::from_line(LineBundle::trivial(x)?))
    }

    pub fn direct_sum(&self, other: &LocallyFree) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        LocallyFree { summands }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// On each chart the sheaf is `Ã^r`, so coherence reduces to every
    /// generization map of `O_X` being a localization.
    pub fn coherence(&self) -> Result<Coherence> {
        let x = self
            .summands
            .first()
            .map(LineBundle::scheme)
            .ok_or_else(|| Error::InvalidArgument("rank 0".into()))?;
        let space = RingedSpace::from_scheme(x)?;
        let mut checked = 0;
        for p in 0..space.len() {
            for q in 0..space.len() {
                if q != p && space.leq(q, p) {
                    checked += 1;
                    if !space.localizes(p, q)? {
                        return Ok(Coherence {
                            witness: Some((p, q)),
                            checked,
                        });
                    }
                }
            }
        }
        Ok(Coherence { witness: None, checked })
    }
}

/// The trace `F ⊗ F* → O_X` is an isomorphism for a line bundle `F`.
///
/// In the local frames `e_i`, `e_i*` the trace is `a e_i ⊗ b e_i* ↦ ab`; it
/// glues when `g_ij · g_ij⁻¹ = 1` on every overlap, and on each stalk the
/// map `O_x ⊗_{O_x} O_x → O_x` is checked to be bijective.
pub fn trace_is_iso(f: &LocallyFree) -> Result<bool> {
    if f.rank() != 1 {
        return Err(Error::RankDefect(f.rank()));
    }
    let l = &f.summands[0];
    let d = l.dual()?;
    for ((t, g), h) in l.scheme.transitions().iter().zip(&l.transitions).zip(&d.transitions) {
        if t.loc_i.monoid.mul(g, h)? != t.loc_i.monoid.one() {
            return Ok(false);
        }
    }
    let x = &l.scheme;
    for p in 0..x.len() {
        let o = x.stalk(p);
        if !o.is_finite() {
            // (a, b) ∼ (1, ab) always, and ab separates the classes (1, c)
            continue;
        }
        let reg = ASet::regular(o)?;
        let (t, quot) = reg.tensor_with_map(&reg)?;
        let elems = o.elements().expect("finite");
        let mut trace = vec![usize::MAX; t.len()];
        for (a, row) in quot.iter().enumerate() {
            for (b, &k) in row.iter().enumerate() {
                let ab = o.mul(&elems[a], &elems[b])?;
                let v = elems.iter().position(|e| *e == ab).expect("closed");
                if trace[k] != usize::MAX && trace[k] != v {
                    return Ok(false);
                }
                trace[k] = v;
            }
        }
        let image: BTreeSet<usize> = trace.iter().copied().collect();
        if image.len() != t.len() || t.len() != elems.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
