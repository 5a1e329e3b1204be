use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{localize, Element, Monoid, MonoidHom};
use crate::scheme::MScheme;
use crate::spec::{PointSet, SpecMorphism, StructureSheaf};

use super::aset::{localize_module, ASet};

type SectionIndex = BTreeMap<Vec<usize>, usize>;

/// A finite poset with a monoid at each point and generization maps
/// `O_p → O_q` for `q ≤ p`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingedSpace {
    labels: Vec<String>,
    /// `leq[q][p]`: `q` is a generization of `p`.
    leq: Vec<Vec<bool>>,
    stalks: Vec<Monoid>,
    gens: BTreeMap<(usize, usize), MonoidHom>,
}

impl RingedSpace {
    pub fn from_spec(o: &StructureSheaf) -> Result<Self> {
        let s = o.space();
        let n = s.len();
        let mut gens = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                if q != p && s.leq(q, p) {
                    gens.insert((p, q), o.generization(p, q)?);
                }
            }
        }
        Ok(RingedSpace {
            labels: (0..n).map(|p| s.label(p)).collect(),
            leq: (0..n).map(|q| (0..n).map(|p| s.leq(q, p)).collect()).collect(),
            stalks: (0..n).map(|p| o.stalk(p).clone()).collect(),
            gens,
        })
    }

    pub fn affine(a: &Monoid) -> Result<Self> {
        Self::from_spec(&StructureSheaf::of(a)?)
    }

    pub fn from_scheme(x: &MScheme) -> Result<Self> {
        let n = x.len();
        let mut gens = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                if q != p && x.leq(q, p) {
                    gens.insert((p, q), x.generization(p, q)?);
                }
            }
        }
        Ok(RingedSpace {
            labels: (0..n).map(|p| x.label(p)).collect(),
            leq: (0..n).map(|q| (0..n).map(|p| x.leq(q, p)).collect()).collect(),
            stalks: (0..n).map(|p| x.stalk(p).clone()).collect(),
            gens,
        })
    }

    pub fn len(&self) -> usize {
        self.stalks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stalks.is_empty()
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn leq(&self, q: usize, p: usize) -> bool {
        self.leq[q][p]
    }

    pub fn stalk(&self, p: usize) -> &Monoid {
        &self.stalks[p]
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// The smallest open neighbourhood of `p`.
    pub fn star(&self, p: usize) -> PointSet {
        (0..self.len()).filter(|&q| self.leq[q][p]).collect()
    }

    pub fn is_open(&self, u: &PointSet) -> bool {
        u.iter()
            .all(|&p| (0..self.len()).all(|q| !self.leq[q][p] || u.contains(&q)))
    }

    /// `O_p → O_q`; the identity when `p = q`.
    pub fn generization(&self, p: usize, q: usize) -> Result<MonoidHom> {
        if p == q {
            return Ok(MonoidHom::identity(&self.stalks[p]));
        }
        self.gens.get(&(p, q)).cloned().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} is not a generization of {}",
                self.labels[q], self.labels[p]
            ))
        })
    }

    fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.gens.keys().copied()
    }

    /// Points ordered so that every point comes after its specializations.
    fn top_down(&self, u: &PointSet) -> Vec<usize> {
        let mut pts: Vec<usize> = u.iter().copied().collect();
        pts.sort_by_key(|&p| std::cmp::Reverse(self.star(p).len()));
        pts
    }

    /// Whether `(O_p)_S ≅ O_q`, with `S` generated by the generators of
    /// `O_p` that become units at `q`.
    pub fn localizes(&self, p: usize, q: usize) -> Result<bool> {
        let g = self.generization(p, q)?;
        let s = inverted_at(&g)?;
        let loc = localize(&self.stalks[p], &s)?;
        Ok(loc.induced(&g)?.inverse().is_ok())
    }
}

fn inverted_at(g: &MonoidHom) -> Result<Vec<Element>> {
    let mut s = Vec::new();
    for e in g.source().generators() {
        if g.target().is_unit(&g.apply(&e)?) {
            s.push(e);
        }
    }
    Ok(s)
}

type Map = Vec<usize>;

fn compose(outer: &[usize], inner: &[usize]) -> Map {
    inner.iter().map(|&x| outer[x]).collect()
}

fn is_bijection(f: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    f.len() == n && f.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
}

/// A sheaf of modules stored stalkwise: `F_p` over `O_p` with restriction
/// maps `F_p → F_q` for `q ≤ p`.
#[derive(Clone, Debug, PartialEq)]
pub struct SheafModule {
    space: RingedSpace,
    stalks: Vec<ASet>,
    restrictions: BTreeMap<(usize, usize), Map>,
}

/// The outcome of a coherence check, with the first pair `(p, q)` whose
/// restriction is not a localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coherence {
    pub witness: Option<(usize, usize)>,
    pub checked: usize,
}

impl Coherence {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl SheafModule {
    pub fn new(space: &RingedSpace, stalks: Vec<ASet>, restrictions: BTreeMap<(usize, usize), Map>) -> Result<Self> {
        if stalks.len() != space.len() {
            return Err(Error::InvalidArgument("one stalk per point is required".into()));
        }
        for (p, m) in stalks.iter().enumerate() {
            if m.owner() != space.stalk(p) {
                return Err(Error::OwnerMismatch(format!(
                    "stalk at {} is over the wrong monoid",
                    space.label(p)
                )));
            }
        }
        let f = SheafModule {
            space: space.clone(),
            stalks,
            restrictions,
        };
        for (p, q) in space.strict_pairs() {
            let r = f.restrictions.get(&(p, q)).ok_or_else(|| {
                Error::InvalidArgument(format!("missing restriction {} -> {}", space.label(p), space.label(q)))
            })?;
            if r.len() != f.stalks[p].len() || r.iter().any(|&y| y >= f.stalks[q].len()) {
                return Err(Error::InvalidArgument("restriction out of range".into()));
            }
            let g = space.generization(p, q)?;
            for (e, act_p) in space.stalk(p).generators().iter().zip(f.stalks[p].generator_actions()) {
                let act_q = f.stalks[q].action_of(&g.apply(e)?)?;
                if compose(r, act_p) != compose(&act_q, r) {
                    return Err(Error::NotAHomomorphism(format!(
                        "restriction {} -> {} is not compatible with the module structure",
                        space.label(p),
                        space.label(q)
                    )));
                }
            }
        }
        for (p, q) in space.strict_pairs() {
            for r in 0..space.len() {
                if r != q
                    && space.leq(r, q)
                    && compose(&f.restriction(q, r), &f.restriction(p, q)) != f.restriction(p, r)
                {
                    return Err(Error::InvalidArgument("restrictions do not compose".into()));
                }
            }
        }
        Ok(f)
    }

    /// `O_X` itself, when every stalk is finite.
    pub fn structure(space: &RingedSpace) -> Result<Self> {
        let stalks: Vec<ASet> = (0..space.len())
            .map(|p| ASet::regular(space.stalk(p)))
            .collect::<Result<_>>()?;
        let mut restrictions = BTreeMap::new();
        for (p, q) in space.strict_pairs() {
            let g = space.generization(p, q)?;
            let (sp, sq) = (
                space.stalk(p).elements().expect("finite"),
                space.stalk(q).elements().expect("finite"),
            );
            let map = sp
                .iter()
                .map(|e| {
                    let img = g.apply(e)?;
                    Ok(sq.iter().position(|x| *x == img).expect("image in stalk"))
                })
                .collect::<Result<_>>()?;
            restrictions.insert((p, q), map);
        }
        SheafModule::new(space, stalks, restrictions)
    }

    /// `M̃` on `Spec A`: stalks `M_p`.
    pub fn tilde(m: &ASet) -> Result<Self> {
        let o = StructureSheaf::of(m.owner())?;
        let space = RingedSpace::from_spec(&o)?;
        let locals: Vec<_> = (0..space.len())
            .map(|p| localize_module(m, o.localization(p)))
            .collect::<Result<_>>()?;
        let mut restrictions = BTreeMap::new();
        for (p, q) in space.strict_pairs() {
            let map = locals[p]
                .fractions
                .iter()
                .map(|(x, s)| locals[q].fraction(*x, s, m))
                .collect::<Result<_>>()?;
            restrictions.insert((p, q), map);
        }
        SheafModule::new(&space, locals.into_iter().map(|l| l.module).collect(), restrictions)
    }

    pub fn space(&self) -> &RingedSpace {
        &self.space
    }

    pub fn stalk(&self, p: usize) -> &ASet {
        &self.stalks[p]
    }

    pub fn restriction(&self, p: usize, q: usize) -> Map {
        if p == q {
            (0..self.stalks[p].len()).collect()
        } else {
            self.restrictions[&(p, q)].clone()
        }
    }

    /// `F(U)`: compatible families, listed in the order of `u`.
    pub fn sections(&self, u: &PointSet) -> Result<Vec<Vec<usize>>> {
        if !self.space.is_open(u) {
            return Err(Error::NotOpen(format!("{u:?}")));
        }
        let order = self.space.top_down(u);
        let mut out = Vec::new();
        let mut val: BTreeMap<usize, usize> = BTreeMap::new();
        self.extend_section(&order, 0, &mut val, &mut out);
        Ok(out.into_iter().map(|v| u.iter().map(|p| v[p]).collect()).collect())
    }

    fn extend_section(
        &self,
        order: &[usize],
        i: usize,
        val: &mut BTreeMap<usize, usize>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        let Some(&q) = order.get(i) else {
            out.push(val.clone());
            return;
        };
        let mut forced: Option<usize> = None;
        for (&p, &s) in val.iter() {
            if p != q && self.space.leq(q, p) {
                let y = self.restrictions[&(p, q)][s];
                match forced {
                    Some(z) if z != y => return,
                    _ => forced = Some(y),
                }
            }
        }
        let choices: Vec<usize> = match forced {
            Some(y) => vec![y],
            None => (0..self.stalks[q].len()).collect(),
        };
        for y in choices {
            val.insert(q, y);
            self.extend_section(order, i + 1, val, out);
        }
        val.remove(&q);
    }

    pub fn global_sections(&self) -> Result<Vec<Vec<usize>>> {
        self.sections(&self.space.all())
    }

    fn same_space(&self, other: &SheafModule) -> Result<()> {
        if self.space != other.space {
            return Err(Error::OwnerMismatch("sheaves live on different spaces".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &SheafModule) -> Result<Self> {
        self.same_space(other)?;
        let stalks = self
            .stalks
            .iter()
            .zip(&other.stalks)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        let mut restrictions = BTreeMap::new();
        for (&(p, q), r) in &self.restrictions {
            let shift = self.stalks[q].len();
            let mut map = r.clone();
            map.extend(other.restrictions[&(p, q)].iter().map(|&y| y + shift));
            restrictions.insert((p, q), map);
        }
        SheafModule::new(&self.space, stalks, restrictions)
    }

    /// `F ⊗_{O_X} G`, computed stalkwise.
    pub fn tensor(&self, other: &SheafModule) -> Result<Self> {
        self.same_space(other)?;
        let parts: Vec<_> = self
            .stalks
            .iter()
            .zip(&other.stalks)
            .map(|(a, b)| a.tensor_with_map(b))
            .collect::<Result<_>>()?;
        let mut restrictions = BTreeMap::new();
        for (&(p, q), rf) in &self.restrictions {
            let rg = &other.restrictions[&(p, q)];
            let (tp, qp) = &parts[p];
            let qq = &parts[q].1;
            let mut map = vec![0; tp.len()];
            for (m, row) in qp.iter().enumerate() {
                for (n, &c) in row.iter().enumerate() {
                    map[c] = qq[rf[m]][rg[n]];
                }
            }
            restrictions.insert((p, q), map);
        }
        SheafModule::new(&self.space, parts.into_iter().map(|(t, _)| t).collect(), restrictions)
    }

    /// All morphisms `F → G`, as families of stalk maps.
    pub fn homs(&self, other: &SheafModule) -> Result<Vec<Vec<Map>>> {
        self.homs_over(other, &self.space.all())
    }

    /// Morphisms `F|_U → G|_U`, listed in the order of `u`.
    pub fn homs_over(&self, other: &SheafModule, u: &PointSet) -> Result<Vec<Vec<Map>>> {
        self.same_space(other)?;
        if !self.space.is_open(u) {
            return Err(Error::NotOpen(format!("{u:?}")));
        }
        let pts: Vec<usize> = u.iter().copied().collect();
        let local: Vec<Vec<Map>> = pts
            .iter()
            .map(|&p| self.stalks[p].homs(&other.stalks[p]))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.extend_hom(other, &pts, &local, &mut chosen, &mut out);
        Ok(out)
    }

    fn extend_hom(
        &self,
        other: &SheafModule,
        pts: &[usize],
        local: &[Vec<Map>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<Map>>,
    ) {
        let i = chosen.len();
        if i == pts.len() {
            out.push(chosen.iter().enumerate().map(|(k, &c)| local[k][c].clone()).collect());
            return;
        }
        let q = pts[i];
        for c in 0..local[i].len() {
            let fq = &local[i][c];
            let ok = (0..i).all(|k| {
                let p = pts[k];
                let fp = &local[k][chosen[k]];
                let check = |hi: usize, lo: usize, fhi: &Map, flo: &Map| {
                    compose(&other.restriction(hi, lo), fhi) == compose(flo, &self.restriction(hi, lo))
                };
                if self.space.leq(q, p) {
                    check(p, q, fp, fq)
                } else if self.space.leq(p, q) {
                    check(q, p, fq, fp)
                } else {
                    true
                }
            });
            if ok {
                chosen.push(c);
                self.extend_hom(other, pts, local, chosen, out);
                chosen.pop();
            }
        }
    }

    pub fn is_isomorphic(&self, other: &SheafModule) -> Result<bool> {
        self.same_space(other)?;
        if self.stalks.iter().zip(&other.stalks).any(|(a, b)| a.len() != b.len()) {
            return Ok(false);
        }
        Ok(super::iso::isomorphism(&self.labelled(), &other.labelled()).is_some())
    }

    /// All stalks side by side, with generator actions and restrictions as
    /// partial maps.
    fn labelled(&self) -> super::iso::Structure {
        let offsets: Vec<usize> = self
            .stalks
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.len();
                Some(o)
            })
            .collect();
        let total: usize = self.stalks.iter().map(ASet::len).sum();
        let mut blocks = vec![0; total];
        let mut ops = Vec::new();
        for (p, s) in self.stalks.iter().enumerate() {
            blocks[offsets[p]..offsets[p] + s.len()].fill(p);
            for g in s.generator_actions() {
                let mut op = vec![None; total];
                for (x, &y) in g.iter().enumerate() {
                    op[offsets[p] + x] = Some(offsets[p] + y);
                }
                ops.push(op);
            }
        }
        for (&(p, q), r) in &self.restrictions {
            let mut op = vec![None; total];
            for (x, &y) in r.iter().enumerate() {
                op[offsets[p] + x] = Some(offsets[q] + y);
            }
            ops.push(op);
        }
        super::iso::Structure { blocks, ops }
    }

    /// Checks that every restriction `F_p → F_q` identifies `F_q` with the
    /// localization of `F_p`, i.e. that `F|_{U_p} ≅ (F_p)~` on every affine
    /// neighbourhood `U_p`.
    pub fn coherence(&self) -> Result<Coherence> {
        let mut checked = 0;
        for (p, q) in self.space.strict_pairs() {
            checked += 1;
            let g = self.space.generization(p, q)?;
            let s = inverted_at(&g)?;
            let loc = localize(self.space.stalk(p), &s)?;
            if loc.induced(&g)?.inverse().is_err() {
                return Ok(Coherence {
                    witness: Some((p, q)),
                    checked,
                });
            }
            let lm = localize_module(&self.stalks[p], &loc)?;
            let r = &self.restrictions[&(p, q)];
            let oq = self.space.stalk(q);
            let mut map = Vec::with_capacity(lm.module.len());
            for (x, den) in &lm.fractions {
                let inv = oq
                    .inverse(&g.apply(den)?)
                    .ok_or_else(|| Error::InvalidArgument("S not inverted".into()))?;
                map.push(self.stalks[q].act(&inv, r[*x])?);
            }
            if !is_bijection(&map, self.stalks[q].len()) {
                return Ok(Coherence {
                    witness: Some((p, q)),
                    checked,
                });
            }
        }
        Ok(Coherence { witness: None, checked })
    }

    pub fn is_coherent(&self) -> Result<bool> {
        Ok(self.coherence()?.holds())
    }

    pub fn witness_json(&self, c: &Coherence) -> serde_json::Value {
        match c.witness {
            None => serde_json::json!({"coherent": true, "checked": c.checked}),
            Some((p, q)) => serde_json::json!({
                "coherent": false,
                "checked": c.checked,
                "open": self.space.star(p).iter().map(|&x| self.space.label(x).to_string()).collect::<Vec<_>>(),
                "from": self.space.label(p),
                "to": self.space.label(q),
                "stalk_from": self.stalks[p].labels(),
                "stalk_to": self.stalks[q].labels(),
                "restriction": self.restrictions[&(p, q)],
            }),
        }
    }
}

/// A map of finite ringed spaces `X → Y`: points `x ↦ f(x)` and local maps
/// `O_{Y,f(x)} → O_{X,x}`.
#[derive(Clone, Debug)]
pub struct SpaceMorphism {
    pub source: RingedSpace,
    pub target: RingedSpace,
    pub point_map: Vec<usize>,
    pub stalk_maps: Vec<MonoidHom>,
}

impl SpaceMorphism {
    pub fn identity(space: &RingedSpace) -> Self {
        SpaceMorphism {
            source: space.clone(),
            target: space.clone(),
            point_map: (0..space.len()).collect(),
            stalk_maps: (0..space.len()).map(|p| MonoidHom::identity(space.stalk(p))).collect(),
        }
    }

    /// `Spec B → Spec A` from `φ: A → B`.
    pub fn from_spec(f: &SpecMorphism) -> Result<Self> {
        Ok(SpaceMorphism {
            source: RingedSpace::affine(f.hom.target())?,
            target: RingedSpace::affine(f.hom.source())?,
            point_map: f.point_map.clone(),
            stalk_maps: f.stalk_maps.clone(),
        })
    }

    fn preimage(&self, y: usize) -> PointSet {
        let down = self.target.star(y);
        (0..self.source.len())
            .filter(|&x| down.contains(&self.point_map[x]))
            .collect()
    }

    /// `f_*F`: `(f_*F)_y = F(f⁻¹(U_y))`.
    pub fn pushforward(&self, f: &SheafModule) -> Result<SheafModule> {
        if f.space != self.source {
            return Err(Error::OwnerMismatch("sheaf is not on the source".into()));
        }
        let mut stalks = Vec::new();
        let mut tables: Vec<(Vec<usize>, SectionIndex)> = Vec::new();
        for y in 0..self.target.len() {
            let u = self.preimage(y);
            let pts: Vec<usize> = u.iter().copied().collect();
            let secs = f.sections(&u)?;
            let index: BTreeMap<Vec<usize>, usize> = secs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            let oy = self.target.stalk(y);
            let mut gens = Vec::new();
            for a in oy.generators() {
                let acts: Vec<Map> = pts
                    .iter()
                    .map(|&x| {
                        let down = self.target.generization(y, self.point_map[x])?;
                        f.stalks[x].action_of(&self.stalk_maps[x].apply(&down.apply(&a)?)?)
                    })
                    .collect::<Result<_>>()?;
                gens.push(
                    secs.iter()
                        .map(|s| {
                            let t: Vec<usize> = s.iter().zip(&acts).map(|(&v, act)| act[v]).collect();
                            index[&t]
                        })
                        .collect(),
                );
            }
            let labels = secs
                .iter()
                .map(|s| {
                    let parts: Vec<&str> = s.iter().zip(&pts).map(|(&v, &x)| f.stalks[x].label(v)).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            stalks.push(ASet::new(oy, labels, gens)?);
            tables.push((pts, index));
        }
        let mut restrictions = BTreeMap::new();
        for (y, y2) in self.target.strict_pairs() {
            let (pts, index) = &tables[y];
            let (pts2, index2) = &tables[y2];
            let pos: Vec<usize> = pts2
                .iter()
                .map(|x| pts.iter().position(|z| z == x).expect("preimage shrinks"))
                .collect();
            let mut map = vec![0; index.len()];
            for (s, &i) in index {
                let t: Vec<usize> = pos.iter().map(|&k| s[k]).collect();
                map[i] = index2[&t];
            }
            restrictions.insert((y, y2), map);
        }
        SheafModule::new(&self.target, stalks, restrictions)
    }

    /// `f^*G`: `(f^*G)_x = O_{X,x} ⊗_{O_{Y,f(x)}} G_{f(x)}`.
    pub fn pullback(&self, g: &SheafModule) -> Result<SheafModule> {
        if g.space != self.target {
            return Err(Error::OwnerMismatch("sheaf is not on the target".into()));
        }
        let mut stalks = Vec::new();
        let mut quotients = Vec::new();
        for x in 0..self.source.len() {
            let (t, quot) = g.stalks[self.point_map[x]].extend_scalars(&self.stalk_maps[x])?;
            stalks.push(t);
            quotients.push(quot);
        }
        let mut restrictions = BTreeMap::new();
        for (x, x2) in self.source.strict_pairs() {
            let down = self.source.generization(x, x2)?;
            let (ex, ex2) = (
                self.source.stalk(x).elements().expect("finite"),
                self.source.stalk(x2).elements().expect("finite"),
            );
            let rg = g.restriction(self.point_map[x], self.point_map[x2]);
            let mut map = vec![0; stalks[x].len()];
            for (b, row) in quotients[x].iter().enumerate() {
                let b2 = ex2
                    .iter()
                    .position(|e| *e == down.apply(&ex[b]).expect("element"))
                    .expect("image");
                for (n, &k) in row.iter().enumerate() {
                    map[k] = quotients[x2][b2][rg[n]];
                }
            }
            restrictions.insert((x, x2), map);
        }
        SheafModule::new(&self.source, stalks, restrictions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsheaf::aset::all_actions;
    use crate::spec::spec_morphism;

    fn d3() -> Monoid {
        Monoid::dk(3).unwrap()
    }

    fn small_modules(a: &Monoid) -> Vec<ASet> {
        let mut out = vec![ASet::trivial(a, 1), ASet::trivial(a, 2), ASet::regular(a).unwrap()];
        out.push(out[0].direct_sum(&out[2]).unwrap());
        out
    }

    #[test]
    fn tilde_global_sections() {
        for m in small_modules(&d3()) {
            let f = SheafModule::tilde(&m).unwrap();
            assert_eq!(f.global_sections().unwrap().len(), m.len());
            let closed = (0..f.space().len())
                .find(|&p| f.space().star(p).len() == f.space().len())
                .unwrap();
            assert_eq!(f.stalk(closed).len(), m.len());
            assert!(f.is_coherent().unwrap());
        }
    }

    #[test]
    fn tilde_of_regular_is_structure_sheaf() {
        let a = d3();
        let space = RingedSpace::affine(&a).unwrap();
        let o = SheafModule::structure(&space).unwrap();
        let t = SheafModule::tilde(&ASet::regular(&a).unwrap()).unwrap();
        assert!(o.is_isomorphic(&t).unwrap());
        let f = SheafModule::tilde(&ASet::trivial(&a, 2)).unwrap();
        assert!(f.tensor(&o).unwrap().is_isomorphic(&f).unwrap());
    }

    #[test]
    fn tilde_respects_tensor() {
        let a = d3();
        let mods = small_modules(&a);
        for m in &mods {
            for n in &mods {
                let lhs = SheafModule::tilde(&m.tensor(n).unwrap()).unwrap();
                let rhs = SheafModule::tilde(m)
                    .unwrap()
                    .tensor(&SheafModule::tilde(n).unwrap())
                    .unwrap();
                assert!(lhs.is_isomorphic(&rhs).unwrap());
            }
        }
    }

    #[test]
    fn broken_restriction_is_not_coherent() {
        let a = d3();
        let f = SheafModule::tilde(&ASet::trivial(&a, 2)).unwrap();
        // keep the stalks but collapse the restriction to the generic point
        let mut restrictions = f.restrictions.clone();
        for map in restrictions.values_mut() {
            map.iter_mut().for_each(|y| *y = 0);
        }
        let broken = SheafModule::new(f.space(), f.stalks.clone(), restrictions).unwrap();
        let c = broken.coherence().unwrap();
        assert!(!c.holds());
        assert_eq!(broken.witness_json(&c)["coherent"], false);
    }

    #[test]
    fn pushforward_to_a_point() {
        let a = d3();
        let phi = MonoidHom::trivial(&Monoid::trivial(), &a);
        let f = SpaceMorphism::from_spec(&spec_morphism(&phi).unwrap()).unwrap();
        for m in small_modules(&a) {
            let pushed = f.pushforward(&SheafModule::tilde(&m).unwrap()).unwrap();
            assert_eq!(pushed.space().len(), 1);
            assert_eq!(pushed.stalk(0).len(), m.len());
        }
    }

    #[test]
    fn identity_functors() {
        let a = d3();
        let space = RingedSpace::affine(&a).unwrap();
        let id = SpaceMorphism::identity(&space);
        for m in small_modules(&a) {
            let f = SheafModule::tilde(&m).unwrap();
            assert!(id.pushforward(&f).unwrap().is_isomorphic(&f).unwrap());
            assert!(id.pullback(&f).unwrap().is_isomorphic(&f).unwrap());
        }
    }

    #[test]
    fn hom_presheaf_is_a_sheaf() {
        let a = d3();
        let mods = small_modules(&a);
        let (f, g) = (
            SheafModule::tilde(&mods[3]).unwrap(),
            SheafModule::tilde(&mods[1]).unwrap(),
        );
        let space = f.space().clone();
        let all = space.all();
        let cover: Vec<PointSet> = (0..space.len()).map(|p| space.star(p)).collect();
        let glued = f.homs_over(&g, &all).unwrap().len();
        // compatible tuples over the cover by the U_p
        let local: Vec<Vec<Vec<Map>>> = cover.iter().map(|u| f.homs_over(&g, u).unwrap()).collect();
        let mut count = 0;
        let mut idx = vec![0; cover.len()];
        loop {
            let agree = (0..cover.len()).all(|i| {
                (0..cover.len()).all(|j| {
                    cover[i]
                        .iter()
                        .enumerate()
                        .all(|(ki, p)| match cover[j].iter().position(|q| q == p) {
                            Some(kj) => local[i][idx[i]][ki] == local[j][idx[j]][kj],
                            None => true,
                        })
                })
            });
            count += agree as usize;
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < local[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
        assert_eq!(glued, count);
    }

    fn inclusion_c2_c4() -> MonoidHom {
        let (c2, c4) = (Monoid::cyclic(2).unwrap(), Monoid::cyclic(4).unwrap());
        let g2 = c4.pow(&c4.generators()[0], 2).unwrap();
        MonoidHom::new(c2, c4, vec![g2]).unwrap()
    }

    fn zero_into_d3() -> MonoidHom {
        let (d1, d3) = (Monoid::dk(1).unwrap(), d3());
        let images = d1.generators().iter().map(|_| d3.zero().unwrap()).collect();
        MonoidHom::new(d1, d3, images).unwrap()
    }

    #[test]
    fn adjunction_counts() {
        for phi in [inclusion_c2_c4(), zero_into_d3()] {
            let f = SpaceMorphism::from_spec(&spec_morphism(&phi).unwrap()).unwrap();
            let xs: Vec<SheafModule> = (1..=3)
                .flat_map(|n| all_actions(phi.target(), n))
                .map(|m| SheafModule::tilde(&m).unwrap())
                .collect();
            let ys: Vec<SheafModule> = (1..=3)
                .flat_map(|n| all_actions(phi.source(), n))
                .map(|m| SheafModule::tilde(&m).unwrap())
                .collect();
            for g in ys.iter().step_by(3) {
                let pulled = f.pullback(g).unwrap();
                for x in xs.iter().step_by(5) {
                    let lhs = pulled.homs(x).unwrap().len();
                    let rhs = g.homs(&f.pushforward(x).unwrap()).unwrap().len();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn tilde_compatibilities() {
        for phi in [inclusion_c2_c4(), zero_into_d3()] {
            let f = SpaceMorphism::from_spec(&spec_morphism(&phi).unwrap()).unwrap();
            for m in (1..=3).flat_map(|n| all_actions(phi.target(), n)) {
                let pushed = f.pushforward(&SheafModule::tilde(&m).unwrap()).unwrap();
                assert!(pushed
                    .is_isomorphic(&SheafModule::tilde(&m.restrict(&phi).unwrap()).unwrap())
                    .unwrap());
            }
            for n in (1..=3).flat_map(|n| all_actions(phi.source(), n)) {
                let pulled = f.pullback(&SheafModule::tilde(&n).unwrap()).unwrap();
                let ext = n.extend_scalars(&phi).unwrap().0;
                assert!(pulled.is_isomorphic(&SheafModule::tilde(&ext).unwrap()).unwrap());
            }
        }
    }
}
