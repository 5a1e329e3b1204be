use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::intmat::{quotient_invariants, AbelianInvariants};
use crate::monoid::{Element, Localization, Monoid, MonoidHom};

/// A finite set with an action of a monoid, given by the action of each
/// generator of the owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASet {
    owner: Monoid,
    labels: Vec<String>,
    gens: Vec<Vec<usize>>,
}

type Map = Vec<usize>;

fn compose(outer: &[usize], inner: &[usize]) -> Map {
    inner.iter().map(|&x| outer[x]).collect()
}

fn identity(n: usize) -> Map {
    (0..n).collect()
}

fn invert(m: &[usize]) -> Option<Map> {
    let mut out = vec![usize::MAX; m.len()];
    for (x, &y) in m.iter().enumerate() {
        if out[y] != usize::MAX {
            return None;
        }
        out[y] = x;
    }
    Some(out)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl ASet {
    pub fn new(owner: &Monoid, labels: Vec<String>, gens: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if gens.len() != owner.generators().len() {
            return Err(Error::InvalidArgument(format!(
                "{} has {} generators but {} actions were given",
                owner.name(),
                owner.generators().len(),
                gens.len()
            )));
        }
        if gens.iter().any(|g| g.len() != n || g.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidArgument("generator action out of range".into()));
        }
        let m = ASet {
            owner: owner.clone(),
            labels,
            gens,
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// The owner acting trivially on `n` points.
    pub fn trivial(owner: &Monoid, n: usize) -> Self {
        let gens = vec![identity(n); owner.generators().len()];
        ASet {
            owner: owner.clone(),
            labels: (0..n).map(|i| format!("m{i}")).collect(),
            gens,
        }
    }

    /// A finite monoid acting on itself by multiplication.
    pub fn regular(owner: &Monoid) -> Result<Self> {
        let elems = owner
            .elements()
            .filter(|_| owner.is_finite())
            .ok_or_else(|| Error::Unsupported(format!("{} is infinite", owner.name())))?;
        let idx = |e: &Element| elems.iter().position(|x| x == e).expect("closed under products");
        let gens = owner
            .generators()
            .iter()
            .map(|g| elems.iter().map(|e| idx(&owner.mul_unchecked(g, e))).collect())
            .collect();
        Ok(ASet {
            owner: owner.clone(),
            labels: elems.iter().map(|e| owner.label(e)).collect(),
            gens,
        })
    }

    /// `⊔ⁿ A`.
    pub fn free(owner: &Monoid, n: usize) -> Result<Self> {
        let a = ASet::regular(owner)?;
        let mut out = ASet {
            owner: owner.clone(),
            labels: vec![],
            gens: vec![vec![]; a.gens.len()],
        };
        for _ in 0..n {
            out = out.direct_sum(&a)?;
        }
        Ok(out)
    }

    pub fn owner(&self) -> &Monoid {
        &self.owner
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_actions(&self) -> &[Vec<usize>] {
        &self.gens
    }

    fn power(&self, g: usize, k: i64) -> Result<Map> {
        let base = if k < 0 {
            invert(&self.gens[g])
                .ok_or_else(|| Error::InvalidArgument(format!("unit generator {g} does not act bijectively")))?
        } else {
            self.gens[g].clone()
        };
        let mut out = identity(self.len());
        for _ in 0..k.unsigned_abs() {
            out = compose(&base, &out);
        }
        Ok(out)
    }

    fn map_of_coefficients(&self, coeffs: &[i64]) -> Result<Map> {
        let mut out = identity(self.len());
        for (g, &k) in coeffs.iter().enumerate() {
            if k != 0 {
                out = compose(&self.power(g, k)?, &out);
            }
        }
        Ok(out)
    }

    /// The map `m ↦ a·m`.
    pub fn action_of(&self, a: &Element) -> Result<Map> {
        let coeffs = self.owner.decompose(a).ok_or_else(|| Error::InvalidElement {
            element: a.to_string(),
            monoid: self.owner.name(),
        })?;
        self.map_of_coefficients(&coeffs)
    }

    pub fn act(&self, a: &Element, m: usize) -> Result<usize> {
        Ok(self.action_of(a)?[m])
    }

    fn check_axioms(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvalidArgument(format!("not an action: {what}")));
        match &self.owner {
            Monoid::Finite(_) => {
                let elems = self.owner.elements().expect("finite");
                let maps: Vec<Map> = elems.iter().map(|e| self.action_of(e)).collect::<Result<_>>()?;
                if maps[elems.iter().position(|e| *e == self.owner.one()).expect("identity")] != identity(self.len()) {
                    return fail("1 does not act as the identity".into());
                }
                for (g, e) in self.owner.generators().iter().enumerate() {
                    let k = elems.iter().position(|x| x == e).expect("generator is an element");
                    if maps[k] != self.gens[g] {
                        return fail(format!("generator {} acts unlike its word", self.owner.label(e)));
                    }
                }
                for (i, a) in elems.iter().enumerate() {
                    for (j, b) in elems.iter().enumerate() {
                        let ab = self.owner.mul_unchecked(a, b);
                        let k = elems.iter().position(|e| *e == ab).expect("closed");
                        if maps[k] != compose(&maps[i], &maps[j]) {
                            return fail(format!(
                                "({}{})m differs from {}({}m)",
                                self.owner.label(a),
                                self.owner.label(b),
                                self.owner.label(a),
                                self.owner.label(b)
                            ));
                        }
                    }
                }
            }
            Monoid::Lattice(l) | Monoid::LatticeWithZero(l) => {
                for i in 0..self.gens.len() {
                    for j in 0..i {
                        if compose(&self.gens[i], &self.gens[j]) != compose(&self.gens[j], &self.gens[i]) {
                            return fail(format!("generators {i} and {j} do not commute"));
                        }
                    }
                }
                for (g, &unit) in l.unit_mask().iter().enumerate() {
                    if unit && invert(&self.gens[g]).is_none() {
                        return fail(format!("unit generator {g} is not a bijection"));
                    }
                }
                let pad = |v: &[u32]| -> Vec<i64> {
                    let mut c: Vec<i64> = v.iter().map(|&x| x as i64).collect();
                    c.resize(self.gens.len(), 0);
                    c
                };
                for (lhs, rhs) in l.kernel_relations() {
                    if self.map_of_coefficients(&pad(lhs))? != self.map_of_coefficients(&pad(rhs))? {
                        return fail("a relation among generators is violated".into());
                    }
                }
                if matches!(self.owner, Monoid::LatticeWithZero(_)) {
                    let z = self.gens.last().expect("zero generator");
                    if compose(z, z) != *z || self.gens.iter().any(|g| compose(z, g) != *z) {
                        return fail("0 is not absorbing".into());
                    }
                }
            }
        }
        Ok(())
    }

    fn same_owner(&self, other: &ASet) -> Result<()> {
        if self.owner != other.owner {
            return Err(Error::OwnerMismatch(format!(
                "{} and {} act on different sets",
                self.owner.name(),
                other.owner.name()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &ASet) -> Result<ASet> {
        self.same_owner(other)?;
        let n = self.len();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}.0")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}.1")));
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + n)).collect())
            .collect();
        Ok(ASet {
            owner: self.owner.clone(),
            labels,
            gens,
        })
    }

    /// `M ⊗_A N = M×N / ((am, n) ∼ (m, an))`, with the quotient map.
    pub fn tensor_with_map(&self, other: &ASet) -> Result<(ASet, Vec<Vec<usize>>)> {
        self.same_owner(other)?;
        let (p, q) = (self.len(), other.len());
        let pair = |m: usize, n: usize| m * q + n;
        let mut uf = UnionFind((0..p * q).collect());
        for (gm, gn) in self.gens.iter().zip(&other.gens) {
            for (m, &am) in gm.iter().enumerate() {
                for (n, &an) in gn.iter().enumerate() {
                    uf.union(pair(am, n), pair(m, an));
                }
            }
        }
        let mut class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut quotient = vec![vec![0; q]; p];
        for (m, row) in quotient.iter_mut().enumerate() {
            for (n, slot) in row.iter_mut().enumerate() {
                let r = uf.find(pair(m, n));
                let next = class.len();
                let c = *class.entry(r).or_insert_with(|| {
                    labels.push(format!("{}*{}", self.labels[m], other.labels[n]));
                    next
                });
                *slot = c;
            }
        }
        let mut gens = vec![vec![0; labels.len()]; self.gens.len()];
        for (g, gm) in self.gens.iter().enumerate() {
            for m in 0..p {
                for n in 0..q {
                    gens[g][quotient[m][n]] = quotient[gm[m]][n];
                }
            }
        }
        Ok((
            ASet {
                owner: self.owner.clone(),
                labels,
                gens,
            },
            quotient,
        ))
    }

    pub fn tensor(&self, other: &ASet) -> Result<ASet> {
        Ok(self.tensor_with_map(other)?.0)
    }

    /// Whether `f: M → N` commutes with every generator.
    pub fn is_equivariant(&self, other: &ASet, f: &[usize]) -> bool {
        f.len() == self.len()
            && self
                .gens
                .iter()
                .zip(&other.gens)
                .all(|(gm, gn)| (0..self.len()).all(|m| f[gm[m]] == gn[f[m]]))
    }

    /// All `A`-equivariant maps `M → N`.
    pub fn homs(&self, other: &ASet) -> Result<Vec<Vec<usize>>> {
        self.same_owner(other)?;
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; self.len()];
        self.extend_hom(other, 0, &mut f, &mut out);
        Ok(out)
    }

    fn extend_hom(&self, other: &ASet, i: usize, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == self.len() {
            out.push(f.clone());
            return;
        }
        for y in 0..other.len() {
            f[i] = y;
            let ok = self.gens.iter().zip(&other.gens).all(|(gm, gn)| {
                (0..=i).all(|m| {
                    let (a, b) = (gm[m], f[m]);
                    a > i || f[a] == gn[b]
                })
            });
            if ok {
                self.extend_hom(other, i + 1, f, out);
            }
        }
        f[i] = usize::MAX;
    }

    /// An equivariant bijection `M → N`, if one exists.
    pub fn isomorphism(&self, other: &ASet) -> Result<Option<Vec<usize>>> {
        if self.len() != other.len() {
            return Ok(None);
        }
        self.same_owner(other)?;
        Ok(super::iso::isomorphism(&self.labelled(), &other.labelled()))
    }

    fn labelled(&self) -> super::iso::Structure {
        super::iso::Structure {
            blocks: vec![0; self.len()],
            ops: self.gens.iter().map(|g| g.iter().map(|&y| Some(y)).collect()).collect(),
        }
    }

    /// Restriction of scalars along `φ: B → A`.
    pub fn restrict(&self, phi: &MonoidHom) -> Result<ASet> {
        if phi.target() != &self.owner {
            return Err(Error::OwnerMismatch("restriction needs a map into the owner".into()));
        }
        let gens = phi.images().iter().map(|e| self.action_of(e)).collect::<Result<_>>()?;
        ASet::new(phi.source(), self.labels.clone(), gens)
    }

    /// `B ⊗_A N` along `φ: A → B`, with the quotient map from `B × N`
    /// indexed by the elements of the finite monoid `B`.
    pub fn extend_scalars(&self, phi: &MonoidHom) -> Result<(ASet, Vec<Vec<usize>>)> {
        let reg = ASet::regular(phi.target())?;
        let (t, quot) = reg.restrict(phi)?.tensor_with_map(self)?;
        let mut gens = Vec::new();
        for c in reg.generator_actions() {
            let mut map = vec![0; t.len()];
            for (b, row) in quot.iter().enumerate() {
                for (n, &k) in row.iter().enumerate() {
                    map[k] = quot[c[b]][n];
                }
            }
            gens.push(map);
        }
        Ok((ASet::new(phi.target(), t.labels, gens)?, quot))
    }

    /// Rank of the free abelian group `ℤ[M]`.
    pub fn zext_rank(&self) -> usize {
        self.len()
    }
}

/// Every action of `owner` on `{0, …, n−1}` (not up to isomorphism).
pub fn all_actions(owner: &Monoid, n: usize) -> Vec<ASet> {
    let k = owner.generators().len();
    let maps: Vec<Map> = (0..n.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect()
        })
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let gens = idx.iter().map(|&i| maps[i].clone()).collect();
        if let Ok(m) = ASet::new(owner, labels.clone(), gens) {
            out.push(m);
        }
        let mut j = 0;
        while j < k {
            idx[j] += 1;
            if idx[j] < maps.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == k {
            return out;
        }
    }
}

/// `(ℤ[M]⊗ℤ[N]) / ⟨g·m⊗n − m⊗g·n⟩` computed by Smith normal form.
pub fn zext_tensor_invariants(m: &ASet, n: &ASet) -> Result<AbelianInvariants> {
    m.same_owner(n)?;
    let (p, q) = (m.len(), n.len());
    let mut relations = Vec::new();
    for (gm, gn) in m.gens.iter().zip(&n.gens) {
        for x in 0..p {
            for y in 0..q {
                let mut r = vec![0i64; p * q];
                r[gm[x] * q + y] += 1;
                r[x * q + gn[y]] -= 1;
                if r.iter().any(|&c| c != 0) {
                    relations.push(r);
                }
            }
        }
    }
    Ok(quotient_invariants(p * q, &relations))
}

/// `S⁻¹M` as a module over `S⁻¹A`, with the map `m ↦ m/1`.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    pub module: ASet,
    pub to_local: Vec<usize>,
    /// A fraction `(m, s)` representing each class.
    pub fractions: Vec<(usize, Element)>,
    /// `(T_s, class)`: the class of `(m, s)` is `class[m][k]` where `k`
    /// indexes the transformation `T_s` of `s`.
    transforms: Vec<Map>,
    class: Vec<Vec<usize>>,
}

impl LocalizedModule {
    /// Class of the fraction `m/s`.
    pub fn fraction(&self, m: usize, s: &Element, original: &ASet) -> Result<usize> {
        let t = original.action_of(s)?;
        let k = self
            .transforms
            .iter()
            .position(|x| *x == t)
            .ok_or_else(|| Error::InvalidArgument("denominator outside S".into()))?;
        Ok(self.class[m][k])
    }
}

pub fn localize_module(m: &ASet, loc: &Localization) -> Result<LocalizedModule> {
    if loc.source() != m.owner() {
        return Err(Error::OwnerMismatch("localization of a different monoid".into()));
    }
    let a = m.owner();
    let n = m.len();
    // the finite monoid of transformations T_s, s ∈ S, with a witness s each
    let mut transforms: Vec<Map> = vec![identity(n)];
    let mut witnesses: Vec<Element> = vec![a.one()];
    let s_maps: Vec<(Element, Map)> = loc
        .inverted
        .iter()
        .map(|s| Ok((s.clone(), m.action_of(s)?)))
        .collect::<Result<_>>()?;
    let mut i = 0;
    while i < transforms.len() {
        for (s, t) in &s_maps {
            let next = compose(t, &transforms[i]);
            if !transforms.contains(&next) {
                witnesses.push(a.mul_unchecked(s, &witnesses[i]));
                transforms.push(next);
            }
        }
        i += 1;
    }
    let k = transforms.len();
    let equiv = |(m1, t1): (usize, usize), (m2, t2): (usize, usize)| {
        let (l, r) = (transforms[t2][m1], transforms[t1][m2]);
        transforms.iter().any(|u| u[l] == u[r])
    };
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class = vec![vec![0; k]; n];
    for t in 0..k {
        for (x, row) in class.iter_mut().enumerate() {
            row[t] = match reps.iter().position(|&r| equiv(r, (x, t))) {
                Some(c) => c,
                None => {
                    reps.push((x, t));
                    reps.len() - 1
                }
            };
        }
    }
    let labels: Vec<String> = (0..reps.len())
        .map(|c| match (0..n).find(|&x| class[x][0] == c) {
            Some(x) => m.labels[x].clone(),
            None => {
                let (x, t) = reps[c];
                format!("{}/{}", m.labels[x], a.label(&witnesses[t]))
            }
        })
        .collect();
    // each generator of S⁻¹A is a fraction a/s
    let lm = &loc.monoid;
    let gen_fractions: Vec<(Element, Element)> = lm
        .generators()
        .iter()
        .map(|g| generator_fraction(loc, g))
        .collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for (num, den) in &gen_fractions {
        let tn = m.action_of(num)?;
        let td = m.action_of(den)?;
        let kd = transforms
            .iter()
            .position(|x| *x == td)
            .ok_or_else(|| Error::InvalidArgument("denominator outside S".into()))?;
        let map: Map = reps
            .iter()
            .map(|&(x, t)| {
                let prod = compose(&transforms[kd], &transforms[t]);
                let kt = transforms
                    .iter()
                    .position(|y| *y == prod)
                    .expect("closed under composition");
                class[tn[x]][kt]
            })
            .collect();
        gens.push(map);
    }
    let module = ASet::new(lm, labels, gens)?;
    let to_local = (0..n).map(|x| class[x][0]).collect();
    let fractions = reps.iter().map(|&(x, t)| (x, witnesses[t].clone())).collect();
    Ok(LocalizedModule {
        module,
        to_local,
        fractions,
        transforms,
        class,
    })
}

/// A generator of `S⁻¹A` written as `a/s` with `a ∈ A`, `s ∈ S`.
fn generator_fraction(loc: &Localization, g: &Element) -> Result<(Element, Element)> {
    let a = loc.source();
    match g {
        Element::Index(_) => loc.fraction(g).ok_or_else(|| Error::InvalidElement {
            element: g.to_string(),
            monoid: loc.monoid.name(),
        }),
        Element::Vector(v) => {
            if a.contains(g) {
                Ok((g.clone(), a.one()))
            } else {
                let neg = Element::Vector(v.iter().map(|x| -x).collect());
                Ok((a.one(), neg))
            }
        }
        Element::Zero => Ok((Element::Zero, a.one())),
    }
}
