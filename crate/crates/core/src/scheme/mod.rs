//! Monoid schemes glued from affine charts along principal opens.

mod fibre;
mod gln;
mod points;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde_json::json;

use crate::error::{Error, Result};
use crate::monoid::{localize, Element, Localization, Monoid, MonoidHom};
use crate::spec::{preimage_point, spec, PointSet, SpecSpace, StructureSheaf};

pub use fibre::{fibre_product, FibreProduct};
pub use gln::{
    form_preserving_count, gl_n, monomial_matrix_group, orthogonal_form, symplectic_form, GlPoint, GlScheme,
    MonomialMatrix,
};
pub use points::{global_sections, hom_to_affine, points_over, points_over_brute_force, HomToAffine, PointCount};

#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub sheaf: StructureSheaf,
}

impl Chart {
    pub fn monoid(&self) -> &Monoid {
        self.sheaf.space().owner()
    }

    pub fn space(&self) -> &SpecSpace {
        self.sheaf.space()
    }
}

/// Identifies `D(f_i) ⊂ Spec A_i` with `D(f_j) ⊂ Spec A_j` through the map
/// `θ: A_j → (A_i)_{f_i}` given by generator images. Its extension to
/// `(A_j)_{f_j}` must be an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    pub f_i: Element,
    pub f_j: Element,
    pub theta: Vec<Element>,
}

/// Transition between two charts on the overlap, pointwise.
#[derive(Clone, Debug)]
struct Edge {
    from: usize,
    to: usize,
    point_map: BTreeMap<usize, usize>,
    /// `O_{from,x} → O_{to,point_map[x]}`.
    stalks: BTreeMap<usize, MonoidHom>,
}

/// `(A_i)_{f_i}`, `(A_j)_{f_j}` and the extension `Θ: (A_j)_{f_j} → (A_i)_{f_i}`.
#[derive(Clone, Debug)]
pub(crate) struct Transition {
    pub(crate) loc_i: Localization,
    pub(crate) loc_j: Localization,
    pub(crate) theta: MonoidHom,
}

#[derive(Clone, Debug)]
pub struct MScheme {
    name: String,
    charts: Vec<Chart>,
    overlaps: Vec<Overlap>,
    transitions: Vec<Transition>,
    /// Chart representatives `(chart, point)` of each glued point, sorted.
    points: Vec<Vec<(usize, usize)>>,
    glued: BTreeMap<(usize, usize), usize>,
    leq: Vec<Vec<bool>>,
    /// `O_{rep} → O_{chart,x}` for every chart point, where `rep` is the
    /// first representative of the glued point.
    from_rep: BTreeMap<(usize, usize), MonoidHom>,
}

/// `(A_i)_{f_i}` with its spectrum and the identification of its points with
/// the points of `D(f_i)`.
struct OverlapSide {
    loc: Localization,
    space: SpecSpace,
    to_chart: Vec<usize>,
}

impl OverlapSide {
    fn new(chart: &Chart, f: &Element) -> Result<Self> {
        let loc = localize(chart.monoid(), std::slice::from_ref(f))?;
        let space = spec(&loc.monoid)?;
        let to_chart = (0..space.len())
            .map(|q| preimage_point(&loc.map, chart.space(), &space, q))
            .collect();
        Ok(OverlapSide { loc, space, to_chart })
    }
}

fn edge(
    charts: &[Chart],
    a: usize,
    b: usize,
    sa: &OverlapSide,
    sb: &OverlapSide,
    phi: &MonoidHom,
    phi_inv: &MonoidHom,
) -> Result<Edge> {
    let (ca, cb) = (&charts[a], &charts[b]);
    let mut point_map = BTreeMap::new();
    let mut stalks = BTreeMap::new();
    for (qa, &xa) in sa.to_chart.iter().enumerate() {
        let qb = preimage_point(phi_inv, &sb.space, &sa.space, qa);
        let xb = sb.to_chart[qb];
        let into_stalk = sb.loc.induced(&cb.sheaf.localization(xb).map)?;
        let h = sa.loc.map.then(phi)?.then(&into_stalk)?;
        point_map.insert(xa, xb);
        stalks.insert(xa, ca.sheaf.localization(xa).induced(&h)?);
    }
    Ok(Edge {
        from: a,
        to: b,
        point_map,
        stalks,
    })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        self.0[rx.max(ry)] = rx.min(ry);
    }
}

/// Glues affine charts `(name, A_i)` along the given overlaps.
pub fn glue(name: impl Into<String>, charts: Vec<(String, Monoid)>, overlaps: Vec<Overlap>) -> Result<MScheme> {
    let charts: Vec<Chart> = charts
        .into_iter()
        .map(|(name, a)| {
            Ok(Chart {
                name,
                sheaf: StructureSheaf::of(&a)?,
            })
        })
        .collect::<Result<_>>()?;
    if charts.is_empty() {
        return Err(Error::InvalidArgument("a scheme needs at least one chart".into()));
    }
    let mut edges = Vec::new();
    let mut transitions = Vec::new();
    for o in &overlaps {
        if o.i == o.j || o.i >= charts.len() || o.j >= charts.len() {
            return Err(Error::InvalidArgument(format!(
                "overlap ({},{}) does not name two charts",
                o.i, o.j
            )));
        }
        let si = OverlapSide::new(&charts[o.i], &o.f_i)?;
        let sj = OverlapSide::new(&charts[o.j], &o.f_j)?;
        let theta = MonoidHom::new(charts[o.j].monoid().clone(), si.loc.monoid.clone(), o.theta.clone())?;
        let big = sj.loc.induced(&theta)?;
        let inv = big
            .inverse()
            .map_err(|e| Error::Gluing(format!("overlap ({},{}) is not an isomorphism: {e}", o.i, o.j)))?;
        edges.push(edge(&charts, o.j, o.i, &sj, &si, &big, &inv)?);
        edges.push(edge(&charts, o.i, o.j, &si, &sj, &inv, &big)?);
        transitions.push(Transition {
            loc_i: si.loc,
            loc_j: sj.loc,
            theta: big,
        });
    }

    let offsets: Vec<usize> = charts
        .iter()
        .scan(0, |acc, c| {
            let here = *acc;
            *acc += c.space().len();
            Some(here)
        })
        .collect();
    let total = offsets.last().unwrap() + charts.last().unwrap().space().len();
    let mut uf = UnionFind((0..total).collect());
    for e in &edges {
        for (&x, &y) in &e.point_map {
            uf.union(offsets[e.from] + x, offsets[e.to] + y);
        }
    }
    let mut classes: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, chart) in charts.iter().enumerate() {
        for x in 0..chart.space().len() {
            classes.entry(uf.find(offsets[c] + x)).or_default().push((c, x));
        }
    }
    let points: Vec<Vec<(usize, usize)>> = classes.into_values().collect();
    for reps in &points {
        let distinct: BTreeSet<usize> = reps.iter().map(|r| r.0).collect();
        if distinct.len() != reps.len() {
            return Err(Error::Gluing(format!(
                "two points of one chart are identified: {reps:?}"
            )));
        }
    }
    let glued: BTreeMap<(usize, usize), usize> = points
        .iter()
        .enumerate()
        .flat_map(|(k, reps)| reps.iter().map(move |&r| (r, k)))
        .collect();

    let from_rep = transport(&charts, &edges, &points)?;

    let n = points.len();
    let mut leq = vec![vec![false; n]; n];
    for (c, chart) in charts.iter().enumerate() {
        let s = chart.space();
        for x in 0..s.len() {
            for y in 0..s.len() {
                if s.leq(x, y) {
                    leq[glued[&(c, x)]][glued[&(c, y)]] = true;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    Ok(MScheme {
        name: name.into(),
        charts,
        overlaps,
        transitions,
        points,
        glued,
        leq,
        from_rep,
    })
}

/// Breadth-first transport of stalks from each representative, followed by
/// the cocycle check on every transition.
fn transport(
    charts: &[Chart],
    edges: &[Edge],
    points: &[Vec<(usize, usize)>],
) -> Result<BTreeMap<(usize, usize), MonoidHom>> {
    let mut from_rep = BTreeMap::new();
    for reps in points {
        let (c, x) = reps[0];
        from_rep.insert((c, x), MonoidHom::identity(charts[c].sheaf.stalk(x)));
        let mut queue = VecDeque::from([(c, x)]);
        while let Some((a, xa)) = queue.pop_front() {
            for e in edges.iter().filter(|e| e.from == a) {
                let Some(&xb) = e.point_map.get(&xa) else { continue };
                if from_rep.contains_key(&(e.to, xb)) {
                    continue;
                }
                let h = from_rep[&(a, xa)].then(&e.stalks[&xa])?;
                from_rep.insert((e.to, xb), h);
                queue.push_back((e.to, xb));
            }
        }
    }
    for e in edges {
        for (xa, h) in &e.stalks {
            let via = from_rep[&(e.from, *xa)].then(h)?;
            if via != from_rep[&(e.to, e.point_map[xa])] {
                return Err(Error::Cocycle(format!(
                    "transition {} -> {} at {} disagrees with the other overlaps",
                    charts[e.from].name,
                    charts[e.to].name,
                    charts[e.from].space().label(*xa)
                )));
            }
        }
    }
    Ok(from_rep)
}

impl MScheme {
    pub fn affine(name: impl Into<String>, a: &Monoid) -> Result<MScheme> {
        let name = name.into();
        glue(name.clone(), vec![(name, a.clone())], vec![])
    }

    /// `ℙ¹` from `Spec C_{∞,+}` and `Spec C_{∞,−}` glued along `Spec C_∞`.
    pub fn p1() -> MScheme {
        let x = Element::Vector(vec![1]);
        let x_inv = Element::Vector(vec![-1]);
        let overlap = Overlap {
            i: 0,
            j: 1,
            f_i: x,
            f_j: x_inv.clone(),
            theta: vec![x_inv],
        };
        glue(
            "P1",
            vec![
                ("X".into(), Monoid::inf_cyclic_plus()),
                ("Y".into(), Monoid::inf_cyclic_minus()),
            ],
            vec![overlap],
        )
        .expect("the projective line glues")
    }

    pub fn a1() -> MScheme {
        MScheme::affine("A1", &Monoid::inf_cyclic_plus()).expect("affine line")
    }

    pub fn disjoint(name: impl Into<String>, parts: &[MScheme]) -> Result<MScheme> {
        let mut charts = Vec::new();
        let mut overlaps = Vec::new();
        for part in parts {
            let shift = charts.len();
            for c in &part.charts {
                charts.push((format!("{}.{}", part.name, c.name), c.monoid().clone()));
            }
            overlaps.extend(part.overlaps.iter().map(|o| Overlap {
                i: o.i + shift,
                j: o.j + shift,
                ..o.clone()
            }));
        }
        glue(name, charts, overlaps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn overlaps(&self) -> &[Overlap] {
        &self.overlaps
    }

    pub(crate) fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn is_affine(&self) -> bool {
        self.charts.len() == 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn representatives(&self, p: usize) -> &[(usize, usize)] {
        &self.points[p]
    }

    /// The glued point of chart point `(chart, x)`.
    pub fn point_of(&self, chart: usize, x: usize) -> usize {
        self.glued[&(chart, x)]
    }

    /// `O_{rep(p)} → O_{chart,x}` identifying stalks of one glued point.
    pub fn stalk_iso(&self, chart: usize, x: usize) -> &MonoidHom {
        &self.from_rep[&(chart, x)]
    }

    pub fn stalk(&self, p: usize) -> &Monoid {
        let (c, x) = self.points[p][0];
        self.charts[c].sheaf.stalk(x)
    }

    /// `p ≤ q`: `p` is a generization of `q`.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    /// `O_p → O_q` for a generization `q` of `p`, computed in a chart
    /// containing both points.
    pub fn generization(&self, p: usize, q: usize) -> Result<MonoidHom> {
        if !self.leq[q][p] {
            return Err(Error::InvalidArgument(format!(
                "{} is not a generization of {}",
                self.label(q),
                self.label(p)
            )));
        }
        for &(c, xp) in &self.points[p] {
            let Some(&(_, xq)) = self.points[q].iter().find(|r| r.0 == c) else {
                continue;
            };
            let sheaf = &self.charts[c].sheaf;
            if !sheaf.space().leq(xq, xp) {
                continue;
            }
            let down = self.from_rep[&(c, xp)].then(&sheaf.generization(xp, xq)?)?;
            return down.then(&self.from_rep[&(c, xq)].inverse()?);
        }
        Err(Error::Gluing(format!(
            "no chart contains both {} and {}",
            self.label(p),
            self.label(q)
        )))
    }

    pub fn is_open(&self, u: &PointSet) -> bool {
        u.iter()
            .all(|&q| (0..self.len()).all(|p| !self.leq[p][q] || u.contains(&p)))
    }

    pub fn label(&self, p: usize) -> String {
        let (c, x) = self.points[p][0];
        let chart = &self.charts[c];
        if x == chart.space().generic_point() && self.charts.len() > 1 {
            let others: BTreeSet<usize> = self.points[p].iter().map(|r| r.0).collect();
            if others.len() == self.charts.len() {
                return "eta".into();
            }
        }
        format!("{}:{}", chart.name, chart.space().label(x))
    }

    /// Connected components of the specialization order.
    pub fn pi0(&self) -> Vec<PointSet> {
        let n = self.len();
        let mut uf = UnionFind((0..n).collect());
        for p in 0..n {
            for q in 0..n {
                if self.leq[p][q] {
                    uf.union(p, q);
                }
            }
        }
        let mut comps: BTreeMap<usize, PointSet> = BTreeMap::new();
        for p in 0..n {
            comps.entry(uf.find(p)).or_default().insert(p);
        }
        comps.into_values().collect()
    }

    /// `#X(F₁) = #π₀(X)`.
    pub fn f1_points(&self) -> usize {
        self.pi0().len()
    }

    /// The unique minimal point of each component.
    pub fn generic_points(&self) -> Vec<usize> {
        self.pi0()
            .iter()
            .map(|comp| {
                *comp
                    .iter()
                    .find(|&&p| comp.iter().all(|&q| self.leq[p][q]))
                    .expect("a connected scheme has a generic point")
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n", self.name);
        for p in 0..self.len() {
            s.push_str(&format!("  p{p} [label=\"{}\"];\n", self.label(p)));
        }
        for p in 0..self.len() {
            for q in 0..self.len() {
                let covers = p != q
                    && self.leq[p][q]
                    && !(0..self.len()).any(|r| r != p && r != q && self.leq[p][r] && self.leq[r][q]);
                if covers {
                    s.push_str(&format!("  p{q} -> p{p};\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "charts": self.charts.iter().map(|c| json!({"name": c.name, "monoid": c.monoid().to_json()})).collect::<Vec<_>>(),
            "overlaps": self.overlaps.iter().map(|o| json!({
                "charts": [o.i, o.j],
                "f_i": self.charts[o.i].monoid().label(&o.f_i),
                "f_j": self.charts[o.j].monoid().label(&o.f_j),
                "theta": o.theta.iter().map(|e| format!("{e}")).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "points": (0..self.len()).map(|p| self.label(p)).collect::<Vec<_>>(),
            "order": (0..self.len()).flat_map(|p| (0..self.len()).filter(move |&q| p != q).map(move |q| (p, q)))
                .filter(|&(p, q)| self.leq[p][q]).map(|(p, q)| [p, q]).collect::<Vec<_>>(),
            "components": self.pi0().len(),
        })
    }
}
