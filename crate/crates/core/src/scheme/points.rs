//! Points with values in finite monoids, global sections and maps to affines.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::intmat::{hilbert_basis, IntMatrix};
use crate::monoid::{hom_count, hom_enumerate, Element, FiniteMonoid, LatticeMonoid, Monoid, MonoidHom};
use crate::spec::{local_morphisms, preimage_point, spec};

use super::MScheme;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub total: usize,
    /// Morphisms sending the closed point of `Spec B` to each point of `X`.
    pub by_point: Vec<usize>,
}

fn require_finite(b: &Monoid) -> Result<()> {
    if b.is_finite() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "points with values in the infinite monoid {b}"
        )))
    }
}

/// `#X(B) = #Hom(Spec B, X)`, stratified by the image of the closed point.
pub fn points_over(x: &MScheme, b: &Monoid) -> Result<PointCount> {
    require_finite(b)?;
    let sb = spec(b)?;
    let c = sb.closed_point();
    let mut homs: BTreeMap<usize, Vec<MonoidHom>> = BTreeMap::new();
    let mut by_point = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let (chart, pt) = x.representatives(p)[0];
        if let std::collections::btree_map::Entry::Vacant(e) = homs.entry(chart) {
            e.insert(hom_enumerate(x.charts()[chart].monoid(), b)?);
        }
        let space = x.charts()[chart].space();
        by_point.push(
            homs[&chart]
                .iter()
                .filter(|phi| preimage_point(phi, space, &sb, c) == pt)
                .count(),
        );
    }
    Ok(PointCount {
        total: by_point.iter().sum(),
        by_point,
    })
}

/// Enumerates local morphisms `Spec B → Spec A_i` for every chart and
/// identifies those that agree as morphisms into `X`.
pub fn points_over_brute_force(x: &MScheme, b: &Monoid) -> Result<PointCount> {
    require_finite(b)?;
    let c = spec(b)?.closed_point();
    let mut seen: BTreeSet<Vec<(usize, Vec<Element>)>> = BTreeSet::new();
    let mut by_point = vec![0; x.len()];
    for (i, chart) in x.charts().iter().enumerate() {
        for m in local_morphisms(chart.monoid(), b)? {
            let key = m
                .point_map
                .iter()
                .zip(&m.stalk_maps)
                .map(|(&pt, h)| Ok((x.point_of(i, pt), x.stalk_iso(i, pt).then(h)?.images().to_vec())))
                .collect::<Result<Vec<_>>>()?;
            let image = key[c].0;
            if seen.insert(key) {
                by_point[image] += 1;
            }
        }
    }
    Ok(PointCount {
        total: seen.len(),
        by_point,
    })
}

/// `Γ(X, O_X)` with its restrictions to the charts.
#[derive(Clone, Debug)]
pub struct GlobalSections {
    pub monoid: Monoid,
    pub restrictions: Vec<MonoidHom>,
}

/// `Γ(X, O_X)` as the monoid of families `(s_i ∈ A_i)` agreeing on overlaps.
pub fn global_sections(x: &MScheme) -> Result<GlobalSections> {
    if x.is_affine() {
        let a = x.charts()[0].monoid().clone();
        return Ok(GlobalSections {
            restrictions: vec![MonoidHom::identity(&a)],
            monoid: a,
        });
    }
    let monoids: Vec<&Monoid> = x.charts().iter().map(|c| c.monoid()).collect();
    if monoids.iter().all(|m| m.is_finite()) {
        finite_sections(x)
    } else if monoids.iter().all(|m| matches!(m, Monoid::Lattice(_))) {
        lattice_sections(x)
    } else {
        Err(Error::Unsupported(
            "global sections need all charts finite or all charts lattice monoids".into(),
        ))
    }
}

fn finite_sections(x: &MScheme) -> Result<GlobalSections> {
    let charts: Vec<&FiniteMonoid> = x
        .charts()
        .iter()
        .map(|c| c.monoid().as_finite().expect("finite"))
        .collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for f in &charts {
        tuples = tuples
            .into_iter()
            .flat_map(|t| (0..f.size()).map(move |e| [t.clone(), vec![e]].concat()))
            .collect();
    }
    let mut keep = Vec::new();
    for t in tuples {
        let mut ok = true;
        for (o, tr) in x.overlaps().iter().zip(x.transitions()) {
            let si = tr.loc_i.map.apply(&Element::Index(t[o.i]))?;
            let sj = tr.theta.apply(&tr.loc_j.map.apply(&Element::Index(t[o.j]))?)?;
            ok &= si == sj;
        }
        if ok {
            keep.push(t);
        }
    }
    let index: BTreeMap<&Vec<usize>, usize> = keep.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let table = keep
        .iter()
        .map(|a| {
            keep.iter()
                .map(|b| {
                    let prod: Vec<usize> = charts.iter().enumerate().map(|(k, f)| f.mul(a[k], b[k])).collect();
                    index[&prod]
                })
                .collect()
        })
        .collect();
    let labels = keep
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(&charts).map(|(&e, f)| f.labels()[e].as_str()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let monoid: Monoid = FiniteMonoid::from_table("Gamma", labels, table, &[])?.into();
    let gens = monoid.as_finite().expect("finite").generators().to_vec();
    let restrictions = x
        .charts()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            MonoidHom::new(
                monoid.clone(),
                c.monoid().clone(),
                gens.iter().map(|&g| Element::Index(keep[g][k])).collect(),
            )
        })
        .collect::<Result<_>>()?;
    Ok(GlobalSections { monoid, restrictions })
}

/// Families `(c_i)` with `c_i = G_i nᵢ`, `n ≥ 0`, subject to `Θ(c_j) = c_i` on
/// every overlap; the solution monoid is generated by the image of the
/// Hilbert basis of the linear constraints on `n`.
fn lattice_sections(x: &MScheme) -> Result<GlobalSections> {
    let lats: Vec<&LatticeMonoid> = x
        .charts()
        .iter()
        .map(|c| c.monoid().as_lattice().expect("lattice"))
        .collect();
    let var_offset: Vec<usize> = lats
        .iter()
        .scan(0, |acc, l| Some(std::mem::replace(acc, *acc + l.generators().len())))
        .collect();
    let dim_offset: Vec<usize> = lats
        .iter()
        .scan(0, |acc, l| Some(std::mem::replace(acc, *acc + l.dim())))
        .collect();
    let nvars: usize = lats.iter().map(|l| l.generators().len()).sum();
    let ambient: usize = lats.iter().map(|l| l.dim()).sum();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (o, tr) in x.overlaps().iter().zip(x.transitions()) {
        let d = lats[o.i].dim();
        let mut block = vec![vec![0i64; nvars]; d];
        for (k, g) in lats[o.j].generators().iter().enumerate() {
            let img = tr.theta.apply(&tr.loc_j.map.apply(&Element::Vector(g.clone()))?)?;
            let Element::Vector(v) = img else {
                unreachable!("lattice localization")
            };
            for r in 0..d {
                block[r][var_offset[o.j] + k] += v[r];
            }
        }
        for (k, g) in lats[o.i].generators().iter().enumerate() {
            for r in 0..d {
                block[r][var_offset[o.i] + k] -= g[r];
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        rows.push(vec![0; nvars]);
    }
    let mut gens: Vec<Vec<i64>> = Vec::new();
    if nvars > 0 {
        for h in hilbert_basis(&IntMatrix::from_rows(&rows, nvars)) {
            let mut v = vec![0i64; ambient];
            for (c, l) in lats.iter().enumerate() {
                for (k, g) in l.generators().iter().enumerate() {
                    let n = h[var_offset[c] + k] as i64;
                    for (r, gr) in g.iter().enumerate() {
                        v[dim_offset[c] + r] += n * gr;
                    }
                }
            }
            if v.iter().any(|&t| t != 0) && !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    gens.sort();
    let monoid: Monoid = LatticeMonoid::new("Gamma", ambient, gens.clone()).into();
    let restrictions = x
        .charts()
        .iter()
        .enumerate()
        .map(|(c, chart)| {
            let images = gens
                .iter()
                .map(|v| Element::Vector(v[dim_offset[c]..dim_offset[c] + lats[c].dim()].to_vec()))
                .collect();
            MonoidHom::new(monoid.clone(), chart.monoid().clone(), images)
        })
        .collect::<Result<_>>()?;
    Ok(GlobalSections { monoid, restrictions })
}

/// Both sides of `Hom(X, Spec A) ≅ Hom(A, Γ(X, O_X))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomToAffine {
    pub via_sections: usize,
    /// Families of maps `A → A_i` that agree on every overlap.
    pub via_charts: usize,
}

impl HomToAffine {
    pub fn holds(&self) -> bool {
        self.via_sections == self.via_charts
    }
}

pub fn hom_to_affine(x: &MScheme, a: &Monoid) -> Result<HomToAffine> {
    let gamma = global_sections(x)?;
    let via_sections = hom_count(a, &gamma.monoid)?;
    let per_chart: Vec<Vec<MonoidHom>> = x
        .charts()
        .iter()
        .map(|c| hom_enumerate(a, c.monoid()))
        .collect::<Result<_>>()?;
    let mut via_charts = 0;
    let mut idx = vec![0usize; per_chart.len()];
    if per_chart.iter().all(|v| !v.is_empty()) {
        loop {
            let mut ok = true;
            for (o, tr) in x.overlaps().iter().zip(x.transitions()) {
                let left = per_chart[o.i][idx[o.i]].then(&tr.loc_i.map)?;
                let right = per_chart[o.j][idx[o.j]].then(&tr.loc_j.map)?.then(&tr.theta)?;
                ok &= left == right;
            }
            via_charts += usize::from(ok);
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < per_chart[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(HomToAffine {
        via_sections,
        via_charts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_counts() {
        let p1 = MScheme::p1();
        for k in [2usize, 3, 5] {
            let d = Monoid::dk(k).unwrap();
            let strat = points_over(&p1, &d).unwrap();
            assert_eq!(strat.total, k + 1);
            assert_eq!(points_over_brute_force(&p1, &d).unwrap(), strat);
        }
        assert_eq!(points_over(&p1, &Monoid::trivial()).unwrap().total, 1);
    }

    #[test]
    fn affine_line_counts() {
        let a1 = MScheme::a1();
        for k in 2..6 {
            assert_eq!(points_over(&a1, &Monoid::dk(k).unwrap()).unwrap().total, k);
        }
    }

    #[test]
    fn sections_of_projective_line_are_trivial() {
        let g = global_sections(&MScheme::p1()).unwrap();
        assert_eq!(g.monoid.elements().map(|e| e.len()), Some(1));
        let h = hom_to_affine(&MScheme::p1(), &Monoid::inf_cyclic()).unwrap();
        assert_eq!(
            h,
            HomToAffine {
                via_sections: 1,
                via_charts: 1
            }
        );
    }

    #[test]
    fn disjoint_points_map_to_f1_once() {
        let pt = MScheme::affine("pt", &Monoid::trivial()).unwrap();
        let two = MScheme::disjoint("two", &[pt.clone(), pt]).unwrap();
        let h = hom_to_affine(&two, &Monoid::trivial()).unwrap();
        assert_eq!(h.via_sections, 1);
        assert!(h.holds());
        let g = global_sections(&two).unwrap();
        assert_eq!(g.monoid.size(), Some(1));
    }

    #[test]
    fn disjoint_finite_charts() {
        let d2 = MScheme::affine("D2", &Monoid::dk(2).unwrap()).unwrap();
        let x = MScheme::disjoint("X", &[d2.clone(), d2]).unwrap();
        let g = global_sections(&x).unwrap();
        assert_eq!(g.monoid.size(), Some(4));
        for a in [Monoid::dk(2).unwrap(), Monoid::cyclic(2).unwrap()] {
            assert!(hom_to_affine(&x, &a).unwrap().holds());
        }
        let b = Monoid::dk(3).unwrap();
        assert_eq!(points_over(&x, &b).unwrap(), points_over_brute_force(&x, &b).unwrap());
    }
}
