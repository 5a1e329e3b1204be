//! `X ×_S Y` for `S = Spec L` and `Y = Spec B` affine, chartwise as `Spec(A_i ⊗_L B)`.

use crate::error::{Error, Result};
use crate::monoid::{localize, pushout, MonoidHom, Pushout};

use super::{glue, MScheme, Overlap};

#[derive(Clone, Debug)]
pub struct FibreProduct {
    pub scheme: MScheme,
    /// `A_i → A_i ⊗_L B` for each chart of `X`.
    pub from_x: Vec<MonoidHom>,
    /// `B → A_i ⊗_L B` for each chart of `X`.
    pub from_y: Vec<MonoidHom>,
}

/// `f_x[i]: L → A_i` describes `X → Spec L` chartwise; `f_y: L → B`.
pub fn fibre_product(x: &MScheme, f_x: &[MonoidHom], f_y: &MonoidHom) -> Result<FibreProduct> {
    if f_x.len() != x.charts().len() {
        return Err(Error::InvalidArgument(format!(
            "{} chart maps for {} charts",
            f_x.len(),
            x.charts().len()
        )));
    }
    for (h, c) in f_x.iter().zip(x.charts()) {
        if h.target() != c.monoid() || h.source() != f_y.source() {
            return Err(Error::OwnerMismatch(format!(
                "chart map into {} does not start at {}",
                c.name,
                f_y.source()
            )));
        }
    }
    for (o, tr) in x.overlaps().iter().zip(x.transitions()) {
        let left = f_x[o.i].then(&tr.loc_i.map)?;
        let right = f_x[o.j].then(&tr.loc_j.map)?.then(&tr.theta)?;
        if left != right {
            return Err(Error::InvalidArgument(format!(
                "chart maps of {} and {} disagree on their overlap",
                x.charts()[o.i].name,
                x.charts()[o.j].name
            )));
        }
    }
    let parts: Vec<Pushout> = f_x.iter().map(|h| pushout(h, f_y)).collect::<Result<_>>()?;
    let mut overlaps = Vec::new();
    for (o, tr) in x.overlaps().iter().zip(x.transitions()) {
        let (pi, pj) = (&parts[o.i], &parts[o.j]);
        let f_i = pi.from_a.apply(&o.f_i)?;
        let f_j = pj.from_a.apply(&o.f_j)?;
        let loc = localize(&pi.monoid, std::slice::from_ref(&f_i))?;
        let into = tr.loc_i.induced(&pi.from_a.then(&loc.map)?)?;
        let alpha = tr.loc_j.map.then(&tr.theta)?.then(&into)?;
        let beta = pi.from_b.then(&loc.map)?;
        let theta = pj.induced(&alpha, &beta)?;
        overlaps.push(Overlap {
            i: o.i,
            j: o.j,
            f_i,
            f_j,
            theta: theta.images().to_vec(),
        });
    }
    let charts = x
        .charts()
        .iter()
        .zip(&parts)
        .map(|(c, p)| (format!("{}x{}", c.name, f_y.target().name()), p.monoid.clone()))
        .collect();
    let scheme = glue(format!("{}x{}", x.name(), f_y.target().name()), charts, overlaps)?;
    Ok(FibreProduct {
        scheme,
        from_x: parts.iter().map(|p| p.from_a.clone()).collect(),
        from_y: parts.iter().map(|p| p.from_b.clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{hom_enumerate, Monoid};
    use crate::scheme::points_over;

    fn pairs_over_base(a: &MonoidHom, b: &MonoidHom, z: &Monoid) -> usize {
        let ha = hom_enumerate(a.target(), z).unwrap();
        let hb = hom_enumerate(b.target(), z).unwrap();
        ha.iter()
            .flat_map(|f| hb.iter().map(move |g| (f, g)))
            .filter(|(f, g)| a.then(f).unwrap() == b.then(g).unwrap())
            .count()
    }

    #[test]
    fn unit_law() {
        let d3 = Monoid::dk(3).unwrap();
        let f1 = Monoid::trivial();
        let x = MScheme::affine("X", &d3).unwrap();
        let fp = fibre_product(&x, &[MonoidHom::trivial(&f1, &d3)], &MonoidHom::identity(&f1)).unwrap();
        assert_eq!(fp.scheme.charts()[0].monoid().size(), Some(3));
    }

    #[test]
    fn d2_times_d2() {
        let f1 = Monoid::trivial();
        let d2 = Monoid::dk(2).unwrap();
        let leg = MonoidHom::trivial(&f1, &d2);
        let x = MScheme::affine("X", &d2).unwrap();
        let fp = fibre_product(&x, std::slice::from_ref(&leg), &leg).unwrap();
        assert_eq!(fp.scheme.charts()[0].monoid().size(), Some(4));
        let z = Monoid::dk(3).unwrap();
        let lhs = points_over(&fp.scheme, &z).unwrap().total;
        assert_eq!(lhs, pairs_over_base(&leg, &leg, &z));
    }

    #[test]
    fn projective_line_over_f1_times_point() {
        let f1 = Monoid::trivial();
        let p1 = MScheme::p1();
        let legs: Vec<MonoidHom> = p1
            .charts()
            .iter()
            .map(|c| MonoidHom::trivial(&f1, c.monoid()))
            .collect();
        let fp = fibre_product(&p1, &legs, &MonoidHom::identity(&f1)).unwrap();
        assert_eq!(fp.scheme.len(), 3);
        assert_eq!(points_over(&fp.scheme, &Monoid::dk(4).unwrap()).unwrap().total, 5);
    }

    #[test]
    fn projective_line_times_affine_line() {
        let f1 = Monoid::trivial();
        let p1 = MScheme::p1();
        let legs: Vec<MonoidHom> = p1
            .charts()
            .iter()
            .map(|c| MonoidHom::trivial(&f1, c.monoid()))
            .collect();
        let n = Monoid::nat();
        let fp = fibre_product(&p1, &legs, &MonoidHom::trivial(&f1, &n)).unwrap();
        assert_eq!(fp.scheme.len(), 6);
        for k in 2..5 {
            let count = points_over(&fp.scheme, &Monoid::dk(k).unwrap()).unwrap().total;
            assert_eq!(count, (k + 1) * k);
        }
    }
}
