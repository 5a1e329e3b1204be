use std::collections::BTreeSet;

use f1::modsheaf::{picard, LineBundle};
use f1::monoid::{hom_count, Element, Monoid, MonoidHom, Presentation};
use f1::scheme::{gl_n, monomial_matrix_group, points_over, points_over_brute_force, MScheme};
use f1::spec::{local_morphisms, spec, StructureSheaf};
use f1::zeta::{zeta_report, Verdict};

use crate::oracle::{self, Table};
use crate::{ensure, Outcome};

fn presented(name: &str, generators: &[&str], relations: &[(&[u32], &[u32])]) -> Monoid {
    let p = Presentation {
        generators: generators.iter().map(|s| s.to_string()).collect(),
        relations: relations.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect(),
    };
    Monoid::presented(name, p).unwrap()
}

/// Finite monoids of order at most 8.
pub fn finite_zoo() -> Vec<Monoid> {
    let c = |n| Monoid::cyclic(n).unwrap();
    let d = |k| Monoid::dk(k).unwrap();
    let mut zoo = vec![Monoid::trivial(), c(2), c(3), c(4), c(6)];
    zoo.extend((2..=8).map(d));
    zoo.extend([
        c(2).product(&c(2)).unwrap(),
        d(2).product(&d(2)).unwrap(),
        c(2).product(&d(3)).unwrap(),
        d(2).product(&d(4)).unwrap(),
        presented("N3", &["x"], &[(&[3], &[2])]),
        presented("N4", &["x"], &[(&[4], &[2])]),
        presented("I3", &["x"], &[(&[3], &[1])]),
        presented("E2", &["x", "y"], &[(&[2, 0], &[1, 0]), (&[0, 2], &[0, 1])]),
        presented(
            "E2'",
            &["x", "y"],
            &[(&[2, 0], &[1, 0]), (&[0, 2], &[0, 1]), (&[1, 1], &[0, 1])],
        ),
    ]);
    zoo
}

pub fn lattice_zoo() -> Vec<Monoid> {
    vec![Monoid::nat(), Monoid::nat_pow(2), Monoid::inf_cyclic()]
}

pub fn table_hom(h: &MonoidHom) -> Vec<usize> {
    let n = h.source().size().expect("finite source");
    (0..n)
        .map(|i| match h.apply(&Element::Index(i)).unwrap() {
            Element::Index(j) => j,
            other => panic!("unexpected image {other}"),
        })
        .collect()
}

pub fn spectra() -> Outcome {
    let cases = [
        (Monoid::trivial(), 1),
        (Monoid::dk(2)?, 2),
        (Monoid::dk(3)?, 2),
        (Monoid::dk(5)?, 2),
        (Monoid::nat(), 2),
        (Monoid::nat_pow(2), 4),
        (Monoid::inf_cyclic(), 1),
    ];
    for (m, n) in &cases {
        let s = spec(m)?;
        ensure!(s.len() == *n, "#Spec {} = {}, expected {n}", m.name(), s.len());
    }
    let zoo = finite_zoo();
    for m in &zoo {
        let s = spec(m)?;
        let t = Table::of(m);
        let expected: BTreeSet<Vec<bool>> = oracle::primes(&t).into_iter().collect();
        let got: BTreeSet<Vec<bool>> = s
            .points()
            .iter()
            .map(|p| (0..t.len()).map(|i| p.contains(&Element::Index(i))).collect())
            .collect();
        ensure!(
            got == expected && s.len() == expected.len(),
            "primes of {} differ from brute force",
            m.name()
        );
    }
    Ok(format!(
        "{} exact counts, {} finite spectra match subset enumeration",
        cases.len(),
        zoo.len()
    ))
}

fn finite_stalks(m: &Monoid) -> Outcome {
    let o = StructureSheaf::of(m)?;
    let space = o.space();
    let t = Table::of(m);
    let n = t.len();
    for (p, prime) in space.points().iter().enumerate() {
        let s: Vec<bool> = (0..n).map(|i| !prime.contains(&Element::Index(i))).collect();
        let fr = oracle::localize(&t, &s);
        let loc = o.localization(p);
        ensure!(
            loc.monoid.size() == Some(fr.count),
            "|A_p| for {} at {}",
            m.name(),
            space.label(p)
        );
        let mut image_of_class = vec![None; fr.count];
        for (&(a, x), &c) in &fr.class {
            let num = loc.map.apply(&Element::Index(a))?;
            let den = loc
                .monoid
                .inverse(&loc.map.apply(&Element::Index(x))?)
                .ok_or("denominator not inverted")?;
            let v = loc.monoid.mul(&num, &den)?;
            match &image_of_class[c] {
                None => image_of_class[c] = Some(v),
                Some(w) => ensure!(*w == v, "fraction map not well defined on {}", m.name()),
            }
        }
        let distinct: BTreeSet<_> = image_of_class.iter().flatten().collect();
        ensure!(
            distinct.len() == fr.count,
            "fraction map not injective on {} at {}",
            m.name(),
            space.label(p)
        );
    }
    let c = space.closed_point();
    let gamma = o.sections(&space.all())?;
    ensure!(gamma.monoid.size() == Some(n), "|Γ| != |A| for {}", m.name());
    let to_closed = table_hom(&gamma.restrictions[&c]);
    let from_a = table_hom(&o.localization(c).map);
    ensure!(
        to_closed.iter().collect::<BTreeSet<_>>().len() == n && from_a.iter().collect::<BTreeSet<_>>().len() == n,
        "Γ(Spec {}) → A_c ← A is not a pair of bijections",
        m.name()
    );
    Ok(String::new())
}

fn lattice_stalks(m: &Monoid) -> Outcome {
    let o = StructureSheaf::of(m)?;
    let space = o.space();
    let gens = m.generators();
    let dim = match &gens[0] {
        Element::Vector(v) => v.len(),
        _ => return Err("lattice generator expected".into()),
    };
    let boxed: Vec<Vec<i64>> = (0..5i64.pow(dim as u32))
        .map(|mut c| {
            (0..dim)
                .map(|_| {
                    let d = c % 5 - 2;
                    c /= 5;
                    d
                })
                .collect()
        })
        .collect();
    for (p, prime) in space.points().iter().enumerate() {
        // coordinate i stays non-negative at p iff some generator in p moves it
        let constrained: Vec<bool> = (0..dim)
            .map(|i| {
                gens.iter()
                    .any(|g| prime.contains(g) && matches!(g, Element::Vector(v) if v[i] != 0))
            })
            .collect();
        let stalk = o.stalk(p);
        for v in &boxed {
            let expect = (0..dim).all(|i| !constrained[i] || v[i] >= 0);
            ensure!(
                stalk.contains(&Element::Vector(v.clone())) == expect,
                "{v:?} in stalk of {} at {}",
                m.name(),
                space.label(p)
            );
        }
    }
    let gamma = o.sections(&space.all())?.monoid;
    for v in &boxed {
        let e = Element::Vector(v.clone());
        ensure!(
            gamma.contains(&e) == m.contains(&e),
            "Γ(Spec {}) differs at {v:?}",
            m.name()
        );
    }
    Ok(String::new())
}

pub fn structure_sheaf() -> Outcome {
    let zoo = finite_zoo();
    for m in &zoo {
        finite_stalks(m)?;
    }
    for m in lattice_zoo() {
        lattice_stalks(&m)?;
    }
    Ok(format!(
        "{} finite and 3 lattice monoids, every stalk matched against fractions",
        zoo.len()
    ))
}

pub fn duality() -> Outcome {
    let ms = [
        Monoid::trivial(),
        Monoid::cyclic(2)?,
        Monoid::cyclic(4)?,
        Monoid::dk(2)?,
        Monoid::dk(3)?,
        Monoid::dk(5)?,
    ];
    let mut pairs = 0;
    for a in &ms {
        let oa = StructureSheaf::of(a)?;
        for b in &ms {
            let ob = StructureSheaf::of(b)?;
            let expected: BTreeSet<Vec<usize>> = oracle::homs(&Table::of(a), &Table::of(b)).into_iter().collect();
            let locals = local_morphisms(a, b)?;
            ensure!(hom_count(a, b)? == expected.len(), "#Hom({}, {})", a.name(), b.name());
            ensure!(
                locals.len() == expected.len(),
                "#Hom({}, {}) = {} but {} local morphisms",
                a.name(),
                b.name(),
                expected.len(),
                locals.len()
            );
            let globals: BTreeSet<Vec<usize>> = locals
                .iter()
                .map(|l| l.global_hom(&oa, &ob).map(|h| table_hom(&h)))
                .collect::<Result<_, _>>()?;
            ensure!(
                globals == expected,
                "global sections of local morphisms {} -> {}",
                b.name(),
                a.name()
            );
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, bijection through global sections"))
}

pub fn projective_line() -> Outcome {
    let p1 = MScheme::p1();
    ensure!(p1.len() == 3, "ℙ¹ has {} points", p1.len());
    ensure!(p1.pi0().len() == 1 && p1.f1_points() == 1, "ℙ¹ not connected");
    for k in 2..=10 {
        let dk = Monoid::dk(k)?;
        let t = Table::of(&dk);
        // two affine lines, identified where the coordinate is a unit
        let expected = 2 * t.len() - (0..t.len()).filter(|&x| t.is_unit(x)).count();
        let fast = points_over(&p1, &dk)?.total;
        let slow = points_over_brute_force(&p1, &dk)?.total;
        ensure!(
            fast == expected && slow == expected && expected == k + 1,
            "#ℙ¹(D_{k}) = {fast}, {slow}"
        );
    }
    let report = zeta_report(&p1, 2..=10)?;
    ensure!(
        matches!(&report.verdict, Verdict::Polynomial(n) if n.0 == [1, 1]),
        "N = {:?}",
        report.verdict
    );
    Ok("3 points, connected, #ℙ¹(D_k) = k+1 for k = 2..10, N(x) = x+1".into())
}

pub fn picard_groups() -> Outcome {
    let mut n = 0;
    for m in finite_zoo().into_iter().chain(lattice_zoo()) {
        let x = MScheme::affine(m.name(), &m)?;
        let pic = picard(&x)?;
        ensure!(pic.group.is_trivial(), "Pic(Spec {}) = {}", m.name(), pic.group);
        n += 1;
    }
    let p1 = MScheme::p1();
    let pic = picard(&p1)?.group;
    ensure!(pic.rank == 1 && pic.torsion.is_empty(), "Pic(ℙ¹) = {pic}");
    for k in -3..=3 {
        let o = LineBundle::twist(&p1, k)?;
        ensure!(o.is_trivial()? == (k == 0), "O({k}) triviality");
        ensure!(
            o.tensor(&LineBundle::twist(&p1, -k)?)?.is_trivial()?,
            "O({k}) ⊗ O({}) not trivial",
            -k
        );
    }
    Ok(format!(
        "{n} affine schemes trivial, Pic(ℙ¹) = Z with O(k) ≇ O for k ≠ 0"
    ))
}

pub fn general_linear() -> Outcome {
    let gl1 = gl_n(1)?.scheme;
    let gl2 = gl_n(2)?.scheme;
    for k in 2..=8 {
        let dk = Monoid::dk(k)?;
        let t = Table::of(&dk);
        let units = (0..t.len()).filter(|&x| t.is_unit(x)).count();
        let zero = (0..t.len())
            .find(|&z| (0..t.len()).all(|a| t.mul[z][a] == z))
            .ok_or("no zero")?;
        // 2×2 matrices with one non-zero entry per row and column, all units
        let mut monomial = 0;
        for e in 0..t.len().pow(4) {
            let m: Vec<usize> = (0..4).map(|i| e / t.len().pow(i) % t.len()).collect();
            let nz: Vec<bool> = m.iter().map(|&x| x != zero).collect();
            let shape = (nz[0] && nz[3] && !nz[1] && !nz[2]) || (nz[1] && nz[2] && !nz[0] && !nz[3]);
            if shape && m.iter().all(|&x| x == zero || t.is_unit(x)) {
                monomial += 1;
            }
        }
        ensure!(points_over(&gl1, &dk)?.total == k - 1 && units == k - 1, "#GL_1(D_{k})");
        ensure!(monomial == 2 * (k - 1) * (k - 1), "monomial oracle for k = {k}");
        let group = monomial_matrix_group(2, &dk)?.len();
        let pts = points_over(&gl2, &dk)?.total;
        ensure!(
            group == monomial && pts == monomial,
            "#GL_2(D_{k}): group {group}, scheme {pts}, expected {monomial}"
        );
    }
    let f1 = Monoid::trivial();
    for n in 1..=4 {
        let g = gl_n(n)?;
        let order = monomial_matrix_group(n, &f1)?.len();
        let pts = points_over(&g.scheme, &f1)?.total;
        ensure!(
            order == oracle::factorial(n) && pts == order,
            "#GL_{n}(F_1) = {order}, {pts}"
        );
    }
    Ok("GL_1 and GL_2 over D_2..D_8 agree three ways, GL_n(F_1) = n! for n <= 4".into())
}
