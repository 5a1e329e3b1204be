use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use f1::modsheaf::{all_actions, zext_tensor_invariants, ASet, SheafModule, SpaceMorphism};
use f1::monoid::{hom_enumerate, pushout, Element, Monoid, MonoidHom};
use f1::scheme::{gl_n, MScheme};
use f1::spec::{spec, spec_morphism, StructureSheaf};
use f1::zeta::{
    limit_check, report_from_table, weil_series, zeta_report, CountTable, IntPoly, Verdict, ZetaFactors, DEFAULT_RANGE,
};
use f1::zext::{adjunction as adjunction_check, zext_compat_fibre, FiniteRing};

use crate::geometry::table_hom;
use crate::oracle::{self, Table};
use crate::{ensure, Outcome};

pub fn adjunction() -> Outcome {
    let ms = [
        Monoid::trivial(),
        Monoid::cyclic(2)?,
        Monoid::cyclic(3)?,
        Monoid::cyclic(4)?,
        Monoid::dk(2)?,
        Monoid::dk(3)?,
    ];
    let mut cases = 0;
    for a in &ms {
        for n in 2..=8u64 {
            let c = adjunction_check(a, &FiniteRing::zmod(n)?)?;
            let expected = oracle::homs(&Table::of(a), &Table::zmod(n as usize)).len();
            ensure!(
                c.ring_side == expected && c.monoid_side == expected,
                "{} over Z/{n}: ring {}, monoid {}, oracle {expected}",
                a.name(),
                c.ring_side,
                c.monoid_side
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} pairs (A, Z/n) with equal counts"))
}

/// Image tables of the homomorphisms `x → z` that agree after `via_x`.
fn agreeing_pairs(a: &Monoid, b: &Monoid, fa: &[usize], fb: &[usize], z: &Table) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let ha = oracle::homs(&Table::of(a), z);
    let hb = oracle::homs(&Table::of(b), z);
    let mut out = BTreeSet::new();
    for alpha in &ha {
        for beta in &hb {
            if fa.iter().zip(fb).all(|(&x, &y)| alpha[x] == beta[y]) {
                out.insert((alpha.clone(), beta.clone()));
            }
        }
    }
    out
}

pub fn fibre_products() -> Outcome {
    let ls = [Monoid::trivial(), Monoid::cyclic(2)?, Monoid::dk(2)?];
    let side = [
        Monoid::cyclic(2)?,
        Monoid::cyclic(4)?,
        Monoid::dk(2)?,
        Monoid::dk(3)?,
        Monoid::cyclic(2)?.product(&Monoid::cyclic(2)?)?,
    ];
    let tests = [Monoid::cyclic(2)?, Monoid::cyclic(4)?, Monoid::dk(2)?, Monoid::dk(3)?];
    let (mut triples, mut checks, mut rings) = (0, 0, 0);
    for l in &ls {
        for (i, a) in side.iter().enumerate() {
            for b in &side[i..] {
                for pa in hom_enumerate(l, a)? {
                    for pb in hom_enumerate(l, b)? {
                        let p = pushout(&pa, &pb)?;
                        if p.monoid.size().is_none_or(|s| s > 64) {
                            continue;
                        }
                        triples += 1;
                        let (fa, fb) = (table_hom(&pa), table_hom(&pb));
                        for z in &tests {
                            let expected = agreeing_pairs(a, b, &fa, &fb, &Table::of(z));
                            let homs = hom_enumerate(&p.monoid, z)?;
                            let got: BTreeSet<(Vec<usize>, Vec<usize>)> = homs
                                .iter()
                                .map(|h| Ok((table_hom(&p.from_a.then(h)?), table_hom(&p.from_b.then(h)?))))
                                .collect::<Result<_, f1::error::Error>>()?;
                            ensure!(
                                got.len() == homs.len() && got == expected,
                                "Hom({}⊗{}, {}) is not the set of agreeing pairs",
                                a.name(),
                                b.name(),
                                z.name()
                            );
                            checks += 1;
                        }
                        for n in [2u64, 3, 4, 6] {
                            let (lhs, rhs) = zext_compat_fibre(&pa, &pb, &FiniteRing::zmod(n)?)?;
                            let expected = agreeing_pairs(a, b, &fa, &fb, &Table::zmod(n as usize)).len();
                            ensure!(
                                lhs == expected && rhs == expected,
                                "Z/{n} compatibility: {lhs}, {rhs}, oracle {expected}"
                            );
                            rings += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{triples} pushouts, {checks} universal-property checks, {rings} ring-compatibility checks"
    ))
}

fn rational(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

type ZetaCase = (MScheme, fn(i64) -> i64, Vec<i64>, f64);

pub fn zeta_functions() -> Outcome {
    let f1 = MScheme::affine("F1", &Monoid::trivial())?;
    let gl1 = gl_n(1)?.scheme;
    // (scheme, #X(D_k) by hand, N coefficients, ζ at s = 2.5 by hand)
    let cases: [ZetaCase; 4] = [
        (f1, |_| 1, vec![1], 2.5),
        (MScheme::a1(), |k| k, vec![0, 1], 1.5),
        (MScheme::p1(), |k| k + 1, vec![1, 1], 2.5 * 1.5),
        (gl1, |k| k - 1, vec![-1, 1], 1.5 / 2.5),
    ];
    for (x, count, n, at) in &cases {
        let r = zeta_report(x, 2..=10)?;
        for &(k, c) in &r.table.counts {
            ensure!(c == count(k), "#{}(D_{k}) = {c}", x.name());
        }
        ensure!(
            r.verdict == Verdict::Polynomial(IntPoly(n.clone())),
            "N for {}: {:?}",
            x.name(),
            r.verdict
        );
        let z = r.zeta.clone().ok_or("no zeta factors")?;
        ensure!(z == ZetaFactors(n.clone()), "zeta of {}", x.name());
        ensure!(
            (z.eval(2.5) - at).abs() < 1e-12,
            "zeta_{}(2.5) = {}",
            x.name(),
            z.eval(2.5)
        );
        ensure!(r.note.is_some() == (*n == [-1, 1]), "erratum note on {}", x.name());
        for p in [2u64, 3, 5] {
            let w = weil_series(&IntPoly(n.clone()), p, 10);
            let expected: Vec<BigRational> = oracle::weil_closed(n, p as i128, 10)
                .into_iter()
                .map(rational)
                .collect();
            ensure!(w.agrees(), "Weil series of {} at p = {p} disagree", x.name());
            ensure!(
                w.closed_form.len() > 10
                    && w.closed_form[..=10] == expected[..]
                    && w.exponential[..=10] == expected[..],
                "Weil coefficients of {} at p = {p}",
                x.name()
            );
        }
        let s_values = [1.5, 2.5, 3.5];
        let lc = limit_check(&IntPoly(n.clone()), &s_values, &[1e-8]);
        ensure!(
            lc.max_deviation < 1e-5,
            "limit deviation {} for {}",
            lc.max_deviation,
            x.name()
        );
        for s in s_values {
            let dev = (oracle::limit(n, s, 1e-8) - z.eval(s)).abs();
            ensure!(dev < 1e-5, "naive limit deviation {dev} for {} at s = {s}", x.name());
        }
    }
    Ok("zeta = s, s-1, s(s-1), s^-1(s-1) with erratum note; Weil series exact to T^10; limit deviation < 1e-5".into())
}

fn equivariant_count(phi: &MonoidHom, n: &ASet, m: &ASet) -> f1::error::Result<usize> {
    let gens = phi.source().generators();
    let images: Vec<Element> = gens.iter().map(|g| phi.apply(g)).collect::<f1::error::Result<_>>()?;
    let mut count = 0;
    for code in 0..m.len().pow(n.len() as u32) {
        let f: Vec<usize> = (0..n.len()).map(|i| code / m.len().pow(i as u32) % m.len()).collect();
        let mut ok = true;
        for (g, img) in gens.iter().zip(&images) {
            for x in 0..n.len() {
                ok &= f[n.act(g, x)?] == m.act(img, f[x])?;
            }
        }
        count += ok as usize;
    }
    Ok(count)
}

fn modules(a: &Monoid, max: usize) -> Vec<ASet> {
    (1..=max).flat_map(|n| all_actions(a, n)).collect()
}

pub fn module_layer() -> Outcome {
    let rings = [
        (Monoid::cyclic(2)?, 4),
        (Monoid::cyclic(3)?, 4),
        (Monoid::dk(2)?, 4),
        (Monoid::dk(3)?, 3),
        (Monoid::dk(2)?.product(&Monoid::dk(3)?)?, 2),
    ];
    let (mut gamma, mut tensors) = (0, 0);
    for (a, max) in &rings {
        let c = spec(a)?.closed_point();
        let to_closed = StructureSheaf::of(a)?.localization(c).map.clone();
        let ms = modules(a, *max);
        for m in &ms {
            let t = SheafModule::tilde(m)?;
            let sections = t.global_sections()?;
            let at_closed: BTreeSet<usize> = sections.iter().map(|s| s[c]).collect();
            ensure!(
                sections.len() == m.len() && at_closed.len() == m.len(),
                "Γ(M~) for |M| = {} over {}",
                m.len(),
                a.name()
            );
            ensure!(
                t.stalk(c).restrict(&to_closed)?.isomorphism(m)?.is_some(),
                "closed stalk of M~ over {}",
                a.name()
            );
            gamma += 1;
        }
        let small: Vec<&ASet> = ms.iter().filter(|m| m.len() <= 2).collect();
        for (i, m) in ms.iter().enumerate().step_by(3) {
            for n in small.iter().skip(i % 2).step_by(2) {
                let mn = m.tensor(n)?;
                let size = oracle::tensor_size(m.generator_actions(), n.generator_actions(), m.len(), n.len());
                ensure!(mn.len() == size, "|M⊗N| = {} against {size}", mn.len());
                let lhs = SheafModule::tilde(&mn)?;
                let rhs = SheafModule::tilde(m)?.tensor(&SheafModule::tilde(n)?)?;
                ensure!(lhs.is_isomorphic(&rhs)?, "(M⊗N)~ ≇ M~⊗N~ over {}", a.name());
                let inv = zext_tensor_invariants(m, n)?;
                ensure!(
                    inv.rank == size && inv.torsion.is_empty(),
                    "Z[M]⊗Z[N] = {inv} against rank {size}"
                );
                ensure!(
                    m.direct_sum(n)?.zext_rank() == m.zext_rank() + n.zext_rank(),
                    "rank of a direct sum"
                );
                tensors += 1;
            }
        }
    }
    let maps = [
        (Monoid::cyclic(2)?, Monoid::cyclic(4)?),
        (Monoid::dk(2)?, Monoid::dk(3)?),
        (Monoid::cyclic(2)?, Monoid::dk(3)?),
        (Monoid::dk(3)?, Monoid::dk(2)?),
    ];
    let mut adj = 0;
    for (a, b) in &maps {
        for phi in hom_enumerate(a, b)? {
            let f = SpaceMorphism::from_spec(&spec_morphism(&phi)?)?;
            let ns = modules(a, 3);
            let ms = modules(b, 3);
            for n in ns.iter().step_by(2) {
                let pulled = f.pullback(&SheafModule::tilde(n)?)?;
                for m in ms.iter().step_by(3) {
                    let mt = SheafModule::tilde(m)?;
                    let lhs = pulled.homs(&mt)?.len();
                    let rhs = SheafModule::tilde(n)?.homs(&f.pushforward(&mt)?)?.len();
                    let expected = equivariant_count(&phi, n, m)?;
                    ensure!(
                        lhs == expected && rhs == expected,
                        "f^*/f_* counts {lhs}, {rhs}, oracle {expected}"
                    );
                    adj += 1;
                }
            }
        }
    }
    Ok(format!(
        "{gamma} modules with Γ(M~) = M, {tensors} tensor pairs, {adj} adjunction counts"
    ))
}

pub fn polynomiality() -> Outcome {
    let p1 = MScheme::p1();
    let builtins: Vec<(MScheme, Vec<i64>, std::ops::RangeInclusive<usize>)> = vec![
        (MScheme::affine("F1", &Monoid::trivial())?, vec![1], DEFAULT_RANGE),
        (MScheme::a1(), vec![0, 1], DEFAULT_RANGE),
        (p1.clone(), vec![1, 1], DEFAULT_RANGE),
        (gl_n(1)?.scheme, vec![-1, 1], DEFAULT_RANGE),
        (gl_n(2)?.scheme, vec![2, -4, 2], DEFAULT_RANGE),
        (gl_n(3)?.scheme, vec![-6, 18, -18, 6], 2..=7),
        (
            MScheme::affine("N2", &Monoid::nat_pow(2))?,
            vec![0, 0, 1],
            DEFAULT_RANGE,
        ),
        (
            MScheme::affine("T2", &Monoid::inf_cyclic_pow(2))?,
            vec![1, -2, 1],
            DEFAULT_RANGE,
        ),
        (
            MScheme::disjoint("P1+A1", &[p1, MScheme::a1()])?,
            vec![1, 2],
            DEFAULT_RANGE,
        ),
    ];
    for (x, n, ks) in &builtins {
        let r = zeta_report(x, ks.clone())?;
        let poly = IntPoly(n.clone());
        for &(k, c) in &r.table.counts {
            ensure!(
                c == poly.eval(k),
                "#{}(D_{k}) = {c}, formula gives {}",
                x.name(),
                poly.eval(k)
            );
        }
        ensure!(r.verdict == Verdict::Polynomial(poly), "{}: {:?}", x.name(), r.verdict);
    }
    // bends away from x + 1 at k = 7
    let counts: Vec<(i64, i64)> = (2..=12).map(|k| (k, if k <= 6 { k + 1 } else { 1 << k })).collect();
    let first_bad = counts.iter().find(|&&(k, c)| c != k + 1).map(|p| p.0);
    let r = report_from_table(CountTable {
        scheme: "synthetic".into(),
        counts,
    })?;
    ensure!(
        matches!(&r.verdict, Verdict::NonPolynomial { first_failure, .. } if *first_failure == first_bad),
        "synthetic table: {:?}, expected failure at {first_bad:?}",
        r.verdict
    );
    ensure!(r.zeta.is_none(), "zeta reported for a non-polynomial table");
    // Spec C_2 counts square roots of 1 in D_k, which alternate with k
    let c2 = Monoid::cyclic(2)?;
    let r = zeta_report(&MScheme::affine("C2", &c2)?, DEFAULT_RANGE)?;
    for &(k, c) in &r.table.counts {
        let expected = oracle::homs(&Table::of(&c2), &Table::of(&Monoid::dk(k as usize)?)).len();
        ensure!(c as usize == expected, "#Spec C2(D_{k}) = {c}");
    }
    ensure!(
        matches!(r.verdict, Verdict::NonPolynomial { .. }),
        "Spec C2 judged {:?}",
        r.verdict
    );
    Ok(format!(
        "{} built-in schemes polynomial, synthetic break found at k = 7, Spec C2 non-polynomial",
        builtins.len()
    ))
}
