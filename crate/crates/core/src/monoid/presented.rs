//! Finitely presented commutative monoids.
//!
//! Elements of the free commutative monoid on `g` generators are exponent
//! vectors in ℕ^g. Relations are completed to a confluent rewriting system
//! with respect to the degree-lexicographic order (commutative Knuth–Bendix;
//! completion terminates by Dickson's lemma). The quotient is materialized as
//! a table when it has finitely many normal forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::finite::FiniteMonoid;

pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

fn deglex(a: &Word, b: &Word) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(small: &Word, big: &Word) -> bool {
    small.iter().zip(big).all(|(s, b)| s <= b)
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Word,
    rhs: Word,
}

/// Confluent rewriting system for a commutative presentation.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn complete(generators: usize, relations: &[(Word, Word)]) -> Self {
        let mut sys = RewriteSystem { rules: Vec::new() };
        let mut pending: VecDeque<(Word, Word)> = relations.iter().cloned().collect();
        loop {
            while let Some((a, b)) = pending.pop_front() {
                debug_assert_eq!(a.len(), generators);
                let (a, b) = (sys.normal_form(&a), sys.normal_form(&b));
                let (lhs, rhs) = match deglex(&a, &b) {
                    Ordering::Equal => continue,
                    Ordering::Greater => (a, b),
                    Ordering::Less => (b, a),
                };
                // rules whose left side becomes reducible are re-queued
                let (keep, redo): (Vec<Rule>, Vec<Rule>) = sys.rules.drain(..).partition(|r| !divides(&lhs, &r.lhs));
                sys.rules = keep;
                for r in redo {
                    pending.push_back((r.lhs, r.rhs));
                }
                sys.rules.push(Rule { lhs, rhs });
            }
            let mut fresh = Vec::new();
            for i in 0..sys.rules.len() {
                for j in i + 1..sys.rules.len() {
                    let (r, s) = (&sys.rules[i], &sys.rules[j]);
                    let lcm: Word = r.lhs.iter().zip(&s.lhs).map(|(x, y)| *x.max(y)).collect();
                    let via_r: Word = lcm
                        .iter()
                        .zip(&r.lhs)
                        .zip(&r.rhs)
                        .map(|((l, a), b)| l - a + b)
                        .collect();
                    let via_s: Word = lcm
                        .iter()
                        .zip(&s.lhs)
                        .zip(&s.rhs)
                        .map(|((l, a), b)| l - a + b)
                        .collect();
                    let (p, q) = (sys.normal_form(&via_r), sys.normal_form(&via_s));
                    if p != q {
                        fresh.push((p, q));
                    }
                }
            }
            if fresh.is_empty() {
                // inter-reduce right sides
                for k in 0..sys.rules.len() {
                    let rhs = sys.rules[k].rhs.clone();
                    let nf = sys.normal_form(&rhs);
                    sys.rules[k].rhs = nf;
                }
                return sys;
            }
            pending.extend(fresh);
        }
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let mut w = w.clone();
        'outer: loop {
            for r in &self.rules {
                if divides(&r.lhs, &w) {
                    for ((x, l), r) in w.iter_mut().zip(&r.lhs).zip(&r.rhs) {
                        *x = *x - l + r;
                    }
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// The set of normal forms is finite iff every generator has a pure power
    /// as the left side of some rule.
    pub fn has_finite_quotient(&self, generators: usize) -> bool {
        (0..generators).all(|i| {
            self.rules
                .iter()
                .any(|r| r.lhs[i] > 0 && r.lhs.iter().enumerate().all(|(k, &e)| k == i || e == 0))
        })
    }
}

pub fn word_label(names: &[String], w: &Word) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Materializes a presented monoid. Errors with `Unsupported` when the
/// quotient is infinite.
pub fn presented(name: impl Into<String>, presentation: Presentation) -> Result<FiniteMonoid> {
    let g = presentation.generators.len();
    for (a, b) in &presentation.relations {
        if a.len() != g || b.len() != g {
            return Err(Error::InvalidMonoid("relation word has wrong length".into()));
        }
    }
    let sys = RewriteSystem::complete(g, &presentation.relations);
    if !sys.has_finite_quotient(g) {
        return Err(Error::Unsupported(
            "presented monoid has infinitely many elements; only finite quotients are materialized".into(),
        ));
    }
    let zero: Word = vec![0; g];
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut forms: Vec<Word> = Vec::new();
    let mut queue = VecDeque::from([zero.clone()]);
    let mut seen = BTreeSet::from([zero]);
    while let Some(w) = queue.pop_front() {
        index.insert(w.clone(), forms.len());
        forms.push(w.clone());
        for i in 0..g {
            let mut v = w.clone();
            v[i] += 1;
            let v = sys.normal_form(&v);
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    let n = forms.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let s: Word = forms[a].iter().zip(&forms[b]).map(|(x, y)| x + y).collect();
            table[a][b] = index[&sys.normal_form(&s)];
        }
    }
    let labels = forms.iter().map(|w| word_label(&presentation.generators, w)).collect();
    let gens: Vec<usize> = (0..g)
        .map(|i| {
            let mut e = vec![0; g];
            e[i] = 1;
            index[&sys.normal_form(&e)]
        })
        .collect();
    let mut m = FiniteMonoid::from_table(name, labels, table, &gens)?;
    m.presentation = Some(presentation);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], rels: &[(Word, Word)]) -> Presentation {
        Presentation {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            relations: rels.to_vec(),
        }
    }

    #[test]
    fn idempotent_generator_is_d2() {
        let m = presented("B", pres(&["x"], &[(vec![2], vec![1])])).unwrap();
        assert_eq!(m.size(), 2);
        let x = m.index_of("x").unwrap();
        assert_eq!(m.mul(x, x), x);
    }

    #[test]
    fn cyclic_group_from_relation() {
        let m = presented("C4", pres(&["g"], &[(vec![4], vec![0])])).unwrap();
        assert_eq!(m.size(), 4);
        assert_eq!(m.units().len(), 4);
    }

    #[test]
    fn two_generators_with_absorbing_relation() {
        // x^2 = 1, y^2 = y, xy = y  → {1, x, y}
        let m = presented(
            "M",
            pres(
                &["x", "y"],
                &[
                    (vec![2, 0], vec![0, 0]),
                    (vec![0, 2], vec![0, 1]),
                    (vec![1, 1], vec![0, 1]),
                ],
            ),
        )
        .unwrap();
        assert_eq!(m.size(), 3);
    }

    #[test]
    fn infinite_quotient_is_unsupported() {
        assert!(matches!(presented("N", pres(&["x"], &[])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn completion_resolves_overlaps() {
        // x^2 = y, y^2 = x, x^3 = 1 has a finite quotient; equal words share normal forms
        let rels = vec![
            (vec![2, 0], vec![0, 1]),
            (vec![0, 2], vec![1, 0]),
            (vec![3, 0], vec![0, 0]),
        ];
        let sys = RewriteSystem::complete(2, &rels);
        assert_eq!(sys.normal_form(&vec![4, 0]), sys.normal_form(&vec![1, 0]));
        assert_eq!(sys.normal_form(&vec![0, 3]), sys.normal_form(&vec![0, 0]));
    }
}
