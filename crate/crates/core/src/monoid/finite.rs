//! Monoids given by an explicit multiplication table.

use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::presented::Presentation;

#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    pub(crate) name: String,
    pub(crate) labels: Vec<String>,
    pub(crate) table: Vec<Vec<usize>>,
    pub(crate) identity: usize,
    pub(crate) generators: Vec<usize>,
    /// Exponent vector over `generators` for every element.
    pub(crate) words: Vec<Vec<u32>>,
    pub(crate) inverse: Vec<Option<usize>>,
    pub(crate) presentation: Option<Presentation>,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.identity == other.identity && self.labels == other.labels
    }
}

impl Eq for FiniteMonoid {}

impl FiniteMonoid {
    /// Validates the table (identity, commutativity, associativity) and picks a
    /// generating set, starting from `preferred`.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        preferred: &[usize],
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidMonoid(format!(
                "{} labels for {} elements",
                labels.len(),
                n
            )));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidMonoid("table is not a closed n x n operation".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x))
            .ok_or_else(|| Error::InvalidMonoid("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::InvalidMonoid(format!(
                        "not commutative at ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }

        let mut generators: Vec<usize> = Vec::new();
        for &p in preferred {
            if p >= n {
                return Err(Error::InvalidMonoid(format!("generator index {p} out of range")));
            }
            if !generators.contains(&p) {
                generators.push(p);
            }
        }
        let mut words = closure_words(&table, identity, &generators);
        while let Some(missing) = (0..n).find(|&x| words[x].is_none()) {
            generators.push(missing);
            words = closure_words(&table, identity, &generators);
        }
        let words: Vec<Vec<u32>> = words.into_iter().map(|w| w.expect("closure covers table")).collect();

        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == identity)).collect();

        Ok(FiniteMonoid {
            name: name.into(),
            labels,
            table,
            identity,
            generators,
            words,
            inverse,
            presentation: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverse[a]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse[a].is_some()
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.is_unit(a)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub(crate) fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Breadth-first closure from the identity; `None` for elements not reached.
fn closure_words(table: &[Vec<usize>], identity: usize, gens: &[usize]) -> Vec<Option<Vec<u32>>> {
    let n = table.len();
    let mut words: Vec<Option<Vec<u32>>> = vec![None; n];
    words[identity] = Some(vec![0; gens.len()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = table[x][g];
            if words[y].is_none() {
                let mut w = words[x].clone().expect("visited");
                w[k] += 1;
                words[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    words
}

/// The trivial monoid `F₁ = {1}`.
pub fn trivial() -> FiniteMonoid {
    FiniteMonoid::from_table("F1", vec!["1".into()], vec![vec![0]], &[]).expect("trivial monoid")
}

fn power_label(exp: usize) -> String {
    match exp {
        0 => "1".into(),
        1 => "g".into(),
        e => format!("g^{e}"),
    }
}

/// The cyclic group `C_n` of order `n ≥ 1`, generated by `g`.
pub fn cyclic(n: usize) -> Result<FiniteMonoid> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(power_label).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let gens: Vec<usize> = if n > 1 { vec![1] } else { vec![] };
    FiniteMonoid::from_table(format!("C{n}"), labels, table, &gens)
}

/// `D_k = C_{k-1} ∪ {0}` for `k ≥ 1`, the last index being the absorbing zero.
pub fn dk(k: usize) -> Result<FiniteMonoid> {
    if k == 0 {
        return Err(Error::InvalidArgument("D_k needs k >= 1".into()));
    }
    let group = cyclic(k.max(2) - 1)?;
    Ok(adjoin_zero(&group).renamed(format!("D{k}")))
}

/// Adds a formal absorbing zero as a new last element.
pub fn adjoin_zero(base: &FiniteMonoid) -> FiniteMonoid {
    let n = base.size();
    let zero = n;
    let mut labels = base.labels.clone();
    labels.push("0".into());
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| if a == zero || b == zero { zero } else { base.table[a][b] })
                .collect()
        })
        .collect();
    let mut gens = base.generators.clone();
    gens.push(zero);
    FiniteMonoid::from_table(format!("{}+0", base.name), labels, table, &gens).expect("adjoining zero keeps axioms")
}

/// Direct product with componentwise multiplication.
pub fn product(a: &FiniteMonoid, b: &FiniteMonoid) -> FiniteMonoid {
    let (na, nb) = (a.size(), b.size());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut labels = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("({},{})", a.labels[i], b.labels[j]));
        }
    }
    let mut table = vec![vec![0; na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    table[idx(i, j)][idx(k, l)] = idx(a.table[i][k], b.table[j][l]);
                }
            }
        }
    }
    let mut gens: Vec<usize> = a.generators.iter().map(|&g| idx(g, b.identity)).collect();
    gens.extend(b.generators.iter().map(|&g| idx(a.identity, g)));
    FiniteMonoid::from_table(format!("{}x{}", a.name, b.name), labels, table, &gens)
        .expect("product of monoids is a monoid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d5_structure() {
        let d5 = dk(5).unwrap();
        assert_eq!(d5.size(), 5);
        let g = d5.index_of("g").unwrap();
        let g3 = d5.index_of("g^3").unwrap();
        let zero = d5.index_of("0").unwrap();
        assert_eq!(d5.mul(g, g3), d5.identity());
        assert_eq!(d5.mul(g, zero), zero);
        assert_eq!(d5.units().len(), 4);
        assert_eq!(d5.generators(), &[g, zero]);
    }

    #[test]
    fn d1_and_d2() {
        let d1 = dk(1).unwrap();
        let d2 = dk(2).unwrap();
        assert_eq!(d1.size(), 2);
        assert_eq!(d2.size(), 2);
        assert_eq!(d1.table(), d2.table());
    }

    #[test]
    fn rejects_non_associative() {
        // x*x = 1 on {1,x,y} with x*y = x, y*y = 1 breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let labels = vec!["1".into(), "x".into(), "y".into()];
        assert!(matches!(
            FiniteMonoid::from_table("bad", labels, t, &[]),
            Err(Error::InvalidMonoid(_))
        ));
    }

    #[test]
    fn product_size_and_units() {
        let p = product(&dk(3).unwrap(), &cyclic(2).unwrap());
        assert_eq!(p.size(), 6);
        assert_eq!(p.units().len(), 4);
    }
}
