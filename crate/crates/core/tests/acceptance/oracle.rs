//! Brute-force reference computations. Nothing here calls into the library
//! beyond reading a finite multiplication table.

use std::collections::BTreeMap;

use f1::monoid::Monoid;

/// A finite commutative monoid given by its table.
#[derive(Clone, Debug)]
pub struct Table {
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
}

impl Table {
    pub fn of(m: &Monoid) -> Table {
        let f = m.as_finite().expect("finite monoid");
        Table {
            mul: f.table().to_vec(),
            one: f.identity(),
        }
    }

    /// `(ℤ/n, ·)`.
    pub fn zmod(n: usize) -> Table {
        Table {
            mul: (0..n).map(|a| (0..n).map(|b| a * b % n).collect()).collect(),
            one: 1 % n,
        }
    }

    pub fn len(&self) -> usize {
        self.mul.len()
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.len()).any(|b| self.m(a, b) == self.one)
    }
}

/// Every prime ideal, as a membership mask. Includes the empty ideal.
pub fn primes(t: &Table) -> Vec<Vec<bool>> {
    let n = t.len();
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        let p: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if p[t.one] {
            continue;
        }
        let ideal = (0..n).all(|a| !p[a] || (0..n).all(|b| p[t.m(a, b)]));
        let prime = (0..n).all(|a| (0..n).all(|b| !p[t.m(a, b)] || p[a] || p[b]));
        if ideal && prime {
            out.push(p);
        }
    }
    out
}

/// All monoid homomorphisms `a → b`, each as the image of every element.
pub fn homs(a: &Table, b: &Table) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; n];
    fn go(i: usize, a: &Table, b: &Table, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a.len() {
            out.push(f.clone());
            return;
        }
        let choices: Vec<usize> = if i == a.one {
            vec![b.one]
        } else {
            (0..b.len()).collect()
        };
        for y in choices {
            f[i] = y;
            let ok = (0..=i).all(|x| {
                (0..=i).all(|z| {
                    let xz = a.m(x, z);
                    xz > i || f[xz] == b.m(f[x], f[z])
                })
            });
            if ok {
                go(i + 1, a, b, f, out);
            }
        }
        f[i] = usize::MAX;
    }
    go(0, a, b, &mut f, &mut out);
    out
}

/// `S⁻¹A` for the submonoid `S` given as a mask: class index of each fraction
/// `(a, s)`, and the class count.
pub struct Fractions {
    pub class: BTreeMap<(usize, usize), usize>,
    pub count: usize,
}

pub fn localize(t: &Table, s: &[bool]) -> Fractions {
    let n = t.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(|&x| s[x]).map(move |x| (a, x)))
        .collect();
    let equiv = |(a, x): (usize, usize), (b, y): (usize, usize)| {
        (0..n).filter(|&u| s[u]).any(|u| t.m(u, t.m(y, a)) == t.m(u, t.m(x, b)))
    };
    let mut class = BTreeMap::new();
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &p in &pairs {
        let c = match reps.iter().position(|&r| equiv(r, p)) {
            Some(c) => c,
            None => {
                reps.push(p);
                reps.len() - 1
            }
        };
        class.insert(p, c);
    }
    Fractions {
        class,
        count: reps.len(),
    }
}

/// Size of `M ⊗_A N` for actions given generator by generator.
pub fn tensor_size(m: &[Vec<usize>], n: &[Vec<usize>], msize: usize, nsize: usize) -> usize {
    let mut parent: Vec<usize> = (0..msize * nsize).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (gm, gn) in m.iter().zip(n) {
        for (x, &ax) in gm.iter().enumerate().take(msize) {
            for (y, &ay) in gn.iter().enumerate().take(nsize) {
                let (u, v) = (find(&mut parent, ax * nsize + y), find(&mut parent, x * nsize + ay));
                parent[u] = v;
            }
        }
    }
    (0..msize * nsize).filter(|&i| find(&mut parent, i) == i).count()
}

/// Coefficients of `∏ (1 − p^i T)^{−a_i}` up to `T^m`.
pub fn weil_closed(a: &[i64], p: i128, m: usize) -> Vec<i128> {
    let mut series = vec![0i128; m + 1];
    series[0] = 1;
    for (i, &ai) in a.iter().enumerate() {
        let q = p.pow(i as u32);
        for _ in 0..ai.unsigned_abs() {
            if ai > 0 {
                // multiply by 1/(1 − qT)
                for d in 1..=m {
                    series[d] += q * series[d - 1];
                }
            } else {
                // multiply by (1 − qT)
                for d in (1..=m).rev() {
                    series[d] -= q * series[d - 1];
                }
            }
        }
    }
    series
}

/// `∏ (1 − p^{i−s})^{a_i} / ε^{Σ a_i}` at `p = 1 + ε`, evaluated naively.
pub fn limit(a: &[i64], s: f64, eps: f64) -> f64 {
    let p = 1.0 + eps;
    a.iter()
        .enumerate()
        .map(|(i, &ai)| ((1.0 - p.powf(i as f64 - s)) / eps).powi(ai as i32))
        .product()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
