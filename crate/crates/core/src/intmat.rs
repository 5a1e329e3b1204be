//! Exact integer linear algebra.
//!
//! Dense `i64` matrices with Smith normal form (with unimodular transforms),
//! integer kernels, integer system solving, finitely generated abelian
//! group quotients, and Hilbert bases of `{x ∈ ℕⁿ : Ax = 0}`.

use std::collections::BTreeSet;

/// Row-major dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: i64) {
        for j in 0..self.cols {
            let v = self[(source, j)];
            self[(target, j)] += factor * v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: i64) {
        for i in 0..self.rows {
            let v = self[(i, source)];
            self[(i, target)] += factor * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `D = U·A·V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero diagonal entries `d₁ | d₂ | … | d_r`, all positive.
    pub invariants: Vec<i64>,
    pub rank: usize,
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut pivot = None;
        for i in t..m {
            for j in t..n {
                let x = d[(i, j)].abs();
                if x != 0 && pivot.is_none_or(|(_, _, b)| x < b) {
                    pivot = Some((i, j, x));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // move a smaller remainder onto the pivot and retry
                let mut best = (t, t, d[(t, t)].abs());
                for i in t + 1..m {
                    let x = d[(i, t)].abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = d[(t, j)].abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block
            let p = d[(t, t)];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
            match bad {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariants: Vec<i64> = (0..t).map(|i| d[(i, i)]).collect();
    Smith {
        diagonal: d,
        left: u,
        right: v,
        rank: invariants.len(),
        invariants,
    }
}

/// Basis of the integer kernel `{x ∈ ℤⁿ : Ax = 0}` (a saturated lattice).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let s = smith_normal_form(a);
    (s.rank..a.cols).map(|j| s.right.column(j)).collect()
}

/// Some `x ∈ ℤⁿ` with `Ax = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(b.len(), a.rows);
    let s = smith_normal_form(a);
    let c = s.left.mul_vec(b);
    let mut y = vec![0i64; a.cols];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let di = s.invariants[i];
            if ci % di != 0 {
                return None;
            }
            y[i] = ci / di;
        } else if *ci != 0 {
            return None;
        }
    }
    Some(s.right.mul_vec(&y))
}

/// Structure of a finitely generated abelian group `ℤⁿ / im(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Torsion invariant factors, each > 1, in divisibility order.
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// `ℤⁿ / span(relations)`, with `n` the ambient dimension.
pub fn quotient_invariants(ambient: usize, relations: &[Vec<i64>]) -> AbelianInvariants {
    if relations.is_empty() {
        return AbelianInvariants {
            rank: ambient,
            torsion: vec![],
        };
    }
    let s = smith_normal_form(&IntMatrix::from_columns(relations, ambient));
    AbelianInvariants {
        rank: ambient - s.rank,
        torsion: s.invariants.iter().copied().filter(|&d| d > 1).collect(),
    }
}

/// Minimal generating set of the monoid `{x ∈ ℕⁿ : Ax = 0}` (Contejean–Devie).
pub fn hilbert_basis(a: &IntMatrix) -> Vec<Vec<u32>> {
    let n = a.cols;
    let columns: Vec<Vec<i64>> = (0..n).map(|j| a.column(j)).collect();
    let dot = |x: &[i64], y: &[i64]| -> i64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut frontier: BTreeSet<Vec<u32>> = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 1;
            e
        })
        .collect();
    let image = |x: &[u32]| -> Vec<i64> {
        let mut out = vec![0i64; a.rows];
        for (j, &c) in x.iter().enumerate() {
            if c != 0 {
                for (o, col) in out.iter_mut().zip(&columns[j]) {
                    *o += c as i64 * col;
                }
            }
        }
        out
    };
    let dominates = |big: &[u32], small: &[u32]| big.iter().zip(small).all(|(b, s)| b >= s);
    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for x in &frontier {
            if image(x).iter().all(|&c| c == 0) {
                basis.push(x.clone());
            } else {
                pending.push(x.clone());
            }
        }
        let mut next = BTreeSet::new();
        for x in pending {
            let ax = image(&x);
            for j in 0..n {
                if dot(&ax, &columns[j]) < 0 {
                    let mut y = x.clone();
                    y[j] += 1;
                    if !basis.iter().any(|b| dominates(&y, b)) {
                        next.insert(y);
                    }
                }
            }
        }
        frontier = next;
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diagonalizable() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants, vec![2, 6, 12]);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diagonal);
    }

    #[test]
    fn smith_rank_deficient() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 2);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 1);
        assert_eq!(s.left.mul(&a).mul(&s.right), s.diagonal);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 3]], 2);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), vec![0]);
        let x = solve_integer(&a, &[1]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![1]);
        let b = IntMatrix::from_rows(&[vec![2, 4]], 2);
        assert!(solve_integer(&b, &[1]).is_none());
    }

    #[test]
    fn cyclic_quotient() {
        let inv = quotient_invariants(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            inv,
            AbelianInvariants {
                rank: 0,
                torsion: vec![6]
            }
        );
        assert_eq!(quotient_invariants(1, &[]).rank, 1);
    }

    #[test]
    fn hilbert_basis_of_small_systems() {
        // x - y = 0 over ℕ²: generated by (1,1)
        let a = IntMatrix::from_rows(&[vec![1, -1]], 2);
        assert_eq!(hilbert_basis(&a), vec![vec![1, 1]]);
        // 2x - 3y = 0: generated by (3,2)
        let a = IntMatrix::from_rows(&[vec![2, -3]], 2);
        assert_eq!(hilbert_basis(&a), vec![vec![3, 2]]);
        // x + y - z = 0: (1,0,1), (0,1,1)
        let a = IntMatrix::from_rows(&[vec![1, 1, -1]], 3);
        let mut hb = hilbert_basis(&a);
        hb.sort();
        assert_eq!(hb, vec![vec![0, 1, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn zero_column_is_a_solution() {
        let a = IntMatrix::from_rows(&[vec![0, 1]], 2);
        assert_eq!(hilbert_basis(&a), vec![vec![1, 0]]);
    }
}
