use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, Monoid};
use crate::scheme::{points_over, MScheme};

/// Polynomials over `𝔽_p`, lowest coefficient first, without trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let lead_inv = pow_mod(*m.last().expect("nonzero modulus"), p - 2, p);
    while a.len() >= m.len() {
        let shift = a.len() - m.len();
        let c = a.last().unwrap() * lead_inv % p;
        for (i, &x) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p * p - c * x % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut acc, mut b) = (1u64, b % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Monic polynomials of degree `d` over `𝔽_p`.
fn monic(d: usize, p: u64) -> impl Iterator<Item = Poly> {
    (0..p.pow(d as u32)).map(move |mut code| {
        let mut v: Poly = (0..d)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect();
        v.push(1);
        v
    })
}

fn irreducible(n: usize, p: u64) -> Poly {
    monic(n, p)
        .find(|f| (1..=n / 2).all(|d| monic(d, p).all(|g| !rem(f, &g, p).is_empty())))
        .expect("irreducible polynomials exist in every degree")
}

/// `(𝔽_{pⁿ}, ×)` as a finite monoid, built from an irreducible polynomial.
pub fn galois_field(p: u64, n: usize) -> Result<Monoid> {
    if !is_prime(p) || n == 0 {
        return Err(Error::InvalidArgument(format!("{p}^{n} is not a prime power")));
    }
    let q = p.pow(n as u32) as usize;
    if q > 64 {
        return Err(Error::InvalidArgument(format!("field of order {q} is too large")));
    }
    let modulus = irreducible(n, p);
    let elems: Vec<Poly> = (0..q as u64)
        .map(|mut code| {
            trim(
                (0..n)
                    .map(|_| {
                        let c = code % p;
                        code /= p;
                        c
                    })
                    .collect(),
            )
        })
        .collect();
    let index = |a: &Poly| elems.iter().position(|e| e == a).expect("reduced residue");
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index(&mul_mod(a, b, &modulus, p))).collect())
        .collect();
    let labels = elems
        .iter()
        .map(|e| {
            if e.len() <= 1 {
                e.first().copied().unwrap_or(0).to_string()
            } else {
                let terms: Vec<String> = e.iter().map(|c| c.to_string()).collect();
                format!("[{}]", terms.join(","))
            }
        })
        .collect();
    Ok(FiniteMonoid::from_table(format!("GF{q}"), labels, table, &[])?.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseWeil {
    pub via_field: usize,
    pub via_dk: usize,
}

impl HasseWeil {
    pub fn holds(&self) -> bool {
        self.via_field == self.via_dk
    }
}

/// `#X((𝔽_{pⁿ}, ×))` against `#X(D_{pⁿ})`.
pub fn hasse_weil_crosscheck(x: &MScheme, p: u64, n: usize) -> Result<HasseWeil> {
    let field = galois_field(p, n)?;
    let q = p.pow(n as u32) as usize;
    Ok(HasseWeil {
        via_field: points_over(x, &field)?.total,
        via_dk: points_over(x, &Monoid::dk(q)?)?.total,
    })
}
