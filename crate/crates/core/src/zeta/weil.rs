use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPoly, ZetaFactors};

/// `Z_X(p, T)` to order `m`, from the exponential definition and from the
/// product `∏ (1 − pⁱT)^{−a_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilSeries {
    pub exponential: Vec<BigRational>,
    pub closed_form: Vec<BigRational>,
}

impl WeilSeries {
    pub fn agrees(&self) -> bool {
        self.exponential == self.closed_form
    }
}

fn mul_truncated(a: &[BigRational], b: &[BigRational], m: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); m + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 − xT)^{e}` to order `m` via the generalized binomial series.
fn binomial_series(x: &BigInt, e: i64, m: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(m + 1);
    let mut c = BigRational::one();
    let step = BigRational::from_integer(-x.clone());
    let e = BigRational::from_integer(e.into());
    for k in 0..=m {
        out.push(c.clone());
        let kk = BigRational::from_integer(k.into());
        c = c * (&e - &kk) / (&kk + BigRational::one()) * &step;
    }
    out
}

pub fn weil_series(n: &IntPoly, p: u64, m: usize) -> WeilSeries {
    let pb = BigInt::from(p);
    // exp(Σ N(pʲ)Tʲ/j): k·b_k = Σ_{j=1}^{k} N(pʲ) b_{k−j}
    let counts: Vec<BigRational> = (0..=m)
        .map(|j| BigRational::from_integer(n.eval_big(&num_traits::pow(pb.clone(), j))))
        .collect();
    let mut exponential = vec![BigRational::one()];
    for k in 1..=m {
        let s: BigRational = (1..=k).map(|j| &counts[j] * &exponential[k - j]).sum();
        exponential.push(s / BigRational::from_integer(k.into()));
    }
    let mut closed_form = vec![BigRational::zero(); m + 1];
    closed_form[0] = BigRational::one();
    for (i, &a) in n.coefficients().iter().enumerate() {
        if a != 0 {
            closed_form = mul_truncated(
                &closed_form,
                &binomial_series(&num_traits::pow(pb.clone(), i), -a, m),
                m,
            );
        }
    }
    WeilSeries {
        exponential,
        closed_form,
    }
}

/// `Z(p, p^{−s})^{−1} / (p − 1)^{N(1)}` at `p = 1 + ε`, compared with `ζ_X(s)`.
#[derive(Clone, Debug)]
pub struct LimitCheck {
    /// `(s, ε, value, deviation)`.
    pub samples: Vec<(f64, f64, f64, f64)>,
    /// Largest deviation at the smallest `ε`.
    pub max_deviation: f64,
    /// Empirical convergence order in `ε`, minimised over `s`.
    pub order: f64,
}

fn limit_value(n: &IntPoly, s: f64, eps: f64) -> f64 {
    let lp = eps.ln_1p();
    let mut log = 0.0;
    let mut sign = 1.0;
    for (i, &a) in n.coefficients().iter().enumerate() {
        if a == 0 {
            continue;
        }
        // 1 − p^{i−s} = −expm1((i − s) ln p)
        let factor = -((i as f64 - s) * lp).exp_m1();
        log += a as f64 * (factor.abs().ln() - eps.ln());
        if factor < 0.0 && a % 2 != 0 {
            sign = -sign;
        }
    }
    sign * log.exp()
}

pub fn limit_check(n: &IntPoly, s_values: &[f64], eps: &[f64]) -> LimitCheck {
    let z = ZetaFactors(n.coefficients().to_vec());
    let mut samples = Vec::new();
    let mut order = f64::INFINITY;
    let mut max_deviation: f64 = 0.0;
    let smallest = eps.iter().copied().fold(f64::INFINITY, f64::min);
    for &s in s_values {
        let target = z.eval(s);
        let devs: Vec<(f64, f64)> = eps
            .iter()
            .map(|&e| {
                let v = limit_value(n, s, e);
                let d = (v - target).abs();
                samples.push((s, e, v, d));
                (e, d)
            })
            .collect();
        if let Some(&(_, d)) = devs.iter().find(|(e, _)| *e == smallest) {
            max_deviation = max_deviation.max(d);
        }
        // order from the two largest step sizes, where rounding noise is negligible
        if let [(e1, d1), (e2, d2), ..] = devs[..] {
            if d1 > 0.0 && d2 > 0.0 {
                order = order.min((d1 / d2).ln() / (e1 / e2).ln());
            }
        }
    }
    LimitCheck {
        samples,
        max_deviation,
        order,
    }
}
