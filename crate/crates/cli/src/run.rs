//! Command dispatch: each verb produces a report with JSON, text and,
//! where it makes sense, DOT renderings.

use std::fmt;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use f1::error::Error;
use f1::modsheaf::{picard, LocallyFree, RingedSpace, SheafModule};
use f1::monoid::{hom_enumerate, pushout, Monoid};
use f1::scheme::{
    form_preserving_count, gl_n, global_sections, monomial_matrix_group, orthogonal_form, points_over, symplectic_form,
    MScheme,
};
use f1::spec::spec;
use f1::zeta::{weil_series, zeta_report, Verdict, DEFAULT_RANGE};
use f1::zext::{adjunction, FiniteRing};

use crate::env::{DslError, Env, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Spec,
    Sections,
    Hom,
    Points,
    Zeta,
    Pic,
    Glnorder,
    Adjunction,
    Pushout,
    Coherent,
}

impl Verb {
    fn arity(self) -> usize {
        match self {
            Verb::Hom | Verb::Pushout => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    pub targets: Vec<String>,
    pub format: Format,
    pub k: Option<RangeInclusive<usize>>,
    pub prime: Option<u64>,
    pub trunc: usize,
    pub ring: Option<Vec<u64>>,
}

impl Command {
    pub fn new(verb: Verb, targets: &[&str]) -> Self {
        Command {
            verb,
            targets: targets.iter().map(|s| s.to_string()).collect(),
            format: Format::Text,
            k: None,
            prime: None,
            trunc: 10,
            ring: None,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Dsl(DslError),
    Domain(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage: {m}"),
            RunError::Dsl(e) => write!(f, "{e}"),
            RunError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<DslError> for RunError {
    fn from(e: DslError) -> Self {
        RunError::Dsl(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, RunError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| RunError::Usage("this verb has no DOT output".into())),
        }
    }
}

/// `A..B` or `A..=B`, both inclusive.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got '{text}'"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end '{b}'"))?;
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {a}..{b}"));
    }
    Ok(a..=b)
}

/// `6` or `2x3` for `ℤ/2 × ℤ/3`.
pub fn parse_ring(text: &str) -> Result<Vec<u64>, String> {
    text.split(['x', '*'])
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad ring modulus '{p}'")))
        .collect()
}

pub fn run(cmd: &Command, env: &Env) -> Result<Report, RunError> {
    if cmd.targets.len() != cmd.verb.arity() {
        return Err(RunError::Usage(format!(
            "{:?} takes {} target(s), got {}",
            cmd.verb,
            cmd.verb.arity(),
            cmd.targets.len()
        )));
    }
    let t = cmd.targets[0].as_str();
    match cmd.verb {
        Verb::Spec => spec_report(env.resolve(t)?),
        Verb::Sections => sections_report(&env.resolve_scheme(t)?),
        Verb::Hom => hom_report(&env.resolve_monoid(t)?, &env.resolve_monoid(&cmd.targets[1])?),
        Verb::Points => points_report(&env.resolve_scheme(t)?, cmd.k.clone().unwrap_or(DEFAULT_RANGE)),
        Verb::Zeta => zeta(cmd, &env.resolve_scheme(t)?),
        Verb::Pic => {
            let x = env.resolve_scheme(t)?;
            let p = picard(&x)?;
            Ok(Report {
                text: format!("Pic({}) = {}\n", x.name(), p.group),
                json: p.to_json(),
                dot: None,
            })
        }
        Verb::Glnorder => glnorder(t, cmd.k.clone().unwrap_or(2..=6)),
        Verb::Adjunction => {
            let a = env.resolve_monoid(t)?;
            let moduli = cmd.ring.clone().unwrap_or_else(|| vec![6]);
            let r = FiniteRing::product(&moduli)?;
            let c = adjunction(&a, &r)?;
            Ok(Report {
                json: json!({"monoid": a.name(), "ring": r.name(), "ring_homs": c.ring_side, "monoid_homs": c.monoid_side, "equal": c.holds()}),
                text: format!(
                    "#Hom_ring(Z[{}], {}) = {}\n#Hom_monoid({}, ({}, *)) = {}\n{}\n",
                    a.name(),
                    r.name(),
                    c.ring_side,
                    a.name(),
                    r.name(),
                    c.monoid_side,
                    if c.holds() { "equal" } else { "DIFFERENT" }
                ),
                dot: None,
            })
        }
        Verb::Pushout => {
            let (f, g) = (env.resolve_morphism(t)?, env.resolve_morphism(&cmd.targets[1])?);
            let p = pushout(&f, &g)?;
            Ok(Report {
                json: json!({"monoid": p.monoid.to_json(), "from_a": p.from_a.describe(), "from_b": p.from_b.describe()}),
                text: format!(
                    "{}\n{}\n{}\n",
                    describe_monoid(&p.monoid),
                    p.from_a.describe(),
                    p.from_b.describe()
                ),
                dot: None,
            })
        }
        Verb::Coherent => coherent(&env.resolve_scheme(t)?),
    }
}

fn describe_monoid(m: &Monoid) -> String {
    format!("{} = {}", m.name(), describe_elements(m))
}

fn describe_elements(m: &Monoid) -> String {
    match m.elements() {
        Some(els) => {
            let labels: Vec<String> = els.iter().map(|e| m.label(e)).collect();
            format!("{{{}}}", labels.join(", "))
        }
        None => {
            let gens: Vec<String> = m.generators().iter().map(|e| m.label(e)).collect();
            format!("<{}>", gens.join(", "))
        }
    }
}

fn spec_report(t: Target) -> Result<Report, RunError> {
    match t {
        Target::Monoid(m) => {
            let s = spec(&m)?;
            let mut text = format!("Spec {}: {} points\n", m.name(), s.len());
            for p in 0..s.len() {
                text.push_str(&format!("  {}\n", s.label(p)));
            }
            for (a, b) in s.covering_pairs() {
                text.push_str(&format!("  {} < {}\n", s.label(a), s.label(b)));
            }
            Ok(Report {
                json: s.to_json(),
                text,
                dot: Some(s.to_dot()),
            })
        }
        Target::Scheme(x) => {
            let mut text = format!("{}: {} points, {} components\n", x.name(), x.len(), x.f1_points());
            for p in 0..x.len() {
                text.push_str(&format!("  {}\n", x.label(p)));
            }
            Ok(Report {
                json: x.to_json(),
                text,
                dot: Some(x.to_dot()),
            })
        }
    }
}

fn sections_report(x: &MScheme) -> Result<Report, RunError> {
    let g = global_sections(x)?;
    Ok(Report {
        json: json!({"scheme": x.name(), "sections": g.monoid.to_json()}),
        text: format!("Gamma({}, O) = {}\n", x.name(), describe_elements(&g.monoid)),
        dot: None,
    })
}

fn hom_report(a: &Monoid, b: &Monoid) -> Result<Report, RunError> {
    let homs = hom_enumerate(a, b)?;
    let list: Vec<String> = homs.iter().map(|h| h.describe()).collect();
    let mut text = format!("#Hom({}, {}) = {}\n", a.name(), b.name(), homs.len());
    for h in &list {
        text.push_str(&format!("  {h}\n"));
    }
    Ok(Report {
        json: json!({"source": a.name(), "target": b.name(), "count": homs.len(), "homs": list}),
        text,
        dot: None,
    })
}

fn points_report(x: &MScheme, ks: RangeInclusive<usize>) -> Result<Report, RunError> {
    let mut rows = Vec::new();
    let mut text = format!("#{}(D_k)\n", x.name());
    for k in ks {
        let c = points_over(x, &Monoid::dk(k)?)?;
        let by_point: serde_json::Map<String, Value> = c
            .by_point
            .iter()
            .enumerate()
            .map(|(p, n)| (x.label(p), json!(n)))
            .collect();
        text.push_str(&format!("  k = {k}: {}\n", c.total));
        rows.push(json!({"k": k, "total": c.total, "by_point": by_point}));
    }
    Ok(Report {
        json: json!({"scheme": x.name(), "counts": rows}),
        text,
        dot: None,
    })
}

fn zeta(cmd: &Command, x: &MScheme) -> Result<Report, RunError> {
    let r = zeta_report(x, cmd.k.clone().unwrap_or(DEFAULT_RANGE))?;
    let mut json = r.to_json();
    let mut text = r.to_string();
    if let (Some(p), Verdict::Polynomial(n)) = (cmd.prime, &r.verdict) {
        let w = weil_series(n, p, cmd.trunc);
        let coeffs: Vec<String> = w.closed_form.iter().map(|c| c.to_string()).collect();
        json["weil_series"] = json!({"p": p, "order": cmd.trunc, "coefficients": coeffs, "agrees": w.agrees()});
        text.push_str(&format!(
            "Z(p={p}, T) = {} + O(T^{})\n",
            coeffs.join(", "),
            cmd.trunc + 1
        ));
        text.push_str(&format!("exponential definition agrees: {}\n", w.agrees()));
    }
    Ok(Report { json, text, dot: None })
}

fn glnorder(t: &str, ks: RangeInclusive<usize>) -> Result<Report, RunError> {
    let n: usize = t
        .parse()
        .map_err(|_| RunError::Usage(format!("glnorder takes n, got '{t}'")))?;
    let gl = gl_n(n)?;
    let f1 = Monoid::trivial();
    let order = monomial_matrix_group(n, &f1)?.len();
    let factorial: usize = (1..=n).product();
    let mut counts = Vec::new();
    for k in ks {
        counts.push(json!([k, points_over(&gl.scheme, &Monoid::dk(k)?)?.total]));
    }
    let orthogonal = form_preserving_count(&f1, &orthogonal_form(n))?;
    let symplectic = if n.is_multiple_of(2) {
        Some(form_preserving_count(&f1, &symplectic_form(n / 2))?)
    } else {
        None
    };
    let group_law = gl.check_group_law(&Monoid::dk(3)?)?;
    let json = json!({
        "n": n,
        "order_f1": order,
        "n_factorial": factorial,
        "counts": counts,
        "orthogonal_f1": orthogonal,
        "symplectic_f1": symplectic,
        "group_law_d3": group_law,
    });
    let mut text = format!("#GL_{n}(F1) = {order} (n! = {factorial})\n#O_{n}(F1) = {orthogonal}\n");
    if let Some(s) = symplectic {
        text.push_str(&format!("#Sp_{n}(F1) = {s}\n"));
    }
    for c in json["counts"].as_array().expect("array") {
        text.push_str(&format!("  #GL_{n}(D_{}) = {}\n", c[0], c[1]));
    }
    text.push_str(&format!(
        "group law over D_3: {}\n",
        if group_law { "ok" } else { "FAILED" }
    ));
    Ok(Report { json, text, dot: None })
}

fn coherent(x: &MScheme) -> Result<Report, RunError> {
    let c = LocallyFree::structure(x)?.coherence()?;
    let space = RingedSpace::from_scheme(x)?;
    let mut json = json!({"scheme": x.name(), "structure_sheaf": {"coherent": c.holds(), "checked": c.checked}});
    if let Some((p, q)) = c.witness {
        json["structure_sheaf"]["witness"] = json!([space.label(p), space.label(q)]);
    }
    let mut text = format!(
        "O_{} coherent: {} ({} restrictions checked)\n",
        x.name(),
        c.holds(),
        c.checked
    );
    if (0..space.len()).all(|p| space.stalk(p).is_finite()) {
        let o = SheafModule::structure(&space)?;
        let stalkwise = o.coherence()?;
        json["stalkwise"] = o.witness_json(&stalkwise);
        text.push_str(&format!("stalkwise check: {}\n", stalkwise.holds()));
    }
    Ok(Report { json, text, dot: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_rings() {
        assert_eq!(parse_range("2..10").unwrap(), 2..=10);
        assert_eq!(parse_range("3..=4").unwrap(), 3..=4);
        assert!(parse_range("5..2").is_err());
        assert_eq!(parse_ring("2x3").unwrap(), vec![2, 3]);
    }

    #[test]
    fn arity_is_checked() {
        let env = Env::default();
        assert!(matches!(
            run(&Command::new(Verb::Hom, &["dk(2)"]), &env),
            Err(RunError::Usage(_))
        ));
    }
}
