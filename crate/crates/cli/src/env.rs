//! Resolution of a parsed document into monoids, schemes and morphisms.

use std::collections::BTreeMap;
use std::fmt;

use f1::monoid::{localize, Monoid, MonoidHom, Presentation, Word};
use f1::scheme::{gl_n, glue, MScheme, Overlap};

use crate::dsl::{
    parse, parse_monoid_expr, parse_scheme_expr, DefKind, Document, MonoidExpr, ParseError, Ref, SchemeExpr, Span,
    WordExpr,
};

#[derive(Debug)]
pub enum DslError {
    Parse(ParseError),
    /// A name that is not defined earlier in the document.
    Unresolved(Ref),
    Duplicate {
        name: String,
        span: Span,
    },
    /// The library rejected a definition.
    Domain {
        span: Span,
        error: f1::error::Error,
    },
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Parse(e) => write!(f, "{e}"),
            DslError::Unresolved(r) => write!(f, "{}:{}: unresolved reference '{}'", r.span.line, r.span.col, r.name),
            DslError::Duplicate { name, span } => write!(f, "{}:{}: '{name}' is already defined", span.line, span.col),
            DslError::Domain { span, error } => write!(f, "{}:{}: {error}", span.line, span.col),
        }
    }
}

impl std::error::Error for DslError {}

impl From<ParseError> for DslError {
    fn from(e: ParseError) -> Self {
        DslError::Parse(e)
    }
}

type DResult<T> = Result<T, DslError>;

#[derive(Clone, Debug, Default)]
pub struct Env {
    pub monoids: BTreeMap<String, Monoid>,
    pub schemes: BTreeMap<String, MScheme>,
    pub morphisms: BTreeMap<String, MonoidHom>,
}

fn domain<T>(span: Span, r: f1::error::Result<T>) -> DResult<T> {
    r.map_err(|error| DslError::Domain { span, error })
}

fn word(generators: &[String], w: &WordExpr, span: Span) -> DResult<Word> {
    let mut out = vec![0u32; generators.len()];
    for (g, e) in w {
        let i = generators
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| DslError::Unresolved(Ref { name: g.clone(), span }))?;
        out[i] += e;
    }
    Ok(out)
}

impl Env {
    pub fn from_source(src: &str) -> DResult<Self> {
        let mut env = Env::default();
        env.load(&parse(src)?)?;
        Ok(env)
    }

    pub fn load(&mut self, doc: &Document) -> DResult<()> {
        for def in &doc.defs {
            if self.monoids.contains_key(&def.name)
                || self.schemes.contains_key(&def.name)
                || self.morphisms.contains_key(&def.name)
            {
                return Err(DslError::Duplicate {
                    name: def.name.clone(),
                    span: def.span,
                });
            }
            match &def.kind {
                DefKind::Monoid(m) => {
                    let v = self.monoid(&def.name, m, def.span)?;
                    self.monoids.insert(def.name.clone(), v);
                }
                DefKind::Scheme(s) => {
                    let v = self.scheme(&def.name, s, def.span)?;
                    self.schemes.insert(def.name.clone(), v);
                }
                DefKind::Morphism(m) => {
                    let a = self.get_monoid(&m.source)?.clone();
                    let b = self.get_monoid(&m.target)?.clone();
                    let images = m
                        .images
                        .iter()
                        .map(|t| domain(def.span, b.parse_element(t)))
                        .collect::<DResult<_>>()?;
                    let h = domain(def.span, MonoidHom::new(a, b, images))?;
                    self.morphisms.insert(def.name.clone(), h);
                }
            }
        }
        Ok(())
    }

    pub fn get_monoid(&self, r: &Ref) -> DResult<&Monoid> {
        self.monoids.get(&r.name).ok_or_else(|| DslError::Unresolved(r.clone()))
    }

    fn monoid(&self, name: &str, m: &MonoidExpr, span: Span) -> DResult<Monoid> {
        let v = match m {
            MonoidExpr::Table(rows) => {
                let labels: Vec<String> = rows.iter().map(|r| r.0.clone()).collect();
                let mut table = Vec::new();
                for (_, row) in rows {
                    let mut out = Vec::new();
                    for e in row {
                        let i = labels
                            .iter()
                            .position(|l| l == e)
                            .ok_or_else(|| DslError::Unresolved(Ref { name: e.clone(), span }))?;
                        out.push(i);
                    }
                    table.push(out);
                }
                Monoid::table(name, labels, table)
            }
            MonoidExpr::Presented { generators, relations } => {
                let relations = relations
                    .iter()
                    .map(|(a, b)| Ok((word(generators, a, span)?, word(generators, b, span)?)))
                    .collect::<DResult<_>>()?;
                Monoid::presented(
                    name,
                    Presentation {
                        generators: generators.clone(),
                        relations,
                    },
                )
            }
            MonoidExpr::Lattice(rows) => {
                let dim = rows.first().map_or(0, Vec::len);
                Monoid::lattice(name, dim, rows.clone())
            }
            MonoidExpr::Cyclic(n) => Monoid::cyclic(*n),
            MonoidExpr::InfCyclic(None) => Ok(Monoid::inf_cyclic()),
            MonoidExpr::InfCyclic(Some(n)) => Ok(Monoid::inf_cyclic_pow(*n)),
            MonoidExpr::Nat(None) => Ok(Monoid::nat()),
            MonoidExpr::Nat(Some(n)) => Ok(Monoid::nat_pow(*n)),
            MonoidExpr::Dk(k) => Monoid::dk(*k),
            MonoidExpr::AdjoinZero(r) => self.get_monoid(r)?.adjoin_zero(),
            MonoidExpr::Product(a, b) => self.get_monoid(a)?.product(self.get_monoid(b)?),
        };
        domain(span, v)
    }

    fn scheme(&self, name: &str, s: &SchemeExpr, span: Span) -> DResult<MScheme> {
        let v = match s {
            SchemeExpr::Spec(r) => MScheme::affine(name, self.get_monoid(r)?),
            SchemeExpr::P1 => Ok(MScheme::p1()),
            SchemeExpr::A1 => Ok(MScheme::a1()),
            SchemeExpr::Gl(n) => gl_n(*n).map(|g| g.scheme),
            SchemeExpr::Disjoint(parts) => {
                let parts = parts
                    .iter()
                    .map(|r| {
                        self.schemes
                            .get(&r.name)
                            .cloned()
                            .ok_or_else(|| DslError::Unresolved(r.clone()))
                    })
                    .collect::<DResult<Vec<_>>>()?;
                MScheme::disjoint(name, &parts)
            }
            SchemeExpr::Glue { charts, overlaps } => {
                let built: Vec<(String, Monoid)> = charts
                    .iter()
                    .map(|c| Ok((c.label.clone(), self.get_monoid(&c.monoid)?.clone())))
                    .collect::<DResult<_>>()?;
                let index = |r: &Ref| -> DResult<usize> {
                    built
                        .iter()
                        .position(|c| c.0 == r.name)
                        .or_else(|| r.name.parse().ok().filter(|&i: &usize| i < built.len()))
                        .ok_or_else(|| DslError::Unresolved(r.clone()))
                };
                let mut out = Vec::new();
                for o in overlaps {
                    let (i, j) = (index(&o.i)?, index(&o.j)?);
                    let f_i = domain(o.span, built[i].1.parse_element(&o.f_i))?;
                    let f_j = domain(o.span, built[j].1.parse_element(&o.f_j))?;
                    let loc = domain(o.span, localize(&built[i].1, std::slice::from_ref(&f_i)))?;
                    let theta = o
                        .theta
                        .iter()
                        .map(|t| domain(o.span, loc.monoid.parse_element(t)))
                        .collect::<DResult<Vec<_>>>()?;
                    out.push(Overlap { i, j, f_i, f_j, theta });
                }
                glue(name, built, out)
            }
        };
        domain(span, v)
    }

    /// A monoid by name, or an inline expression such as `dk(3)`.
    pub fn resolve_monoid(&self, text: &str) -> DResult<Monoid> {
        if let Some(m) = self.monoids.get(text) {
            return Ok(m.clone());
        }
        let expr = parse_monoid_expr(text)?;
        self.monoid(text, &expr, Span { line: 1, col: 1 })
    }

    /// A scheme by name, an inline scheme expression, or `spec` of a monoid.
    pub fn resolve_scheme(&self, text: &str) -> DResult<MScheme> {
        if let Some(x) = self.schemes.get(text) {
            return Ok(x.clone());
        }
        if let Some(m) = self.monoids.get(text) {
            return domain(Span { line: 1, col: 1 }, MScheme::affine(text, m));
        }
        match parse_scheme_expr(text) {
            Ok(expr) => self.scheme(text, &expr, Span { line: 1, col: 1 }),
            Err(scheme_err) => match self.resolve_monoid(text) {
                Ok(m) => domain(Span { line: 1, col: 1 }, MScheme::affine(text, &m)),
                Err(_) => Err(scheme_err.into()),
            },
        }
    }

    pub fn resolve_morphism(&self, text: &str) -> DResult<MonoidHom> {
        self.morphisms.get(text).cloned().ok_or_else(|| {
            DslError::Unresolved(Ref {
                name: text.into(),
                span: Span { line: 1, col: 1 },
            })
        })
    }

    /// A monoid when `text` names or describes one, otherwise a scheme.
    pub fn resolve(&self, text: &str) -> DResult<Target> {
        if self.schemes.contains_key(text) {
            return Ok(Target::Scheme(self.resolve_scheme(text)?));
        }
        match self.resolve_monoid(text) {
            Ok(m) => Ok(Target::Monoid(m)),
            Err(_) => Ok(Target::Scheme(self.resolve_scheme(text)?)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Target {
    Monoid(Monoid),
    Scheme(MScheme),
}
