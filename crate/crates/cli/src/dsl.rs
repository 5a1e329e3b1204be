//! The `.f1m` document language.
//!
//! ```text
//! monoid M = dk(5)
//! monoid B = presented <x | x^2 = x>
//! monoid T = table { e: e a; a: a a }
//! scheme X = glue { chart U = N; chart V = N; overlap (U, V) on D((1), (1)) via [(1)]; }
//! morphism f : B -> M = [0]
//! ```

use std::fmt;

/// Line and column (both from 1) of the first character of a construct.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

// spans locate syntax, they never distinguish two trees
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A name together with where it was written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ref {
    pub name: String,
    pub span: Span,
}

/// A monoid word as `(generator, exponent)` factors; empty means `1`.
pub type WordExpr = Vec<(String, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidExpr {
    /// Rows `label: products with each label in order`.
    Table(Vec<(String, Vec<String>)>),
    Presented {
        generators: Vec<String>,
        relations: Vec<(WordExpr, WordExpr)>,
    },
    Lattice(Vec<Vec<i64>>),
    Cyclic(usize),
    InfCyclic(Option<usize>),
    Nat(Option<usize>),
    Dk(usize),
    AdjoinZero(Ref),
    Product(Ref, Ref),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartDecl {
    pub label: String,
    pub monoid: Ref,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapDecl {
    pub i: Ref,
    pub j: Ref,
    pub f_i: String,
    pub f_j: String,
    pub theta: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeExpr {
    Spec(Ref),
    Glue {
        charts: Vec<ChartDecl>,
        overlaps: Vec<OverlapDecl>,
    },
    P1,
    A1,
    Gl(usize),
    Disjoint(Vec<Ref>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismExpr {
    pub source: Ref,
    pub target: Ref,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DefKind {
    Monoid(MonoidExpr),
    Scheme(SchemeExpr),
    Morphism(MorphismExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub span: Span,
    pub kind: DefKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub defs: Vec<Def>,
}

// ---- lexer ---------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
    Arrow,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
    start: usize,
    end: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '+' | '-')
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '-' && chars.get(i + 1).map(|x| x.1) == Some('>') {
            out.push(Token {
                tok: Tok::Arrow,
                span,
                start,
                end: start + 2,
            });
            i += 2;
            col += 2;
            continue;
        }
        if is_word_char(c) {
            let mut j = i;
            while j < chars.len() && is_word_char(chars[j].1) {
                if chars[j].1 == '-' && chars.get(j + 1).map(|x| x.1) == Some('>') {
                    break;
                }
                j += 1;
            }
            let end = chars.get(j).map_or(src.len(), |x| x.0);
            out.push(Token {
                tok: Tok::Word(src[start..end].to_string()),
                span,
                start,
                end,
            });
            col += j - i;
            i = j;
            continue;
        }
        if "={}()[]<>|;,:^*/".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                span,
                start,
                end: start + c.len_utf8(),
            });
            col += 1;
            i += 1;
            continue;
        }
        return Err(ParseError {
            span,
            message: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

// ---- parser --------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            span: self.peek().span,
            message: message.into(),
        })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Punct(c) => format!("'{c}'"),
            Tok::Arrow => "'->'".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}', found {}", Self::describe(&self.peek().tok)))
        }
    }

    fn word(&mut self) -> PResult<(String, Span)> {
        match self.peek().tok.clone() {
            Tok::Word(w) => {
                let span = self.next().span;
                Ok((w, span))
            }
            t => self.error(format!("expected a name, found {}", Self::describe(&t))),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Word(w) if w == kw => {
                self.next();
                Ok(())
            }
            t => self.error(format!("expected '{kw}', found {}", Self::describe(t))),
        }
    }

    fn reference(&mut self) -> PResult<Ref> {
        let (name, span) = self.word()?;
        Ok(Ref { name, span })
    }

    fn integer<T: std::str::FromStr>(&mut self) -> PResult<T> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Word(w) => match w.parse() {
                Ok(v) => {
                    self.next();
                    Ok(v)
                }
                Err(_) => self.error(format!("expected an integer, found '{w}'")),
            },
            other => self.error(format!("expected an integer, found {}", Self::describe(other))),
        }
    }

    fn paren_int(&mut self) -> PResult<usize> {
        self.expect_punct('(')?;
        let n = self.integer()?;
        self.expect_punct(')')?;
        Ok(n)
    }

    fn paren_refs(&mut self) -> PResult<Vec<Ref>> {
        self.expect_punct('(')?;
        let mut out = vec![self.reference()?];
        while self.eat_punct(',') {
            out.push(self.reference()?);
        }
        self.expect_punct(')')?;
        Ok(out)
    }

    /// Raw source text of an element literal, up to a `,` `]` or `)` at
    /// depth zero.
    fn element(&mut self) -> PResult<String> {
        let start = self.peek().start;
        let mut end = start;
        let mut depth = 0usize;
        loop {
            match &self.peek().tok {
                Tok::Eof => break,
                Tok::Punct(',' | ']' | ')') if depth == 0 => break,
                Tok::Punct(';' | '{' | '}' | '=') => break,
                Tok::Punct('(' | '[') => depth += 1,
                Tok::Punct(')' | ']') => depth -= 1,
                _ => {}
            }
            end = self.next().end;
        }
        let text = self.src[start..end].trim().to_string();
        if text.is_empty() {
            return self.error("expected an element");
        }
        Ok(text)
    }

    fn element_list(&mut self) -> PResult<Vec<String>> {
        self.expect_punct('[')?;
        let mut out = Vec::new();
        if !self.at_punct(']') {
            out.push(self.element()?);
            while self.eat_punct(',') {
                out.push(self.element()?);
            }
        }
        self.expect_punct(']')?;
        Ok(out)
    }

    fn document(&mut self) -> PResult<Document> {
        let mut defs = Vec::new();
        while self.peek().tok != Tok::Eof {
            if self.eat_punct(';') {
                continue;
            }
            defs.push(self.definition()?);
        }
        Ok(Document { defs })
    }

    fn definition(&mut self) -> PResult<Def> {
        let span = self.peek().span;
        let (kw, _) = self.word()?;
        match kw.as_str() {
            "monoid" => {
                let (name, _) = self.word()?;
                self.expect_punct('=')?;
                Ok(Def {
                    name,
                    span,
                    kind: DefKind::Monoid(self.monoid_expr()?),
                })
            }
            "scheme" => {
                let (name, _) = self.word()?;
                self.expect_punct('=')?;
                Ok(Def {
                    name,
                    span,
                    kind: DefKind::Scheme(self.scheme_expr()?),
                })
            }
            "morphism" => {
                let (name, _) = self.word()?;
                self.expect_punct(':')?;
                let source = self.reference()?;
                if self.peek().tok != Tok::Arrow {
                    return self.error("expected '->'");
                }
                self.next();
                let target = self.reference()?;
                self.expect_punct('=')?;
                let images = self.element_list()?;
                Ok(Def {
                    name,
                    span,
                    kind: DefKind::Morphism(MorphismExpr { source, target, images }),
                })
            }
            other => Err(ParseError {
                span,
                message: format!("expected 'monoid', 'scheme' or 'morphism', found '{other}'"),
            }),
        }
    }

    fn monoid_expr(&mut self) -> PResult<MonoidExpr> {
        let (head, span) = self.word()?;
        let optional_int = |p: &mut Self| -> PResult<Option<usize>> {
            if p.at_punct('(') {
                Ok(Some(p.paren_int()?))
            } else {
                Ok(None)
            }
        };
        match head.as_str() {
            "table" => self.table(),
            "presented" => self.presented(),
            "lattice" => {
                self.expect_punct('[')?;
                let mut rows = Vec::new();
                loop {
                    self.expect_punct('[')?;
                    let mut v = Vec::new();
                    if !self.at_punct(']') {
                        v.push(self.integer()?);
                        while self.eat_punct(',') {
                            v.push(self.integer()?);
                        }
                    }
                    self.expect_punct(']')?;
                    rows.push(v);
                    if !self.eat_punct(',') {
                        break;
                    }
                }
                self.expect_punct(']')?;
                Ok(MonoidExpr::Lattice(rows))
            }
            "cyclic" => Ok(MonoidExpr::Cyclic(self.paren_int()?)),
            "dk" => Ok(MonoidExpr::Dk(self.paren_int()?)),
            "inf_cyclic" => Ok(MonoidExpr::InfCyclic(optional_int(self)?)),
            "nat" => Ok(MonoidExpr::Nat(optional_int(self)?)),
            "adjoin_zero" => {
                let mut r = self.paren_refs()?;
                if r.len() != 1 {
                    return Err(ParseError {
                        span,
                        message: format!("adjoin_zero takes 1 argument, got {}", r.len()),
                    });
                }
                Ok(MonoidExpr::AdjoinZero(r.remove(0)))
            }
            "product" => {
                let mut r = self.paren_refs()?;
                if r.len() != 2 {
                    return Err(ParseError {
                        span,
                        message: format!("product takes 2 arguments, got {}", r.len()),
                    });
                }
                let b = r.pop().expect("two");
                Ok(MonoidExpr::Product(r.pop().expect("two"), b))
            }
            other => Err(ParseError {
                span,
                message: format!("unknown monoid constructor '{other}'"),
            }),
        }
    }

    fn table(&mut self) -> PResult<MonoidExpr> {
        self.expect_punct('{')?;
        let mut rows = Vec::new();
        while !self.at_punct('}') {
            let (label, _) = self.word()?;
            self.expect_punct(':')?;
            let mut entries = Vec::new();
            while let Tok::Word(w) = &self.peek().tok {
                entries.push(w.clone());
                self.next();
            }
            rows.push((label, entries));
            if !self.eat_punct(';') {
                break;
            }
        }
        self.expect_punct('}')?;
        Ok(MonoidExpr::Table(rows))
    }

    fn presented(&mut self) -> PResult<MonoidExpr> {
        self.expect_punct('<')?;
        let mut generators = vec![self.word()?.0];
        while self.eat_punct(',') {
            generators.push(self.word()?.0);
        }
        let mut relations = Vec::new();
        if self.eat_punct('|') {
            loop {
                let lhs = self.word_expr()?;
                self.expect_punct('=')?;
                let rhs = self.word_expr()?;
                relations.push((lhs, rhs));
                if !self.eat_punct(',') {
                    break;
                }
            }
        }
        self.expect_punct('>')?;
        Ok(MonoidExpr::Presented { generators, relations })
    }

    fn word_expr(&mut self) -> PResult<WordExpr> {
        let mut out = Vec::new();
        if matches!(&self.peek().tok, Tok::Word(w) if w == "1") {
            self.next();
            return Ok(out);
        }
        loop {
            let (g, _) = self.word()?;
            let e = if self.eat_punct('^') { self.integer()? } else { 1 };
            out.push((g, e));
            let juxtaposed = matches!(self.peek().tok, Tok::Word(_));
            if !(self.eat_punct('*') || juxtaposed) {
                break;
            }
        }
        Ok(out)
    }

    fn scheme_expr(&mut self) -> PResult<SchemeExpr> {
        let (head, span) = self.word()?;
        match head.as_str() {
            "spec" => {
                let mut r = self.paren_refs()?;
                if r.len() != 1 {
                    return Err(ParseError {
                        span,
                        message: format!("spec takes 1 argument, got {}", r.len()),
                    });
                }
                Ok(SchemeExpr::Spec(r.remove(0)))
            }
            "p1" => Ok(SchemeExpr::P1),
            "a1" => Ok(SchemeExpr::A1),
            "gl" => Ok(SchemeExpr::Gl(self.paren_int()?)),
            "disjoint" => Ok(SchemeExpr::Disjoint(self.paren_refs()?)),
            "glue" => self.glue(),
            other => Err(ParseError {
                span,
                message: format!("unknown scheme constructor '{other}'"),
            }),
        }
    }

    fn glue(&mut self) -> PResult<SchemeExpr> {
        self.expect_punct('{')?;
        let (mut charts, mut overlaps) = (Vec::new(), Vec::new());
        while !self.at_punct('}') {
            let span = self.peek().span;
            let (kw, _) = self.word()?;
            match kw.as_str() {
                "chart" => {
                    let first = self.reference()?;
                    if self.eat_punct('=') {
                        charts.push(ChartDecl {
                            label: first.name,
                            monoid: self.reference()?,
                        });
                    } else {
                        charts.push(ChartDecl {
                            label: first.name.clone(),
                            monoid: first,
                        });
                    }
                }
                "overlap" => {
                    let mut pair = self.paren_refs()?;
                    if pair.len() != 2 {
                        return Err(ParseError {
                            span,
                            message: "an overlap names two charts".into(),
                        });
                    }
                    let j = pair.pop().expect("two");
                    let i = pair.pop().expect("two");
                    self.keyword("on")?;
                    self.keyword("D")?;
                    self.expect_punct('(')?;
                    let f_i = self.element()?;
                    self.expect_punct(',')?;
                    let f_j = self.element()?;
                    self.expect_punct(')')?;
                    self.keyword("via")?;
                    let theta = self.element_list()?;
                    overlaps.push(OverlapDecl {
                        i,
                        j,
                        f_i,
                        f_j,
                        theta,
                        span,
                    });
                }
                other => {
                    return Err(ParseError {
                        span,
                        message: format!("expected 'chart' or 'overlap', found '{other}'"),
                    })
                }
            }
            if !self.eat_punct(';') {
                break;
            }
        }
        self.expect_punct('}')?;
        Ok(SchemeExpr::Glue { charts, overlaps })
    }
}

pub fn parse(src: &str) -> Result<Document, ParseError> {
    let toks = lex(src)?;
    Parser { src, toks, pos: 0 }.document()
}

/// Parses a single monoid expression such as `dk(3)`.
pub fn parse_monoid_expr(src: &str) -> Result<MonoidExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.monoid_expr()?;
    if p.peek().tok != Tok::Eof {
        return p.error("trailing input");
    }
    Ok(e)
}

/// Parses a single scheme expression such as `gl(2)`.
pub fn parse_scheme_expr(src: &str) -> Result<SchemeExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.scheme_expr()?;
    if p.peek().tok != Tok::Eof {
        return p.error("trailing input");
    }
    Ok(e)
}

// ---- printer -------------------------------------------------------------

fn word_text(w: &WordExpr) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
        .collect();
    parts.join("*")
}

fn names(refs: &[Ref]) -> String {
    refs.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for MonoidExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidExpr::Table(rows) => {
                let rows: Vec<String> = rows.iter().map(|(l, r)| format!("{l}: {}", r.join(" "))).collect();
                write!(f, "table {{ {} }}", rows.join("; "))
            }
            MonoidExpr::Presented { generators, relations } => {
                write!(f, "presented <{}", generators.join(", "))?;
                if !relations.is_empty() {
                    let rels: Vec<String> = relations
                        .iter()
                        .map(|(a, b)| format!("{} = {}", word_text(a), word_text(b)))
                        .collect();
                    write!(f, " | {}", rels.join(", "))?;
                }
                write!(f, ">")
            }
            MonoidExpr::Lattice(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|v| format!("[{}]", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                write!(f, "lattice [{}]", rows.join(", "))
            }
            MonoidExpr::Cyclic(n) => write!(f, "cyclic({n})"),
            MonoidExpr::InfCyclic(None) => write!(f, "inf_cyclic"),
            MonoidExpr::InfCyclic(Some(n)) => write!(f, "inf_cyclic({n})"),
            MonoidExpr::Nat(None) => write!(f, "nat"),
            MonoidExpr::Nat(Some(n)) => write!(f, "nat({n})"),
            MonoidExpr::Dk(k) => write!(f, "dk({k})"),
            MonoidExpr::AdjoinZero(r) => write!(f, "adjoin_zero({})", r.name),
            MonoidExpr::Product(a, b) => write!(f, "product({}, {})", a.name, b.name),
        }
    }
}

impl fmt::Display for SchemeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeExpr::Spec(r) => write!(f, "spec({})", r.name),
            SchemeExpr::P1 => write!(f, "p1"),
            SchemeExpr::A1 => write!(f, "a1"),
            SchemeExpr::Gl(n) => write!(f, "gl({n})"),
            SchemeExpr::Disjoint(parts) => write!(f, "disjoint({})", names(parts)),
            SchemeExpr::Glue { charts, overlaps } => {
                writeln!(f, "glue {{")?;
                for c in charts {
                    writeln!(f, "    chart {} = {};", c.label, c.monoid.name)?;
                }
                for o in overlaps {
                    writeln!(
                        f,
                        "    overlap ({}, {}) on D({}, {}) via [{}];",
                        o.i.name,
                        o.j.name,
                        o.f_i,
                        o.f_j,
                        o.theta.join(", ")
                    )?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Display for Def {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DefKind::Monoid(m) => write!(f, "monoid {} = {m}", self.name),
            DefKind::Scheme(s) => write!(f, "scheme {} = {s}", self.name),
            DefKind::Morphism(m) => write!(
                f,
                "morphism {} : {} -> {} = [{}]",
                self.name,
                m.source.name,
                m.target.name,
                m.images.join(", ")
            ),
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defs {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_definitions() {
        let doc = parse("monoid M = dk(5)\nscheme X = p1").unwrap();
        assert_eq!(doc.defs[0].kind, DefKind::Monoid(MonoidExpr::Dk(5)));
        assert_eq!(doc.defs[1].kind, DefKind::Scheme(SchemeExpr::P1));
        assert_eq!(doc.defs[1].span.line, 2);
    }

    #[test]
    fn presentations_round_trip() {
        let doc = parse("monoid B = presented <x | x^2 = x>").unwrap();
        let printed = doc.to_string();
        assert_eq!(printed.trim(), "monoid B = presented <x | x^2 = x>");
        assert_eq!(parse(&printed).unwrap(), doc);
        let doc = parse("monoid C = presented <x, y | x y = y*x^2, y^3 = 1>").unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn glue_and_morphisms() {
        let src = "monoid N = nat\nmonoid Z = inf_cyclic\n\
                   scheme L = glue { chart U = N; chart V = N; overlap (U, V) on D((1), (1)) via [(1)]; }\n\
                   morphism f : N -> Z = [(1)]";
        let doc = parse(src).unwrap();
        match &doc.defs[2].kind {
            DefKind::Scheme(SchemeExpr::Glue { charts, overlaps }) => {
                assert_eq!(charts.len(), 2);
                assert_eq!(overlaps[0].f_i, "(1)");
                assert_eq!(overlaps[0].theta, vec!["(1)".to_string()]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("monoid M = dk(5)\nmonoid N = frob(2)").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (2, 12));
        let e = parse("monoid M = dk(x)").unwrap_err();
        assert_eq!(e.span.col, 15);
        let e = parse("scheme X = disjoint(A, B").unwrap_err();
        assert!(e.message.contains("')'"), "{e}");
        assert!(parse("monoid M = product(A)").is_err());
        assert!(parse("monoid M = dk(3) $").is_err());
    }

    #[test]
    fn tables_and_lattices() {
        let doc = parse("monoid T = table { e: e a; a: a a }\nmonoid L = lattice [[1, 0], [0, 1], [-1, -1]]").unwrap();
        assert_eq!(
            doc.defs[0].kind,
            DefKind::Monoid(MonoidExpr::Table(vec![
                ("e".into(), vec!["e".into(), "a".into()]),
                ("a".into(), vec!["a".into(), "a".into()])
            ]))
        );
        assert_eq!(
            doc.defs[1].kind,
            DefKind::Monoid(MonoidExpr::Lattice(vec![vec![1, 0], vec![0, 1], vec![-1, -1]]))
        );
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }
}
