//! The `.lad` fixture language.
//!
//! ```text
//! # Example: a cusp times a fat line, with Frobenius-like maps
//! field 2
//! ring R vars y
//! ring S vars x y w s mod (s^6, y^3 + x^2)
//! endo phi on R : y -> y^3
//! endo psi on S : x -> x^3 + s^3, y -> y^3, w -> w^5 + x^2, s -> x*s^2
//! map f : R -> S : y -> y
//! assume flat f
//! assume cm S
//! ```
//!
//! One statement per line, `#` starts a comment. Coefficients are
//! nonnegative literals reduced mod `p`; `a - b` is sugar for
//! `a + (p - 1)*b`. Multiplication needs an explicit `*`.

mod lexer;
mod parser;

use std::fmt;
use std::sync::Arc;

use crate::dynamics::Endomorphism;
use crate::error::{Error, Result};
use crate::ideals::{LocalIdeal, LocalRingPresentation};
use crate::polyring::{Polynomial, PrimeField};

use lexer::{lex_line, Tok};
use parser::{parse_expr, parse_poly_list, Cursor, PolyScope};

const KEYWORDS: &[&str] = &[
    "field", "ring", "vars", "mod", "endo", "on", "map", "assume", "flat", "cm",
];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub presentation: Arc<LocalRingPresentation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoDecl {
    pub name: String,
    pub ring: String,
    pub endo: Endomorphism,
}

/// `images[i]` is the image of the source ring's `i`-th variable, written in
/// the target ring's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionKind {
    /// `assume flat MAP`
    Flat,
    /// `assume cm RING`
    CohenMacaulay,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assumption {
    pub kind: AssumptionKind,
    pub subject: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureFile {
    pub field: Option<PrimeField>,
    pub rings: Vec<RingDecl>,
    pub endos: Vec<EndoDecl>,
    pub maps: Vec<MapDecl>,
    pub assumptions: Vec<Assumption>,
}

impl FixtureFile {
    pub fn is_empty(&self) -> bool {
        self.field.is_none()
            && self.rings.is_empty()
            && self.endos.is_empty()
            && self.maps.is_empty()
            && self.assumptions.is_empty()
    }

    pub fn ring(&self, name: &str) -> Option<&RingDecl> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn endo(&self, name: &str) -> Option<&EndoDecl> {
        self.endos.iter().find(|e| e.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn assumes(&self, kind: AssumptionKind, subject: &str) -> bool {
        self.assumptions
            .iter()
            .any(|a| a.kind == kind && a.subject == subject)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.ring(name).is_some() || self.endo(name).is_some() || self.map(name).is_some()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a whole fixture file.
pub fn parse(text: &str) -> Result<FixtureFile> {
    let mut file = FixtureFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let toks = lex_line(line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line_no, line.chars().count());
        statement(&mut cur, &mut file)?;
        cur.expect_end()?;
    }
    Ok(file)
}

fn statement(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    let kw = match cur.peek() {
        Some(Tok::Ident(s)) => s.clone(),
        _ => return Err(cur.syntax("expected a statement keyword")),
    };
    match kw.as_str() {
        "field" => {
            cur.bump();
            field_stmt(cur, file)
        }
        "ring" => {
            cur.bump();
            ring_stmt(cur, file)
        }
        "endo" => {
            cur.bump();
            endo_stmt(cur, file)
        }
        "map" => {
            cur.bump();
            map_stmt(cur, file)
        }
        "assume" => {
            cur.bump();
            assume_stmt(cur, file)
        }
        _ => Err(cur.syntax("expected `field`, `ring`, `endo`, `map` or `assume`")),
    }
}

fn field_stmt(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    let digits = cur.expect_int("a characteristic")?;
    if file.field.is_some() {
        return Err(cur.semantic("field declared twice"));
    }
    let p: u64 = digits
        .parse()
        .map_err(|_| cur.semantic(format!("{digits} is too large for a characteristic")))?;
    if !crate::polyring::is_prime(p) {
        return Err(cur.semantic(format!("{p} is not prime")));
    }
    let field = PrimeField::new(p).map_err(|e| cur.semantic(e.to_string()))?;
    file.field = Some(field);
    Ok(())
}

fn require_field(cur: &Cursor, file: &FixtureFile) -> Result<PrimeField> {
    file.field
        .ok_or_else(|| cur.semantic("a `field` declaration must come first"))
}

fn fresh_name(cur: &mut Cursor, file: &FixtureFile, what: &str) -> Result<String> {
    let name = cur.expect_name(what)?;
    if file.name_taken(&name) {
        return Err(cur.semantic(format!("`{name}` is already declared")));
    }
    Ok(name)
}

fn ring_stmt(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    let field = require_field(cur, file)?;
    let name = fresh_name(cur, file, "a ring name")?;
    cur.expect_keyword("vars")?;
    let mut vars = vec![cur.expect_name("a variable name")?];
    while let Some(Tok::Ident(s)) = cur.peek() {
        if s == "mod" {
            break;
        }
        let v = cur.expect_name("a variable name")?;
        if vars.contains(&v) {
            return Err(cur.semantic(format!("variable `{v}` listed twice")));
        }
        vars.push(v);
    }
    let regular = LocalRingPresentation::regular(field, vars.clone())
        .map_err(|e| cur.semantic(e.to_string()))?;
    let mut defining = Vec::new();
    if cur.eat(&Tok::Ident("mod".into())) {
        let scope = PolyScope {
            ring: regular.ring(),
            names: &vars,
            ring_name: &name,
        };
        defining = parse_poly_list(cur, &scope)?;
    }
    let presentation = LocalRingPresentation::new(field, vars, defining)
        .map_err(|e| cur.semantic(e.to_string()))?;
    file.rings.push(RingDecl {
        name,
        presentation: Arc::new(presentation),
    });
    Ok(())
}

fn lookup_ring<'f>(cur: &mut Cursor, file: &'f FixtureFile) -> Result<&'f RingDecl> {
    let name = cur.expect_name("a ring name")?;
    file.ring(&name)
        .ok_or_else(|| cur.semantic(format!("ring `{name}` is not declared")))
}

/// `v -> poly (, v -> poly)*`, one image per source variable.
fn images(
    cur: &mut Cursor,
    source: &LocalRingPresentation,
    source_name: &str,
    scope: &PolyScope,
) -> Result<Vec<Polynomial>> {
    let mut slots: Vec<Option<Polynomial>> = vec![None; source.nvars()];
    loop {
        let v = cur.expect_name("a variable name")?;
        let i = source.var_index(&v).ok_or_else(|| {
            cur.semantic(format!("`{v}` is not a variable of ring {source_name}"))
        })?;
        cur.expect(Tok::Arrow)?;
        let p = parse_expr(cur, scope)?;
        if slots[i].is_some() {
            return Err(cur.semantic(format!("image of `{v}` given twice")));
        }
        slots[i] = Some(p);
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                cur.semantic(format!(
                    "missing image for variable `{}`",
                    source.variables()[i]
                ))
            })
        })
        .collect()
}

fn endo_stmt(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    require_field(cur, file)?;
    let name = fresh_name(cur, file, "an endomorphism name")?;
    cur.expect_keyword("on")?;
    let ring = lookup_ring(cur, file)?.clone();
    cur.expect(Tok::Colon)?;
    let pres = &ring.presentation;
    let scope = PolyScope {
        ring: pres.ring(),
        names: pres.variables(),
        ring_name: &ring.name,
    };
    let imgs = images(cur, pres, &ring.name, &scope)?;
    let endo =
        Endomorphism::new(Arc::clone(pres), imgs).map_err(|e| cur.semantic(e.to_string()))?;
    file.endos.push(EndoDecl {
        name,
        ring: ring.name,
        endo,
    });
    Ok(())
}

fn map_stmt(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    require_field(cur, file)?;
    let name = fresh_name(cur, file, "a map name")?;
    cur.expect(Tok::Colon)?;
    let source = lookup_ring(cur, file)?.clone();
    cur.expect(Tok::Arrow)?;
    let target = lookup_ring(cur, file)?.clone();
    cur.expect(Tok::Colon)?;
    let tp = &target.presentation;
    let scope = PolyScope {
        ring: tp.ring(),
        names: tp.variables(),
        ring_name: &target.name,
    };
    let imgs = images(cur, &source.presentation, &source.name, &scope)?;
    for p in &imgs {
        if p.constant_term() != 0 {
            return Err(cur.semantic(format!(
                "image {} is not in the maximal ideal of {}",
                tp.fmt_poly(p),
                target.name
            )));
        }
    }
    file.maps.push(MapDecl {
        name,
        source: source.name,
        target: target.name,
        images: imgs,
    });
    Ok(())
}

fn assume_stmt(cur: &mut Cursor, file: &mut FixtureFile) -> Result<()> {
    let kind = match cur.peek() {
        Some(Tok::Ident(s)) if s == "flat" => AssumptionKind::Flat,
        Some(Tok::Ident(s)) if s == "cm" => AssumptionKind::CohenMacaulay,
        _ => return Err(cur.syntax("expected `flat` or `cm`")),
    };
    cur.bump();
    let subject = cur.expect_name("a name")?;
    let known = match kind {
        AssumptionKind::Flat => file.map(&subject).is_some(),
        AssumptionKind::CohenMacaulay => file.ring(&subject).is_some(),
    };
    if !known {
        let what = match kind {
            AssumptionKind::Flat => "map",
            AssumptionKind::CohenMacaulay => "ring",
        };
        return Err(cur.semantic(format!("{what} `{subject}` is not declared")));
    }
    if !file.assumes(kind, &subject) {
        file.assumptions.push(Assumption { kind, subject });
    }
    Ok(())
}

/// Parses a single polynomial in the variables of `ring`.
pub fn parse_polynomial(text: &str, ring: &LocalRingPresentation) -> Result<Polynomial> {
    let toks = lex_line(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count());
    let scope = PolyScope {
        ring: ring.ring(),
        names: ring.variables(),
        ring_name: "in scope",
    };
    let p = parse_expr(&mut cur, &scope)?;
    cur.expect_end()?;
    Ok(p)
}

/// Parses `"(g1, g2, ...)"` into an ideal of `ring`. Empty parentheses give
/// the zero ideal.
pub fn parse_ideal(text: &str, ring: &Arc<LocalRingPresentation>) -> Result<LocalIdeal> {
    let toks = lex_line(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text.chars().count());
    let scope = PolyScope {
        ring: ring.ring(),
        names: ring.variables(),
        ring_name: "in scope",
    };
    let gens = parse_poly_list(&mut cur, &scope)?;
    cur.expect_end()?;
    LocalIdeal::new(Arc::clone(ring), gens).map_err(|e| Error::Semantic {
        line: 1,
        message: e.to_string(),
    })
}

fn join_polys(ring: &LocalRingPresentation, polys: &[Polynomial]) -> String {
    polys
        .iter()
        .map(|p| ring.fmt_poly(p))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_images(
    f: &mut fmt::Formatter<'_>,
    source: &LocalRingPresentation,
    target: &LocalRingPresentation,
    images: &[Polynomial],
) -> fmt::Result {
    let parts: Vec<String> = source
        .variables()
        .iter()
        .zip(images)
        .map(|(v, p)| format!("{v} -> {}", target.fmt_poly(p)))
        .collect();
    f.write_str(&parts.join(", "))
}

/// Canonical pretty-printer; its output reparses to an equal file.
impl fmt::Display for FixtureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(field) = self.field {
            writeln!(f, "field {}", field.characteristic())?;
        }
        for r in &self.rings {
            let p = &r.presentation;
            write!(f, "ring {} vars {}", r.name, p.variables().join(" "))?;
            if !p.defining_ideal().is_empty() {
                write!(f, " mod ({})", join_polys(p, p.defining_ideal()))?;
            }
            writeln!(f)?;
        }
        for e in &self.endos {
            let p = e.endo.ring();
            write!(f, "endo {} on {} : ", e.name, e.ring)?;
            write_images(f, p, p, e.endo.images())?;
            writeln!(f)?;
        }
        for m in &self.maps {
            let (Some(s), Some(t)) = (self.ring(&m.source), self.ring(&m.target)) else {
                return Err(fmt::Error);
            };
            write!(f, "map {} : {} -> {} : ", m.name, m.source, m.target)?;
            write_images(f, &s.presentation, &t.presentation, &m.images)?;
            writeln!(f)?;
        }
        for a in &self.assumptions {
            let kw = match a.kind {
                AssumptionKind::Flat => "flat",
                AssumptionKind::CohenMacaulay => "cm",
            };
            writeln!(f, "assume {kw} {}", a.subject)?;
        }
        Ok(())
    }
}
