use super::lexer::{Tok, Token};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, PolyRing, Polynomial};

/// Polynomials built while parsing are capped so that hostile input such as
/// `(x + y + z)^100000` fails fast instead of exhausting memory.
const MAX_TERMS: usize = 200_000;
const MAX_PRODUCT_WORK: usize = 20_000_000;

pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    pub line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], line: usize, line_len: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_column: line_len + 1,
        }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn syntax(&self, message: impl Into<String>) -> Error {
        let (column, token) = match self.toks.get(self.pos) {
            Some(t) => (t.column, t.tok.text()),
            None => (self.end_column, "end of line".to_string()),
        };
        Error::Syntax {
            line: self.line,
            column,
            token,
            message: message.into(),
        }
    }

    pub fn semantic(&self, message: impl Into<String>) -> Error {
        Error::Semantic {
            line: self.line,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{}`", tok.text())))
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(format!("expected `{kw}`"))),
        }
    }

    pub fn expect_name(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !super::is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    pub fn expect_int(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }
}

/// Variables in scope while parsing a polynomial.
pub(crate) struct PolyScope<'a> {
    pub ring: PolyRing,
    pub names: &'a [String],
    pub ring_name: &'a str,
}

fn guard(cur: &Cursor, p: Polynomial) -> Result<Polynomial> {
    if p.len() > MAX_TERMS {
        return Err(cur.semantic(format!("polynomial exceeds {MAX_TERMS} terms")));
    }
    Ok(p)
}

fn checked_mul(cur: &Cursor, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.len().saturating_mul(b.len()) > MAX_PRODUCT_WORK {
        return Err(cur.semantic("polynomial product too large"));
    }
    let p = a.mul(b).map_err(|e| cur.semantic(e.to_string()))?;
    guard(cur, p)
}

fn checked_pow(cur: &Cursor, base: &Polynomial, mut e: u32) -> Result<Polynomial> {
    if let [t] = base.terms() {
        let m = t
            .monomial
            .pow(e)
            .map_err(|err| cur.semantic(err.to_string()))?;
        let c = base.ring().field.pow(t.coeff, e as u64);
        return Ok(Polynomial::monomial(base.ring(), c, m));
    }
    let mut acc = Polynomial::one(base.ring());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = checked_mul(cur, &acc, &sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = checked_mul(cur, &sq, &sq)?;
        }
    }
    Ok(acc)
}

fn reduce_literal(digits: &str, p: u64) -> u64 {
    digits
        .bytes()
        .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p)
}

/// `expr := ['-'] term (('+' | '-') term)*`; stops before `,`, `)` or the
/// end of the line.
pub(crate) fn parse_expr(cur: &mut Cursor, scope: &PolyScope) -> Result<Polynomial> {
    let negate = cur.eat(&Tok::Minus);
    let mut acc = parse_term(cur, scope)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match cur.peek() {
            Some(Tok::Plus) => {
                cur.bump();
                let t = parse_term(cur, scope)?;
                acc = guard(cur, acc.add(&t))?;
            }
            Some(Tok::Minus) => {
                cur.bump();
                let t = parse_term(cur, scope)?;
                acc = guard(cur, acc.sub(&t))?;
            }
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                return Err(cur.syntax("juxtaposition is not multiplication; use `*`"));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(cur: &mut Cursor, scope: &PolyScope) -> Result<Polynomial> {
    let mut acc = parse_factor(cur, scope)?;
    while cur.eat(&Tok::Star) {
        let f = parse_factor(cur, scope)?;
        acc = checked_mul(cur, &acc, &f)?;
    }
    Ok(acc)
}

fn parse_factor(cur: &mut Cursor, scope: &PolyScope) -> Result<Polynomial> {
    let base = parse_atom(cur, scope)?;
    if !cur.eat(&Tok::Caret) {
        return Ok(base);
    }
    let digits = cur.expect_int("an exponent")?;
    let e: u32 = digits
        .parse()
        .map_err(|_| cur.semantic(format!("exponent {digits} is too large")))?;
    if cur.peek() == Some(&Tok::Caret) {
        return Err(cur.syntax("chained exponents need parentheses"));
    }
    checked_pow(cur, &base, e)
}

fn parse_atom(cur: &mut Cursor, scope: &PolyScope) -> Result<Polynomial> {
    let ring = scope.ring;
    match cur.peek().cloned() {
        Some(Tok::Int(digits)) => {
            cur.bump();
            let c = reduce_literal(&digits, ring.field.characteristic() as u64);
            Ok(Polynomial::constant(ring, c))
        }
        Some(Tok::Ident(name)) => match scope.names.iter().position(|v| *v == name) {
            Some(i) => {
                cur.bump();
                Ok(Polynomial::monomial(ring, 1, Monomial::var(ring.nvars, i)))
            }
            None => Err(cur.semantic(format!(
                "`{name}` is not a variable of ring {}",
                scope.ring_name
            ))),
        },
        Some(Tok::LParen) => {
            cur.bump();
            let inner = parse_expr(cur, scope)?;
            cur.expect(Tok::RParen)?;
            Ok(inner)
        }
        _ => Err(cur.syntax("expected a polynomial")),
    }
}

/// `( poly (, poly)* )`, also accepting `()` for the zero ideal.
pub(crate) fn parse_poly_list(cur: &mut Cursor, scope: &PolyScope) -> Result<Vec<Polynomial>> {
    cur.expect(Tok::LParen)?;
    let mut out = Vec::new();
    if cur.eat(&Tok::RParen) {
        return Ok(out);
    }
    loop {
        out.push(parse_expr(cur, scope)?);
        if cur.eat(&Tok::RParen) {
            return Ok(out);
        }
        cur.expect(Tok::Comma)?;
    }
}
