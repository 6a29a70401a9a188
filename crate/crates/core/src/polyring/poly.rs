use std::cmp::Ordering;
use std::fmt;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Ambient polynomial ring `F_p[x_1..x_s]` together with its active order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: PrimeField,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, nvars: usize, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            nvars,
            order,
        }
    }

    pub fn with_order(self, order: MonomialOrder) -> Self {
        PolyRing { order, ..self }
    }

    /// True when both rings have the same field and variable count; the
    /// order may differ.
    pub fn compatible(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.nvars == other.nvars
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub monomial: Monomial,
}

/// Polynomial in canonical form: nonzero coefficients, distinct monomials,
/// strictly descending in `ring.order`. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: PolyRing) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: PolyRing, c: u64) -> Self {
        Self::monomial(ring, ring.field.reduce(c), Monomial::one(ring.nvars))
    }

    pub fn one(ring: PolyRing) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: PolyRing, i: usize) -> Self {
        assert!(i < ring.nvars, "variable index {i} out of range");
        Self::monomial(ring, 1, Monomial::var(ring.nvars, i))
    }

    pub fn monomial(ring: PolyRing, coeff: u32, monomial: Monomial) -> Self {
        debug_assert_eq!(monomial.nvars(), ring.nvars);
        let coeff = ring.field.reduce(coeff as u64);
        let terms = if coeff == 0 {
            Vec::new()
        } else {
            vec![Term { coeff, monomial }]
        };
        Polynomial { ring, terms }
    }

    /// Builds a polynomial from terms in any order, combining duplicates and
    /// dropping zero coefficients.
    pub fn from_terms<I>(ring: PolyRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Monomial)>,
    {
        let raw: Vec<Term> = terms
            .into_iter()
            .map(|(c, m)| {
                assert_eq!(m.nvars(), ring.nvars, "monomial arity mismatch");
                Term {
                    coeff: ring.field.reduce(c),
                    monomial: m,
                }
            })
            .collect();
        Self::normalize(ring, raw)
    }

    fn normalize(ring: PolyRing, mut raw: Vec<Term>) -> Self {
        let order = ring.order;
        raw.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        let field = ring.field;
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => {
                    if let Some(last) = terms.last() {
                        if last.coeff == 0 {
                            terms.pop();
                        }
                    }
                    terms.push(t);
                }
            }
        }
        if matches!(terms.last(), Some(t) if t.coeff == 0) {
            terms.pop();
        }
        Polynomial { ring, terms }
    }

    #[inline]
    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Maximum total degree over all terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.monomial.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).min()
    }

    pub fn constant_term(&self) -> u32 {
        self.terms
            .iter()
            .find(|t| t.monomial.is_one())
            .map_or(0, |t| t.coeff)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.monomial.degree();
                self.terms.iter().all(|t| t.monomial.degree() == d)
            }
        }
    }

    /// True when the polynomial is a single term with coefficient 1.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coeff == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    /// Same polynomial re-sorted for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.ring.order {
            return self.clone();
        }
        let ring = self.ring.with_order(order);
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial { ring, terms }
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate(&self, bound: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|t| t.monomial.degree() < bound)
                .cloned()
                .collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.ring == other.ring,
            "polynomials from different rings: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        self.check_ring(other);
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let adj = |c: u32| if negate_other { field.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match order.cmp(&a.monomial, &b.monomial) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: adj(b.coeff),
                        monomial: b.monomial.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a.coeff, adj(b.coeff));
                    if c != 0 {
                        out.push(Term {
                            coeff: c,
                            monomial: a.monomial.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|b| Term {
            coeff: adj(b.coeff),
            monomial: b.monomial.clone(),
        }));
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(t.coeff),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field;
        let c = field.reduce(c as u64);
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(t.coeff, c),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => {
                let inv = self
                    .ring
                    .field
                    .inv(c)
                    .expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    /// Multiplies by `coeff * monomial`. Term order is preserved because
    /// every supported order is multiplicative.
    pub fn mul_term(&self, coeff: u32, monomial: &Monomial) -> Result<Polynomial> {
        let field = self.ring.field;
        let coeff = field.reduce(coeff as u64);
        if coeff == 0 {
            return Ok(Polynomial::zero(self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                coeff: field.mul(t.coeff, coeff),
                monomial: t.monomial.mul(monomial)?,
            });
        }
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return large.mul_term(t.coeff, &t.monomial);
        }
        let field = self.ring.field;
        let mut raw = Vec::with_capacity(small.len() * large.len());
        for a in &small.terms {
            for b in &large.terms {
                raw.push(Term {
                    coeff: field.mul(a.coeff, b.coeff),
                    monomial: a.monomial.mul(&b.monomial)?,
                });
            }
        }
        Ok(Self::normalize(self.ring, raw))
    }

    pub fn pow(&self, mut e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Ring-homomorphic evaluation `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        self.substitute_with(images, &mut |p| Ok(p))
    }

    /// Like [`substitute`](Self::substitute), but passes every intermediate
    /// power and partial product through `reduce`. With `reduce` a normal
    /// form modulo an ideal, the result is the evaluation in the quotient.
    pub fn substitute_with(
        &self,
        images: &[Polynomial],
        reduce: &mut dyn FnMut(Polynomial) -> Result<Polynomial>,
    ) -> Result<Polynomial> {
        if images.len() != self.ring.nvars {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars,
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring,
            None => {
                // no variables: only constants
                return Ok(self.clone());
            }
        };
        if images.iter().any(|p| p.ring != target) {
            return Err(Error::InvalidArgument(
                "substitution images live in different rings".into(),
            ));
        }
        // per-variable power cache, powers[i][e] = images[i]^e
        let mut max_exp = vec![0u32; self.ring.nvars];
        for t in &self.terms {
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.ring.nvars);
        for (i, &m) in max_exp.iter().enumerate() {
            let mut row = vec![Polynomial::one(target)];
            for e in 1..=m as usize {
                let next = if e == 1 {
                    reduce(images[i].clone())?
                } else {
                    reduce(row[e - 1].mul(&row[1])?)?
                };
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff as u64);
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                if e > 0 {
                    prod = reduce(prod.mul(&powers[i][e as usize])?)?;
                    if prod.is_zero() {
                        break;
                    }
                }
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// Exact division by `divisor`, `None` when it does not divide.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero {
                p: self.ring.field.characteristic(),
            });
        }
        if !self.ring.order.is_global() {
            return Err(Error::InvalidArgument(
                "exact division requires a global order".into(),
            ));
        }
        let field = self.ring.field;
        let lead = divisor.leading_term().unwrap();
        let lead_inv = field.inv(lead.coeff)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.leading_term() {
            let Some(u) = lead.monomial.quotient_of(&t.monomial) else {
                return Ok(None);
            };
            let c = field.mul(t.coeff, lead_inv);
            rem = rem.sub(&divisor.mul_term(c, &u)?);
            quot.push((c as u64, u));
        }
        Ok(Some(Polynomial::from_terms(self.ring, quot)))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if t.monomial.is_one() {
                out.push_str(&t.coeff.to_string());
            } else if t.coeff == 1 {
                out.push_str(&t.monomial.fmt_with(names));
            } else {
                out.push_str(&format!("{}*{}", t.coeff, t.monomial.fmt_with(names)));
            }
        }
        out
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.ring.nvars)))
    }
}
