use std::cmp::Ordering;

use super::monomial::Monomial;

/// Monomial orders. Variable precedence follows declaration order
/// (`x_1 > x_2 > ...`).
///
/// `LocalDegRevLex` ranks lower total degree as *larger* (ties broken by
/// degrevlex). It is not a well-order on all monomials, so it is only valid
/// inside computations truncated at a fixed total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    LocalDegRevLex,
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    // the last variable with differing exponent decides; smaller exponent wins
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a.exponents(), b.exponents())),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::LocalDegRevLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| revlex_tail(a.exponents(), b.exponents())),
        }
    }

    /// True when 1 is the smallest monomial.
    pub fn is_global(self) -> bool {
        !matches!(self, MonomialOrder::LocalDegRevLex)
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::LocalDegRevLex => "local-degrevlex",
        }
    }
}
