use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

/// Monomial keyed by a runtime order, so a `BTreeMap` keeps terms sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Key {
    order: MonomialOrder,
    mono: Monomial,
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&self.mono, &other.mono)
    }
}

/// Reducers: monic polynomials with their leading monomials.
pub(crate) struct Divisors<'a> {
    polys: Vec<&'a Polynomial>,
}

impl<'a> Divisors<'a> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        debug_assert!(polys.iter().all(|p| p.leading_coeff() == Some(1)));
        Divisors { polys }
    }

    fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        self.polys
            .iter()
            .copied()
            .find(|p| p.leading_monomial().unwrap().divides(m))
    }
}

/// Full reduction of `f` by monic `divisors`. With `truncation = Some(n)`
/// every term of total degree `>= n` is discarded as it appears.
///
/// Exponent overflow cannot occur for degree-compatible orders (reduction
/// never raises the total degree); for lex it would require exponents near
/// 2^32 and panics.
pub(crate) fn reduce(
    f: &Polynomial,
    divisors: &Divisors<'_>,
    truncation: Option<u32>,
) -> Polynomial {
    let ring: PolyRing = f.ring();
    let field = ring.field;
    let order = ring.order;
    let keep = |m: &Monomial| truncation.is_none_or(|n| m.degree() < n);

    let mut work: BTreeMap<Key, u32> = BTreeMap::new();
    for t in f.terms() {
        if keep(&t.monomial) {
            work.insert(
                Key {
                    order,
                    mono: t.monomial.clone(),
                },
                t.coeff,
            );
        }
    }
    let mut rem: Vec<(u64, Monomial)> = Vec::new();
    while let Some((key, c)) = work.pop_last() {
        match divisors.find(&key.mono) {
            None => rem.push((c as u64, key.mono)),
            Some(g) => {
                let lead = g.leading_monomial().unwrap();
                let u = lead.quotient_of(&key.mono).unwrap();
                let factor = field.neg(c);
                for t in &g.terms()[1..] {
                    let m = t
                        .monomial
                        .mul(&u)
                        .expect("exponent overflow during reduction");
                    if !keep(&m) {
                        continue;
                    }
                    let delta = field.mul(factor, t.coeff);
                    let k = Key { order, mono: m };
                    match work.get_mut(&k) {
                        Some(v) => {
                            *v = field.add(*v, delta);
                            if *v == 0 {
                                work.remove(&k);
                            }
                        }
                        None => {
                            work.insert(k, delta);
                        }
                    }
                }
            }
        }
    }
    // `rem` was produced in descending order already
    let p = Polynomial::from_terms(ring, rem);
    debug_assert!(p
        .terms()
        .windows(2)
        .all(|w| order.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
    p
}

/// S-polynomial of two monic polynomials.
pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial, truncation: Option<u32>) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let uf = lf.quotient_of(&l).unwrap();
    let ug = lg.quotient_of(&l).unwrap();
    let tail = |p: &Polynomial, u: &Monomial| -> Polynomial {
        let terms = p.terms()[1..].iter().filter_map(|t: &Term| {
            let m = t
                .monomial
                .mul(u)
                .expect("exponent overflow in S-polynomial");
            truncation
                .is_none_or(|n| m.degree() < n)
                .then_some((t.coeff as u64, m))
        });
        Polynomial::from_terms(p.ring(), terms.collect::<Vec<_>>())
    };
    tail(f, &uf).sub(&tail(g, &ug))
}
