//! Reduced Gröbner bases over prime fields and the invariants read off
//! their leading monomials.

mod buchberger;
mod dimension;
mod reduce;
mod staircase;

pub use staircase::{Staircase, StaircaseCount, MATERIALIZE_LIMIT};

use crate::error::Result;
use crate::polyring::{MonomialOrder, PolyRing, Polynomial};
use reduce::Divisors;

/// Limits for a Buchberger run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub max_basis_size: usize,
    pub max_degree: u32,
    /// Per-polynomial term cap, guards against dense blow-up.
    pub max_terms: usize,
    /// Work in `k[x]/m^n`: drop every term of total degree `>= n`.
    /// Only valid together with [`MonomialOrder::LocalDegRevLex`].
    pub truncation: Option<u32>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_basis_size: 10_000,
            max_degree: 4_096,
            max_terms: 2_000_000,
            truncation: None,
        }
    }
}

impl GbConfig {
    pub fn truncated(&self, n: u32) -> GbConfig {
        GbConfig {
            truncation: Some(n),
            ..self.clone()
        }
    }
}

/// A reduced Gröbner basis: monic generators, none with a monomial
/// divisible by another generator's leading monomial, sorted by leading
/// monomial in ascending order. The zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    truncation: Option<u32>,
}

/// Reduced Gröbner basis of the ideal spanned by `generators` using the
/// default limits.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(generators, order, &GbConfig::default())
}

pub fn buchberger_with(
    generators: &[Polynomial],
    order: MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis> {
    let gb = buchberger::run(generators, order, cfg)?;
    #[cfg(debug_assertions)]
    if gb.generators.len() <= 32 && gb.generators.iter().map(|g| g.len()).sum::<usize>() <= 2_000 {
        debug_assert!(gb.is_groebner(), "Buchberger fixpoint violated");
    }
    Ok(gb)
}

impl GroebnerBasis {
    fn unit(ring: PolyRing, truncation: Option<u32>) -> Self {
        GroebnerBasis {
            ring,
            generators: vec![Polynomial::one(ring)],
            truncation,
        }
    }

    fn from_minimal(ring: PolyRing, minimal: Vec<Polynomial>, truncation: Option<u32>) -> Self {
        GroebnerBasis {
            ring,
            generators: buchberger::interreduce(minimal, truncation),
            truncation,
        }
    }

    /// Basis of the zero ideal.
    pub fn zero(ring: PolyRing) -> Self {
        GroebnerBasis {
            ring,
            generators: Vec::new(),
            truncation: None,
        }
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// Always true: the public constructors only return reduced bases.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn is_unit(&self) -> bool {
        self.generators
            .first()
            .is_some_and(|g| g.leading_monomial().unwrap().is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &crate::polyring::Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().unwrap())
    }

    /// Remainder of `f` on division by the basis. Idempotent; zero exactly
    /// when `f` lies in the ideal (modulo the truncation, if any).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(
            f.ring().compatible(&self.ring),
            "normal_form: polynomial ring does not match the basis"
        );
        let f = f.with_order(self.ring.order);
        reduce::reduce(&f, &Divisors::new(&self.generators), self.truncation)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks the Buchberger criterion: every S-polynomial of a pair of
    /// generators reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let div = Divisors::new(&self.generators);
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let (f, g) = (&self.generators[i], &self.generators[j]);
                if f.leading_monomial()
                    .unwrap()
                    .is_coprime(g.leading_monomial().unwrap())
                {
                    continue;
                }
                let s = reduce::s_polynomial(f, g, self.truncation);
                if !reduce::reduce(&s, &div, self.truncation).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
