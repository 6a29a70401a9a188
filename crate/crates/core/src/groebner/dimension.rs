use super::{buchberger_with, GbConfig, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial};

impl GroebnerBasis {
    /// Krull dimension of the affine quotient: the largest set of variables
    /// such that no leading monomial is supported inside it.
    pub fn krull_dim(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UndefinedDimension);
        }
        if !self.ring.order.is_global() {
            return Err(Error::InvalidArgument(
                "dimension is read off global orders only".into(),
            ));
        }
        let n = self.ring.nvars;
        if n > 24 {
            return Err(Error::ResourceExceeded(format!(
                "independent-set search over {n} variables"
            )));
        }
        let supports: Vec<u32> = self
            .leading_monomials()
            .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u32..(1u32 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Basis of `(I : g)`, via `I ∩ (g)` computed by eliminating an
    /// auxiliary variable from `t*I + (1 - t)*g`.
    pub fn ideal_quotient(&self, g: &Polynomial) -> Result<GroebnerBasis> {
        self.ideal_quotient_with(g, &GbConfig::default())
    }

    pub fn ideal_quotient_with(&self, g: &Polynomial, cfg: &GbConfig) -> Result<GroebnerBasis> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("ideal quotient by zero".into()));
        }
        if self.truncation.is_some() {
            return Err(Error::InvalidArgument(
                "ideal quotient of a truncated basis".into(),
            ));
        }
        let g = g.with_order(self.ring.order);
        if g.is_constant() || self.is_zero_ideal() || self.is_unit() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars;
        let ext = PolyRing::new(self.ring.field, n + 1, MonomialOrder::Lex);
        let lift = |p: &Polynomial, t_exp: u32| -> Polynomial {
            Polynomial::from_terms(
                ext,
                p.terms()
                    .iter()
                    .map(|t| {
                        let mut e = Vec::with_capacity(n + 1);
                        e.push(t_exp);
                        e.extend_from_slice(t.monomial.exponents());
                        (t.coeff as u64, Monomial::from_exponents(e).unwrap())
                    })
                    .collect::<Vec<_>>(),
            )
        };
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|f| lift(f, 1)).collect();
        // (1 - t) * g
        gens.push(lift(&g, 0).sub(&lift(&g, 1)));
        let elim = buchberger_with(
            &gens,
            MonomialOrder::Lex,
            &GbConfig {
                truncation: None,
                ..cfg.clone()
            },
        )?;

        let base = self.ring;
        let mut quotients = Vec::new();
        for h in elim.generators() {
            if h.terms().iter().any(|t| t.monomial.exponents()[0] != 0) {
                continue;
            }
            let projected = Polynomial::from_terms(
                base,
                h.terms()
                    .iter()
                    .map(|t| {
                        (
                            t.coeff as u64,
                            Monomial::from_exponents(t.monomial.exponents()[1..].to_vec()).unwrap(),
                        )
                    })
                    .collect::<Vec<_>>(),
            );
            let q = projected.exact_div(&g)?.ok_or_else(|| {
                Error::ValidationFailed("intersection element not divisible by g".into())
            })?;
            quotients.push(q);
        }
        if quotients.is_empty() {
            return Ok(GroebnerBasis::zero(base));
        }
        buchberger_with(&quotients, base.order, cfg)
    }
}
