//! Local colength at the origin for ideals of presented local rings.
//!
//! A presentation `F_p[[x_1..x_s]]/I` is never expanded as a power series
//! ring. Every ideal here is compared against powers of the maximal ideal
//! `m` in the polynomial ring instead. Write `K = I + J` and
//! `D_N = dim k[x]/(K + m^N)`. If `D_N = D_{N+1}`, then
//! `m^N ⊆ K + m^{N+1}`, and by Nakayama `m^N` lies in `K` locally, so `D_N`
//! is the exact local length. Two routes reach such an `N`:
//!
//! * **global**: if the degrevlex basis of `K` has a finite staircase and
//!   every variable is nilpotent modulo `K`, then `K` is `m`-primary in the
//!   polynomial ring. With `x_i^{e_i} ∈ K`, `m^N ⊆ K` for
//!   `N = Σ(e_i - 1) + 1`, so `D_N = D_{N+1}` equals the staircase count;
//! * **truncation**: otherwise `D_N` is computed for `N = N_0, N_0 + 1, …`
//!   in `k[x]/m^N` under a local degree order, up to a cap.

use std::fmt;
use std::sync::{Arc, OnceLock};

use log::info;

use crate::error::{Error, ErrorKind, Result};
use crate::groebner::{buchberger_with, GbConfig, GroebnerBasis, StaircaseCount};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField};

/// `F_p[[x_1..x_s]]/I` with `I` generated by polynomials without constant
/// term.
#[derive(Debug)]
pub struct LocalRingPresentation {
    field: PrimeField,
    variables: Vec<String>,
    defining_ideal: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
}

impl Clone for LocalRingPresentation {
    fn clone(&self) -> Self {
        LocalRingPresentation {
            field: self.field,
            variables: self.variables.clone(),
            defining_ideal: self.defining_ideal.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl PartialEq for LocalRingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.variables == other.variables
            && self.defining_ideal == other.defining_ideal
    }
}

impl Eq for LocalRingPresentation {}

fn check_in_maximal_ideal(p: &Polynomial, names: &[String], what: &str) -> Result<()> {
    if p.constant_term() != 0 {
        return Err(Error::ValidationFailed(format!(
            "{what} {} has a nonzero constant term",
            p.fmt_with(names)
        )));
    }
    Ok(())
}

impl LocalRingPresentation {
    pub fn new(
        field: PrimeField,
        variables: Vec<String>,
        defining_ideal: Vec<Polynomial>,
    ) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        let ring = PolyRing::new(field, variables.len(), MonomialOrder::DegRevLex);
        let mut gens = Vec::with_capacity(defining_ideal.len());
        for g in defining_ideal {
            if !g.ring().compatible(&ring) {
                return Err(Error::InvalidArgument(
                    "defining generator from a different ring".into(),
                ));
            }
            check_in_maximal_ideal(&g, &variables, "defining generator")?;
            gens.push(g.with_order(MonomialOrder::DegRevLex));
        }
        Ok(LocalRingPresentation {
            field,
            variables,
            defining_ideal: gens,
            basis: OnceLock::new(),
        })
    }

    /// Power series ring in the given variables.
    pub fn regular(field: PrimeField, variables: Vec<String>) -> Result<Self> {
        Self::new(field, variables, Vec::new())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn defining_ideal(&self) -> &[Polynomial] {
        &self.defining_ideal
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::new(self.field, self.variables.len(), MonomialOrder::DegRevLex)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.ring(), i)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn fmt_poly(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.variables)
    }

    /// Degrevlex basis of the defining ideal, computed once.
    pub fn defining_basis(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = if self.defining_ideal.is_empty() {
            GroebnerBasis::zero(self.ring())
        } else {
            buchberger_with(
                &self.defining_ideal,
                MonomialOrder::DegRevLex,
                &GbConfig::default(),
            )?
        };
        let _ = self.basis.set(b);
        Ok(self.basis.get().unwrap())
    }

    /// Reduces `f` modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.defining_basis()?.normal_form(f))
    }

    /// The presentation with `extra` appended to the defining ideal.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<LocalRingPresentation> {
        let mut gens = self.defining_ideal.clone();
        gens.extend(extra.iter().cloned());
        LocalRingPresentation::new(self.field, self.variables.clone(), gens)
    }

    pub fn maximal_ideal(self: &Arc<Self>) -> LocalIdeal {
        LocalIdeal {
            ring: Arc::clone(self),
            generators: (0..self.nvars()).map(|i| self.var(i)).collect(),
        }
    }

    pub fn zero_ideal(self: &Arc<Self>) -> LocalIdeal {
        LocalIdeal {
            ring: Arc::clone(self),
            generators: Vec::new(),
        }
    }

    /// Krull dimension of the polynomial quotient `k[x]/I`, read off the
    /// leading monomials. This is the global proxy for the local dimension.
    pub fn dim(&self) -> Result<usize> {
        self.defining_basis()?.krull_dim()
    }
}

impl fmt::Display for LocalRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[[{}]]",
            self.field.characteristic(),
            self.variables.join(", ")
        )?;
        if !self.defining_ideal.is_empty() {
            let gens: Vec<String> = self
                .defining_ideal
                .iter()
                .map(|g| self.fmt_poly(g))
                .collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// Ideal of a presented local ring, generated inside the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIdeal {
    ring: Arc<LocalRingPresentation>,
    generators: Vec<Polynomial>,
}

impl LocalIdeal {
    pub fn new(ring: Arc<LocalRingPresentation>, generators: Vec<Polynomial>) -> Result<Self> {
        let base = ring.ring();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.ring().compatible(&base) {
                return Err(Error::InvalidArgument(
                    "ideal generator from a different ring".into(),
                ));
            }
            check_in_maximal_ideal(&g, ring.variables(), "ideal generator")?;
            gens.push(g.with_order(MonomialOrder::DegRevLex));
        }
        Ok(LocalIdeal {
            ring,
            generators: gens,
        })
    }

    pub fn ring(&self) -> &Arc<LocalRingPresentation> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Generators of `I + J`.
    pub fn joined_generators(&self) -> Vec<Polynomial> {
        let mut all = self.ring.defining_ideal().to_vec();
        all.extend(self.generators.iter().cloned());
        all
    }

    /// Degrevlex basis of `I + J`.
    pub fn basis(&self, cfg: &GbConfig) -> Result<GroebnerBasis> {
        let all = self.joined_generators();
        if all.is_empty() {
            return Ok(GroebnerBasis::zero(self.ring.ring()));
        }
        buchberger_with(&all, MonomialOrder::DegRevLex, cfg)
    }

    /// True when every generator of `other` lies in `I + self`.
    pub fn contains_ideal(&self, other: &LocalIdeal, cfg: &GbConfig) -> Result<bool> {
        let gb = self.basis(cfg)?;
        Ok(other.generators.iter().all(|g| gb.contains(g)))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators
            .iter()
            .chain(self.ring.defining_ideal())
            .all(|g| g.is_homogeneous())
    }
}

impl fmt::Display for LocalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| self.ring.fmt_poly(g))
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `m^N`: all monomials of total degree `N`.
pub fn maximal_power(ring: &Arc<LocalRingPresentation>, n: u32) -> LocalIdeal {
    assert!(n >= 1, "maximal_power needs N >= 1");
    let base = ring.ring();
    let nvars = ring.nvars();
    let mut gens = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps.clone()).unwrap());
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut monos = Vec::new();
    if nvars > 0 {
        rec(0, n, &mut exps, &mut monos);
    }
    for m in monos {
        gens.push(Polynomial::monomial(base, 1, m));
    }
    LocalIdeal {
        ring: Arc::clone(ring),
        generators: gens,
    }
}

/// Limits for colength computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColengthConfig {
    /// Largest truncation degree `N` tried before giving up.
    pub truncation_cap: u32,
    pub gb: GbConfig,
}

impl Default for ColengthConfig {
    fn default() -> Self {
        ColengthConfig {
            truncation_cap: 128,
            gb: GbConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColengthMethod {
    /// `K` is `m`-primary in the polynomial ring (nilpotency certificate).
    Global,
    /// Consecutive truncations agreed.
    Truncation,
}

/// A certified local colength: `value = D_N = D_{N+1}` at `truncation = N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Colength {
    pub value: u64,
    pub truncation: u32,
    pub method: ColengthMethod,
}

/// Smallest power-of-two exponents `e_i` with `x_i^{e_i}` in the ideal, or
/// `None` when some variable is not nilpotent modulo it. `dim` is the
/// quotient dimension, which bounds every nilpotency index.
fn nilpotency_exponents(gb: &GroebnerBasis, dim: u64) -> Result<Option<Vec<u64>>> {
    let ring = gb.ring();
    let mut out = Vec::with_capacity(ring.nvars);
    for i in 0..ring.nvars {
        let mut r = gb.normal_form(&Polynomial::var(ring, i));
        let mut e: u64 = 1;
        loop {
            if r.is_zero() {
                out.push(e);
                break;
            }
            if e >= dim {
                return Ok(None);
            }
            let sq = r.mul(&r)?;
            if sq.len() > gb_term_cap() {
                return Ok(None);
            }
            r = gb.normal_form(&sq);
            e *= 2;
        }
    }
    Ok(Some(out))
}

fn gb_term_cap() -> usize {
    GbConfig::default().max_terms
}

fn initial_truncation(gens: &[Polynomial]) -> u32 {
    1 + gens.iter().map(|g| g.total_degree()).max().unwrap_or(0)
}

/// `D_N = dim k[x]/(gens + m^N)`.
pub fn truncated_dimension(
    gens: &[Polynomial],
    ring: PolyRing,
    n: u32,
    gb: &GbConfig,
) -> Result<u64> {
    let nonzero: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let seed = if nonzero.is_empty() {
        vec![Polynomial::zero(ring)]
    } else {
        nonzero
    };
    let basis = buchberger_with(&seed, MonomialOrder::LocalDegRevLex, &gb.truncated(n))?;
    match basis.staircase_count() {
        StaircaseCount::Finite(c) => Ok(c),
        StaircaseCount::Infinite => unreachable!("truncated staircases are finite"),
    }
}

fn global_route(gens: &[Polynomial], cfg: &ColengthConfig) -> Result<Option<Colength>> {
    let gb = buchberger_with(gens, MonomialOrder::DegRevLex, &cfg.gb)?;
    if gb.is_unit() {
        return Ok(Some(Colength {
            value: 0,
            truncation: 1,
            method: ColengthMethod::Global,
        }));
    }
    let StaircaseCount::Finite(dim) = gb.staircase_count() else {
        return Ok(None);
    };
    let Some(exps) = nilpotency_exponents(&gb, dim)? else {
        return Ok(None);
    };
    let bound = exps.iter().map(|e| e - 1).sum::<u64>() + 1;
    let truncation = u32::try_from(bound).unwrap_or(u32::MAX);
    Ok(Some(Colength {
        value: dim,
        truncation,
        method: ColengthMethod::Global,
    }))
}

fn truncation_route(gens: &[Polynomial], ring: PolyRing, cfg: &ColengthConfig) -> Result<Colength> {
    let start = initial_truncation(gens);
    if start > cfg.truncation_cap {
        return Err(Error::NotFiniteColength(format!(
            "initial truncation degree {start} already exceeds the cap {}",
            cfg.truncation_cap
        )));
    }
    let mut prev = truncated_dimension(gens, ring, start, &cfg.gb)?;
    let mut history = vec![prev];
    for n in start + 1..=cfg.truncation_cap {
        let cur = truncated_dimension(gens, ring, n, &cfg.gb)?;
        if cur == prev {
            return Ok(Colength {
                value: prev,
                truncation: n - 1,
                method: ColengthMethod::Truncation,
            });
        }
        prev = cur;
        history.push(cur);
    }
    let tail: Vec<String> = history
        .iter()
        .rev()
        .take(4)
        .rev()
        .map(|d| d.to_string())
        .collect();
    Err(Error::NotFiniteColength(format!(
        "strictly growing past the truncation cap {} (last D_N: {})",
        cfg.truncation_cap,
        tail.join(", ")
    )))
}

/// Local colength of the ideal generated by `gens` (which must include the
/// defining ideal) in `ring` at the origin.
pub fn colength_of(gens: &[Polynomial], ring: PolyRing, cfg: &ColengthConfig) -> Result<Colength> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let result = if gens.is_empty() {
        None
    } else {
        global_route(&gens, cfg)?
    };
    let c = match result {
        Some(c) => c,
        None => truncation_route(&gens, ring, cfg)?,
    };
    info!(
        "colength {} certified at truncation N = {} ({:?})",
        c.value, c.truncation, c.method
    );
    Ok(c)
}

/// Length of `S/J` for the presented local ring `S`.
pub fn local_colength(j: &LocalIdeal, cfg: &ColengthConfig) -> Result<Colength> {
    colength_of(&j.joined_generators(), j.ring().ring(), cfg)
}

/// Same value as [`local_colength`] but always through the truncation loop.
pub fn local_colength_by_truncation(j: &LocalIdeal, cfg: &ColengthConfig) -> Result<Colength> {
    let gens: Vec<Polynomial> = j
        .joined_generators()
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    truncation_route(&gens, j.ring().ring(), cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Yes,
    No,
    Inconclusive,
}

/// Whether `I + J` is primary to the maximal ideal.
pub fn is_m_primary(j: &LocalIdeal, cfg: &ColengthConfig) -> Primality {
    primality(j, cfg).unwrap_or(Primality::Inconclusive)
}

/// Like [`is_m_primary`], but a resource cap hit on the way is an error
/// rather than an inconclusive answer.
pub fn primality(j: &LocalIdeal, cfg: &ColengthConfig) -> Result<Primality> {
    let resource = |e: Error| match e.kind() {
        ErrorKind::Resource => Err(e),
        _ => Ok(Primality::Inconclusive),
    };
    if j.is_homogeneous() {
        // a homogeneous ideal has finite local colength iff it is
        // zero-dimensional globally
        match j.basis(&cfg.gb) {
            Ok(gb) if gb.is_unit() => return Ok(Primality::Yes),
            Ok(gb) => match gb.krull_dim() {
                Ok(0) => {}
                Ok(_) => return Ok(Primality::No),
                Err(e) => return resource(e),
            },
            Err(e) => return resource(e),
        }
    }
    match local_colength(j, cfg) {
        Ok(_) => Ok(Primality::Yes),
        Err(e) => resource(e),
    }
}
