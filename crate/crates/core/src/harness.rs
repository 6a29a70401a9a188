//! Exact per-iterate checks for morphisms of dynamical systems.
//!
//! For a flat morphism `f: (R, φ) -> (S, ψ)` with `S` Cohen–Macaulay, an
//! `m`-primary `q ⊆ R` and parameters `q'` of the closed fiber, the lengths
//! factor at every `n`:
//!
//! ```text
//! length S/ψ^n(Q)S = length R/φ^n(q)R · length S/(f(m)S + ψ^n(q')S),
//! ```
//!
//! where `Q = q' + f(q)S`. Without flatness only `≤` is expected, with
//! `q = m_R` and `q' = m_S`. Every length is computed independently, so an
//! equality is a real test of the engine.

use std::sync::Arc;

use crate::dynamics::{FlatnessReport, Iterates, MorphismSetup};
use crate::entropy::{colengths, estimate_entropy, iterate_ideal, EntropyReport};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideals::{local_colength, ColengthConfig, LocalIdeal, LocalRingPresentation};
use crate::polyring::{MonomialOrder, Polynomial};

/// Hypotheses the user asserts in a fixture; they are never verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub flat: bool,
    pub cohen_macaulay: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdditivityRow {
    pub n: usize,
    pub lhs: u64,
    pub rhs_factor_r: u64,
    pub rhs_factor_fiber: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub target: f64,
    pub source: f64,
    pub fiber: f64,
}

impl Decomposition {
    /// `h(ψ) - (h(φ) + h(ψ̄))` from the headline estimates.
    pub fn gap(&self) -> f64 {
        self.target - (self.source + self.fiber)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditivityCheck {
    pub q: String,
    pub q_prime: String,
    pub rows: Vec<AdditivityRow>,
    pub flatness: FlatnessReport,
    pub target_entropy: EntropyReport,
    pub source_entropy: EntropyReport,
    pub fiber_entropy: EntropyReport,
    pub decomposition: Decomposition,
}

impl AdditivityCheck {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityRow {
    pub n: usize,
    pub lhs: u64,
    pub rhs_factor_r: u64,
    pub rhs_factor_fiber: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub rows: Vec<InequalityRow>,
    pub target_entropy: EntropyReport,
    pub source_entropy: EntropyReport,
}

impl InequalityCheck {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Dimension of the affine quotient by `I + (elements)`; `None` for the
/// unit ideal.
fn dim_with(ring: &LocalRingPresentation, elements: &[Polynomial]) -> Result<Option<usize>> {
    let mut gens = ring.defining_ideal().to_vec();
    gens.extend_from_slice(elements);
    let gb = if gens.is_empty() {
        GroebnerBasis::zero(ring.ring())
    } else {
        buchberger(&gens, MonomialOrder::DegRevLex)?
    };
    match gb.krull_dim() {
        Ok(d) => Ok(Some(d)),
        Err(Error::UndefinedDimension) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Whether `elements` form a system of parameters: adjoining them one at a
/// time drops the dimension by exactly one each step and ends at zero.
/// Dimensions are those of the affine quotients, read off leading ideals.
pub fn sop_check(ring: &LocalRingPresentation, elements: &[Polynomial]) -> Result<bool> {
    let Some(mut dim) = dim_with(ring, &[])? else {
        return Ok(false);
    };
    for k in 1..=elements.len() {
        match dim_with(ring, &elements[..k])? {
            Some(d) if d + 1 == dim => dim = d,
            _ => return Ok(false),
        }
    }
    Ok(dim == 0)
}

fn sequence_of(
    ring: &Arc<LocalRingPresentation>,
    per_n: Vec<(usize, Vec<Polynomial>)>,
    cfg: &ColengthConfig,
) -> Result<Vec<u64>> {
    Ok(colengths(ring, per_n, cfg)?
        .into_iter()
        .map(|v| v.0)
        .collect())
}

fn entropy_of(lengths: &[u64], ideal: String) -> Result<EntropyReport> {
    Ok(estimate_entropy(lengths)?.with_ideal(ideal))
}

pub fn verify_additivity(
    setup: &MorphismSetup,
    q: &LocalIdeal,
    q_prime: &LocalIdeal,
    n_max: usize,
    assumptions: Assumptions,
    cfg: &ColengthConfig,
) -> Result<AdditivityCheck> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    if !(assumptions.flat && assumptions.cohen_macaulay) {
        return Err(Error::ValidationFailed(
            "additivity needs `assume flat` for the map and `assume cm` for its target".into(),
        ));
    }
    let r = setup.source().ring();
    let s = setup.target().ring();
    if q.ring() != r || q_prime.ring() != s {
        return Err(Error::InvalidArgument(
            "q must live in the source ring and q' in the target ring".into(),
        ));
    }
    let defects = setup.commutation_defects()?;
    if let Some(&v) = defects.first() {
        return Err(Error::ValidationFailed(format!(
            "map does not commute with the endomorphisms at variable `{}`",
            r.variables()[v]
        )));
    }
    // advisory only: reported, never enforced
    let flatness = setup.flatness_advisory(assumptions.cohen_macaulay)?;
    if local_colength(q, cfg).is_err() {
        return Err(Error::ValidationFailed(format!(
            "q = {q} is not primary to the maximal ideal"
        )));
    }
    let fiber = setup.fiber();
    let q_prime_fiber: Vec<Polynomial> = q_prime.generators().to_vec();
    if !sop_check(fiber, &q_prime_fiber)? {
        return Err(Error::ValidationFailed(format!(
            "q' = {q_prime} is not a system of parameters of the closed fiber"
        )));
    }

    // Q = q' + f(q)
    let mut big_q = q_prime.generators().to_vec();
    for g in q.generators() {
        big_q.push(setup.map_poly(g)?);
    }
    let f_m: Vec<Polynomial> = setup.map_images().to_vec();

    let mut psi = Iterates::new(setup.target().endo().clone());
    let mut phi = Iterates::new(setup.source().endo().clone());
    let mut lhs_gens = Vec::new();
    let mut r_gens = Vec::new();
    let mut fiber_gens = Vec::new();
    for n in 0..=n_max {
        lhs_gens.push((n, iterate_ideal(&mut psi, &big_q, n)?));
        r_gens.push((n, iterate_ideal(&mut phi, q.generators(), n)?));
        let mut g = f_m.clone();
        g.extend(iterate_ideal(&mut psi, q_prime.generators(), n)?);
        fiber_gens.push((n, g));
    }
    let lhs = sequence_of(s, lhs_gens, cfg)?;
    let rf = sequence_of(r, r_gens, cfg)?;
    let ff = sequence_of(s, fiber_gens, cfg)?;
    let rows: Vec<AdditivityRow> = (0..=n_max)
        .map(|n| AdditivityRow {
            n,
            lhs: lhs[n],
            rhs_factor_r: rf[n],
            rhs_factor_fiber: ff[n],
            pass: Some(lhs[n]) == rf[n].checked_mul(ff[n]),
        })
        .collect();

    let big_q_ideal = LocalIdeal::new(Arc::clone(s), big_q)?;
    let target_entropy = entropy_of(&lhs[1..], big_q_ideal.to_string())?;
    let source_entropy = entropy_of(&rf[1..], q.to_string())?;
    let fiber_entropy = entropy_of(&ff[1..], q_prime.to_string())?;
    let decomposition = Decomposition {
        target: target_entropy.headline,
        source: source_entropy.headline,
        fiber: fiber_entropy.headline,
    };
    Ok(AdditivityCheck {
        q: q.to_string(),
        q_prime: q_prime.to_string(),
        rows,
        flatness,
        target_entropy,
        source_entropy,
        fiber_entropy,
        decomposition,
    })
}

/// `λ_n(S, m_S) ≤ λ_n(R, m_R) · length S/(f(m_R)S + ψ^n(m_S)S)` for
/// `n = 1..=n_max`; no flatness needed.
pub fn verify_inequality(
    setup: &MorphismSetup,
    n_max: usize,
    cfg: &ColengthConfig,
) -> Result<InequalityCheck> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let r = setup.source().ring();
    let s = setup.target().ring();
    let defects = setup.commutation_defects()?;
    if let Some(&v) = defects.first() {
        return Err(Error::ValidationFailed(format!(
            "map does not commute with the endomorphisms at variable `{}`",
            r.variables()[v]
        )));
    }
    let m_r = r.maximal_ideal();
    let m_s = s.maximal_ideal();
    let mut psi = Iterates::new(setup.target().endo().clone());
    let mut phi = Iterates::new(setup.source().endo().clone());
    let mut lhs_gens = Vec::new();
    let mut r_gens = Vec::new();
    let mut fiber_gens = Vec::new();
    for n in 1..=n_max {
        let psi_m = iterate_ideal(&mut psi, m_s.generators(), n)?;
        lhs_gens.push((n, psi_m.clone()));
        r_gens.push((n, iterate_ideal(&mut phi, m_r.generators(), n)?));
        let mut g = setup.map_images().to_vec();
        g.extend(psi_m);
        fiber_gens.push((n, g));
    }
    let lhs = sequence_of(s, lhs_gens, cfg)?;
    let rf = sequence_of(r, r_gens, cfg)?;
    let ff = sequence_of(s, fiber_gens, cfg)?;
    let rows = (0..n_max)
        .map(|k| InequalityRow {
            n: k + 1,
            lhs: lhs[k],
            rhs_factor_r: rf[k],
            rhs_factor_fiber: ff[k],
            pass: rf[k].checked_mul(ff[k]).is_none_or(|rhs| lhs[k] <= rhs),
        })
        .collect();
    Ok(InequalityCheck {
        rows,
        target_entropy: entropy_of(&lhs, m_s.to_string())?,
        source_entropy: entropy_of(&rf, m_r.to_string())?,
    })
}

#[cfg(test)]
mod tests;
