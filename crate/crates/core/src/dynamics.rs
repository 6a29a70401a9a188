//! Endomorphisms of presented local rings and morphisms between the
//! resulting dynamical systems.
//!
//! All membership tests (well-definedness, stability, commutation) are done
//! globally in the polynomial ring. Global membership implies local
//! membership, so a pass is sound. A failure names the offending generator.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, GbConfig, GroebnerBasis};
use crate::ideals::{primality, ColengthConfig, LocalIdeal, LocalRingPresentation, Primality};
use crate::polyring::{MonomialOrder, Polynomial};

/// A local endomorphism `x_i -> images[i]` of a presented ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    ring: Arc<LocalRingPresentation>,
    images: Vec<Polynomial>,
}

fn check_images(
    source_vars: usize,
    target: &LocalRingPresentation,
    images: &[Polynomial],
) -> Result<()> {
    if images.len() != source_vars {
        return Err(Error::InvalidArgument(format!(
            "expected {source_vars} variable images, got {}",
            images.len()
        )));
    }
    let ring = target.ring();
    for p in images {
        if !p.ring().compatible(&ring) {
            return Err(Error::InvalidArgument("image from a different ring".into()));
        }
        if p.constant_term() != 0 {
            return Err(Error::ValidationFailed(format!(
                "image {} is not in the maximal ideal",
                target.fmt_poly(p)
            )));
        }
    }
    Ok(())
}

impl Endomorphism {
    pub fn new(ring: Arc<LocalRingPresentation>, images: Vec<Polynomial>) -> Result<Self> {
        check_images(ring.nvars(), &ring, &images)?;
        let images = images
            .into_iter()
            .map(|p| p.with_order(MonomialOrder::DegRevLex))
            .collect();
        Ok(Endomorphism { ring, images })
    }

    pub fn identity(ring: Arc<LocalRingPresentation>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Endomorphism { ring, images }
    }

    pub fn ring(&self) -> &Arc<LocalRingPresentation> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `φ(f)`, reduced modulo the defining ideal.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let gb = self.ring.defining_basis()?;
        let reduced = f.substitute_with(&self.images, &mut |p| Ok(gb.normal_form(&p)))?;
        Ok(gb.normal_form(&reduced))
    }

    /// `self ∘ inner`, i.e. `v -> self(inner(v))`.
    pub fn compose(&self, inner: &Endomorphism) -> Result<Endomorphism> {
        if self.ring != inner.ring {
            return Err(Error::InvalidArgument(
                "composing endomorphisms of different rings".into(),
            ));
        }
        let images = inner
            .images
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism {
            ring: Arc::clone(&self.ring),
            images,
        })
    }

    /// Same map with every image in normal form modulo the defining ideal.
    pub fn normalized(&self) -> Result<Endomorphism> {
        let gb = self.ring.defining_basis()?;
        Ok(Endomorphism {
            ring: Arc::clone(&self.ring),
            images: self.images.iter().map(|p| gb.normal_form(p)).collect(),
        })
    }

    /// `φ^n`; `φ^0` is the identity.
    pub fn iterate(&self, n: usize) -> Result<Endomorphism> {
        let mut it = Iterates::new(self.clone());
        Ok(it.get(n)?.clone())
    }

    /// Every defining generator must map into the defining ideal.
    pub fn check_well_defined(&self) -> Result<()> {
        for g in self.ring.defining_ideal() {
            let image = self.apply(g)?;
            if !image.is_zero() {
                return Err(Error::ValidationFailed(format!(
                    "endomorphism is not well defined: image of {} reduces to {}",
                    self.ring.fmt_poly(g),
                    self.ring.fmt_poly(&image)
                )));
            }
        }
        Ok(())
    }

    /// The ideal generated by the variable images.
    pub fn image_ideal(&self) -> Result<LocalIdeal> {
        LocalIdeal::new(Arc::clone(&self.ring), self.images.clone())
    }

    /// Whether `φ(m)` is primary to the maximal ideal.
    pub fn check_finite_length(&self, cfg: &ColengthConfig) -> Result<Primality> {
        primality(&self.image_ideal()?, cfg)
    }

    /// Image of an ideal's generators.
    pub fn map_ideal(&self, j: &LocalIdeal) -> Result<LocalIdeal> {
        let gens = j
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        LocalIdeal::new(Arc::clone(&self.ring), gens)
    }

    /// Returns the first generator of `J` whose image leaves `I + J`.
    fn unstable_generator(&self, j: &LocalIdeal, cfg: &GbConfig) -> Result<Option<Polynomial>> {
        if j.ring() != &self.ring {
            return Err(Error::InvalidArgument(
                "ideal and endomorphism live in different rings".into(),
            ));
        }
        let gb = j.basis(cfg)?;
        for g in j.generators() {
            if !gb.contains(&self.apply(g)?) {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// `ψ(J) ⊆ I + J`.
    pub fn check_stable_ideal(&self, j: &LocalIdeal) -> Result<bool> {
        Ok(self.unstable_generator(j, &GbConfig::default())?.is_none())
    }

    /// The endomorphism induced on `S/J` for a stable ideal `J`.
    pub fn induced(&self, j: &LocalIdeal) -> Result<Endomorphism> {
        if let Some(g) = self.unstable_generator(j, &GbConfig::default())? {
            return Err(Error::UnstableIdeal {
                generator: self.ring.fmt_poly(&g),
            });
        }
        let ring = Arc::new(self.ring.quotient(j.generators())?);
        let gb = ring.defining_basis()?;
        let images = self.images.iter().map(|p| gb.normal_form(p)).collect();
        let induced = Endomorphism { ring, images };
        induced.check_well_defined()?;
        Ok(induced)
    }
}

/// Memoized iterates `φ^0, φ^1, …`, each obtained as `φ^{k-1} ∘ φ` with
/// images reduced modulo the defining ideal.
#[derive(Clone, Debug)]
pub struct Iterates {
    powers: Vec<Endomorphism>,
}

impl Iterates {
    pub fn new(base: Endomorphism) -> Self {
        let id = Endomorphism::identity(Arc::clone(&base.ring));
        Iterates {
            powers: vec![id, base],
        }
    }

    pub fn base(&self) -> &Endomorphism {
        &self.powers[1]
    }

    pub fn get(&mut self, n: usize) -> Result<&Endomorphism> {
        while self.powers.len() <= n {
            let k = self.powers.len();
            let next = self.powers[k - 1]
                .compose(&self.powers[1])
                .map_err(|e| Error::at_iteration(k, e))?;
            self.powers.push(next);
        }
        Ok(&self.powers[n])
    }
}

/// A ring with an endomorphism that has been checked to be well defined
/// and of finite length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicalSystem {
    endo: Endomorphism,
    validated_finite_length: bool,
}

impl DynamicalSystem {
    pub fn new(endo: Endomorphism, cfg: &ColengthConfig) -> Result<Self> {
        endo.check_well_defined()?;
        match endo.check_finite_length(cfg)? {
            Primality::Yes => Ok(DynamicalSystem {
                endo,
                validated_finite_length: true,
            }),
            Primality::No => Err(Error::ValidationFailed(
                "endomorphism is not of finite length: the image of the maximal ideal is not primary"
                    .into(),
            )),
            Primality::Inconclusive => Err(Error::ValidationFailed(
                "could not certify that the endomorphism has finite length (truncation cap reached)"
                    .into(),
            )),
        }
    }

    pub fn endo(&self) -> &Endomorphism {
        &self.endo
    }

    pub fn ring(&self) -> &Arc<LocalRingPresentation> {
        &self.endo.ring
    }

    pub fn validated_finite_length(&self) -> bool {
        self.validated_finite_length
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckOutcome {
    fn from_bool(b: bool) -> Self {
        if b {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "fail",
            CheckOutcome::NotApplicable => "not-applicable",
        }
    }
}

/// Cheap, non-conclusive flatness evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    /// `dim R + dim fiber = dim S` (necessary for flatness).
    pub dimension_check: CheckOutcome,
    /// Variable-inclusion pattern with a regular sequence of defining
    /// generators on the fiber (sufficient for flatness).
    pub pattern_check: CheckOutcome,
    pub dim_source: usize,
    pub dim_fiber: usize,
    pub dim_target: usize,
    pub notes: Vec<String>,
}

/// Morphism `f: (R, φ) -> (S, ψ)` with its closed fiber `S/f(m)S`.
#[derive(Clone, Debug)]
pub struct MorphismSetup {
    source: DynamicalSystem,
    target: DynamicalSystem,
    map: Vec<Polynomial>,
    fiber: Arc<LocalRingPresentation>,
    d: usize,
    d_prime: usize,
}

impl MorphismSetup {
    pub fn new(
        source: DynamicalSystem,
        target: DynamicalSystem,
        map: Vec<Polynomial>,
    ) -> Result<Self> {
        let r = Arc::clone(source.ring());
        let s = Arc::clone(target.ring());
        if r.field() != s.field() {
            return Err(Error::InvalidArgument(
                "source and target have different fields".into(),
            ));
        }
        check_images(r.nvars(), &s, &map)?;
        let map: Vec<Polynomial> = map
            .into_iter()
            .map(|p| p.with_order(MonomialOrder::DegRevLex))
            .collect();
        let sgb = s.defining_basis()?;
        for g in r.defining_ideal() {
            let image = g.substitute_with(&map, &mut |p| Ok(sgb.normal_form(&p)))?;
            if !sgb.contains(&image) {
                return Err(Error::ValidationFailed(format!(
                    "map is not well defined: image of {} is not in the target's defining ideal",
                    r.fmt_poly(g)
                )));
            }
        }
        let fiber = Arc::new(s.quotient(&map)?);
        let d = r.dim()?;
        let d_prime = fiber.dim()?;
        Ok(MorphismSetup {
            source,
            target,
            map,
            fiber,
            d,
            d_prime,
        })
    }

    pub fn source(&self) -> &DynamicalSystem {
        &self.source
    }

    pub fn target(&self) -> &DynamicalSystem {
        &self.target
    }

    pub fn map_images(&self) -> &[Polynomial] {
        &self.map
    }

    /// `S/f(m)S` as a presentation over the target's variables.
    pub fn fiber(&self) -> &Arc<LocalRingPresentation> {
        &self.fiber
    }

    pub fn dim_source(&self) -> usize {
        self.d
    }

    pub fn dim_fiber(&self) -> usize {
        self.d_prime
    }

    /// `f(p)` reduced modulo the target's defining ideal.
    pub fn map_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        let gb = self.target.ring().defining_basis()?;
        let out = p.substitute_with(&self.map, &mut |q| Ok(gb.normal_form(&q)))?;
        Ok(gb.normal_form(&out))
    }

    /// The induced endomorphism `ψ̄` on the fiber.
    pub fn fiber_endo(&self) -> Result<Endomorphism> {
        let s = Arc::clone(self.target.ring());
        let fm = LocalIdeal::new(s, self.map.clone())?;
        self.target.endo().induced(&fm)
    }

    /// Source variables `v` with `ψ(f(v)) ≠ f(φ(v))` in the target.
    pub fn commutation_defects(&self) -> Result<Vec<usize>> {
        let psi = self.target.endo();
        let phi = self.source.endo();
        let sgb = self.target.ring().defining_basis()?;
        let mut bad = Vec::new();
        for (v, f_v) in self.map.iter().enumerate() {
            let lhs = psi.apply(f_v)?;
            let rhs = self.map_poly(&phi.images()[v])?;
            if !sgb.contains(&lhs.sub(&rhs)) {
                bad.push(v);
            }
        }
        Ok(bad)
    }

    pub fn check_morphism(&self) -> Result<bool> {
        Ok(self.commutation_defects()?.is_empty())
    }

    /// Advisory flatness evidence. `assume_cm` enables the dimension-drop
    /// fallback when an ideal-quotient test exceeds its limits.
    pub fn flatness_advisory(&self, assume_cm: bool) -> Result<FlatnessReport> {
        let dim_target = self.target.ring().dim()?;
        let mut notes = Vec::new();
        let dimension_check = CheckOutcome::from_bool(self.d + self.d_prime == dim_target);
        let pattern_check = self.pattern_check(assume_cm, &mut notes)?;
        Ok(FlatnessReport {
            dimension_check,
            pattern_check,
            dim_source: self.d,
            dim_fiber: self.d_prime,
            dim_target,
            notes,
        })
    }

    /// When `R` is a power series ring and `f` sends its variables to
    /// distinct target variables, the ambient series ring `P` of `S` is flat
    /// over `R`. Then `S = P/(g_1..g_r)` is flat over `R` as soon as the
    /// images of `g_1..g_r` in `P/f(m)P` form a regular sequence.
    fn pattern_check(&self, assume_cm: bool, notes: &mut Vec<String>) -> Result<CheckOutcome> {
        let r = self.source.ring();
        let s = self.target.ring();
        if !r.defining_ideal().is_empty() {
            notes.push("pattern check needs a regular (power series) source".into());
            return Ok(CheckOutcome::NotApplicable);
        }
        let mut hit = vec![false; s.nvars()];
        for p in &self.map {
            match p.terms() {
                [t] if t.coeff == 1 && t.monomial.degree() == 1 => {
                    let i = t.monomial.support().next().unwrap();
                    if hit[i] {
                        notes.push("map is not injective on variables".into());
                        return Ok(CheckOutcome::NotApplicable);
                    }
                    hit[i] = true;
                }
                _ => {
                    notes.push("map does not send variables to variables".into());
                    return Ok(CheckOutcome::NotApplicable);
                }
            }
        }
        let ring = s.ring();
        let base: Vec<Polynomial> = (0..s.nvars())
            .filter(|&i| hit[i])
            .map(|i| Polynomial::var(ring, i))
            .collect();
        let mut current = base.clone();
        let cfg = GbConfig::default();
        let basis_of = |gens: &[Polynomial]| -> Result<GroebnerBasis> {
            if gens.is_empty() {
                Ok(GroebnerBasis::zero(ring))
            } else {
                buchberger_with(gens, MonomialOrder::DegRevLex, &cfg)
            }
        };
        for g in s.defining_ideal() {
            let before = basis_of(&current)?;
            let g_bar = before.normal_form(g);
            if g_bar.is_zero() {
                notes.push(format!(
                    "defining generator {} vanishes on the fiber",
                    s.fmt_poly(g)
                ));
                return Ok(CheckOutcome::Fail);
            }
            let regular = match before.ideal_quotient_with(&g_bar, &cfg) {
                Ok(q) => q == before,
                Err(Error::ResourceExceeded(msg)) if assume_cm => {
                    notes.push(format!(
                        "ideal quotient gave up ({msg}); using dimension drop"
                    ));
                    let mut next = current.clone();
                    next.push(g_bar.clone());
                    let after = basis_of(&next)?;
                    before.krull_dim()? == after.krull_dim()? + 1
                }
                Err(e) => return Err(e),
            };
            if !regular {
                notes.push(format!(
                    "{} is a zero divisor on the fiber modulo the previous generators",
                    s.fmt_poly(g)
                ));
                return Ok(CheckOutcome::Fail);
            }
            current.push(g.clone());
        }
        Ok(CheckOutcome::Pass)
    }
}

#[cfg(test)]
mod tests;
