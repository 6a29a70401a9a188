//! Length sequences `λ_n = length(R/(I + φ^n(q)))` and entropy estimates.
//!
//! Three estimators are reported: the naive `(1/n) log λ_n`, its running
//! minimum (an upper bound on the limit by Fekete's lemma, since `log λ_n`
//! is subadditive), and the successive ratio `log(λ_n/λ_{n-1})`. The ratio
//! is the headline: it is exact at finite `n` whenever lengths grow
//! geometrically, and a heuristic otherwise.

use std::sync::Arc;

use log::debug;
use rayon::prelude::*;

use crate::dynamics::{DynamicalSystem, Endomorphism, Iterates};
use crate::error::{Error, Result};
use crate::ideals::{local_colength, ColengthConfig, LocalIdeal};
use crate::polyring::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSequence {
    /// `length(R/(I + q))`.
    pub lambda0: u64,
    /// `λ_1 … λ_{n_max}`.
    pub lengths: Vec<u64>,
    /// Truncation level that certified each `λ_n`, `n = 0..=n_max`.
    pub truncations: Vec<u32>,
}

/// Images `φ^n(g)` of the generators of `q`.
pub(crate) fn iterate_ideal(
    it: &mut Iterates,
    q: &[Polynomial],
    n: usize,
) -> Result<Vec<Polynomial>> {
    let phi_n = it.get(n)?;
    q.iter()
        .map(|g| phi_n.apply(g))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::at_iteration(n, e))
}

/// Colengths of `I + gens_n` for every `n`, computed in parallel and
/// returned in input order.
pub(crate) fn colengths(
    ring: &Arc<crate::ideals::LocalRingPresentation>,
    per_n: Vec<(usize, Vec<Polynomial>)>,
    cfg: &ColengthConfig,
) -> Result<Vec<(u64, u32)>> {
    per_n
        .into_par_iter()
        .map(|(n, gens)| {
            let j =
                LocalIdeal::new(Arc::clone(ring), gens).map_err(|e| Error::at_iteration(n, e))?;
            let c = local_colength(&j, cfg).map_err(|e| Error::at_iteration(n, e))?;
            debug!("n = {n}: length {} at truncation {}", c.value, c.truncation);
            Ok((c.value, c.truncation))
        })
        .collect()
}

fn require_primary(q: &LocalIdeal, cfg: &ColengthConfig) -> Result<(u64, u32)> {
    match local_colength(q, cfg) {
        Ok(c) => Ok((c.value, c.truncation)),
        Err(Error::NotFiniteColength(msg)) => Err(Error::ValidationFailed(format!(
            "{q} is not primary to the maximal ideal ({msg})"
        ))),
        Err(e) => Err(e),
    }
}

pub fn length_sequence(
    system: &DynamicalSystem,
    q: &LocalIdeal,
    n_max: usize,
    cfg: &ColengthConfig,
) -> Result<LengthSequence> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    if q.ring() != system.ring() {
        return Err(Error::InvalidArgument(
            "ideal and system live in different rings".into(),
        ));
    }
    let (lambda0, t0) = require_primary(q, cfg)?;
    let mut it = Iterates::new(system.endo().clone());
    let mut per_n = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        per_n.push((n, iterate_ideal(&mut it, q.generators(), n)?));
    }
    let values = colengths(system.ring(), per_n, cfg)?;
    let mut truncations = vec![t0];
    truncations.extend(values.iter().map(|v| v.1));
    Ok(LengthSequence {
        lambda0,
        lengths: values.into_iter().map(|v| v.0).collect(),
        truncations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub ideal: String,
    pub n: Vec<usize>,
    pub lengths: Vec<u64>,
    /// `(1/n) log λ_n`.
    pub naive: Vec<f64>,
    /// Running minimum of `naive`.
    pub fekete: Vec<f64>,
    /// `log(λ_n/λ_{n-1})` for `n = 2..=n_max`.
    pub ratio: Vec<f64>,
    pub headline: f64,
    /// `k` when every `λ_{n+1}/λ_n` equals the same integer `k`.
    pub exact_ratio: Option<u64>,
}

impl EntropyReport {
    pub fn with_ideal(mut self, ideal: impl Into<String>) -> Self {
        self.ideal = ideal.into();
        self
    }

    /// `"log k"` when an exact ratio was observed.
    pub fn symbolic(&self) -> Option<String> {
        match self.exact_ratio {
            Some(1) => Some("0".into()),
            Some(k) => Some(format!("log {k}")),
            None => None,
        }
    }
}

fn exact_ratio(lengths: &[u64]) -> Option<u64> {
    if lengths.len() < 2 {
        return None;
    }
    let mut k = None;
    for w in lengths.windows(2) {
        if w[0] == 0 || w[1] % w[0] != 0 {
            return None;
        }
        let r = w[1] / w[0];
        match k {
            None => k = Some(r),
            Some(prev) if prev != r => return None,
            _ => {}
        }
    }
    k
}

/// Estimates from `λ_1 … λ_{n_max}`.
pub fn estimate_entropy(lengths: &[u64]) -> Result<EntropyReport> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::InvalidArgument(
            "entropy estimates need a nonempty sequence of positive lengths".into(),
        ));
    }
    let n: Vec<usize> = (1..=lengths.len()).collect();
    let naive: Vec<f64> = lengths
        .iter()
        .zip(&n)
        .map(|(&l, &k)| (l as f64).ln() / k as f64)
        .collect();
    let mut fekete = Vec::with_capacity(naive.len());
    let mut best = f64::INFINITY;
    for &v in &naive {
        best = best.min(v);
        fekete.push(best);
    }
    let ratio: Vec<f64> = lengths
        .windows(2)
        .map(|w| (w[1] as f64 / w[0] as f64).ln())
        .collect();
    let exact = exact_ratio(lengths);
    let headline = match (exact, ratio.last()) {
        (Some(k), _) => (k as f64).ln(),
        (None, Some(&r)) => r,
        (None, None) => naive[0],
    };
    Ok(EntropyReport {
        ideal: String::new(),
        n,
        lengths: lengths.to_vec(),
        naive,
        fekete,
        ratio,
        headline,
        exact_ratio: exact,
    })
}

/// Length sequence and estimates in one call.
pub fn entropy_report(
    system: &DynamicalSystem,
    q: &LocalIdeal,
    n_max: usize,
    cfg: &ColengthConfig,
) -> Result<EntropyReport> {
    let seq = length_sequence(system, q, n_max, cfg)?;
    Ok(estimate_entropy(&seq.lengths)?.with_ideal(q.to_string()))
}

/// The ideal `φ^n(q)` itself, mostly for inspection.
pub fn iterated_ideal(endo: &Endomorphism, q: &LocalIdeal, n: usize) -> Result<LocalIdeal> {
    let mut it = Iterates::new(endo.clone());
    let gens = iterate_ideal(&mut it, q.generators(), n)?;
    LocalIdeal::new(Arc::clone(q.ring()), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, parse_ideal};

    fn seq(fixture: &str, endo: &str, q: &str, n_max: usize) -> LengthSequence {
        let f = parse(fixture).unwrap();
        let e = f.endo(endo).unwrap();
        let ring = Arc::clone(&f.ring(&e.ring).unwrap().presentation);
        let sys = DynamicalSystem::new(e.endo.clone(), &ColengthConfig::default()).unwrap();
        let q = parse_ideal(q, &ring).unwrap();
        length_sequence(&sys, &q, n_max, &ColengthConfig::default()).unwrap()
    }

    #[test]
    fn power_map_lengths() {
        let s = seq(
            "field 2\nring R vars y\nendo phi on R : y -> y^3\n",
            "phi",
            "(y)",
            4,
        );
        assert_eq!(s.lambda0, 1);
        assert_eq!(s.lengths, [3, 9, 27, 81]);
        assert_eq!(s.truncations.len(), 5);
    }

    #[test]
    fn frobenius_lengths() {
        let s = seq(
            "field 3\nring R vars x y\nendo fr on R : x -> x^3, y -> y^3\n",
            "fr",
            "(x, y)",
            3,
        );
        assert_eq!(s.lengths, [9, 81, 729]);
    }

    #[test]
    fn fiber_lengths() {
        let s = seq(
            "field 2\nring F vars x w s mod (s^6, x^2)\nendo pb on F : x -> s^3, w -> w^5, s -> x*s^2\n",
            "pb",
            "(w)",
            3,
        );
        assert_eq!(s.lambda0, 12);
        assert_eq!(s.lengths, [60, 300, 1500]);
    }

    #[test]
    fn non_primary_q_is_rejected() {
        let f = parse("field 2\nring R vars x y\nendo fr on R : x -> x^2, y -> y^2\n").unwrap();
        let ring = Arc::clone(&f.ring("R").unwrap().presentation);
        let sys = DynamicalSystem::new(
            f.endo("fr").unwrap().endo.clone(),
            &ColengthConfig::default(),
        )
        .unwrap();
        let q = parse_ideal("(x)", &ring).unwrap();
        let cfg = ColengthConfig {
            truncation_cap: 16,
            ..ColengthConfig::default()
        };
        assert!(matches!(
            length_sequence(&sys, &q, 2, &cfg),
            Err(Error::ValidationFailed(_))
        ));
    }

    #[test]
    fn estimates() {
        let r = estimate_entropy(&[3, 9, 27]).unwrap();
        assert_eq!(r.exact_ratio, Some(3));
        assert!((r.headline - 3f64.ln()).abs() < 1e-12);
        assert_eq!(r.symbolic().as_deref(), Some("log 3"));
        assert_eq!(r.ratio.len(), 2);

        let r = estimate_entropy(&[1, 1, 1]).unwrap();
        assert_eq!(r.headline, 0.0);
        assert_eq!(r.exact_ratio, Some(1));

        let r = estimate_entropy(&[60, 300, 1500]).unwrap();
        assert_eq!(r.exact_ratio, Some(5));
        assert!((r.headline - 5f64.ln()).abs() < 1e-12);
        // naive estimates carry the constant offset (1/n) log 12
        assert!(r.naive[2] > r.headline);

        let r = estimate_entropy(&[2, 4, 8, 8, 8, 8]).unwrap();
        assert_eq!(r.exact_ratio, None);
        assert_eq!(r.headline, 0.0);
        assert!(r.fekete.windows(2).all(|w| w[1] <= w[0]));

        let r = estimate_entropy(&[7]).unwrap();
        assert!((r.headline - 7f64.ln()).abs() < 1e-12);
        assert!(r.ratio.is_empty());

        assert!(estimate_entropy(&[]).is_err());
        assert!(estimate_entropy(&[1, 0]).is_err());
    }
}
