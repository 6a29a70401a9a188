use std::cmp::Ordering;

use log::debug;

use super::reduce::{reduce, s_polynomial, Divisors};
use super::{GbConfig, GroebnerBasis};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: MonomialOrder,
    truncation: Option<u32>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lead(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_divisors(&self) -> Divisors<'_> {
        Divisors::new(
            self.polys
                .iter()
                .zip(&self.active)
                .filter(|(_, a)| **a)
                .map(|(p, _)| p),
        )
    }

    /// Gebauer-Moeller installation of a new basis element: applies the
    /// coprime-leading-monomial criterion and the chain criterion.
    fn insert(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut pending: Vec<(Pair, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.lead(g);
                let pair = Pair {
                    i: g,
                    j: hi,
                    lcm: lg.lcm(&lh),
                };
                (pair, lg.is_coprime(&lh))
            })
            .collect();
        let mut accepted: Vec<(Pair, bool)> = Vec::new();
        while let Some((p, coprime)) = pending.pop() {
            let covered = pending
                .iter()
                .chain(accepted.iter())
                .any(|(q, _)| q.lcm.divides(&p.lcm));
            if coprime || !covered {
                accepted.push((p, coprime));
            }
        }
        let new_pairs: Vec<Pair> = accepted
            .into_iter()
            .filter(|(_, coprime)| !coprime)
            .map(|(p, _)| p)
            .collect();

        // chain criterion on the old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].leading_monomial().unwrap().lcm(&lh);
            let lj = polys[p.j].leading_monomial().unwrap().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

fn check_caps(h: &Polynomial, basis_len: usize, cfg: &GbConfig) -> Result<()> {
    if basis_len >= cfg.max_basis_size {
        return Err(Error::ResourceExceeded(format!(
            "Groebner basis grew past {} polynomials",
            cfg.max_basis_size
        )));
    }
    let d = h.leading_monomial().map_or(0, |m| m.degree());
    if d > cfg.max_degree {
        return Err(Error::ResourceExceeded(format!(
            "leading degree {d} exceeds the cap {}",
            cfg.max_degree
        )));
    }
    if h.len() > cfg.max_terms {
        return Err(Error::ResourceExceeded(format!(
            "intermediate polynomial with {} terms exceeds the cap {}",
            h.len(),
            cfg.max_terms
        )));
    }
    Ok(())
}

pub(super) fn run(
    generators: &[Polynomial],
    order: MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidArgument(
            "buchberger needs at least one generator".into(),
        ));
    };
    let ring = first.ring().with_order(order);
    if generators.iter().any(|g| !g.ring().compatible(&ring)) {
        return Err(Error::InvalidArgument(
            "generators live in different rings".into(),
        ));
    }
    let truncation = cfg.truncation;
    match (order.is_global(), truncation) {
        (false, None) => {
            return Err(Error::InvalidArgument(
                "a local order requires a truncation degree".into(),
            ))
        }
        (true, Some(_)) => {
            return Err(Error::InvalidArgument(
                "truncated computations require the local order".into(),
            ))
        }
        _ => {}
    }

    let mut inputs: Vec<Polynomial> = generators
        .iter()
        .map(|g| {
            let g = g.with_order(order);
            match truncation {
                Some(n) => g.truncate(n),
                None => g,
            }
        })
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    // smallest leading monomials first keeps early reductions cheap
    inputs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    inputs.dedup();

    let mut st = State {
        order,
        truncation,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in inputs {
        let h = reduce(&g, &st.active_divisors(), truncation);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        check_caps(&h, st.polys.len(), cfg)?;
        if h.leading_monomial().unwrap().is_one() {
            return Ok(GroebnerBasis::unit(ring, truncation));
        }
        st.insert(h);
    }

    let mut steps = 0usize;
    while let Some(pair) = st.pop_pair() {
        steps += 1;
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j], st.truncation);
        let h = reduce(&s, &st.active_divisors(), st.truncation);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        check_caps(&h, st.polys.len(), cfg)?;
        if h.leading_monomial().unwrap().is_one() {
            return Ok(GroebnerBasis::unit(ring, truncation));
        }
        st.insert(h);
    }
    debug!(
        "buchberger: {} pairs processed, {} polynomials generated",
        steps,
        st.polys.len()
    );

    let minimal: Vec<Polynomial> = st
        .polys
        .into_iter()
        .zip(st.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    Ok(GroebnerBasis::from_minimal(ring, minimal, truncation))
}

/// Inter-reduces a minimal basis into the reduced one, sorted by leading
/// monomial (ascending).
pub(super) fn interreduce(minimal: Vec<Polynomial>, truncation: Option<u32>) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let lead = g.leading_term().unwrap().clone();
        let others = Divisors::new(
            minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p),
        );
        let tail = Polynomial::from_terms(
            g.ring(),
            g.terms()[1..]
                .iter()
                .map(|t| (t.coeff as u64, t.monomial.clone()))
                .collect::<Vec<_>>(),
        );
        let tail = reduce(&tail, &others, truncation);
        let head = Polynomial::monomial(g.ring(), lead.coeff, lead.monomial);
        out.push(head.add(&tail).monic());
    }
    let order = out.first().map(|p| p.ring().order).unwrap_or_default();
    out.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}
