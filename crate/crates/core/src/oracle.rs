//! Independent colength computation by linear algebra.
//!
//! `dim k[x]/(K + m^D)` is the number of monomials of degree `< D` minus the
//! rank of the span of all truncated multiples `m*g`. Consecutive equal
//! values certify the local length exactly as in [`crate::ideals`], but
//! nothing here touches Gröbner bases or normal forms: the only shared code
//! is field arithmetic and the polynomial container.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ideals::LocalIdeal;
use crate::polyring::{Polynomial, PrimeField};

pub const DEFAULT_DEGREE_CAP: u32 = 64;
/// Largest matrix width attempted.
pub const MAX_COLUMNS: usize = 12_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleColength {
    pub value: u64,
    /// First `D` with `dim k[x]/(K + m^D) = dim k[x]/(K + m^{D+1})`.
    pub degree_bound: u32,
}

fn monomials_below(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            for e in 0..=left {
                cur[i] = e;
                out.push(cur.clone());
            }
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    if nvars == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(0, d - 1, &mut vec![0; nvars], &mut out);
    // low degrees first, so pivots land on lowest-order terms and fill-in
    // stays in the higher degrees
    out.sort_by_key(|m| m.iter().sum::<u32>());
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Row-echelon accumulator with sparse pivot rows normalized to pivot 1.
struct Echelon {
    field: PrimeField,
    pivots: Vec<Option<Vec<(usize, u32)>>>,
    rank: usize,
}

impl Echelon {
    fn new(field: PrimeField, cols: usize) -> Self {
        Echelon {
            field,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    fn insert(&mut self, row: &[(usize, u32)], dense: &mut [u32]) {
        let f = self.field;
        for &(c, v) in row {
            dense[c] = f.add(dense[c], v);
        }
        let start = row.iter().map(|&(c, _)| c).min().unwrap_or(dense.len());
        let mut found = None;
        for c in start..dense.len() {
            let v = dense[c];
            if v == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(b) => {
                    for &(j, w) in b {
                        dense[j] = f.sub(dense[j], f.mul(v, w));
                    }
                }
                None => {
                    found = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = found {
            let inv = f.inv(dense[c]).expect("pivot is nonzero");
            let mut pivot_row = Vec::new();
            for (j, slot) in dense.iter_mut().enumerate().skip(c) {
                if *slot != 0 {
                    pivot_row.push((j, f.mul(*slot, inv)));
                }
            }
            self.pivots[c] = Some(pivot_row);
            self.rank += 1;
        }
        dense.iter_mut().for_each(|v| *v = 0);
    }
}

/// `dim k[x]/(gens + m^d)` by dense elimination.
pub fn truncated_colength(
    gens: &[Polynomial],
    nvars: usize,
    field: PrimeField,
    d: u32,
) -> Result<u64> {
    let monos = monomials_below(nvars, d);
    // Generators that are a single term kill every column they divide;
    // those columns are dropped instead of being eliminated.
    let mut killers: Vec<&[u32]> = Vec::new();
    let mut others: Vec<Vec<(u32, &[u32])>> = Vec::new();
    for g in gens {
        match g.terms() {
            [] => {}
            [t] => killers.push(t.monomial.exponents()),
            terms => others.push(
                terms
                    .iter()
                    .map(|t| (t.coeff, t.monomial.exponents()))
                    .collect(),
            ),
        }
    }
    let mut index: HashMap<&[u32], usize> = HashMap::new();
    let mut cols = 0usize;
    for m in &monos {
        if killers.iter().any(|k| divides(k, m)) {
            continue;
        }
        index.insert(m.as_slice(), cols);
        cols += 1;
    }
    if cols > MAX_COLUMNS {
        return Err(Error::ResourceExceeded(format!(
            "oracle matrix with {cols} columns at degree bound {d}"
        )));
    }
    let mut ech = Echelon::new(field, cols);
    let mut dense = vec![0u32; cols];
    let mut buf = vec![0u32; nvars];
    let mut row = Vec::new();
    for g in &others {
        for m in &monos {
            row.clear();
            for &(c, e) in g {
                let mut deg = 0;
                for k in 0..nvars {
                    buf[k] = m[k] + e[k];
                    deg += buf[k];
                }
                if deg >= d {
                    continue;
                }
                if let Some(&col) = index.get(buf.as_slice()) {
                    row.push((col, c));
                }
            }
            if !row.is_empty() {
                ech.insert(&row, &mut dense);
            }
        }
    }
    Ok((cols - ech.rank) as u64)
}

/// Local colength of the ideal generated by `gens`, certified by two equal
/// consecutive truncations. Fails past `cap`.
pub fn oracle_colength(
    gens: &[Polynomial],
    nvars: usize,
    field: PrimeField,
    cap: u32,
) -> Result<OracleColength> {
    for g in gens {
        if g.terms()
            .iter()
            .any(|t| t.monomial.exponents().iter().all(|&e| e == 0))
        {
            return Err(Error::InvalidArgument(
                "oracle generators must lie in the maximal ideal".into(),
            ));
        }
    }
    let mut prev = truncated_colength(gens, nvars, field, 1)?;
    for d in 1..cap {
        let next = truncated_colength(gens, nvars, field, d + 1)?;
        if next == prev {
            return Ok(OracleColength {
                value: prev,
                degree_bound: d,
            });
        }
        prev = next;
    }
    Err(Error::NotFiniteColength(format!(
        "oracle truncations still growing at degree bound {cap}"
    )))
}

/// Oracle colength of `I + J` for an ideal `J` of a presented ring.
pub fn oracle_local_colength(j: &LocalIdeal, cap: u32) -> Result<OracleColength> {
    let ring = j.ring();
    oracle_colength(&j.joined_generators(), ring.nvars(), ring.field(), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, parse_ideal};
    use std::sync::Arc;

    fn value(fixture: &str, ring: &str, ideal: &str) -> u64 {
        let f = parse(fixture).unwrap();
        let r = Arc::clone(&f.ring(ring).unwrap().presentation);
        let j = parse_ideal(ideal, &r).unwrap();
        oracle_local_colength(&j, DEFAULT_DEGREE_CAP).unwrap().value
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(value("field 2\nring R vars x s\n", "R", "(x^2, s^6)"), 12);
        assert_eq!(
            value("field 2\nring R vars x y\n", "R", "(x*y, x^2, y^2)"),
            3
        );
        assert_eq!(value("field 2\nring R vars y\n", "R", "(y^27)"), 27);
    }

    #[test]
    fn cusp_with_parameters() {
        let fx = "field 2\nring R vars x y w s\n";
        assert_eq!(value(fx, "R", "(s^6, y^3 + x^2, w, y)"), 12);
        let fx = "field 2\nring S vars x y w s mod (s^6, y^3 + x^2)\n";
        assert_eq!(value(fx, "S", "(w, y)"), 12);
    }

    #[test]
    fn points_away_from_origin_are_ignored() {
        // x*(1 - x): only the branch through the origin counts
        assert_eq!(value("field 3\nring R vars x\n", "R", "(x - x^2)"), 1);
        assert_eq!(
            value("field 5\nring R vars x y\n", "R", "(x - y^2, y - x^2)"),
            1
        );
    }

    #[test]
    fn truncations_at_small_bounds() {
        let f = PrimeField::new(2).unwrap();
        // no generators: number of monomials of degree < d in 2 variables
        for d in 0..6u32 {
            assert_eq!(
                truncated_colength(&[], 2, f, d).unwrap(),
                (d * (d + 1) / 2) as u64
            );
        }
    }

    #[test]
    fn non_primary_ideal_hits_the_cap() {
        let f = parse("field 2\nring R vars x y\n").unwrap();
        let r = Arc::clone(&f.ring("R").unwrap().presentation);
        let j = parse_ideal("(x*y)", &r).unwrap();
        assert!(matches!(
            oracle_local_colength(&j, 12),
            Err(Error::NotFiniteColength(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_below(3, 4).len(), 20);
        assert_eq!(monomials_below(4, 7).len(), 210);
        assert!(monomials_below(2, 0).is_empty());
    }
}
