use super::GroebnerBasis;
use crate::polyring::Monomial;

/// Above this many standard monomials only the count is computed.
pub const MATERIALIZE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StaircaseCount {
    Finite(u64),
    Infinite,
}

impl StaircaseCount {
    pub fn finite(self) -> Option<u64> {
        match self {
            StaircaseCount::Finite(n) => Some(n),
            StaircaseCount::Infinite => None,
        }
    }
}

/// Standard monomials of a basis: those outside the leading ideal. For a
/// truncated basis only monomials below the truncation degree count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub count: StaircaseCount,
    /// Present when the count is finite and at most [`MATERIALIZE_LIMIT`].
    pub standard_monomials: Option<Vec<Monomial>>,
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| g.iter().sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

/// Restricts to `last exponent <= e` and drops the last coordinate.
fn slice(gens: &[Vec<u32>], e: u32) -> Vec<Vec<u32>> {
    let k = gens[0].len() - 1;
    minimalize(
        gens.iter()
            .filter(|g| g[k] <= e)
            .map(|g| g[..k].to_vec())
            .collect(),
    )
}

/// Number of monomials outside the monomial ideal, by splitting the last
/// variable's range at the exponents where the slice ideal changes.
/// `None` means infinitely many.
fn count_box(gens: &[Vec<u32>], nvars: usize) -> Option<u128> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    if nvars == 0 {
        return Some(1);
    }
    let last = nvars - 1;
    let a = gens
        .iter()
        .filter(|g| g[..last].iter().all(|&e| e == 0))
        .map(|g| g[last])
        .min()?;
    let mut breaks: Vec<u32> = gens.iter().map(|g| g[last]).filter(|&e| e < a).collect();
    breaks.push(0);
    breaks.sort_unstable();
    breaks.dedup();
    let mut total: u128 = 0;
    for (k, &b) in breaks.iter().enumerate() {
        let next = breaks.get(k + 1).copied().unwrap_or(a);
        let s = slice(gens, b);
        let c = if s.is_empty() {
            if last == 0 {
                1
            } else {
                return None;
            }
        } else {
            count_box(&s, last)?
        };
        total += (next - b) as u128 * c;
    }
    Some(total)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Monomials in `nvars` variables of total degree `< budget` outside the
/// monomial ideal.
fn count_below(gens: &[Vec<u32>], nvars: usize, budget: u32) -> u128 {
    if budget == 0 || gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0;
    }
    if gens.is_empty() {
        // C(budget - 1 + nvars, nvars)
        return binomial(budget as u128 - 1 + nvars as u128, nvars as u128);
    }
    if nvars == 0 {
        return 1;
    }
    let last = nvars - 1;
    let mut total = 0;
    for e in 0..budget {
        let s = slice(gens, e);
        if s.iter().any(|g| g.iter().all(|&x| x == 0)) {
            break;
        }
        total += count_below(&s, last, budget - e);
    }
    total
}

fn enumerate(gens: &[Monomial], nvars: usize, budget: Option<u32>, limit: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(
        i: usize,
        exps: &mut Vec<u32>,
        deg: u32,
        gens: &[Monomial],
        budget: Option<u32>,
        out: &mut Vec<Monomial>,
        limit: u64,
    ) {
        if out.len() as u64 > limit {
            return;
        }
        if i == exps.len() {
            let m = Monomial::from_exponents(exps.clone()).unwrap();
            if !gens.iter().any(|g| g.divides(&m)) {
                out.push(m);
            }
            return;
        }
        let mut e = 0u32;
        loop {
            if budget.is_some_and(|b| deg + e >= b) {
                break;
            }
            exps[i] = e;
            // prefix already in the ideal: larger exponents stay in it
            let prefix_dead = gens.iter().any(|g| {
                g.exponents()[..=i]
                    .iter()
                    .zip(exps.iter())
                    .all(|(a, b)| a <= b)
                    && g.exponents()[i + 1..].iter().all(|&x| x == 0)
            });
            if prefix_dead {
                break;
            }
            rec(i + 1, exps, deg + e, gens, budget, out, limit);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(0, &mut exps, 0, gens, budget, &mut out, limit);
    let order = crate::polyring::MonomialOrder::DegRevLex;
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

impl GroebnerBasis {
    fn leading_exponents(&self) -> Vec<Vec<u32>> {
        minimalize(
            self.leading_monomials()
                .map(|m| m.exponents().to_vec())
                .collect(),
        )
    }

    /// Vector-space dimension of the quotient (below the truncation degree
    /// for truncated bases).
    pub fn staircase_count(&self) -> StaircaseCount {
        let nvars = self.ring.nvars;
        let gens = self.leading_exponents();
        let count = match self.truncation {
            Some(n) => Some(count_below(&gens, nvars, n)),
            None => count_box(&gens, nvars),
        };
        match count {
            Some(c) => StaircaseCount::Finite(u64::try_from(c).unwrap_or(u64::MAX)),
            None => StaircaseCount::Infinite,
        }
    }

    pub fn staircase(&self) -> Staircase {
        let count = self.staircase_count();
        let standard_monomials = match count {
            StaircaseCount::Finite(n) if n <= MATERIALIZE_LIMIT => {
                let lms: Vec<Monomial> = self.leading_monomials().cloned().collect();
                Some(enumerate(&lms, self.ring.nvars, self.truncation, n))
            }
            _ => None,
        };
        Staircase {
            count,
            standard_monomials,
        }
    }

    /// For each variable, the smallest pure power among the leading
    /// monomials, if any.
    pub fn pure_power_exponents(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.ring.nvars];
        for m in self.leading_monomials() {
            if m.is_one() {
                return vec![Some(0); self.ring.nvars];
            }
            if let Some((i, e)) = m.as_pure_power() {
                out[i] = Some(out[i].map_or(e, |x: u32| x.min(e)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(gens: &[Vec<u32>], bound: u32, nvars: usize) -> u128 {
        let mut count = 0;
        let total = (bound as usize).pow(nvars as u32);
        for idx in 0..total {
            let mut e = Vec::with_capacity(nvars);
            let mut r = idx;
            for _ in 0..nvars {
                e.push((r % bound as usize) as u32);
                r /= bound as usize;
            }
            if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn box_count_matches_brute_force() {
        let cases: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![2, 0], vec![0, 6]],
            vec![vec![1, 1], vec![2, 0], vec![0, 2]],
            vec![
                vec![3, 0, 0],
                vec![0, 2, 0],
                vec![0, 0, 4],
                vec![1, 1, 1],
                vec![2, 0, 1],
            ],
            vec![
                vec![5, 0, 0],
                vec![0, 5, 0],
                vec![0, 0, 5],
                vec![2, 2, 0],
                vec![0, 3, 1],
            ],
        ];
        for gens in cases {
            let n = gens[0].len();
            assert_eq!(count_box(&gens, n), Some(brute(&gens, 8, n)), "{gens:?}");
        }
    }

    #[test]
    fn missing_pure_power_is_infinite() {
        assert_eq!(count_box(&[vec![1, 1], vec![2, 0]], 2), None);
        assert_eq!(count_box(&[], 1), None);
        assert_eq!(count_box(&[vec![0, 0]], 2), Some(0));
    }

    #[test]
    fn truncated_count_matches_enumeration() {
        let gens = vec![vec![1, 1, 0], vec![0, 0, 3]];
        let mons: Vec<Monomial> = gens
            .iter()
            .map(|g| Monomial::from_exponents(g.clone()).unwrap())
            .collect();
        for budget in 0..9 {
            let listed = enumerate(&mons, 3, Some(budget), u64::MAX).len() as u128;
            assert_eq!(count_below(&gens, 3, budget), listed, "budget {budget}");
        }
        // no generators: all monomials of degree < 4 in 3 variables
        assert_eq!(count_below(&[], 3, 4), 20);
    }
}
