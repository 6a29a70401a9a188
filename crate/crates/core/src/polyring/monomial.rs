use crate::error::{Error, Result};

/// Dense exponent vector with a cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

fn overflow() -> Error {
    Error::ResourceExceeded("monomial exponent overflows 32 bits".into())
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Result<Self> {
        let mut degree = 0u32;
        for &e in &exps {
            degree = degree.checked_add(e).ok_or_else(overflow)?;
        }
        Ok(Monomial { exps, degree })
    }

    /// Pure power `x_i^e`.
    pub fn pure_power(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or_else(overflow)?);
        }
        let degree = self.degree.checked_add(other.degree).ok_or_else(overflow)?;
        Ok(Monomial { exps, degree })
    }

    pub fn pow(&self, e: u32) -> Result<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(e).ok_or_else(overflow)?);
        }
        let degree = self.degree.checked_mul(e).ok_or_else(overflow)?;
        Ok(Monomial { exps, degree })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut it = self.support();
        let i = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((i, self.exps[i]))
    }

    /// Writes the monomial as `x^2*y` using the given names; `1` for the unit.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_is_cached_sum() {
        let m = Monomial::from_exponents(vec![1, 0, 3]).unwrap();
        assert_eq!(m.degree(), 4);
        let n = m.mul(&Monomial::var(3, 1)).unwrap();
        assert_eq!(n.exponents(), &[1, 1, 3]);
        assert_eq!(n.degree(), 5);
    }

    #[test]
    fn multiplication_overflow_is_an_error() {
        let big = Monomial::pure_power(2, 0, u32::MAX);
        assert!(matches!(
            big.mul(&Monomial::var(2, 0)),
            Err(Error::ResourceExceeded(_))
        ));
        assert!(Monomial::pure_power(1, 0, 1 << 20).pow(1 << 13).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exponents(vec![2, 1]).unwrap();
        let b = Monomial::from_exponents(vec![1, 3]).unwrap();
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l.exponents(), &[2, 3]);
        assert_eq!(a.quotient_of(&l).unwrap().exponents(), &[0, 2]);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(2, 0).is_coprime(&Monomial::var(2, 1)));
    }

    #[test]
    fn pure_powers() {
        assert_eq!(Monomial::pure_power(3, 2, 4).as_pure_power(), Some((2, 4)));
        assert_eq!(Monomial::one(3).as_pure_power(), None);
        assert_eq!(
            Monomial::from_exponents(vec![1, 1, 0])
                .unwrap()
                .as_pure_power(),
            None
        );
    }
}
