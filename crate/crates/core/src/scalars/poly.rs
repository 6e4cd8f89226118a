use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{add_repr, is_zero_repr, mul_repr, neg_repr, zero_repr, Repr, RingSpec};

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct Poly(BTreeMap<Monomial, Repr>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn monomial(m: Monomial, c: Repr) -> Self {
        let mut map = BTreeMap::new();
        if !is_zero_repr(&c) {
            map.insert(m, c);
        }
        Poly(map)
    }

    pub fn constant(nvars: usize, c: Repr, _base: &RingSpec) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Repr)> {
        self.0.iter()
    }

    pub fn constant_term(&self, nvars: usize, base: &RingSpec) -> Repr {
        self.0.get(&Monomial::one(nvars)).cloned().unwrap_or_else(|| zero_repr(base))
    }

    pub fn without_constant(&self, nvars: usize) -> Poly {
        let mut out = self.clone();
        out.0.remove(&Monomial::one(nvars));
        out
    }

    fn accumulate(map: &mut BTreeMap<Monomial, Repr>, m: Monomial, c: Repr, base: &RingSpec) {
        match map.remove(&m) {
            Some(prev) => {
                let s = add_repr(base, &prev, &c);
                if !is_zero_repr(&s) {
                    map.insert(m, s);
                }
            }
            None => {
                if !is_zero_repr(&c) {
                    map.insert(m, c);
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, base: &RingSpec) -> Poly {
        let mut map = self.0.clone();
        for (m, c) in &other.0 {
            Self::accumulate(&mut map, m.clone(), c.clone(), base);
        }
        Poly(map)
    }

    pub fn neg(&self, base: &RingSpec) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), neg_repr(base, c))).collect())
    }

    pub fn mul(&self, other: &Poly, base: &RingSpec) -> Poly {
        let mut map = BTreeMap::new();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                Self::accumulate(&mut map, m1.mul(m2), mul_repr(base, c1, c2), base);
            }
        }
        Poly(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::one(2) < b);
    }
}
