use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::SteinbergError;
use crate::liealg::{Algebra, Key, LoopElement};
use crate::rootsys::RootVector;
use crate::scalars::{Rational, Ring, RingValue};

/// Group element in the defining representation: a sparse matrix of Laurent
/// polynomials in `t` with coefficients in a ring. Missing entries are zero,
/// including on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMatrix {
    ring: Ring,
    entries: BTreeMap<Key, RingValue>,
}

impl GroupMatrix {
    pub fn identity(ring: &Ring, n: usize) -> Self {
        let entries = (0..n).map(|i| ((i as u16, i as u16, 0), ring.one())).collect();
        GroupMatrix { ring: ring.clone(), entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, key: &Key) -> RingValue {
        self.entries.get(key).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &RingValue)> {
        self.entries.iter()
    }

    fn accumulate(map: &mut BTreeMap<Key, RingValue>, key: Key, v: RingValue) -> Result<(), SteinbergError> {
        if v.is_zero() {
            return Ok(());
        }
        match map.remove(&key) {
            Some(prev) => {
                let s = prev.add(&v)?;
                if !s.is_zero() {
                    map.insert(key, s);
                }
            }
            None => {
                map.insert(key, v);
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &GroupMatrix) -> Result<GroupMatrix, SteinbergError> {
        let mut rows: HashMap<u16, Vec<(u16, i32, &RingValue)>> = HashMap::new();
        for ((r, c, d), v) in &other.entries {
            rows.entry(*r).or_default().push((*c, *d, v));
        }
        let mut out = BTreeMap::new();
        for ((r, k, d1), v1) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (c, d2, v2) in row {
                    Self::accumulate(&mut out, (*r, *c, d1 + d2), v1.mul(v2)?)?;
                }
            }
        }
        Ok(GroupMatrix { ring: self.ring.clone(), entries: out })
    }

    pub fn is_identity(&self, n: usize) -> bool {
        *self == GroupMatrix::identity(&self.ring, n)
    }

    /// Image under the canonical map of coefficient rings.
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&RingValue) -> Result<RingValue, SteinbergError>) -> Result<GroupMatrix, SteinbergError> {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            Self::accumulate(&mut entries, *k, f(v)?)?;
        }
        Ok(GroupMatrix { ring: target.clone(), entries })
    }
}

/// Integral divided powers `E^k / k!` of a nilpotent root vector, `k >= 1`.
#[derive(Debug, Clone)]
pub struct DividedPowers {
    powers: Vec<BTreeMap<Key, BigInt>>,
}

impl DividedPowers {
    pub fn new(e: &LoopElement) -> Result<Self, SteinbergError> {
        let mut powers = Vec::new();
        let mut cur = e.matrix_part();
        let mut fact = Rational::one();
        let mut k = 1i64;
        while !cur.is_zero() {
            let mut m = BTreeMap::new();
            for (key, v) in cur.entries() {
                let q = v / &fact;
                if !q.is_integer() {
                    return Err(SteinbergError::NonIntegral(format!("E^{k}/{k}! has entry {q}")));
                }
                m.insert(*key, q.to_integer());
            }
            powers.push(m);
            k += 1;
            if k > 64 {
                return Err(SteinbergError::NotNilpotent);
            }
            fact *= Rational::from_integer(k.into());
            cur = cur.matmul(e);
        }
        Ok(DividedPowers { powers })
    }

    /// `x(κ) = I + sum_k κ^k E^k / k!`.
    pub fn exp(&self, ring: &Ring, n: usize, kappa: &RingValue) -> Result<GroupMatrix, SteinbergError> {
        let mut out = GroupMatrix::identity(ring, n);
        let mut power = ring.one();
        for m in &self.powers {
            power = power.mul(kappa)?;
            for (key, v) in m {
                let term = ring.from_int(v).mul(&power)?;
                GroupMatrix::accumulate(&mut out.entries, *key, term)?;
            }
        }
        Ok(out)
    }
}

/// Factors a unipotent matrix as `prod_c x_c(κ_c)` over the given ordered
/// roots, lowest height first. Errors when the matrix is not such a product.
pub fn peel(
    alg: &Algebra,
    m: &GroupMatrix,
    roots: &[RootVector],
    vectors: &[LoopElement],
    powers: &[DividedPowers],
) -> Result<Vec<RingValue>, SteinbergError> {
    let ring = m.ring().clone();
    let n = alg.matrix_size();
    let mut weights: HashMap<Key, Option<RootVector>> = HashMap::new();
    let mut weight_of = |key: &Key| -> Option<RootVector> {
        weights
            .entry(*key)
            .or_insert_with(|| {
                if key.0 == key.1 {
                    None
                } else {
                    alg.weight_of(&LoopElement::unit(key.0 as usize, key.1 as usize, key.2, 1)).ok()
                }
            })
            .clone()
    };
    let mut cur = m.clone();
    let mut out = Vec::with_capacity(roots.len());
    for ((c, e), p) in roots.iter().zip(vectors).zip(powers) {
        let (key0, e0) = e
            .entries()
            .find(|(_, v)| v.abs().is_one())
            .ok_or_else(|| SteinbergError::NonIntegral(format!("root vector for {c} has no unit entry")))?;
        let mut kappa = cur.get(key0);
        if e0.is_negative() {
            kappa = kappa.neg();
        }
        let mut keys: Vec<Key> = cur.entries.keys().copied().filter(|k| weight_of(k).as_ref() == Some(c)).collect();
        keys.extend(e.entries().map(|(k, _)| *k));
        for key in keys {
            let want = ring.from_int(&e.entry(key).to_integer()).mul(&kappa)?;
            if want != cur.get(&key) {
                return Err(SteinbergError::NotInGroup(format!("weight {c} component is not a multiple of E_c")));
            }
        }
        if !kappa.is_zero() {
            cur = p.exp(&ring, n, &kappa.neg())?.mul(&cur)?;
        }
        out.push(kappa);
    }
    if !cur.is_identity(n) {
        return Err(SteinbergError::NotInGroup("remainder after factoring is not the identity".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::FiniteType;
    use crate::liealg::{build_algebra, AlgebraKind};

    #[test]
    fn exp_and_peel_round_trip() {
        let alg = build_algebra(AlgebraKind::Finite(FiniteType::C3)).unwrap();
        let root = RootVector(vec![0, 0, 1]);
        let e = alg.root_vector(&root).unwrap().rep;
        let p = DividedPowers::new(&e).unwrap();
        let ring = Ring::modular(5).unwrap();
        let x = p.exp(&ring, 7, &ring.from_i64(3)).unwrap();
        let back = peel(&alg, &x, &[root], &[e], &[p]).unwrap();
        assert_eq!(back, vec![ring.from_i64(3)]);
    }
}
