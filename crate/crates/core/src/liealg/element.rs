use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalars::Rational;

/// Position of a matrix unit `E_{row,col} t^deg`.
pub type Key = (u16, u16, i32);

/// Element of a (possibly centrally extended) loop algebra: a sparse matrix
/// of Laurent polynomials in `t` plus a multiple of the central element `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LoopElement {
    entries: BTreeMap<Key, Rational>,
    central: Rational,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl LoopElement {
    pub fn zero() -> Self {
        LoopElement { entries: BTreeMap::new(), central: Rational::zero() }
    }

    /// `coef * E_{row,col} t^deg` (0-based indices).
    pub fn unit(row: usize, col: usize, deg: i32, coef: i64) -> Self {
        let mut x = Self::zero();
        x.add_entry((row as u16, col as u16, deg), &q(coef));
        x
    }

    pub fn central_element(coef: Rational) -> Self {
        LoopElement { entries: BTreeMap::new(), central: coef }
    }

    /// Builds from `(row, col, deg, coef)` terms.
    pub fn from_terms(terms: &[(usize, usize, i32, i64)]) -> Self {
        let mut x = Self::zero();
        for &(r, c, d, k) in terms {
            x.add_entry((r as u16, c as u16, d), &q(k));
        }
        x
    }

    fn add_entry(&mut self, key: Key, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(key).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.entries.iter()
    }

    pub fn entry(&self, key: Key) -> Rational {
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn central(&self) -> &Rational {
        &self.central
    }

    pub fn matrix_part(&self) -> LoopElement {
        LoopElement { entries: self.entries.clone(), central: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty() && self.central.is_zero()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &LoopElement) -> LoopElement {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_entry(*k, v);
        }
        out.central += &other.central;
        out
    }

    pub fn sub(&self, other: &LoopElement) -> LoopElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LoopElement {
        LoopElement {
            entries: self.entries.iter().map(|(k, v)| (*k, -v)).collect(),
            central: -&self.central,
        }
    }

    pub fn scale(&self, s: &Rational) -> LoopElement {
        if s.is_zero() {
            return Self::zero();
        }
        LoopElement {
            entries: self.entries.iter().map(|(k, v)| (*k, v * s)).collect(),
            central: &self.central * s,
        }
    }

    pub fn scale_int(&self, s: i64) -> LoopElement {
        self.scale(&q(s))
    }

    /// Multiplies every coefficient of degree `d` by `sign^d`, i.e. `t ↦ sign·t`.
    pub fn substitute_t_sign(&self, sign: i64) -> LoopElement {
        let mut out = self.clone();
        if sign < 0 {
            for ((_, _, d), v) in out.entries.iter_mut() {
                if d.rem_euclid(2) == 1 {
                    *v = -v.clone();
                }
            }
        }
        out
    }

    /// Sign convention: the first stored entry (row, col, deg order) is
    /// positive; for a purely central element the central part is.
    pub fn is_normalized(&self) -> bool {
        match self.entries.values().next() {
            Some(v) => v.is_positive(),
            None => !self.central.is_negative(),
        }
    }

    pub fn normalized(&self) -> LoopElement {
        if self.is_normalized() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// True when one of `self`, `-self` equals `other`.
    pub fn equal_up_to_sign(&self, other: &LoopElement) -> bool {
        self == other || self.neg() == *other
    }

    /// `other = k * self` for some nonzero rational `k`, returned.
    pub fn ratio_to(&self, other: &LoopElement) -> Option<Rational> {
        let (key, v) = self.entries.iter().next()?;
        let k = other.entry(*key) / v;
        if k.is_zero() {
            return None;
        }
        if self.scale(&k) == *other {
            Some(k)
        } else {
            None
        }
    }

    /// Matrix product of the matrix parts (the central part is dropped).
    pub fn matmul(&self, other: &LoopElement) -> LoopElement {
        LoopElement { entries: product(self, other), central: Rational::zero() }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.entries.keys().map(|k| k.2)
    }

    /// Trace of the matrix part in each degree.
    pub fn traces(&self) -> BTreeMap<i32, Rational> {
        let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
        for ((r, c, d), v) in &self.entries {
            if r == c {
                *out.entry(*d).or_insert_with(Rational::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Witness form: `[[row, col, deg, "coef"], ...]` plus the central part.
    pub fn witness(&self) -> serde_json::Value {
        let terms: Vec<_> =
            self.entries.iter().map(|((r, c, d), v)| serde_json::json!([r, c, d, v.to_string()])).collect();
        serde_json::json!({"terms": terms, "central": self.central.to_string()})
    }
}

impl Serialize for LoopElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.witness().serialize(serializer)
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((r, c, d), v) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({v})E{r},{c}")?;
            if *d != 0 {
                write!(f, "t^{d}")?;
            }
        }
        if !self.central.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})c", self.central)?;
        }
        Ok(())
    }
}

/// Matrix product of the Laurent matrix parts.
fn product(x: &LoopElement, y: &LoopElement) -> BTreeMap<Key, Rational> {
    let mut rows: HashMap<u16, Vec<(u16, i32, &Rational)>> = HashMap::new();
    for ((r, c, d), v) in &y.entries {
        rows.entry(*r).or_default().push((*c, *d, v));
    }
    let mut out: BTreeMap<Key, Rational> = BTreeMap::new();
    for ((r, k, d1), v1) in &x.entries {
        if let Some(row) = rows.get(k) {
            for (c, d2, v2) in row {
                let slot = out.entry((*r, *c, d1 + d2)).or_insert_with(Rational::zero);
                *slot += v1 * *v2;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `[x, y]` with the loop cocycle `[a t^m, b t^k] = [a,b] t^{m+k} + m δ_{m+k,0} tr(ab) c`.
pub fn bracket(x: &LoopElement, y: &LoopElement) -> LoopElement {
    let mut entries = product(x, y);
    for (k, v) in product(y, x) {
        let slot = entries.entry(k).or_insert_with(Rational::zero);
        *slot -= v;
        if slot.is_zero() {
            entries.remove(&k);
        }
    }
    let mut central = Rational::zero();
    if x.entries.keys().any(|k| k.2 != 0) {
        for ((r, c, m), v) in &x.entries {
            if *m == 0 {
                continue;
            }
            if let Some(w) = y.entries.get(&(*c, *r, -m)) {
                central += v * w * q(*m as i64);
            }
        }
    }
    LoopElement { entries, central }
}

pub fn commutes(x: &LoopElement, y: &LoopElement) -> bool {
    bracket(x, y).is_zero()
}

/// `(ad x)^k y`.
pub fn ad_power(x: &LoopElement, y: &LoopElement, k: u32) -> LoopElement {
    let mut cur = y.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = bracket(x, &cur);
    }
    cur
}

/// `sum_n (ad x)^n y / n!`; `None` unless `(ad x)^k y = 0` for some `k <= bound`.
pub fn ad_exp_terms(x: &LoopElement, y: &LoopElement, bound: u32) -> Option<LoopElement> {
    let mut total = y.clone();
    let mut term = y.clone();
    let mut fact = Rational::one();
    for n in 1..=bound {
        term = bracket(x, &term);
        if term.is_zero() {
            return Some(total);
        }
        fact *= q(n as i64);
        total = total.add(&term.scale(&fact.recip()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_is_antisymmetric() {
        let x = LoopElement::from_terms(&[(0, 1, 1, 1), (1, 0, 2, 3)]);
        let y = LoopElement::from_terms(&[(1, 0, -1, 2), (0, 1, -2, 5)]);
        let xy = bracket(&x, &y);
        let yx = bracket(&y, &x);
        assert_eq!(xy, yx.neg());
        assert!(!xy.central().is_zero());
        assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn normalization() {
        let x = LoopElement::from_terms(&[(0, 1, 0, -2), (1, 2, 0, 1)]);
        assert!(!x.is_normalized());
        assert!(x.normalized().is_normalized());
        assert!(x.equal_up_to_sign(&x.neg()));
        assert_eq!(x.ratio_to(&x.scale_int(-3)), Some(q(-3)));
    }
}
