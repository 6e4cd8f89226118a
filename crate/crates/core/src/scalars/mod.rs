//! Exact commutative-ring kernel.
//!
//! Every computation in the crate that needs scalars goes through [`Ring`] and
//! [`RingValue`]: arbitrary-precision integers, reduced fractions, residues
//! modulo `n >= 2`, and sparse multivariate polynomials over any of those.
//! Values are immutable and always kept in canonical form, so structural
//! equality is mathematical equality.

mod parse;
mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use poly::Monomial;

/// Exact rationals used for Lie algebra coefficients.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("polynomial variable names must be distinct and nonempty: {0:?}")]
    BadVariables(Vec<String>),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("cannot parse ring spec {0:?}")]
    BadSpec(String),
    #[error("cannot parse value {value:?} in ring {ring}")]
    BadValue { value: String, ring: String },
    #[error("rational {0} has no image in {1}")]
    NoImage(String, String),
}

/// Description of a commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    Modular(u64),
    Polynomial { base: Box<RingSpec>, vars: Vec<String> },
}

impl RingSpec {
    fn validate(&self) -> Result<(), ScalarError> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => Ok(()),
            RingSpec::Modular(n) if *n < 2 => Err(ScalarError::InvalidModulus(*n)),
            RingSpec::Modular(_) => Ok(()),
            RingSpec::Polynomial { base, vars } => {
                let mut seen = std::collections::HashSet::new();
                if vars.is_empty() || vars.iter().any(|v| v.is_empty() || !seen.insert(v)) {
                    return Err(ScalarError::BadVariables(vars.clone()));
                }
                base.validate()
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Modular(n) => write!(f, "zmod:{n}"),
            RingSpec::Polynomial { base, vars } => write!(f, "poly:{base}:{}", vars.join(",")),
        }
    }
}

/// Canonical payload of a ring element. Interpreted relative to a [`RingSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(poly::Poly),
}

/// Shareable handle to a validated ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingSpec>);

/// An element of a [`Ring`], in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingValue {
    ring: Ring,
    repr: Repr,
}

pub fn make_ring(spec: RingSpec) -> Result<Ring, ScalarError> {
    spec.validate()?;
    Ok(Ring(Arc::new(spec)))
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingSpec::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingSpec::Rationals))
    }

    pub fn modular(n: u64) -> Result<Ring, ScalarError> {
        make_ring(RingSpec::Modular(n))
    }

    pub fn polynomial(base: RingSpec, vars: &[&str]) -> Result<Ring, ScalarError> {
        make_ring(RingSpec::Polynomial {
            base: Box::new(base),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// Parses `Z`, `Q`, `zmod:7`, `poly:Q:r,s` (bases nest: `poly:zmod:5:x`).
    pub fn parse(s: &str) -> Result<Ring, ScalarError> {
        make_ring(parse::parse_spec(s)?)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    pub fn zero(&self) -> RingValue {
        self.wrap(zero_repr(&self.0))
    }

    pub fn one(&self) -> RingValue {
        self.wrap(one_repr(&self.0))
    }

    pub fn from_i64(&self, n: i64) -> RingValue {
        self.from_int(&BigInt::from(n))
    }

    /// The canonical map `Z -> R`.
    pub fn from_int(&self, n: &BigInt) -> RingValue {
        self.wrap(int_repr(&self.0, n))
    }

    /// Image of a rational; fails when the denominator is not invertible.
    pub fn from_rational(&self, q: &Rational) -> Result<RingValue, ScalarError> {
        let num = self.from_int(q.numer());
        if q.denom().is_one() {
            return Ok(num);
        }
        let den = self.from_int(q.denom());
        let inv = den
            .try_invert()
            .map_err(|_| ScalarError::NoImage(q.to_string(), self.to_string()))?;
        num.mul(&inv)
    }

    /// The `idx`-th polynomial variable.
    pub fn var(&self, idx: usize) -> Option<RingValue> {
        match &*self.0 {
            RingSpec::Polynomial { base, vars } if idx < vars.len() => {
                let mut exps = vec![0u32; vars.len()];
                exps[idx] = 1;
                Some(self.wrap(Repr::Poly(poly::Poly::monomial(
                    Monomial::new(exps),
                    one_repr(base),
                ))))
            }
            _ => None,
        }
    }

    /// Coefficient ring of a polynomial ring.
    pub fn base(&self) -> Option<Ring> {
        match &*self.0 {
            RingSpec::Polynomial { base, .. } => Some(Ring(Arc::new((**base).clone()))),
            _ => None,
        }
    }

    /// Constant polynomial with the given coefficient.
    pub fn constant(&self, c: &RingValue) -> Result<RingValue, ScalarError> {
        match &*self.0 {
            RingSpec::Polynomial { base, vars } if **base == *c.ring.spec() => {
                Ok(self.wrap(Repr::Poly(poly::Poly::constant(vars.len(), c.repr.clone(), base))))
            }
            _ => Err(ScalarError::RingMismatch(c.ring.to_string(), self.to_string())),
        }
    }

    pub fn var_named(&self, name: &str) -> Option<RingValue> {
        match &*self.0 {
            RingSpec::Polynomial { vars, .. } => {
                vars.iter().position(|v| v == name).and_then(|i| self.var(i))
            }
            _ => None,
        }
    }

    /// Parses a scalar literal: an integer, a fraction (where meaningful), or
    /// an optionally negated variable name.
    pub fn parse_value(&self, s: &str) -> Result<RingValue, ScalarError> {
        parse::parse_value(self, s)
    }

    fn wrap(&self, repr: Repr) -> RingValue {
        RingValue { ring: self.clone(), repr }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn zero_repr(spec: &RingSpec) -> Repr {
    match spec {
        RingSpec::Integers => Repr::Int(BigInt::zero()),
        RingSpec::Rationals => Repr::Rat(BigRational::zero()),
        RingSpec::Modular(_) => Repr::Mod(0),
        RingSpec::Polynomial { .. } => Repr::Poly(poly::Poly::zero()),
    }
}

pub(crate) fn one_repr(spec: &RingSpec) -> Repr {
    int_repr(spec, &BigInt::one())
}

pub(crate) fn int_repr(spec: &RingSpec, n: &BigInt) -> Repr {
    match spec {
        RingSpec::Integers => Repr::Int(n.clone()),
        RingSpec::Rationals => Repr::Rat(BigRational::from_integer(n.clone())),
        RingSpec::Modular(m) => {
            let r = n.mod_floor(&BigInt::from(*m));
            Repr::Mod(r.to_u64().expect("residue fits"))
        }
        RingSpec::Polynomial { base, vars } => {
            let c = int_repr(base, n);
            Repr::Poly(poly::Poly::constant(vars.len(), c, base))
        }
    }
}

pub(crate) fn is_zero_repr(r: &Repr) -> bool {
    match r {
        Repr::Int(n) => n.is_zero(),
        Repr::Rat(q) => q.is_zero(),
        Repr::Mod(v) => *v == 0,
        Repr::Poly(p) => p.is_zero(),
    }
}

pub(crate) fn add_repr(spec: &RingSpec, a: &Repr, b: &Repr) -> Repr {
    match (spec, a, b) {
        (_, Repr::Int(x), Repr::Int(y)) => Repr::Int(x + y),
        (_, Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
        (RingSpec::Modular(m), Repr::Mod(x), Repr::Mod(y)) => {
            Repr::Mod(((*x as u128 + *y as u128) % *m as u128) as u64)
        }
        (RingSpec::Polynomial { base, .. }, Repr::Poly(x), Repr::Poly(y)) => {
            Repr::Poly(x.add(y, base))
        }
        _ => unreachable!("payload does not match ring spec"),
    }
}

pub(crate) fn neg_repr(spec: &RingSpec, a: &Repr) -> Repr {
    match (spec, a) {
        (_, Repr::Int(x)) => Repr::Int(-x),
        (_, Repr::Rat(x)) => Repr::Rat(-x),
        (RingSpec::Modular(m), Repr::Mod(x)) => Repr::Mod(if *x == 0 { 0 } else { m - x }),
        (RingSpec::Polynomial { base, .. }, Repr::Poly(x)) => Repr::Poly(x.neg(base)),
        _ => unreachable!("payload does not match ring spec"),
    }
}

pub(crate) fn mul_repr(spec: &RingSpec, a: &Repr, b: &Repr) -> Repr {
    match (spec, a, b) {
        (_, Repr::Int(x), Repr::Int(y)) => Repr::Int(x * y),
        (_, Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
        (RingSpec::Modular(m), Repr::Mod(x), Repr::Mod(y)) => {
            Repr::Mod(((*x as u128 * *y as u128) % *m as u128) as u64)
        }
        (RingSpec::Polynomial { base, .. }, Repr::Poly(x), Repr::Poly(y)) => {
            Repr::Poly(x.mul(y, base))
        }
        _ => unreachable!("payload does not match ring spec"),
    }
}

/// `x` is nilpotent in the ring described by `spec`.
pub(crate) fn is_nilpotent_repr(spec: &RingSpec, x: &Repr) -> bool {
    match (spec, x) {
        (RingSpec::Modular(m), Repr::Mod(v)) => v % radical(*m) == 0,
        (RingSpec::Polynomial { base, .. }, Repr::Poly(p)) => {
            p.terms().all(|(_, c)| is_nilpotent_repr(base, c))
        }
        _ => is_zero_repr(x),
    }
}

fn radical(mut n: u64) -> u64 {
    let mut rad = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            rad *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        rad *= n;
    }
    rad
}

pub(crate) fn invert_repr(spec: &RingSpec, x: &Repr) -> Option<Repr> {
    match (spec, x) {
        (RingSpec::Integers, Repr::Int(n)) => {
            if n.abs().is_one() {
                Some(Repr::Int(n.clone()))
            } else {
                None
            }
        }
        (RingSpec::Rationals, Repr::Rat(q)) => {
            if q.is_zero() {
                None
            } else {
                Some(Repr::Rat(q.recip()))
            }
        }
        (RingSpec::Modular(m), Repr::Mod(v)) => {
            let e = BigInt::from(*v).extended_gcd(&BigInt::from(*m));
            if !e.gcd.is_one() {
                return None;
            }
            let inv = e.x.mod_floor(&BigInt::from(*m));
            Some(Repr::Mod(inv.to_u64().expect("residue fits")))
        }
        (RingSpec::Polynomial { base, vars }, Repr::Poly(p)) => {
            // Units of A[x]: unit constant term plus nilpotent higher part.
            let c = p.constant_term(vars.len(), base);
            let c_inv = invert_repr(base, &c)?;
            let rest = p.without_constant(vars.len());
            if !rest.terms().all(|(_, k)| is_nilpotent_repr(base, k)) {
                return None;
            }
            let n = poly::Poly::constant(vars.len(), c_inv.clone(), base).mul(&rest, base);
            // (1 + n)^{-1} = sum (-n)^k, terminating since n is nilpotent.
            let one = poly::Poly::constant(vars.len(), one_repr(base), base);
            let mut acc = one.clone();
            let mut term = one;
            let neg_n = n.neg(base);
            for _ in 0..4096 {
                term = term.mul(&neg_n, base);
                if term.is_zero() {
                    let inv = poly::Poly::constant(vars.len(), c_inv, base).mul(&acc, base);
                    return Some(Repr::Poly(inv));
                }
                acc = acc.add(&term, base);
            }
            None
        }
        _ => unreachable!("payload does not match ring spec"),
    }
}

impl RingValue {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn same_ring(&self, other: &RingValue) -> Result<(), ScalarError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(ScalarError::RingMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_repr(&self.repr)
    }

    pub fn is_one(&self) -> bool {
        self.repr == one_repr(self.ring.spec())
    }

    pub fn add(&self, other: &RingValue) -> Result<RingValue, ScalarError> {
        self.same_ring(other)?;
        Ok(self.ring.wrap(add_repr(self.ring.spec(), &self.repr, &other.repr)))
    }

    pub fn sub(&self, other: &RingValue) -> Result<RingValue, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingValue) -> Result<RingValue, ScalarError> {
        self.same_ring(other)?;
        Ok(self.ring.wrap(mul_repr(self.ring.spec(), &self.repr, &other.repr)))
    }

    pub fn neg(&self) -> RingValue {
        self.ring.wrap(neg_repr(self.ring.spec(), &self.repr))
    }

    pub fn pow(&self, mut e: u32) -> RingValue {
        let spec = self.ring.spec();
        let mut base = self.repr.clone();
        let mut acc = one_repr(spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_repr(spec, &acc, &base);
            }
            base = mul_repr(spec, &base, &base);
            e >>= 1;
        }
        self.ring.wrap(acc)
    }

    /// Multiplicative inverse, or [`ScalarError::NotAUnit`] when `self` is not in `R*`.
    pub fn try_invert(&self) -> Result<RingValue, ScalarError> {
        invert_repr(self.ring.spec(), &self.repr)
            .map(|r| self.ring.wrap(r))
            .ok_or_else(|| ScalarError::NotAUnit(self.to_string()))
    }

    /// Integer value when the element lies in the image of `Z` with an obvious
    /// representative (integers, integral rationals, constant polynomials thereof).
    pub fn as_integer(&self) -> Option<BigInt> {
        repr_as_integer(self.ring.spec(), &self.repr)
    }

    /// Monomial decomposition for polynomial rings: `(exponents, coefficient)`.
    pub fn poly_terms(&self) -> Option<Vec<(Vec<u32>, RingValue)>> {
        match (self.ring.spec(), &self.repr) {
            (RingSpec::Polynomial { base, .. }, Repr::Poly(p)) => {
                let base_ring = Ring(Arc::new((**base).clone()));
                Some(
                    p.terms()
                        .map(|(m, c)| (m.exponents().to_vec(), base_ring.wrap(c.clone())))
                        .collect(),
                )
            }
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Mod(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match &self.repr {
            Repr::Int(n) => Some(BigRational::from_integer(n.clone())),
            Repr::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }
}

fn repr_as_integer(spec: &RingSpec, r: &Repr) -> Option<BigInt> {
    match (spec, r) {
        (_, Repr::Int(n)) => Some(n.clone()),
        (_, Repr::Rat(q)) if q.is_integer() => Some(q.to_integer()),
        (RingSpec::Polynomial { base, vars }, Repr::Poly(p)) => {
            let rest = p.without_constant(vars.len());
            if rest.is_zero() {
                repr_as_integer(base, &p.constant_term(vars.len(), base))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// The canonical ring morphism `Z -> target` applied to an integer-valued element.
pub fn ring_hom_apply(target: &Ring, x: &RingValue) -> Result<RingValue, ScalarError> {
    match x.ring.spec() {
        RingSpec::Integers => Ok(target.from_int(&x.as_integer().expect("integer payload"))),
        _ => Err(ScalarError::RingMismatch(x.ring.to_string(), "Z".into())),
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_repr(self.ring.spec(), &self.repr, f)
    }
}

fn fmt_repr(spec: &RingSpec, r: &Repr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (spec, r) {
        (_, Repr::Int(n)) => write!(f, "{n}"),
        (_, Repr::Rat(q)) => write!(f, "{q}"),
        (_, Repr::Mod(v)) => write!(f, "{v}"),
        (RingSpec::Polynomial { base, vars }, Repr::Poly(p)) => {
            if p.is_zero() {
                return write!(f, "0");
            }
            // Highest term first reads naturally.
            let terms: Vec<_> = p.terms().collect();
            for (k, (m, c)) in terms.iter().rev().enumerate() {
                if k > 0 {
                    write!(f, " + ")?;
                }
                let mono: Vec<String> = m
                    .exponents()
                    .iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect();
                if mono.is_empty() {
                    fmt_repr(base, c, f)?;
                } else if **c == one_repr(base) {
                    write!(f, "{}", mono.join("*"))?;
                } else {
                    write!(f, "(")?;
                    fmt_repr(base, c, f)?;
                    write!(f, ")*{}", mono.join("*"))?;
                }
            }
            Ok(())
        }
        _ => unreachable!("payload does not match ring spec"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let z5 = make_ring(RingSpec::Modular(5)).unwrap();
        assert_eq!(z5.one().residue(), Some(1));
        assert!(Ring::integers().zero().is_zero());
        assert_eq!(make_ring(RingSpec::Modular(1)), Err(ScalarError::InvalidModulus(1)));
        assert!(matches!(
            Ring::polynomial(RingSpec::Rationals, &["r", "r"]),
            Err(ScalarError::BadVariables(_))
        ));
        assert!(Ring::polynomial(RingSpec::Rationals, &[""]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let z5 = Ring::modular(5).unwrap();
        assert!(z5.from_i64(2).add(&z5.from_i64(3)).unwrap().is_zero());
        let q = Ring::rationals();
        let half = q.parse_value("1/2").unwrap();
        let two_thirds = q.parse_value("2/3").unwrap();
        assert_eq!(half.mul(&two_thirds).unwrap(), q.parse_value("1/3").unwrap());
        let z = Ring::integers();
        assert!(z.one().add(&z5.one()).is_err());
    }

    #[test]
    fn inversion_examples() {
        let z7 = Ring::modular(7).unwrap();
        assert_eq!(z7.from_i64(3).try_invert().unwrap().residue(), Some(5));
        let z = Ring::integers();
        assert!(matches!(z.from_i64(2).try_invert(), Err(ScalarError::NotAUnit(_))));
        assert_eq!(z.from_i64(-1).try_invert().unwrap(), z.from_i64(-1));
        assert!(Ring::rationals().zero().try_invert().is_err());
    }

    #[test]
    fn polynomial_units() {
        let q_r = Ring::parse("poly:Q:r").unwrap();
        let r = q_r.var(0).unwrap();
        assert!(r.try_invert().is_err());
        assert!(q_r.from_i64(3).try_invert().is_ok());
        // 1 + 2x is a unit in (Z/4)[x] since 2x is nilpotent.
        let z4x = Ring::parse("poly:zmod:4:x").unwrap();
        let u = z4x.one().add(&z4x.from_i64(2).mul(&z4x.var(0).unwrap()).unwrap()).unwrap();
        let inv = u.try_invert().unwrap();
        assert!(u.mul(&inv).unwrap().is_one());
        let z5x = Ring::parse("poly:zmod:5:x").unwrap();
        let w = z5x.one().add(&z5x.var(0).unwrap()).unwrap();
        assert!(w.try_invert().is_err());
    }

    #[test]
    fn hom_examples() {
        let z = Ring::integers();
        let z5 = Ring::modular(5).unwrap();
        assert_eq!(ring_hom_apply(&z5, &z.from_i64(7)).unwrap().residue(), Some(2));
        assert!(ring_hom_apply(&z5, &z.zero()).unwrap().is_zero());
        let z9 = Ring::modular(9).unwrap();
        assert_eq!(ring_hom_apply(&z9, &z.from_i64(-1)).unwrap().residue(), Some(8));
        assert!(ring_hom_apply(&z5, &z5.one()).is_err());
    }

    #[test]
    fn polynomial_display_and_pow() {
        let ring = Ring::parse("poly:Q:r,s").unwrap();
        let r = ring.var_named("r").unwrap();
        let s = ring.var_named("s").unwrap();
        let x = r.add(&s).unwrap().pow(2);
        assert_eq!(x.to_string(), "r^2 + (2)*r*s + s^2");
        assert_eq!(ring.zero().to_string(), "0");
    }
}
