//! Unipotent subgroups attached to nilpotent sets of real roots: integral
//! structure constants, normal forms by collection, commutators, torus
//! conjugation and change of rings.
//!
//! Structure constants are read off the group commutator
//! `x_a(u) x_b(v) x_a(-u) x_b(-v)` computed in the defining representation
//! over `Q[u, v]` and factored back into root subgroups, lowest height first.

mod identities;
mod matrix;

pub use identities::{positive_context, verify_commutator_identities, verify_naturality};
pub use matrix::{peel, DividedPowers, GroupMatrix};

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::liealg::{Algebra, LieError, LoopElement};
use crate::report::VerificationReport;
use crate::rootsys::{prenilpotency_witness, RootVector, Verdict};
use crate::scalars::{ring_hom_apply, Rational, Ring, RingSpec, RingValue, ScalarError};

#[derive(Debug, Clone, Error)]
pub enum SteinbergError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0} and {1} do not form a prenilpotent pair")]
    NotPrenilpotent(RootVector, RootVector),
    #[error("non-integral structure data: {0}")]
    NonIntegral(String),
    #[error("commutator factor for {0} is not a single monomial")]
    NonMonomial(RootVector),
    #[error("root vector is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not in the unipotent group: {0}")]
    NotInGroup(String),
    #[error("root {0} is not in the context")]
    MissingRoot(RootVector),
    #[error("commutator of {0} and {1} leaves the context")]
    MissingConstants(RootVector, RootVector),
    #[error("word belongs to a different context or ring")]
    ContextMismatch,
    #[error("collection did not terminate")]
    CollectionDiverged,
}

/// One factor `x_c(k u^m v^n)` of `[x_a(u), x_b(v)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstant {
    pub c: RootVector,
    pub m: u32,
    pub n: u32,
    #[serde(serialize_with = "crate::steinberg::ser_bigint")]
    pub k: BigInt,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(k: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(k)
}

/// Ascending height; within a height, roots with larger leading coordinates
/// come first, so simple roots appear in node order.
pub fn canonical_order(roots: &mut [RootVector]) {
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
}

fn poly_ring(base: RingSpec) -> Ring {
    Ring::polynomial(base, &["u", "v"]).expect("distinct variables")
}

/// `[x_a(u), x_b(v)]` factored over the roots of `span`, which must contain
/// every root the commutator touches, in canonical order.
fn commutator_factors(
    alg: &Algebra,
    a: &RootVector,
    b: &RootVector,
    span: &[RootVector],
    base: RingSpec,
) -> Result<Vec<(RootVector, RingValue)>, SteinbergError> {
    let ring = poly_ring(base);
    let n = alg.matrix_size();
    let ea = alg.root_vector(a)?.rep;
    let eb = alg.root_vector(b)?.rep;
    let (pa, pb) = (DividedPowers::new(&ea)?, DividedPowers::new(&eb)?);
    let (u, v) = (ring.var(0).expect("u"), ring.var(1).expect("v"));
    let c = pa
        .exp(&ring, n, &u)?
        .mul(&pb.exp(&ring, n, &v)?)?
        .mul(&pa.exp(&ring, n, &u.neg())?)?
        .mul(&pb.exp(&ring, n, &v.neg())?)?;
    let vectors: Vec<LoopElement> =
        span.iter().map(|r| alg.root_vector(r).map(|p| p.rep)).collect::<Result<_, _>>()?;
    let powers: Vec<DividedPowers> = vectors.iter().map(DividedPowers::new).collect::<Result<_, _>>()?;
    let kappas = peel(alg, &c, span, &vectors, &powers)?;
    Ok(span.iter().cloned().zip(kappas).filter(|(_, k)| !k.is_zero()).collect())
}

/// Structure constants `k(a,b;c)` for a prenilpotent pair, computed over `Q[u,v]`.
pub fn structure_constants(
    alg: &Algebra,
    a: &RootVector,
    b: &RootVector,
    search_depth: usize,
) -> Result<Vec<StructureConstant>, SteinbergError> {
    let pre = prenilpotency_witness(alg.gcm(), &[a.clone(), b.clone()], search_depth);
    if pre.verdict != Verdict::Yes {
        return Err(SteinbergError::NotPrenilpotent(a.clone(), b.clone()));
    }
    // Candidate span: every real root m a + n b of bounded height.
    let mut span = Vec::new();
    let bound = 4;
    for m in 0..=bound {
        for n in 0..=bound {
            if m + n < 2 || m == 0 || n == 0 {
                continue;
            }
            let c = a.scale(m).add(&b.scale(n));
            if crate::rootsys::is_real_root_exact(alg.gcm(), &c) {
                span.push(c);
            }
        }
    }
    canonical_order(&mut span);
    let factors = commutator_factors(alg, a, b, &span, RingSpec::Rationals)?;
    let mut out = Vec::new();
    for (c, kappa) in factors {
        let terms = kappa.poly_terms().expect("polynomial");
        if terms.len() != 1 {
            return Err(SteinbergError::NonMonomial(c));
        }
        let (exps, coef) = &terms[0];
        let q = coef.as_rational().expect("rational coefficient");
        if !q.is_integer() {
            return Err(SteinbergError::NonIntegral(format!("k(a,b;{c}) = {q}")));
        }
        let (m, n) = (exps[0], exps[1]);
        if a.scale(m as i64).add(&b.scale(n as i64)) != c {
            return Err(SteinbergError::NonMonomial(c));
        }
        out.push(StructureConstant { c, m, n, k: q.to_integer() });
    }
    Ok(out)
}

/// Checks the constants in the adjoint representation at rational sample
/// points: `Ad(x_a(r) x_b(s) x_a(-r) x_b(-s))` against the product of
/// `Ad(x_c(k r^m s^n))`, on every root vector and coroot of a finite handle.
pub fn adjoint_crosscheck(
    alg: &Algebra,
    a: &RootVector,
    b: &RootVector,
    constants: &[StructureConstant],
    samples: &[(i64, i64)],
) -> Result<bool, SteinbergError> {
    let ea = alg.root_vector(a)?.rep;
    let eb = alg.root_vector(b)?.rep;
    let mut test_vectors: Vec<LoopElement> = (0..alg.rank()).map(|i| alg.h(i).clone()).collect();
    let roots = crate::rootsys::enumerate_real_roots(alg.gcm(), 30).map_err(|_| SteinbergError::CollectionDiverged)?;
    for r in roots.sorted() {
        test_vectors.push(alg.root_vector(r)?.rep);
    }
    let cvecs: Vec<LoopElement> =
        constants.iter().map(|k| alg.root_vector(&k.c).map(|p| p.rep)).collect::<Result<_, _>>()?;
    let q = |n: i64| Rational::from_integer(n.into());
    for &(r, s) in samples {
        let ops = [ea.scale(&q(r)), eb.scale(&q(s)), ea.scale(&q(-r)), eb.scale(&q(-s))];
        for y in &test_vectors {
            // Ad(g1 g2 g3 g4) = Ad(g1) Ad(g2) Ad(g3) Ad(g4)
            let mut lhs = y.clone();
            for x in ops.iter().rev() {
                lhs = alg.ad_exp(x, &lhs)?;
            }
            let mut rhs = y.clone();
            for (k, e) in constants.iter().zip(&cvecs).rev() {
                let kk: i64 = k.k.clone().try_into().map_err(|_| SteinbergError::NonIntegral(k.k.to_string()))?;
                let coef = kk * r.pow(k.m) * s.pow(k.n);
                rhs = alg.ad_exp(&e.scale(&q(coef)), &rhs)?;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ordered nilpotent set with its integral commutator table.
#[derive(Debug, Clone)]
pub struct SteinbergContext {
    alg: Arc<Algebra>,
    roots: Arc<Vec<RootVector>>,
    index: HashMap<RootVector, usize>,
    vectors: Vec<LoopElement>,
    powers: Vec<DividedPowers>,
    /// `(i, j)` ↦ factors of `[x_i(u), x_j(v)]` as `(c, m, n, k)`.
    table: HashMap<(usize, usize), Vec<Factor>>,
}

/// `(c, m, n, k)`: the factor `x_c(k u^m v^n)`.
type Factor = (usize, u32, u32, BigInt);

/// Element of `U_θ(R)` in normal form: one coefficient per root of the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentWord {
    roots: Arc<Vec<RootVector>>,
    ring: Ring,
    coeffs: Vec<RingValue>,
}

impl UnipotentWord {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingValue] {
        &self.coeffs
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn coefficient(&self, c: &RootVector) -> Option<&RingValue> {
        self.roots.iter().position(|r| r == c).map(|i| &self.coeffs[i])
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero factors as `(root, coefficient)` strings, in order.
    pub fn support(&self) -> Vec<(RootVector, String)> {
        self.roots
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (r.clone(), c.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let factors: Vec<_> = self.support().into_iter().map(|(r, c)| json!({"root": r, "coeff": c})).collect();
        json!({"ring": self.ring.to_string(), "factors": factors})
    }

    /// Image under the canonical map from `Z`.
    pub fn reduce(&self, target: &Ring) -> Result<UnipotentWord, SteinbergError> {
        let coeffs = self.coeffs.iter().map(|c| ring_hom_apply(target, c)).collect::<Result<_, _>>()?;
        Ok(UnipotentWord { roots: self.roots.clone(), ring: target.clone(), coeffs })
    }
}

impl SteinbergContext {
    /// Builds the table for `θ`, which must be closed: every commutator of two
    /// members factors over `θ`.
    pub fn new(alg: Arc<Algebra>, theta: &[RootVector]) -> Result<Self, SteinbergError> {
        let mut roots = theta.to_vec();
        roots.dedup();
        canonical_order(&mut roots);
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let vectors: Vec<LoopElement> =
            roots.iter().map(|r| alg.root_vector(r).map(|p| p.rep)).collect::<Result<_, _>>()?;
        let powers = vectors.iter().map(DividedPowers::new).collect::<Result<_, _>>()?;
        let mut ctx = SteinbergContext {
            alg,
            roots: Arc::new(roots),
            index,
            vectors,
            powers,
            table: HashMap::new(),
        };
        let z = RingSpec::Integers;
        for i in 0..ctx.roots.len() {
            for j in 0..ctx.roots.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (&ctx.roots[i], &ctx.roots[j]);
                let m = ctx.group_commutator(a, b, z.clone())?;
                let kappas = ctx.peel(&m).map_err(|_| SteinbergError::MissingConstants(a.clone(), b.clone()))?;
                let mut entries = Vec::new();
                for (c, kappa) in kappas.iter().enumerate() {
                    if kappa.is_zero() {
                        continue;
                    }
                    let terms = kappa.poly_terms().expect("polynomial");
                    if terms.len() != 1 {
                        return Err(SteinbergError::NonMonomial(ctx.roots[c].clone()));
                    }
                    let (exps, coef) = &terms[0];
                    entries.push((c, exps[0], exps[1], coef.as_integer().expect("integer")));
                }
                ctx.table.insert((i, j), entries);
            }
        }
        Ok(ctx)
    }

    fn group_commutator(&self, a: &RootVector, b: &RootVector, base: RingSpec) -> Result<GroupMatrix, SteinbergError> {
        let ring = poly_ring(base);
        let n = self.alg.matrix_size();
        let (ia, ib) = (self.position(a)?, self.position(b)?);
        let (u, v) = (ring.var(0).expect("u"), ring.var(1).expect("v"));
        let (pa, pb) = (&self.powers[ia], &self.powers[ib]);
        pa.exp(&ring, n, &u)?
            .mul(&pb.exp(&ring, n, &v)?)?
            .mul(&pa.exp(&ring, n, &u.neg())?)?
            .mul(&pb.exp(&ring, n, &v.neg())?)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn position(&self, c: &RootVector) -> Result<usize, SteinbergError> {
        self.index.get(c).copied().ok_or_else(|| SteinbergError::MissingRoot(c.clone()))
    }

    /// Table rows as `(a, b, constants)`.
    pub fn constants(&self, a: &RootVector, b: &RootVector) -> Result<Vec<StructureConstant>, SteinbergError> {
        let key = (self.position(a)?, self.position(b)?);
        Ok(self.table.get(&key).map_or_else(Vec::new, |rows| {
            rows.iter()
                .map(|(c, m, n, k)| StructureConstant { c: self.roots[*c].clone(), m: *m, n: *n, k: k.clone() })
                .collect()
        }))
    }

    /// Negative control: flips the sign of one constant.
    pub fn corrupt_constant(&mut self, a: &RootVector, b: &RootVector) -> Result<bool, SteinbergError> {
        let key = (self.position(a)?, self.position(b)?);
        match self.table.get_mut(&key).and_then(|rows| rows.first_mut()) {
            Some(row) => {
                row.3 = -row.3.clone();
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub fn identity(&self, ring: &Ring) -> UnipotentWord {
        UnipotentWord { roots: self.roots.clone(), ring: ring.clone(), coeffs: vec![ring.zero(); self.roots.len()] }
    }

    /// `x_c(r)`.
    pub fn single(&self, c: &RootVector, r: &RingValue) -> Result<UnipotentWord, SteinbergError> {
        let mut w = self.identity(r.ring());
        w.coeffs[self.position(c)?] = r.clone();
        Ok(w)
    }

    fn check(&self, w: &UnipotentWord) -> Result<(), SteinbergError> {
        if !Arc::ptr_eq(&w.roots, &self.roots) && *w.roots != *self.roots {
            return Err(SteinbergError::ContextMismatch);
        }
        Ok(())
    }

    /// Normal form of a product of factors `x_{i}(r)` by collection.
    pub fn collect(&self, ring: &Ring, factors: Vec<(usize, RingValue)>) -> Result<UnipotentWord, SteinbergError> {
        let mut f: Vec<(usize, RingValue)> = factors.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        let mut steps = 0usize;
        loop {
            steps += 1;
            if steps > 1_000_000 {
                return Err(SteinbergError::CollectionDiverged);
            }
            let Some(p) = (0..f.len().saturating_sub(1)).find(|&p| f[p].0 >= f[p + 1].0) else { break };
            let (b, s) = f[p].clone();
            let (a, r) = f[p + 1].clone();
            if a == b {
                let sum = s.add(&r)?;
                f.splice(p..p + 2, (!sum.is_zero()).then_some((a, sum)));
                continue;
            }
            // x_b(s) x_a(r) = [x_b(s), x_a(r)] x_a(r) x_b(s)
            let rows = self
                .table
                .get(&(b, a))
                .ok_or_else(|| SteinbergError::MissingConstants(self.roots[b].clone(), self.roots[a].clone()))?;
            let mut repl = Vec::with_capacity(rows.len() + 2);
            for (c, m, n, k) in rows {
                let coef = ring.from_int(k).mul(&s.pow(*m))?.mul(&r.pow(*n))?;
                if !coef.is_zero() {
                    repl.push((*c, coef));
                }
            }
            repl.push((a, r));
            repl.push((b, s));
            f.splice(p..p + 2, repl);
        }
        let mut w = self.identity(ring);
        for (i, r) in f {
            w.coeffs[i] = r;
        }
        Ok(w)
    }

    pub fn multiply(&self, u: &UnipotentWord, v: &UnipotentWord) -> Result<UnipotentWord, SteinbergError> {
        self.check(u)?;
        self.check(v)?;
        if u.ring != v.ring {
            return Err(SteinbergError::ContextMismatch);
        }
        let factors = u.coeffs.iter().chain(&v.coeffs).cloned().enumerate().map(|(k, r)| (k % self.roots.len(), r));
        self.collect(&u.ring, factors.collect())
    }

    pub fn inverse(&self, u: &UnipotentWord) -> Result<UnipotentWord, SteinbergError> {
        self.check(u)?;
        let factors = u.coeffs.iter().enumerate().rev().map(|(i, r)| (i, r.neg())).collect();
        self.collect(&u.ring, factors)
    }

    /// `x_a(r) x_b(r') x_a(r)^{-1} x_b(r')^{-1}` in normal form.
    pub fn commutator(&self, a: &RootVector, r: &RingValue, b: &RootVector, rp: &RingValue) -> Result<UnipotentWord, SteinbergError> {
        let (ia, ib) = (self.position(a)?, self.position(b)?);
        self.collect(r.ring(), vec![(ia, r.clone()), (ib, rp.clone()), (ia, r.neg()), (ib, rp.neg())])
    }

    /// Matrix oracle: the product `prod_c x_c(u_c)` in the defining representation.
    pub fn word_matrix(&self, u: &UnipotentWord) -> Result<GroupMatrix, SteinbergError> {
        self.check(u)?;
        let n = self.alg.matrix_size();
        let mut m = GroupMatrix::identity(&u.ring, n);
        for (p, r) in self.powers.iter().zip(&u.coeffs) {
            if !r.is_zero() {
                m = m.mul(&p.exp(&u.ring, n, r)?)?;
            }
        }
        Ok(m)
    }

    /// Factors a matrix back into normal form over this context.
    pub fn peel(&self, m: &GroupMatrix) -> Result<Vec<RingValue>, SteinbergError> {
        peel(&self.alg, m, &self.roots, &self.vectors, &self.powers)
    }

    pub fn from_matrix(&self, m: &GroupMatrix) -> Result<UnipotentWord, SteinbergError> {
        let coeffs = self.peel(m)?;
        Ok(UnipotentWord { roots: self.roots.clone(), ring: m.ring().clone(), coeffs })
    }

    /// Product of random factors with small integer coefficients, collected.
    pub fn random_word(&self, rng: &mut impl rand::Rng, ring: &Ring, max_factors: usize) -> Result<UnipotentWord, SteinbergError> {
        let len = rng.gen_range(1..=max_factors);
        let factors = (0..len)
            .map(|_| (rng.gen_range(0..self.roots.len()), ring.from_i64(rng.gen_range(-5..=5))))
            .collect();
        self.collect(ring, factors)
    }

    /// `t x_i(r) t^{-1} = x_i(t(α_i) r)`.
    pub fn torus_conjugate(&self, t: &TorusElement, i: usize, r: &RingValue) -> Result<UnipotentWord, SteinbergError> {
        let n = self.alg.rank();
        let ai = {
            let mut v = vec![0; n];
            v[i] = 1;
            RootVector(v)
        };
        let scale = t.on_root(self.alg.gcm(), &ai)?;
        self.single(&ai, &scale.mul(r)?)
    }
}

/// Element of `Hom(Λ', R^*)`, given by its values on the basis of `Λ'` dual to the `h_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    values: Vec<RingValue>,
}

impl TorusElement {
    pub fn new(values: Vec<RingValue>) -> Result<Self, SteinbergError> {
        for v in &values {
            v.try_invert()?;
        }
        Ok(TorusElement { values })
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        TorusElement { values: vec![ring.one(); n] }
    }

    /// `r^{h_i}`: `λ ↦ r^{<λ, h_i>}`.
    pub fn coroot_power(ring: &Ring, n: usize, i: usize, r: &RingValue) -> Result<Self, SteinbergError> {
        let mut values = vec![ring.one(); n];
        values[i] = r.clone();
        Self::new(values)
    }

    /// `t(a)` for `a = sum_j c_j α_j`, using `α_j = sum_i a_{ij} λ_i`.
    pub fn on_root(&self, gcm: &crate::cartan::Gcm, a: &RootVector) -> Result<RingValue, SteinbergError> {
        let ring = self.values[0].ring().clone();
        let mut out = ring.one();
        for (i, v) in self.values.iter().enumerate() {
            let e: i64 = (0..gcm.size()).map(|j| gcm.a(i, j) * a.0[j]).sum();
            let base = if e < 0 { v.try_invert()? } else { v.clone() };
            out = out.mul(&base.pow(e.unsigned_abs() as u32))?;
        }
        Ok(out)
    }
}

/// `reduce(u v) = reduce(u) reduce(v)` for the canonical map `Z → target`.
pub fn naturality_check(
    src: &SteinbergContext,
    dst: &SteinbergContext,
    target: &Ring,
    pairs: &[(UnipotentWord, UnipotentWord)],
) -> Result<VerificationReport, SteinbergError> {
    let mut report = VerificationReport::new("naturality", "functoriality of unipotent products under Z → R")
        .param("target", target.to_string())
        .param("pairs", pairs.len());
    let mut bad = Vec::new();
    for (u, v) in pairs {
        let lhs = src.multiply(u, v)?.reduce(target)?;
        let rhs = dst.multiply(&u.reduce(target)?, &v.reduce(target)?)?;
        if lhs.coeffs != rhs.coeffs {
            bad.push(json!({"u": u.to_json(), "v": v.to_json(), "reduce_then_multiply": rhs.to_json(), "multiply_then_reduce": lhs.to_json()}));
            if bad.len() >= 3 {
                break;
            }
        }
    }
    report.check("reduce(u·v) = reduce(u)·reduce(v)", bad.is_empty(), json!({"violations": bad}));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::FiniteType;
    use crate::liealg::{build_algebra, AlgebraKind};
    use num_traits::Signed;
    use rand::SeedableRng;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn positive_context(t: FiniteType) -> SteinbergContext {
        super::positive_context(t).unwrap()
    }

    #[test]
    fn a2_constants() {
        let alg = build_algebra(AlgebraKind::Finite(FiniteType::A2)).unwrap();
        let k = structure_constants(&alg, &rv(&[1, 0]), &rv(&[0, 1]), 8).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].c, rv(&[1, 1]));
        assert_eq!((k[0].m, k[0].n), (1, 1));
        assert_eq!(k[0].k.abs(), BigInt::from(1));
        assert!(adjoint_crosscheck(&alg, &rv(&[1, 0]), &rv(&[0, 1]), &k, &[(1, 1), (2, -3)]).unwrap());
    }

    #[test]
    fn c3_constants() {
        let alg = build_algebra(AlgebraKind::Finite(FiniteType::C3)).unwrap();
        let k = structure_constants(&alg, &rv(&[0, 0, 1]), &rv(&[0, 1, 0]), 8).unwrap();
        let cs: Vec<_> = k.iter().map(|x| (x.c.clone(), x.m, x.n, x.k.abs())).collect();
        assert_eq!(
            cs,
            vec![(rv(&[0, 1, 1]), 1, 1, BigInt::from(1)), (rv(&[0, 1, 2]), 2, 1, BigInt::from(1))]
        );
        assert!(adjoint_crosscheck(&alg, &rv(&[0, 0, 1]), &rv(&[0, 1, 0]), &k, &[(1, 1), (3, 2)]).unwrap());
    }

    #[test]
    fn collection_matches_matrices() {
        let ctx = positive_context(FiniteType::A2);
        let z7 = Ring::modular(7).unwrap();
        let u = ctx.single(&rv(&[0, 1]), &z7.from_i64(3)).unwrap();
        let v = ctx.single(&rv(&[1, 0]), &z7.from_i64(2)).unwrap();
        let p = ctx.multiply(&u, &v).unwrap();
        assert!(!p.coefficient(&rv(&[1, 1])).unwrap().is_zero());
        let oracle = ctx.from_matrix(&ctx.word_matrix(&u).unwrap().mul(&ctx.word_matrix(&v).unwrap()).unwrap()).unwrap();
        assert_eq!(p, oracle);
        let a = ctx.single(&rv(&[1, 0]), &z7.from_i64(4)).unwrap();
        let b = ctx.single(&rv(&[1, 0]), &z7.from_i64(5)).unwrap();
        assert_eq!(ctx.multiply(&a, &b).unwrap(), ctx.single(&rv(&[1, 0]), &z7.from_i64(2)).unwrap());
        assert_eq!(ctx.multiply(&u, &ctx.identity(&z7)).unwrap(), u);
    }

    #[test]
    fn inverse_and_associativity() {
        let ctx = positive_context(FiniteType::C3);
        let z = Ring::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = ctx.random_word(&mut rng, &z, 5).unwrap();
            let v = ctx.random_word(&mut rng, &z, 5).unwrap();
            let w = ctx.random_word(&mut rng, &z, 5).unwrap();
            assert!(ctx.multiply(&u, &ctx.inverse(&u).unwrap()).unwrap().is_identity());
            let l = ctx.multiply(&ctx.multiply(&u, &v).unwrap(), &w).unwrap();
            let r = ctx.multiply(&u, &ctx.multiply(&v, &w).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn torus_examples() {
        let ctx = positive_context(FiniteType::A2);
        let z5 = Ring::modular(5).unwrap();
        let id = TorusElement::identity(&z5, 2);
        let r = z5.from_i64(3);
        assert_eq!(ctx.torus_conjugate(&id, 0, &r).unwrap(), ctx.single(&rv(&[1, 0]), &r).unwrap());
        let z = Ring::integers();
        let t = TorusElement::coroot_power(&z, 2, 0, &z.from_i64(-1)).unwrap();
        assert_eq!(t.on_root(ctx.algebra().gcm(), &rv(&[0, 1])).unwrap(), z.from_i64(-1));
        assert_eq!(t.on_root(ctx.algebra().gcm(), &rv(&[1, 0])).unwrap(), z.from_i64(1));
        // a torus element with t(α_1) = 2 over Z/5: λ_1 ↦ u, λ_2 ↦ w with u^2 w^{-1} = 2
        let t2 = TorusElement::new(vec![z5.from_i64(1), z5.from_i64(3)]).unwrap();
        assert_eq!(t2.on_root(ctx.algebra().gcm(), &rv(&[1, 0])).unwrap(), z5.from_i64(2));
        assert_eq!(ctx.torus_conjugate(&t2, 0, &r).unwrap(), ctx.single(&rv(&[1, 0]), &z5.from_i64(1)).unwrap());
    }

    #[test]
    fn naturality_and_control() {
        let ctx = positive_context(FiniteType::A2);
        let z = Ring::integers();
        let z3 = Ring::modular(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let pairs: Vec<_> = (0..20)
            .map(|_| (ctx.random_word(&mut rng, &z, 4).unwrap(), ctx.random_word(&mut rng, &z, 4).unwrap()))
            .collect();
        assert!(naturality_check(&ctx, &ctx, &z3, &pairs).unwrap().passed());
        let mut bad = ctx.clone();
        bad.corrupt_constant(&rv(&[0, 1]), &rv(&[1, 0])).unwrap();
        assert!(!naturality_check(&ctx, &bad, &z3, &pairs).unwrap().passed());
    }
}
