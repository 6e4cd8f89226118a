use std::sync::Arc;

use rand::SeedableRng;
use serde_json::json;

use super::{SteinbergContext, SteinbergError, UnipotentWord};
use crate::cartan::FiniteType;
use crate::liealg::{build_algebra, AlgebraKind};
use crate::report::{Status, VerificationReport};
use crate::rootsys::{enumerate_real_roots, RootVector};
use crate::scalars::{Ring, RingSpec, RingValue};

/// Context over all positive roots of a finite type.
pub fn positive_context(t: FiniteType) -> Result<SteinbergContext, SteinbergError> {
    let alg = Arc::new(build_algebra(AlgebraKind::Finite(t))?);
    let set = enumerate_real_roots(alg.gcm(), 10).map_err(|_| SteinbergError::CollectionDiverged)?;
    let pos: Vec<RootVector> = set.positive().into_iter().cloned().collect();
    SteinbergContext::new(alg, &pos)
}

/// Compares a commutator against expected `(root, ±coefficient)` factors.
/// Returns the sign `ε_c` needed per root, or `None` on a mismatch.
fn match_up_to_sign(w: &UnipotentWord, expected: &[(RootVector, RingValue)]) -> Option<Vec<i64>> {
    let support: Vec<RootVector> = w.support().into_iter().map(|(r, _)| r).collect();
    if support.len() != expected.len() {
        return None;
    }
    let mut signs = Vec::new();
    for (c, want) in expected {
        let got = w.coefficient(c)?;
        if got == want {
            signs.push(1);
        } else if *got == want.neg() {
            signs.push(-1);
        } else {
            return None;
        }
    }
    Some(signs)
}

/// Matrix oracle: collection against multiplying exponentials, for every
/// parameter pair drawn from `values`.
fn oracle_agrees(
    ctx: &SteinbergContext,
    a: &RootVector,
    b: &RootVector,
    ring: &Ring,
    values: &[RingValue],
) -> Result<bool, SteinbergError> {
    for r in values {
        for s in values {
            let by_collection = ctx.commutator(a, r, b, s)?;
            let factors = [ctx.single(a, r)?, ctx.single(b, s)?, ctx.single(a, &r.neg())?, ctx.single(b, &s.neg())?];
            let mut m = super::GroupMatrix::identity(ring, ctx.algebra().matrix_size());
            for f in &factors {
                m = m.mul(&ctx.word_matrix(f)?)?;
            }
            if by_collection != ctx.from_matrix(&m)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The two unipotent commutator identities in `A_2` and `C_3` over `Q[r]`,
/// with the collection result cross-checked against matrices over `Z`,
/// `Z/5` and `Q[r]`.
pub fn verify_commutator_identities() -> Result<VerificationReport, SteinbergError> {
    let mut report = VerificationReport::new("lemma-2.8", "unipotent commutator identities in A2 and C3");
    let poly = Ring::polynomial(RingSpec::Rationals, &["r"])?;
    let r = poly.var(0).expect("r");
    let one = poly.one();
    let z = Ring::integers();
    let z5 = Ring::modular(5)?;
    let samples = |ring: &Ring, lo: i64, hi: i64| (lo..=hi).map(|k| ring.from_i64(k)).collect::<Vec<_>>();
    let rv = |v: &[i64]| RootVector(v.to_vec());

    // A2: [x_e1(1), x_e2(r)] = x_{e1+e2}(r)
    let a2 = positive_context(FiniteType::A2)?;
    let (e1, e2) = (rv(&[1, 0]), rv(&[0, 1]));
    let w = a2.commutator(&e1, &one, &e2, &r)?;
    let signs = match_up_to_sign(&w, &[(rv(&[1, 1]), r.clone())]);
    report.check(
        "A2: [x_e1(1), x_e2(r)] = x_(e1+e2)(r)",
        signs.is_some(),
        json!({"computed": w.to_json(), "renormalization": signs}),
    );

    // C3: [x_e3(r), x_e2(1)] = x_{e2+e3}(-r) x_{e2+2e3}(-r)
    let c3 = positive_context(FiniteType::C3)?;
    let (e2, e3) = (rv(&[0, 1, 0]), rv(&[0, 0, 1]));
    let (short, long) = (rv(&[0, 1, 1]), rv(&[0, 1, 2]));
    let consts = c3.constants(&e3, &e2)?;
    let unit = consts.iter().all(|k| k.k == 1.into() || k.k == (-1).into());
    report.check(
        "C3: constants for (e3, e2) have magnitude 1",
        unit && consts.len() == 2,
        json!({"constants": consts}),
    );
    // With the parameters on e3 and e2 exchanged both factors are linear in r.
    let w = c3.commutator(&e3, &one, &e2, &r)?;
    let signs = match_up_to_sign(&w, &[(short.clone(), r.neg()), (long.clone(), r.neg())]);
    report.check(
        "C3: [x_e3(1), x_e2(r)] = x_(e2+e3)(-r) x_(e2+2e3)(-r)",
        signs.is_some(),
        json!({"computed": w.to_json(), "renormalization": signs}),
    );
    // As written, the e2+2e3 factor is quadratic in the e3 parameter.
    let w = c3.commutator(&e3, &r, &e2, &one)?;
    let literal = match_up_to_sign(&w, &[(short.clone(), r.neg()), (long.clone(), r.neg())]);
    let quadratic = match_up_to_sign(&w, &[(short, r.neg()), (long, r.pow(2).neg())]);
    report.note(
        "C3: [x_e3(r), x_e2(1)] with the parameter on e3",
        Status::from_bool(literal.is_some()),
        json!({
            "computed": w.to_json(),
            "linear_in_r": literal.is_some(),
            "quadratic_on_e2+2e3": quadratic.is_some(),
        }),
    );

    let mut bad = Vec::new();
    for (name, ctx, a, b) in [("A2", &a2, &e1, &rv(&[0, 1])), ("C3", &c3, &e3, &e2)] {
        for (ring, values) in [
            (&z, samples(&z, -3, 3)),
            (&z5, samples(&z5, 0, 4)),
            (&poly, vec![r.clone(), r.neg(), one.clone()]),
        ] {
            if !oracle_agrees(ctx, a, b, ring, &values)? {
                bad.push(json!({"type": name, "ring": ring.to_string()}));
            }
        }
    }
    report.check("collection agrees with the matrix oracle over Z, Z/5 and Q[r]", bad.is_empty(), json!({"violations": bad}));
    Ok(report)
}

/// Naturality of products under `Z → Z/p` for `p ∈ {2, 3, 7}` on random word
/// pairs in `A_2` and `C_3`.
pub fn verify_naturality(seed: u64, pairs: usize) -> Result<VerificationReport, SteinbergError> {
    let mut report = VerificationReport::new("naturality", "reduction mod p commutes with unipotent products")
        .param("seed", seed)
        .param("pairs", pairs);
    let z = Ring::integers();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in [FiniteType::A2, FiniteType::C3] {
        let ctx = positive_context(t)?;
        let words: Vec<_> = (0..pairs)
            .map(|_| Ok((ctx.random_word(&mut rng, &z, 6)?, ctx.random_word(&mut rng, &z, 6)?)))
            .collect::<Result<_, SteinbergError>>()?;
        for p in [2, 3, 7] {
            let sub = super::naturality_check(&ctx, &ctx, &Ring::modular(p)?, &words)?;
            for f in sub.witnesses {
                report.push(format!("{} over Z/{p}: {}", t.tag(), f.name), f.status, f.detail);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        let r = verify_commutator_identities().unwrap();
        assert!(r.passed(), "{}", r.to_ndjson_line());
    }

    #[test]
    fn naturality_suite() {
        let r = verify_naturality(7, 20).unwrap();
        assert!(r.passed(), "{}", r.to_ndjson_line());
        assert_eq!(r.witnesses.len(), 6);
    }
}
