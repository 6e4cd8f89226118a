use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::json;

use super::{build_tower_map, TowerError, TowerMap};
use crate::cartan::AffineFamily;
use crate::liealg::{bracket, build_algebra, verify_relations, Algebra, AlgebraKind, Expr, Gen, LieError, LoopElement};
use crate::report::VerificationReport;
use crate::rootsys::{
    enumerate_real_roots, is_nilpotent_set, is_real_root_exact, sign_of_root, RootVector, Verdict,
};
use crate::steinberg::SteinbergContext;

/// `φ_l: g_l → g_{l+1}` on a pair of matrix realizations.
#[derive(Debug, Clone)]
pub struct MatrixEmbedding {
    map: TowerMap,
    src: Arc<Algebra>,
    dst: Arc<Algebra>,
    e_prime: Vec<LoopElement>,
    f_prime: Vec<LoopElement>,
    h_prime: Vec<LoopElement>,
}

impl MatrixEmbedding {
    pub fn new(family: AffineFamily, l: usize) -> Result<Self, TowerError> {
        let map = build_tower_map(family, l)?;
        let rule = map.generator_rule.clone();
        Self::with_rule(map, rule)
    }

    /// Same maps, but `e'_j` taken from `rule` (for negative controls).
    pub fn with_rule(map: TowerMap, rule: Vec<Expr>) -> Result<Self, TowerError> {
        let src = Arc::new(build_algebra(AlgebraKind::from_family(map.family, map.l)?)?);
        let dst = Arc::new(build_algebra(AlgebraKind::from_family(map.family, map.l + 1)?)?);
        let e_prime: Vec<LoopElement> = rule.iter().map(|x| dst.eval(x)).collect::<Result<_, _>>()?;
        let f_prime: Vec<LoopElement> = rule.iter().map(|x| dst.eval(&x.swap_ef())).collect::<Result<_, _>>()?;
        let h_prime = e_prime.iter().zip(&f_prime).map(|(e, f)| bracket(e, f)).collect();
        Ok(MatrixEmbedding { map, src, dst, e_prime, f_prime, h_prime })
    }

    pub fn map(&self) -> &TowerMap {
        &self.map
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.src
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.dst
    }

    pub fn e_prime(&self, i: usize) -> &LoopElement {
        &self.e_prime[i]
    }

    pub fn h_prime(&self, i: usize) -> &LoopElement {
        &self.h_prime[i]
    }

    /// `φ` of a source element given by its construction word.
    pub fn transport(&self, expr: &Expr) -> Result<LoopElement, LieError> {
        Ok(match expr {
            Expr::Gen(Gen::E, i) => self.e_prime[*i].clone(),
            Expr::Gen(Gen::F, i) => self.f_prime[*i].clone(),
            Expr::Gen(Gen::H, i) => self.h_prime[*i].clone(),
            Expr::Bracket(a, b) => bracket(&self.transport(a)?, &self.transport(b)?),
            Expr::Scale(k, a) => self.transport(a)?.scale_int(*k),
            Expr::Add(a, b) => self.transport(a)?.add(&self.transport(b)?),
            Expr::Reflect { e, f, arg } => {
                self.dst.reflect_with(&self.transport(e)?, &self.transport(f)?, &self.transport(arg)?)?
            }
        })
    }

    /// `ε` with `φ(E_a) = ε E_{τ(a)}` for the normalized representatives, or
    /// `None` when the two are not proportional by a sign.
    pub fn root_vector_sign(&self, a: &RootVector) -> Result<Option<i64>, TowerError> {
        let lhs = self.transport(&self.src.root_vector(a)?.expr)?;
        let rhs = self.dst.root_vector(&self.map.tau_apply(a))?.rep;
        Ok(if lhs == rhs {
            Some(1)
        } else if lhs == rhs.neg() {
            Some(-1)
        } else {
            None
        })
    }
}

pub fn verify_lemma_3_1(family: AffineFamily, l: usize) -> Result<VerificationReport, TowerError> {
    verify_lemma_3_1_with(&MatrixEmbedding::new(family, l)?)
}

/// The defining relations of `g_l` for `e', f', h'` inside `g_{l+1}`, with
/// sharpness of every Serre exponent.
pub fn verify_lemma_3_1_with(emb: &MatrixEmbedding) -> Result<VerificationReport, TowerError> {
    let map = emb.map();
    let l = map.l;
    let mut report = verify_relations(
        map.source(),
        &emb.e_prime,
        &emb.f_prime,
        &emb.h_prime,
        "lemma-3.1",
        &format!("{} inside {}", map.family.display_name(l), map.family.display_name(l + 1)),
    );
    report.subject = "relations for the embedded generators e', f', h'".into();
    report.set_param("family", map.family.tag());
    report.set_param("l", l);
    report.set_param("recipe", map.generator_rule.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // h'_l against the closed form s_l(h_{l+1}) = h_{l+1} - a_{l+1,l} h_l
    let dst = emb.target();
    let want = dst.h(l + 1).add(&dst.h(l).scale_int(-map.target().a(l + 1, l)));
    report.check("h'_l = s'_l(h_{l+1})", emb.h_prime[l] == want, json!({"h_prime": emb.h_prime[l], "expected": want}));

    let k = (1 - map.source().a(l - 1, l)) as u32;
    let below = crate::liealg::ad_power(emb.e_prime(l - 1), emb.e_prime(l), k - 1);
    let top = bracket(emb.e_prime(l - 1), &below);
    report.check(
        format!("(ad e_(l-1))^{k} e'_l = 0 and (ad e_(l-1))^{} e'_l != 0", k - 1),
        top.is_zero() && !below.is_zero(),
        json!({"exponent": k, "power_below_is_zero": below.is_zero(), "top": top}),
    );
    Ok(report)
}

/// Sign preservation of `τ` and `φ(E_a) = ±E_{τ(a)}` for all real roots of
/// height at most `height`.
pub fn verify_lemma_3_2(family: AffineFamily, l: usize, height: u32) -> Result<VerificationReport, TowerError> {
    let emb = MatrixEmbedding::new(family, l)?;
    let map = emb.map();
    let mut report = VerificationReport::new("lemma-3.2", "tower map on real roots and their root vectors")
        .param("family", family.tag())
        .param("l", l)
        .param("height", height);
    let set = enumerate_real_roots(map.source(), height)?;
    let mut sign_bad = Vec::new();
    let mut pair_bad = Vec::new();
    let mut signs = Vec::new();
    for a in set.sorted() {
        let t = map.tau_apply(a);
        if t.is_positive() != a.is_positive() || !is_real_root_exact(map.target(), &t) {
            sign_bad.push(json!({"root": a, "image": t}));
            continue;
        }
        match emb.root_vector_sign(a)? {
            Some(e) => signs.push(e),
            None => pair_bad.push(json!({"root": a, "image": t})),
        }
    }
    report.check("τ(Δ±) ⊂ Δ±", sign_bad.is_empty(), json!({"roots": set.len(), "violations": sign_bad}));
    report.check(
        "φ(E_a) = E_τ(a) as unordered pairs",
        pair_bad.is_empty(),
        json!({
            "roots": set.len(),
            "same_sign": signs.iter().filter(|&&e| e == 1).count(),
            "opposite_sign": signs.iter().filter(|&&e| e == -1).count(),
            "violations": pair_bad,
        }),
    );
    Ok(report)
}

/// `τ(θ)` is nilpotent and the commutator constants of `θ` transport to
/// those of `τ(θ)`: `k(τa, τb; τc) = ε_c ε_a^m ε_b^n k(a, b; c)` where
/// `φ(E_x) = ε_x E_τ(x)`.
pub fn verify_structure_transport(
    emb: &MatrixEmbedding,
    theta: &[RootVector],
    search_depth: usize,
) -> Result<VerificationReport, TowerError> {
    let map = emb.map();
    for a in theta {
        sign_of_root(a)?;
    }
    let image: Vec<RootVector> = theta.iter().map(|a| map.tau_apply(a)).collect();
    let mut report = VerificationReport::new("lemma-3.3", "structure constants transported along the tower")
        .param("family", map.family.tag())
        .param("l", map.l)
        .param("theta", theta)
        .param("image", &image);
    let bound = |v: &[RootVector]| 2 * v.iter().map(|a| a.height()).max().unwrap_or(1) as u32 + 2;
    let src_set = enumerate_real_roots(map.source(), bound(theta))?;
    let dst_set = enumerate_real_roots(map.target(), bound(&image))?;
    let nil_src = is_nilpotent_set(&src_set, theta, search_depth);
    let nil_dst = is_nilpotent_set(&dst_set, &image, search_depth);
    report.check("θ nilpotent", nil_src == Verdict::Yes, json!({"verdict": nil_src}));
    report.check("τ(θ) nilpotent", nil_dst == Verdict::Yes, json!({"verdict": nil_dst}));
    if nil_src != Verdict::Yes || nil_dst != Verdict::Yes {
        return Ok(report);
    }

    let mut eps: HashMap<RootVector, i64> = HashMap::new();
    for a in theta {
        match emb.root_vector_sign(a)? {
            Some(e) => {
                eps.insert(a.clone(), e);
            }
            None => {
                report.check("φ(E_a) = ±E_τ(a)", false, json!({"root": a}));
                return Ok(report);
            }
        }
    }
    let src_ctx = SteinbergContext::new(emb.source().clone(), theta)?;
    let dst_ctx = SteinbergContext::new(emb.target().clone(), &image)?;
    let mut bad = Vec::new();
    let mut compared = 0usize;
    for a in theta {
        for b in theta {
            if a == b {
                continue;
            }
            let mut want: Vec<(RootVector, u32, u32, BigInt)> = Vec::new();
            for k in src_ctx.constants(a, b)? {
                let sign = eps[&k.c] * eps[a].pow(k.m) * eps[b].pow(k.n);
                want.push((map.tau_apply(&k.c), k.m, k.n, k.k * sign));
            }
            let mut got: Vec<(RootVector, u32, u32, BigInt)> = dst_ctx
                .constants(&map.tau_apply(a), &map.tau_apply(b))?
                .into_iter()
                .map(|k| (k.c, k.m, k.n, k.k))
                .collect();
            want.sort();
            got.sort();
            compared += want.len();
            if want != got {
                let show = |v: &[(RootVector, u32, u32, BigInt)]| {
                    v.iter().map(|(c, m, n, k)| json!({"c": c, "m": m, "n": n, "k": k.to_string()})).collect::<Vec<_>>()
                };
                bad.push(json!({"a": a, "b": b, "transported": show(&want), "target": show(&got)}));
            }
        }
    }
    report.check("k(τa, τb; τc) matches the transported constant", bad.is_empty(), json!({"constants": compared, "violations": bad}));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_3_1_small() {
        let r = verify_lemma_3_1(AffineFamily::A2odd, 3).unwrap();
        assert!(r.passed(), "{}", r.to_ndjson_line());
        let r = verify_lemma_3_1(AffineFamily::A1t, 3).unwrap();
        assert!(r.passed(), "{}", r.to_ndjson_line());
    }

    #[test]
    fn wrong_recipe_fails() {
        let map = build_tower_map(AffineFamily::A2odd, 3).unwrap();
        let mut rule = map.generator_rule.clone();
        rule[3] = Expr::s_prime(2, Expr::e(4));
        let emb = MatrixEmbedding::with_rule(map, rule).unwrap();
        assert!(!verify_lemma_3_1_with(&emb).unwrap().passed());
    }

    #[test]
    fn simple_root_images() {
        let emb = MatrixEmbedding::new(AffineFamily::A2odd, 3).unwrap();
        for i in 0..3 {
            assert_eq!(emb.root_vector_sign(&RootVector::simple(4, i)).unwrap(), Some(1));
        }
        assert!(emb.root_vector_sign(&RootVector::simple(4, 3)).unwrap().is_some());
        assert_eq!(emb.map().tau_apply(&RootVector::simple(4, 3)), RootVector(vec![0, 0, 0, 2, 1]));
    }

    #[test]
    fn transport_of_theta() {
        let emb = MatrixEmbedding::new(AffineFamily::A2odd, 3).unwrap();
        let theta: Vec<RootVector> =
            [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1], [0, 0, 2, 1]].iter().map(|v| RootVector(v.to_vec())).collect();
        let r = verify_structure_transport(&emb, &theta, 8).unwrap();
        assert!(r.passed(), "{}", r.to_ndjson_line());
        let r = verify_structure_transport(&emb, &[RootVector::simple(4, 1)], 8).unwrap();
        assert!(r.passed());
        assert!(verify_structure_transport(&emb, &[RootVector(vec![0, 1, -1, 0])], 8).is_err());
    }
}
