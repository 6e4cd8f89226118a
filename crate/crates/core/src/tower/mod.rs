//! Embeddings of rank-`l` affine data into rank `l+1`: the root map `τ`, the
//! coroot map `ω`, the Weyl group map `w`, and (for the families with a
//! matrix realization) the algebra map `φ`.
//!
//! The rank-`l` diagram is embedded by fixing nodes `0..l` and sending each
//! remaining node `j >= l` to `s_l(a_{j+1})`, so `s_j ↦ s_l s_{j+1} s_l`.

mod phi;
mod shadow;
mod theta;

pub use phi::{verify_lemma_3_1, verify_lemma_3_1_with, verify_lemma_3_2, verify_structure_transport, MatrixEmbedding};
pub use shadow::verify_thm_1_2_conditions;
pub use theta::{theta_sets, verify_thm_3_5, ThetaReading, ThetaSets, MAX_BLOCK_SUM};

use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::cartan::{affine_gcm, AffineFamily, AffineType, CartanError, Gcm};
use crate::liealg::{Expr, LieError};
use crate::report::VerificationReport;
use crate::rootsys::{apply_word, enumerate_real_roots, is_real_root_exact, RootError, RootVector};
use crate::steinberg::SteinbergError;
use crate::weyl::{reflect_coweight, CoweightVector};

#[derive(Debug, Clone, Error)]
pub enum TowerError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Steinberg(#[from] SteinbergError),
    #[error("tower map for {0} fails its construction invariant: {1}")]
    Invariant(String, String),
    #[error("m + n = {0} exceeds the cap of {1}")]
    ResourceCap(usize, usize),
    #[error("block sizes must be positive")]
    EmptyBlock,
}

/// The maps `τ_l`, `ω_l`, `w_l` and the generator recipe for `φ_l`.
#[derive(Debug, Clone, Serialize)]
pub struct TowerMap {
    pub family: AffineFamily,
    pub l: usize,
    #[serde(skip)]
    src: Gcm,
    #[serde(skip)]
    dst: Gcm,
    /// `τ(a_j)` for each source node.
    pub root_images: Vec<RootVector>,
    /// `ω(h_j)` for each source node, in coroot coordinates.
    pub coweight_images: Vec<Vec<i64>>,
    /// Letters replacing `s_j`.
    pub weyl_rule: Vec<Vec<usize>>,
    /// `e'_j` as a word in the target generators; `f'_j` swaps `e` for `f`.
    pub generator_rule: Vec<Expr>,
    /// Whether the generator rule is exercised by a matrix realization.
    pub matrix_level: bool,
}

impl TowerMap {
    pub fn source(&self) -> &Gcm {
        &self.src
    }

    pub fn target(&self) -> &Gcm {
        &self.dst
    }

    pub fn tau_apply(&self, v: &RootVector) -> RootVector {
        let mut out = RootVector(vec![0; self.dst.size()]);
        for (c, img) in v.0.iter().zip(&self.root_images) {
            if *c != 0 {
                out = out.add(&img.scale(*c));
            }
        }
        out
    }

    pub fn omega_apply(&self, h: &CoweightVector) -> CoweightVector {
        let mut out = vec![0; self.dst.size()];
        for (c, img) in h.0.iter().zip(&self.coweight_images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        CoweightVector(out)
    }

    /// Letterwise substitution; words apply their rightmost letter first.
    pub fn w_embed_apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&j| self.weyl_rule[j].iter().copied()).collect()
    }

    /// `f'_j` for the generator rule.
    pub fn f_rule(&self, j: usize) -> Expr {
        self.generator_rule[j].swap_ef()
    }
}

/// Builds the tower map and checks that simple roots go to positive real
/// roots and that `<ω(h_i), τ(a_j)> = a_ij`.
pub fn build_tower_map(family: AffineFamily, l: usize) -> Result<TowerMap, TowerError> {
    let src = affine_gcm(AffineType::new(family, l)?)?;
    let dst = affine_gcm(AffineType::new(family, l + 1)?)?;
    let n = src.size();
    let mut root_images = Vec::with_capacity(n);
    let mut coweight_images = Vec::with_capacity(n);
    let mut weyl_rule = Vec::with_capacity(n);
    let mut generator_rule = Vec::with_capacity(n);
    for j in 0..n {
        if j < l {
            root_images.push(RootVector::simple(dst.size(), j));
            coweight_images.push(CoweightVector::basis(dst.size(), j).0);
            weyl_rule.push(vec![j]);
            generator_rule.push(Expr::e(j));
        } else {
            root_images.push(apply_word(&dst, &[l], &RootVector::simple(dst.size(), j + 1))?);
            let h = if family == AffineFamily::A2odd {
                // h_l + 2 h_{l+1}: differs from s_l(h_{l+1}) = h_l + h_{l+1} by
                // h_{l+1}, which pairs to zero with the whole image of τ.
                let mut h = vec![0; dst.size()];
                h[l] = 1;
                h[l + 1] = 2;
                h
            } else {
                reflect_coweight(&dst, l, &CoweightVector::basis(dst.size(), j + 1)).0
            };
            coweight_images.push(h);
            weyl_rule.push(vec![l, j + 1, l]);
            generator_rule.push(Expr::s_prime(l, Expr::e(j + 1)));
        }
    }
    let map = TowerMap {
        family,
        l,
        src,
        dst,
        root_images,
        coweight_images,
        weyl_rule,
        generator_rule,
        matrix_level: matches!(family, AffineFamily::A1t | AffineFamily::A2odd),
    };
    let name = family.display_name(l);
    for (j, img) in map.root_images.iter().enumerate() {
        if !img.is_positive() || !is_real_root_exact(&map.dst, img) {
            return Err(TowerError::Invariant(name, format!("τ(a{j}) = {img} is not a positive real root")));
        }
    }
    if let Some((i, j, got)) = pairing_defects(&map).into_iter().next() {
        return Err(TowerError::Invariant(name, format!("<ω(h{i}), τ(a{j})> = {got}")));
    }
    Ok(map)
}

fn pairing_defects(map: &TowerMap) -> Vec<(usize, usize, i64)> {
    let n = map.src.size();
    let mut out = Vec::new();
    for i in 0..n {
        let h = map.omega_apply(&CoweightVector::basis(n, i));
        for j in 0..n {
            let got = h.pair(&map.dst, &map.root_images[j]);
            if got != map.src.a(i, j) {
                out.push((i, j, got));
            }
        }
    }
    out
}

/// Pairing preservation, intertwining `τ W = w(W) τ` on Weyl words, and sign
/// preservation of `τ` on enumerated real roots.
pub fn verify_tower_invariants(
    family: AffineFamily,
    l: usize,
    max_word: usize,
    height: u32,
    seed: u64,
) -> Result<VerificationReport, TowerError> {
    let map = build_tower_map(family, l)?;
    let mut report = VerificationReport::new("tower", "compatibility of the root, coroot and Weyl maps of the tower")
        .param("family", family.tag())
        .param("l", l)
        .param("max_word", max_word)
        .param("height", height)
        .param("seed", seed);
    let defects: Vec<_> = pairing_defects(&map).into_iter().map(|(i, j, g)| json!({"i": i, "j": j, "got": g})).collect();
    report.check("<ω(h_i), τ(a_j)> = a_ij", defects.is_empty(), json!({"violations": defects}));

    let n = map.src.size();
    let simple: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let exhaustive = max_word.min(4);
    let mut layer = vec![vec![]];
    for _ in 0..exhaustive {
        let next: Vec<Vec<usize>> =
            layer.iter().flat_map(|w: &Vec<usize>| (0..n).map(move |j| [w.as_slice(), &[j]].concat())).collect();
        words.extend(next.iter().cloned());
        layer = next;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for len in exhaustive + 1..=max_word {
        for _ in 0..500 {
            words.push((0..len).map(|_| rng.gen_range(0..n)).collect());
        }
    }
    let mut bad = Vec::new();
    for w in &words {
        let big = map.w_embed_apply(w);
        for a in &simple {
            let lhs = map.tau_apply(&apply_word(&map.src, w, a)?);
            let rhs = apply_word(&map.dst, &big, &map.tau_apply(a))?;
            if lhs != rhs && bad.len() < 5 {
                bad.push(json!({"word": w, "root": a, "tau_of_image": lhs, "image_of_tau": rhs}));
            }
        }
    }
    report.check("τ(W a) = w(W) τ(a)", bad.is_empty(), json!({"words": words.len(), "violations": bad}));

    let set = enumerate_real_roots(&map.src, height)?;
    let mut bad = Vec::new();
    for a in set.iter() {
        let t = map.tau_apply(a);
        if t.is_positive() != a.is_positive() || !is_real_root_exact(&map.dst, &t) {
            bad.push(json!({"root": a, "image": t}));
        }
    }
    report.check("τ preserves real roots and their sign", bad.is_empty(), json!({"roots": set.len(), "violations": bad}));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::ALL_FAMILIES;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn a2odd_examples() {
        let map = build_tower_map(AffineFamily::A2odd, 3).unwrap();
        assert_eq!(map.root_images[3], rv(&[0, 0, 0, 2, 1]));
        assert_eq!(map.tau_apply(&rv(&[0, 1, 1, 0])), rv(&[0, 1, 1, 0, 0]));
        assert_eq!(map.coweight_images[3], vec![0, 0, 0, 1, 2]);
        assert_eq!(map.w_embed_apply(&[3]), vec![3, 4, 3]);
        assert_eq!(map.w_embed_apply(&[3, 1]), vec![3, 4, 3, 1]);
        assert_eq!(map.w_embed_apply(&[1]), vec![1]);
        let a2 = rv(&[0, 0, 1, 0]);
        let lhs = map.tau_apply(&apply_word(map.source(), &[3], &a2).unwrap());
        let rhs = apply_word(map.target(), &map.w_embed_apply(&[3]), &map.tau_apply(&a2)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(map.tau_apply(&a2.neg()), map.tau_apply(&a2).neg());
    }

    #[test]
    fn every_family_builds() {
        for family in ALL_FAMILIES {
            for l in family.min_rank()..=6 {
                let report = verify_tower_invariants(family, l, 4, 8, 1).unwrap();
                assert!(report.passed(), "{family:?} l={l}: {}", report.to_ndjson_line());
            }
        }
    }
}
