//! Weyl group words acting on roots and coweights, plus the signed and block
//! permutation shadows used by the stability arguments.

mod block;
mod signed;

pub use block::{
    block_sum, block_swap, cross_perm, s_letters, sigma_image, sigma_word, verify_sigma_hom, verify_sigma_tower, verify_sum_hom,
    BlockPermutation,
};
pub use signed::{
    signed_generator, verify_torus_readings, verify_wbar_presentation, wbar_candidates, SignedPermutation,
};

use serde::Serialize;
use thiserror::Error;

use crate::cartan::Gcm;
use crate::report::VerificationReport;
use crate::rootsys::{reflect, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("vector has {got} coordinates, gcm has {want} nodes")]
    DimensionMismatch { got: usize, want: usize },
    #[error("generator index {i} out of range for l = {l}")]
    GeneratorOutOfRange { i: usize, l: usize },
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A word `s_{i_1} s_{i_2} ... s_{i_k}`; the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn new(gcm: &Gcm, letters: Vec<usize>) -> Result<Self, WeylError> {
        if let Some(&bad) = letters.iter().find(|&&i| i >= gcm.size()) {
            return Err(WeylError::NodeOutOfRange(bad));
        }
        Ok(WeylWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        WeylWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Integer combination of the coroots `h_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CoweightVector(pub Vec<i64>);

impl CoweightVector {
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        CoweightVector(v)
    }

    /// `<h, a>` with `<h_i, a_j> = a_{ij}`.
    pub fn pair(&self, gcm: &Gcm, a: &RootVector) -> i64 {
        let n = gcm.size();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += self.0[i] * gcm.a(i, j) * a.0[j];
            }
        }
        s
    }

    /// Reduction modulo 2, the exponent of `(-1)^h`.
    pub fn mod2(&self) -> Vec<u8> {
        self.0.iter().map(|c| c.rem_euclid(2) as u8).collect()
    }
}

fn check_len(gcm: &Gcm, len: usize) -> Result<(), WeylError> {
    if len != gcm.size() {
        return Err(WeylError::DimensionMismatch { got: len, want: gcm.size() });
    }
    Ok(())
}

pub fn act_root(gcm: &Gcm, word: &WeylWord, v: &RootVector) -> Result<RootVector, WeylError> {
    check_len(gcm, v.len())?;
    let mut out = v.clone();
    for &i in word.0.iter().rev() {
        if i >= gcm.size() {
            return Err(WeylError::NodeOutOfRange(i));
        }
        out = reflect(gcm, i, &out);
    }
    Ok(out)
}

/// `s_i(h) = h - <h, a_i> h_i`.
pub fn reflect_coweight(gcm: &Gcm, i: usize, h: &CoweightVector) -> CoweightVector {
    let p: i64 = (0..gcm.size()).map(|j| h.0[j] * gcm.a(j, i)).sum();
    let mut out = h.clone();
    out.0[i] -= p;
    out
}

pub fn act_coweight(gcm: &Gcm, word: &WeylWord, h: &CoweightVector) -> Result<CoweightVector, WeylError> {
    check_len(gcm, h.0.len())?;
    let mut out = h.clone();
    for &i in word.0.iter().rev() {
        if i >= gcm.size() {
            return Err(WeylError::NodeOutOfRange(i));
        }
        out = reflect_coweight(gcm, i, &out);
    }
    Ok(out)
}

/// Checks `(s_i s_j)^m = 1` on every simple root for the exponents `m`
/// produced by `exponent(i, j)`; zero means no relation.
pub fn verify_braid_relations_with(gcm: &Gcm, exponent: impl Fn(usize, usize) -> u32) -> VerificationReport {
    let n = gcm.size();
    let mut report = VerificationReport::new("braid", "Coxeter relations on the root lattice").param("size", n);
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in 0..n {
        for j in i + 1..n {
            let m = exponent(i, j);
            if m == 0 {
                continue;
            }
            checked += 1;
            let word = WeylWord([i, j].repeat(m as usize));
            for k in 0..n {
                let a = RootVector::simple(n, k);
                let image = act_root(gcm, &word, &a).expect("in range");
                if image != a {
                    violations.push(serde_json::json!({
                        "i": i, "j": j, "m": m, "vector": a, "image": image
                    }));
                }
            }
        }
    }
    let ok = violations.is_empty();
    report.check("braid relations", ok, serde_json::json!({"pairs_checked": checked, "violations": violations}));
    report
}

pub fn verify_braid_relations(gcm: &Gcm) -> VerificationReport {
    verify_braid_relations_with(gcm, |i, j| gcm.coxeter_exponent(i, j).expect("distinct nodes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{affine_gcm, finite_a, finite_c, AffineFamily, AffineType};

    #[test]
    fn root_action_examples() {
        let g = affine_gcm(AffineType { family: AffineFamily::A2odd, l: 4 }).unwrap();
        let a4 = RootVector::simple(5, 4);
        let w = WeylWord::new(&g, vec![1, 2, 3]).unwrap();
        assert_eq!(act_root(&g, &w, &a4).unwrap(), RootVector(vec![0, 2, 2, 2, 1]));
        assert_eq!(act_root(&g, &WeylWord(vec![]), &a4).unwrap(), a4);
        assert_eq!(act_root(&g, &WeylWord(vec![2, 2]), &a4).unwrap(), a4);
    }

    #[test]
    fn coweight_examples() {
        let a2 = finite_a(2);
        let h1 = CoweightVector::basis(2, 0);
        assert_eq!(act_coweight(&a2, &WeylWord(vec![0]), &h1).unwrap(), CoweightVector(vec![-1, 0]));
        assert_eq!(act_coweight(&a2, &WeylWord(vec![1]), &h1).unwrap(), CoweightVector(vec![1, 1]));
    }

    #[test]
    fn braid_examples() {
        assert!(verify_braid_relations(&finite_a(2)).passed());
        assert!(verify_braid_relations(&finite_c(3)).passed());
        let a2 = finite_a(2);
        let bad = verify_braid_relations_with(&a2, |_, _| 2);
        assert!(!bad.passed());
        assert_eq!(bad.failures().count(), 1);
    }
}
