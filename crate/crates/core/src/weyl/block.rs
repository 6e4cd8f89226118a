use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::json;

use super::{signed_generator, SignedPermutation, WeylError};
use crate::report::VerificationReport;

/// Permutation of `1..n`; stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPermutation {
    images: Vec<usize>,
}

impl BlockPermutation {
    pub fn identity(n: usize) -> Self {
        BlockPermutation { images: (0..n).collect() }
    }

    /// From 1-based images `[π(1), ..., π(n)]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &t in images {
            if t == 0 || t > n || seen[t - 1] {
                return Err(WeylError::NotAPermutation(n));
            }
            seen[t - 1] = true;
            out.push(t - 1);
        }
        Ok(BlockPermutation { images: out })
    }

    /// The adjacent transposition `σ(i)` of `i` and `i+1` (1-based).
    pub fn transposition(n: usize, i: usize) -> Result<Self, WeylError> {
        if i == 0 || i >= n {
            return Err(WeylError::GeneratorOutOfRange { i, l: n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|t| t + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockPermutation) -> BlockPermutation {
        assert_eq!(self.degree(), other.degree(), "permutations of different degree");
        BlockPermutation { images: other.images.iter().map(|&t| self.images[t]).collect() }
    }

    pub fn inverse(&self) -> BlockPermutation {
        let mut images = vec![0; self.degree()];
        for (i, &t) in self.images.iter().enumerate() {
            images[t] = i;
        }
        BlockPermutation { images }
    }

    pub fn extend(&self, n: usize) -> BlockPermutation {
        let mut images = self.images.clone();
        images.extend(self.degree()..n);
        BlockPermutation { images }
    }

    /// Every permutation of `1..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<BlockPermutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(BlockPermutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl Serialize for BlockPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

impl fmt::Display for BlockPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

/// `σ ⊕ τ`: `σ` on the first `m` points, `τ` shifted onto the last `n`.
pub fn block_sum(sigma: &BlockPermutation, tau: &BlockPermutation) -> BlockPermutation {
    let m = sigma.degree();
    let mut images = sigma.images.clone();
    images.extend(tau.images.iter().map(|t| t + m));
    BlockPermutation { images }
}

/// `c(m,n)`: `i ↦ n + i` for `i <= m`, `i ↦ i - m` otherwise.
pub fn cross_perm(m: usize, n: usize) -> BlockPermutation {
    let images = (0..m + n).map(|i| if i < m { n + i } else { i - m }).collect();
    BlockPermutation { images }
}

/// Writes `π = σ(i_1) ∘ ... ∘ σ(i_k)` with 1-based adjacent transpositions.
pub fn sigma_word(pi: &BlockPermutation) -> Vec<usize> {
    let mut cur = pi.images.clone();
    let mut right = Vec::new();
    // Right-multiplying by σ(i) swaps positions i and i+1.
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        cur.swap(i, i + 1);
        right.push(i + 1);
    }
    right.reverse();
    right
}

/// The r̄-word for `S_i` in `W̄_{2n}`:
/// `r̄_{2i+1}^3 r̄_{2i} r̄_{2i-1} r̄_{2i+1} r̄_{2i} r̄_{2i-1}`.
pub fn s_letters(i: usize) -> Vec<usize> {
    vec![2 * i + 1, 2 * i + 1, 2 * i + 1, 2 * i, 2 * i - 1, 2 * i + 1, 2 * i, 2 * i - 1]
}

fn word_image(l: usize, letters: &[usize]) -> Result<SignedPermutation, WeylError> {
    let gens = letters.iter().map(|&k| signed_generator(l, k)).collect::<Result<Vec<_>, _>>()?;
    Ok(SignedPermutation::product(l, &gens))
}

/// `w_i`: swaps `e_{2i-1}, e_{2i}` with `e_{2i+1}, e_{2i+2}`.
pub fn block_swap(n: usize, i: usize) -> Result<SignedPermutation, WeylError> {
    if i == 0 || i >= n {
        return Err(WeylError::GeneratorOutOfRange { i, l: n });
    }
    let mut images: Vec<(usize, i8)> = (0..2 * n).map(|k| (k, 1)).collect();
    let (a, b) = (2 * i - 2, 2 * i);
    images.swap(a, b);
    images.swap(a + 1, b + 1);
    SignedPermutation::from_images(images)
}

/// `ς_n(π)` in `W̄_{2n}`, composed from the r̄-words of the `S_i`.
pub fn sigma_image(n: usize, pi: &BlockPermutation) -> Result<SignedPermutation, WeylError> {
    if pi.degree() != n {
        return Err(WeylError::DegreeMismatch(pi.degree(), n));
    }
    let mut out = SignedPermutation::identity(2 * n);
    for i in sigma_word(pi) {
        out = out.compose(&word_image(2 * n, &s_letters(i))?);
    }
    Ok(out)
}

/// Block permutation matrix sending block `k` to block `π(k)`.
fn block_matrix(pi: &BlockPermutation) -> SignedPermutation {
    let images = (0..2 * pi.degree()).map(|k| (2 * pi.images[k / 2] + k % 2, 1)).collect();
    SignedPermutation::from_images(images).expect("block permutation")
}

pub fn verify_sigma_hom(n: usize) -> VerificationReport {
    verify_sigma_hom_with(n, s_letters)
}

/// As [`verify_sigma_hom`] with a replaceable r̄-word for `S_i`.
pub fn verify_sigma_hom_with(n: usize, letters: impl Fn(usize) -> Vec<usize>) -> VerificationReport {
    let l = 2 * n;
    let mut report = VerificationReport::new("sigma-hom", "symmetric group shadow in W̄_{2n}").param("n", n);
    let s: Vec<SignedPermutation> = match (1..n).map(|i| word_image(l, &letters(i))).collect() {
        Ok(s) => s,
        Err(e) => {
            report.check("S_i words in range", false, e.to_string());
            return report;
        }
    };
    let mut bad = Vec::new();
    for (k, si) in s.iter().enumerate() {
        let i = k + 1;
        let wi = block_swap(n, i).expect("in range");
        if *si != wi {
            bad.push(json!({"relation": "S_i = w_i", "i": i, "word_image": si, "block_swap": wi}));
        }
        if !si.pow(2).is_identity() {
            bad.push(json!({"relation": "S_i^2 = 1", "i": i, "square": si.pow(2)}));
        }
        if let Some(next) = s.get(k + 1) {
            let cube = si.compose(next).pow(3);
            if !cube.is_identity() {
                bad.push(json!({"relation": "(S_i S_i+1)^3 = 1", "i": i, "value": cube}));
            }
        }
        for (k2, sj) in s.iter().enumerate().skip(k + 2) {
            if si.compose(sj) != sj.compose(si) {
                bad.push(json!({"relation": "distant commute", "i": i, "j": k2 + 1}));
            }
        }
    }
    report.check("S_i relations", bad.is_empty(), json!({"violations": bad}));
    if n <= 5 {
        let mut mismatches = Vec::new();
        for pi in BlockPermutation::all(n) {
            let img = sigma_image(n, &pi).expect("degree n");
            let want = block_matrix(&pi);
            if img != want {
                mismatches.push(json!({"pi": pi, "image": img, "block_matrix": want}));
            }
        }
        // Only meaningful with the genuine S_i words.
        report.note(
            "sigma image equals block permutation matrix",
            crate::report::Status::from_bool(mismatches.is_empty()),
            json!({"mismatches": mismatches.len(), "first": mismatches.first()}),
        );
    }
    report
}

/// `ς_m(π)` embedded in `W̄_{2m+2}` equals `ς_{m+1}(π ⊕ 1)`.
pub fn verify_sigma_tower(m: usize) -> VerificationReport {
    let mut report = VerificationReport::new("sigma-tower", "tower compatibility of the symmetric group shadow")
        .param("m", m);
    let mut bad = Vec::new();
    for pi in BlockPermutation::all(m) {
        let small = sigma_image(m, &pi).expect("degree m").extend(2 * m + 2);
        let big = sigma_image(m + 1, &pi.extend(m + 1)).expect("degree m+1");
        if small != big {
            bad.push(json!({"pi": pi, "embedded": small, "next": big}));
        }
    }
    report.check("f_m ς_m = ς_{m+1}", bad.is_empty(), json!({"permutations": (1..=m).product::<usize>(), "violations": bad}));
    report
}

/// Homomorphism property of `⊕` on `Σ_3 × Σ_3` and `c(m,n) c(n,m) = 1`.
pub fn verify_sum_hom(max_cross: usize) -> VerificationReport {
    let mut report = VerificationReport::new("block-sum", "block sum and block transposition identities")
        .param("max_cross", max_cross);
    let s3 = BlockPermutation::all(3);
    let mut bad = Vec::new();
    for a in &s3 {
        for b in &s3 {
            for c in &s3 {
                for d in &s3 {
                    let lhs = block_sum(&a.compose(b), &c.compose(d));
                    let rhs = block_sum(a, c).compose(&block_sum(b, d));
                    if lhs != rhs {
                        bad.push(json!({"sigma": [a, b], "tau": [c, d]}));
                    }
                }
            }
        }
    }
    report.check("(ab)⊕(cd) = (a⊕c)(b⊕d) on Σ3×Σ3", bad.is_empty(), json!({"violations": bad}));
    let mut cross_bad = Vec::new();
    for m in 0..=max_cross {
        for n in 0..=max_cross {
            if !cross_perm(m, n).compose(&cross_perm(n, m)).is_identity() {
                cross_bad.push(json!({"m": m, "n": n}));
            }
        }
        if !cross_perm(m, 0).is_identity() {
            cross_bad.push(json!({"m": m, "n": 0, "relation": "c(m,0) = 1"}));
        }
    }
    report.check("c(m,n) c(n,m) = 1", cross_bad.is_empty(), json!({"violations": cross_bad}));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_examples() {
        let swap = BlockPermutation::from_one_based(&[2, 1]).unwrap();
        let id1 = BlockPermutation::identity(1);
        assert_eq!(block_sum(&swap, &id1).one_based(), vec![2, 1, 3]);
        assert!(block_sum(&BlockPermutation::identity(2), &id1).is_identity());
        assert_eq!(cross_perm(2, 1).one_based(), vec![2, 3, 1]);
        assert!(cross_perm(4, 0).is_identity());
    }

    #[test]
    fn s1_is_block_swap() {
        let s = sigma_image(2, &BlockPermutation::transposition(2, 1).unwrap()).unwrap();
        assert_eq!(s, SignedPermutation::from_one_based(&[(3, 1), (4, 1), (1, 1), (2, 1)]).unwrap());
        assert!(s.pow(2).is_identity());
        assert!(sigma_image(3, &BlockPermutation::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn words_reassemble() {
        for pi in BlockPermutation::all(4) {
            let w = sigma_word(&pi);
            let back = w
                .iter()
                .fold(BlockPermutation::identity(4), |acc, &i| acc.compose(&BlockPermutation::transposition(4, i).unwrap()));
            assert_eq!(back, pi);
        }
        assert_eq!(BlockPermutation::all(4).len(), 24);
    }

    #[test]
    fn hom_and_controls() {
        assert!(verify_sigma_hom(3).passed());
        let broken = verify_sigma_hom_with(3, |i| {
            let mut w = s_letters(i);
            w.remove(0);
            w
        });
        assert!(!broken.passed());
        assert!(verify_sigma_tower(2).passed());
        assert!(verify_sum_hom(6).passed());
    }
}
