use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::json;

use super::{act_coweight, CoweightVector, WeylError, WeylWord};
use crate::cartan::{affine_gcm, finite_a, finite_b, finite_c, finite_d, AffineType, Gcm, ALL_FAMILIES};
use crate::report::{Status, VerificationReport};

/// Linear map permuting `{±e_i}`; `images[i] = (t, s)` means `e_i ↦ s·e_t` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<(usize, i8)>,
}

impl SignedPermutation {
    pub fn identity(l: usize) -> Self {
        SignedPermutation { images: (0..l).map(|i| (i, 1)).collect() }
    }

    pub fn from_images(images: Vec<(usize, i8)>) -> Result<Self, WeylError> {
        let l = images.len();
        let mut seen = vec![false; l];
        for &(t, s) in &images {
            if t >= l || seen[t] || (s != 1 && s != -1) {
                return Err(WeylError::NotAPermutation(l));
            }
            seen[t] = true;
        }
        Ok(SignedPermutation { images })
    }

    /// Builds from 1-based `(target, sign)` pairs.
    pub fn from_one_based(images: &[(usize, i8)]) -> Result<Self, WeylError> {
        let l = images.len();
        let zero_based = images
            .iter()
            .map(|&(t, s)| t.checked_sub(1).map(|t| (t, s)).ok_or(WeylError::NotAPermutation(l)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(zero_based)
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> (usize, i8) {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &(t, s))| t == i && s == 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.dim(), other.dim(), "signed permutations of different dimension");
        let images = other
            .images
            .iter()
            .map(|&(t, s)| {
                let (t2, s2) = self.images[t];
                (t2, s * s2)
            })
            .collect();
        SignedPermutation { images }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![(0, 1); self.dim()];
        for (i, &(t, s)) in self.images.iter().enumerate() {
            images[t] = (i, s);
        }
        SignedPermutation { images }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> SignedPermutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = SignedPermutation::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Embeds into a larger dimension, fixing the new basis vectors.
    pub fn extend(&self, l: usize) -> SignedPermutation {
        let mut images = self.images.clone();
        images.extend((self.dim()..l).map(|i| (i, 1)));
        SignedPermutation { images }
    }

    pub fn product<'a>(l: usize, factors: impl IntoIterator<Item = &'a SignedPermutation>) -> SignedPermutation {
        factors.into_iter().fold(SignedPermutation::identity(l), |acc, f| acc.compose(f))
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for &(t, s) in &self.images {
            seq.serialize_element(&(t + 1, s))?;
        }
        seq.end()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, &(t, s))| format!("e{}->{}e{}", i + 1, if s < 0 { "-" } else { "" }, t + 1))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `r̄_i` for `1 <= i <= l-1`: `e_i ↦ -e_{i+1}`, `e_{i+1} ↦ e_i`.
pub fn signed_generator(l: usize, i: usize) -> Result<SignedPermutation, WeylError> {
    if i == 0 || i >= l {
        return Err(WeylError::GeneratorOutOfRange { i, l });
    }
    let mut p = SignedPermutation::identity(l);
    p.images[i - 1] = (i, -1);
    p.images[i] = (i - 1, 1);
    Ok(p)
}

/// Candidate matrices for the relations among `r̄_1..r̄_{l-1}`: the finite
/// types of rank `l-1` and the nodes `1..l-1` of each affine family at rank `l`.
pub fn wbar_candidates(l: usize) -> Vec<(String, Gcm)> {
    let r = l - 1;
    let mut out = vec![(format!("A{r}"), finite_a(r))];
    if r >= 2 {
        out.push((format!("B{r}"), finite_b(r)));
        out.push((format!("C{r}"), finite_c(r)));
    }
    if r >= 4 {
        out.push((format!("D{r}"), finite_d(r)));
    }
    for family in ALL_FAMILIES {
        if let Ok(ty) = AffineType::new(family, l) {
            let g = affine_gcm(ty).expect("valid family");
            let nodes: Vec<usize> = (1..l).collect();
            out.push((format!("{family} nodes 1..{}", l - 1), g.submatrix(&nodes)));
        }
    }
    out
}

fn wbar_violations(l: usize, gcm: &Gcm) -> Vec<serde_json::Value> {
    let r: Vec<SignedPermutation> = (1..l).map(|i| signed_generator(l, i).expect("in range")).collect();
    let mut out = Vec::new();
    for i in 0..l - 1 {
        for j in 0..l - 1 {
            if i == j {
                continue;
            }
            let lhs = r[j].compose(&r[i].pow(2)).compose(&r[j].inverse());
            let rhs = r[i].pow(2).compose(&r[j].pow(-2 * gcm.a(i, j)));
            if lhs != rhs {
                out.push(json!({
                    "relation": "conjugated square", "i": i + 1, "j": j + 1,
                    "a_ij": gcm.a(i, j), "lhs": lhs, "rhs": rhs
                }));
            }
            if i < j {
                let m = gcm.coxeter_exponent(i, j).expect("distinct");
                if m == 0 {
                    continue;
                }
                let alt = |p: &SignedPermutation, q: &SignedPermutation| {
                    let factors: Vec<&SignedPermutation> =
                        (0..m).map(|k| if k % 2 == 0 { p } else { q }).collect();
                    SignedPermutation::product(l, factors)
                };
                let lhs = alt(&r[i], &r[j]);
                let rhs = alt(&r[j], &r[i]);
                if lhs != rhs {
                    out.push(json!({
                        "relation": "braid", "i": i + 1, "j": j + 1, "m": m, "lhs": lhs, "rhs": rhs
                    }));
                }
            }
        }
    }
    out
}

/// Tests both relation families in `W̄_l` for each candidate matrix. Passes
/// when at least one candidate satisfies every relation.
pub fn verify_wbar_presentation(l: usize, candidates: &[(String, Gcm)]) -> VerificationReport {
    let mut report = VerificationReport::new("wbar", "signed permutation presentation").param("l", l);
    let mut satisfied = Vec::new();
    for (name, gcm) in candidates {
        let v = wbar_violations(l, gcm);
        let first: Vec<_> = v.iter().take(3).cloned().collect();
        if v.is_empty() {
            satisfied.push(name.clone());
        }
        report.note(
            format!("candidate {name}"),
            Status::from_bool(v.is_empty()),
            json!({"violations": v.len(), "first": first}),
        );
    }
    report.check(
        "some candidate satisfies all relations",
        !satisfied.is_empty(),
        json!({"satisfied_by": satisfied}),
    );
    report
}

/// Compares `s_j(h_i)` modulo 2 with the two readings of the conjugated torus
/// element: `h_i - a_{ij} h_j` and the literal `h_i - 2 a_{ij} h_i`.
pub fn verify_torus_readings(gcm: &Gcm, nodes: &[usize]) -> VerificationReport {
    let n = gcm.size();
    let mut report = VerificationReport::new("torus-readings", "conjugation of (-1)^{h_i} by s_j");
    let mut coweight_bad = Vec::new();
    let mut literal_bad = Vec::new();
    for &i in nodes {
        for &j in nodes {
            if i == j {
                continue;
            }
            let hi = CoweightVector::basis(n, i);
            let actual = act_coweight(gcm, &WeylWord(vec![j]), &hi).expect("in range");
            let mut coweight = hi.clone();
            coweight.0[j] -= gcm.a(i, j);
            let mut literal = hi.clone();
            literal.0[i] -= 2 * gcm.a(i, j);
            if coweight != actual {
                coweight_bad.push(json!({"i": i, "j": j, "actual": actual, "reading": coweight}));
            }
            if literal.mod2() != actual.mod2() {
                literal_bad.push(json!({"i": i, "j": j, "a_ij": gcm.a(i, j), "actual": actual, "reading": literal}));
            }
        }
    }
    report.check(
        "s_j(h_i) = h_i - a_ij h_j",
        coweight_bad.is_empty(),
        json!({"disagreements": coweight_bad}),
    );
    let lit_ok = literal_bad.is_empty();
    report.note(
        "literal exponent h_i - 2 a_ij h_i (mod 2)",
        Status::from_bool(lit_ok),
        json!({
            "disagreements": literal_bad.len(),
            "first": literal_bad.first(),
            "comment": "agrees only for pairs with even a_ij",
        }),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let r = signed_generator(2, 1).unwrap();
        assert_eq!(r, SignedPermutation::from_one_based(&[(2, -1), (1, 1)]).unwrap());
        let sq = r.pow(2);
        assert_eq!(sq, SignedPermutation::from_one_based(&[(1, -1), (2, -1)]).unwrap());
        assert!(r.pow(4).is_identity());
        assert!(signed_generator(3, 3).is_err());
        assert_eq!(serde_json::to_string(&r).unwrap(), "[[2,-1],[1,1]]");
    }

    #[test]
    fn group_laws() {
        let a = signed_generator(4, 1).unwrap();
        let b = signed_generator(4, 2).unwrap().pow(3);
        let c = signed_generator(4, 3).unwrap();
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn only_simply_laced_chain_survives() {
        let report = verify_wbar_presentation(5, &wbar_candidates(5));
        assert!(report.passed());
        let sat = &report.witnesses.last().unwrap().detail["satisfied_by"];
        let names: Vec<&str> = sat.as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert!(names.contains(&"A4"));
        assert!(!names.contains(&"C4"));
    }

    #[test]
    fn torus_readings() {
        let g = finite_a(4);
        let report = verify_torus_readings(&g, &[0, 1, 2, 3]);
        assert!(report.passed());
        assert_eq!(report.witnesses[1].status, Status::Fail);
    }
}
