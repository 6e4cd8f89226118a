//! Real roots of a GCM: reflections, height-bounded enumeration, the sets
//! `ϑ(a,b)`, and bounded searches for prenilpotency witnesses.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::Gcm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("vector has {got} coordinates, gcm has {want} nodes")]
    DimensionMismatch { got: usize, want: usize },
    #[error("zero vector is not a root")]
    Zero,
    #[error("vector {0} has mixed signs")]
    MixedSigns(RootVector),
    #[error("height bound must be at least 1")]
    ZeroHeightBound,
    #[error("root enumeration exceeded {0} roots")]
    ResourceLimit(usize),
    #[error("{0} is not in the cached root set")]
    NotARoot(RootVector),
    #[error("height bound {0} too small to determine theta; roots reach the cache boundary")]
    HeightBoundTooSmall(u32),
}

/// Integer combination of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// Three-valued answer for bounded searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|c| k * c).collect())
    }

    /// Index of the simple root this vector equals, if any.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Renders as e.g. `a0+2a1-a3` using the given labels.
    pub fn display_with(&self, gcm: &Gcm) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&gcm.label(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn check_dim(gcm: &Gcm, v: &RootVector) -> Result<(), RootError> {
    if v.len() != gcm.size() {
        return Err(RootError::DimensionMismatch { got: v.len(), want: gcm.size() });
    }
    Ok(())
}

/// `<h_i, v> = sum_j a_{ij} v_j`.
#[inline]
pub fn pairing(gcm: &Gcm, i: usize, v: &RootVector) -> i64 {
    v.0.iter().enumerate().map(|(j, &c)| gcm.a(i, j) * c).sum()
}

pub(crate) fn reflect(gcm: &Gcm, i: usize, v: &RootVector) -> RootVector {
    let p = pairing(gcm, i, v);
    let mut out = v.clone();
    out.0[i] -= p;
    out
}

pub fn simple_reflection(gcm: &Gcm, i: usize, v: &RootVector) -> Result<RootVector, RootError> {
    if i >= gcm.size() {
        return Err(RootError::NodeOutOfRange(i));
    }
    check_dim(gcm, v)?;
    Ok(reflect(gcm, i, v))
}

/// Applies `s_{w[0]} s_{w[1]} ... s_{w[k-1]}` (rightmost first).
pub fn apply_word(gcm: &Gcm, word: &[usize], v: &RootVector) -> Result<RootVector, RootError> {
    check_dim(gcm, v)?;
    let mut out = v.clone();
    for &i in word.iter().rev() {
        if i >= gcm.size() {
            return Err(RootError::NodeOutOfRange(i));
        }
        out = reflect(gcm, i, &out);
    }
    Ok(out)
}

pub fn sign_of_root(v: &RootVector) -> Result<Sign, RootError> {
    if v.is_zero() {
        return Err(RootError::Zero);
    }
    if v.is_positive() {
        Ok(Sign::Positive)
    } else if v.is_negative() {
        Ok(Sign::Negative)
    } else {
        Err(RootError::MixedSigns(v.clone()))
    }
}

/// Writes a real root as `w(±a_i)`.
///
/// Returns `(word, i, sign)` with `v = sign * s_{word[0]} ... s_{word[k-1]}(a_i)`,
/// or `None` when `v` is not a real root. A positive real root other than a
/// simple root always has a node with positive pairing, and reflecting in it
/// strictly lowers the height, so this descent decides membership exactly.
pub fn descend(gcm: &Gcm, v: &RootVector) -> Option<(Vec<usize>, usize, Sign)> {
    let sign = sign_of_root(v).ok()?;
    let mut cur = if sign == Sign::Positive { v.clone() } else { v.neg() };
    let mut word = Vec::new();
    loop {
        if let Some(i) = cur.simple_index() {
            return Some((word, i, sign));
        }
        let j = (0..gcm.size()).find(|&j| pairing(gcm, j, &cur) > 0)?;
        cur = reflect(gcm, j, &cur);
        if !cur.is_positive() {
            return None;
        }
        word.push(j);
    }
}

/// Exact real-root test by descent, independent of any height bound.
pub fn is_real_root_exact(gcm: &Gcm, v: &RootVector) -> bool {
    v.len() == gcm.size() && descend(gcm, v).is_some()
}

/// Nonzero sign-uniform vectors with zero pairing against every node. For an
/// affine matrix these are exactly the imaginary roots `kδ`.
pub fn is_null_root(gcm: &Gcm, v: &RootVector) -> bool {
    v.len() == gcm.size() && sign_of_root(v).is_ok() && (0..gcm.size()).all(|i| pairing(gcm, i, v) == 0)
}

/// Root membership for finite and affine matrices: real roots by descent,
/// imaginary roots as null vectors.
pub fn is_root_exact(gcm: &Gcm, v: &RootVector) -> bool {
    is_real_root_exact(gcm, v) || is_null_root(gcm, v)
}

/// Options for [`enumerate_real_roots_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Extra height allowed for intermediate vectors; `None` means `2 max|a_ij| H`.
    pub slack: Option<u64>,
    pub max_roots: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { slack: None, max_roots: 2_000_000 }
    }
}

/// Real roots of height at most `H`, closed under negation.
#[derive(Debug, Clone)]
pub struct RealRootSet {
    gcm: Gcm,
    height_bound: u32,
    roots: HashSet<RootVector>,
}

pub fn enumerate_real_roots(gcm: &Gcm, h: u32) -> Result<RealRootSet, RootError> {
    enumerate_real_roots_with(gcm, h, EnumerateOptions::default())
}

pub fn enumerate_real_roots_with(
    gcm: &Gcm,
    h: u32,
    opts: EnumerateOptions,
) -> Result<RealRootSet, RootError> {
    if h == 0 {
        return Err(RootError::ZeroHeightBound);
    }
    let n = gcm.size();
    let max_entry = gcm.entries().iter().flatten().map(|a| a.unsigned_abs()).max().unwrap_or(2);
    let slack = opts.slack.unwrap_or(2 * max_entry * h as u64);
    let limit = h as u64 + slack;
    // Only positive roots are explored; reflecting a positive root other than
    // a_j in s_j keeps it positive.
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let a = RootVector::simple(n, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(v) = queue.pop_front() {
        for j in 0..n {
            let w = reflect(gcm, j, &v);
            if !w.is_positive() || w.height() > limit || seen.contains(&w) {
                continue;
            }
            seen.insert(w.clone());
            if seen.len() > opts.max_roots {
                return Err(RootError::ResourceLimit(opts.max_roots));
            }
            queue.push_back(w);
        }
    }
    let mut roots = HashSet::new();
    for v in seen.into_iter().filter(|v| v.height() <= h as u64) {
        roots.insert(v.neg());
        roots.insert(v);
    }
    Ok(RealRootSet { gcm: gcm.clone(), height_bound: h, roots })
}

#[derive(Serialize)]
struct RootSetFile<'a> {
    gcm: &'a str,
    height_bound: u32,
    roots: Vec<&'a RootVector>,
}

impl RealRootSet {
    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn height_bound(&self) -> u32 {
        self.height_bound
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.roots.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RootVector> {
        self.roots.iter()
    }

    /// Roots in lexicographic order.
    pub fn sorted(&self) -> Vec<&RootVector> {
        let mut v: Vec<_> = self.roots.iter().collect();
        v.sort();
        v
    }

    pub fn positive(&self) -> Vec<&RootVector> {
        let mut v: Vec<_> = self.roots.iter().filter(|r| r.is_positive()).collect();
        v.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        v
    }

    pub fn is_real_root(&self, v: &RootVector) -> Verdict {
        if v.len() != self.gcm.size() || v.is_zero() {
            return Verdict::No;
        }
        if v.height() > self.height_bound as u64 {
            return Verdict::Unknown;
        }
        if self.roots.contains(v) {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    /// `{"gcm": <ref>, "height_bound": H, "roots": [...]}` with sorted roots.
    pub fn to_json(&self, gcm_ref: &str) -> String {
        serde_json::to_string(&RootSetFile { gcm: gcm_ref, height_bound: self.height_bound, roots: self.sorted() })
            .expect("root set serializes")
    }
}

/// `ϑ(a,b)` with the coefficients `(m, n)` of each member `m a + n b`.
pub fn theta_pair_coeffs(
    set: &RealRootSet,
    a: &RootVector,
    b: &RootVector,
) -> Result<Vec<(u32, u32, RootVector)>, RootError> {
    for v in [a, b] {
        check_dim(&set.gcm, v)?;
        if !set.contains(v) {
            return Err(RootError::NotARoot(v.clone()));
        }
    }
    let h = set.height_bound as u64;
    let bound = h.div_ceil(a.height().min(b.height())) as u32;
    let mut found: HashMap<RootVector, (u32, u32)> = HashMap::new();
    let mut beyond: Vec<(u32, u32, RootVector)> = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            let v = a.scale(m as i64).add(&b.scale(n as i64));
            if v.is_zero() {
                continue;
            }
            if v.height() > h {
                beyond.push((m, n, v));
            } else if set.contains(&v) && !found.contains_key(&v) {
                found.insert(v, (m, n));
            }
        }
    }
    // A candidate outside the cache one step from a found root may itself be a root.
    let near_found = |m: u32, n: u32| {
        found.values().any(|&(fm, fn_)| (fm + 1 == m && fn_ == n) || (fm == m && fn_ + 1 == n))
    };
    let at_edge = found.values().any(|&(m, n)| m == bound || n == bound);
    if at_edge || beyond.iter().any(|(m, n, _)| near_found(*m, *n)) {
        return Err(RootError::HeightBoundTooSmall(set.height_bound));
    }
    let mut out: Vec<_> = found.into_iter().map(|(v, (m, n))| (m, n, v)).collect();
    out.sort_by_key(|x| (x.0 + x.1, x.0, x.1));
    Ok(out)
}

pub fn theta_pair(set: &RealRootSet, a: &RootVector, b: &RootVector) -> Result<Vec<RootVector>, RootError> {
    Ok(theta_pair_coeffs(set, a, b)?.into_iter().map(|(_, _, v)| v).collect())
}

/// Outcome of a prenilpotency search with the witnessing Weyl words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrenilpotencyReport {
    pub verdict: Verdict,
    /// Word `w` with all `w(θ)` positive.
    pub positive_word: Option<Vec<usize>>,
    /// Word `w'` with all `w'(θ)` negative.
    pub negative_word: Option<Vec<usize>>,
    /// Longest witness length, when both were found.
    pub depth: Option<usize>,
    pub reason: Option<String>,
}

fn apply_all(gcm: &Gcm, j: usize, state: &[RootVector]) -> Vec<RootVector> {
    state.iter().map(|v| reflect(gcm, j, v)).collect()
}

/// Greedy attempt: lift one negative member at a time without pushing a
/// positive member through zero. Returned word is in application order.
fn greedy_positive(gcm: &Gcm, roots: &[RootVector], depth: usize) -> Option<Vec<usize>> {
    let mut state = roots.to_vec();
    let mut applied = Vec::new();
    while applied.len() <= depth {
        let Some(neg) = state.iter().find(|v| v.is_negative()) else {
            return Some(applied);
        };
        let flips_positive = |j: usize| state.iter().any(|v| v.simple_index() == Some(j));
        let j = (0..gcm.size()).find(|&j| pairing(gcm, j, neg) < 0 && !flips_positive(j))?;
        state = apply_all(gcm, j, &state);
        applied.push(j);
    }
    None
}

fn bfs_positive(gcm: &Gcm, roots: &[RootVector], depth: usize, max_states: usize) -> Option<Vec<usize>> {
    let start = roots.to_vec();
    let mut parent: HashMap<Vec<RootVector>, (Vec<RootVector>, usize)> = HashMap::new();
    let mut frontier = vec![start.clone()];
    let mut seen: HashSet<Vec<RootVector>> = HashSet::from([start.clone()]);
    let rebuild = |end: &Vec<RootVector>, parent: &HashMap<Vec<RootVector>, (Vec<RootVector>, usize)>| {
        let mut word = Vec::new();
        let mut cur = end.clone();
        while let Some((prev, j)) = parent.get(&cur) {
            word.push(*j);
            cur = prev.clone();
        }
        word.reverse();
        word
    };
    if start.iter().all(|v| v.is_positive()) {
        return Some(Vec::new());
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for state in &frontier {
            for j in 0..gcm.size() {
                let s = apply_all(gcm, j, state);
                if seen.contains(&s) {
                    continue;
                }
                seen.insert(s.clone());
                parent.insert(s.clone(), (state.clone(), j));
                if s.iter().all(|v| v.is_positive()) {
                    return Some(rebuild(&s, &parent));
                }
                next.push(s);
                if seen.len() > max_states {
                    return None;
                }
            }
        }
        frontier = next;
    }
    None
}

/// Searches for a Weyl word making every member positive, as a word `w` with
/// `w(θ) > 0` written leftmost-applied-last.
fn find_positive_word(gcm: &Gcm, roots: &[RootVector], depth: usize) -> Option<Vec<usize>> {
    let applied = greedy_positive(gcm, roots, depth).or_else(|| bfs_positive(gcm, roots, depth, 200_000))?;
    let mut w = applied;
    w.reverse();
    Some(w)
}

fn isotropic_sum(gcm: &Gcm, a: &RootVector, b: &RootVector) -> bool {
    let Some(d) = gcm.symmetrizer() else { return false };
    let v = a.add(b);
    if v.is_zero() {
        return false;
    }
    let n = gcm.size();
    let mut norm = num_rational::Ratio::from_integer(0i64);
    for i in 0..n {
        for j in 0..n {
            norm += d[i] * gcm.a(i, j) * v.0[i] * v.0[j];
        }
    }
    norm == num_rational::Ratio::from_integer(0)
}

/// Bounded prenilpotency search for an arbitrary finite set of real roots.
pub fn prenilpotency_witness(gcm: &Gcm, theta: &[RootVector], search_depth: usize) -> PrenilpotencyReport {
    let no = |reason: String| PrenilpotencyReport {
        verdict: Verdict::No,
        positive_word: None,
        negative_word: None,
        depth: None,
        reason: Some(reason),
    };
    for (i, a) in theta.iter().enumerate() {
        for b in &theta[i..] {
            if a.add(b).is_zero() {
                return no(format!("{a} and its negative cannot share a sign"));
            }
            if isotropic_sum(gcm, a, b) {
                return no(format!("{a} + {b} is isotropic, so their span holds infinitely many roots"));
            }
        }
    }
    let neg: Vec<_> = theta.iter().map(|v| v.neg()).collect();
    let pos_word = find_positive_word(gcm, theta, search_depth);
    let neg_word = find_positive_word(gcm, &neg, search_depth);
    let depth = match (&pos_word, &neg_word) {
        (Some(p), Some(n)) => Some(p.len().max(n.len())),
        _ => None,
    };
    PrenilpotencyReport {
        verdict: if depth.is_some() { Verdict::Yes } else { Verdict::Unknown },
        positive_word: pos_word,
        negative_word: neg_word,
        depth,
        reason: None,
    }
}

pub fn is_prenilpotent_pair(set: &RealRootSet, a: &RootVector, b: &RootVector, search_depth: usize) -> Verdict {
    prenilpotency_witness(&set.gcm, &[a.clone(), b.clone()], search_depth).verdict
}

pub fn is_nilpotent_set(set: &RealRootSet, theta: &[RootVector], search_depth: usize) -> Verdict {
    let members: HashSet<&RootVector> = theta.iter().collect();
    let mut unknown = false;
    for a in theta {
        for b in theta {
            let s = a.add(b);
            match set.is_real_root(&s) {
                Verdict::Yes if !members.contains(&s) => return Verdict::No,
                Verdict::Unknown => unknown = true,
                _ => {}
            }
        }
    }
    match prenilpotency_witness(&set.gcm, theta, search_depth).verdict {
        Verdict::Yes if !unknown => Verdict::Yes,
        Verdict::No => Verdict::No,
        _ => Verdict::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{affine_gcm, finite_a, finite_c, AffineFamily, AffineType};

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn reflection_examples() {
        let a2 = finite_a(2);
        assert_eq!(simple_reflection(&a2, 0, &rv(&[0, 1])).unwrap(), rv(&[1, 1]));
        assert_eq!(simple_reflection(&a2, 1, &rv(&[0, 1])).unwrap(), rv(&[0, -1]));
        let a7 = affine_gcm(AffineType { family: AffineFamily::A2odd, l: 4 }).unwrap();
        assert_eq!(simple_reflection(&a7, 3, &rv(&[0, 0, 0, 0, 1])).unwrap(), rv(&[0, 0, 0, 2, 1]));
        assert!(simple_reflection(&a2, 2, &rv(&[0, 1])).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(sign_of_root(&rv(&[1, 1])).unwrap(), Sign::Positive);
        assert_eq!(sign_of_root(&rv(&[-1, 0])).unwrap(), Sign::Negative);
        assert!(matches!(sign_of_root(&rv(&[1, -1])), Err(RootError::MixedSigns(_))));
    }

    #[test]
    fn queries() {
        let set = enumerate_real_roots(&finite_a(2), 10).unwrap();
        assert_eq!(set.len(), 6);
        assert_eq!(set.is_real_root(&rv(&[1, 1])), Verdict::Yes);
        assert_eq!(set.is_real_root(&rv(&[1, -1])), Verdict::No);
        let aff = affine_gcm(AffineType { family: AffineFamily::A1t, l: 2 }).unwrap();
        let small = enumerate_real_roots(&aff, 5).unwrap();
        assert_eq!(small.is_real_root(&rv(&[2, 2, 2])), Verdict::Unknown);
    }

    #[test]
    fn theta_examples() {
        let c3 = finite_c(3);
        let set = enumerate_real_roots(&c3, 10).unwrap();
        let t = theta_pair(&set, &rv(&[0, 1, 0]), &rv(&[0, 0, 1])).unwrap();
        assert_eq!(t, vec![rv(&[0, 0, 1]), rv(&[0, 1, 0]), rv(&[0, 1, 1]), rv(&[0, 1, 2])]);
        let tight = enumerate_real_roots(&finite_a(2), 2).unwrap();
        assert_eq!(
            theta_pair(&tight, &rv(&[1, 0]), &rv(&[0, 1])),
            Err(RootError::HeightBoundTooSmall(2))
        );
    }

    #[test]
    fn prenilpotency_examples() {
        let set = enumerate_real_roots(&finite_a(2), 10).unwrap();
        assert_eq!(is_prenilpotent_pair(&set, &rv(&[1, 0]), &rv(&[0, 1]), 3), Verdict::Yes);
        assert_eq!(is_prenilpotent_pair(&set, &rv(&[1, 0]), &rv(&[-1, 0]), 3), Verdict::No);
        assert_eq!(is_nilpotent_set(&set, &[rv(&[1, 0]), rv(&[0, 1])], 8), Verdict::No);
        assert_eq!(is_nilpotent_set(&set, &[rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])], 8), Verdict::Yes);
        let aff = affine_gcm(AffineType { family: AffineFamily::A1t, l: 2 }).unwrap();
        let aset = enumerate_real_roots(&aff, 6).unwrap();
        assert_eq!(is_prenilpotent_pair(&aset, &rv(&[1, 0, 0]), &rv(&[0, 1, 1]), 8), Verdict::No);
    }

    #[test]
    fn descent_agrees_with_enumeration() {
        let aff = affine_gcm(AffineType { family: AffineFamily::C1t, l: 3 }).unwrap();
        let set = enumerate_real_roots(&aff, 9).unwrap();
        for v in set.iter() {
            let (w, i, s) = descend(&aff, v).unwrap();
            let mut r = apply_word(&aff, &w, &RootVector::simple(4, i)).unwrap();
            if s == Sign::Negative {
                r = r.neg();
            }
            assert_eq!(&r, v);
        }
        assert!(!is_real_root_exact(&aff, &rv(&[1, 2, 2, 1])));
    }
}
