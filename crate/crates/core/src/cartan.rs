//! Generalized Cartan matrices and the seven infinite affine families.
//!
//! Entries follow the action convention used throughout the crate: the simple
//! reflection `s_i` sends `a_j` to `a_j - a_{ij} a_i`, so `a_{ij} = -2` with
//! `a_{ji} = -1` means node `j` carries the longer root.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is empty")]
    Empty,
    #[error("diagonal entry a[{0}][{0}] is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry a[{0}][{1}] is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("a[{0}][{1}] and a[{1}][{0}] disagree on being zero")]
    ZeroAsymmetry(usize, usize),
    #[error("coxeter exponent requested for a node with itself ({0})")]
    SameNode(usize),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("{family} needs l >= {min}, got {l}")]
    RankTooSmall { family: AffineFamily, l: usize, min: usize },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("matrix is not one of the seven infinite affine families")]
    NotInFamilies,
    #[error("label count {0} does not match size {1}")]
    LabelCount(usize, usize),
    #[error("unknown affine family tag {0:?}")]
    UnknownFamily(String),
    #[error("invalid GCM json: {0}")]
    Json(String),
}

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    labels: Option<Vec<String>>,
}

pub fn validate_gcm(matrix: Vec<Vec<i64>>) -> Result<Gcm, CartanError> {
    let n = matrix.len();
    if n == 0 {
        return Err(CartanError::Empty);
    }
    if matrix.iter().any(|row| row.len() != n) {
        return Err(CartanError::NotSquare);
    }
    for i in 0..n {
        if matrix[i][i] != 2 {
            return Err(CartanError::DiagonalNotTwo(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if matrix[i][j] > 0 {
                return Err(CartanError::PositiveOffDiagonal(i, j));
            }
            if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                return Err(CartanError::ZeroAsymmetry(i.min(j), i.max(j)));
            }
        }
    }
    Ok(Gcm { entries: matrix, labels: None })
}

impl Gcm {
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Gcm, CartanError> {
        if labels.len() != self.size() {
            return Err(CartanError::LabelCount(labels.len(), self.size()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Node label, defaulting to `e_{i+1}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        (0..self.size()).find(|&i| self.label(i) == label)
    }

    /// Order of `s_i s_j`: 2, 3, 4, 6, or 0 for infinite order.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> Result<u32, CartanError> {
        let n = self.size();
        if i >= n || j >= n {
            return Err(CartanError::NodeOutOfRange(i.max(j)));
        }
        if i == j {
            return Err(CartanError::SameNode(i));
        }
        Ok(match self.a(i, j) * self.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => 0,
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.a(i, j) != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Principal submatrix on the given nodes (in the given order).
    pub fn submatrix(&self, nodes: &[usize]) -> Gcm {
        let entries = nodes.iter().map(|&i| nodes.iter().map(|&j| self.a(i, j)).collect()).collect();
        Gcm { entries, labels: self.labels.as_ref().map(|l| nodes.iter().map(|&i| l[i].clone()).collect()) }
    }

    /// Diagonal `d` with `d_i a_{ij}` symmetric (half squared root lengths), when one exists.
    pub fn symmetrizer(&self) -> Option<Vec<num_rational::Ratio<i64>>> {
        use num_rational::Ratio;
        let n = self.size();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Ratio::from_integer(1));
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i == j || self.a(i, j) == 0 {
                        continue;
                    }
                    let dj = d[i].unwrap() * Ratio::new(self.a(i, j), self.a(j, i));
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(existing) if existing != dj => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(d.into_iter().map(|x| x.unwrap()).collect())
    }

    /// Serializes as `{"size":n,"matrix":[[..]],"labels":[..]}` (labels only when set).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GcmFile {
            size: self.size(),
            matrix: self.entries.clone(),
            labels: self.labels.clone(),
        })
        .expect("gcm serializes")
    }

    pub fn from_json(s: &str) -> Result<Gcm, CartanError> {
        let file: GcmFile = serde_json::from_str(s).map_err(|e| CartanError::Json(e.to_string()))?;
        if file.size != file.matrix.len() {
            return Err(CartanError::Json(format!(
                "size {} does not match {} rows",
                file.size,
                file.matrix.len()
            )));
        }
        let gcm = validate_gcm(file.matrix)?;
        match file.labels {
            Some(l) => gcm.with_labels(l),
            None => Ok(gcm),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GcmFile {
    size: usize,
    matrix: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

/// The seven infinite affine families, in the order the diagrams are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineFamily {
    /// `A_l^(1)`: a cycle.
    A1t,
    /// `B_l^(1)`.
    B1t,
    /// `C_l^(1)`.
    C1t,
    /// `D_{l+1}^(1)`, nodes `0..=l+1`.
    D1t,
    /// The double-bond chain whose two arrows point the same way. It is drawn
    /// with the label `A_{2l}^(1)`, which collides with the first family; the
    /// diagram itself is `A_{2l}^(2)`.
    A2even,
    /// `A_{2l-1}^(2)`.
    A2odd,
    /// `D_{l+1}^(2)`.
    D2t,
}

pub const ALL_FAMILIES: [AffineFamily; 7] = [
    AffineFamily::A1t,
    AffineFamily::B1t,
    AffineFamily::C1t,
    AffineFamily::D1t,
    AffineFamily::A2even,
    AffineFamily::A2odd,
    AffineFamily::D2t,
];

impl AffineFamily {
    pub fn min_rank(self) -> usize {
        match self {
            AffineFamily::A1t => 2,
            AffineFamily::B1t | AffineFamily::A2odd => 3,
            AffineFamily::C1t | AffineFamily::D2t | AffineFamily::A2even => 2,
            AffineFamily::D1t => 3,
        }
    }

    /// Number of diagram nodes at rank parameter `l`.
    pub fn node_count(self, l: usize) -> usize {
        match self {
            AffineFamily::D1t => l + 2,
            _ => l + 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            AffineFamily::A1t => "A1t",
            AffineFamily::B1t => "B1t",
            AffineFamily::C1t => "C1t",
            AffineFamily::D1t => "D1t",
            AffineFamily::A2even => "A2even",
            AffineFamily::A2odd => "A2odd",
            AffineFamily::D2t => "D2t",
        }
    }

    /// Conventional name at rank `l`, e.g. `A_{7}^{(2)}`.
    pub fn display_name(self, l: usize) -> String {
        match self {
            AffineFamily::A1t => format!("A_{l}^(1)"),
            AffineFamily::B1t => format!("B_{l}^(1)"),
            AffineFamily::C1t => format!("C_{l}^(1)"),
            AffineFamily::D1t => format!("D_{}^(1)", l + 1),
            AffineFamily::A2even => format!("A_{}^(2) [drawn as A_{}^(1)]", 2 * l, 2 * l),
            AffineFamily::A2odd => format!("A_{}^(2)", 2 * l - 1),
            AffineFamily::D2t => format!("D_{}^(2)", l + 1),
        }
    }
}

impl fmt::Display for AffineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AffineFamily {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| CartanError::UnknownFamily(s.to_string()))
    }
}

/// A family together with its rank parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineType {
    pub family: AffineFamily,
    pub l: usize,
}

impl AffineType {
    pub fn new(family: AffineFamily, l: usize) -> Result<Self, CartanError> {
        let min = family.min_rank();
        if l < min {
            return Err(CartanError::RankTooSmall { family, l, min });
        }
        Ok(AffineType { family, l })
    }
}

fn bond(m: &mut [Vec<i64>], i: usize, j: usize, a_ij: i64, a_ji: i64) {
    m[i][j] = a_ij;
    m[j][i] = a_ji;
}

/// `p < q` in a diagram: `q` is the longer root.
fn toward_right(m: &mut [Vec<i64>], p: usize, q: usize) {
    bond(m, p, q, -2, -1);
}

/// `p > q`: `p` is the longer root.
fn toward_left(m: &mut [Vec<i64>], p: usize, q: usize) {
    bond(m, p, q, -1, -2);
}

fn simple(m: &mut [Vec<i64>], p: usize, q: usize) {
    bond(m, p, q, -1, -1);
}

pub fn affine_gcm(ty: AffineType) -> Result<Gcm, CartanError> {
    let AffineType { family, l } = AffineType::new(ty.family, ty.l)?;
    let n = family.node_count(l);
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        AffineFamily::A1t => {
            for i in 0..n {
                simple(&mut m, i, (i + 1) % n);
            }
        }
        AffineFamily::B1t => {
            simple(&mut m, 0, 2);
            for i in 1..l - 1 {
                simple(&mut m, i, i + 1);
            }
            toward_left(&mut m, l - 1, l);
        }
        AffineFamily::C1t => {
            toward_left(&mut m, 0, 1);
            for i in 1..l - 1 {
                simple(&mut m, i, i + 1);
            }
            toward_right(&mut m, l - 1, l);
        }
        AffineFamily::D1t => {
            simple(&mut m, 0, 2);
            for i in 1..l {
                simple(&mut m, i, i + 1);
            }
            simple(&mut m, l - 1, l + 1);
        }
        AffineFamily::A2even => {
            toward_right(&mut m, 0, 1);
            for i in 1..l - 1 {
                simple(&mut m, i, i + 1);
            }
            toward_right(&mut m, l - 1, l);
        }
        AffineFamily::A2odd => {
            simple(&mut m, 0, 2);
            for i in 1..l - 1 {
                simple(&mut m, i, i + 1);
            }
            toward_right(&mut m, l - 1, l);
        }
        AffineFamily::D2t => {
            toward_right(&mut m, 0, 1);
            for i in 1..l - 1 {
                simple(&mut m, i, i + 1);
            }
            toward_left(&mut m, l - 1, l);
        }
    }
    let labels = (0..n).map(|i| format!("a{i}")).collect();
    validate_gcm(m)?.with_labels(labels)
}

/// Finite `A_n` chain.
pub fn finite_a(n: usize) -> Gcm {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            simple(&mut m, i, i + 1);
        }
    }
    validate_gcm(m).expect("valid")
}

/// Finite `B_n` as the transpose of [`finite_c`]: `a_{n-1,n} = -2`.
pub fn finite_b(n: usize) -> Gcm {
    let mut m = finite_a(n).entries;
    toward_right(&mut m, n - 2, n - 1);
    validate_gcm(m).expect("valid")
}

/// Finite `C_n` as tabulated: `a_{n,n-1} = -2`, so the last simple root is the
/// short one and `e_{n-1} + 2 e_n` is a root.
pub fn finite_c(n: usize) -> Gcm {
    let mut m = finite_a(n).entries;
    toward_left(&mut m, n - 2, n - 1);
    validate_gcm(m).expect("valid")
}

/// Finite `D_n` (`n >= 4`): the last two nodes both attach to node `n-3`.
pub fn finite_d(n: usize) -> Gcm {
    let mut m = finite_a(n).entries;
    bond(&mut m, n - 2, n - 1, 0, 0);
    simple(&mut m, n - 3, n - 1);
    validate_gcm(m).expect("valid")
}

/// Finite types used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteType {
    A2,
    B3,
    C3,
}

impl FiniteType {
    pub fn gcm(self) -> Gcm {
        match self {
            FiniteType::A2 => finite_a(2),
            FiniteType::B3 => finite_b(3),
            FiniteType::C3 => finite_c(3),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FiniteType::A2 => "A2",
            FiniteType::B3 => "B3",
            FiniteType::C3 => "C3",
        }
    }
}

impl FromStr for FiniteType {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A2" => Ok(FiniteType::A2),
            "B3" => Ok(FiniteType::B3),
            "C3" => Ok(FiniteType::C3),
            _ => Err(CartanError::UnknownFamily(s.to_string())),
        }
    }
}

/// Exact integer determinant (fraction-free Bareiss elimination).
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Affine-type oracle: determinant zero and every proper principal minor positive.
pub fn affinity_check(gcm: &Gcm) -> Result<bool, CartanError> {
    if !gcm.is_connected() {
        return Err(CartanError::Disconnected);
    }
    let n = gcm.size();
    if determinant(gcm.entries()) != 0 {
        return Ok(false);
    }
    for mask in 1u32..(1u32 << n) - 1 {
        let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if determinant(gcm.submatrix(&nodes).entries()) <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of recognizing a matrix: `perm[k]` is the node of the input matrix
/// playing the role of node `k` in `affine_gcm(ty)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub ty: AffineType,
    pub perm: Vec<usize>,
}

pub fn classify_affine(gcm: &Gcm) -> Result<Classification, CartanError> {
    let n = gcm.size();
    for family in ALL_FAMILIES {
        let l = match family {
            AffineFamily::D1t if n >= 2 => n - 2,
            AffineFamily::D1t => continue,
            _ => n - 1,
        };
        let Ok(ty) = AffineType::new(family, l) else { continue };
        let model = affine_gcm(ty)?;
        if let Some(perm) = match_diagrams(&model, gcm) {
            return Ok(Classification { ty, perm });
        }
    }
    Err(CartanError::NotInFamilies)
}

fn signature(g: &Gcm, i: usize) -> Vec<(i64, i64)> {
    let mut s: Vec<(i64, i64)> =
        (0..g.size()).filter(|&j| j != i && g.a(i, j) != 0).map(|j| (g.a(i, j), g.a(j, i))).collect();
    s.sort_unstable();
    s
}

/// Backtracking search for `perm` with `target[perm[i]][perm[j]] == model[i][j]`.
fn match_diagrams(model: &Gcm, target: &Gcm) -> Option<Vec<usize>> {
    let n = model.size();
    if target.size() != n {
        return None;
    }
    let ms: Vec<_> = (0..n).map(|i| signature(model, i)).collect();
    let ts: Vec<_> = (0..n).map(|i| signature(target, i)).collect();
    let mut sorted_m = ms.clone();
    let mut sorted_t = ts.clone();
    sorted_m.sort();
    sorted_t.sort();
    if sorted_m != sorted_t {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        model: &Gcm,
        target: &Gcm,
        ms: &[Vec<(i64, i64)>],
        ts: &[Vec<(i64, i64)>],
        perm: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = model.size();
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || ms[k] != ts[cand] {
                continue;
            }
            if (0..k).all(|j| {
                model.a(k, j) == target.a(cand, perm[j]) && model.a(j, k) == target.a(perm[j], cand)
            }) {
                perm[k] = cand;
                used[cand] = true;
                if go(k + 1, model, target, ms, ts, perm, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    if go(0, model, target, &ms, &ts, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate_gcm(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert_eq!(validate_gcm(vec![vec![2, 0], vec![-1, 2]]), Err(CartanError::ZeroAsymmetry(0, 1)));
        assert_eq!(validate_gcm(vec![vec![1, -1], vec![-1, 2]]), Err(CartanError::DiagonalNotTwo(0)));
        assert_eq!(validate_gcm(vec![vec![2, 1], vec![1, 2]]), Err(CartanError::PositiveOffDiagonal(0, 1)));
        assert_eq!(validate_gcm(vec![vec![2, -1]]), Err(CartanError::NotSquare));
    }

    #[test]
    fn coxeter_exponents() {
        let g = validate_gcm(vec![
            vec![2, 0, -1, -2, -1],
            vec![0, 2, 0, 0, 0],
            vec![-1, 0, 2, 0, 0],
            vec![-1, 0, 0, 2, 0],
            vec![-4, 0, 0, 0, 2],
        ])
        .unwrap();
        assert_eq!(g.coxeter_exponent(0, 1).unwrap(), 2);
        assert_eq!(g.coxeter_exponent(0, 2).unwrap(), 3);
        assert_eq!(g.coxeter_exponent(0, 3).unwrap(), 4);
        assert_eq!(g.coxeter_exponent(0, 4).unwrap(), 0);
        assert_eq!(g.coxeter_exponent(1, 1), Err(CartanError::SameNode(1)));
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(g.coxeter_exponent(i, j), g.coxeter_exponent(j, i));
                }
            }
        }
    }

    #[test]
    fn affine_examples() {
        let a2 = affine_gcm(AffineType::new(AffineFamily::A1t, 2).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a2.a(i, j), if i == j { 2 } else { -1 });
            }
        }
        let a7 = affine_gcm(AffineType { family: AffineFamily::A2odd, l: 4 }).unwrap();
        assert_eq!(a7.a(3, 4), -2);
        assert_eq!(a7.a(4, 3), -1);
        assert_eq!(a7.label(0), "a0");
        assert!(matches!(
            affine_gcm(AffineType { family: AffineFamily::B1t, l: 2 }),
            Err(CartanError::RankTooSmall { .. })
        ));
    }

    #[test]
    fn affinity_examples() {
        let a3 = affine_gcm(AffineType { family: AffineFamily::A1t, l: 3 }).unwrap();
        assert!(affinity_check(&a3).unwrap());
        assert!(!affinity_check(&finite_a(2)).unwrap());
        let hyperbolic = validate_gcm(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(determinant(hyperbolic.entries()), -5);
        assert!(!affinity_check(&hyperbolic).unwrap());
        let split = validate_gcm(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(affinity_check(&split), Err(CartanError::Disconnected));
    }

    #[test]
    fn finite_conventions() {
        // e2 + 2 e3 is a root of C3: s3(a2) = a2 + 2 a3.
        assert_eq!(finite_c(3).a(2, 1), -2);
        assert_eq!(finite_b(3).a(1, 2), -2);
        assert_eq!(determinant(finite_a(2).entries()), 3);
        assert_eq!(determinant(finite_b(3).entries()), 2);
        assert_eq!(determinant(finite_c(3).entries()), 2);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let g = affine_gcm(AffineType { family: AffineFamily::C1t, l: 2 }).unwrap();
        let s = g.to_json();
        assert_eq!(
            s,
            r#"{"size":3,"matrix":[[2,-1,0],[-2,2,-2],[0,-1,2]],"labels":["a0","a1","a2"]}"#
        );
        assert_eq!(Gcm::from_json(&s).unwrap(), g);
        let plain = Gcm::from_json(r#"{"size":2,"matrix":[[2,-1],[-1,2]]}"#).unwrap();
        assert_eq!(plain.to_json(), r#"{"size":2,"matrix":[[2,-1],[-1,2]]}"#);
        assert!(Gcm::from_json(r#"{"size":3,"matrix":[[2,-1],[-1,2]]}"#).is_err());
    }

    #[test]
    fn classify_examples() {
        let d = affine_gcm(AffineType { family: AffineFamily::D2t, l: 4 }).unwrap();
        assert_eq!(classify_affine(&d).unwrap().ty, AffineType { family: AffineFamily::D2t, l: 4 });
        assert_eq!(classify_affine(&finite_a(2)), Err(CartanError::NotInFamilies));
    }
}
