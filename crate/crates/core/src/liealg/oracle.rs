use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{bracket, twist, Algebra, AlgebraKind, LieError, LoopElement};
use crate::rootsys::RootVector;

/// A weight space of the realization, with a basis.
#[derive(Debug, Clone)]
pub struct WeightSpace {
    pub weight: RootVector,
    pub basis: Vec<LoopElement>,
}

/// Spanning vectors of the degree-`d` part of the realized loop algebra built
/// from off-diagonal matrix units. Diagonal parts only carry weights in `Zδ`
/// and are left out.
fn off_diagonal_basis(alg: &Algebra, d: i32) -> Vec<LoopElement> {
    let n = alg.matrix_size();
    let mut out = Vec::new();
    match alg.kind() {
        AlgebraKind::Twisted(l) => {
            let eps = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            let mut seen = BTreeSet::new();
            for r in 0..n {
                for c in 0..n {
                    if r == c || seen.contains(&(r, c)) {
                        continue;
                    }
                    let x = LoopElement::unit(r, c, d, 1);
                    let sx = twist(l, &LoopElement::unit(r, c, 0, 1));
                    let (&(r2, c2, _), _) = sx.entries().next().expect("unit image");
                    seen.insert((r, c));
                    seen.insert((r2 as usize, c2 as usize));
                    // eigenvector x + eps σ(x) of eigenvalue eps
                    let v = x.add(&twist(l, &x).scale_int(eps));
                    if !v.is_zero() {
                        out.push(v);
                    }
                }
            }
        }
        AlgebraKind::Untwisted(_) => {
            for r in 0..n {
                for c in 0..n {
                    if r != c {
                        out.push(LoopElement::unit(r, c, d, 1));
                    }
                }
            }
        }
        AlgebraKind::Finite(_) => {
            if d == 0 {
                // Finite handles: root spaces from brackets of generators.
                return finite_root_vectors(alg);
            }
        }
    }
    out
}

fn finite_root_vectors(alg: &Algebra) -> Vec<LoopElement> {
    let mut found: BTreeMap<RootVector, LoopElement> = BTreeMap::new();
    let mut frontier: Vec<LoopElement> = Vec::new();
    for i in 0..alg.rank() {
        for x in [alg.e(i).clone(), alg.f(i).clone()] {
            found.insert(alg.weight_of(&x).expect("generator weight"), x.clone());
            frontier.push(x);
        }
    }
    while let Some(x) = frontier.pop() {
        for i in 0..alg.rank() {
            for g in [alg.e(i), alg.f(i)] {
                let y = bracket(g, &x);
                if y.is_zero() {
                    continue;
                }
                let Ok(w) = alg.weight_of(&y) else { continue };
                if w.is_zero() || found.contains_key(&w) {
                    continue;
                }
                found.insert(w, y.clone());
                frontier.push(y);
            }
        }
    }
    found.into_values().collect()
}

/// Weights of height at most `h` whose weight space in the realization is
/// one-dimensional and pairs non-degenerately with the opposite space:
/// for `x ∈ g_α`, `y ∈ g_{-α}` and `k = [x, y]`, `[k, x]` is a nonzero multiple of `x`.
pub fn root_space_oracle(alg: &Algebra, h: u32) -> Result<BTreeSet<RootVector>, LieError> {
    let max_deg = if alg.kind().is_affine() { h as i32 + 1 } else { 0 };
    let mut spaces: BTreeMap<RootVector, Vec<LoopElement>> = BTreeMap::new();
    for d in -max_deg..=max_deg {
        for x in off_diagonal_basis(alg, d) {
            let w = alg.weight_of(&x)?;
            spaces.entry(w).or_default().push(x);
        }
    }
    let mut out = BTreeSet::new();
    for (w, basis) in &spaces {
        if basis.len() != 1 || w.height() > h as u64 {
            continue;
        }
        let Some(opposite) = spaces.get(&w.neg()) else { continue };
        if opposite.len() != 1 {
            continue;
        }
        let x = &basis[0];
        let k = bracket(x, &opposite[0]);
        let kx = bracket(&k, x);
        if x.ratio_to(&kx).is_some_and(|r| !r.is_zero()) {
            out.insert(w.clone());
        }
    }
    Ok(out)
}
