use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;

use kmtower::cartan::{affine_gcm, AffineType, FiniteType, Gcm, ALL_FAMILIES};
use kmtower::liealg::{build_algebra, AlgebraKind};
use kmtower::rootsys::{apply_word, enumerate_real_roots, is_real_root_exact, RootVector};
use kmtower::scalars::Ring;
use kmtower::steinberg::SteinbergContext;
use kmtower::tower::build_tower_map;

fn affine(idx: usize, extra: usize) -> (Gcm, kmtower::cartan::AffineFamily, usize) {
    let family = ALL_FAMILIES[idx % ALL_FAMILIES.len()];
    let l = family.min_rank() + extra;
    (affine_gcm(AffineType::new(family, l).unwrap()).unwrap(), family, l)
}

fn context(t: FiniteType) -> SteinbergContext {
    let alg = Arc::new(build_algebra(AlgebraKind::Finite(t)).unwrap());
    let pos: Vec<RootVector> = enumerate_real_roots(alg.gcm(), 10).unwrap().positive().into_iter().cloned().collect();
    SteinbergContext::new(alg, &pos).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_words_send_simple_roots_to_real_roots(idx in 0usize..7, extra in 0usize..3, word in prop::collection::vec(0usize..16, 0..12), i in 0usize..16) {
        let (g, _, _) = affine(idx, extra);
        let n = g.size();
        let word: Vec<usize> = word.into_iter().map(|j| j % n).collect();
        let a = RootVector::simple(n, i % n);
        let v = apply_word(&g, &word, &a).unwrap();
        prop_assert!(is_real_root_exact(&g, &v));
        // Undo the word letter by letter.
        let back: Vec<usize> = word.iter().rev().copied().collect();
        prop_assert_eq!(apply_word(&g, &back, &v).unwrap(), a);
    }

    #[test]
    fn tower_intertwines_weyl_words(idx in 0usize..7, extra in 0usize..3, word in prop::collection::vec(0usize..16, 0..10), i in 0usize..16) {
        let (_, family, l) = affine(idx, extra);
        let map = build_tower_map(family, l).unwrap();
        let n = map.source().size();
        let word: Vec<usize> = word.into_iter().map(|j| j % n).collect();
        let a = RootVector::simple(n, i % n);
        let lhs = map.tau_apply(&apply_word(map.source(), &word, &a).unwrap());
        let rhs = apply_word(map.target(), &map.w_embed_apply(&word), &map.tau_apply(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcm_json_round_trip(idx in 0usize..7, extra in 0usize..4) {
        let (g, _, _) = affine(idx, extra);
        prop_assert_eq!(Gcm::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn modular_ring_axioms(p in 2u64..40, a in -100i64..100, b in -100i64..100, c in -100i64..100) {
        let r = Ring::modular(p).unwrap();
        let (x, y, z) = (r.from_i64(a), r.from_i64(b), r.from_i64(c));
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.sub(&x).unwrap().is_zero());
        if let Ok(inv) = x.try_invert() {
            prop_assert!(x.mul(&inv).unwrap().is_one());
        }
    }

    #[test]
    fn unipotent_inverse(seed in any::<u64>(), which in 0usize..3) {
        let t = [FiniteType::A2, FiniteType::B3, FiniteType::C3][which];
        let ctx = context(t);
        let z = Ring::integers();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = ctx.random_word(&mut rng, &z, 5).unwrap();
        let prod = ctx.multiply(&u, &ctx.inverse(&u).unwrap()).unwrap();
        prop_assert!(prod.is_identity());
    }
}
