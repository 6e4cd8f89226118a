//! One line per acceptance criterion, each at its exactness and time budget.
//!
//! Criteria 4 and 7 quote identities that do not hold exactly as displayed.
//! They print FAIL; the test then asserts the specific, documented deviation
//! instead, so any other change in behaviour still breaks the build.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kmtower::cartan::{affine_gcm, affinity_check, classify_affine, AffineFamily, AffineType, FiniteType, ALL_FAMILIES};
use kmtower::liealg::{build_algebra, root_space_oracle, AlgebraKind};
use kmtower::report::{Status, VerificationReport};
use kmtower::rootsys::{enumerate_real_roots, RootVector};
use kmtower::steinberg::{verify_commutator_identities, verify_naturality};
use kmtower::suite::{jobs, run_jobs, Check, CheckParams};
use kmtower::tower::{verify_lemma_3_1, verify_lemma_3_2, verify_thm_1_2_conditions, verify_thm_3_5};
use kmtower::config::RunConfig;
use kmtower::weyl::{verify_wbar_presentation, wbar_candidates};

struct Outcome {
    ok: bool,
    detail: String,
}

fn criterion(id: u8, budget_s: u64, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_s);
    out.ok &= in_time;
    println!(
        "criterion {id:>2}: {} [exact, {:.2}s of {budget_s}s] {}",
        if out.ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        out.detail
    );
    out
}

fn failing_notes(r: &VerificationReport) -> Vec<String> {
    r.witnesses.iter().filter(|w| w.informational && w.status == Status::Fail).map(|w| w.name.clone()).collect()
}

fn c1() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for family in ALL_FAMILIES {
        for l in family.min_rank()..=8 {
            let ty = AffineType::new(family, l).unwrap();
            let g = affine_gcm(ty).unwrap();
            count += 1;
            let round_trip = classify_affine(&g).map(|c| c.ty == ty && c.perm.iter().enumerate().all(|(i, &p)| i == p));
            if round_trip != Ok(true) || affinity_check(&g) != Ok(true) {
                bad.push(format!("{family} l={l}"));
            }
        }
    }
    let finite_fail = [FiniteType::A2, FiniteType::B3, FiniteType::C3].iter().all(|t| affinity_check(&t.gcm()) != Ok(true));
    Outcome {
        ok: bad.is_empty() && finite_fail,
        detail: format!("{count} affine types round-trip, finite types rejected: {finite_fail}, failures {bad:?}"),
    }
}

fn c2() -> Outcome {
    let counts: Vec<usize> = [FiniteType::A2, FiniteType::B3, FiniteType::C3]
        .iter()
        .map(|t| enumerate_real_roots(&t.gcm(), 10).unwrap().len())
        .collect();
    let mut mismatched = Vec::new();
    let mut compared = 0;
    let cases = (2..=4).map(|l| (AffineFamily::A1t, l)).chain((3..=4).map(|l| (AffineFamily::A2odd, l)));
    for (family, l) in cases {
        let alg = build_algebra(AlgebraKind::from_family(family, l).unwrap()).unwrap();
        let roots: BTreeSet<RootVector> = enumerate_real_roots(alg.gcm(), 12).unwrap().iter().cloned().collect();
        let oracle = root_space_oracle(&alg, 12).unwrap();
        compared += roots.len();
        if roots != oracle {
            mismatched.push(format!("{} ({} vs {})", family.display_name(l), roots.len(), oracle.len()));
        }
    }
    Outcome {
        ok: counts == [6, 18, 18] && mismatched.is_empty(),
        detail: format!("A2/B3/C3 counts {counts:?}; {compared} affine roots match the weight-space oracle; mismatches {mismatched:?}"),
    }
}

fn c3() -> Outcome {
    let js = jobs(Check::Serre, &CheckParams::default()).unwrap();
    let outcomes = run_jobs(&js, &RunConfig::default());
    let bad: Vec<String> = outcomes.iter().filter(|o| !o.report().passed()).map(|o| o.label.clone()).collect();
    Outcome { ok: bad.is_empty(), detail: format!("{} realizations with sharp Serre exponents; failures {bad:?}", outcomes.len()) }
}

fn c4() -> (Outcome, VerificationReport) {
    let r = verify_commutator_identities().unwrap();
    let notes = failing_notes(&r);
    let ok = r.passed() && notes.is_empty();
    let detail = if ok {
        "both identities as displayed, constants of magnitude 1, oracle agreement over Z, Z/5, Q[r]".to_string()
    } else {
        format!(
            "C3 as displayed gives r^2 on e2+2e3 (parameter on the short root); with r on e2 it holds. Other checks: {:?}",
            r.status
        )
    };
    (Outcome { ok, detail }, r)
}

fn c5() -> Outcome {
    let mut bad = Vec::new();
    for l in 3..=5 {
        let r = verify_lemma_3_1(AffineFamily::A2odd, l).unwrap();
        let sharp = r.witnesses.iter().any(|w| w.name.starts_with("(ad e_(l-1))^3") && w.status == Status::Pass);
        if !r.passed() || !sharp {
            bad.push(l);
        }
    }
    Outcome { ok: bad.is_empty(), detail: format!("A2odd l=3..5, (ad e_(l-1))^3 e'_l = 0 sharp; failing l {bad:?}") }
}

fn c6() -> Outcome {
    let mut bad = Vec::new();
    for family in [AffineFamily::A2odd, AffineFamily::A1t] {
        for l in 3..=4 {
            if !verify_lemma_3_2(family, l, 8).unwrap().passed() {
                bad.push(format!("{family} l={l}"));
            }
        }
    }
    Outcome { ok: bad.is_empty(), detail: format!("A2odd and A1t at l=3,4, height 8; failures {bad:?}") }
}

fn c7() -> (Outcome, Vec<VerificationReport>) {
    let reports: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)].iter().map(|&(m, n)| verify_thm_3_5(m, n, 16).unwrap()).collect();
    let computed_ok = reports.iter().all(|r| r.passed());
    let displayed: usize = reports.iter().map(|r| failing_notes(r).len()).sum();
    let ok = computed_ok && displayed == 0;
    let detail = format!(
        "commutation, oracle agreement, ϑ and shifted identities pass: {computed_ok}; \
         {displayed} displayed identities fail as written (words start one letter early; s_mn(a_0) holds for s_nm when m != n)"
    );
    (Outcome { ok, detail }, reports)
}

fn c8() -> Outcome {
    let r = verify_thm_1_2_conditions(6).unwrap();
    let scope = r.witnesses.iter().filter(|w| w.status == Status::OutOfScope).count();
    Outcome { ok: r.passed(), detail: format!("{} findings, {scope} out of scope (perfectness)", r.witnesses.len()) }
}

fn c9() -> Outcome {
    let mut named = Vec::new();
    let mut ok = true;
    for l in 2..=8 {
        let r = verify_wbar_presentation(l, &wbar_candidates(l));
        let by = r.witnesses.iter().find(|w| w.name == "some candidate satisfies all relations").map(|w| w.detail["satisfied_by"][0].clone());
        ok &= r.passed() && by.is_some();
        named.push(format!("l={l}: {}", by.unwrap_or_default()));
    }
    Outcome { ok, detail: named.join(", ") }
}

fn c10() -> Outcome {
    let r = verify_naturality(20_240_601, 200).unwrap();
    Outcome { ok: r.passed(), detail: format!("200 pairs each in A2 and C3 over Z/2, Z/3, Z/7: {:?}", r.status) }
}

#[test]
fn acceptance() {
    let mut results = vec![criterion(1, 5, c1), criterion(2, 60, c2), criterion(3, 60, c3)];
    let mut lemma_2_8 = None;
    results.push(criterion(4, 10, || {
        let (o, r) = c4();
        lemma_2_8 = Some(r);
        o
    }));
    results.push(criterion(5, 60, c5));
    results.push(criterion(6, 300, c6));
    let mut thm_3_5 = None;
    results.push(criterion(7, 600, || {
        let (o, r) = c7();
        thm_3_5 = Some(r);
        o
    }));
    results.push(criterion(8, 30, c8));
    results.push(criterion(9, 10, c9));
    results.push(criterion(10, 10, c10));

    for (i, o) in results.iter().enumerate() {
        if ![3, 6].contains(&i) {
            assert!(o.ok, "criterion {} failed: {}", i + 1, o.detail);
        }
    }

    // Criterion 4: only the literal C3 reading fails, and it fails by the r^2 term.
    let r = lemma_2_8.unwrap();
    assert!(r.passed());
    let literal: Vec<_> = r.witnesses.iter().filter(|w| w.informational && w.status == Status::Fail).collect();
    assert_eq!(literal.len(), 1);
    assert_eq!(literal[0].detail["quadratic_on_e2+2e3"], true);

    // Criterion 7: everything computed passes; only the displayed-form notes fail.
    for r in thm_3_5.unwrap() {
        assert!(r.passed(), "{}", r.to_ndjson_line());
        assert!(failing_notes(&r).iter().all(|n| n.ends_with("as displayed")));
    }
}
