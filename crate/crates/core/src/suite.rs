//! The named verification checks and their default parameter grids.
//!
//! A check expands into independent jobs; `run_jobs` executes them on a
//! bounded pool and returns outcomes in job order.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::cartan::{AffineFamily, FiniteType, ALL_FAMILIES};
use crate::config::RunConfig;
use crate::liealg::{build_algebra, AlgebraKind, LieError};
use crate::report::{Status, VerificationReport};
use crate::rootsys::{enumerate_real_roots_with, EnumerateOptions, RootError, RootVector};
use crate::steinberg::{verify_commutator_identities, verify_naturality, SteinbergError};
use crate::tower::{
    build_tower_map, verify_lemma_3_1, verify_lemma_3_2, verify_structure_transport, verify_thm_1_2_conditions,
    verify_thm_3_5, verify_tower_invariants, MatrixEmbedding, TowerError,
};
use crate::weyl::{verify_wbar_presentation, wbar_candidates};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Check {
    Serre,
    Lemma28,
    Lemma31,
    Lemma32,
    Lemma33,
    Thm35,
    Thm12,
    Wbar,
    Tower,
    Naturality,
    All,
}

/// Canonical order used by `all`.
pub const CHECK_ORDER: [Check; 10] = [
    Check::Serre,
    Check::Lemma28,
    Check::Lemma31,
    Check::Lemma32,
    Check::Lemma33,
    Check::Thm35,
    Check::Thm12,
    Check::Wbar,
    Check::Tower,
    Check::Naturality,
];

impl Check {
    pub fn id(self) -> &'static str {
        match self {
            Check::Serre => "serre",
            Check::Lemma28 => "lemma-2.8",
            Check::Lemma31 => "lemma-3.1",
            Check::Lemma32 => "lemma-3.2",
            Check::Lemma33 => "lemma-3.3",
            Check::Thm35 => "thm-3.5",
            Check::Thm12 => "thm-1.2",
            Check::Wbar => "wbar",
            Check::Tower => "tower",
            Check::Naturality => "naturality",
            Check::All => "all",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CHECK_ORDER
            .iter()
            .chain(&[Check::All])
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| SuiteError::Usage(format!("unknown check {s}")))
    }
}

/// Parameter grid size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// The full grids.
    #[default]
    Desk,
    /// Smallest ranks only.
    Quick,
}

/// Optional overrides; `None` selects the profile's grid.
#[derive(Debug, Clone, Default)]
pub struct CheckParams {
    pub family: Option<AffineFamily>,
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub height: Option<u32>,
    pub depth: Option<usize>,
    pub max_mn: Option<usize>,
    pub pairs: Option<usize>,
    pub profile: Profile,
}

#[derive(Debug, Clone, Error)]
pub enum SuiteError {
    #[error("{0}")]
    Usage(String),
    #[error("resource cap: {0}")]
    Cap(String),
    #[error("{0}")]
    Failed(String),
}

impl From<TowerError> for SuiteError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::ResourceCap(..) | TowerError::Root(RootError::ResourceLimit(_)) => SuiteError::Cap(e.to_string()),
            TowerError::Cartan(_) | TowerError::EmptyBlock => SuiteError::Usage(e.to_string()),
            TowerError::Lie(l) => l.into(),
            TowerError::Steinberg(s) => s.into(),
            other => SuiteError::Failed(other.to_string()),
        }
    }
}

impl From<LieError> for SuiteError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::Unsupported(_) | LieError::RankTooSmall(_) => SuiteError::Usage(e.to_string()),
            other => SuiteError::Failed(other.to_string()),
        }
    }
}

impl From<SteinbergError> for SuiteError {
    fn from(e: SteinbergError) -> Self {
        SuiteError::Failed(e.to_string())
    }
}

impl From<RootError> for SuiteError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::ResourceLimit(_) => SuiteError::Cap(e.to_string()),
            other => SuiteError::Failed(other.to_string()),
        }
    }
}

type JobFn = Box<dyn Fn(&RunConfig) -> Result<VerificationReport, SuiteError> + Send + Sync>;

pub struct Job {
    pub check: Check,
    pub label: String,
    run: JobFn,
}

impl Job {
    fn new(
        check: Check,
        label: impl Into<String>,
        f: impl Fn(&RunConfig) -> Result<VerificationReport, SuiteError> + Send + Sync + 'static,
    ) -> Job {
        Job { check, label: label.into(), run: Box::new(f) }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub check: Check,
    pub label: String,
    pub result: Result<VerificationReport, SuiteError>,
}

impl Outcome {
    /// The report, or a failing report carrying the error for non-cap errors.
    pub fn report(&self) -> VerificationReport {
        match &self.result {
            Ok(r) => r.clone(),
            Err(e) => {
                let mut r = VerificationReport::new(self.check.id(), &self.label);
                let status = match e {
                    SuiteError::Cap(_) => Status::Unknown,
                    _ => Status::Fail,
                };
                r.push("error", status, e.to_string());
                r
            }
        }
    }
}

/// Exit status for a batch: 3 on any resource cap, else 2 on a usage error,
/// else 1 on any failing report, else 0.
pub fn exit_code(outcomes: &[Outcome]) -> i32 {
    let any = |p: &dyn Fn(&Result<VerificationReport, SuiteError>) -> bool| outcomes.iter().any(|o| p(&o.result));
    if any(&|r| matches!(r, Err(SuiteError::Cap(_)))) {
        3
    } else if any(&|r| matches!(r, Err(SuiteError::Usage(_)))) {
        2
    } else if any(&|r| match r {
        Ok(rep) => rep.status == Status::Fail,
        Err(_) => true,
    }) {
        1
    } else {
        0
    }
}

fn matrix_guard(kind: AlgebraKind, cfg: &RunConfig) -> Result<(), SuiteError> {
    if kind.matrix_size() > cfg.max_matrix_size {
        return Err(SuiteError::Cap(format!(
            "{} needs {}x{} matrices, cap is {}",
            kind.label(),
            kind.matrix_size(),
            kind.matrix_size(),
            cfg.max_matrix_size
        )));
    }
    Ok(())
}

fn family_guard(family: AffineFamily, l: usize, cfg: &RunConfig) -> Result<(), SuiteError> {
    matrix_guard(AlgebraKind::from_family(family, l)?, cfg)?;
    matrix_guard(AlgebraKind::from_family(family, l + 1)?, cfg)
}

/// Families with a matrix realization of the tower map.
const MATRIX_FAMILIES: [AffineFamily; 2] = [AffineFamily::A2odd, AffineFamily::A1t];

fn families(p: &CheckParams) -> Vec<AffineFamily> {
    p.family.map(|f| vec![f]).unwrap_or_else(|| MATRIX_FAMILIES.to_vec())
}

fn ranks(p: &CheckParams, desk: std::ops::RangeInclusive<usize>, quick: usize) -> Vec<usize> {
    match (p.l, p.profile) {
        (Some(l), _) => vec![l],
        (None, Profile::Desk) => desk.collect(),
        (None, Profile::Quick) => vec![quick],
    }
}

/// Positive roots supported on `nodes`.
fn positive_span(family: AffineFamily, l: usize, nodes: &[usize], cfg: &RunConfig) -> Result<Vec<RootVector>, SuiteError> {
    let map = build_tower_map(family, l)?;
    let opts = EnumerateOptions { max_roots: cfg.max_roots, ..Default::default() };
    let set = enumerate_real_roots_with(map.source(), 6, opts)?;
    let mut out: Vec<RootVector> = set
        .positive()
        .into_iter()
        .filter(|r| r.0.iter().enumerate().all(|(i, &c)| c == 0 || nodes.contains(&i)))
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}

fn expand(check: Check, p: &CheckParams) -> Result<Vec<Job>, SuiteError> {
    let mut jobs = Vec::new();
    match check {
        Check::Serre => {
            let kinds: Vec<AlgebraKind> = match (p.family, p.l) {
                (Some(f), Some(l)) => vec![AlgebraKind::from_family(f, l)?],
                (Some(_), None) | (None, Some(_)) => {
                    return Err(SuiteError::Usage("serre needs both --family and --l, or neither".into()))
                }
                (None, None) => {
                    let (u, t) = match p.profile {
                        Profile::Desk => (2..=5, 3..=5),
                        Profile::Quick => (2..=2, 3..=3),
                    };
                    [FiniteType::A2, FiniteType::B3, FiniteType::C3]
                        .into_iter()
                        .map(AlgebraKind::Finite)
                        .chain(u.map(AlgebraKind::Untwisted))
                        .chain(t.map(AlgebraKind::Twisted))
                        .collect()
                }
            };
            for kind in kinds {
                jobs.push(Job::new(check, kind.label(), move |cfg| {
                    matrix_guard(kind, cfg)?;
                    Ok(build_algebra(kind)?.verify_defining_relations())
                }));
            }
        }
        Check::Lemma28 => jobs.push(Job::new(check, "A2 and C3", |_| Ok(verify_commutator_identities()?))),
        Check::Lemma31 => {
            for family in families(p) {
                for l in ranks(p, 3..=5, 3) {
                    jobs.push(Job::new(check, format!("{family} l={l}"), move |cfg| {
                        family_guard(family, l, cfg)?;
                        Ok(verify_lemma_3_1(family, l)?)
                    }));
                }
            }
        }
        Check::Lemma32 => {
            let height = p.height.unwrap_or(8);
            for family in families(p) {
                for l in ranks(p, 3..=4, 3) {
                    jobs.push(Job::new(check, format!("{family} l={l}"), move |cfg| {
                        family_guard(family, l, cfg)?;
                        Ok(verify_lemma_3_2(family, l, height)?)
                    }));
                }
            }
        }
        Check::Lemma33 => {
            let depth = p.depth;
            for family in families(p) {
                for l in ranks(p, 3..=4, 3) {
                    for nodes in [[l - 1, l], [l - 2, l - 1]] {
                        jobs.push(Job::new(check, format!("{family} l={l} span {nodes:?}"), move |cfg| {
                            family_guard(family, l, cfg)?;
                            let theta = positive_span(family, l, &nodes, cfg)?;
                            let emb = MatrixEmbedding::new(family, l)?;
                            Ok(verify_structure_transport(&emb, &theta, depth.unwrap_or(cfg.search_depth))?)
                        }));
                    }
                }
            }
        }
        Check::Thm35 => {
            let grid: Vec<(usize, usize)> = match (p.m, p.n, p.profile) {
                (Some(m), Some(n), _) => vec![(m, n)],
                (None, None, Profile::Desk) => vec![(1, 1), (1, 2), (2, 1), (2, 2)],
                (None, None, Profile::Quick) => vec![(1, 1)],
                _ => return Err(SuiteError::Usage("thm-3.5 needs both --m and --n, or neither".into())),
            };
            let depth = p.depth;
            for (m, n) in grid {
                jobs.push(Job::new(check, format!("(m,n)=({m},{n})"), move |cfg| {
                    if m + n <= crate::tower::MAX_BLOCK_SUM {
                        matrix_guard(AlgebraKind::Twisted(2 * (m + n)), cfg)?;
                    }
                    Ok(verify_thm_3_5(m, n, depth.unwrap_or(2 * cfg.search_depth))?)
                }));
            }
        }
        Check::Thm12 => {
            let max_mn = p.max_mn.unwrap_or(6);
            jobs.push(Job::new(check, format!("max_mn={max_mn}"), move |_| Ok(verify_thm_1_2_conditions(max_mn)?)));
        }
        Check::Wbar => {
            for l in ranks(p, 2..=8, 4) {
                if l < 2 {
                    return Err(SuiteError::Usage("wbar needs l >= 2".into()));
                }
                jobs.push(Job::new(check, format!("l={l}"), move |_| Ok(verify_wbar_presentation(l, &wbar_candidates(l)))));
            }
        }
        Check::Tower => {
            let fams = p.family.map(|f| vec![f]).unwrap_or_else(|| ALL_FAMILIES.to_vec());
            let height = p.height.unwrap_or(8);
            for family in fams {
                let ls: Vec<usize> = match (p.l, p.profile) {
                    (Some(l), _) => vec![l],
                    (None, Profile::Desk) => (family.min_rank()..=6).collect(),
                    (None, Profile::Quick) => vec![family.min_rank()],
                };
                for l in ls {
                    jobs.push(Job::new(check, format!("{family} l={l}"), move |cfg| {
                        Ok(verify_tower_invariants(family, l, 6, height, cfg.seed)?)
                    }));
                }
            }
        }
        Check::Naturality => {
            let pairs = p.pairs.unwrap_or(200);
            jobs.push(Job::new(check, format!("{pairs} pairs"), move |cfg| Ok(verify_naturality(cfg.seed, pairs)?)));
        }
        Check::All => {
            for c in CHECK_ORDER {
                jobs.extend(expand(c, p)?);
            }
        }
    }
    Ok(jobs)
}

/// Expands a check into jobs. Explicit parameters only apply to single checks.
pub fn jobs(check: Check, params: &CheckParams) -> Result<Vec<Job>, SuiteError> {
    expand(check, params)
}

fn run_one(job: &Job, cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    let result = (job.run)(cfg).map(|mut r| {
        r.set_param("config", cfg.echo());
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        r
    });
    Outcome { check: job.check, label: job.label.clone(), result }
}

/// Runs jobs on up to `cfg.parallelism` threads; outcomes keep job order.
pub fn run_jobs(jobs: &[Job], cfg: &RunConfig) -> Vec<Outcome> {
    let slots: Vec<Mutex<Option<Outcome>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.parallelism.clamp(1, jobs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                *slots[i].lock().expect("slot") = Some(run_one(job, cfg));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot").expect("job ran")).collect()
}

/// Summary line used by the CLI on stderr.
pub fn summary(outcomes: &[Outcome]) -> serde_json::Value {
    let count = |s: Status| outcomes.iter().filter(|o| o.report().status == s).count();
    json!({
        "jobs": outcomes.len(),
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "unknown": count(Status::Unknown),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CheckParams {
        CheckParams { profile: Profile::Quick, ..Default::default() }
    }

    #[test]
    fn ids_round_trip() {
        for c in CHECK_ORDER {
            assert_eq!(c.id().parse::<Check>().unwrap(), c);
        }
        assert!("lemma-9.9".parse::<Check>().is_err());
    }

    #[test]
    fn order_is_canonical() {
        let cfg = RunConfig { parallelism: 4, ..Default::default() };
        let js = jobs(Check::Wbar, &quick()).unwrap();
        let a = run_jobs(&js, &cfg);
        let js = jobs(Check::Lemma28, &quick()).unwrap();
        let b = run_jobs(&js, &cfg);
        assert_eq!(exit_code(&a), 0);
        assert_eq!(exit_code(&b), 0);
        let lines = |o: &[Outcome]| o.iter().map(|x| x.check.id()).collect::<Vec<_>>();
        assert_eq!(lines(&a), vec!["wbar"]);
    }

    #[test]
    fn caps_and_usage() {
        let cfg = RunConfig::default();
        let p = CheckParams { m: Some(9), n: Some(9), ..Default::default() };
        assert_eq!(exit_code(&run_jobs(&jobs(Check::Thm35, &p).unwrap(), &cfg)), 3);
        let small = RunConfig { max_matrix_size: 4, ..Default::default() };
        let p = CheckParams { family: Some(AffineFamily::A1t), l: Some(5), ..Default::default() };
        assert_eq!(exit_code(&run_jobs(&jobs(Check::Serre, &p).unwrap(), &small)), 3);
        let p = CheckParams { family: Some(AffineFamily::B1t), l: Some(3), ..Default::default() };
        assert_eq!(exit_code(&run_jobs(&jobs(Check::Lemma31, &p).unwrap(), &cfg)), 2);
    }
}
