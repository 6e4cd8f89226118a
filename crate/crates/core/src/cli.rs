//! `kmtower` command line: GCM files, root enumeration, single commutators
//! and the verification suites. Reports are written as NDJSON.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cartan::{affinity_check, classify_affine, AffineFamily, AffineType, CartanError, FiniteType, Gcm};
use crate::config::{load_config, RunConfig};
use crate::report::{Status, VerificationReport};
use crate::rootsys::{enumerate_real_roots_with, EnumerateOptions, RootError, RootVector};
use crate::scalars::Ring;
use crate::steinberg::positive_context;
use crate::suite::{exit_code, jobs, run_jobs, summary, Check, CheckParams, Profile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kmtower", version, about = "Exact Kac-Moody root, Steinberg and tower computations")]
pub struct Cli {
    /// TOML run configuration (falls back to $KMTOWER_CONFIG, then defaults).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generalized Cartan matrix files.
    Gcm {
        #[command(subcommand)]
        action: GcmAction,
    },
    /// Real root enumeration.
    Roots {
        #[command(subcommand)]
        action: RootsAction,
    },
    /// One commutator [x_a(r), x_b(rp)] in a finite type.
    Commutator(CommutatorArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum GcmAction {
    Validate { file: PathBuf },
    Classify { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum RootsAction {
    Enumerate {
        #[arg(long)]
        family: AffineFamily,
        #[arg(long)]
        l: usize,
        /// Height bound; defaults to the configured one.
        #[arg(long)]
        height: Option<u32>,
    },
}

#[derive(Debug, Args)]
struct CommutatorArgs {
    #[arg(long = "type")]
    ty: FiniteType,
    /// Ring spec such as `int`, `zmod:5` or `poly:Q:r,s`.
    #[arg(long)]
    ring: String,
    /// Positive root as comma-separated simple-root coordinates.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    #[arg(long, allow_hyphen_values = true)]
    rp: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Serre,
    #[value(name = "lemma-2.8")]
    Lemma28,
    #[value(name = "lemma-3.1")]
    Lemma31,
    #[value(name = "lemma-3.2")]
    Lemma32,
    #[value(name = "lemma-3.3")]
    Lemma33,
    #[value(name = "thm-3.5")]
    Thm35,
    #[value(name = "thm-1.2")]
    Thm12,
    Wbar,
    Tower,
    Naturality,
    All,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Check {
        match c {
            CheckArg::Serre => Check::Serre,
            CheckArg::Lemma28 => Check::Lemma28,
            CheckArg::Lemma31 => Check::Lemma31,
            CheckArg::Lemma32 => Check::Lemma32,
            CheckArg::Lemma33 => Check::Lemma33,
            CheckArg::Thm35 => Check::Thm35,
            CheckArg::Thm12 => Check::Thm12,
            CheckArg::Wbar => Check::Wbar,
            CheckArg::Tower => Check::Tower,
            CheckArg::Naturality => Check::Naturality,
            CheckArg::All => Check::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Desk,
    Quick,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    check: CheckArg,
    #[arg(long)]
    family: Option<AffineFamily>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    height: Option<u32>,
    /// Search depth for prenilpotency witnesses.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    max_mn: Option<usize>,
    /// Random word pairs for the naturality check.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long, value_enum, default_value = "desk")]
    profile: ProfileArg,
}

/// Why a command stopped before producing its normal output.
struct Halt(i32, String);

impl From<CartanError> for Halt {
    fn from(e: CartanError) -> Self {
        Halt(EXIT_USAGE, e.to_string())
    }
}

impl From<RootError> for Halt {
    fn from(e: RootError) -> Self {
        match e {
            RootError::ResourceLimit(_) => Halt(EXIT_CAP, e.to_string()),
            other => Halt(EXIT_USAGE, other.to_string()),
        }
    }
}

/// Parses `argv`, runs the command and returns the exit code. Output goes to
/// `stdout` unless `--out` is given; diagnostics go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut cfg = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let mut buf = Vec::new();
    let code = match dispatch(&cli.command, &cfg, &mut buf, stderr) {
        Ok(code) => code,
        Err(Halt(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &buf).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(&buf).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut Vec<u8>, stderr: &mut dyn Write) -> Result<i32, Halt> {
    match cmd {
        Command::Gcm { action } => gcm_command(action, out),
        Command::Roots { action: RootsAction::Enumerate { family, l, height } } => {
            let gcm = crate::cartan::affine_gcm(AffineType::new(*family, *l)?)?;
            let opts = EnumerateOptions { max_roots: cfg.max_roots, ..Default::default() };
            let set = enumerate_real_roots_with(&gcm, height.unwrap_or(cfg.height_bound), opts)?;
            writeln!(out, "{}", set.to_json(&family.display_name(*l))).expect("buffer");
            Ok(EXIT_OK)
        }
        Command::Commutator(args) => commutator_command(args, out),
        Command::Verify(args) => {
            let params = CheckParams {
                family: args.family,
                l: args.l,
                m: args.m,
                n: args.n,
                height: args.height,
                depth: args.depth,
                max_mn: args.max_mn,
                pairs: args.pairs,
                profile: match args.profile {
                    ProfileArg::Desk => Profile::Desk,
                    ProfileArg::Quick => Profile::Quick,
                },
            };
            let jobs = jobs(args.check.into(), &params).map_err(|e| Halt(EXIT_USAGE, e.to_string()))?;
            let outcomes = run_jobs(&jobs, cfg);
            for o in &outcomes {
                writeln!(out, "{}", o.report().to_ndjson_line()).expect("buffer");
            }
            let _ = writeln!(stderr, "{}", summary(&outcomes));
            Ok(exit_code(&outcomes))
        }
    }
}

fn read_gcm(path: &Path) -> Result<Result<Gcm, CartanError>, Halt> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Halt(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    match Gcm::from_json(&text) {
        Err(CartanError::Json(msg)) => Err(Halt(EXIT_USAGE, format!("{}: {msg}", path.display()))),
        other => Ok(other),
    }
}

fn gcm_command(action: &GcmAction, out: &mut Vec<u8>) -> Result<i32, Halt> {
    let (report, code) = match action {
        GcmAction::Validate { file } => {
            let mut report =
                VerificationReport::new("gcm-validate", "generalized Cartan matrix axioms").param("file", file);
            match read_gcm(file)? {
                Ok(g) => report.check("valid", true, json!({"size": g.size(), "matrix": g.entries()})),
                Err(e) => report.check("valid", false, e.to_string()),
            }
            let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
            (report, code)
        }
        GcmAction::Classify { file } => {
            let mut report =
                VerificationReport::new("gcm-classify", "membership in the seven affine families").param("file", file);
            let g = read_gcm(file)?.map_err(|e| Halt(EXIT_FAIL, e.to_string()))?;
            let affine = affinity_check(&g)?;
            match classify_affine(&g) {
                Ok(c) => report.push(
                    "classification",
                    Status::Pass,
                    json!({"family": c.ty.family, "l": c.ty.l, "name": c.ty.family.display_name(c.ty.l), "perm": c.perm, "affine": affine}),
                ),
                Err(CartanError::NotInFamilies) => {
                    report.push("classification", Status::Pass, json!({"result": "NotInFamilies", "affine": affine}))
                }
                Err(e) => return Err(e.into()),
            }
            // A query, not an assertion: a matrix outside the families exits 0.
            (report, EXIT_OK)
        }
    };
    writeln!(out, "{}", report.to_ndjson_line()).expect("buffer");
    Ok(code)
}

fn parse_root(s: &str) -> Result<RootVector, Halt> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(RootVector)
        .map_err(|_| Halt(EXIT_USAGE, format!("bad root {s:?}: expected comma-separated integers")))
}

fn commutator_command(args: &CommutatorArgs, out: &mut Vec<u8>) -> Result<i32, Halt> {
    let usage = |e: &dyn std::fmt::Display| Halt(EXIT_USAGE, e.to_string());
    let ring = Ring::parse(&args.ring).map_err(|e| usage(&e))?;
    let (a, b) = (parse_root(&args.a)?, parse_root(&args.b)?);
    let r = ring.parse_value(&args.r).map_err(|e| usage(&e))?;
    let rp = ring.parse_value(&args.rp).map_err(|e| usage(&e))?;
    let ctx = positive_context(args.ty).map_err(|e| usage(&e))?;
    let w = ctx.commutator(&a, &r, &b, &rp).map_err(|e| usage(&e))?;
    let line = json!({
        "type": args.ty.tag(),
        "ring": ring.to_string(),
        "a": a,
        "b": b,
        "r": r.to_string(),
        "rp": rp.to_string(),
        "commutator": w.to_json(),
    });
    writeln!(out, "{line}").expect("buffer");
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut argv = vec!["kmtower"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["verify", "lemma-9.9"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--config", "/nonexistent.toml", "verify", "wbar"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn commutator_a2() {
        let (code, out, _) = run_str(&["commutator", "--type", "A2", "--ring", "poly:Q:r", "--a", "1,0", "--b", "0,1", "--r", "1", "--rp", "r"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["commutator"]["factors"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn cap_exit() {
        assert_eq!(run_str(&["verify", "thm-3.5", "--m", "9", "--n", "9"]).0, EXIT_CAP);
    }
}
