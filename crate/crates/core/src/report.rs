//! Pipeline driver and certificates.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gauge::{act_on_solution, exp_star, ham_residual, star_product, HamElement};
use crate::lie::file::{AlgebraSpec, SpecFileError};
use crate::lie::{builtin, cyb, Quasitriangular};
use crate::linearizer::{
    initial_guess, lemma1_residual, solve_g, twisted_r0, SolveResult, TraceRecord, DEFAULT_MAX_DEGREE,
};
use crate::poisson::{equivariance_check, fm_identity_check, pushforward_check, PoissonError};
use crate::rmatrix::{cdybe_residual, derive_cdybe_constant, rho_am, t12_t23};
use crate::scalar::{fmt_q, Q};
use crate::series::{ad_star_diffeo, Monomial, TensorSeries};

pub const FORMAT_VERSION: u32 = 1;
pub const GAUGE_SAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Cyb,
    Cdybe,
    Solve,
    Pushforward,
    Gauge,
    Fm,
    Lemma1,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Cyb,
        Check::Cdybe,
        Check::Solve,
        Check::Pushforward,
        Check::Gauge,
        Check::Fm,
        Check::Lemma1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cyb => "cyb",
            Check::Cdybe => "cdybe",
            Check::Solve => "solve",
            Check::Pushforward => "pushforward",
            Check::Gauge => "gauge",
            Check::Fm => "fm",
            Check::Lemma1 => "lemma1",
        }
    }

    fn needs_solution(self) -> bool {
        !matches!(self, Check::Cyb | Check::Cdybe)
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" | "structured" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown output format `{s}` (expected text or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// builtin name or path to a JSON algebra file
    pub algebra: String,
    pub degree: usize,
    pub nu_values: Vec<Q>,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub output: OutputFormat,
    pub trace: bool,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(algebra: &str, degree: usize) -> Self {
        RunConfig {
            algebra: algebra.to_string(),
            degree,
            nu_values: Vec::new(),
            checks: Check::ALL.to_vec(),
            seed: 0,
            output: OutputFormat::Text,
            trace: false,
            timings: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown algebra `{0}` (builtins: {builtins}; or give a path to a JSON file)", builtins = builtin::NAMES.join(", "))]
    UnknownAlgebra(String),
    #[error(transparent)]
    AlgebraFile(#[from] SpecFileError),
    #[error("degree must be between 1 and {max}, got {degree}")]
    Degree { degree: usize, max: usize },
    #[error("the fm check needs at least one --nu value")]
    MissingNu,
    #[error("no checks requested")]
    NoChecks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    /// residual is asserted zero through this degree
    pub degree: usize,
    pub residual_zero: bool,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl CheckResult {
    fn error(check: String, degree: usize, detail: String) -> Self {
        CheckResult {
            check,
            status: Status::Error,
            degree,
            residual_zero: false,
            witness: None,
            detail: Some(detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub algebra: String,
    pub dim: usize,
    pub degree: usize,
    pub nu: Vec<String>,
    pub checks: Vec<Check>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub version: u32,
    pub config: ConfigEcho,
    pub results: Vec<CheckResult>,
    /// terms of `log g(λ)` from the solver
    pub solution: Option<Vec<String>>,
    pub trace: Option<Vec<TraceRecord>>,
    /// milliseconds per check, only with `--timings`
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "certificate v{} for {} (dim {}), degree {}, seed {}", self.version, c.algebra, c.dim, c.degree, c.seed);
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "pass ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            let _ = write!(out, "  {tag} {:<24} through degree {}", r.check, r.degree);
            if let Some(d) = &r.detail {
                let _ = write!(out, "  [{d}]");
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "        witness {w}");
            }
        }
        if let Some(trace) = &self.trace {
            out.push_str("  solver trace\n");
            for t in trace {
                let _ = writeln!(
                    out,
                    "    degree {}: {} residual terms, corrector rank {}, nullity {}",
                    t.degree, t.residual_terms, t.corrector_rank, t.nullity
                );
            }
        }
        if let Some(sol) = &self.solution {
            let _ = writeln!(out, "  log g: {} terms", sol.len());
        }
        if let Some(times) = &self.timings {
            for (k, v) in times {
                let _ = writeln!(out, "  time {k}: {v:.1} ms");
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "ALL PASS" } else { "FAILED" });
        out
    }
}

pub fn load_algebra(name: &str) -> Result<Quasitriangular, RunError> {
    if let Some(qt) = builtin::by_name(name) {
        return Ok(qt);
    }
    let path = Path::new(name);
    if path.exists() {
        return Ok(AlgebraSpec::load(path)?.build()?);
    }
    Err(RunError::UnknownAlgebra(name.to_string()))
}

/// Homogeneous cubic with coefficients `p/q`, `p ∈ [−3,3]`, `q ∈ {1,2,3}`.
pub fn random_cubic(dim: usize, trunc: usize, rng: &mut ChaCha8Rng) -> TensorSeries {
    let mut f = TensorSeries::zero(dim, 0, trunc);
    for m in Monomial::all_of_degree(dim, 3) {
        let p: i64 = rng.gen_range(-3..=3);
        let d: i64 = [1, 2, 3][rng.gen_range(0..3)];
        f.add_term(Default::default(), m, Q::new(p.into(), d.into()));
    }
    f
}

fn witness(labels: &[String], s: &TensorSeries) -> Option<String> {
    s.render(labels).lines().next().map(str::to_string)
}

fn series_result(check: String, degree: usize, labels: &[String], residual: &TensorSeries) -> CheckResult {
    let zero = residual.is_zero();
    CheckResult {
        check,
        status: if zero { Status::Pass } else { Status::Fail },
        degree,
        residual_zero: zero,
        witness: if zero { None } else { witness(labels, residual) },
        detail: None,
    }
}

/// Folds several residuals into one result; the witness names the first
/// failing case.
struct Fold {
    check: String,
    degree: usize,
    witness: Option<String>,
    error: Option<String>,
}

impl Fold {
    fn new(check: &str, degree: usize) -> Self {
        Fold {
            check: check.to_string(),
            degree,
            witness: None,
            error: None,
        }
    }

    fn add(&mut self, case: &str, labels: &[String], residual: &TensorSeries) {
        if self.witness.is_none() && !residual.is_zero() {
            self.witness = witness(labels, residual).map(|w| format!("{case}: {w}"));
        }
    }

    fn fail(&mut self, case: &str, msg: &str) {
        if self.witness.is_none() {
            self.witness = Some(format!("{case}: {msg}"));
        }
    }

    fn finish(self, detail: Option<String>) -> CheckResult {
        if let Some(e) = self.error {
            return CheckResult::error(self.check, self.degree, e);
        }
        let zero = self.witness.is_none();
        CheckResult {
            check: self.check,
            status: if zero { Status::Pass } else { Status::Fail },
            degree: self.degree,
            residual_zero: zero,
            witness: self.witness,
            detail,
        }
    }
}

struct Context<'a> {
    qt: &'a Quasitriangular,
    n: usize,
    seed: u64,
    nu: &'a [Q],
    labels: Vec<String>,
    solution: Option<&'a Result<SolveResult, String>>,
}

impl Context<'_> {
    fn solved(&self) -> Result<&SolveResult, String> {
        match self.solution {
            Some(Ok(s)) => Ok(s),
            Some(Err(e)) => Err(format!("solver failed: {e}")),
            None => Err("solver was not run".to_string()),
        }
    }

    fn run(&self, check: Check) -> Vec<CheckResult> {
        let n = self.n;
        let name = check.name().to_string();
        let sol = match (check.needs_solution(), self.solved()) {
            (true, Err(e)) => return vec![CheckResult::error(name, n, e)],
            (_, s) => s.ok(),
        };
        match check {
            Check::Cyb => vec![self.cyb()],
            Check::Cdybe => vec![self.cdybe()],
            Check::Solve => vec![self.solve(sol.unwrap())],
            Check::Pushforward => vec![self.pushforward(sol.unwrap())],
            Check::Gauge => self.gauge(sol.unwrap()),
            Check::Fm => self.fm(sol.unwrap()),
            Check::Lemma1 => vec![self.lemma1(sol.unwrap())],
        }
    }

    fn cyb(&self) -> CheckResult {
        let alg = self.qt.algebra();
        let mut bad = cyb(alg, self.qt.r()).first_nonzero().map(|(i, v)| format!("CYB(r) at {i:?}: {}", fmt_q(&v)));
        for a in 0..self.qt.dim() {
            if bad.is_none() {
                bad = self
                    .qt
                    .t()
                    .diagonal_ad(alg, a)
                    .first_nonzero()
                    .map(|(i, v)| format!("ad({}) t at {i:?}: {}", self.labels[a], fmt_q(&v)));
            }
        }
        if bad.is_none() {
            bad = alg.check_jacobi().err().map(|e| e.to_string());
        }
        CheckResult {
            check: "cyb".into(),
            status: if bad.is_none() { Status::Pass } else { Status::Fail },
            degree: 0,
            residual_zero: bad.is_none(),
            witness: bad,
            detail: None,
        }
    }

    fn cdybe(&self) -> CheckResult {
        let n = self.n;
        let deg = n.saturating_sub(1);
        let c = match derive_cdybe_constant(self.qt) {
            Ok(c) => c,
            Err(e) => return CheckResult::error("cdybe".into(), deg, e.to_string()),
        };
        let z = match &c {
            Some(c) => t12_t23(self.qt).scale(c),
            None => t12_t23(self.qt),
        };
        let rho = rho_am(self.qt, n);
        let res = cdybe_residual(self.qt.algebra(), rho.value(), &z).truncated(deg);
        let mut out = series_result("cdybe".into(), deg, &self.labels, &res);
        out.detail = Some(match c {
            Some(c) => format!("c = {}", fmt_q(&c)),
            None => "[t12,t23] = 0".to_string(),
        });
        out
    }

    fn solve(&self, s: &SolveResult) -> CheckResult {
        let mut out = series_result("solve".into(), self.n, &self.labels, &s.residual.clone().truncated(self.n));
        let low = s.g.log().up_to_degree(1).truncated(1);
        if low != *initial_guess(self.qt, 1).log() {
            out.status = Status::Fail;
            out.detail = Some("degree ≤ 1 part of log g is not −r/2".into());
        }
        out
    }

    fn pushforward(&self, s: &SolveResult) -> CheckResult {
        let deg = self.n.saturating_sub(1);
        if !self.qt.is_factorizable() {
            return CheckResult::error("pushforward".into(), deg, PoissonError::NotFactorizable.to_string());
        }
        let table = pushforward_check(self.qt, &s.g, self.n);
        let mut fold = Fold::new("pushforward", deg);
        for e in &table.entries {
            let case = format!("({}, {})", self.labels[e.xi], self.labels[e.eta]);
            fold.add(&case, &self.labels, &e.value);
        }
        fold.finish(Some(format!("{} pairs", table.entries.len())))
    }

    fn gauge(&self, s: &SolveResult) -> Vec<CheckResult> {
        let qt = self.qt;
        let alg = qt.algebra();
        let n = self.n;
        let trunc = s.g.trunc();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let fields: Vec<TensorSeries> = (0..GAUGE_SAMPLES)
            .map(|_| random_cubic(qt.dim(), trunc + 1, &mut rng).differential())
            .collect();
        let elems: Vec<Result<HamElement, String>> = fields
            .par_iter()
            .map(|v| exp_star(alg, v).map_err(|e| e.to_string()))
            .collect();
        let mut ham = Fold::new("gauge.hamiltonian", trunc);
        let mut stable = Fold::new("gauge.stability", n);
        let mut equiv = Fold::new("gauge.equivariance", n);
        let mut theta = Fold::new("gauge.theta", trunc);
        let target = rho_am(qt, n);
        let mut ok = Vec::new();
        for (k, e) in elems.iter().enumerate() {
            let case = format!("sample {k}");
            let a = match e {
                Ok(a) => a,
                Err(msg) => {
                    for f in [&mut ham, &mut stable, &mut equiv, &mut theta] {
                        f.error.get_or_insert_with(|| msg.clone());
                    }
                    continue;
                }
            };
            ham.add(&case, &self.labels, &ham_residual(alg, a.group_map()));
            if !a.is_certified() {
                ham.fail(&case, "not certified");
            }
            match act_on_solution(alg, a, &s.g) {
                Ok(moved) => {
                    let res = twisted_r0(qt, &moved).value().sub(target.value()).truncated(n);
                    stable.add(&case, &self.labels, &res);
                }
                Err(err) => stable.fail(&case, &err.to_string()),
            }
            if qt.is_factorizable() {
                match equivariance_check(qt, a, &s.g) {
                    Ok(res) => equiv.add(&case, &self.labels, &res.truncated(n)),
                    Err(err) => equiv.fail(&case, &err.to_string()),
                }
            }
            ok.push(a.group_map().clone());
        }
        for (k, pair) in ok.windows(2).enumerate() {
            let lhs = ad_star_diffeo(alg, &star_product(alg, &pair[0], &pair[1]));
            let rhs = ad_star_diffeo(alg, &pair[1]).compose(&ad_star_diffeo(alg, &pair[0]));
            let res = lhs.to_vector_series().sub(&rhs.to_vector_series());
            theta.add(&format!("samples {k},{}", k + 1), &self.labels, &res);
        }
        let samples = Some(format!("{GAUGE_SAMPLES} samples"));
        let equiv_detail = if qt.is_factorizable() {
            samples.clone()
        } else {
            Some("skipped: t is degenerate".to_string())
        };
        vec![
            ham.finish(samples.clone()),
            stable.finish(samples.clone()),
            equiv.finish(equiv_detail),
            theta.finish(samples),
        ]
    }

    fn fm(&self, s: &SolveResult) -> Vec<CheckResult> {
        self.nu
            .par_iter()
            .map(|nu| {
                let name = format!("fm[nu={}]", fmt_q(nu));
                match fm_identity_check(self.qt, &s.g, nu) {
                    Ok(res) => series_result(name, self.n, &self.labels, &res.truncated(self.n)),
                    Err(e) => CheckResult::error(name, self.n, e.to_string()),
                }
            })
            .collect()
    }

    fn lemma1(&self, s: &SolveResult) -> CheckResult {
        let am = rho_am(self.qt, self.n);
        let mut fold = Fold::new("lemma1", self.n.saturating_sub(1));
        let mut count = 0;
        for (g, k) in s.states.iter().filter(|(_, k)| k + 2 <= self.n) {
            let alpha = twisted_r0(self.qt, g).value().sub(am.value());
            let case = format!("degree {}", k + 1);
            match lemma1_residual(self.qt, g, am.value(), &alpha, k + 1) {
                Ok(res) => fold.add(&case, &self.labels, &res),
                Err(e) => fold.fail(&case, &e.to_string()),
            }
            count += 1;
        }
        fold.finish(Some(format!("{count} witnesses")))
    }
}

/// Runs the requested checks; the result depends only on the config.
pub fn run(config: &RunConfig) -> Result<Certificate, RunError> {
    if config.degree == 0 || config.degree > DEFAULT_MAX_DEGREE {
        return Err(RunError::Degree {
            degree: config.degree,
            max: DEFAULT_MAX_DEGREE,
        });
    }
    if config.checks.is_empty() {
        return Err(RunError::NoChecks);
    }
    let mut checks = config.checks.clone();
    checks.sort();
    checks.dedup();
    if checks.contains(&Check::Fm) && config.nu_values.is_empty() {
        return Err(RunError::MissingNu);
    }
    let qt = load_algebra(&config.algebra)?;
    let n = config.degree;

    let mut timings = BTreeMap::new();
    let solution = if checks.iter().any(|c| c.needs_solution()) {
        let start = Instant::now();
        let s = solve_g(&qt, n).map_err(|e| e.to_string());
        timings.insert("solver".to_string(), start.elapsed().as_secs_f64() * 1e3);
        Some(s)
    } else {
        None
    };
    let ctx = Context {
        qt: &qt,
        n,
        seed: config.seed,
        nu: &config.nu_values,
        labels: qt.algebra().labels().to_vec(),
        solution: solution.as_ref(),
    };
    let runs: Vec<(Check, Vec<CheckResult>, f64)> = checks
        .par_iter()
        .map(|&c| {
            let start = Instant::now();
            let r = ctx.run(c);
            (c, r, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut results = Vec::new();
    for (c, r, ms) in runs {
        timings.insert(c.name().to_string(), ms);
        results.extend(r);
    }
    results.sort_by(|a, b| a.check.cmp(&b.check));

    let solved = match &solution {
        Some(Ok(s)) => Some(s),
        _ => None,
    };
    Ok(Certificate {
        version: FORMAT_VERSION,
        config: ConfigEcho {
            algebra: config.algebra.clone(),
            dim: qt.dim(),
            degree: n,
            nu: config.nu_values.iter().map(fmt_q).collect(),
            checks,
            seed: config.seed,
        },
        results,
        solution: solved.map(|s| s.g.log().render(qt.algebra().labels()).lines().map(str::to_string).collect()),
        trace: if config.trace { solved.map(|s| s.trace.clone()) } else { None },
        timings: config.timings.then_some(timings),
    })
}
