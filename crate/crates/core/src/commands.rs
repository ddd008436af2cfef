//! Problem manifests and the command implementations behind the binary.
//!
//! Exit codes: 0 success, 1 parse error, 2 hypothesis failure, 3 budget or
//! partial result, 4 certificate failure.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::appendix::{construct_h, WitnessSummary};
use crate::error::Error;
use crate::foliation::{check_commute, default_jet_order, FoliationContext, VectorField};
use crate::ideal::{Budget, IdealPresentation};
use crate::pairs::{nonisolated_bound, BoundReport, FinalStatus, PairConfig, TRACE_VERSION};
use crate::poly::{format_q, parse_q, Polynomial, Ring, Q};
use crate::verify::{run_suite, verify_trace, SuiteReport, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CommandError { code: EXIT_PARSE, message: msg.into() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Poly(_) => EXIT_PARSE,
        Error::Hypothesis(_) | Error::Containment { .. } => EXIT_HYPOTHESIS,
        Error::Budget { .. } | Error::Inconclusive { .. } | Error::Unsupported(_) => EXIT_BUDGET,
        Error::Certificate(_) => EXIT_CERTIFICATE,
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError { code: exit_code(&e), message: e.to_string() }
    }
}

type CmdResult<T> = std::result::Result<T, CommandError>;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub seed: Option<u64>,
    pub jet_order: Option<u32>,
    pub max_order: Option<u32>,
    /// S-pair cap per Groebner basis.
    pub budget: Option<usize>,
    pub exponent_cap: Option<u32>,
    pub transverse_tries: Option<u32>,
    pub trace: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub variables: Vec<String>,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub point: Vec<String>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    /// Generators of the ideal for the appendix command.
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
    #[serde(default)]
    pub options: Options,
}

/// Command-line values that take precedence over the manifest options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub jet_order: Option<u32>,
    pub budget: Option<usize>,
    pub trace: Option<PathBuf>,
}

impl Manifest {
    pub fn from_str_as(src: &str, toml_syntax: bool) -> CmdResult<Manifest> {
        if toml_syntax {
            toml::from_str(src).map_err(|e| CommandError::parse(format!("manifest: {}", e)))
        } else {
            serde_json::from_str(src).map_err(|e| CommandError::parse(format!("manifest: {}", e)))
        }
    }

    /// JSON, or TOML when the extension is `.toml`.
    pub fn load(path: &Path) -> CmdResult<Manifest> {
        let src = std::fs::read_to_string(path).map_err(|e| CommandError::parse(format!("{}: {}", path.display(), e)))?;
        Self::from_str_as(&src, path.extension().is_some_and(|e| e == "toml"))
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.variables.iter().cloned())
    }

    fn fields(&self) -> CmdResult<(VectorField, VectorField, Vec<Q>)> {
        let r = self.ring();
        let n = r.len();
        for (name, v) in [("v1", &self.v1), ("v2", &self.v2), ("point", &self.point)] {
            if v.len() != n {
                return Err(CommandError::parse(format!("{} has {} entries for {} variables", name, v.len(), n)));
            }
        }
        let v1 = VectorField::parse(&r, &self.v1.iter().map(String::as_str).collect::<Vec<_>>())?;
        let v2 = VectorField::parse(&r, &self.v2.iter().map(String::as_str).collect::<Vec<_>>())?;
        let p = self.point.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>().map_err(Error::from)?;
        Ok((v1, v2, p))
    }

    pub fn context(&self) -> CmdResult<Arc<FoliationContext>> {
        let (v1, v2, p) = self.fields()?;
        Ok(FoliationContext::new(v1, v2, p)?)
    }

    fn poly(&self, name: &str, src: &Option<String>) -> CmdResult<Polynomial> {
        let s = src.as_ref().ok_or_else(|| CommandError::parse(format!("manifest has no {}", name)))?;
        Ok(Polynomial::parse(&self.ring(), s).map_err(Error::from)?)
    }

    pub fn f(&self) -> CmdResult<Polynomial> {
        self.poly("f", &self.f)
    }

    pub fn g(&self) -> CmdResult<Polynomial> {
        self.poly("g", &self.g)
    }

    pub fn ideal(&self) -> CmdResult<IdealPresentation> {
        let gens = self.ideal.as_ref().ok_or_else(|| CommandError::parse("manifest has no ideal"))?;
        let r = self.ring();
        let ps = gens.iter().map(|s| Polynomial::parse(&r, s)).collect::<Result<Vec<_>, _>>().map_err(Error::from)?;
        Ok(IdealPresentation::new(&r, ps)?)
    }

    pub fn config(&self, o: &Overrides) -> CmdResult<PairConfig> {
        let mut cfg = PairConfig::default();
        let order = match o.jet_order.or(self.options.jet_order) {
            Some(n) => n,
            None => match (&self.f, &self.g) {
                (Some(_), Some(_)) => default_jet_order(&self.f()?, &self.g()?),
                _ => cfg.order,
            },
        };
        cfg.order = order;
        cfg.max_order = self.options.max_order.unwrap_or((4 * order).max(cfg.max_order));
        cfg.seed = o.seed.or(self.options.seed).unwrap_or(0);
        let mut b = Budget::default();
        if let Some(p) = o.budget.or(self.options.budget) {
            b.max_pairs = p;
        }
        if let Some(c) = self.options.exponent_cap {
            b.exponent_cap = c;
        }
        cfg.budget = b;
        if let Some(t) = self.options.transverse_tries {
            cfg.transverse_tries = t;
        }
        Ok(cfg)
    }

    pub fn trace_path(&self, o: &Overrides) -> Option<PathBuf> {
        o.trace.clone().or_else(|| self.options.trace.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckReport {
    pub commute: bool,
    /// Variable and value of the first nonzero component of `[V1, V2]`.
    pub witness: Option<(String, String)>,
    pub nonsingular: bool,
    pub v1_at_point: Vec<String>,
    pub v2_at_point: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.commute && self.nonsingular
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            EXIT_OK
        } else {
            EXIT_HYPOTHESIS
        }
    }
}

pub fn cmd_check(m: &Manifest) -> CmdResult<CheckReport> {
    let (v1, v2, p) = m.fields()?;
    // surface syntax errors in the rest of the manifest too
    for s in [&m.f, &m.g].into_iter().flatten() {
        Polynomial::parse(&m.ring(), s).map_err(Error::from)?;
    }
    if m.ideal.is_some() {
        m.ideal()?;
    }
    let c = check_commute(&v1, &v2)?;
    let a = v1.at(&p)?;
    let b = v2.at(&p)?;
    let mut nonsingular = false;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                nonsingular = true;
            }
        }
    }
    let names = v1.ring().names().to_vec();
    Ok(CheckReport {
        commute: c.commute,
        witness: c.witness.map(|(i, w)| (names[i].clone(), w.to_string())),
        nonsingular,
        v1_at_point: a.iter().map(format_q).collect(),
        v2_at_point: b.iter().map(format_q).collect(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CmdResult<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CommandError { code: EXIT_CERTIFICATE, message: e.to_string() })?;
    std::fs::write(path, s + "\n").map_err(|e| CommandError::parse(format!("{}: {}", path.display(), e)))
}

pub fn bound_exit_code(r: &BoundReport) -> i32 {
    if r.is_sound() == Some(false) {
        return EXIT_CERTIFICATE;
    }
    match r.ledger.status {
        FinalStatus::PointExcluded => EXIT_OK,
        FinalStatus::ExhaustedBudget | FinalStatus::RadicalPartial => EXIT_BUDGET,
    }
}

/// Runs the bound pipeline and writes the trace when a path is configured.
pub fn cmd_bound(m: &Manifest, o: &Overrides) -> CmdResult<BoundReport> {
    let check = cmd_check(m)?;
    if !check.ok() {
        return Err(CommandError { code: EXIT_HYPOTHESIS, message: check_message(&check) });
    }
    let ctx = m.context()?;
    let cfg = m.config(o)?;
    let rep = nonisolated_bound(&m.f()?, &m.g()?, &ctx, &cfg)?;
    if let Some(p) = m.trace_path(o) {
        write_json(&p, &rep)?;
    }
    Ok(rep)
}

pub fn check_message(c: &CheckReport) -> String {
    let mut parts = Vec::new();
    if let Some((v, w)) = &c.witness {
        parts.push(format!("vector fields do not commute: component {} of [V1,V2] is {}", v, w));
    }
    if !c.nonsingular {
        parts.push(format!("point is singular: V1(p) = ({}), V2(p) = ({})", c.v1_at_point.join(", "), c.v2_at_point.join(", ")));
    }
    if parts.is_empty() {
        "ok".into()
    } else {
        parts.join("; ")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AppendixTrace {
    pub trace_version: u32,
    pub f: String,
    pub ideal: Vec<String>,
    pub witness: WitnessSummary,
}

pub fn cmd_appendix(m: &Manifest, o: &Overrides) -> CmdResult<AppendixTrace> {
    let ctx = m.context()?;
    let cfg = m.config(o)?;
    let ideal = m.ideal()?;
    let f = m.f()?;
    let w = construct_h(&f, &ideal, &ctx, &cfg)?;
    let t = AppendixTrace { trace_version: TRACE_VERSION, f: f.to_string(), ideal: ideal.gens().iter().map(|g| g.to_string()).collect(), witness: w.summary() };
    if let Some(p) = m.trace_path(o) {
        write_json(&p, &t)?;
    }
    Ok(t)
}

/// Runs one suite, or all of them for `all`; with a trace, re-verifies it
/// instead.
pub fn cmd_verify(suite: &str, seed: u64, count: usize, from_trace: Option<&Path>) -> CmdResult<Vec<SuiteReport>> {
    if let Some(p) = from_trace {
        let src = std::fs::read_to_string(p).map_err(|e| CommandError::parse(format!("{}: {}", p.display(), e)))?;
        let rep: BoundReport = serde_json::from_str(&src).map_err(|e| CommandError::parse(format!("trace: {}", e)))?;
        return Ok(vec![verify_trace(&rep, &Budget::default())?]);
    }
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    names.into_iter().map(|s| run_suite(s, seed, count).map_err(|e| CommandError { code: EXIT_PARSE, message: e.to_string() })).collect()
}

pub fn verify_exit_code(reports: &[SuiteReport]) -> i32 {
    if reports.iter().all(SuiteReport::passed) {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    }
}

/// One-line summary of a bound report.
pub fn bound_summary(r: &BoundReport) -> String {
    let status = match r.ledger.status {
        FinalStatus::PointExcluded => "point-excluded",
        FinalStatus::ExhaustedBudget => "exhausted-budget",
        FinalStatus::RadicalPartial => "radical-partial",
    };
    let show = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    format!(
        "status {}  bound {}  direct {}  steps {}  jacobian {}  {} ms",
        status,
        show(r.bound),
        show(r.direct),
        r.ledger.steps.len(),
        r.jacobian_rounds,
        r.millis
    )
}
