//! The `count`, `table` and `verify` commands.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use dwork_core::diagonal::koblitz_count;
use dwork_core::dwork::{greene_count, miyatani_dwork6_count, preflight};
use dwork_core::oracle::{brute_count_with_budget, dwork_sweep_with_budget, projective_size, DworkSweep};
use dwork_core::verify::run_all;
use dwork_core::{Characters, DiagonalParams, DworkParams, Error, FqElem, FqField, Polynomial, RoundedCount};

use crate::report::{reports_csv, to_json, verify_csv, CountCell, Format, Report, VerifyRow};

/// Largest projective space the brute-force method will enumerate.
pub const BRUTE_LIMIT: u64 = 280_000_000;

/// Default bound on the distance of a character-sum count from an integer.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Method {
    Brute,
    Koblitz,
    Greene,
    Miyatani,
    All,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Brute, Method::Koblitz, Method::Greene, Method::Miyatani];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Koblitz => "koblitz",
            Method::Greene => "greene",
            Method::Miyatani => "miyatani",
            Method::All => "all",
        }
    }
}

/// Failure of a command, split by exit code.
#[derive(Debug, PartialEq)]
pub enum CliError {
    /// Bad arguments: exit code 2.
    Usage(String),
    /// A count failed to round or methods disagreed: exit code 3.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::RoundingFailure { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered output plus the failure to report after printing it.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub failure: Option<CliError>,
}

/// Field and method selection shared by the commands.
#[derive(Clone, Debug)]
pub struct Request {
    pub p: u32,
    pub e: u32,
    pub generator_alt: bool,
    pub degree: u32,
    pub methods: Vec<Method>,
    pub tolerance: f64,
    pub format: Format,
}

impl Request {
    pub fn characters(&self) -> Result<Characters, CliError> {
        let rank = usize::from(self.generator_alt);
        Ok(Characters::new(Arc::new(FqField::with_generator_rank(self.p, self.e, rank)?)))
    }

    /// Requested methods in canonical order; `all` or nothing means every one.
    fn methods(&self) -> Vec<Method> {
        if self.methods.is_empty() || self.methods.contains(&Method::All) {
            return Method::ALL.to_vec();
        }
        let mut m = self.methods.clone();
        m.sort();
        m.dedup();
        m
    }

    /// Explicitly named methods must apply; under `all` they may be skipped.
    fn explicit(&self) -> bool {
        !self.methods.is_empty() && !self.methods.contains(&Method::All)
    }
}

/// `λ` as an integer (its image in the prime field) or as comma-separated
/// coefficients, low degree first.
pub fn parse_lambda(field: &FqField, text: &str) -> Result<FqElem, CliError> {
    let bad = || CliError::Usage(format!("cannot parse λ = {text:?}"));
    let text = text.trim();
    if text.contains(',') {
        let coeffs = text
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(field.from_coeffs(&coeffs)?)
    } else {
        Ok(field.from_int(text.parse::<i64>().map_err(|_| bad())?))
    }
}

fn lambda_json(field: &FqField, lambda: FqElem) -> serde_json::Value {
    if field.e() == 1 {
        serde_json::Value::from(field.to_code(lambda))
    } else {
        serde_json::Value::from(field.coeffs(lambda))
    }
}

/// A method that does not apply to this field, degree or `λ`.
fn inapplicable(req: &Request, reason: String) -> Result<(CountCell, Option<f64>), CliError> {
    if req.explicit() {
        Err(CliError::Usage(reason))
    } else {
        Ok((CountCell::UNAVAILABLE, None))
    }
}

fn rounded(r: RoundedCount) -> (CountCell, Option<f64>) {
    (CountCell::Value(r.count), Some(r.residual))
}

fn run_method(
    ch: &Characters,
    req: &Request,
    lambda: FqElem,
    method: Method,
    sweep: Option<&DworkSweep>,
) -> Result<(CountCell, Option<f64>), CliError> {
    let degree = req.degree;
    match method {
        Method::Brute => {
            if let Some(s) = sweep {
                return Ok((CountCell::Value(s.count(lambda) as i64), Some(0.0)));
            }
            if projective_size(ch.q(), degree as usize) > BRUTE_LIMIT {
                return Ok((CountCell::SKIPPED, None));
            }
            let poly = Polynomial::dwork(ch.field(), degree, lambda)?;
            let n = brute_count_with_budget(ch.field(), &poly, BRUTE_LIMIT)?;
            Ok((CountCell::Value(n as i64), Some(0.0)))
        }
        Method::Koblitz => match DiagonalParams::dwork(ch, degree, lambda) {
            Ok(params) => Ok(rounded(koblitz_count(ch, &params)?)),
            Err(e) => inapplicable(req, format!("koblitz: {e}")),
        },
        Method::Greene => match DworkParams::new(ch, degree, lambda) {
            Ok(params) => Ok(rounded(greene_count(ch, &params)?)),
            Err(e) => inapplicable(req, format!("greene: {e}")),
        },
        Method::Miyatani => {
            if degree != 6 {
                return inapplicable(req, format!("miyatani: only degree 6 is supported, got {degree}"));
            }
            let params = match DworkParams::new(ch, degree, lambda) {
                Ok(p) => p,
                Err(e) => return inapplicable(req, format!("miyatani: {e}")),
            };
            if !preflight(ch).ok() {
                return inapplicable(req, format!("miyatani: hypotheses fail over F_{}", ch.q()));
            }
            Ok(rounded(miyatani_dwork6_count(ch, &params)?))
        }
        Method::All => unreachable!("expanded by Request::methods"),
    }
}

fn build_report(
    ch: &Characters,
    req: &Request,
    lambda: FqElem,
    sweep: Option<(&DworkSweep, f64)>,
) -> Result<Report, CliError> {
    let mut report = Report {
        q: ch.q(),
        degree: req.degree,
        lambda: lambda_json(ch.field(), lambda),
        counts: BTreeMap::new(),
        residuals: BTreeMap::new(),
        ms: BTreeMap::new(),
    };
    for method in req.methods() {
        let start = Instant::now();
        let (cell, residual) = run_method(ch, req, lambda, method, sweep.map(|s| s.0))?;
        let mut ms = start.elapsed().as_secs_f64() * 1e3;
        if let (Method::Brute, Some((_, sweep_ms))) = (method, sweep) {
            ms = sweep_ms;
        }
        if let Some(r) = residual {
            report.residuals.insert(method.name(), r);
            report.ms.insert(method.name(), ms);
        }
        report.counts.insert(method.name(), cell);
    }
    Ok(report)
}

/// Disagreement between methods or a residual above the tolerance.
fn check_report(report: &Report, tolerance: f64) -> Option<String> {
    let distinct = report.distinct_counts();
    if distinct.len() > 1 {
        return Some(format!("q={} λ={}: methods disagree: {:?}", report.q, report.lambda, report.counts));
    }
    report
        .residuals
        .iter()
        .find(|(_, &r)| r > tolerance)
        .map(|(m, r)| format!("q={} λ={}: {m} residual {r:.3e} exceeds {tolerance:.1e}", report.q, report.lambda))
}

fn render_reports(reports: &[Report], format: Format, single: bool) -> String {
    match (format, single) {
        (Format::Json, true) => to_json(&reports[0]),
        (Format::Json, false) => to_json(reports),
        (Format::Csv, _) => reports_csv(reports),
    }
}

fn finish(reports: Vec<Report>, req: &Request, single: bool) -> Outcome {
    let failures: Vec<String> = reports.iter().filter_map(|r| check_report(r, req.tolerance)).collect();
    Outcome {
        output: render_reports(&reports, req.format, single),
        failure: (!failures.is_empty()).then(|| CliError::Verification(failures.join("; "))),
    }
}

fn check_request(req: &Request) -> Result<(), CliError> {
    if !(3..=6).contains(&req.degree) {
        return Err(CliError::Usage(format!("degree must be 3, 4, 5 or 6, got {}", req.degree)));
    }
    if !(req.tolerance > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", req.tolerance)));
    }
    Ok(())
}

/// Counts of one member of the family by each requested method.
pub fn count(req: &Request, lambda: &str) -> Result<Outcome, CliError> {
    check_request(req)?;
    let ch = req.characters()?;
    let lambda = parse_lambda(ch.field(), lambda)?;
    let report = build_report(&ch, req, lambda, None)?;
    Ok(finish(vec![report], req, true))
}

/// One report per `λ`: the given list, or every nonzero `λ` with
/// `λ^degree ≠ 1` when `lambdas` is `None`. Brute-force counts come from one
/// sweep of projective space, whose time is reported on every row.
pub fn table(req: &Request, lambdas: Option<&[String]>) -> Result<Outcome, CliError> {
    check_request(req)?;
    let ch = req.characters()?;
    let f = ch.field();
    let lambdas: Vec<FqElem> = match lambdas {
        Some(list) => list.iter().map(|l| parse_lambda(f, l)).collect::<Result<_, _>>()?,
        None => (1..ch.q())
            .map(|c| f.from_code(c).expect("code below q"))
            .filter(|&l| f.pow(l, req.degree as i64) != FqElem::ONE)
            .collect(),
    };
    let want_brute = req.methods().contains(&Method::Brute);
    let sweep = if want_brute && projective_size(ch.q(), req.degree as usize) <= BRUTE_LIMIT {
        let start = Instant::now();
        let s = dwork_sweep_with_budget(f, req.degree, BRUTE_LIMIT)?;
        Some((s, start.elapsed().as_secs_f64() * 1e3))
    } else {
        None
    };
    let reports = lambdas
        .into_iter()
        .map(|l| build_report(&ch, req, l, sweep.as_ref().map(|(s, ms)| (s, *ms))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(finish(reports, req, false))
}

/// The identity suite over one field, one row per family of checks.
pub fn verify(req: &Request) -> Result<Outcome, CliError> {
    let ch = req.characters()?;
    let mut rows: Vec<VerifyRow> = run_all(&ch)?
        .into_iter()
        .map(|r| VerifyRow {
            check: r.name.to_string(),
            cases: r.cases,
            max_residual: r.max_residual,
            tolerance: r.tolerance,
            passed: r.passed(),
        })
        .collect();
    if ch.order() % 6 == 0 {
        let pre = preflight(&ch);
        rows.push(VerifyRow {
            check: "kernel hypotheses".into(),
            cases: 3,
            max_residual: if pre.ok() { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: pre.ok(),
        });
    }
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.check.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| CliError::Verification(format!("failed: {}", failed.join(", "))));
    let output = match req.format {
        Format::Json => to_json(&rows),
        Format::Csv => verify_csv(&rows),
    };
    Ok(Outcome { output, failure })
}
