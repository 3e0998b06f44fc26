use lehmer_ff::cyclo::{self, CycloError, FactoringBudget, ZsigmondyResult};
use lehmer_ff::ffield::{field_from_order, field_make, FieldError, FieldSpec};
use lehmer_ff::fpoly::{Factorization, Poly, PolyError};
use lehmer_ff::lehmer_search::{self, SearchError};
use lehmer_ff::totient::{self, TotientError, TotientRecord};
use lehmer_ff::verify::{self, Suite, SuiteConfig, SuiteReport, VerifyError};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Command, FieldArgs};
use crate::output::Output;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::EnumerationTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TotientError> for CliError {
    fn from(e: TotientError) -> Self {
        match e {
            TotientError::OracleOverflow { .. } => CliError::Resource(e.to_string()),
            TotientError::InvariantViolated { .. } => CliError::Failed(e.to_string()),
            TotientError::Poly(p) => p.into(),
            TotientError::InvalidInput => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CycloError> for CliError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::FactoringBudgetExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::PrecisionAlert { .. } => CliError::Resource(e.to_string()),
            SearchError::Cyclo(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Field(e) => e.into(),
            VerifyError::Poly(e) => e.into(),
            VerifyError::Totient(e) => e.into(),
            VerifyError::Cyclo(e) => e.into(),
            VerifyError::Search(e) => e.into(),
            VerifyError::UnknownSuite(_) | VerifyError::InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

/// The rendered result and whether the command counts as a failed verification.
pub struct Outcome {
    pub output: Output,
    pub failed: bool,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome {
            output,
            failed: false,
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Totient {
            poly,
            field,
            bruteforce,
        } => run_totient(poly, field, *bruteforce).map(Into::into),
        Command::Lehmer {
            field,
            max_degree,
            expand_units,
        } => run_lehmer(field, *max_degree as usize, *expand_units).map(Into::into),
        Command::Cyclotomic { n, eval } => run_cyclotomic(*n, *eval).map(Into::into),
        Command::Zsigmondy {
            a,
            b,
            n,
            factoring_budget,
        } => run_zsigmondy(*a, *b, *n, budget(*factoring_budget)).map(Into::into),
        Command::Partitions {
            a,
            n_max,
            dividing_only,
        } => Ok(run_partitions(*a, *n_max, *dividing_only).into()),
        Command::Candidates { n_max, digits } => run_candidates(*n_max, *digits).map(Into::into),
        Command::Verify {
            suite,
            q,
            max_degree,
            n_max,
            a_max,
            seed,
            factoring_budget,
        } => {
            let config = SuiteConfig {
                q: *q,
                max_degree: max_degree.map(|d| d as usize),
                n_max: *n_max,
                a_max: *a_max,
                seed: *seed,
                budget: budget(*factoring_budget),
            };
            let report = verify::run_suite(suite.parse::<Suite>()?, &config)?;
            Ok(Outcome {
                failed: !report.passed,
                output: render_report(&report),
            })
        }
    }
}

fn budget(max_bits: Option<u64>) -> FactoringBudget {
    let mut b = FactoringBudget::default();
    if let Some(bits) = max_bits {
        b.max_bits = bits;
    }
    b
}

fn field_of(args: &FieldArgs) -> Result<FieldSpec, CliError> {
    match (args.q, args.p, args.k) {
        (Some(q), None, None) => Ok(field_from_order(q)?),
        (None, Some(p), Some(k)) => Ok(field_make(p, k)?),
        _ => Err(CliError::Usage("give either --q, or both --p and --k".into())),
    }
}

fn factor_text(field: &FieldSpec, fz: &Factorization) -> String {
    let mut parts = Vec::new();
    if !fz.unit.is_one() {
        let u = field.format_element(fz.unit);
        parts.push(if u.contains('+') { format!("({u})") } else { u });
    }
    for (p, r) in &fz.factors {
        let base = if p.coeffs().len() > 2 || p.coeff(0).encoding() != 0 {
            format!("({p})")
        } else {
            p.to_string()
        };
        parts.push(if *r > 1 { format!("{base}^{r}") } else { base });
    }
    parts.join("*")
}

fn record_json(r: &TotientRecord) -> Value {
    serde_json::to_value(r).expect("record serializes")
}

fn run_totient(text: &str, args: &FieldArgs, bruteforce: bool) -> Result<Output, CliError> {
    let field = field_of(args)?;
    let f = Poly::parse(&field, text)?;
    let membership = totient::is_lehmer(&f)?;
    let report = &membership.report;
    let counted = if bruteforce {
        Some(totient::totient_bruteforce(&f)?)
    } else {
        None
    };
    let mut json = record_json(&report.record());
    json["in_l"] = Value::from(membership.in_l);
    json["in_script_l"] = Value::from(membership.in_script_l);
    if let Some(c) = &counted {
        json["phi_counted"] = Value::from(c.to_string());
    }
    let mut columns = vec!["poly", "degree", "factors", "phi", "q^n-1", "divides", "in_L"];
    let mut row = vec![
        f.to_string(),
        f.degree().finite().unwrap_or(0).to_string(),
        factor_text(&field, &report.factorization),
        report.phi.to_string(),
        report.modulus_value.to_string(),
        report.divides.to_string(),
        membership.in_l.to_string(),
    ];
    if let Some(c) = counted {
        columns.push("phi_counted");
        row.push(c.to_string());
    }
    let mut out = Output::new(json, columns);
    out.rows.push(row);
    Ok(out)
}

fn run_lehmer(args: &FieldArgs, max_degree: usize, expand_units: bool) -> Result<Output, CliError> {
    let field = field_of(args)?;
    let set = totient::lehmer_set(&field, max_degree, expand_units)?;
    let reports = set
        .iter()
        .map(totient::totient_report)
        .collect::<Result<Vec<_>, _>>()?;
    let json = json!({
        "q": field.q(),
        "max_degree": max_degree,
        "expand_units": expand_units,
        "count": reports.len(),
        "polys": reports.iter().map(|r| record_json(&r.record())).collect::<Vec<_>>(),
    });
    let mut out = Output::new(json, vec!["poly", "degree", "factors", "phi", "q^n-1"]);
    for r in &reports {
        out.rows.push(vec![
            r.f.to_string(),
            r.f.degree().finite().unwrap_or(0).to_string(),
            factor_text(&field, &r.factorization),
            r.phi.to_string(),
            r.modulus_value.to_string(),
        ]);
    }
    out.notes.push(format!(
        "{} polynomial(s) over F_{} up to degree {max_degree}",
        reports.len(),
        field.q()
    ));
    Ok(out)
}

fn run_cyclotomic(n: u64, eval: Option<i64>) -> Result<Output, CliError> {
    let phi = cyclo::cyclotomic(n)?;
    let value = eval
        .map(|a| cyclo::cyclotomic_eval(n, &BigInt::from(a)))
        .transpose()?;
    let json = json!({
        "n": n,
        "degree": phi.degree().unwrap_or(0),
        "poly": phi.to_string(),
        "coefficients": phi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "eval": eval,
        "value": value.as_ref().map(|v| v.to_string()),
    });
    let mut columns = vec!["n", "degree", "poly"];
    let mut row = vec![n.to_string(), phi.degree().unwrap_or(0).to_string(), phi.to_string()];
    if let (Some(a), Some(v)) = (eval, &value) {
        columns.extend(["a", "value"]);
        row.extend([a.to_string(), v.to_string()]);
    }
    let mut out = Output::new(json, columns);
    out.rows.push(row);
    Ok(out)
}

fn list(v: &[BigUint]) -> String {
    v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn run_zsigmondy(a: u64, b: u64, n: u32, budget: FactoringBudget) -> Result<Output, CliError> {
    let z: ZsigmondyResult = cyclo::zsigmondy(a, b, n, &budget)?;
    let exception = z
        .exception
        .map(|e| serde_json::to_value(e).expect("tag serializes"));
    let exception_text = exception
        .as_ref()
        .and_then(|e| e.as_str().map(str::to_string))
        .unwrap_or_else(|| "none".into());
    let strings = |v: &[BigUint]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let json = json!({
        "a": a,
        "b": b,
        "n": n,
        "value": z.value.to_string(),
        "primitive_primes": strings(&z.primitive_primes),
        "algebraic_primes": strings(&z.algebraic_primes),
        "primitive_part": z.primitive_part.to_string(),
        "has_primitive": z.has_primitive(),
        "exception": exception,
        "unresolved_primitive": z.unresolved_primitive.as_ref().map(|u| u.to_string()),
        "unresolved_algebraic": z.unresolved_algebraic.as_ref().map(|u| u.to_string()),
    });
    let mut out = Output::new(
        json,
        vec!["a", "b", "n", "value", "primitive", "algebraic", "exception"],
    );
    out.rows.push(vec![
        a.to_string(),
        b.to_string(),
        n.to_string(),
        z.value.to_string(),
        list(&z.primitive_primes),
        list(&z.algebraic_primes),
        exception_text.clone(),
    ]);
    if z.exception.is_some() {
        out.notes.push(format!("exception {exception_text}: no primitive prime divisor"));
    }
    for (label, u) in [
        ("primitive", &z.unresolved_primitive),
        ("algebraic", &z.unresolved_algebraic),
    ] {
        if let Some(u) = u {
            out.notes.push(format!("unfactored {label} cofactor: {u}"));
        }
    }
    Ok(out)
}

fn run_partitions(a: u64, n_max: u32, dividing_only: bool) -> Output {
    let records: Vec<_> = lehmer_search::search_records(a, n_max)
        .into_iter()
        .filter(|r| r.divides || !dividing_only)
        .collect();
    let exponents = |m: &std::collections::BTreeMap<u64, i64>| {
        m.iter()
            .map(|(d, e)| format!("{d}:{e}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let json = json!({
        "a": a,
        "n_max": n_max,
        "dividing_only": dividing_only,
        "records": serde_json::to_value(&records).expect("records serialize"),
    });
    let mut out = Output::new(json, vec!["n", "partition", "divides", "cyclotomic_exponents"]);
    for r in &records {
        out.rows.push(vec![
            r.n.to_string(),
            r.parts.to_string(),
            r.divides.to_string(),
            exponents(&r.exponent_map),
        ]);
    }
    out
}

fn run_candidates(n_max: u64, digits: u32) -> Result<Output, CliError> {
    let sets = lehmer_search::candidate_degrees_with_precision(n_max, digits)?;
    let json = json!({
        "n_max": n_max,
        "digits": digits,
        "coarse": sets.coarse,
        "refined": sets.refined,
    });
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut out = Output::new(json, vec!["set", "size", "degrees"]);
    out.rows.push(vec!["coarse".into(), sets.coarse.len().to_string(), join(&sets.coarse)]);
    out.rows.push(vec!["refined".into(), sets.refined.len().to_string(), join(&sets.refined)]);
    Ok(out)
}

fn render_report(report: &SuiteReport) -> Output {
    let json = serde_json::to_value(report).expect("report serializes");
    let mut out = Output::new(json, vec!["status", "cases", "check"]);
    for c in &report.checks {
        out.rows.push(vec![
            if c.passed { "PASS" } else { "FAIL" }.into(),
            c.cases.to_string(),
            c.name.clone(),
        ]);
        if !c.passed {
            if !c.missing.is_empty() {
                out.notes.push(format!("{}: missing {}", c.name, c.missing.join(", ")));
            }
            if !c.unexpected.is_empty() {
                out.notes.push(format!("{}: unexpected {}", c.name, c.unexpected.join(", ")));
            }
        }
    }
    out.notes.push(format!(
        "suite {}: {}",
        report.suite,
        if report.passed { "verified" } else { "MISMATCH" }
    ));
    out
}
