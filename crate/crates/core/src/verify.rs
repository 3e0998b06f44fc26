//! Named verification suites comparing computed sets against the published
//! classification and checking the supporting lemmas over bounded ranges.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cyclo::{cyclotomic_eval, ord_p, zsigmondy, CycloError, FactoringBudget};
use crate::ffield::{field_from_order, FieldError, FieldSpec};
use crate::fpoly::{enumerate_polys, poly_gcd, poly_powmod, Poly, PolyError};
use crate::lehmer_search::{
    abundancy_bound_violations, classify_a_ge_3, exponent_map, mersenne_divisibility,
    mersenne_quotient, partitions, totient_bound_violations, verify_prop36, Partition, SearchError,
};
use crate::totient::{lehmer_set, totient, totient_bruteforce, TotientError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid suite parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Totient(#[from] TotientError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainTheorem,
    Prop31,
    Prop36,
    CycloLemmas,
    Bounds,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::MainTheorem,
        Suite::Prop31,
        Suite::Prop36,
        Suite::CycloLemmas,
        Suite::Bounds,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::Prop31 => "prop31",
            Suite::Prop36 => "prop36",
            Suite::CycloLemmas => "cyclo-lemmas",
            Suite::Bounds => "bounds",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Optional overrides for suite ranges; `None` picks the suite default.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub q: Option<u64>,
    pub max_degree: Option<usize>,
    pub n_max: Option<u64>,
    pub a_max: Option<u64>,
    pub seed: Option<u64>,
    pub budget: FactoringBudget,
}

/// Outcome of one check. Set comparisons fill `expected`/`found`; invariant
/// sweeps leave `expected` empty and list counterexamples in `found`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub expected: Vec<String>,
    pub found: Vec<String>,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
}

const MAX_LISTED: usize = 50;

impl Check {
    pub fn sets(name: impl Into<String>, expected: Vec<String>, found: Vec<String>) -> Self {
        let e: BTreeSet<&String> = expected.iter().collect();
        let f: BTreeSet<&String> = found.iter().collect();
        let missing: Vec<String> = expected.iter().filter(|x| !f.contains(x)).cloned().collect();
        let unexpected: Vec<String> = found.iter().filter(|x| !e.contains(x)).cloned().collect();
        Check {
            name: name.into(),
            passed: missing.is_empty() && unexpected.is_empty() && expected.len() == found.len(),
            cases: found.len() as u64,
            expected,
            found,
            missing,
            unexpected,
        }
    }

    pub fn invariant(name: impl Into<String>, cases: u64, mut violations: Vec<String>) -> Self {
        violations.truncate(MAX_LISTED);
        Check {
            name: name.into(),
            passed: violations.is_empty(),
            cases,
            expected: Vec::new(),
            found: violations.clone(),
            missing: Vec::new(),
            unexpected: violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, VerifyError> {
    let checks = match suite {
        Suite::MainTheorem => main_theorem(config)?,
        Suite::Prop31 => prop31(config)?,
        Suite::Prop36 => prop36(config)?,
        Suite::CycloLemmas => cyclo_lemmas(config)?,
        Suite::Bounds => bounds(config)?,
        Suite::Oracle => oracle(config)?,
    };
    Ok(SuiteReport::new(suite, checks))
}

fn product(field: &FieldSpec, factors: &[&str]) -> Result<Poly, PolyError> {
    factors.iter().try_fold(Poly::one(field), |acc, f| {
        Ok(&acc * &Poly::parse(field, f)?)
    })
}

fn texts(polys: &[Poly]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// The published Lehmer set for `q`, restricted to degree at most `max_degree`;
/// monic representatives and, for q = 3, the unit multiples as listed.
pub fn published_lehmer_set(
    field: &FieldSpec,
    max_degree: usize,
) -> Result<(Vec<Poly>, Option<Vec<Poly>>), PolyError> {
    let keep = |mut v: Vec<Poly>| {
        v.retain(|p| p.degree().finite().is_some_and(|d| d <= max_degree));
        v.sort();
        v
    };
    match field.q() {
        2 => {
            let listed: [&[&str]; 6] = [
                &["x", "x+1"],
                &["x", "x+1", "x^2+x+1"],
                &["x", "x^2+x+1", "x^3+x+1"],
                &["x+1", "x^2+x+1", "x^3+x+1"],
                &["x", "x^2+x+1", "x^3+x^2+1"],
                &["x+1", "x^2+x+1", "x^3+x^2+1"],
            ];
            let polys = listed
                .iter()
                .map(|fs| product(field, fs))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((keep(polys), None))
        }
        3 => {
            let monic = [["x", "x+1"], ["x", "x+2"], ["x+1", "x+2"]]
                .iter()
                .map(|fs| product(field, fs))
                .collect::<Result<Vec<_>, _>>()?;
            let mut expanded = Vec::new();
            for a in ["1", "2"] {
                for fs in [["x", "x+1"], ["x", "x-1"], ["x+1", "x-1"]] {
                    expanded.push(product(field, &[a, fs[0], fs[1]])?);
                }
            }
            Ok((keep(monic), Some(keep(expanded))))
        }
        _ => Ok((Vec::new(), Some(Vec::new()))),
    }
}

fn default_max_degree(q: u64) -> usize {
    match q {
        2 => 12,
        3 => 8,
        _ => 7,
    }
}

fn main_theorem(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let targets: Vec<(u64, usize)> = match config.q {
        Some(q) => vec![(q, config.max_degree.unwrap_or_else(|| default_max_degree(q)))],
        None => [2u64, 3, 4, 5]
            .into_iter()
            .map(|q| (q, config.max_degree.unwrap_or_else(|| default_max_degree(q))))
            .collect(),
    };
    let mut checks = Vec::new();
    for (q, max_degree) in targets {
        if max_degree < 1 {
            return Err(VerifyError::InvalidParameter("max degree must be at least 1".into()));
        }
        let field = field_from_order(q)?;
        let (expected_monic, expected_units) = published_lehmer_set(&field, max_degree)?;
        let name = format!("L(F_{q}[x]) monic, degree <= {max_degree}");
        match lehmer_set(&field, max_degree, false) {
            Ok(found) => checks.push(Check::sets(name, texts(&expected_monic), texts(&found))),
            Err(TotientError::InvariantViolated { poly, reason }) => {
                checks.push(Check::invariant(name, 0, vec![format!("{poly}: {reason}")]));
                continue;
            }
            Err(e) => return Err(e.into()),
        }
        if let Some(expected) = expected_units {
            let found = lehmer_set(&field, max_degree, true)?;
            checks.push(Check::sets(
                format!("L(F_{q}[x]) with unit multiples, degree <= {max_degree}"),
                texts(&expected),
                texts(&found),
            ));
        }
    }
    Ok(checks)
}

fn show_pairs(v: &[(u64, Partition)]) -> Vec<String> {
    v.iter().map(|(a, p)| format!("a={a} {p}")).collect()
}

fn prop31(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let a_max = config.a_max.unwrap_or(8);
    let n_max = config.n_max.unwrap_or(10);
    let n_max = u32::try_from(n_max).map_err(|_| VerifyError::InvalidParameter("n_max too large".into()))?;
    let found = classify_a_ge_3(a_max, n_max)?;
    let mut expected = vec![(3, Partition::new(vec![1, 1])?)];
    if n_max >= 4 {
        expected.push((3, Partition::new(vec![1, 1, 1, 1])?));
    }
    let mut checks = vec![Check::sets(
        format!("divisibility hits for 3 <= a <= {a_max}, n <= {n_max}"),
        show_pairs(&expected),
        show_pairs(&found),
    )];
    checks.push(exponent_map_check(20)?);
    checks.push(part_divisibility_check(24));
    Ok(checks)
}

/// Cyclotomic decomposition of the quotient agrees with the direct quotient,
/// and is integral exactly when the divisibility test passes.
pub fn exponent_map_check(n_max: u32) -> Result<Check, VerifyError> {
    let jobs: Vec<(u32, Partition)> = (2..=n_max)
        .flat_map(|n| partitions(n).into_iter().map(move |p| (n, p)))
        .collect();
    let results: Vec<Result<Option<String>, VerifyError>> = jobs
        .par_iter()
        .map(|(n, p)| {
            let map = exponent_map(*n, p)?;
            if map.exponent(1) != 1 - p.s() as i64 {
                return Ok(Some(format!("{p}: exponent(1) = {}", map.exponent(1))));
            }
            for a in [2i64, 3, 4] {
                let value = map.evaluate(a)?;
                if value != mersenne_quotient(a, p) {
                    return Ok(Some(format!("{p} a={a}: decomposition mismatch")));
                }
                if value.is_integer() != mersenne_divisibility(a as u64, p) {
                    return Ok(Some(format!("{p} a={a}: integrality mismatch")));
                }
            }
            Ok(None)
        })
        .collect();
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?);
    }
    Ok(Check::invariant(
        format!("cyclotomic exponent map, n <= {n_max}, a in {{2,3,4}}"),
        jobs.len() as u64 * 3,
        violations,
    ))
}

/// For a = 2, every dividing partition has parts dividing n with gcd 1.
pub fn part_divisibility_check(n_max: u32) -> Check {
    let mut cases = 0;
    let mut violations = Vec::new();
    for n in 2..=n_max {
        for p in partitions(n) {
            if !mersenne_divisibility(2, &p) {
                continue;
            }
            cases += 1;
            let all_divide = p.parts().iter().all(|&e| n % e == 0);
            let g = p.parts().iter().fold(0u32, |g, &e| g.gcd(&e));
            if !all_divide || g != 1 {
                violations.push(format!("n={n} {p}"));
            }
        }
    }
    Check::invariant(
        format!("a = 2 dividing partitions have e_i | n and gcd 1, n <= {n_max}"),
        cases,
        violations,
    )
}

fn prop36(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let n_max = config.n_max.unwrap_or(30);
    let n_max = u32::try_from(n_max).map_err(|_| VerifyError::InvalidParameter("n_max too large".into()))?;
    let found = verify_prop36(n_max)?;
    let expected: Vec<(u32, Partition)> = [(2, vec![1, 1]), (4, vec![1, 1, 2]), (6, vec![1, 2, 3])]
        .into_iter()
        .filter(|(n, _)| *n <= n_max)
        .map(|(n, p)| Ok((n, Partition::new(p)?)))
        .collect::<Result<_, SearchError>>()?;
    let show = |v: &[(u32, Partition)]| -> Vec<String> {
        v.iter().map(|(n, p)| format!("n={n} {p}")).collect()
    };
    Ok(vec![Check::sets(
        format!("a = 2 dividing partitions under the u_d constraints, n <= {n_max}"),
        show(&expected),
        show(&found),
    )])
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn eval(n: u64, a: i64) -> Result<BigInt, VerifyError> {
    Ok(cyclotomic_eval(n, &big(a))?)
}

fn divides(p: u64, m: &BigInt) -> bool {
    (m % BigInt::from(p)).is_zero()
}

/// Collects violation messages from a parallel sweep, propagating errors.
fn sweep<T, F>(jobs: Vec<T>, check: F) -> Result<(u64, Vec<String>), VerifyError>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Vec<String>, VerifyError> + Send + Sync,
{
    let results: Vec<Result<Vec<String>, VerifyError>> = jobs.par_iter().map(check).collect();
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?);
    }
    Ok((jobs.len() as u64, violations))
}

fn cyclo_lemmas(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();

    let jobs: Vec<(u64, i64)> = (1..=200u64).flat_map(|n| (2..=10).map(move |a| (n, a))).collect();
    let (cases, v) = sweep(jobs, |&(n, a)| {
        let prod: BigInt = arith::divisors(n)
            .into_iter()
            .map(|d| eval(d, a))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .product();
        let ok = prod == Pow::pow(big(a), n as u32) - 1;
        Ok(if ok { vec![] } else { vec![format!("n={n} a={a}")] })
    })?;
    checks.push(Check::invariant("product of Phi_d(a) over d | n equals a^n - 1 (n <= 200)", cases, v));

    let mut jobs = Vec::new();
    for p in [2u64, 3, 5] {
        for m in (1..=30u64).filter(|m| m % p != 0) {
            for v in 1..=3u32 {
                for a in 2..=10i64 {
                    jobs.push((p, m, v, a));
                }
            }
        }
    }
    let (cases, v) = sweep(jobs, |&(p, m, v, a)| {
        let big_index = m * p.pow(v);
        let lifted = eval(big_index, a)?;
        let base = eval(m, a)?;
        let mut bad = Vec::new();
        if divides(p, &lifted) != divides(p, &base) {
            bad.push(format!("iff p={p} m={m} v={v} a={a}"));
        }
        if divides(p, &base) {
            if big_index > 2 && ord_p(p, &lifted)? != 1 {
                bad.push(format!("ord p={p} m={m} v={v} a={a}"));
            }
            if big_index == 2 && ord_p(2, &lifted)? != ord_p(2, &big(a + 1))? {
                bad.push(format!("ord2(Phi_2({a})) != ord2({})", a + 1));
            }
        }
        Ok(bad)
    })?;
    checks.push(Check::invariant(
        "p | Phi_{m p^v}(a) iff p | Phi_m(a), with the valuation statements",
        cases,
        v,
    ));

    let mut jobs = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        for n in 1..=60u64 {
            jobs.push((p, n));
        }
    }
    let (cases, v) = sweep(jobs, |&(p, n)| {
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        let window = (p * p) as i64;
        let mut exists = false;
        for a in 1..=window {
            if divides(p, &eval(n, a)?) {
                exists = true;
                break;
            }
        }
        let predicted = (p - 1) % m == 0;
        Ok(if exists == predicted {
            vec![]
        } else {
            vec![format!("p={p} n={n}: found={exists} predicted={predicted}")]
        })
    })?;
    checks.push(Check::invariant(
        "p | Phi_n(a) for some a in [1, p^2] iff m | p - 1",
        cases,
        v,
    ));

    let mut jobs = Vec::new();
    for p in [2u64, 3, 5] {
        for v in 0..=3u32 {
            for a in 1..=20i64 {
                jobs.push((p, v, a));
            }
        }
    }
    let (cases, v) = sweep(jobs, |&(p, v, a)| {
        let lhs = divides(p, &eval(p.pow(v), a)?);
        let rhs = (a - 1) % p as i64 == 0;
        Ok(if lhs == rhs { vec![] } else { vec![format!("p={p} v={v} a={a}")] })
    })?;
    checks.push(Check::invariant("p | Phi_{p^v}(a) iff p | a - 1", cases, v));

    let mut jobs = Vec::new();
    for a in 2..=8i64 {
        for n in 1..=40u64 {
            for m in n + 1..=40 {
                jobs.push((a, n, m));
            }
        }
    }
    let (cases, v) = sweep(jobs, |&(a, n, m)| {
        let g = eval(n, a)?.gcd(&eval(m, a)?);
        if g.is_one() {
            return Ok(vec![]);
        }
        let ok = g.to_u64_digits().1.len() == 1 && {
            let p = g.to_u64_digits().1[0];
            let ratio = m / n;
            arith::is_prime(p) && m % n == 0 && ratio > 1 && arith::prime_power(ratio).map(|(r, _)| r) == Some(p)
        };
        Ok(if ok { vec![] } else { vec![format!("a={a} n={n} m={m} gcd={g}")] })
    })?;
    checks.push(Check::invariant(
        "gcd(Phi_n(a), Phi_m(a)) is 1 or a prime p with m = p^v n",
        cases,
        v,
    ));

    let jobs: Vec<(u64, i64)> = (1..=100u64).flat_map(|m| (2..=10).map(move |a| (m, a))).collect();
    let (cases, v) = sweep(jobs, |&(m, a)| {
        let unit = eval(m, a)?.abs().is_one();
        Ok(if unit == ((m, a) == (1, 2)) { vec![] } else { vec![format!("m={m} a={a}")] })
    })?;
    checks.push(Check::invariant("|Phi_m(a)| = 1 only at m = 1, a = 2", cases, v));

    let jobs: Vec<(u64, i64)> = (2..=100u64).flat_map(|n| (2..=10).map(move |a| (n, a))).collect();
    let (cases, v) = sweep(jobs, |&(n, a)| {
        let value = eval(n, a)?;
        let apow: BigInt = Pow::pow(big(a), arith::euler_phi(n) as u32);
        let ok = apow <= &value * 2 && value <= &apow * 2;
        Ok(if ok { vec![] } else { vec![format!("n={n} a={a}")] })
    })?;
    checks.push(Check::invariant("a^phi(n) / 2 <= Phi_n(a) <= 2 a^phi(n)", cases, v));

    let budget = config.budget;
    let jobs: Vec<u32> = (7..=60).collect();
    let (cases, v) = sweep(jobs, |&n| {
        let z = zsigmondy(2, 1, n, &budget)?;
        let phi_n2 = eval(n as u64, 2)?.to_biguint().expect("Phi_n(2) > 0");
        let lower: BigUint = Pow::pow(BigUint::from(2u32), arith::euler_phi(n as u64) as u32);
        let mut bad = Vec::new();
        if &z.primitive_part * BigUint::from(n) < phi_n2 {
            bad.push(format!("n={n}: M < Phi_n(2)/n"));
        }
        if &phi_n2 * 2u32 < lower {
            bad.push(format!("n={n}: Phi_n(2)/n < 2^phi(n)/(2n)"));
        }
        Ok(bad)
    })?;
    checks.push(Check::invariant(
        "primitive part of 2^n - 1 >= Phi_n(2)/n >= 2^phi(n)/(2n), 7 <= n <= 60",
        cases,
        v,
    ));

    checks.push(zsigmondy_check(12, 30, &budget)?);
    Ok(checks)
}

/// Primitive prime divisors of `a^n - 1` exist for `2 <= a <= a_max`,
/// `2 <= n <= n_max` exactly outside the exception table, and every listed
/// primitive prime satisfies the definition.
pub fn zsigmondy_check(a_max: u64, n_max: u32, budget: &FactoringBudget) -> Result<Check, VerifyError> {
    let jobs: Vec<(u64, u32)> = (2..=a_max).flat_map(|a| (2..=n_max).map(move |n| (a, n))).collect();
    let (cases, v) = sweep(jobs, |&(a, n)| {
        let z = zsigmondy(a, 1, n, budget)?;
        let mut bad = Vec::new();
        let exceptional = (a, n) == (2, 6) || (n == 2 && (a + 1).is_power_of_two());
        if z.has_primitive() == exceptional {
            bad.push(format!("a={a} n={n}: has_primitive={}", z.has_primitive()));
        }
        if z.exception.is_some() != exceptional {
            bad.push(format!("a={a} n={n}: exception tag {:?}", z.exception));
        }
        for p in &z.primitive_primes {
            let p64: Option<u64> = p.try_into().ok();
            let earlier = (1..n).any(|k| {
                let m = Pow::pow(BigUint::from(a), k) - 1u32;
                (m % p).is_zero()
            });
            if earlier || !(&z.value % p).is_zero() {
                bad.push(format!("a={a} n={n}: {p64:?} not primitive"));
            }
        }
        if z.unresolved_primitive.is_none() {
            let rebuilt = z.primitive_primes.iter().fold(BigUint::one(), |acc, p| {
                let mut v = z.value.clone();
                let mut pp = BigUint::one();
                while (&v % p).is_zero() {
                    v /= p;
                    pp *= p;
                }
                acc * pp
            });
            if rebuilt != z.primitive_part {
                bad.push(format!("a={a} n={n}: primitive part mismatch"));
            }
        }
        Ok(bad)
    })?;
    Ok(Check::invariant(
        format!("primitive divisors of a^n - 1 exist except at the exceptions, a <= {a_max}, n <= {n_max}"),
        cases,
        v,
    ))
}

fn bounds(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let n_max = config.n_max.unwrap_or(100_000);
    if n_max < 2 {
        return Err(VerifyError::InvalidParameter("n_max must be at least 2".into()));
    }
    let show = |v: Vec<u64>| v.into_iter().map(|n| format!("n={n}")).collect();
    Ok(vec![
        Check::invariant(
            format!("h(n) < 1.28 n^(1/4), 1 <= n <= {n_max}"),
            n_max,
            show(abundancy_bound_violations(n_max)),
        ),
        Check::invariant(
            format!("phi(n) > c(n) n^(3/4), 2 <= n <= {n_max}"),
            n_max - 1,
            show(totient_bound_violations(n_max)),
        ),
    ])
}

/// Formula and residue-counting totients agree on every monic polynomial of
/// degree `1..=max_degree` over F_q.
pub fn totient_oracle_check(q: u64, max_degree: usize) -> Result<Check, VerifyError> {
    let field = field_from_order(q)?;
    let mut jobs = Vec::new();
    for d in 1..=max_degree {
        jobs.extend(enumerate_polys(&field, d, true)?);
    }
    let (cases, v) = sweep(jobs, |f| {
        let fast = totient(f)?;
        let slow = totient_bruteforce(f)?;
        Ok(if fast == slow {
            vec![]
        } else {
            vec![format!("{f}: formula {fast}, count {slow}")]
        })
    })?;
    Ok(Check::invariant(
        format!("totient formula = residue count over F_{q}, monic, degree <= {max_degree}"),
        cases,
        v,
    ))
}

/// `g^phi(f) = 1 mod f` for `pairs` random coprime pairs over F_q.
pub fn euler_theorem_check(q: u64, pairs: usize, seed: u64) -> Result<Check, VerifyError> {
    let field = field_from_order(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q);
    let random_poly = |rng: &mut ChaCha8Rng, deg: usize, monic: bool| -> Poly {
        let mut coeffs: Vec<_> = (0..deg)
            .map(|_| field.element(rng.gen_range(0..field.q())).expect("in range"))
            .collect();
        let lead = if monic { 1 } else { rng.gen_range(1..field.q()) };
        coeffs.push(field.element(lead).expect("in range"));
        Poly::from_coeffs(&field, coeffs)
    };
    let mut violations = Vec::new();
    let mut done = 0;
    while done < pairs {
        let df = rng.gen_range(1..=8);
        let f = random_poly(&mut rng, df, true);
        let dg = rng.gen_range(0..=10);
        let g = random_poly(&mut rng, dg, false);
        if !poly_gcd(&f, &g)?.is_one() {
            continue;
        }
        done += 1;
        let phi = totient(&f)?;
        if !poly_powmod(&g, &phi, &f)?.is_one() {
            violations.push(format!("f={f} g={g}"));
        }
    }
    Ok(Check::invariant(
        format!("g^phi(f) = 1 mod f for {pairs} random coprime pairs over F_{q}"),
        pairs as u64,
        violations,
    ))
}

/// `in_L(f) = in_L(u f)` for every unit `u` and monic `f` up to `max_degree`.
pub fn unit_invariance_check(q: u64, max_degree: usize) -> Result<Check, VerifyError> {
    let field = field_from_order(q)?;
    let mut jobs = Vec::new();
    for d in 1..=max_degree {
        jobs.extend(enumerate_polys(&field, d, true)?);
    }
    let (cases, v) = sweep(jobs, |f| {
        let base = crate::totient::is_lehmer(f)?;
        for u in field.units() {
            let m = crate::totient::is_lehmer(&f.scale(u))?;
            if m.in_l != base.in_l || m.report.phi != base.report.phi {
                return Ok(vec![format!("{f} scaled by {}", field.format_element(u))]);
            }
        }
        Ok(vec![])
    })?;
    Ok(Check::invariant(
        format!("Lehmer membership is unit invariant over F_{q}, degree <= {max_degree}"),
        cases,
        v,
    ))
}

fn oracle(config: &SuiteConfig) -> Result<Vec<Check>, VerifyError> {
    let seed = config.seed.unwrap_or(0x5eed);
    let mut checks = vec![
        totient_oracle_check(2, 6)?,
        totient_oracle_check(3, 4)?,
        totient_oracle_check(4, 4)?,
    ];
    for q in [2u64, 3, 4, 5, 9] {
        checks.push(euler_theorem_check(q, 100, seed)?);
    }
    checks.push(unit_invariance_check(3, 4)?);
    checks.push(unit_invariance_check(4, 3)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn set_check_diffs() {
        let c = Check::sets("x", vec!["a".into(), "b".into()], vec!["b".into(), "c".into()]);
        assert!(!c.passed);
        assert_eq!(c.missing, ["a"]);
        assert_eq!(c.unexpected, ["c"]);
        assert!(Check::sets("y", vec!["a".into()], vec!["a".into()]).passed);
    }

    #[test]
    fn published_sets_parse() {
        let f2 = field_from_order(2).unwrap();
        let (monic, units) = published_lehmer_set(&f2, 12).unwrap();
        assert_eq!(monic.len(), 6);
        assert!(units.is_none());
        let (monic, _) = published_lehmer_set(&f2, 4).unwrap();
        assert_eq!(texts(&monic), ["x^2+x", "x^4+x"]);
        let f3 = field_from_order(3).unwrap();
        let (monic, units) = published_lehmer_set(&f3, 8).unwrap();
        assert_eq!(monic.len(), 3);
        assert_eq!(units.unwrap().len(), 6);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig {
            q: Some(3),
            max_degree: Some(5),
            n_max: Some(12),
            ..Default::default()
        };
        assert!(run_suite(Suite::MainTheorem, &cfg).unwrap().passed);
        assert!(run_suite(Suite::Prop36, &cfg).unwrap().passed);
    }
}
