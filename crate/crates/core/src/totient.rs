//! The Euler totient of F_q[x] and the Lehmer sets it defines.
//!
//! `phi(q, f)` counts the residues `g` with `deg g < deg f` and `gcd(f, g) = 1`.
//! A polynomial lies in the script-L set when `phi(q, f)` divides
//! `q^deg(f) - 1`; the Lehmer set proper keeps only the reducible members.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ffield::FieldSpec;
use crate::fpoly::{enumerate_polys, factor, poly_gcd, Degree, Factorization, Poly, PolyError};

/// Largest residue-space size the brute-force oracle will walk.
pub const ORACLE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TotientError {
    #[error("totient needs a polynomial of degree at least 1")]
    InvalidInput,
    #[error("brute-force oracle over {q}^{degree} residues exceeds the 2^24 limit")]
    OracleOverflow { q: u32, degree: usize },
    #[error("Lehmer set invariant violated by {poly}: {reason}")]
    InvariantViolated { poly: String, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn degree_at_least_one(f: &Poly) -> Result<usize, TotientError> {
    match f.degree() {
        Degree::Finite(d) if d >= 1 => Ok(d),
        _ => Err(TotientError::InvalidInput),
    }
}

/// `prod_i q^{n_i (r_i - 1)} (q^{n_i} - 1)` over an existing factorization.
pub fn totient_from_factorization(q: u32, fz: &Factorization) -> BigUint {
    let q = BigUint::from(q);
    fz.factors
        .iter()
        .map(|(p, r)| {
            let n = p.degree().finite().expect("irreducible factors are nonzero") as u32;
            let qn: BigUint = Pow::pow(&q, n);
            Pow::pow(&qn, r - 1) * (qn - 1u32)
        })
        .fold(BigUint::one(), |a, b| a * b)
}

/// `phi(q, f)` from the factorization of `f`; independent of the unit.
pub fn totient(f: &Poly) -> Result<BigUint, TotientError> {
    degree_at_least_one(f)?;
    let fz = factor(f)?;
    Ok(totient_from_factorization(f.field().q(), &fz))
}

/// `phi(q, f)` by counting residues coprime to `f`. Exponential; test oracle only.
pub fn totient_bruteforce(f: &Poly) -> Result<BigUint, TotientError> {
    let n = degree_at_least_one(f)?;
    let q = f.field().q();
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ORACLE_LIMIT as u128 {
        return Err(TotientError::OracleOverflow { q, degree: n });
    }
    // Residues of degree < n: the zero polynomial plus every exact degree below n.
    // Zero is never coprime since gcd(f, 0) = monic(f) has degree n >= 1.
    let mut count = 0u64;
    for d in 0..n {
        for g in enumerate_polys(f.field(), d, false)? {
            if poly_gcd(f, &g)?.is_one() {
                count += 1;
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Totient data for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientReport {
    pub f: Poly,
    pub phi: BigUint,
    /// `q^deg(f) - 1`.
    pub modulus_value: BigUint,
    pub divides: bool,
    pub reducible: bool,
    pub factorization: Factorization,
}

/// Flat serializable view of a [`TotientReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotientRecord {
    pub q: u32,
    pub degree: usize,
    pub poly: String,
    pub phi: String,
    pub modulus_value: String,
    pub divides: bool,
    pub reducible: bool,
    pub factors: Vec<(String, u32)>,
}

impl TotientReport {
    pub fn record(&self) -> TotientRecord {
        TotientRecord {
            q: self.f.field().q(),
            degree: self.f.degree().finite().unwrap_or(0),
            poly: self.f.to_string(),
            phi: self.phi.to_string(),
            modulus_value: self.modulus_value.to_string(),
            divides: self.divides,
            reducible: self.reducible,
            factors: self
                .factorization
                .factors
                .iter()
                .map(|(p, r)| (p.to_string(), *r))
                .collect(),
        }
    }
}

pub fn totient_report(f: &Poly) -> Result<TotientReport, TotientError> {
    let n = degree_at_least_one(f)?;
    let fz = factor(f)?;
    let q = f.field().q();
    let phi = totient_from_factorization(q, &fz);
    let modulus_value: BigUint = Pow::pow(&BigUint::from(q), n as u32) - 1u32;
    Ok(TotientReport {
        f: f.clone(),
        divides: modulus_value.is_multiple_of(&phi),
        reducible: fz.total_count() >= 2,
        phi,
        modulus_value,
        factorization: fz,
    })
}

/// Membership in the script-L set and in the Lehmer set proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub in_script_l: bool,
    pub in_l: bool,
    pub report: TotientReport,
}

pub fn is_lehmer(f: &Poly) -> Result<Membership, TotientError> {
    let report = totient_report(f)?;
    Ok(Membership {
        in_script_l: report.divides,
        in_l: report.divides && report.reducible,
        report,
    })
}

/// Sweeps every monic polynomial of degree `1..=max_degree` and returns the
/// reducible `f` with `phi(q, f) | q^deg(f) - 1`, sorted by encoding. With
/// `expand_units`, each monic hit is multiplied by every unit of F_q.
///
/// Runs on the ambient rayon pool; the result does not depend on its size.
/// Fails with `InvariantViolated` if the result breaks squarefreeness or the
/// Schettler degree and factor-count properties.
pub fn lehmer_set(
    field: &FieldSpec,
    max_degree: usize,
    expand_units: bool,
) -> Result<Vec<Poly>, TotientError> {
    if max_degree < 1 {
        return Err(TotientError::InvalidInput);
    }
    let shards_per_degree = rayon::current_num_threads() * 4;
    let mut monic_hits = Vec::new();
    for n in 1..=max_degree {
        let shards = enumerate_polys(field, n, true)?.split(shards_per_degree);
        let hits: Vec<Vec<Poly>> = shards
            .into_par_iter()
            .map(|shard| -> Result<Vec<Poly>, TotientError> {
                let mut found = Vec::new();
                for f in shard {
                    if is_lehmer(&f)?.in_l {
                        found.push(f);
                    }
                }
                Ok(found)
            })
            .collect::<Result<_, _>>()?;
        monic_hits.extend(hits.into_iter().flatten());
    }
    check_lehmer_invariants(&monic_hits)?;
    let mut out = if expand_units {
        monic_hits
            .iter()
            .flat_map(|f| field.units().map(move |u| f.scale(u)))
            .collect()
    } else {
        monic_hits
    };
    out.sort();
    Ok(out)
}

/// floor(log2(q + 1)).
pub fn schettler_factor_floor(q: u32) -> usize {
    (u32::BITS - (q + 1).leading_zeros() - 1) as usize
}

/// Checks squarefreeness and the Schettler properties on a computed Lehmer set:
/// every irreducible factor's degree divides `deg f`, and `f` has at least
/// `floor(log2(q + 1))` distinct irreducible factors.
pub fn check_lehmer_invariants(set: &[Poly]) -> Result<(), TotientError> {
    for f in set {
        let violation = |reason: String| TotientError::InvariantViolated {
            poly: f.to_string(),
            reason,
        };
        let n = degree_at_least_one(f)?;
        let fz = factor(f)?;
        if !fz.is_squarefree() {
            return Err(violation("repeated irreducible factor".into()));
        }
        for (p, _) in &fz.factors {
            let d = p.degree().finite().unwrap_or(0);
            if n % d != 0 {
                return Err(violation(format!("factor {p} has degree {d} not dividing {n}")));
            }
        }
        let need = schettler_factor_floor(f.field().q());
        if fz.distinct_count() < need {
            return Err(violation(format!(
                "{} distinct factors, need at least {need}",
                fz.distinct_count()
            )));
        }
    }
    Ok(())
}
