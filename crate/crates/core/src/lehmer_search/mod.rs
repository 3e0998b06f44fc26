//! Partition divisibility searches.
//!
//! A squarefree `f` over F_q with irreducible factors of degrees `e_1..e_s`
//! has `phi(q, f) = prod (q^{e_i} - 1)`, so membership in the Lehmer set
//! reduces to whether `prod (a^{e_i} - 1)` divides `a^n - 1` for `a = q`.
//! This module searches that condition over partitions of `n`, decomposes the
//! quotient into cyclotomic factors, and reproduces the candidate-degree
//! sieve for `a = 2`.

mod bounds;
mod partition;
mod precise;

pub use bounds::{
    abundancy, abundancy_bound_holds, abundancy_bound_violations, c_factor, totient_bound_holds,
    totient_bound_violations,
};
pub use partition::{partitions, partitions_with_largest, Partition};
pub use precise::Fixed;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::cyclo::{cyclotomic_eval, CycloError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("comparison for n = {n} ({which}) is within 1e-6 of equality at {digits} digits")]
    PrecisionAlert {
        n: u64,
        which: &'static str,
        digits: u32,
    },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

fn mersenne(a: u64, e: u32) -> BigUint {
    Pow::pow(BigUint::from(a), e) - 1u32
}

/// Whether `prod (a^{e_i} - 1)` divides `a^n - 1`, in exact arithmetic.
pub fn mersenne_divisibility(a: u64, part: &Partition) -> bool {
    let denominator: BigUint = part.parts().iter().map(|&e| mersenne(a, e)).product();
    mersenne(a, part.n()).is_multiple_of(&denominator)
}

/// Every `(a, partition)` with `a` in `bases` and `2 <= n <= n_max` passing
/// [`mersenne_divisibility`], ordered by `a`, then `n`, then colex.
pub fn classify_bases(bases: RangeInclusive<u64>, n_max: u32) -> Vec<(u64, Partition)> {
    let jobs: Vec<(u64, u32)> = bases
        .flat_map(|a| (2..=n_max).map(move |n| (a, n)))
        .collect();
    jobs.into_par_iter()
        .flat_map_iter(|(a, n)| {
            partitions(n)
                .into_iter()
                .filter(move |p| mersenne_divisibility(a, p))
                .map(move |p| (a, p))
        })
        .collect()
}

/// Exhaustive search over `3 <= a <= a_max` and all partitions of
/// `2 <= n <= n_max` into at least two parts.
pub fn classify_a_ge_3(a_max: u64, n_max: u32) -> Result<Vec<(u64, Partition)>, SearchError> {
    if a_max < 3 || n_max < 2 {
        return Err(SearchError::InvalidInput(format!(
            "need a_max >= 3 and n_max >= 2, got {a_max}, {n_max}"
        )));
    }
    Ok(classify_bases(3..=a_max, n_max))
}

/// Exponents of the cyclotomic factors of `(x^n - 1) / prod (x^{e_i} - 1)`:
/// `d -> [d | n] - #{i : d | e_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentMap {
    pub n: u32,
    pub exponents: BTreeMap<u64, i64>,
}

impl ExponentMap {
    pub fn exponent(&self, d: u64) -> i64 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    /// Divisors `d > 1` appearing in the numerator.
    pub fn numerator_set(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .filter(|&(&d, &e)| d > 1 && e > 0)
            .map(|(&d, _)| d)
            .collect()
    }

    /// Denominator factors `Phi_d` with `d >= 2`, as (d, multiplicity).
    pub fn denominator_multiset(&self) -> Vec<(u64, u32)> {
        self.exponents
            .iter()
            .filter(|&(&d, &e)| d >= 2 && e < 0)
            .map(|(&d, &e)| (d, (-e) as u32))
            .collect()
    }

    /// `prod_d Phi_d(a)^exponent(d)` as an exact rational.
    pub fn evaluate(&self, a: i64) -> Result<BigRational, SearchError> {
        let a = BigInt::from(a);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&d, &e) in &self.exponents {
            let v: BigInt = cyclotomic_eval(d, &a)?;
            if e > 0 {
                num *= Pow::pow(&v, e as u32);
            } else if e < 0 {
                den *= Pow::pow(&v, (-e) as u32);
            }
        }
        if den.is_zero() {
            return Err(SearchError::InvalidInput("cyclotomic value vanished".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

pub fn exponent_map(n: u32, part: &Partition) -> Result<ExponentMap, SearchError> {
    if part.n() != n {
        return Err(SearchError::InvalidPartition(format!(
            "{part} sums to {}, not {n}",
            part.n()
        )));
    }
    let mut exponents = BTreeMap::new();
    for d in arith::divisors(n as u64) {
        *exponents.entry(d).or_insert(0) += 1;
    }
    for &e in part.parts() {
        for d in arith::divisors(e as u64) {
            *exponents.entry(d).or_insert(0) -= 1;
        }
    }
    Ok(ExponentMap { n, exponents })
}

/// `(a^n - 1) / prod (a^{e_i} - 1)` as an exact rational.
pub fn mersenne_quotient(a: i64, part: &Partition) -> BigRational {
    let m = |e: u32| -> BigInt { Pow::pow(BigInt::from(a), e) - 1 };
    let den: BigInt = part.parts().iter().map(|&e| m(e)).product();
    BigRational::new(m(part.n()), den)
}

/// One row of a partition search report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub a: u64,
    pub n: u32,
    pub parts: Partition,
    pub divides: bool,
    pub exponent_map: BTreeMap<u64, i64>,
}

/// Every partition of `2 <= n <= n_max` for base `a`, with its divisibility flag.
pub fn search_records(a: u64, n_max: u32) -> Vec<SearchRecord> {
    (2..=n_max)
        .flat_map(|n| partitions(n).into_iter().map(move |p| (n, p)))
        .map(|(n, p)| SearchRecord {
            a,
            n,
            divides: mersenne_divisibility(a, &p),
            exponent_map: exponent_map(n, &p).expect("partition of n").exponents,
            parts: p,
        })
        .collect()
}

/// The two candidate-degree sets of the `a = 2` size argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSets {
    pub coarse: Vec<u64>,
    pub refined: Vec<u64>,
}

/// Default working precision for [`candidate_degrees`], in decimal digits.
pub const CANDIDATE_DIGITS: u32 = 60;

/// Evaluates both candidate inequalities for every `7 <= n <= n_max` at
/// [`CANDIDATE_DIGITS`] digits.
pub fn candidate_degrees(n_max: u64) -> Result<CandidateSets, SearchError> {
    candidate_degrees_with_precision(n_max, CANDIDATE_DIGITS)
}

/// As [`candidate_degrees`] at a chosen precision (at least 30 digits). Any
/// comparison whose two sides differ by less than `1e-6` raises
/// `PrecisionAlert` instead of being decided.
pub fn candidate_degrees_with_precision(n_max: u64, digits: u32) -> Result<CandidateSets, SearchError> {
    if n_max < 7 {
        return Err(SearchError::InvalidInput(format!("need n_max >= 7, got {n_max}")));
    }
    if digits < 30 {
        return Err(SearchError::InvalidInput(format!("need at least 30 digits, got {digits}")));
    }
    let ln2 = Fixed::ln(2, digits);
    let ln4 = Fixed::ln(4, digits);
    let ln4_3 = &ln4 - &Fixed::ln(3, digits);
    let one = Fixed::from_int(1, digits);
    let half = Fixed::from_ratio(1, 2, digits);
    let sigma = arith::sigma_table(n_max as usize);
    let phi = arith::phi_table(n_max as usize);

    let mut coarse = Vec::new();
    let mut refined = Vec::new();
    for n in 7..=n_max {
        let even = n % 2 == 0;
        // log 4 + d log(4/3) - 1 - d/2 - 1/n, with d = 1 for even n.
        let mut base = &ln4 - &one;
        if even {
            base = &(&base + &ln4_3) - &half;
        }
        base = &base - &Fixed::from_ratio(1, n as i64, digits);
        let ln_2n = Fixed::ln(2 * n, digits);

        let c = c_factor(n)?;
        let c = Fixed::from_ratio(*c.numer() as i64, *c.denom() as i64, digits);
        let coarse_lhs = &base
            + &(&Fixed::from_ratio(128, 100, digits) * &Fixed::fourth_root(n, 1, digits));
        let n34 = Fixed::fourth_root(n.pow(3), 1, digits);
        let coarse_rhs = &(&(&c * &ln2) * &n34) - &ln_2n;
        if decide(&coarse_lhs, &coarse_rhs, n, "coarse")? {
            coarse.push(n);
        }

        let h = Fixed::from_ratio(sigma[n as usize] as i64, n as i64, digits);
        let refined_lhs = &base + &h;
        let refined_rhs = &(&Fixed::from_int(phi[n as usize] as i64, digits) * &ln2) - &ln_2n;
        if decide(&refined_lhs, &refined_rhs, n, "refined")? {
            refined.push(n);
        }
    }
    Ok(CandidateSets { coarse, refined })
}

/// `lhs > rhs`, refusing to decide within `1e-6`.
fn decide(lhs: &Fixed, rhs: &Fixed, n: u64, which: &'static str) -> Result<bool, SearchError> {
    let gap = lhs - rhs;
    if gap.below_ten_pow(6) {
        return Err(SearchError::PrecisionAlert {
            n,
            which,
            digits: lhs.digits(),
        });
    }
    Ok(!gap.is_negative())
}

/// `u_1 <= 2` and `d * u_d <= 2^d - 1` for every `d >= 2`, where `u_d` counts
/// the parts equal to `d`.
pub fn satisfies_u_constraints(part: &Partition) -> bool {
    let parts = part.parts();
    let mut i = 0;
    while i < parts.len() {
        let d = parts[i];
        let u = parts[i..].iter().take_while(|&&e| e == d).count();
        let ok = if d == 1 {
            u <= 2
        } else {
            d >= 64 || (d as u128) * (u as u128) < (1u128 << d)
        };
        if !ok {
            return false;
        }
        i += u;
    }
    true
}

/// Every partition of `2 <= n <= n_max` with at least two parts that meets the
/// `u_d` constraints and passes [`mersenne_divisibility`] with `a = 2`.
pub fn verify_prop36(n_max: u32) -> Result<Vec<(u32, Partition)>, SearchError> {
    if n_max < 2 {
        return Err(SearchError::InvalidInput(format!("need n_max >= 2, got {n_max}")));
    }
    let found: Vec<Vec<(u32, Partition)>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            partitions(n)
                .into_iter()
                .filter(|p| satisfies_u_constraints(p) && mersenne_divisibility(2, p))
                .map(|p| (n, p))
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn shown(v: &[(u64, Partition)]) -> Vec<String> {
        v.iter().map(|(a, p)| format!("{a}:{p}")).collect()
    }

    #[test]
    fn divisibility_examples() {
        assert!(mersenne_divisibility(3, &part(&[1, 1])));
        assert!(mersenne_divisibility(3, &part(&[1, 1, 1, 1])));
        assert!(mersenne_divisibility(2, &part(&[1, 2, 3])));
        assert!(!mersenne_divisibility(4, &part(&[1, 1])));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(shown(&classify_a_ge_3(8, 10).unwrap()), ["3:(1,1)", "3:(1,1,1,1)"]);
        assert_eq!(shown(&classify_a_ge_3(3, 2).unwrap()), ["3:(1,1)"]);
        assert!(classify_bases(4..=4, 3).is_empty());
        assert!(classify_a_ge_3(2, 5).is_err());
    }

    #[test]
    fn exponent_map_examples() {
        let m = exponent_map(4, &part(&[1, 1, 2])).unwrap();
        assert_eq!(m.exponents, BTreeMap::from([(1, -2), (2, 0), (4, 1)]));
        let m = exponent_map(2, &part(&[1, 1])).unwrap();
        assert_eq!(m.exponents, BTreeMap::from([(1, -1), (2, 1)]));
        let m = exponent_map(6, &part(&[1, 2, 3])).unwrap();
        assert_eq!(m.exponents, BTreeMap::from([(1, -2), (2, 0), (3, 0), (6, 1)]));
        assert_eq!(m.numerator_set(), vec![6]);
        assert!(m.denominator_multiset().is_empty());
        assert_eq!(m.evaluate(2).unwrap(), BigRational::from_integer(3.into()));
        let m = exponent_map(5, &part(&[2, 3])).unwrap();
        assert_eq!(m.denominator_multiset(), vec![(2, 1), (3, 1)]);
        assert!(exponent_map(5, &part(&[1, 1])).is_err());
    }

    #[test]
    fn exponent_map_consistency() {
        for n in 2..=20u32 {
            for p in partitions(n) {
                let m = exponent_map(n, &p).unwrap();
                assert_eq!(m.exponent(1), 1 - p.s() as i64);
                for a in [2i64, 3, 4] {
                    let value = m.evaluate(a).unwrap();
                    assert_eq!(value, mersenne_quotient(a, &p), "n={n} {p} a={a}");
                    assert_eq!(value.is_integer(), mersenne_divisibility(a as u64, &p));
                }
            }
        }
    }

    #[test]
    fn prop36_examples() {
        let show = |v: Vec<(u32, Partition)>| -> Vec<String> {
            v.into_iter().map(|(n, p)| format!("{n}:{p}")).collect()
        };
        assert_eq!(show(verify_prop36(2).unwrap()), ["2:(1,1)"]);
        assert_eq!(show(verify_prop36(5).unwrap()), ["2:(1,1)", "4:(1,1,2)"]);
        assert_eq!(
            show(verify_prop36(12).unwrap()),
            ["2:(1,1)", "4:(1,1,2)", "6:(1,2,3)"]
        );
    }

    #[test]
    fn u_constraints() {
        assert!(satisfies_u_constraints(&part(&[1, 1, 2])));
        assert!(!satisfies_u_constraints(&part(&[1, 1, 1])));
        assert!(!satisfies_u_constraints(&part(&[2, 2])));
        assert!(satisfies_u_constraints(&part(&[3, 3])));
        assert!(!satisfies_u_constraints(&part(&[3, 3, 3])));
        assert!(satisfies_u_constraints(&part(&[1, 70])));
    }

    #[test]
    fn base_two_dividing_parts_divide_n_with_gcd_one() {
        for n in 2..=16u32 {
            for p in partitions(n) {
                if mersenne_divisibility(2, &p) {
                    assert!(p.parts().iter().all(|&e| n % e == 0), "{p}");
                    let g = p.parts().iter().fold(0u32, |g, &e| g.gcd(&e));
                    assert_eq!(g, 1, "{p}");
                }
            }
        }
    }

    #[test]
    fn candidate_sets_small_range() {
        let sets = candidate_degrees_with_precision(30, 30).unwrap();
        assert_eq!(sets.refined, vec![8, 9, 10, 12, 14, 18, 20, 24, 30]);
        assert!(sets.coarse.starts_with(&[7, 8, 9, 10, 11, 12]));
        assert!(candidate_degrees(6).is_err());
        assert!(candidate_degrees_with_precision(30, 20).is_err());
    }

    #[test]
    fn search_record_shape() {
        let recs = search_records(3, 4);
        assert_eq!(recs.len(), 1 + 2 + 4);
        let hit = recs.iter().find(|r| r.parts == part(&[1, 1])).unwrap();
        assert!(hit.divides);
        assert_eq!(hit.exponent_map, BTreeMap::from([(1, -1), (2, 1)]));
    }
}
