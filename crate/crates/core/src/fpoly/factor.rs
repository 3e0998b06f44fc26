use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Signed};

use super::{enumerate_polys, Degree, Poly, PolyError};
use crate::arith;
use crate::ffield::{FieldElement, FieldSpec};

/// Unit times a sorted list of (monic irreducible, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &FieldSpec) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, r)| {
                (0..*r).fold(acc, |acc, _| &acc * p)
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, r)| r == 1)
    }

    /// Number of distinct irreducible factors.
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn total_count(&self) -> u32 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }
}

type SieveKey = (u32, u32, usize);

fn sieve_cache() -> &'static Mutex<HashMap<SieveKey, Arc<Vec<Poly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<SieveKey, Arc<Vec<Poly>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All monic irreducibles of degree `d` over the field, in encoding order.
///
/// Each (q, d) list is sieved once and shared. A monic polynomial of degree
/// `d` is kept when no irreducible of degree at most `d / 2` divides it.
pub fn irreducibles(field: &FieldSpec, d: usize) -> Arc<Vec<Poly>> {
    assert!(d >= 1, "irreducible degree must be positive");
    let key = (field.p(), field.k(), d);
    if let Some(hit) = sieve_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let lower: Vec<Arc<Vec<Poly>>> = (1..=d / 2).map(|e| irreducibles(field, e)).collect();
    let list: Vec<Poly> = enumerate_polys(field, d, true)
        .expect("sieve degree fits in an enumeration index")
        .filter(|f| {
            lower
                .iter()
                .flat_map(|l| l.iter())
                .all(|g| !f.is_divisible_by(g).expect("same field"))
        })
        .collect();
    let list = Arc::new(list);
    sieve_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(list)
        .clone()
}

/// Exact number of monic irreducibles of degree `d` over F_q, by the necklace
/// formula `(1/d) * sum_{e | d} mu(d/e) q^e`.
pub fn irreducible_count(q: u64, d: u32) -> BigUint {
    assert!(q >= 2 && d >= 1, "irreducible_count needs q >= 2 and d >= 1");
    let q = BigInt::from(q);
    let total: BigInt = arith::divisors(d as u64)
        .into_iter()
        .map(|e| BigInt::from(arith::mobius(d as u64 / e)) * Pow::pow(&q, e as u32))
        .sum();
    debug_assert!(!total.is_negative());
    (total / BigInt::from(d))
        .to_biguint()
        .expect("necklace count is nonnegative")
}

/// True iff `f` has no monic irreducible factor of degree at most `deg(f)/2`.
pub fn is_irreducible(f: &Poly) -> Result<bool, PolyError> {
    let deg = match f.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => return Err(PolyError::InvalidInput),
    };
    for e in 1..=deg / 2 {
        for g in irreducibles(f.field(), e).iter() {
            if f.is_divisible_by(g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Canonical factorization by trial division against the irreducible sieve.
pub fn factor(f: &Poly) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::CannotFactorZero);
    }
    let field = f.field();
    let (unit, mut rest) = f.monic_parts();
    let mut factors = Vec::new();
    let mut e = 1;
    while let Some(deg) = rest.degree().finite() {
        if 2 * e > deg {
            break;
        }
        for g in irreducibles(field, e).iter() {
            let mut mult = 0;
            loop {
                let (quot, rem) = rest.div_rem(g)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                factors.push((g.clone(), mult));
            }
        }
        e += 1;
    }
    if rest.degree() >= Degree::Finite(1) {
        factors.push((rest, 1));
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Sum of `d * irreducible_count(q, d)` over the divisors of `n`; equals `q^n`.
#[cfg(test)]
pub(crate) fn degree_identity_lhs(q: u64, n: u32) -> BigUint {
    arith::divisors(n as u64)
        .into_iter()
        .map(|d| BigUint::from(d) * irreducible_count(q, d as u32))
        .fold(BigUint::from(0u32), |a, b| a + b)
}
