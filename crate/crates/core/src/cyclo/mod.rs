//! Integer cyclotomic polynomials, their values, p-adic valuations and
//! Zsigmondy primitive prime divisors.
//!
//! `Phi_n` is built from `x^n - 1 = prod_{d | n} Phi_d(x)` by exact division;
//! no complex roots of unity are ever formed.

mod factoring;
mod intpoly;
mod zsigmondy;

pub use factoring::{factor_with_budget, is_probable_prime, Factored, FactoringBudget};
pub use intpoly::IntPoly;
pub use zsigmondy::{zsigmondy, ZsigmondyException, ZsigmondyResult};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ord_p(0) is undefined")]
    UndefinedValuation,
    #[error("{bits}-bit value exceeds the factoring budget of {max_bits} bits")]
    FactoringBudgetExceeded { bits: u64, max_bits: u64 },
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The n-th cyclotomic polynomial, memoized.
pub fn cyclotomic(n: u64) -> Result<Arc<IntPoly>, CycloError> {
    if n < 1 {
        return Err(CycloError::InvalidInput("cyclotomic index must be positive".into()));
    }
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let lower = arith::divisors(n)
        .into_iter()
        .filter(|&d| d < n)
        .map(cyclotomic)
        .collect::<Result<Vec<_>, _>>()?;
    let denominator = lower
        .iter()
        .fold(IntPoly::from_i64(&[1]), |acc, p| acc.mul(p));
    let phi = IntPoly::x_pow_minus_one(n as usize)
        .exact_div_monic(&denominator)
        .expect("x^n - 1 is divisible by the product of its proper cyclotomic factors");
    debug_assert_eq!(phi.degree(), Some(arith::euler_phi(n) as usize));
    let phi = Arc::new(phi);
    Ok(cyclotomic_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(phi)
        .clone())
}

/// `Phi_n(a)`.
pub fn cyclotomic_eval(n: u64, a: &BigInt) -> Result<BigInt, CycloError> {
    Ok(cyclotomic(n)?.eval(a))
}

/// Homogenized value `b^phi(n) * Phi_n(a / b)`.
pub fn cyclotomic_eval_homogeneous(n: u64, a: &BigInt, b: &BigInt) -> Result<BigInt, CycloError> {
    Ok(cyclotomic(n)?.eval_homogeneous(a, b))
}

/// Largest `v` with `p^v | m`.
pub fn ord_p(p: u64, m: &BigInt) -> Result<u64, CycloError> {
    if !arith::is_prime(p) {
        return Err(CycloError::InvalidInput(format!("{p} is not prime")));
    }
    if m.is_zero() {
        return Err(CycloError::UndefinedValuation);
    }
    let p = BigInt::from(p);
    let mut m = m.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Ok(v);
        }
        m = quot;
        v += 1;
    }
}
