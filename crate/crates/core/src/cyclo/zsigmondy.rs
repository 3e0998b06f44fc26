use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;

use super::{factor_with_budget, CycloError, FactoringBudget};

/// The two exceptional families where `a^n - b^n` has no primitive prime divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZsigmondyException {
    /// `(a, b, n) = (2, 1, 6)`.
    N6,
    /// `n = 2` and `a + b` a power of two.
    PowerOfTwoSum,
}

/// Primitive and algebraic prime divisors of `a^n - b^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZsigmondyResult {
    pub a: u64,
    pub b: u64,
    pub n: u32,
    /// `a^n - b^n`.
    pub value: BigUint,
    /// Primes dividing the value and no `a^k - b^k` with `k < n`, ascending.
    pub primitive_primes: Vec<BigUint>,
    /// Primes dividing the value and some earlier `a^k - b^k`, ascending.
    pub algebraic_primes: Vec<BigUint>,
    pub exception: Option<ZsigmondyException>,
    /// Product of `p^ord_p(value)` over the primitive primes.
    pub primitive_part: BigUint,
    /// Composite piece of the primitive part left unsplit by the factoring budget.
    pub unresolved_primitive: Option<BigUint>,
    /// Composite piece of the algebraic part left unsplit by the factoring budget.
    pub unresolved_algebraic: Option<BigUint>,
}

impl ZsigmondyResult {
    /// True when some prime is primitive; decided without full factorization.
    pub fn has_primitive(&self) -> bool {
        self.primitive_part > BigUint::one()
    }
}

/// The exception that applies to `(a, b, n)` by the classical table, if any.
pub fn expected_exception(a: u64, b: u64, n: u32) -> Option<ZsigmondyException> {
    if (a, b, n) == (2, 1, 6) {
        Some(ZsigmondyException::N6)
    } else if n == 2 && (a + b).is_power_of_two() {
        Some(ZsigmondyException::PowerOfTwoSum)
    } else {
        None
    }
}

/// True iff prime `p` divides `a^n - b^n` but no `a^k - b^k` with `1 <= k < n`.
pub fn is_primitive_divisor(p: &BigUint, a: u64, b: u64, n: u32) -> bool {
    let (am, bm) = (BigUint::from(a) % p, BigUint::from(b) % p);
    let mut ak = am.clone();
    let mut bk = bm.clone();
    for _ in 1..n {
        if ak == bk {
            return false;
        }
        ak = ak * &am % p;
        bk = bk * &bm % p;
    }
    ak == bk
}

/// Factors `a^n - b^n` within `budget` and splits its primes into primitive and
/// algebraic ones.
///
/// The primitive part is computed exactly by stripping from `a^n - b^n` every
/// prime shared with some `a^d - b^d`, `d` a proper divisor of `n`; a common
/// prime of `a^n - b^n` and `a^k - b^k` always divides `a^gcd(n,k) - b^gcd(n,k)`.
/// The listed primes are then classified one by one against the definition.
pub fn zsigmondy(
    a: u64,
    b: u64,
    n: u32,
    budget: &FactoringBudget,
) -> Result<ZsigmondyResult, CycloError> {
    if !(a > b && b > 0) {
        return Err(CycloError::InvalidInput(format!("need a > b > 0, got a={a}, b={b}")));
    }
    if a.gcd(&b) != 1 {
        return Err(CycloError::InvalidInput(format!("gcd({a}, {b}) != 1")));
    }
    if n < 2 {
        return Err(CycloError::InvalidInput(format!("need n >= 2, got {n}")));
    }
    let power = |base: u64, e: u32| -> BigUint { Pow::pow(BigUint::from(base), e) };
    // Cheap size check before the full power is formed.
    let approx_bits = (64 - a.leading_zeros()) as u64 * n as u64;
    if approx_bits > budget.max_bits + 64 {
        return Err(CycloError::FactoringBudgetExceeded {
            bits: approx_bits,
            max_bits: budget.max_bits,
        });
    }
    let value = power(a, n) - power(b, n);
    if value.bits() > budget.max_bits {
        return Err(CycloError::FactoringBudgetExceeded {
            bits: value.bits(),
            max_bits: budget.max_bits,
        });
    }

    let mut primitive_part = value.clone();
    for d in crate::arith::divisors(n as u64) {
        if d == n as u64 {
            continue;
        }
        let earlier = power(a, d as u32) - power(b, d as u32);
        loop {
            let g = primitive_part.gcd(&earlier);
            if g.is_one() {
                break;
            }
            primitive_part /= g;
        }
    }
    let algebraic_part = &value / &primitive_part;

    let mut primitive_primes = Vec::new();
    let mut algebraic_primes = Vec::new();
    let prim = factor_with_budget(&primitive_part, budget);
    let alg = factor_with_budget(&algebraic_part, budget);
    for (p, _) in prim.primes.iter().chain(&alg.primes) {
        if is_primitive_divisor(p, a, b, n) {
            primitive_primes.push(p.clone());
        } else {
            algebraic_primes.push(p.clone());
        }
    }
    primitive_primes.sort();
    algebraic_primes.sort();

    Ok(ZsigmondyResult {
        a,
        b,
        n,
        value,
        primitive_primes,
        algebraic_primes,
        exception: expected_exception(a, b, n),
        primitive_part,
        unresolved_primitive: prim.unresolved,
        unresolved_algebraic: alg.unresolved,
    })
}
