//! Budgeted factoring of arbitrary-precision integers: trial division by the
//! primes below a limit, then a strong-probable-prime test on the cofactor.
//! Cofactors that are composite with every prime factor above the limit are
//! reported as unresolved rather than split.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Limits on how much work factoring may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoringBudget {
    /// Inputs wider than this many bits are refused outright.
    pub max_bits: u64,
    /// Trial division stops at this prime bound.
    pub trial_limit: u64,
}

impl Default for FactoringBudget {
    fn default() -> Self {
        FactoringBudget {
            max_bits: 1024,
            trial_limit: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factored {
    /// Primes (proven by trial division or strong probable primes) with exponents.
    pub primes: Vec<(BigUint, u32)>,
    /// Composite cofactor with no prime factor below the trial limit.
    pub unresolved: Option<BigUint>,
}

fn primes_below(limit: u64) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&limit) {
        return hit.clone();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    let primes = Arc::new(primes);
    cache.lock().unwrap().insert(limit, primes.clone());
    primes
}

const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty prime bases. Deterministic below
/// 3.3e24; a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return crate::arith::is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> r;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors `n >= 1` within the trial limit of `budget`.
pub fn factor_with_budget(n: &BigUint, budget: &FactoringBudget) -> Factored {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Factored::default();
    let mut rest = n.clone();
    for &p in primes_below(budget.trial_limit).iter() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (quot, rem) = rest.div_rem(&pb);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            e += 1;
        }
        if e > 0 {
            out.primes.push((pb, e));
        }
    }
    if rest.is_one() {
        return out;
    }
    let limit = BigUint::from(budget.trial_limit);
    if rest <= &limit * &limit || is_probable_prime(&rest) {
        out.primes.push((rest, 1));
    } else {
        out.unresolved = Some(rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probable_primes() {
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_probable_prime(&m127));
        let m67 = (BigUint::one() << 67) - 1u32;
        assert!(!is_probable_prime(&m67));
        assert!(!is_probable_prime(&BigUint::from(1u32)));
        assert!(is_probable_prime(&BigUint::from(2u32)));
    }

    #[test]
    fn budgeted_factoring() {
        let budget = FactoringBudget::default();
        let f = factor_with_budget(&BigUint::from(2047u32), &budget);
        assert_eq!(f.primes, vec![(23u32.into(), 1), (89u32.into(), 1)]);
        assert!(f.unresolved.is_none());
        let f = factor_with_budget(&BigUint::from(1u32), &budget);
        assert!(f.primes.is_empty() && f.unresolved.is_none());
        // Two primes above a tiny trial limit stay unresolved.
        let tiny = FactoringBudget {
            max_bits: 1024,
            trial_limit: 100,
        };
        let n = BigUint::from(1009u32 * 1013u32) * 4u32;
        let f = factor_with_budget(&n, &tiny);
        assert_eq!(f.primes, vec![(2u32.into(), 2)]);
        assert_eq!(f.unresolved, Some(BigUint::from(1009u32 * 1013u32)));
        // M67 = 193707721 * 761838257287.
        let m67 = (BigUint::one() << 67) - 1u32;
        let f = factor_with_budget(&m67, &budget);
        assert!(f.unresolved.is_some());
    }
}
