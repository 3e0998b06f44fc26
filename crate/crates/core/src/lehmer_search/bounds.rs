//! The abundancy bound `h(n) < 1.28 n^(1/4)` and the totient bound
//! `phi(n) > c(n) n^(3/4)`, both checked exactly by raising to the 4th power.

use num_bigint::BigUint;
use num_rational::Ratio;

use super::SearchError;
use crate::arith;

/// `h(n) = sigma(n) / n` in lowest terms.
pub fn abundancy(n: u64) -> Result<Ratio<u64>, SearchError> {
    if n < 1 {
        return Err(SearchError::InvalidInput("abundancy needs n >= 1".into()));
    }
    Ok(Ratio::new(arith::sigma(n), n))
}

/// The piecewise constant 0.59 / 0.70 / 0.84 / 1 keyed on `ord_2(n)`.
pub fn c_factor(n: u64) -> Result<Ratio<u64>, SearchError> {
    if n < 2 {
        return Err(SearchError::InvalidInput("c(n) needs n >= 2".into()));
    }
    Ok(match arith::ord2(n) {
        1 => Ratio::new(59, 100),
        2 => Ratio::new(70, 100),
        3 => Ratio::new(84, 100),
        _ => Ratio::from_integer(1),
    })
}

/// `(sigma(n)/n)^4 < (128/100)^4 * n`, i.e. `sigma^4 * 100^4 < 128^4 * n^5`.
pub fn abundancy_bound_holds(n: u64, sigma: u64) -> bool {
    let (n, sigma) = (BigUint::from(n), BigUint::from(sigma));
    sigma.pow(4) * BigUint::from(100u32).pow(4) < BigUint::from(128u32).pow(4) * n.pow(5)
}

/// `phi(n)^4 > c(n)^4 * n^3`, with `c(n) = num/den` cross-multiplied.
pub fn totient_bound_holds(n: u64, phi: u64) -> bool {
    let c = c_factor(n).expect("totient bound is stated for n >= 2");
    let (num, den) = (BigUint::from(*c.numer()), BigUint::from(*c.denom()));
    let (n, phi) = (BigUint::from(n), BigUint::from(phi));
    phi.pow(4) * den.pow(4) > num.pow(4) * n.pow(3)
}

/// Every `n` in `1..=n_max` violating the abundancy bound.
pub fn abundancy_bound_violations(n_max: u64) -> Vec<u64> {
    let sig = arith::sigma_table(n_max as usize);
    (1..=n_max)
        .filter(|&n| !abundancy_bound_holds(n, sig[n as usize]))
        .collect()
}

/// Every `n` in `2..=n_max` violating the totient bound.
pub fn totient_bound_violations(n_max: u64) -> Vec<u64> {
    let phi = arith::phi_table(n_max as usize);
    (2..=n_max)
        .filter(|&n| !totient_bound_holds(n, phi[n as usize]))
        .collect()
}
