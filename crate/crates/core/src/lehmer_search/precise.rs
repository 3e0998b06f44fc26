//! Decimal fixed-point reals over big integers, enough for logarithms and
//! fourth roots of small rationals at a chosen number of digits.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

/// A real number `value / 10^digits`; operands must share `digits`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed {
    value: BigInt,
    digits: u32,
}

fn scale(digits: u32) -> BigInt {
    Pow::pow(BigInt::from(10), digits)
}

impl Fixed {
    pub fn from_int(n: i64, digits: u32) -> Self {
        Fixed {
            value: BigInt::from(n) * scale(digits),
            digits,
        }
    }

    /// `num / den`, truncated toward negative infinity.
    pub fn from_ratio(num: i64, den: i64, digits: u32) -> Self {
        assert!(den != 0, "zero denominator");
        let value = (BigInt::from(num) * scale(digits)).div_floor(&BigInt::from(den));
        Fixed { value, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn abs(&self) -> Self {
        Fixed {
            value: self.value.abs(),
            digits: self.digits,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Natural logarithm of a positive integer.
    pub fn ln(m: u64, digits: u32) -> Self {
        assert!(m >= 1, "ln needs a positive argument");
        // m = 2^k * r with r in [1, 2); ln r = 2 atanh((m - 2^k) / (m + 2^k)).
        let k = 63 - m.leading_zeros();
        let pow = 1u128 << k;
        let ln_r = atanh_ratio(m as u128 - pow, m as u128 + pow, digits);
        let ln2 = atanh_ratio(1, 3, digits);
        Fixed {
            value: (ln_r.value + ln2.value * BigInt::from(k)) * 2,
            digits,
        }
    }

    /// `(num / den)^(1/4)`, truncated.
    pub fn fourth_root(num: u64, den: u64, digits: u32) -> Self {
        let scaled = BigUint::from(num) * Pow::pow(BigUint::from(10u32), 4 * digits) / BigUint::from(den);
        Fixed {
            value: BigInt::from_biguint(Sign::Plus, scaled.nth_root(4)),
            digits,
        }
    }

    fn check(&self, other: &Fixed) {
        assert_eq!(self.digits, other.digits, "mixed fixed-point precisions");
    }

    /// True when `|self| < 10^-exp`.
    pub fn below_ten_pow(&self, exp: u32) -> bool {
        assert!(exp <= self.digits);
        self.value.abs() < scale(self.digits - exp)
    }

    /// Rounded decimal rendering, for diagnostics.
    pub fn to_f64(&self) -> f64 {
        let s = scale(self.digits);
        let (q, r) = self.value.div_mod_floor(&s);
        let q: f64 = q.to_string().parse().unwrap_or(f64::NAN);
        let r: f64 = r.to_string().parse().unwrap_or(f64::NAN);
        q + r / 10f64.powi(self.digits as i32)
    }
}

/// atanh(num/den) for 0 <= num < den, by its alternating-free power series.
fn atanh_ratio(num: u128, den: u128, digits: u32) -> Fixed {
    let s = scale(digits + 10);
    let (num, den) = (BigInt::from(num), BigInt::from(den));
    let den2 = &den * &den;
    let mut term = &s * &num / &den; // z^(2i+1) scaled
    let z2num = &num * &num;
    let mut sum = BigInt::zero();
    let mut i = 0u32;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * i + 1);
        term = term * &z2num / &den2;
        i += 1;
    }
    // Ten guard digits absorb the per-term truncation.
    Fixed {
        value: sum / scale(10),
        digits,
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        self.check(rhs);
        Fixed {
            value: &self.value + &rhs.value,
            digits: self.digits,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        self.check(rhs);
        Fixed {
            value: &self.value - &rhs.value,
            digits: self.digits,
        }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            value: -&self.value,
            digits: self.digits,
        }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        self.check(rhs);
        Fixed {
            value: (&self.value * &rhs.value).div_floor(&scale(self.digits)),
            digits: self.digits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // ln 2, ln 3, ln 10 to 40 places.
    const LN2: &str = "0.6931471805599453094172321214581765680755";
    const LN3: &str = "1.0986122886681096913952452369225257046475";
    const LN10: &str = "2.3025850929940456840179914546843642076011";

    fn digits_of(x: &Fixed) -> String {
        let s = scale(x.digits);
        let (q, r) = x.value.div_mod_floor(&s);
        format!("{q}.{:0>width$}", r.to_string(), width = x.digits as usize)
    }

    fn agree(x: &Fixed, reference: &str, places: usize) {
        let got = digits_of(x);
        let dot = reference.find('.').unwrap();
        assert_eq!(&got[..dot + 1 + places], &reference[..dot + 1 + places]);
    }

    #[test]
    fn logarithm_constants() {
        agree(&Fixed::ln(2, 45), LN2, 38);
        agree(&Fixed::ln(3, 45), LN3, 38);
        agree(&Fixed::ln(10, 45), LN10, 38);
        assert!(Fixed::ln(1, 30).value.is_zero());
    }

    #[test]
    fn logarithm_is_additive() {
        for (a, b) in [(2u64, 3u64), (7, 11), (13, 400), (99, 101)] {
            let lhs = Fixed::ln(a * b, 50);
            let rhs = &Fixed::ln(a, 50) + &Fixed::ln(b, 50);
            assert!((&lhs - &rhs).below_ten_pow(45), "{a}*{b}");
        }
    }

    #[test]
    fn fourth_roots() {
        let r = Fixed::fourth_root(16, 1, 30);
        assert_eq!(r, Fixed::from_int(2, 30));
        let r = Fixed::fourth_root(81, 16, 30);
        assert_eq!(r, Fixed::from_ratio(3, 2, 30));
        let x = Fixed::fourth_root(7, 1, 40);
        let x4 = &(&x * &x) * &(&x * &x);
        assert!((&x4 - &Fixed::from_int(7, 40)).below_ten_pow(35));
    }

    #[test]
    fn ratio_and_sign() {
        let third = Fixed::from_ratio(-1, 3, 10);
        assert!(third.is_negative());
        assert!((third.to_f64() + 1.0 / 3.0).abs() < 1e-9);
    }
}
