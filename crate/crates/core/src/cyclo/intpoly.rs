use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense polynomial over the integers, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return self.coeffs.is_empty().then(|| self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + dlen - 1].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| IntPoly::new(quot))
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Homogeneous evaluation `b^deg * P(a / b)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let Some(deg) = self.degree() else {
            return BigInt::zero();
        };
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::one();
        // Walk from the top coefficient down so b's power grows with i.
        let mut a_pows = Vec::with_capacity(deg + 1);
        let mut ap = BigInt::one();
        for _ in 0..=deg {
            a_pows.push(ap.clone());
            ap *= a;
        }
        for i in (0..=deg).rev() {
            acc += &self.coeffs[i] * &a_pows[i] * &b_pow;
            b_pow *= b;
        }
        acc
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Sparse text such as `x^4-x^2+1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            first = false;
            let show_mag = e == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 if show_mag => f.write_str("*x")?,
                1 => f.write_str("x")?,
                _ if show_mag => write!(f, "*x^{e}")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}
