//! Univariate polynomials over F_q.

mod enumerate;
mod factor;

pub use enumerate::{enumerate_polys, PolyRange};
pub use factor::{factor, irreducible_count, irreducibles, is_irreducible, Factorization};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::ffield::{split_signed_terms, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,
    #[error("modulus must have degree at least 1")]
    InvalidModulus,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation requires a polynomial of degree at least 1")]
    InvalidInput,
    #[error("cannot factor the zero polynomial")]
    CannotFactorZero,
    #[error("enumeration of degree {degree} over F_{q} does not fit in 128-bit indices")]
    EnumerationTooLarge { q: u32, degree: usize },
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Degree of a polynomial; the zero polynomial has degree `NegInf`, which
/// compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over F_q in canonical form: coefficients lowest degree first,
/// no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from prime-field residues, lowest degree first.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &FieldSpec) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, e: usize) -> Self {
        let mut coeffs = vec![field.zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: FieldElement) -> Self {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Splits `self` into (leading coefficient, monic part). Zero maps to itself
    /// with unit zero.
    pub fn monic_parts(&self) -> (FieldElement, Poly) {
        match self.leading() {
            None => (FieldElement::ZERO, self.clone()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                (lc, self.scale(inv))
            }
        }
    }

    pub fn monic(&self) -> Poly {
        self.monic_parts().1
    }

    /// Integer encoding `sum enc(c_i) q^i`, the canonical sort key.
    pub fn encoding(&self) -> BigUint {
        let q = BigUint::from(self.field.q());
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * &q + c.encoding())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    fn assert_field(&self, other: &Poly) {
        if let Err(e) = self.check_field(other) {
            panic!("{e}");
        }
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check_field(divisor)?;
        let f = &self.field;
        let Some(lead) = divisor.leading() else {
            return Err(PolyError::DivisionByZero);
        };
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(lead)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let c = f.mul(top, lead_inv);
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
            }
        }
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// True when `divisor` divides `self` exactly.
    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool, PolyError> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Canonical descending-degree text, e.g. `x^3+x+1` or `(t+1)*x^2+t*x+1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the sparse text grammar: terms `c*x^e`, `x^e`, `x`, `c` joined by
    /// `+` (or `-`), in any order; like terms are summed.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Poly, PolyError> {
        let err = |reason: String| PolyError::Parse {
            text: text.to_string(),
            reason,
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for (negative, term) in split_signed_terms(&s).map_err(err)? {
            let (c, e) = parse_term(field, term).map_err(err)?;
            let c = if negative { field.neg(c) } else { c };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, field.zero());
            }
            coeffs[e] = field.add(coeffs[e], c);
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }
}

fn parse_term(field: &FieldSpec, term: &str) -> Result<(FieldElement, usize), String> {
    let parse_power = |v: &str| -> Result<usize, String> {
        let rest = v.strip_prefix('x').ok_or_else(|| format!("bad term {v:?}"))?;
        if rest.is_empty() {
            return Ok(1);
        }
        rest.strip_prefix('^')
            .and_then(|x| x.parse::<usize>().ok())
            .ok_or_else(|| format!("bad exponent in {v:?}"))
    };
    let elem = |c: &str| field.parse_element(c).map_err(|e| e.to_string());
    if let Some((c, v)) = term.rsplit_once('*') {
        if v.starts_with('x') {
            return Ok((elem(c)?, parse_power(v)?));
        }
    }
    if term.starts_with('x') {
        return Ok((field.one(), parse_power(term)?));
    }
    Ok((elem(term)?, 0))
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = &self.field;
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.write_str("+")?;
            }
            first = false;
            let text = f.format_element(c);
            let coef = if text.contains('+') {
                format!("({text})")
            } else {
                text
            };
            match (e, c.is_one()) {
                (0, _) => write!(out, "{coef}")?,
                (1, true) => out.write_str("x")?,
                (1, false) => write!(out, "{coef}*x")?,
                (_, true) => write!(out, "x^{e}")?,
                (_, false) => write!(out, "{coef}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p().hash(state);
        self.field.k().hash(state);
        self.coeffs.hash(state);
    }
}

/// Orders by the integer encoding: degree first, then coefficients from the
/// top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p(), self.field.k())
            .cmp(&(other.field.p(), other.field.k()))
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

/// Monic greatest common divisor; `gcd(f, 0)` is the monic normalization of f.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    f.check_field(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::UndefinedGcd);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = std::mem::replace(&mut b, r);
    }
    Ok(a.monic())
}

/// `g^e mod f` by square-and-multiply.
pub fn poly_powmod(g: &Poly, e: &BigUint, f: &Poly) -> Result<Poly, PolyError> {
    g.check_field(f)?;
    match f.degree() {
        Degree::Finite(d) if d >= 1 => {}
        _ => return Err(PolyError::InvalidModulus),
    }
    let mut base = g.rem(f)?;
    let mut acc = Poly::one(f.field());
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = (&acc * &base).rem(f)?;
        }
        if i + 1 < e.bits() {
            base = (&base * &base).rem(f)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_make;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        field_make(2, 1).unwrap()
    }

    fn parse(field: &FieldSpec, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    #[test]
    fn zero_has_neg_inf_degree() {
        let f = f2();
        let z = Poly::zero(&f);
        assert_eq!(z.degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(Poly::one(&f).degree(), Degree::Finite(0));
        assert_eq!(Poly::from_ints(&f, &[1, 0, 2, 0]).degree(), Degree::Finite(0));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        let g = poly_gcd(&parse(&f, "x^2+x"), &parse(&f, "x^2+1")).unwrap();
        assert_eq!(g, parse(&f, "x+1"));
        let g = poly_gcd(&parse(&f, "x^3+x+1"), &parse(&f, "x")).unwrap();
        assert!(g.is_one());
        let f3 = field_make(3, 1).unwrap();
        let h = parse(&f3, "2*x^2+x");
        assert_eq!(poly_gcd(&h, &Poly::zero(&f3)).unwrap(), h.monic());
        assert_eq!(
            poly_gcd(&Poly::zero(&f3), &Poly::zero(&f3)),
            Err(PolyError::UndefinedGcd)
        );
        assert!(matches!(
            poly_gcd(&h, &Poly::one(&f)),
            Err(PolyError::FieldMismatch(..))
        ));
    }

    #[test]
    fn powmod_examples() {
        let f = f2();
        let x = Poly::x(&f);
        let m = parse(&f, "x^2+x+1");
        assert!(poly_powmod(&x, &3u32.into(), &m).unwrap().is_one());
        assert!(poly_powmod(&parse(&f, "x^5+x"), &0u32.into(), &m).unwrap().is_one());
        assert!(poly_powmod(&x, &2u32.into(), &parse(&f, "x^2")).unwrap().is_zero());
        assert_eq!(
            poly_powmod(&x, &2u32.into(), &Poly::one(&f)),
            Err(PolyError::InvalidModulus)
        );
        // Exponents beyond 64 bits: x has order 3 modulo x^2+x+1.
        let big = BigUint::from(3u32).pow(50u32);
        assert!(poly_powmod(&x, &big, &m).unwrap().is_one());
    }

    #[test]
    fn text_examples() {
        let f4 = field_make(2, 2).unwrap();
        let p = parse(&f4, "1+t*x+(t+1)*x^2");
        assert_eq!(p.to_string(), "(t+1)*x^2+t*x+1");
        assert_eq!(parse(&f2(), "x+x^3+1").to_string(), "x^3+x+1");
        let f3 = field_make(3, 1).unwrap();
        assert_eq!(parse(&f3, "x^2-1").to_string(), "x^2+2");
        assert_eq!(parse(&f3, "2*x+x").to_string(), "0");
        for bad in ["", "x^", "x+*1", "y", "x^2+(t"] {
            assert!(Poly::parse(&f4, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_matches_encoding() {
        let f3 = field_make(3, 1).unwrap();
        let mut polys: Vec<Poly> = enumerate_polys(&f3, 2, false).unwrap().collect();
        polys.extend(enumerate_polys(&f3, 1, false).unwrap());
        let mut by_ord = polys.clone();
        by_ord.sort();
        let mut by_enc = polys;
        by_enc.sort_by_key(|p| p.encoding());
        assert_eq!(by_ord, by_enc);
    }

    fn arb_poly(field: FieldSpec, max_deg: usize) -> impl Strategy<Value = Poly> {
        let q = field.q();
        prop::collection::vec(0..q, 0..=max_deg + 1).prop_map(move |cs| {
            let els = cs.into_iter().map(|c| field.element(c).unwrap()).collect();
            Poly::from_coeffs(&field, els)
        })
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)])
            .prop_map(|(p, k)| field_make(p, k).unwrap())
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_field().prop_flat_map(|f| arb_poly(f, 8))) {
            let back = Poly::parse(p.field(), &p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn gcd_is_commutative_monic_common_divisor(
            (a, b) in arb_field().prop_flat_map(|f| (arb_poly(f.clone(), 7), arb_poly(f, 7)))
        ) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = poly_gcd(&a, &b).unwrap();
            prop_assert_eq!(&g, &poly_gcd(&b, &a).unwrap());
            prop_assert!(g.is_monic());
            prop_assert!(a.is_divisible_by(&g).unwrap());
            prop_assert!(b.is_divisible_by(&g).unwrap());
        }

        #[test]
        fn powmod_exponent_addition(
            (g, m) in arb_field().prop_flat_map(|f| (arb_poly(f.clone(), 6), arb_poly(f, 5))),
            a in 0u64..5000,
            b in 0u64..5000,
        ) {
            prop_assume!(m.degree() >= Degree::Finite(1));
            let lhs = poly_powmod(&g, &BigUint::from(a + b), &m).unwrap();
            let pa = poly_powmod(&g, &BigUint::from(a), &m).unwrap();
            let pb = poly_powmod(&g, &BigUint::from(b), &m).unwrap();
            prop_assert_eq!(lhs, (&pa * &pb).rem(&m).unwrap());
        }

        #[test]
        fn div_rem_reconstructs(
            (a, b) in arb_field().prop_flat_map(|f| (arb_poly(f.clone(), 8), arb_poly(f, 4)))
        ) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b).unwrap();
            prop_assert!(rem.degree() < b.degree());
            prop_assert_eq!(&(&quot * &b) + &rem, a);
        }
    }
}
