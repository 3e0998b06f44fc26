//! Exact arithmetic in F_q for q = p^k.
//!
//! A field is described by a [`FieldSpec`], a cheap-to-clone handle holding the
//! characteristic, the extension degree and, for k > 1, the defining modulus
//! over F_p. Elements are [`FieldElement`] values: the integer encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their coefficient vector in
//! F_p[t]/(modulus). The encoding doubles as the canonical total order used for
//! sorting polynomials and golden output.
//!
//! Fields with q <= 256 carry precomputed addition, multiplication and inverse
//! tables; larger fields (up to 2^16) fall back to coefficient arithmetic.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field size {p}^{k} exceeds the supported maximum of 2^16")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cannot parse field element {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// An element of F_q, stored as its coefficient encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer encoding `sum c_i p^i`.
    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over F_p, lowest degree first, length k + 1.
    modulus: Option<Vec<u32>>,
    tables: Option<Tables>,
}

/// The finite field F_q. Clones share one immutable description.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if let Some(m) = &self.0.modulus {
            write!(f, " = F_{}[t]/({})", self.0.p, format_fp_poly(m, 't'))?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

/// Builds F_{p^k} with the canonical modulus: the monic irreducible of degree
/// k over F_p whose encoding `sum c_i p^i` is smallest.
pub fn field_make(p: u64, k: u32) -> Result<FieldSpec, FieldError> {
    if !arith::is_prime(p) {
        return Err(FieldError::InvalidPrime(p));
    }
    if k < 1 {
        return Err(FieldError::InvalidDegree(k));
    }
    let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if q > MAX_FIELD_SIZE as u128 {
        return Err(FieldError::FieldTooLarge { p, k });
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = (k > 1).then(|| canonical_modulus(p, k));
    let mut inner = FieldInner {
        p,
        k,
        q,
        modulus,
        tables: None,
    };
    if q <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    Ok(FieldSpec(Arc::new(inner)))
}

/// Builds F_q from the field size alone.
pub fn field_from_order(q: u64) -> Result<FieldSpec, FieldError> {
    let (p, k) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    field_make(p, k)
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial over F_p (lowest degree first), absent for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The element with the given encoding, if it is in range.
    pub fn element(&self, encoding: u32) -> Option<FieldElement> {
        (encoding < self.0.q).then_some(FieldElement(encoding))
    }

    /// Element from an integer, reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FieldError::Parse {
                text: format!("{coeffs:?}"),
                reason: format!("expected at most {} coefficients in [0, {})", self.0.k, self.0.p),
            });
        }
        Ok(FieldElement(self.encode(coeffs)))
    }

    /// Coefficients of 1, t, ..., t^{k-1}; always length k.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut e = a.0;
        for _ in 0..self.0.k {
            out.push(e % self.0.p);
            e /= self.0.p;
        }
        out
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    /// Nonzero elements (the units) in encoding order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.add[self.idx(a, b)]);
        }
        self.add_slow(a, b)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.neg[a.0 as usize]);
        }
        self.neg_slow(a)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.0.tables {
            return FieldElement(t.mul[self.idx(a, b)]);
        }
        self.mul_slow(a, b)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero(self.0.q));
        }
        if let Some(t) = &self.0.tables {
            return Ok(FieldElement(t.inv[a.0 as usize]));
        }
        Ok(self.inv_slow(a))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Text form: a decimal residue for prime fields, a polynomial in `t`
    /// otherwise (e.g. `t+1`, `2*t^2+1`).
    pub fn format_element(&self, a: FieldElement) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        format_fp_poly(&self.coeffs(a), 't')
    }

    /// Inverse of [`FieldSpec::format_element`]; accepts terms in any order.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(&s);
        if s.is_empty() {
            return Err(err("empty element"));
        }
        let p = self.0.p as u64;
        let mut coeffs = vec![0u64; self.0.k as usize];
        for (negative, term) in split_signed_terms(s).map_err(|r| err(&r))? {
            let (c, e) = parse_monomial(term, 't').map_err(|r| err(&r))?;
            if e >= self.0.k as u64 {
                return Err(err("power of t at or above the extension degree"));
            }
            let c = c % p;
            let c = if negative { (p - c) % p } else { c };
            coeffs[e as usize] = (coeffs[e as usize] + c) % p;
        }
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c as u32).collect();
        Ok(FieldElement(self.encode(&coeffs)))
    }

    fn idx(&self, a: FieldElement, b: FieldElement) -> usize {
        a.0 as usize * self.0.q as usize + b.0 as usize
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    fn add_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
        FieldElement(self.encode(&sum))
    }

    fn neg_slow(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        let n: Vec<u32> = self.coeffs(a).iter().map(|&x| (p - x) % p).collect();
        FieldElement(self.encode(&n))
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p as u64;
        let Some(modulus) = &self.0.modulus else {
            return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u32);
        };
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let k = self.0.k as usize;
        // Reduce with t^k = -(m_0 + ... + m_{k-1} t^{k-1}).
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod.truncate(k);
        let coeffs: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        FieldElement(self.encode(&coeffs))
    }

    fn inv_slow(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        let Some(modulus) = &self.0.modulus else {
            return FieldElement(arith::pow_mod_u64(a.0 as u64, p as u64 - 2, p as u64) as u32);
        };
        // Extended Euclid in F_p[t]: find s with s*a + u*m = 1.
        let (g, s) = fp_ext_gcd(&trim(self.coeffs(a)), &trim(modulus.clone()), p);
        debug_assert_eq!(g, vec![1]);
        let mut s = s;
        s.resize(self.0.k as usize, 0);
        FieldElement(self.encode(&s))
    }
}

fn build_tables(f: &FieldInner) -> Tables {
    let spec = FieldSpec(Arc::new(FieldInner {
        p: f.p,
        k: f.k,
        q: f.q,
        modulus: f.modulus.clone(),
        tables: None,
    }));
    let q = f.q as usize;
    let mut add = vec![0u32; q * q];
    let mut mul = vec![0u32; q * q];
    let mut neg = vec![0u32; q];
    let mut inv = vec![0u32; q];
    for a in 0..q {
        let ea = FieldElement(a as u32);
        neg[a] = spec.neg_slow(ea).0;
        for b in 0..q {
            let eb = FieldElement(b as u32);
            add[a * q + b] = spec.add_slow(ea, eb).0;
            let m = spec.mul_slow(ea, eb).0;
            mul[a * q + b] = m;
            if m == 1 {
                inv[a] = b as u32;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_inv(a: u32, p: u32) -> u32 {
    arith::pow_mod_u64(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `a` modulo nonzero `b` in F_p[t]; returns (quotient, remainder).
fn fp_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = fp_inv(*b.last().unwrap(), p) as u64;
    let mut quot = vec![0u32; r.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = (r[shift + b.len() - 1] as u64 * lead_inv % p as u64) as u32;
        quot[shift] = c;
        if c == 0 {
            continue;
        }
        for (i, &bi) in b.iter().enumerate() {
            let sub = c as u64 * bi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    (trim(quot), trim(r))
}

fn fp_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn fp_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Returns the monic gcd g of a and m together with s such that s*a = g (mod m).
fn fp_ext_gcd(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quot, rem) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&quot, &s1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let lead_inv = fp_inv(*r0.last().unwrap(), p) as u64;
    let scale = |v: &[u32]| -> Vec<u32> {
        v.iter()
            .map(|&c| (c as u64 * lead_inv % p as u64) as u32)
            .collect()
    };
    (scale(&r0), scale(&s0))
}

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most half the input's.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut e = low;
            for _ in 0..d {
                g.push((e % p as u64) as u32);
                e /= p as u64;
            }
            g.push(1);
            if fp_divrem(f, &g, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut e = low;
        for _ in 0..k {
            f.push((e % p as u64) as u32);
            e /= p as u64;
        }
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over F_p")
}

/// Formats a coefficient vector over F_p (lowest degree first) in the sparse
/// text grammar with the given variable name.
fn format_fp_poly(coeffs: &[u32], var: char) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (e, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}*{var}"),
            (_, 1) => format!("{var}^{e}"),
            _ => format!("{c}*{var}^{e}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Splits `a+b-c` into signed terms at top level (outside parentheses).
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".into());
                }
            }
            '+' | '-' if depth == 0 => {
                if i > start {
                    out.push((negative, &s[start..i]));
                } else if i > 0 {
                    return Err("empty term".into());
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if start >= s.len() {
        return Err("empty term".into());
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

/// Parses `c`, `var`, `var^e`, `c*var`, `c*var^e` with a decimal coefficient.
fn parse_monomial(term: &str, var: char) -> Result<(u64, u64), String> {
    let (coef, power) = match term.split_once('*') {
        Some((c, v)) => (Some(c), Some(v)),
        None if term.starts_with(var) => (None, Some(term)),
        None => (Some(term), None),
    };
    let c = match coef {
        Some(c) => c
            .parse::<u64>()
            .map_err(|_| format!("bad coefficient {c:?}"))?,
        None => 1,
    };
    let e = match power {
        None => 0,
        Some(v) => {
            let rest = v
                .strip_prefix(var)
                .ok_or_else(|| format!("expected {var:?} in {v:?}"))?;
            if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|x| x.parse::<u64>().ok())
                    .ok_or_else(|| format!("bad exponent in {v:?}"))?
            }
        }
    };
    Ok((c, e))
}
