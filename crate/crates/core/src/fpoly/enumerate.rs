use super::{Poly, PolyError};
use crate::ffield::FieldSpec;

/// A contiguous slice of the exact-degree polynomials over a field, in
/// encoding order.
///
/// Index `i` of the full range maps to the polynomial whose low coefficients
/// are the base-q digits of `i mod q^n` and whose leading coefficient is
/// `1 + i / q^n` (always 1 for monic ranges). Ranges split into disjoint
/// contiguous shards for parallel sweeps.
#[derive(Debug, Clone)]
pub struct PolyRange {
    field: FieldSpec,
    degree: usize,
    block: u128,
    start: u128,
    end: u128,
}

/// Every polynomial of exact degree `n`: `q^n` monic ones or `(q-1) q^n` in
/// total, each once, in coefficient-encoding order.
pub fn enumerate_polys(field: &FieldSpec, n: usize, monic_only: bool) -> Result<PolyRange, PolyError> {
    let q = field.q() as u128;
    let too_large = || PolyError::EnumerationTooLarge {
        q: field.q(),
        degree: n,
    };
    let block = u32::try_from(n)
        .ok()
        .and_then(|n| q.checked_pow(n))
        .ok_or_else(too_large)?;
    let end = if monic_only {
        block
    } else {
        block.checked_mul(q - 1).ok_or_else(too_large)?
    };
    Ok(PolyRange {
        field: field.clone(),
        degree: n,
        block,
        start: 0,
        end,
    })
}

impl PolyRange {
    pub fn len(&self) -> u128 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The polynomial at absolute index `i` of the full range.
    pub fn poly_at(&self, i: u128) -> Poly {
        let q = self.field.q() as u128;
        let lead = 1 + i / self.block;
        let mut low = i % self.block;
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        for _ in 0..self.degree {
            coeffs.push(self.field.element((low % q) as u32).expect("digit below q"));
            low /= q;
        }
        coeffs.push(self.field.element(lead as u32).expect("leading coefficient below q"));
        Poly::from_coeffs(&self.field, coeffs)
    }

    /// Splits into at most `parts` disjoint contiguous shards covering the range.
    pub fn split(&self, parts: usize) -> Vec<PolyRange> {
        let parts = parts.max(1) as u128;
        let len = self.len();
        let chunk = len.div_ceil(parts).max(1);
        let mut out = Vec::new();
        let mut s = self.start;
        while s < self.end {
            let e = (s + chunk).min(self.end);
            out.push(PolyRange {
                start: s,
                end: e,
                ..self.clone()
            });
            s = e;
        }
        out
    }
}

impl Iterator for PolyRange {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.start >= self.end {
            return None;
        }
        let p = self.poly_at(self.start);
        self.start += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.len()).unwrap_or(usize::MAX);
        (n, usize::try_from(self.len()).ok())
    }
}
