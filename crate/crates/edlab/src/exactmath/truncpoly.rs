//! Truncated multivariate polynomials: the ring Z[h_1..h_k] modulo the ideal
//! (h_1^{c_1+1}, ..., h_k^{c_k+1}) given by per-variable degree caps. Any
//! product monomial exceeding a cap is discarded.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

use super::ExactError;

/// Coefficient ring for truncated polynomials. `i128` is used internally by
/// the formula sweeps (with checked arithmetic, so overflow aborts loudly
/// instead of wrapping); `BigInt` is the general-purpose instantiation.
pub trait ChowCoeff: Clone + Eq + Ord {
    fn coeff_zero() -> Self;
    fn coeff_one() -> Self;
    fn coeff_is_zero(&self) -> bool;
    fn coeff_add(&self, rhs: &Self) -> Self;
    fn coeff_mul(&self, rhs: &Self) -> Self;
    fn coeff_neg(&self) -> Self;
    fn coeff_from_i64(v: i64) -> Self;
    fn coeff_to_bigint(&self) -> BigInt;
}

impl ChowCoeff for BigInt {
    fn coeff_zero() -> Self {
        BigInt::ZERO
    }
    fn coeff_one() -> Self {
        BigInt::from(1)
    }
    fn coeff_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn coeff_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn coeff_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn coeff_neg(&self) -> Self {
        -self
    }
    fn coeff_from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn coeff_to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl ChowCoeff for i128 {
    fn coeff_zero() -> Self {
        0
    }
    fn coeff_one() -> Self {
        1
    }
    fn coeff_is_zero(&self) -> bool {
        *self == 0
    }
    fn coeff_add(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).expect("i128 overflow in truncated polynomial")
    }
    fn coeff_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).expect("i128 overflow in truncated polynomial")
    }
    fn coeff_neg(&self) -> Self {
        -self
    }
    fn coeff_from_i64(v: i64) -> Self {
        v as i128
    }
    fn coeff_to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

/// Truncated polynomial over an arbitrary coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPolyOf<C: ChowCoeff> {
    caps: Vec<u32>,
    terms: BTreeMap<Vec<u32>, C>,
}

/// The default big-integer instantiation.
pub type TruncPoly = TruncPolyOf<BigInt>;

impl<C: ChowCoeff> TruncPolyOf<C> {
    pub fn zero(caps: &[u32]) -> Self {
        TruncPolyOf {
            caps: caps.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(caps: &[u32], c: i64) -> Self {
        let mut p = Self::zero(caps);
        if c != 0 {
            p.terms.insert(vec![0; caps.len()], C::coeff_from_i64(c));
        }
        p
    }

    pub fn one(caps: &[u32]) -> Self {
        Self::constant(caps, 1)
    }

    /// The variable `h_i`, or zero if its cap is zero.
    pub fn var(caps: &[u32], i: usize) -> Self {
        let mut p = Self::zero(caps);
        if caps[i] >= 1 {
            let mut e = vec![0; caps.len()];
            e[i] = 1;
            p.terms.insert(e, C::coeff_one());
        }
        p
    }

    /// A linear form `sum coeffs_i * h_i`.
    pub fn linear(caps: &[u32], coeffs: &[i64]) -> Self {
        let mut p = Self::zero(caps);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 && caps[i] >= 1 {
                let mut e = vec![0; caps.len()];
                e[i] = 1;
                p.terms.insert(e, C::coeff_from_i64(c));
            }
        }
        p
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn coeff_is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_compatible(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.caps != rhs.caps {
            return Err(ExactError::CapsMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(C::coeff_zero);
            *entry = entry.coeff_add(c);
            if entry.coeff_is_zero() {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn coeff_neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.coeff_neg();
        }
        out
    }

    /// Distributive product; monomials exceeding any cap are dropped.
    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_compatible(rhs)?;
        let mut out = Self::zero(&self.caps);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Option<Vec<u32>> = ea
                    .iter()
                    .zip(eb)
                    .zip(&self.caps)
                    .map(|((a, b), cap)| {
                        let s = a + b;
                        (s <= *cap).then_some(s)
                    })
                    .collect();
                if let Some(e) = e {
                    let c = ca.coeff_mul(cb);
                    let entry = out.terms.entry(e).or_insert_with(C::coeff_zero);
                    *entry = entry.coeff_add(&c);
                }
            }
        }
        out.terms.retain(|_, c| !c.coeff_is_zero());
        Ok(out)
    }

    pub fn pow(&self, mut n: u32) -> Result<Self, ExactError> {
        let mut acc = Self::one(&self.caps);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Coefficient of the given exponent tuple; errors if the exponent lies
    /// outside the caps, returns zero if the term is absent.
    pub fn coefficient_of(&self, exponent: &[u32]) -> Result<BigInt, ExactError> {
        if exponent.len() != self.caps.len()
            || exponent.iter().zip(&self.caps).any(|(e, c)| e > c)
        {
            return Err(ExactError::ExponentOutOfCaps(exponent.to_vec()));
        }
        Ok(self
            .terms
            .get(exponent)
            .map(|c| c.coeff_to_bigint())
            .unwrap_or(BigInt::ZERO))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_kill_squares() {
        // caps (1,1): (s+t)*(s+t) = 2st
        let caps = [1, 1];
        let st = TruncPoly::linear(&caps, &[1, 1]);
        let p = st.mul(&st).unwrap();
        assert_eq!(p.coefficient_of(&[1, 1]).unwrap(), BigInt::from(2));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn one_is_identity() {
        let caps = [2, 3];
        let a = TruncPoly::linear(&caps, &[2, -5]);
        let e = TruncPoly::one(&caps);
        assert_eq!(a.mul(&e).unwrap(), a);
    }

    #[test]
    fn no_truncation_when_within_caps() {
        // caps (1,1): (1+2s)(1+3t) = 1+2s+3t+6st
        let caps = [1, 1];
        let a = TruncPoly::one(&caps).add(&TruncPoly::linear(&caps, &[2, 0])).unwrap();
        let b = TruncPoly::one(&caps).add(&TruncPoly::linear(&caps, &[0, 3])).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coefficient_of(&[0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(p.coefficient_of(&[1, 0]).unwrap(), BigInt::from(2));
        assert_eq!(p.coefficient_of(&[0, 1]).unwrap(), BigInt::from(3));
        assert_eq!(p.coefficient_of(&[1, 1]).unwrap(), BigInt::from(6));
    }

    #[test]
    fn zero_polynomial_reads_zero() {
        let z = TruncPoly::zero(&[2, 2]);
        assert_eq!(z.coefficient_of(&[1, 1]).unwrap(), BigInt::ZERO);
    }

    #[test]
    fn out_of_caps_is_usage_error() {
        let z = TruncPoly::zero(&[1, 1]);
        assert!(matches!(
            z.coefficient_of(&[2, 0]),
            Err(ExactError::ExponentOutOfCaps(_))
        ));
    }

    #[test]
    fn mismatched_caps_is_usage_error() {
        let a = TruncPoly::one(&[1, 1]);
        let b = TruncPoly::one(&[1, 2]);
        assert_eq!(a.mul(&b).unwrap_err(), ExactError::CapsMismatch);
    }
}
