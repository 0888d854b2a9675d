//! Sylvester resultants for polynomials in an eliminated variable whose
//! coefficients are themselves univariate polynomials in a parameter.
//!
//! The determinant is evaluated by fraction-free Bareiss elimination over the
//! coefficient ring: every intermediate entry is a minor of the original
//! Sylvester matrix, so the divisions below are exact.

use super::unipoly::UniPoly;
use super::ExactError;

/// Polynomial in the eliminated variable `x`; `coeffs[i]` is the coefficient
/// of `x^i`, a polynomial in the parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyInX {
    coeffs: Vec<UniPoly>,
}

impl PolyInX {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyInX { coeffs }
    }

    /// Lifts a parameter-free polynomial in `x`.
    pub fn from_unipoly_in_x(p: &UniPoly) -> Self {
        PolyInX::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }
}

/// Sylvester resultant eliminating `x`; the result is a polynomial in the
/// parameter. Errors if either input is zero.
pub fn resultant(p: &PolyInX, q: &PolyInX) -> Result<UniPoly, ExactError> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let dp = p.degree_x().unwrap();
    let dq = q.degree_x().unwrap();
    if dp == 0 {
        return Ok(pow_poly(&p.coeffs[0], dq));
    }
    if dq == 0 {
        return Ok(pow_poly(&q.coeffs[0], dp));
    }
    let n = dp + dq;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for row in 0..dq {
        for (j, c) in p.coeffs.iter().enumerate() {
            m[row][row + dp - j] = c.clone();
        }
    }
    for row in 0..dp {
        for (j, c) in q.coeffs.iter().enumerate() {
            m[dq + row][row + dq - j] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}

fn pow_poly(p: &UniPoly, e: usize) -> UniPoly {
    let mut acc = UniPoly::one();
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pr) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, pr);
            sign = !sign;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &pivot) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = UniPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat_int;

    fn constant_in_x(p: UniPoly) -> PolyInX {
        PolyInX::new(vec![p])
    }

    #[test]
    fn linear_pair_gives_difference() {
        // Res_x(x - a, x - b) with parameters a = e, b = 3: result e - 3 up to sign
        let a = UniPoly::from_i64(&[0, 1]); // parameter e
        let b = UniPoly::from_i64(&[3]);
        let p = PolyInX::new(vec![-a, UniPoly::one()]);
        let q = PolyInX::new(vec![-b, UniPoly::one()]);
        let r = resultant(&p, &q).unwrap();
        // Res(x-a, x-b) = b - a or a - b depending on row order convention;
        // either way it vanishes iff a = b.
        assert_eq!(r.degree(), Some(1));
        assert_eq!(r.eval(&rat_int(3)), rat_int(0));
    }

    #[test]
    fn evaluation_resultant() {
        // Res_x(x^2 - 2, x - 1) = (1)^2 - 2 = -1
        let p = PolyInX::new(vec![
            UniPoly::from_i64(&[-2]),
            UniPoly::zero(),
            UniPoly::one(),
        ]);
        let q = PolyInX::new(vec![UniPoly::from_i64(&[-1]), UniPoly::one()]);
        let r = resultant(&p, &q).unwrap();
        assert_eq!(r, UniPoly::from_i64(&[-1]));
    }

    #[test]
    fn parametric_square_pair() {
        // Res_x(x^2 - c, x^2 - 1) for parameter c: Sylvester determinant is (c-1)^2
        let c = UniPoly::from_i64(&[0, 1]);
        let p = PolyInX::new(vec![-c, UniPoly::zero(), UniPoly::one()]);
        let q = PolyInX::new(vec![UniPoly::from_i64(&[-1]), UniPoly::zero(), UniPoly::one()]);
        let r = resultant(&p, &q).unwrap();
        assert_eq!(r, UniPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn zero_input_rejected() {
        let z = PolyInX::new(vec![]);
        let p = constant_in_x(UniPoly::one());
        assert_eq!(resultant(&z, &p).unwrap_err(), ExactError::ZeroPolynomial);
    }

    #[test]
    fn planted_common_root_vanishes() {
        // p = (x - 2)(x - 5), q = (x - 2)(x + 7) share the root 2
        let p = PolyInX::new(vec![
            UniPoly::from_i64(&[10]),
            UniPoly::from_i64(&[-7]),
            UniPoly::one(),
        ]);
        let q = PolyInX::new(vec![
            UniPoly::from_i64(&[-14]),
            UniPoly::from_i64(&[5]),
            UniPoly::one(),
        ]);
        let r = resultant(&p, &q).unwrap();
        assert!(r.is_zero());
    }
}
