//! Dense univariate polynomials over exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{format_rat, rat_to_f64, BigRational};
use super::ExactError;

/// Polynomial with exact rational coefficients, index = degree.
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

/// Square-free decomposition `content * prod factors_i ^ mult_i` with the
/// factors monic, pairwise coprime, and square-free.
#[derive(Clone, Debug)]
pub struct SquareFree {
    pub content: BigRational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `prod (x - r_i)` for the given rational roots.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        let mut p = UniPoly::one();
        for r in roots {
            p = &p * &UniPoly::new(vec![-r.clone(), BigRational::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero if `k` exceeds the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic multiple of `self`. Panics on zero.
    pub fn monic(&self) -> UniPoly {
        let lc = self.leading_coefficient().expect("monic of zero polynomial");
        let inv = lc.recip();
        self.scale(&inv)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        let lc = divisor.leading_coefficient().unwrap().clone();
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lc;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[k - dd + j] = &rem[k - dd + j] - &t;
            }
            quo[k - dd] = q;
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic greatest common divisor (gcd of anything with zero is the
    /// other argument made monic).
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Splits into `content * primitive` where `primitive` has coprime
    /// integer coefficients and positive leading coefficient.
    pub fn content_primitive(&self) -> (BigRational, UniPoly) {
        if self.is_zero() {
            return (BigRational::zero(), UniPoly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = UniPoly::new(
            ints.iter()
                .map(|v| BigRational::from_integer(v / &g))
                .collect(),
        );
        (BigRational::new(g, den), prim)
    }

    /// Yun square-free decomposition over the rationals. Errors on zero input.
    pub fn squarefree_decompose(&self) -> Result<SquareFree, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let mut content = self.leading_coefficient().unwrap().clone();
        let p = self.monic();
        if p.degree() == Some(0) {
            return Ok(SquareFree {
                content,
                factors: vec![],
            });
        }
        let dp = p.derivative();
        let g = UniPoly::gcd(&p, &dp);
        let mut w = p.div_exact(&g);
        let mut z = dp.div_exact(&g) - w.derivative();
        let mut factors = Vec::new();
        let mut mult: u32 = 1;
        while w.degree().unwrap_or(0) > 0 {
            let f = UniPoly::gcd(&w, &z);
            if f.degree().unwrap_or(0) > 0 {
                factors.push((f.clone(), mult));
            }
            w = w.div_exact(&f);
            z = z.div_exact(&f) - w.derivative();
            mult += 1;
        }
        // Remaining constant in w folds into the content (it is 1 for monic
        // input, but keep the bookkeeping exact).
        if let Some(c) = w.leading_coefficient() {
            content = &content * c;
        }
        Ok(SquareFree { content, factors })
    }

    /// Is `gcd(p, p')` constant?
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        UniPoly::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Number of distinct real roots over the whole line, by Sturm's theorem.
    /// Requires square-free input.
    pub fn count_real_roots(&self) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(ExactError::NotSquareFree);
        }
        let chain = self.sturm_chain();
        Ok(variations_at_minus_inf(&chain) - variations_at_plus_inf(&chain))
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                return chain;
            }
            chain.push(-r);
        }
    }

    /// Distinct real roots in `(a, b]` via Sturm counts.
    fn count_roots_in(&self, chain: &[UniPoly], a: &BigRational, b: &BigRational) -> usize {
        variations_at(chain, a) - variations_at(chain, b)
    }

    /// A bound `B` with all real roots in `(-B, B)` (Cauchy bound).
    pub fn root_bound(&self) -> BigRational {
        let lc = match self.leading_coefficient() {
            Some(lc) => lc,
            None => return BigRational::one(),
        };
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = (c / lc).abs();
            if v > m {
                m = v;
            }
        }
        m + BigRational::one() + BigRational::one()
    }

    /// All distinct real roots, refined by exact bisection until the
    /// enclosing interval is narrower than `tol`, then reported as `f64`
    /// midpoints in increasing order. Works on arbitrary nonzero input by
    /// passing to the square-free part.
    pub fn real_roots_f64(&self, tol: f64) -> Result<Vec<f64>, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let sf = self.squarefree_part();
        if sf.degree().unwrap_or(0) == 0 {
            return Ok(vec![]);
        }
        let chain = sf.sturm_chain();
        let bound = sf.root_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
        while let Some((a, b)) = stack.pop() {
            let n = sf.count_roots_in(&chain, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                isolated.push((a, b));
                continue;
            }
            let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        let tol_r = BigRational::new(BigInt::from(1), BigInt::from((1.0 / tol) as i64 + 1));
        let mut out = Vec::new();
        for (mut a, mut b) in isolated {
            while &b - &a > tol_r {
                let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                if sf.count_roots_in(&chain, &a, &mid) == 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            out.push(rat_to_f64(&((&a + &b) / BigRational::from_integer(BigInt::from(2)))));
        }
        out.sort_by(|p, q| p.partial_cmp(q).unwrap());
        Ok(out)
    }

    /// Exact Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = UniPoly::one();
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = &basis * &UniPoly::new(vec![-xj.clone(), BigRational::one()]);
                denom = denom * (xi - xj);
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        acc
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        if self.degree() == Some(0) {
            return UniPoly::one();
        }
        let g = UniPoly::gcd(self, &self.derivative());
        self.div_exact(&g).monic()
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn variations_at(chain: &[UniPoly], x: &BigRational) -> usize {
    count_variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

fn variations_at_plus_inf(chain: &[UniPoly]) -> usize {
    count_variations(
        chain
            .iter()
            .map(|p| p.leading_coefficient().map_or(0, sign_of)),
    )
}

fn variations_at_minus_inf(chain: &[UniPoly]) -> usize {
    count_variations(chain.iter().map(|p| {
        let s = p.leading_coefficient().map_or(0, sign_of);
        if p.degree().unwrap_or(0) % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        UniPoly::new(out)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        (&self).sub(&rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rat(c))?,
                1 => write!(f, "{}*x", format_rat(c))?,
                _ => write!(f, "{}*x^{}", format_rat(c), k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{rat, rat_int};

    fn x() -> UniPoly {
        UniPoly::from_i64(&[0, 1])
    }

    #[test]
    fn divrem_reconstructs() {
        let p = UniPoly::from_i64(&[1, -3, 0, 2, 5]);
        let d = UniPoly::from_i64(&[2, 1, 1]);
        let (q, r) = p.divrem(&d);
        let back = &(&q * &d) + &r;
        assert_eq!(back, p);
        assert!(r.degree().unwrap() < d.degree().unwrap());
    }

    #[test]
    fn squarefree_given_in_factored_form() {
        // (x^2+1)^3
        let f = UniPoly::from_i64(&[1, 0, 1]);
        let p = &(&f * &f) * &f;
        let sf = p.squarefree_decompose().unwrap();
        assert_eq!(sf.factors.len(), 1);
        assert_eq!(sf.factors[0].0, f.monic());
        assert_eq!(sf.factors[0].1, 3);
    }

    #[test]
    fn squarefree_pure_power() {
        // x^4 -> [(x, 4)]
        let p = UniPoly::monomial(rat_int(1), 4);
        let sf = p.squarefree_decompose().unwrap();
        assert_eq!(sf.factors, vec![(x(), 4)]);
    }

    #[test]
    fn squarefree_mixed_multiplicities() {
        // (x^2+1)(x^2+4)^2 expanded, decomposition recovers the factors
        let a = UniPoly::from_i64(&[1, 0, 1]);
        let b = UniPoly::from_i64(&[4, 0, 1]);
        let p = &(&a * &b) * &b;
        let sf = p.squarefree_decompose().unwrap();
        assert_eq!(sf.factors, vec![(a, 1), (b, 2)]);
    }

    #[test]
    fn squarefree_rejects_zero() {
        assert_eq!(
            UniPoly::zero().squarefree_decompose().unwrap_err(),
            ExactError::ZeroPolynomial
        );
    }

    #[test]
    fn sturm_counts() {
        // x^2+1 -> 0, x^2-1 -> 2, x^3-2x -> 3
        assert_eq!(UniPoly::from_i64(&[1, 0, 1]).count_real_roots().unwrap(), 0);
        assert_eq!(UniPoly::from_i64(&[-1, 0, 1]).count_real_roots().unwrap(), 2);
        assert_eq!(
            UniPoly::from_i64(&[0, -2, 0, 1]).count_real_roots().unwrap(),
            3
        );
    }

    #[test]
    fn sturm_rejects_repeated_roots() {
        let p = UniPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.count_real_roots().unwrap_err(), ExactError::NotSquareFree);
    }

    #[test]
    fn real_root_refinement() {
        let p = UniPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let roots = p.real_roots_f64(1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[1] - 2f64.sqrt()).abs() < 1e-9);
        assert!((roots[0] + 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn content_primitive_normalization() {
        let p = UniPoly::new(vec![rat(-3, 4), rat(0, 1), rat(-9, 2)]);
        let (c, prim) = p.content_primitive();
        assert_eq!(prim, UniPoly::from_i64(&[1, 0, 6]));
        assert_eq!(&prim.scale(&c), &p);
        assert!(prim.leading_coefficient().unwrap().is_positive());
    }
}
