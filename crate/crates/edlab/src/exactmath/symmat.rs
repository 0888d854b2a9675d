//! Symmetric matrices with exact rational or double-precision entries.
//! Only the upper triangle is stored, so symmetry holds by construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_to_f64, BigRational};
use super::unipoly::UniPoly;
use super::ExactError;

/// Default pivot tolerance for the numeric positive-definiteness test:
/// a Cholesky pivot must exceed `1e-10 *` the largest diagonal entry.
pub const NUMERIC_PD_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
enum Entries {
    Exact(Vec<BigRational>),
    Numeric(Vec<f64>),
}

/// Why a matrix failed the positive-definiteness check.
#[derive(Clone, Debug, PartialEq)]
pub enum PdFailure {
    /// Leading principal minor `k+1 x k+1` is not positive (exact mode).
    Minor { index: usize, value: String },
    /// Cholesky pivot at row `index` fell below tolerance (numeric mode).
    Pivot { index: usize, value: f64 },
}

impl std::fmt::Display for PdFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdFailure::Minor { index, value } => {
                write!(f, "leading principal minor {} is {} (not positive)", index + 1, value)
            }
            PdFailure::Pivot { index, value } => {
                write!(f, "Cholesky pivot {} is {:.3e} (below tolerance)", index, value)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymMat {
    n: usize,
    entries: Entries,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymMat {
    pub fn zeros_exact(n: usize) -> Self {
        SymMat {
            n,
            entries: Entries::Exact(vec![BigRational::zero(); n * (n + 1) / 2]),
        }
    }

    pub fn zeros_numeric(n: usize) -> Self {
        SymMat {
            n,
            entries: Entries::Numeric(vec![0.0; n * (n + 1) / 2]),
        }
    }

    pub fn identity_exact(n: usize) -> Self {
        let mut m = Self::zeros_exact(n);
        for i in 0..n {
            m.set_exact(i, i, BigRational::one());
        }
        m
    }

    pub fn diag_exact(values: &[BigRational]) -> Self {
        let mut m = Self::zeros_exact(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set_exact(i, i, v.clone());
        }
        m
    }

    pub fn diag_numeric(values: &[f64]) -> Self {
        let mut m = Self::zeros_numeric(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set_numeric(i, i, *v);
        }
        m
    }

    /// Builds from full rows, verifying symmetry exactly.
    pub fn from_rows_exact(rows: &[Vec<BigRational>]) -> Result<Self, ExactError> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(ExactError::DimensionMismatch(n, r.len()));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(ExactError::NotSymmetric);
                }
            }
        }
        let mut m = Self::zeros_exact(n);
        for i in 0..n {
            for j in i..n {
                m.set_exact(i, j, rows[i][j].clone());
            }
        }
        Ok(m)
    }

    /// Builds from full rows; off-diagonal pairs must agree to a small
    /// relative tolerance and are averaged.
    pub fn from_rows_numeric(rows: &[Vec<f64>]) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut scale = 0f64;
        for r in rows {
            if r.len() != n {
                return Err(ExactError::DimensionMismatch(n, r.len()));
            }
            for v in r {
                scale = scale.max(v.abs());
            }
        }
        let tol = 1e-9 * scale.max(1.0);
        let mut m = Self::zeros_numeric(n);
        for i in 0..n {
            for j in i..n {
                if (rows[i][j] - rows[j][i]).abs() > tol {
                    return Err(ExactError::NotSymmetric);
                }
                m.set_numeric(i, j, 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    pub fn set_exact(&mut self, i: usize, j: usize, v: BigRational) {
        let idx = tri_index(self.n, i, j);
        match &mut self.entries {
            Entries::Exact(e) => e[idx] = v,
            Entries::Numeric(_) => panic!("set_exact on a numeric matrix"),
        }
    }

    pub fn set_numeric(&mut self, i: usize, j: usize, v: f64) {
        let idx = tri_index(self.n, i, j);
        match &mut self.entries {
            Entries::Numeric(e) => e[idx] = v,
            Entries::Exact(_) => panic!("set_numeric on an exact matrix"),
        }
    }

    pub fn get_exact(&self, i: usize, j: usize) -> Result<&BigRational, ExactError> {
        match &self.entries {
            Entries::Exact(e) => Ok(&e[tri_index(self.n, i, j)]),
            Entries::Numeric(_) => Err(ExactError::NotExact),
        }
    }

    /// Entry as `f64`, casting exact entries.
    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        let idx = tri_index(self.n, i, j);
        match &self.entries {
            Entries::Exact(e) => rat_to_f64(&e[idx]),
            Entries::Numeric(e) => e[idx],
        }
    }

    pub fn to_dense_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get_f64(i, j)).collect())
            .collect()
    }

    pub fn scale_exact(&self, c: &BigRational) -> Result<SymMat, ExactError> {
        match &self.entries {
            Entries::Exact(e) => Ok(SymMat {
                n: self.n,
                entries: Entries::Exact(e.iter().map(|v| v * c).collect()),
            }),
            Entries::Numeric(_) => Err(ExactError::NotExact),
        }
    }

    pub fn add_exact(&self, other: &SymMat) -> Result<SymMat, ExactError> {
        if self.n != other.n {
            return Err(ExactError::DimensionMismatch(self.n, other.n));
        }
        match (&self.entries, &other.entries) {
            (Entries::Exact(a), Entries::Exact(b)) => Ok(SymMat {
                n: self.n,
                entries: Entries::Exact(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            }),
            _ => Err(ExactError::NotExact),
        }
    }

    pub fn mul_vec_exact(&self, v: &[BigRational]) -> Result<Vec<BigRational>, ExactError> {
        if v.len() != self.n {
            return Err(ExactError::DimensionMismatch(self.n, v.len()));
        }
        let mut out = vec![BigRational::zero(); self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i] = &out[i] + &(self.get_exact(i, j)?.clone() * &v[j]);
            }
        }
        Ok(out)
    }

    /// `v^T M v`, exact.
    pub fn quad_form_exact(&self, v: &[BigRational]) -> Result<BigRational, ExactError> {
        let mv = self.mul_vec_exact(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a * b).fold(BigRational::zero(), |s, t| s + t))
    }

    /// Positive definiteness. Exact mode decides by Sylvester's criterion
    /// through an LDL^T sweep (all pivots positive iff all leading principal
    /// minors are positive); numeric mode attempts a Cholesky factorization
    /// with pivot tolerance `NUMERIC_PD_TOL * max diagonal`.
    pub fn is_positive_definite(&self) -> bool {
        self.check_positive_definite(NUMERIC_PD_TOL).is_ok()
    }

    /// As [`SymMat::is_positive_definite`] but reports the failing minor or
    /// pivot, with an overridable numeric tolerance.
    pub fn check_positive_definite(&self, numeric_tol: f64) -> Result<(), PdFailure> {
        match &self.entries {
            Entries::Exact(_) => {
                // LDL^T with exact arithmetic; pivot d_k = M_k / M_{k-1}, so
                // the leading principal minors are the running pivot products.
                let n = self.n;
                let mut a: Vec<Vec<BigRational>> = (0..n)
                    .map(|i| (0..n).map(|j| self.get_exact(i, j).unwrap().clone()).collect())
                    .collect();
                let mut minor = BigRational::one();
                for k in 0..n {
                    let pivot = a[k][k].clone();
                    minor = &minor * &pivot;
                    if !pivot.is_positive() {
                        return Err(PdFailure::Minor {
                            index: k,
                            value: super::rational::format_rat(&minor),
                        });
                    }
                    for i in k + 1..n {
                        let f = &a[i][k] / &pivot;
                        for j in k..n {
                            let t = &f * &a[k][j];
                            a[i][j] = &a[i][j] - &t;
                        }
                    }
                }
                Ok(())
            }
            Entries::Numeric(_) => {
                let n = self.n;
                let mut maxdiag = 0f64;
                for i in 0..n {
                    maxdiag = maxdiag.max(self.get_f64(i, i).abs());
                }
                let tol = numeric_tol * maxdiag.max(1.0);
                let mut l = vec![vec![0f64; n]; n];
                for i in 0..n {
                    for j in 0..=i {
                        let mut s = self.get_f64(i, j);
                        for k in 0..j {
                            s -= l[i][k] * l[j][k];
                        }
                        if i == j {
                            if s <= tol {
                                return Err(PdFailure::Pivot { index: i, value: s });
                            }
                            l[i][j] = s.sqrt();
                        } else {
                            l[i][j] = s / l[j][j];
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn det_exact(&self) -> Result<BigRational, ExactError> {
        if !self.is_exact() {
            return Err(ExactError::NotExact);
        }
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get_exact(i, j).unwrap().clone()).collect())
            .collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !a[r][k].is_zero());
            let Some(pr) = pivot_row else {
                return Ok(BigRational::zero());
            };
            if pr != k {
                a.swap(pr, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det = det * &pivot;
            for i in k + 1..n {
                let f = &a[i][k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(t I - M)` by the Faddeev-LeVerrier
    /// recursion, exact.
    pub fn charpoly_exact(&self) -> Result<UniPoly, ExactError> {
        if !self.is_exact() {
            return Err(ExactError::NotExact);
        }
        let n = self.n;
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get_exact(i, j).unwrap().clone()).collect())
            .collect();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
        // with the trace folded in by computing M_k first.
        let mut m = vec![vec![BigRational::zero(); n]; n]; // M_0 = 0
        for k in 1..=n {
            let prev_c = coeffs[n - k + 1].clone();
            let mut mk = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = if i == j { prev_c.clone() } else { BigRational::zero() };
                    for l in 0..n {
                        s = s + &a[i][l] * &m[l][j];
                    }
                    mk[i][j] = s;
                }
            }
            m = mk;
            let mut tr = BigRational::zero();
            for i in 0..n {
                for l in 0..n {
                    tr = tr + &a[i][l] * &m[l][i];
                }
            }
            coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
        }
        Ok(UniPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{rat, rat_int};

    #[test]
    fn identity_is_pd() {
        assert!(SymMat::identity_exact(4).is_positive_definite());
    }

    #[test]
    fn indefinite_diag_is_not_pd() {
        let m = SymMat::diag_exact(&[rat_int(1), rat_int(-1)]);
        assert!(!m.is_positive_definite());
        match m.check_positive_definite(NUMERIC_PD_TOL).unwrap_err() {
            PdFailure::Minor { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected failure {other:?}"),
        }
    }

    #[test]
    fn frobenius_gram_of_degree_two_curve_is_pd() {
        let m = SymMat::diag_exact(&[rat_int(1), rat_int(2), rat_int(1)]);
        assert!(m.is_positive_definite());
    }

    #[test]
    fn numeric_pd_matches_exact_on_cast() {
        let rows = vec![
            vec![rat_int(4), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(3), rat(1, 2)],
            vec![rat_int(0), rat(1, 2), rat_int(2)],
        ];
        let e = SymMat::from_rows_exact(&rows).unwrap();
        let f = SymMat::from_rows_numeric(&e.to_dense_f64()).unwrap();
        assert!(e.is_positive_definite());
        assert!(f.is_positive_definite());
    }

    #[test]
    fn det_and_charpoly_agree_on_small_example() {
        // antidiagonal 1/2 block pair: eigenvalues +-1/2 each twice
        let mut m = SymMat::zeros_exact(4);
        m.set_exact(0, 3, rat(1, 2));
        m.set_exact(1, 2, rat(-1, 2));
        let det = m.det_exact().unwrap();
        assert_eq!(det, rat(1, 16));
        let cp = m.charpoly_exact().unwrap();
        // (t^2 - 1/4)^2 = t^4 - t^2/2 + 1/16
        let expected = UniPoly::new(vec![
            rat(1, 16),
            rat_int(0),
            rat(-1, 2),
            rat_int(0),
            rat_int(1),
        ]);
        assert_eq!(cp, expected);
    }

    #[test]
    fn asymmetric_rows_rejected() {
        let rows = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(3), rat_int(4)]];
        assert_eq!(
            SymMat::from_rows_exact(&rows).unwrap_err(),
            ExactError::NotSymmetric
        );
    }
}
