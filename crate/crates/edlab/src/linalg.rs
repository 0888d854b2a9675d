//! Small dense linear algebra over `f64`: just enough for the pencil and
//! critical-point engines. Everything is deterministic (no randomized
//! pivoting, fixed sweep orders) so runs are reproducible bit-for-bit.

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> DMat {
        let mut t = DMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &DMat) -> DMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for DMat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Cholesky factor L (lower triangular, `A = L L^T`); `None` if a pivot drops
/// below `tol * max diagonal`.
pub fn cholesky(a: &DMat, tol: f64) -> Option<DMat> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut maxdiag = 0f64;
    for i in 0..n {
        maxdiag = maxdiag.max(a[(i, i)].abs());
    }
    let floor = tol * maxdiag.max(1.0);
    let mut l = DMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= floor {
                    return None;
                }
                l[(i, j)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Some(l)
}

/// Solves `L x = b` for lower-triangular L.
pub fn solve_lower(l: &DMat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut x = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for j in 0..i {
            s -= l[(i, j)] * x[j];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves `L^T x = b` for lower-triangular L.
pub fn solve_lower_transposed(l: &DMat, b: &[f64]) -> Vec<f64> {
    let n = l.rows;
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= l[(j, i)] * x[j];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves a square system by partial-pivot LU; `None` if the matrix is
/// numerically singular.
pub fn solve(a: &DMat, b: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let mut piv = k;
        for r in k + 1..n {
            if m[(r, k)].abs() > m[(piv, k)].abs() {
                piv = r;
            }
        }
        if m[(piv, k)].abs() < 1e-300 {
            return None;
        }
        if piv != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            x.swap(k, piv);
        }
        for r in k + 1..n {
            let f = m[(r, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[(r, j)] -= f * m[(k, j)];
            }
            x[r] -= f * x[k];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= m[(i, j)] * x[j];
        }
        x[i] = s / m[(i, i)];
    }
    Some(x)
}

/// Symmetric eigendecomposition by cyclic Jacobi. Returns eigenvalues in
/// ascending order and the matching orthonormal eigenvectors as the columns
/// of the second component (`A = V diag(w) V^T`).
pub fn jacobi_eigen(a: &DMat) -> (Vec<f64>, DMat) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut v = DMat::identity(n);
    let scale = m.max_abs().max(1.0);
    for _sweep in 0..100 {
        let mut off = 0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = c * akp - s * akq;
                    m[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = c * apk - s * aqk;
                    m[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let w: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vs = DMat::zeros(n, n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            vs[(i, newj)] = v[(i, oldj)];
        }
    }
    (w, vs)
}

/// Thin SVD by one-sided Jacobi. Returns `(u_cols, sigma, v_cols)` with
/// singular values in descending order; `u` is `m x r`, `v` is `n x r`,
/// `r = min(m, n)`.
pub fn svd(a: &DMat) -> (DMat, Vec<f64>, DMat) {
    if a.rows < a.cols {
        let (v, s, u) = svd(&a.transpose());
        return (u, s, v);
    }
    let m = a.rows;
    let n = a.cols;
    let mut w = a.clone(); // columns get orthogonalized in place
    let mut v = DMat::identity(n);
    let scale = w.max_abs().max(1.0);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..m {
                    app += w[(i, p)] * w[(i, p)];
                    aqq += w[(i, q)] * w[(i, q)];
                    apq += w[(i, p)] * w[(i, q)];
                }
                if apq.abs() <= 1e-15 * scale * scale {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..m {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = c * wip - s * wiq;
                    w[(i, q)] = s * wip + c * wiq;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip - s * viq;
                    v[(i, q)] = s * vip + c * viq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sig: Vec<(f64, usize)> = (0..n)
        .map(|j| (norm2(&w.col(j)), j))
        .collect();
    sig.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut u = DMat::zeros(m, n);
    let mut vs = DMat::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (newj, &(s, oldj)) in sig.iter().enumerate() {
        sigma.push(s);
        for i in 0..m {
            u[(i, newj)] = if s > 1e-300 { w[(i, oldj)] / s } else { 0.0 };
        }
        for i in 0..n {
            vs[(i, newj)] = v[(i, oldj)];
        }
    }
    (u, sigma, vs)
}

/// Orthonormal basis of the orthogonal complement of the span of the rows of
/// `constraints` (each row a gradient). Used to project Hessians onto
/// tangent spaces. Returns a matrix whose columns form the basis.
pub fn tangent_basis(constraints: &[Vec<f64>], dim: usize) -> DMat {
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for c in constraints {
        let mut v = c.clone();
        for u in &ortho {
            let d = dot(&v, u);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= d * ui;
            }
        }
        let n = norm2(&v);
        if n > 1e-12 {
            for vi in v.iter_mut() {
                *vi /= n;
            }
            ortho.push(v);
        }
    }
    let n_constraints = ortho.len();
    let mut basis = DMat::zeros(dim, dim - n_constraints);
    let mut col = 0;
    for k in 0..dim {
        if col >= dim - n_constraints {
            break;
        }
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        for u in &ortho {
            let d = dot(&v, u);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= d * ui;
            }
        }
        for j in 0..col {
            let u = basis.col(j);
            let d = dot(&v, &u);
            for (vi, ui) in v.iter_mut().zip(&u) {
                *vi -= d * ui;
            }
        }
        let nn = norm2(&v);
        if nn > 1e-8 {
            for i in 0..dim {
                basis[(i, col)] = v[i] / nn;
            }
            col += 1;
        }
    }
    assert_eq!(col, dim - n_constraints, "tangent basis incomplete");
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let a = DMat::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ]);
        let (w, v) = jacobi_eigen(&a);
        // eigenvalues of this tridiagonal matrix: 2, (5 +- sqrt(9))/2 -> 1, 2, 4
        assert!((w[0] - 1.0).abs() < 1e-10);
        assert!((w[1] - 2.0).abs() < 1e-10);
        assert!((w[2] - 4.0).abs() < 1e-10);
        // A v = w v
        for j in 0..3 {
            let col = v.col(j);
            let av = a.mul_vec(&col);
            for i in 0..3 {
                assert!((av[i] - w[j] * col[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn svd_reconstructs() {
        let a = DMat::from_rows(&[
            vec![3.0, 1.0, -2.0, 0.5],
            vec![0.0, 2.0, 1.0, 1.0],
            vec![1.0, -1.0, 4.0, 2.0],
        ]);
        let (u, s, v) = svd(&a);
        let r = s.len();
        for i in 0..a.rows {
            for j in 0..a.cols {
                let mut acc = 0.0;
                for k in 0..r {
                    acc += u[(i, k)] * s[k] * v[(j, k)];
                }
                assert!((acc - a[(i, j)]).abs() < 1e-9, "entry ({i},{j})");
            }
        }
        assert!(s.windows(2).all(|w| w[0] >= w[1] - 1e-12));
    }

    #[test]
    fn cholesky_solve_round_trip() {
        let a = DMat::from_rows(&[vec![4.0, 1.0], vec![1.0, 3.0]]);
        let l = cholesky(&a, 1e-10).unwrap();
        let x = solve_lower(&l, &[5.0, 4.0]);
        let y = solve_lower_transposed(&l, &x);
        let back = a.mul_vec(&y);
        assert!((back[0] - 5.0).abs() < 1e-12);
        assert!((back[1] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn tangent_basis_is_orthonormal_complement() {
        let g1 = vec![1.0, 0.0, 0.0, 0.0];
        let g2 = vec![1.0, 1.0, 0.0, 0.0];
        let t = tangent_basis(&[g1.clone(), g2.clone()], 4);
        assert_eq!(t.cols, 2);
        for j in 0..2 {
            let c = t.col(j);
            assert!(dot(&c, &g1).abs() < 1e-12);
            assert!(dot(&c, &g2).abs() < 1e-12);
            assert!((norm2(&c) - 1.0).abs() < 1e-12);
        }
    }
}
