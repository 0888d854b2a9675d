//! Real symmetric matrix pencils containing a positive definite element:
//! simultaneous diagonalization, Segre symbols, and the ED degree / defect
//! of a smooth quadric hypersurface from the count of distinct eigenvalues.

use num_traits::Signed;
use thiserror::Error;

use crate::exactmath::{rat_int, BigRational, SymMat};
use crate::linalg::{cholesky, jacobi_eigen, solve_lower, DMat};

/// Default relative tolerance for eigenvalue clustering and the
/// degeneracy tests on numeric input.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum PencilError {
    #[error("second form is not positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("pencil degenerate: the two forms are proportional")]
    DegeneratePencil,
    #[error("quadric singular: det(M_F) = 0")]
    SingularQuadric,
    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("exact arithmetic failure: {0}")]
    Exact(#[from] crate::exactmath::ExactError),
}

/// Multiset of eigenvalue multiplicities in ascending eigenvalue order;
/// rendered in the classical bracket notation, e.g. `[(1,1),1,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreSymbol(pub Vec<usize>);

impl std::fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&m| {
                if m == 1 {
                    "1".to_string()
                } else {
                    format!("({})", vec!["1"; m].join(","))
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Result of simultaneously diagonalizing a pencil `A - t B` with `B`
/// positive definite: `S (A - t B) S^T = Lambda - t I`.
#[derive(Clone, Debug)]
pub struct PencilNormalForm {
    pub transform: DMat,
    /// Eigenvalues of `B^{-1} A`, ascending.
    pub eigenvalues: Vec<f64>,
    pub multiplicity_partition: Vec<(f64, usize)>,
    pub segre_symbol: SegreSymbol,
}

/// Cholesky-then-spectral construction: `B = L L^T`, diagonalize
/// `L^{-1} A L^{-T}`, and assemble `S = V^T L^{-1}`.
pub fn simultaneous_diagonalize(
    a: &SymMat,
    b: &SymMat,
    tol: f64,
) -> Result<PencilNormalForm, PencilError> {
    if a.dim() != b.dim() {
        return Err(PencilError::DimensionMismatch(a.dim(), b.dim()));
    }
    b.check_positive_definite(1e-10)
        .map_err(|e| PencilError::NotPositiveDefinite(e.to_string()))?;
    let n = a.dim();
    let bd = DMat::from_rows(&b.to_dense_f64());
    let ad = DMat::from_rows(&a.to_dense_f64());
    let l = cholesky(&bd, 1e-12).ok_or_else(|| {
        PencilError::NotPositiveDefinite("numeric Cholesky failed".to_string())
    })?;
    // C = L^{-1} A L^{-T}, assembled column by column
    let mut c = DMat::zeros(n, n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| ad[(i, j)]).collect();
        let w = solve_lower(&l, &col);
        for i in 0..n {
            c[(i, j)] = w[i];
        }
    }
    let mut c2 = DMat::zeros(n, n);
    for i in 0..n {
        let row: Vec<f64> = (0..n).map(|j| c[(i, j)]).collect();
        let w = solve_lower(&l, &row);
        for j in 0..n {
            c2[(i, j)] = w[j];
        }
    }
    // symmetrize against roundoff
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (c2[(i, j)] + c2[(j, i)]);
            c2[(i, j)] = v;
            c2[(j, i)] = v;
        }
    }
    let (evals, vmat) = jacobi_eigen(&c2);
    // S = V^T L^{-1}: solve L^T X = V, then S = X^T
    let mut s = DMat::zeros(n, n);
    for j in 0..n {
        let col = vmat.col(j);
        let x = crate::linalg::solve_lower_transposed(&l, &col);
        for i in 0..n {
            s[(j, i)] = x[i];
        }
    }
    let clusters = eigenvalue_cluster(&evals, tol);
    let symbol = SegreSymbol(clusters.iter().map(|&(_, m)| m).collect());
    Ok(PencilNormalForm {
        transform: s,
        eigenvalues: evals,
        multiplicity_partition: clusters,
        segre_symbol: symbol,
    })
}

/// Greedy gap clustering of sorted values: a new cluster starts whenever the
/// gap to the previous value exceeds `tol * (1 + |value|)`.
pub fn eigenvalue_cluster(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 0..sorted.len() {
        if i + 1 == sorted.len() || (sorted[i + 1] - sorted[i]).abs() > tol * (1.0 + sorted[i].abs())
        {
            let members = &sorted[start..=i];
            let mean = members.iter().sum::<f64>() / members.len() as f64;
            out.push((mean, members.len()));
            start = i + 1;
        }
    }
    out
}

/// Full analysis of the pair (quadric `F`, inner product `Q`).
#[derive(Clone, Debug)]
pub struct QuadricAnalysis {
    pub ed_degree: u32,
    pub ed_defect: u32,
    pub distinct_eigenvalues: usize,
    pub segre_symbol: SegreSymbol,
    pub eigenvalues: Vec<f64>,
    /// Inertia (positives, negatives) of `M_F`, for diagnostics.
    pub signature_f: (usize, usize),
    /// True when the multiplicity partition was certified by exact
    /// arithmetic rather than numeric clustering.
    pub exact: bool,
}

/// ED degree `2(r-1)` and defect `2(N+1-r)` of the smooth quadric
/// `V(F) in P^N` under the inner product `Q`, where `r` is the number of
/// distinct eigenvalues of `M_Q^{-1} M_F`.
///
/// Exact inputs get an exact multiplicity partition through the square-free
/// decomposition of `det(t M_Q - M_F)`; numeric inputs go through
/// simultaneous diagonalization and gap clustering.
pub fn quadric_ed_degree(m_f: &SymMat, m_q: &SymMat) -> Result<QuadricAnalysis, PencilError> {
    if m_f.dim() != m_q.dim() {
        return Err(PencilError::DimensionMismatch(m_f.dim(), m_q.dim()));
    }
    let n_proj = m_f.dim() - 1; // N, the ambient projective dimension
    m_q.check_positive_definite(1e-10)
        .map_err(|e| PencilError::NotPositiveDefinite(e.to_string()))?;

    let nf = simultaneous_diagonalize(m_f, m_q, DEFAULT_TOL)?;
    let evals = nf.eigenvalues.clone();

    // Proportionality test: A - lambda B with lambda = tr(B^{-1}A)/(N+1).
    let lambda = evals.iter().sum::<f64>() / evals.len() as f64;
    let scale = evals.iter().fold(0f64, |m, v| m.max(v.abs())).max(1e-30);
    if evals.iter().all(|v| (v - lambda).abs() <= DEFAULT_TOL * scale) {
        return Err(PencilError::DegeneratePencil);
    }
    // Smoothness of the quadric: no zero eigenvalue of B^{-1}A.
    if evals.iter().any(|v| v.abs() <= DEFAULT_TOL * scale) {
        return Err(PencilError::SingularQuadric);
    }

    let (partition, exact) = if m_f.is_exact() && m_q.is_exact() {
        (exact_partition(m_f, m_q)?, true)
    } else {
        (nf.multiplicity_partition.clone(), false)
    };
    let r = partition.len();
    let signature = (
        evals.iter().filter(|&&v| v > 0.0).count(),
        evals.iter().filter(|&&v| v < 0.0).count(),
    );
    Ok(QuadricAnalysis {
        ed_degree: 2 * (r as u32 - 1),
        ed_defect: 2 * (n_proj as u32 + 1 - r as u32),
        distinct_eigenvalues: r,
        segre_symbol: SegreSymbol(partition.iter().map(|&(_, m)| m).collect()),
        eigenvalues: evals,
        signature_f: signature,
        exact,
    })
}

/// Exact multiplicity partition of the pencil eigenvalues via the
/// square-free decomposition of `p(t) = det(t M_Q - M_F)`: each square-free
/// factor of multiplicity `m` contributes its real roots with multiplicity
/// `m`. All roots are real here because `M_Q` is positive definite.
fn exact_partition(m_f: &SymMat, m_q: &SymMat) -> Result<Vec<(f64, usize)>, PencilError> {
    let n = m_f.dim();
    // det(t M_Q - M_F) as a polynomial in t via Bareiss over Q[t]
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let f_ij = m_f.get_exact(i, j)?.clone();
            let q_ij = m_q.get_exact(i, j)?.clone();
            // entry q_ij * t - f_ij
            row.push(crate::exactmath::UniPoly::new(vec![-f_ij, q_ij]));
        }
        rows.push(row);
    }
    let det = polymat_det(rows);
    let sf = det
        .squarefree_decompose()
        .map_err(PencilError::Exact)?;
    let mut tagged: Vec<(f64, usize)> = Vec::new();
    for (factor, mult) in &sf.factors {
        for root in factor
            .real_roots_f64(1e-12)
            .map_err(PencilError::Exact)?
        {
            tagged.push((root, *mult as usize));
        }
    }
    tagged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(tagged)
}

/// Fraction-free determinant of a matrix of univariate polynomials.
fn polymat_det(mut m: Vec<Vec<crate::exactmath::UniPoly>>) -> crate::exactmath::UniPoly {
    use crate::exactmath::UniPoly;
    let n = m.len();
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n.saturating_sub(1) {
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

/// The image of the ED degree map of a fixed smooth real quadric in `P^N`
/// over positive definite inner products: every even value `2, 4, ..., 2N`,
/// each returned with a positive definite witness realizing it against the
/// quadric `x_0^2 + ... + x_{N-1}^2 - x_N^2`.
pub fn ed_degree_image_quadric(n_proj: usize) -> Vec<(u32, SymMat)> {
    assert!(n_proj >= 1);
    let dim = n_proj + 1;
    let mut out = Vec::new();
    for r in 2..=dim {
        // target eigenvalues of M_Q^{-1} M_F: r - 1 distinct positive values
        // among the first N coordinates, one negative value at the last
        let mut q_diag = Vec::with_capacity(dim);
        for i in 0..dim - 1 {
            let group = (i % (r - 1)) as i64;
            q_diag.push(rat_int(1 + group));
        }
        q_diag.push(rat_int(1));
        let witness = SymMat::diag_exact(&q_diag);
        out.push((2 * (r as u32 - 1), witness));
    }
    out
}

/// The fixed reference quadric used by [`ed_degree_image_quadric`]:
/// `diag(1, ..., 1, -1)`, smooth with nonempty real locus.
pub fn reference_quadric(n_proj: usize) -> SymMat {
    let dim = n_proj + 1;
    let mut d = vec![rat_int(1); dim];
    d[dim - 1] = rat_int(-1);
    SymMat::diag_exact(&d)
}

/// Gram matrix of the rank-one quadric `x0*x3 - x1*x2` on `P^3` (the binary
/// Segre surface).
pub fn segre_surface_gram() -> SymMat {
    let mut m = SymMat::zeros_exact(4);
    m.set_exact(0, 3, BigRational::new(1.into(), 2.into()));
    m.set_exact(1, 2, BigRational::new((-1).into(), 2.into()));
    m
}

/// Gram matrix of the conic `x0*x2 - x1^2` on `P^2` (rank-one symmetric
/// 2x2 matrices).
pub fn veronese_conic_gram() -> SymMat {
    let mut m = SymMat::zeros_exact(3);
    m.set_exact(0, 2, BigRational::new(1.into(), 2.into()));
    m.set_exact(1, 1, rat_int(-1));
    m
}
