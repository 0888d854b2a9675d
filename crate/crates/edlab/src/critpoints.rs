//! Numeric enumeration of real critical rank-one approximations for
//! matrices and symmetric matrices under an arbitrary positive definite
//! inner product, with a Morse-index census.
//!
//! Matrices: critical points of the distance from `u` to the cone of
//! rank-one matrices correspond to critical points of the linear functional
//! `F_u(x, y) = Q(u, x (x) y)` on the sphere bundle
//! `E_Q = { |x| = 1, q(x (x) y) = 1 }`; the critical rank-one matrix is
//! `lambda x (x) y` with `lambda = Q(u, x (x) y)` and squared distance
//! `q(u) - lambda^2`. The engine multistarts a damped Newton iteration on
//! the Lagrange system, deduplicates converged points, and assigns Morse
//! indices from the projected Hessian. Four points of `E_Q` lie over every
//! critical rank-one matrix, in index pairs `(k, n1 + n2 - k)`, which fixes
//! the census bookkeeping below.
//!
//! Symmetric matrices: same scheme on `F_u(x) = Q(u, x (x) x)` over
//! `{ q(x (x) x) = 1 }`; antipodal points are identified and each
//! contributes 2 to its own index slot.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::exactmath::SymMat;
use crate::linalg::{
    cholesky, dot, jacobi_eigen, norm2, norm_inf, solve, solve_lower_transposed, svd,
    tangent_basis, DMat,
};
use crate::workers;

/// Engine configuration. The zero value of `starts` means "pick
/// automatically": 50 x the generic ED degree of the format.
#[derive(Clone, Debug)]
pub struct CritConfig {
    pub seed: u64,
    pub starts: usize,
    pub max_newton_iters: usize,
    pub residual_tol: f64,
    pub dedup_tol: f64,
    pub value_cluster_tol: f64,
    pub hessian_zero_tol: f64,
    pub fallback_steps: usize,
}

impl Default for CritConfig {
    fn default() -> Self {
        CritConfig {
            seed: 0,
            starts: 0,
            max_newton_iters: 80,
            residual_tol: 1e-11,
            dedup_tol: 1e-6,
            value_cluster_tol: 1e-8,
            hessian_zero_tol: 1e-7,
            fallback_steps: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    pub x: Vec<f64>,
    /// Empty in the symmetric case.
    pub y: Vec<f64>,
    pub lambda: f64,
    #[serde(rename = "eps2")]
    pub eps_sq: f64,
    #[serde(rename = "index")]
    pub morse_index: usize,
    pub residual: f64,
    pub basin_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPointSet {
    pub points: Vec<CriticalPoint>,
    /// Set when a near-singular projected Hessian was seen: the data point
    /// is (numerically) non-generic and the census is not certified.
    pub non_generic: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseCensus {
    /// Critical-point counts by index on the double cover.
    pub m: Vec<u64>,
    pub betti: Vec<u64>,
    pub distinct_rank_one_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseReport {
    pub passed: bool,
    pub lines: Vec<String>,
}

/// Betti numbers of the sphere bundle over the product of unit spheres of
/// dimensions `n1`, `n2`.
pub fn betti_e_q(n1: usize, n2: usize) -> Vec<u64> {
    let mut b = vec![0u64; n1 + n2 + 1];
    b[0] += 1;
    b[n1 + n2] += 1;
    b[n1] += 1;
    b[n2] += 1;
    b
}

/// Betti numbers of the `n`-sphere.
pub fn betti_sphere(n: usize) -> Vec<u64> {
    let mut b = vec![0u64; n + 1];
    b[0] += 1;
    b[n] += 1;
    b
}

/// Strong Morse inequalities of a census against its Betti numbers, plus
/// the structural parity checks in the matrix case.
pub fn verify_morse_inequalities(
    census: &MorseCensus,
    matrix_dims: Option<(usize, usize)>,
) -> MorseReport {
    let mut lines = Vec::new();
    let mut passed = true;
    let dim = census.m.len() - 1;
    assert_eq!(census.betti.len(), census.m.len());
    for i in 0..=dim {
        let mut lhs: i64 = 0;
        let mut rhs: i64 = 0;
        for k in 0..=i {
            let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
            lhs += sign * census.m[k] as i64;
            rhs += sign * census.betti[k] as i64;
        }
        let ok = lhs >= rhs;
        passed &= ok;
        lines.push(format!(
            "morse inequality i={i}: sum(-1)^(i-k) m_k = {lhs} >= {rhs} {}",
            if ok { "ok" } else { "VIOLATED" }
        ));
        if i == dim {
            let ok = lhs == rhs;
            passed &= ok;
            lines.push(format!(
                "alternating sums equal at top: {lhs} == {rhs} {}",
                if ok { "ok" } else { "VIOLATED" }
            ));
        }
    }
    if let Some((n1, n2)) = matrix_dims {
        let even = census.m.iter().all(|&v| v % 2 == 0);
        passed &= even;
        lines.push(format!("all m_k even: {}", if even { "ok" } else { "VIOLATED" }));
        let pal = (0..=dim).all(|k| census.m[k] == census.m[dim - k]);
        passed &= pal;
        lines.push(format!(
            "palindrome m_k = m_(n1+n2-k): {}",
            if pal { "ok" } else { "VIOLATED" }
        ));
        let low = (0..n1.min(n2)).all(|k| census.m[k] >= 2);
        passed &= low;
        lines.push(format!(
            "m_k >= 2 below min(n1,n2): {}",
            if low { "ok" } else { "VIOLATED" }
        ));
    }
    MorseReport { passed, lines }
}

// ---------------------------------------------------------------------------
// Shared Newton machinery
// ---------------------------------------------------------------------------

struct NewtonOutcome {
    v: Vec<f64>,
    residual: f64,
}

/// Damped Newton on a square root-finding system with a monotone merit
/// (residual norm) line search; a bounded gradient-descent phase on the
/// merit function takes over when a Newton step stalls.
fn newton_solve(
    residual: &dyn Fn(&[f64]) -> Vec<f64>,
    jacobian: &dyn Fn(&[f64]) -> DMat,
    v0: Vec<f64>,
    tol: f64,
    max_iters: usize,
    fallback_steps: usize,
) -> Option<NewtonOutcome> {
    let mut v = v0;
    let mut fallback_budget = fallback_steps;
    for _ in 0..max_iters {
        let r = residual(&v);
        let rn = norm2(&r);
        if !rn.is_finite() {
            return None;
        }
        if rn < tol {
            return Some(NewtonOutcome { v, residual: norm_inf(&r) });
        }
        let j = jacobian(&v);
        let neg_r: Vec<f64> = r.iter().map(|&t| -t).collect();
        let Some(dv) = solve(&j, &neg_r) else {
            return None;
        };
        let mut alpha = 1.0f64;
        let mut accepted = false;
        while alpha > 1e-12 {
            let v2: Vec<f64> = v.iter().zip(&dv).map(|(a, b)| a + alpha * b).collect();
            let rn2 = norm2(&residual(&v2));
            if rn2.is_finite() && rn2 < (1.0 - 0.25 * alpha) * rn {
                v = v2;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            // descend the merit 0.5 |r|^2 along -J^T r for a while
            if fallback_budget == 0 {
                return None;
            }
            let mut improved = false;
            let mut merit = 0.5 * rn * rn;
            for _ in 0..fallback_budget.min(50) {
                let r = residual(&v);
                let j = jacobian(&v);
                let jt = j.transpose();
                let grad = jt.mul_vec(&r);
                let gn = norm2(&grad);
                if gn < 1e-14 {
                    break;
                }
                let mut step = merit.sqrt() / gn.max(1e-12);
                let mut ok = false;
                while step > 1e-14 {
                    let v2: Vec<f64> =
                        v.iter().zip(&grad).map(|(a, g)| a - step * g).collect();
                    let r2 = residual(&v2);
                    let m2 = 0.5 * dot(&r2, &r2);
                    if m2 < merit * (1.0 - 1e-4) {
                        v = v2;
                        merit = m2;
                        ok = true;
                        improved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if !ok {
                    break;
                }
                fallback_budget = fallback_budget.saturating_sub(1);
            }
            if !improved {
                return None;
            }
        }
    }
    None
}

fn gaussian(rng: &mut StdRng) -> f64 {
    // Box-Muller
    loop {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        let v = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        if v.is_finite() {
            return v;
        }
    }
}

fn random_unit(len: usize, rng: &mut StdRng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| gaussian(rng)).collect();
        let n = norm2(&v);
        if n > 1e-6 {
            return v.into_iter().map(|t| t / n).collect();
        }
    }
}

fn splitmix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Raw converged sample before deduplication.
#[derive(Clone, Debug)]
struct RawPoint {
    x: Vec<f64>,
    y: Vec<f64>,
    lambda: f64,
    residual: f64,
}

fn dedup(
    mut raws: Vec<RawPoint>,
    tol: f64,
) -> Vec<(RawPoint, usize)> {
    raws.sort_by(|a, b| {
        a.x.iter()
            .chain(&a.y)
            .partial_cmp(b.x.iter().chain(&b.y))
            .unwrap()
    });
    let mut reps: Vec<(RawPoint, usize)> = Vec::new();
    'outer: for r in raws {
        for (rep, count) in reps.iter_mut() {
            let dx = r
                .x
                .iter()
                .zip(&rep.x)
                .fold(0f64, |m, (a, b)| m.max((a - b).abs()));
            let dy = r
                .y
                .iter()
                .zip(&rep.y)
                .fold(0f64, |m, (a, b)| m.max((a - b).abs()));
            if dx < tol && dy < tol {
                *count += 1;
                if r.residual < rep.residual {
                    rep.x = r.x.clone();
                    rep.y = r.y.clone();
                    rep.lambda = r.lambda;
                    rep.residual = r.residual;
                }
                continue 'outer;
            }
        }
        reps.push((r, 1));
    }
    reps
}

// ---------------------------------------------------------------------------
// Matrix case
// ---------------------------------------------------------------------------

struct MatrixProblem {
    n1: usize, // projective dimensions
    n2: usize,
    m: DMat,      // Gram matrix on the tensor space, lexicographic basis
    z: Vec<f64>,  // M * vec(u)
    q_u: f64,     // q(u)
}

impl MatrixProblem {
    fn new(u: &DMat, gram: &SymMat) -> Result<Self, String> {
        let rows = u.rows;
        let cols = u.cols;
        let dim = rows * cols;
        if gram.dim() != dim {
            return Err(format!(
                "Gram matrix must be {dim} x {dim} for a {rows} x {cols} data matrix, got {}",
                gram.dim()
            ));
        }
        gram.check_positive_definite(1e-10)
            .map_err(|e| format!("inner product not positive definite: {e}"))?;
        let m = DMat::from_rows(&gram.to_dense_f64());
        let uvec: Vec<f64> = u.data.clone();
        let z = m.mul_vec(&uvec);
        let q_u = dot(&uvec, &z);
        Ok(MatrixProblem {
            n1: rows - 1,
            n2: cols - 1,
            m,
            z,
            q_u,
        })
    }

    fn idx(&self, i: usize, a: usize) -> usize {
        i * (self.n2 + 1) + a
    }

    fn n_x(&self) -> usize {
        self.n1 + 1
    }

    fn n_y(&self) -> usize {
        self.n2 + 1
    }

    /// P(x)_{ab} = sum_{i,j} x_i x_j M[(i,a),(j,b)]
    fn p_of_x(&self, x: &[f64]) -> DMat {
        let ny = self.n_y();
        let mut p = DMat::zeros(ny, ny);
        for a in 0..ny {
            for b in a..ny {
                let mut s = 0.0;
                for i in 0..self.n_x() {
                    if x[i] == 0.0 {
                        continue;
                    }
                    for j in 0..self.n_x() {
                        s += x[i] * x[j] * self.m[(self.idx(i, a), self.idx(j, b))];
                    }
                }
                p[(a, b)] = s;
                p[(b, a)] = s;
            }
        }
        p
    }

    /// R(y)_{ij} = sum_{a,b} y_a y_b M[(i,a),(j,b)]
    fn r_of_y(&self, y: &[f64]) -> DMat {
        let nx = self.n_x();
        let mut r = DMat::zeros(nx, nx);
        for i in 0..nx {
            for j in i..nx {
                let mut s = 0.0;
                for a in 0..self.n_y() {
                    if y[a] == 0.0 {
                        continue;
                    }
                    for b in 0..self.n_y() {
                        s += y[a] * y[b] * self.m[(self.idx(i, a), self.idx(j, b))];
                    }
                }
                r[(i, j)] = s;
                r[(j, i)] = s;
            }
        }
        r
    }

    fn vec_xy(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.n_x() * self.n_y()];
        for i in 0..self.n_x() {
            for a in 0..self.n_y() {
                v[self.idx(i, a)] = x[i] * y[a];
            }
        }
        v
    }

    /// T(x,y)_{ic} = sum_{a,j} y_a x_j M[(i,a),(j,c)]
    fn t_of_xy(&self, x: &[f64], y: &[f64]) -> DMat {
        let mut t = DMat::zeros(self.n_x(), self.n_y());
        for i in 0..self.n_x() {
            for c in 0..self.n_y() {
                let mut s = 0.0;
                for a in 0..self.n_y() {
                    for j in 0..self.n_x() {
                        s += y[a] * x[j] * self.m[(self.idx(i, a), self.idx(j, c))];
                    }
                }
                t[(i, c)] = s;
            }
        }
        t
    }

    fn f_value(&self, x: &[f64], y: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n_x() {
            for a in 0..self.n_y() {
                s += x[i] * y[a] * self.z[self.idx(i, a)];
            }
        }
        s
    }

    /// Unknown layout: [x, y, mu1, mu2].
    fn residual(&self, v: &[f64]) -> Vec<f64> {
        let (nx, ny) = (self.n_x(), self.n_y());
        let x = &v[..nx];
        let y = &v[nx..nx + ny];
        let mu1 = v[nx + ny];
        let mu2 = v[nx + ny + 1];
        let mv = self.m.mul_vec(&self.vec_xy(x, y));
        let mut out = Vec::with_capacity(nx + ny + 2);
        for i in 0..nx {
            // grad_x F - mu1 * 2 x_i - mu2 * grad_x g2
            let mut gx = 0.0;
            let mut ggx = 0.0;
            for a in 0..ny {
                gx += y[a] * self.z[self.idx(i, a)];
                ggx += y[a] * mv[self.idx(i, a)];
            }
            out.push(gx - 2.0 * mu1 * x[i] - 2.0 * mu2 * ggx);
        }
        for a in 0..ny {
            let mut gy = 0.0;
            let mut ggy = 0.0;
            for i in 0..nx {
                gy += x[i] * self.z[self.idx(i, a)];
                ggy += x[i] * mv[self.idx(i, a)];
            }
            out.push(gy - 2.0 * mu2 * ggy);
        }
        out.push(dot(x, x) - 1.0);
        let vxy = self.vec_xy(x, y);
        out.push(dot(&vxy, &self.m.mul_vec(&vxy)) - 1.0);
        out
    }

    fn jacobian(&self, v: &[f64]) -> DMat {
        let (nx, ny) = (self.n_x(), self.n_y());
        let x = &v[..nx];
        let y = &v[nx..nx + ny];
        let mu1 = v[nx + ny];
        let mu2 = v[nx + ny + 1];
        let dim = nx + ny + 2;
        let mv = self.m.mul_vec(&self.vec_xy(x, y));
        let r = self.r_of_y(y);
        let p = self.p_of_x(x);
        let t = self.t_of_xy(x, y);
        let mut j = DMat::zeros(dim, dim);
        // rows 0..nx: r1 = gx(y) - 2 mu1 x - 2 mu2 R(y) x
        for i in 0..nx {
            for jj in 0..nx {
                j[(i, jj)] = -2.0 * mu2 * r[(i, jj)] - if i == jj { 2.0 * mu1 } else { 0.0 };
            }
            for a in 0..ny {
                j[(i, nx + a)] =
                    self.z[self.idx(i, a)] - 2.0 * mu2 * (mv[self.idx(i, a)] + t[(i, a)]);
            }
            j[(i, nx + ny)] = -2.0 * x[i];
            // d r1 / d mu2 = -grad_x g2 = -2 sum_a y_a mv[(i,a)]
            let mut ggx = 0.0;
            for a in 0..ny {
                ggx += y[a] * mv[self.idx(i, a)];
            }
            j[(i, nx + ny + 1)] = -2.0 * ggx;
        }
        // rows nx..nx+ny: r2 = gy(x) - 2 mu2 P(x) y
        for a in 0..ny {
            for i in 0..nx {
                j[(nx + a, i)] =
                    self.z[self.idx(i, a)] - 2.0 * mu2 * (mv[self.idx(i, a)] + t[(i, a)]);
            }
            for b in 0..ny {
                j[(nx + a, nx + b)] = -2.0 * mu2 * p[(a, b)];
            }
            let mut ggy = 0.0;
            for i in 0..nx {
                ggy += x[i] * mv[self.idx(i, a)];
            }
            j[(nx + a, nx + ny + 1)] = -2.0 * ggy;
        }
        // row nx+ny: c1 = x.x - 1
        for i in 0..nx {
            j[(nx + ny, i)] = 2.0 * x[i];
        }
        // row nx+ny+1: c2 = q(x (x) y) - 1
        for i in 0..nx {
            let mut ggx = 0.0;
            for a in 0..ny {
                ggx += y[a] * mv[self.idx(i, a)];
            }
            j[(nx + ny + 1, i)] = 2.0 * ggx;
        }
        for a in 0..ny {
            let mut ggy = 0.0;
            for i in 0..nx {
                ggy += x[i] * mv[self.idx(i, a)];
            }
            j[(nx + ny + 1, nx + a)] = 2.0 * ggy;
        }
        j
    }

    /// Lagrangian Hessian over (x, y) at a critical point.
    fn lagrangian_hessian(&self, x: &[f64], y: &[f64], mu1: f64, mu2: f64) -> DMat {
        let (nx, ny) = (self.n_x(), self.n_y());
        let dim = nx + ny;
        let mv = self.m.mul_vec(&self.vec_xy(x, y));
        let r = self.r_of_y(y);
        let p = self.p_of_x(x);
        let t = self.t_of_xy(x, y);
        let mut h = DMat::zeros(dim, dim);
        for i in 0..nx {
            for jj in 0..nx {
                h[(i, jj)] = -2.0 * mu2 * r[(i, jj)] - if i == jj { 2.0 * mu1 } else { 0.0 };
            }
            for a in 0..ny {
                let val = self.z[self.idx(i, a)] - 2.0 * mu2 * (mv[self.idx(i, a)] + t[(i, a)]);
                h[(i, nx + a)] = val;
                h[(nx + a, i)] = val;
            }
        }
        for a in 0..ny {
            for b in 0..ny {
                h[(nx + a, nx + b)] = -2.0 * mu2 * p[(a, b)];
            }
        }
        h
    }

    fn constraint_gradients(&self, x: &[f64], y: &[f64]) -> Vec<Vec<f64>> {
        let (nx, ny) = (self.n_x(), self.n_y());
        let mv = self.m.mul_vec(&self.vec_xy(x, y));
        let mut g1 = vec![0.0; nx + ny];
        for i in 0..nx {
            g1[i] = 2.0 * x[i];
        }
        let mut g2 = vec![0.0; nx + ny];
        for i in 0..nx {
            let mut s = 0.0;
            for a in 0..ny {
                s += y[a] * mv[self.idx(i, a)];
            }
            g2[i] = 2.0 * s;
        }
        for a in 0..ny {
            let mut s = 0.0;
            for i in 0..nx {
                s += x[i] * mv[self.idx(i, a)];
            }
            g2[nx + a] = 2.0 * s;
        }
        vec![g1, g2]
    }
}

/// Multistart enumeration of the real critical rank-one approximations of
/// the data matrix `u` under the inner product with Gram matrix `gram`
/// (lexicographic rank-one basis). Returns the deduplicated points and the
/// Morse census over the sphere-bundle double cover.
pub fn critical_matrices(
    u: &[Vec<f64>],
    gram: &SymMat,
    cfg: &CritConfig,
) -> Result<(CriticalPointSet, MorseCensus), String> {
    let ud = DMat::from_rows(u);
    let prob = MatrixProblem::new(&ud, gram)?;
    let (nx, ny) = (prob.n_x(), prob.n_y());
    let starts = if cfg.starts > 0 {
        cfg.starts
    } else {
        let g = crate::formulas::generic_ed_degree(&crate::formulas::TensorFormat::matrices(
            prob.n1 as u32,
            prob.n2 as u32,
        ));
        50usize.saturating_mul(crate::formulas::to_u64(&g).min(100_000) as usize)
    };
    let scale = (1.0 + prob.q_u.abs() + norm_inf(&prob.z)).max(1.0);
    let tol = cfg.residual_tol * scale;

    let raws: Vec<Option<RawPoint>> = workers::parallel_map(starts, |s| {
        let mut rng = StdRng::seed_from_u64(splitmix(cfg.seed, s as u64));
        let x0 = random_unit(nx, &mut rng);
        let y_sphere = random_unit(ny, &mut rng);
        // map the sphere sample into the E_Q fiber via the Cholesky factor
        let p = prob.p_of_x(&x0);
        let l = cholesky(&p, 1e-12)?;
        let y0 = solve_lower_transposed(&l, &y_sphere);
        // least-squares multipliers for the start
        let grads = prob.constraint_gradients(&x0, &y0);
        let mut gf = vec![0.0; nx + ny];
        for i in 0..nx {
            let mut s = 0.0;
            for a in 0..ny {
                s += y0[a] * prob.z[prob.idx(i, a)];
            }
            gf[i] = s;
        }
        for a in 0..ny {
            let mut s = 0.0;
            for i in 0..nx {
                s += x0[i] * prob.z[prob.idx(i, a)];
            }
            gf[nx + a] = s;
        }
        let (mu1, mu2) = least_squares_two(&grads[0], &grads[1], &gf);
        let mut v0 = Vec::with_capacity(nx + ny + 2);
        v0.extend_from_slice(&x0);
        v0.extend_from_slice(&y0);
        v0.push(mu1);
        v0.push(mu2);
        let out = newton_solve(
            &|v| prob.residual(v),
            &|v| prob.jacobian(v),
            v0,
            tol,
            cfg.max_newton_iters,
            cfg.fallback_steps,
        )?;
        let mut x: Vec<f64> = out.v[..nx].to_vec();
        let mut y: Vec<f64> = out.v[nx..nx + ny].to_vec();
        let mut lambda = prob.f_value(&x, &y);
        // canonical representative: lambda > 0, first sizable coordinate of
        // x positive
        if lambda < 0.0 {
            for t in y.iter_mut() {
                *t = -*t;
            }
            lambda = -lambda;
        }
        if lambda.abs() < tol * 10.0 {
            return None; // zero scale: not a cone critical point
        }
        let flip = x
            .iter()
            .find(|t| t.abs() > 1e-7)
            .is_some_and(|t| *t < 0.0);
        if flip {
            for t in x.iter_mut() {
                *t = -*t;
            }
            for t in y.iter_mut() {
                *t = -*t;
            }
        }
        Some(RawPoint {
            x,
            y,
            lambda,
            residual: out.residual,
        })
    });

    let converged: Vec<RawPoint> = raws.into_iter().flatten().collect();
    let n_converged = converged.len();
    let reps = dedup(converged, cfg.dedup_tol);

    let mut warnings = Vec::new();
    if n_converged < starts / 10 {
        warnings.push(format!(
            "only {n_converged} of {starts} starts converged; coverage may be poor"
        ));
    }

    let dim_manifold = prob.n1 + prob.n2;
    let mut census = vec![0u64; dim_manifold + 1];
    let mut non_generic = false;
    let mut points = Vec::new();
    for (rep, basin) in reps {
        // multipliers at the converged point: mu2 = lambda / 2, mu1 = 0
        let mu2 = rep.lambda / 2.0;
        let mu1 = 0.0;
        let h = prob.lagrangian_hessian(&rep.x, &rep.y, mu1, mu2);
        let grads = prob.constraint_gradients(&rep.x, &rep.y);
        let basis = tangent_basis(&grads, nx + ny);
        let ph = basis.transpose().matmul(&h).matmul(&basis);
        let (evals, _) = jacobi_eigen(&ph);
        let h_scale = evals.iter().fold(0f64, |m, v| m.max(v.abs())).max(1.0);
        if evals
            .iter()
            .any(|v| v.abs() < cfg.hessian_zero_tol * h_scale)
        {
            non_generic = true;
        }
        let index = evals.iter().filter(|&&v| v < 0.0).count();
        if basin < 3 {
            warnings.push(format!(
                "point with value {:.6e} attracted only {basin} start(s)",
                prob.q_u - rep.lambda * rep.lambda
            ));
        }
        census[index] += 2;
        census[dim_manifold - index] += 2;
        points.push(CriticalPoint {
            x: rep.x,
            y: rep.y,
            lambda: rep.lambda,
            eps_sq: prob.q_u - rep.lambda * rep.lambda,
            morse_index: index,
            residual: rep.residual,
            basin_count: basin,
        });
    }
    points.sort_by(|a, b| a.eps_sq.partial_cmp(&b.eps_sq).unwrap());
    let distinct = points.len();
    Ok((
        CriticalPointSet {
            points,
            non_generic,
            warnings,
        },
        MorseCensus {
            m: census,
            betti: betti_e_q(prob.n1, prob.n2),
            distinct_rank_one_points: distinct,
        },
    ))
}

fn least_squares_two(a: &[f64], b: &[f64], target: &[f64]) -> (f64, f64) {
    let aa = dot(a, a);
    let ab = dot(a, b);
    let bb = dot(b, b);
    let at = dot(a, target);
    let bt = dot(b, target);
    let det = aa * bb - ab * ab;
    if det.abs() < 1e-300 {
        return (0.0, if bb > 1e-300 { bt / bb } else { 0.0 });
    }
    ((at * bb - bt * ab) / det, (bt * aa - at * ab) / det)
}

// ---------------------------------------------------------------------------
// Symmetric case
// ---------------------------------------------------------------------------

/// Index map for the monomial basis of the symmetric square: pairs
/// `(a, b)` with `a <= b` in lexicographic order.
pub fn sym_pairs(n_plus_1: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..n_plus_1 {
        for b in a..n_plus_1 {
            v.push((a, b));
        }
    }
    v
}

/// Frobenius Gram matrix on the symmetric square in the monomial basis:
/// diagonal entries 1 for squares, 2 for mixed pairs (so that
/// `q(u) = ||u||_F^2` for a symmetric matrix `u`).
pub fn frobenius_gram_symmetric(n_plus_1: usize) -> SymMat {
    let pairs = sym_pairs(n_plus_1);
    let diag: Vec<crate::exactmath::BigRational> = pairs
        .iter()
        .map(|&(a, b)| crate::exactmath::rat_int(if a == b { 1 } else { 2 }))
        .collect();
    SymMat::diag_exact(&diag)
}

/// Frobenius Gram matrix on the full matrix space: the identity.
pub fn frobenius_gram_matrices(rows: usize, cols: usize) -> SymMat {
    SymMat::identity_exact(rows * cols)
}

struct SymmetricProblem {
    n: usize, // projective dimension; vectors have n+1 coordinates
    pairs: Vec<(usize, usize)>,
    m: DMat,
    w: Vec<f64>, // M * m(u)
    q_u: f64,
}

impl SymmetricProblem {
    fn new(u: &[Vec<f64>], gram: &SymMat) -> Result<Self, String> {
        let np1 = u.len();
        for r in u {
            if r.len() != np1 {
                return Err("data matrix must be square".into());
            }
        }
        for i in 0..np1 {
            for j in i + 1..np1 {
                if (u[i][j] - u[j][i]).abs() > 1e-9 * (1.0 + u[i][j].abs()) {
                    return Err("data matrix must be symmetric".into());
                }
            }
        }
        let pairs = sym_pairs(np1);
        if gram.dim() != pairs.len() {
            return Err(format!(
                "Gram matrix must be {} x {} for symmetric {np1} x {np1} data, got {}",
                pairs.len(),
                pairs.len(),
                gram.dim()
            ));
        }
        gram.check_positive_definite(1e-10)
            .map_err(|e| format!("inner product not positive definite: {e}"))?;
        let m = DMat::from_rows(&gram.to_dense_f64());
        let mu: Vec<f64> = pairs.iter().map(|&(a, b)| u[a][b]).collect();
        let w = m.mul_vec(&mu);
        let q_u = dot(&mu, &w);
        Ok(SymmetricProblem {
            n: np1 - 1,
            pairs,
            m,
            w,
            q_u,
        })
    }

    fn np1(&self) -> usize {
        self.n + 1
    }

    fn m_of_x(&self, x: &[f64]) -> Vec<f64> {
        self.pairs.iter().map(|&(a, b)| x[a] * x[b]).collect()
    }

    /// Jacobian of `m(x)`: rows indexed by coordinates, columns by pairs.
    fn j_of_x(&self, x: &[f64]) -> DMat {
        let mut j = DMat::zeros(self.np1(), self.pairs.len());
        for (col, &(a, b)) in self.pairs.iter().enumerate() {
            if a == b {
                j[(a, col)] += 2.0 * x[a];
            } else {
                j[(a, col)] += x[b];
                j[(b, col)] += x[a];
            }
        }
        j
    }

    /// Unpacks a vector on pair space into the symmetric matrix it
    /// represents as a quadratic form Hessian: diag 2*v_(ii), off v_(ij).
    fn unpack2(&self, v: &[f64]) -> DMat {
        let mut h = DMat::zeros(self.np1(), self.np1());
        for (col, &(a, b)) in self.pairs.iter().enumerate() {
            if a == b {
                h[(a, a)] += 2.0 * v[col];
            } else {
                h[(a, b)] += v[col];
                h[(b, a)] += v[col];
            }
        }
        h
    }

    fn f_value(&self, x: &[f64]) -> f64 {
        dot(&self.m_of_x(x), &self.w)
    }

    /// Unknown layout: [x, mu].
    fn residual(&self, v: &[f64]) -> Vec<f64> {
        let np1 = self.np1();
        let x = &v[..np1];
        let mu = v[np1];
        let j = self.j_of_x(x);
        let mx = self.m_of_x(x);
        let vmx = self.m.mul_vec(&mx);
        let grad_f = j.mul_vec(&self.w);
        let grad_g = j.mul_vec(&vmx);
        let mut out: Vec<f64> = (0..np1)
            .map(|i| grad_f[i] - 2.0 * mu * grad_g[i])
            .collect();
        out.push(dot(&mx, &vmx) - 1.0);
        out
    }

    fn jacobian(&self, v: &[f64]) -> DMat {
        let np1 = self.np1();
        let x = &v[..np1];
        let mu = v[np1];
        let j = self.j_of_x(x);
        let mx = self.m_of_x(x);
        let vmx = self.m.mul_vec(&mx);
        let jm = j.matmul(&self.m); // (np1) x pairs
        let jmjt = jm.matmul(&j.transpose());
        let hess_f = self.unpack2(&self.w);
        let hess_g_part = self.unpack2(&vmx);
        let grad_g = j.mul_vec(&vmx);
        let dim = np1 + 1;
        let mut out = DMat::zeros(dim, dim);
        for i in 0..np1 {
            for k in 0..np1 {
                // d r_i / d x_k = HessF - 2 mu (unpack2(vmx) + J M J^T)
                out[(i, k)] =
                    hess_f[(i, k)] - 2.0 * mu * (hess_g_part[(i, k)] + jmjt[(i, k)]);
            }
            out[(i, np1)] = -2.0 * grad_g[i];
        }
        for k in 0..np1 {
            out[(np1, k)] = 2.0 * grad_g[k];
        }
        out
    }

    fn lagrangian_hessian(&self, x: &[f64], mu: f64) -> DMat {
        let np1 = self.np1();
        let j = self.j_of_x(x);
        let mx = self.m_of_x(x);
        let vmx = self.m.mul_vec(&mx);
        let jm = j.matmul(&self.m);
        let jmjt = jm.matmul(&j.transpose());
        let hess_f = self.unpack2(&self.w);
        let hess_g_part = self.unpack2(&vmx);
        let mut h = DMat::zeros(np1, np1);
        for i in 0..np1 {
            for k in 0..np1 {
                h[(i, k)] = hess_f[(i, k)] - 2.0 * mu * (hess_g_part[(i, k)] + jmjt[(i, k)]);
            }
        }
        h
    }
}

/// Multistart enumeration for symmetric matrices: critical points of
/// `Q(u, x (x) x)` on the quartic sphere `q(x (x) x) = 1`, antipodes
/// identified.
pub fn critical_symmetric(
    u: &[Vec<f64>],
    gram: &SymMat,
    cfg: &CritConfig,
) -> Result<(CriticalPointSet, MorseCensus), String> {
    let prob = SymmetricProblem::new(u, gram)?;
    let np1 = prob.np1();
    let starts = if cfg.starts > 0 {
        cfg.starts
    } else {
        let g = crate::formulas::generic_ed_degree(&crate::formulas::TensorFormat::veronese(
            2,
            prob.n as u32,
        ));
        50usize.saturating_mul(crate::formulas::to_u64(&g).min(100_000) as usize)
    };
    let scale = (1.0 + prob.q_u.abs() + norm_inf(&prob.w)).max(1.0);
    let tol = cfg.residual_tol * scale;

    let raws: Vec<Option<RawPoint>> = workers::parallel_map(starts, |s| {
        let mut rng = StdRng::seed_from_u64(splitmix(cfg.seed.wrapping_add(0xABCD), s as u64));
        let dir = random_unit(np1, &mut rng);
        // scale onto q(x (x) x) = 1
        let mx = prob.m_of_x(&dir);
        let qq = dot(&mx, &prob.m.mul_vec(&mx));
        if qq <= 0.0 {
            return None;
        }
        let c = qq.powf(-0.25);
        let x0: Vec<f64> = dir.iter().map(|t| t * c).collect();
        let j = prob.j_of_x(&x0);
        let grad_f = j.mul_vec(&prob.w);
        let grad_g = j.mul_vec(&prob.m.mul_vec(&prob.m_of_x(&x0)));
        let gg = dot(&grad_g, &grad_g);
        let mu0 = if gg > 1e-300 {
            dot(&grad_f, &grad_g) / (2.0 * gg)
        } else {
            0.0
        };
        let mut v0 = x0.clone();
        v0.push(mu0);
        let out = newton_solve(
            &|v| prob.residual(v),
            &|v| prob.jacobian(v),
            v0,
            tol,
            cfg.max_newton_iters,
            cfg.fallback_steps,
        )?;
        let mut x: Vec<f64> = out.v[..np1].to_vec();
        let lambda = prob.f_value(&x);
        if lambda.abs() < tol * 10.0 {
            return None;
        }
        let flip = x
            .iter()
            .find(|t| t.abs() > 1e-7)
            .is_some_and(|t| *t < 0.0);
        if flip {
            for t in x.iter_mut() {
                *t = -*t;
            }
        }
        Some(RawPoint {
            x,
            y: vec![],
            lambda,
            residual: out.residual,
        })
    });

    let converged: Vec<RawPoint> = raws.into_iter().flatten().collect();
    let n_converged = converged.len();
    let reps = dedup(converged, cfg.dedup_tol);
    let mut warnings = Vec::new();
    if n_converged < starts / 10 {
        warnings.push(format!(
            "only {n_converged} of {starts} starts converged; coverage may be poor"
        ));
    }

    let mut census = vec![0u64; prob.n + 1];
    let mut non_generic = false;
    let mut points = Vec::new();
    for (rep, basin) in reps {
        let mu = rep.lambda / 2.0;
        let h = prob.lagrangian_hessian(&rep.x, mu);
        let j = prob.j_of_x(&rep.x);
        let grad_g: Vec<f64> = {
            let mx = prob.m_of_x(&rep.x);
            let vmx = prob.m.mul_vec(&mx);
            j.mul_vec(&vmx).iter().map(|t| 2.0 * t).collect()
        };
        let basis = tangent_basis(&[grad_g], np1);
        let ph = basis.transpose().matmul(&h).matmul(&basis);
        let (evals, _) = jacobi_eigen(&ph);
        let h_scale = evals.iter().fold(0f64, |m, v| m.max(v.abs())).max(1.0);
        if evals
            .iter()
            .any(|v| v.abs() < cfg.hessian_zero_tol * h_scale)
        {
            non_generic = true;
        }
        let index = evals.iter().filter(|&&v| v < 0.0).count();
        if basin < 3 {
            warnings.push(format!(
                "point with value {:.6e} attracted only {basin} start(s)",
                prob.q_u - rep.lambda * rep.lambda
            ));
        }
        census[index] += 2; // antipodal pair
        points.push(CriticalPoint {
            x: rep.x,
            y: vec![],
            lambda: rep.lambda,
            eps_sq: prob.q_u - rep.lambda * rep.lambda,
            morse_index: index,
            residual: rep.residual,
            basin_count: basin,
        });
    }
    points.sort_by(|a, b| a.eps_sq.partial_cmp(&b.eps_sq).unwrap());
    let distinct = points.len();
    Ok((
        CriticalPointSet {
            points,
            non_generic,
            warnings,
        },
        MorseCensus {
            m: census,
            betti: betti_sphere(prob.n),
            distinct_rank_one_points: distinct,
        },
    ))
}

// ---------------------------------------------------------------------------
// Frobenius oracles
// ---------------------------------------------------------------------------

/// Ground-truth critical points in the Frobenius case, from the singular
/// value decomposition: `sigma_i u_i (x) v_i` with squared distance
/// `||u||_F^2 - sigma_i^2`. Fails when singular values collide or vanish
/// (non-generic data).
pub fn frobenius_oracle_matrices(u: &[Vec<f64>]) -> Result<Vec<(f64, Vec<f64>, Vec<f64>, f64)>, String> {
    let ud = DMat::from_rows(u);
    let (usv, sigma, vsv) = svd(&ud);
    let fro2: f64 = ud.data.iter().map(|v| v * v).sum();
    let smax = sigma.first().copied().unwrap_or(0.0);
    for w in sigma.windows(2) {
        if (w[0] - w[1]).abs() < 1e-8 * smax.max(1.0) {
            return Err("repeated singular values: non-generic data".into());
        }
    }
    if sigma.iter().any(|&s| s < 1e-8 * smax.max(1.0)) {
        return Err("vanishing singular value: non-generic data".into());
    }
    Ok(sigma
        .iter()
        .enumerate()
        .map(|(k, &s)| (s, usv.col(k), vsv.col(k), fro2 - s * s))
        .collect())
}

/// Ground truth for symmetric matrices: the eigendecomposition,
/// `lambda_i v_i (x) v_i` with squared distance `||u||_F^2 - lambda_i^2`.
pub fn frobenius_oracle_symmetric(u: &[Vec<f64>]) -> Result<Vec<(f64, Vec<f64>, f64)>, String> {
    let ud = DMat::from_rows(u);
    let (evals, evecs) = jacobi_eigen(&ud);
    let fro2: f64 = ud.data.iter().map(|v| v * v).sum();
    let scale = evals.iter().fold(0f64, |m, v| m.max(v.abs())).max(1.0);
    for w in evals.windows(2) {
        if (w[0] - w[1]).abs() < 1e-8 * scale {
            return Err("repeated eigenvalues: non-generic data".into());
        }
    }
    if evals.iter().any(|&l| l.abs() < 1e-8 * scale) {
        return Err("vanishing eigenvalue: non-generic data".into());
    }
    Ok(evals
        .iter()
        .enumerate()
        .map(|(k, &l)| (l, evecs.col(k), fro2 - l * l))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_int;

    fn cfg(seed: u64, starts: usize) -> CritConfig {
        CritConfig {
            seed,
            starts,
            ..CritConfig::default()
        }
    }

    #[test]
    fn diag_matrix_frobenius_reference() {
        let u = vec![vec![3.0, 0.0], vec![0.0, 1.0]];
        let gram = frobenius_gram_matrices(2, 2);
        let (set, census) = critical_matrices(&u, &gram, &cfg(1, 200)).unwrap();
        assert_eq!(set.points.len(), 2);
        let values: Vec<f64> = set.points.iter().map(|p| p.eps_sq).collect();
        assert!((values[0] - 1.0).abs() < 1e-8);
        assert!((values[1] - 9.0).abs() < 1e-8);
        assert_eq!(census.m, vec![2, 4, 2]);
        assert_eq!(census.betti, vec![1, 2, 1]);
        let report = verify_morse_inequalities(&census, Some((1, 1)));
        assert!(report.passed, "{:?}", report.lines);
        // lambda = Q(u, x (x) y) within 1e-9 relative holds by construction;
        // spot check the top singular triplet
        let top = &set.points[0];
        assert!((top.lambda - 3.0).abs() < 1e-8);
    }

    #[test]
    fn random_rect_matrix_matches_svd_oracle() {
        let mut rng = StdRng::seed_from_u64(5);
        let u: Vec<Vec<f64>> = (0..3)
            .map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let gram = frobenius_gram_matrices(3, 4);
        let (set, census) = critical_matrices(&u, &gram, &cfg(2, 400)).unwrap();
        let oracle = frobenius_oracle_matrices(&u).unwrap();
        assert_eq!(set.points.len(), 3, "min(2,3)+1 critical points");
        assert_eq!(census.distinct_rank_one_points, 3);
        let mut got: Vec<f64> = set.points.iter().map(|p| p.eps_sq).collect();
        let mut want: Vec<f64> = oracle.iter().map(|o| o.3).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-6, "value mismatch {g} vs {w}");
        }
        let report = verify_morse_inequalities(&census, Some((2, 3)));
        assert!(report.passed, "{:?}", report.lines);
    }

    #[test]
    fn symmetric_diag_reference() {
        let u = vec![
            vec![5.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let gram = frobenius_gram_symmetric(3);
        let (set, census) = critical_symmetric(&u, &gram, &cfg(3, 300)).unwrap();
        assert_eq!(set.points.len(), 3);
        let fro2 = 25.0 + 4.0 + 1.0;
        let mut got: Vec<f64> = set.points.iter().map(|p| p.eps_sq).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want = [fro2 - 25.0, fro2 - 4.0, fro2 - 1.0];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-8);
        }
        let report = verify_morse_inequalities(&census, None);
        assert!(report.passed, "{:?}", report.lines);
        assert_eq!(census.m, vec![2, 2, 2]);
    }

    #[test]
    fn symmetric_general_pd_count_bounds() {
        let mut rng = StdRng::seed_from_u64(11);
        // random SPD Gram on the 6-dimensional symmetric square (n = 2)
        for trial in 0..5 {
            let dim = 6;
            let a: Vec<Vec<f64>> = (0..dim)
                .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let mut rows = vec![vec![0.0; dim]; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = if i == j { 0.8 } else { 0.0 };
                    for a_row in &a {
                        s += a_row[i] * a_row[j];
                    }
                    rows[i][j] = s;
                }
            }
            let gram = SymMat::from_rows_numeric(&rows).unwrap();
            let u: Vec<Vec<f64>> = {
                let mut m = vec![vec![0.0; 3]; 3];
                for i in 0..3 {
                    for j in i..3 {
                        let v = rng.gen_range(-1.0..1.0);
                        m[i][j] = v;
                        m[j][i] = v;
                    }
                }
                m
            };
            let (set, _) = critical_symmetric(&u, &gram, &cfg(trial, 900)).unwrap();
            let count = set.points.len();
            assert!(count >= 3, "trial {trial}: fewer than n+1 = 3 points: {count}");
            assert!(count <= 13, "trial {trial}: more than gEDeg = 13 points: {count}");
        }
    }

    #[test]
    fn determinism_same_seed_same_report() {
        let u = vec![vec![0.3, -1.2, 0.7], vec![1.1, 0.4, -0.5]];
        let gram = frobenius_gram_matrices(2, 3);
        let (s1, c1) = critical_matrices(&u, &gram, &cfg(9, 150)).unwrap();
        let (s2, c2) = critical_matrices(&u, &gram, &cfg(9, 150)).unwrap();
        assert_eq!(
            serde_json::to_string(&s1).unwrap(),
            serde_json::to_string(&s2).unwrap()
        );
        assert_eq!(c1.m, c2.m);
    }

    #[test]
    fn betti_reference_values() {
        assert_eq!(betti_e_q(1, 1), vec![1, 2, 1]);
        assert_eq!(betti_e_q(1, 2), vec![1, 1, 1, 1]);
        assert_eq!(betti_sphere(3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn oracle_values_invariant_under_orthogonal_transforms() {
        let u = vec![vec![1.5, -0.3, 0.8], vec![0.2, 2.1, -1.0]];
        let base: Vec<f64> = {
            let mut v: Vec<f64> = frobenius_oracle_matrices(&u)
                .unwrap()
                .iter()
                .map(|o| o.3)
                .collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        };
        // row swap with a sign flip is orthogonal on the left
        let flipped = vec![
            u[1].iter().map(|v| -v).collect::<Vec<f64>>(),
            u[0].clone(),
        ];
        let mut other: Vec<f64> = frobenius_oracle_matrices(&flipped)
            .unwrap()
            .iter()
            .map(|o| o.3)
            .collect();
        other.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in base.iter().zip(&other) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn oracle_rejects_repeated_singular_values() {
        let u = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(frobenius_oracle_matrices(&u).is_err());
    }

    #[test]
    fn non_pd_gram_rejected() {
        let u = vec![vec![1.0, 0.0], vec![0.0, 2.0]];
        let gram = SymMat::diag_exact(&[rat_int(1), rat_int(-1), rat_int(1), rat_int(1)]);
        assert!(critical_matrices(&u, &gram, &cfg(0, 10)).is_err());
    }
}
