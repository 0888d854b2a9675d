//! Elimination-based ED polynomials of rational normal curves at exact
//! rational data, plus the tangency / leading-coefficient diagnostics for
//! the plane conic.
//!
//! For the degree-`d` curve parametrized by `v(t) = (1, t, ..., t^d)` the
//! squared distance from `u` to the cone point `s v(t)` is minimized over
//! the scale at `s(t) = Q(u, v(t)) / q(v(t))`, leaving
//! `psi(t) = q(u) - Q(u, v(t))^2 / q(v(t))`. Critical points along the curve
//! satisfy `g(t) = 2 Qu'(t) qv(t) - Qu(t) qv'(t) = 0` (the spurious factor
//! `Qu(t)`, whose roots have zero scale, is dropped up front), and the value
//! relation is `h(t, e) = (e - q(u)) qv(t) + Qu(t)^2 = 0` with `e` standing
//! for the squared distance. Eliminating `t` by a Sylvester resultant gives
//! the ED polynomial in `e`; multiple isotropic intersection points absorb
//! roots of `g` into `e`-free constants, so the degree drop reproduces the
//! ED defect. The chart at infinity is inspected separately.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::exactmath::{
    format_rat, rat_int, resultant, BigRational, PolyInX, SymMat, UniPoly,
};
use crate::rnc;

#[derive(Debug, Error)]
pub enum EdPolyError {
    #[error("the curve lies inside the quadric: ED degree is zero")]
    CurveContained,
    #[error("data point is non-generic for this elimination; resample")]
    NonGenericData,
    #[error("the bilinear form must be nondegenerate (det M_Q != 0)")]
    DegenerateForm,
    #[error("data vector must have length d+1: got {0} for d = {1}")]
    WrongDimension(usize, u32),
    #[error(transparent)]
    Rnc(#[from] rnc::RncError),
    #[error("exact arithmetic failure: {0}")]
    Exact(#[from] crate::exactmath::ExactError),
}

/// ED polynomial in the squared-distance variable, normalized to coprime
/// integer coefficients with positive leading coefficient.
#[derive(Clone, Debug)]
pub struct EdPolynomial {
    pub poly: UniPoly,
    pub degree: usize,
    /// Rational content removed by the normalization (the resultant's
    /// extraneous factor; independent of the squared-distance variable).
    pub removed_content: BigRational,
    /// Squared-distance value of a critical point at `[0:1]`, when one
    /// exists; its linear factor is already included in `poly`.
    pub infinity_value: Option<BigRational>,
    /// The inputs that produced this polynomial.
    pub provenance: Provenance,
}

/// Input record kept with each eliminated polynomial.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub d: u32,
    pub u: Vec<String>,
    pub gram_digest: String,
}

impl EdPolynomial {
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.poly.coeffs().iter().map(format_rat).collect()
    }
}

struct ChartData {
    qv: UniPoly,
    qu: UniPoly,
    q_of_u: BigRational,
}

/// Builds `qv(t) = q(v(t))` and `Qu(t) = Q(u, v(t))` in the affine chart,
/// plus the corresponding data for the chart at infinity when `reverse` is
/// set (coefficients read off in reverse order).
fn chart_data(
    u: &[BigRational],
    m_q: &SymMat,
    d: u32,
    reverse: bool,
) -> Result<ChartData, EdPolyError> {
    let dim = d as usize + 1;
    // qv coefficients: c_m = sum_{i+j=m} M[i][j]
    let mut c = vec![BigRational::zero(); 2 * d as usize + 1];
    for i in 0..dim {
        for j in 0..dim {
            c[i + j] = &c[i + j] + m_q.get_exact(i, j)?;
        }
    }
    let mu = m_q.mul_vec_exact(u)?;
    let q_of_u = u
        .iter()
        .zip(&mu)
        .map(|(a, b)| a * b)
        .fold(BigRational::zero(), |s, t| s + t);
    if reverse {
        c.reverse();
    }
    let qu = if reverse {
        UniPoly::new(mu.iter().rev().cloned().collect())
    } else {
        UniPoly::new(mu)
    };
    Ok(ChartData {
        qv: UniPoly::new(c),
        qu,
        q_of_u,
    })
}

fn critical_equation(data: &ChartData) -> UniPoly {
    let two = UniPoly::constant(rat_int(2));
    &(&(&two * &data.qu.derivative()) * &data.qv) - &(&data.qu * &data.qv.derivative())
}

/// The ED polynomial of the degree-`d` rational normal curve at data vector
/// `u` (length `d+1`) and exact nondegenerate Gram matrix `m_q`.
pub fn ed_polynomial_rnc(
    u: &[BigRational],
    m_q: &SymMat,
    d: u32,
) -> Result<EdPolynomial, EdPolyError> {
    if m_q.det_exact()?.is_zero() {
        return Err(EdPolyError::DegenerateForm);
    }
    eliminate(u, m_q, d)
}

/// Elimination core; does not insist on nondegeneracy of the form (the
/// structure checks below probe singular forms deliberately).
fn eliminate(u: &[BigRational], m_q: &SymMat, d: u32) -> Result<EdPolynomial, EdPolyError> {
    if u.len() != d as usize + 1 {
        return Err(EdPolyError::WrongDimension(u.len(), d));
    }
    let chart = chart_data(u, m_q, d, false)?;
    if chart.qv.is_zero() {
        return Err(EdPolyError::CurveContained);
    }
    let g = critical_equation(&chart);
    if g.is_zero() {
        return Err(EdPolyError::NonGenericData);
    }

    let raw = chart_resultant(&g, &chart)?;
    let mut poly = raw;

    // Chart at infinity: v(w) = (w^d, ..., w, 1) around w = 0. The point
    // [0:1] contributes a critical value iff g_inf(0) = 0 with the point
    // neither isotropic (qv_inf(0) = 0) nor of zero scale (qu_inf(0) = 0).
    let inf = chart_data(u, m_q, d, true)?;
    let g_inf = critical_equation(&inf);
    let mut infinity_value = None;
    let at_zero = |p: &UniPoly| p.coeff(0);
    if !g_inf.is_zero()
        && at_zero(&g_inf).is_zero()
        && !at_zero(&inf.qv).is_zero()
        && !at_zero(&inf.qu).is_zero()
    {
        let qu0 = at_zero(&inf.qu);
        let value = &inf.q_of_u - &(&qu0 * &qu0 / at_zero(&inf.qv));
        poly = &poly * &UniPoly::new(vec![-value.clone(), BigRational::one()]);
        infinity_value = Some(value);
    }

    if poly.is_zero() {
        return Err(EdPolyError::NonGenericData);
    }
    let (content, prim) = poly.content_primitive();
    let degree = prim.degree().unwrap_or(0);
    debug_assert!(
        degree <= (3 * d - 2).max(1) as usize,
        "extraneous-factor accounting violated: degree {degree} at d = {d}"
    );
    let mut gram_bytes = Vec::new();
    for i in 0..m_q.dim() {
        for j in i..m_q.dim() {
            gram_bytes.extend_from_slice(format_rat(m_q.get_exact(i, j)?).as_bytes());
            gram_bytes.push(b';');
        }
    }
    Ok(EdPolynomial {
        poly: prim,
        degree,
        removed_content: content,
        infinity_value,
        provenance: Provenance {
            d,
            u: u.iter().map(format_rat).collect(),
            gram_digest: crate::report::digest(&gram_bytes),
        },
    })
}

/// `Res_t(g(t), (e - q(u)) qv(t) + Qu(t)^2)` as a polynomial in `e`.
fn chart_resultant(g: &UniPoly, chart: &ChartData) -> Result<UniPoly, EdPolyError> {
    let qu2 = &chart.qu * &chart.qu;
    let deg_h = chart.qv.degree().unwrap().max(qu2.degree().unwrap_or(0));
    let mut h_coeffs = Vec::with_capacity(deg_h + 1);
    for m in 0..=deg_h {
        // coefficient of t^m: qv_m * (e - q(u)) + (Qu^2)_m
        let qv_m = chart.qv.coeff(m);
        let const_part = qu2.coeff(m) - &qv_m * &chart.q_of_u;
        h_coeffs.push(UniPoly::new(vec![const_part, qv_m]));
    }
    let g_in_x = PolyInX::from_unipoly_in_x(g);
    let h_in_x = PolyInX::new(h_coeffs);
    if h_in_x.is_zero() {
        return Err(EdPolyError::NonGenericData);
    }
    if h_in_x.degree_x() == Some(0) || g_in_x.degree_x() == Some(0) {
        // no finite critical points feed the value relation
        return Ok(UniPoly::one());
    }
    resultant(&g_in_x, &h_in_x).map_err(EdPolyError::Exact)
}

/// Maximum observed ED-polynomial degree over random rational data vectors:
/// an empirical ED degree of the curve under `m_q`.
pub fn degree_drop_probe(
    m_q: &SymMat,
    d: u32,
    trials: usize,
    seed: u64,
) -> Result<usize, EdPolyError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best = 0usize;
    let mut successes = 0usize;
    let mut attempts = 0usize;
    while successes < trials && attempts < trials * 20 {
        attempts += 1;
        let u = random_rational_vector(d as usize + 1, &mut rng);
        match ed_polynomial_rnc(&u, m_q, d) {
            Ok(p) => {
                best = best.max(p.degree);
                successes += 1;
            }
            Err(EdPolyError::NonGenericData) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

pub fn random_rational_vector(len: usize, rng: &mut StdRng) -> Vec<BigRational> {
    (0..len).map(|_| rat_int(rng.gen_range(-20i64..=20))).collect()
}

/// Is the exact 3x3 form tangent to the plane conic? Decided exactly: the
/// restricted binary quartic has a repeated projective root (equivalently
/// zero discriminant). Total containment counts as tangency.
pub fn conic_tangency_test(m_q: &SymMat) -> Result<bool, EdPolyError> {
    match rnc::restrict_to_curve(m_q, 2) {
        Ok(f) => Ok(f.points.iter().any(|p| p.multiplicity >= 2)),
        Err(rnc::RncError::CurveContained) => Ok(true),
        Err(e) => Err(EdPolyError::Rnc(e)),
    }
}

const SEXTIC_FIXTURE: &str = include_str!("../fixtures/conic_dual_sextic.txt");

fn sextic_terms() -> Vec<([u32; 6], BigInt)> {
    SEXTIC_FIXTURE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(parts.len(), 7, "bad fixture line: {l}");
            let mut e = [0u32; 6];
            for (i, p) in parts[..6].iter().enumerate() {
                e[i] = p.parse().expect("bad exponent");
            }
            let c: i64 = parts[6].parse().expect("bad coefficient");
            (e, BigInt::from(c))
        })
        .collect()
}

/// Conic coefficients `(q200, q110, q101, q020, q011, q002)` from a Gram
/// matrix; off-diagonal Gram entries are half the corresponding monomial
/// coefficients.
pub fn conic_coefficients(m_q: &SymMat) -> Result<[BigRational; 6], EdPolyError> {
    let two = rat_int(2);
    Ok([
        m_q.get_exact(0, 0)?.clone(),
        m_q.get_exact(0, 1)?.clone() * &two,
        m_q.get_exact(0, 2)?.clone() * &two,
        m_q.get_exact(1, 1)?.clone(),
        m_q.get_exact(1, 2)?.clone() * &two,
        m_q.get_exact(2, 2)?.clone(),
    ])
}

/// Evaluates the stored degree-6 equation of the locus of conics tangent to
/// the plane conic; vanishes exactly on tangent forms.
pub fn conic_sextic_fixture_eval(m_q: &SymMat) -> Result<BigRational, EdPolyError> {
    let q = conic_coefficients(m_q)?;
    let mut acc = BigRational::zero();
    for (e, c) in sextic_terms() {
        let mut term = BigRational::from_integer(c);
        for (qi, &ei) in q.iter().zip(&e) {
            for _ in 0..ei {
                term = term * qi;
            }
        }
        acc = acc + term;
    }
    Ok(acc)
}

/// Exact sample of a conic tangent to the curve: plant a repeated rational
/// root in the restricted quartic and lift back to a Gram matrix (the fiber
/// has one free parameter).
pub fn random_tangent_conic(rng: &mut StdRng) -> SymMat {
    // b(t) = (t - a)^2 (b2 t^2 + b1 t + b0), then solve for the Gram entries
    let a = rat_int(rng.gen_range(-5i64..=5));
    let b2 = rat_int(rng.gen_range(1i64..=5));
    let b1 = rat_int(rng.gen_range(-5i64..=5));
    let b0 = rat_int(rng.gen_range(-5i64..=5));
    let sq = UniPoly::from_roots(&[a.clone(), a]);
    let quad = UniPoly::new(vec![b0, b1, b2]);
    let b = &sq * &quad;
    gram_from_quartic(&b, rat_int(rng.gen_range(-4i64..=4)))
}

/// Any 3x3 symmetric matrix restricting to the given quartic `b`; the free
/// parameter is the (0,2) entry.
pub fn gram_from_quartic(b: &UniPoly, free: BigRational) -> SymMat {
    let mut m = SymMat::zeros_exact(3);
    let half = BigRational::new(1.into(), 2.into());
    m.set_exact(0, 0, b.coeff(0));
    m.set_exact(0, 1, b.coeff(1) * &half);
    m.set_exact(0, 2, free.clone());
    m.set_exact(1, 1, b.coeff(2) - &free - &free);
    m.set_exact(1, 2, b.coeff(3) * &half);
    m.set_exact(2, 2, b.coeff(4));
    m
}

/// One scaling-law violation found by [`coefficient_scaling_check`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScalingViolation {
    pub sample: usize,
    pub coefficient: usize,
    pub law: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ScalingReport {
    pub d: u32,
    pub samples_checked: usize,
    pub violations: Vec<ScalingViolation>,
}

/// Verifies the coefficient scaling laws of the ED polynomial on random
/// exact data. Writing `r_i = p_i / p_D` for the projective coefficient
/// ratios of the degree-`D` polynomial:
///
/// - under `u -> lambda u` the ratio scales by `lambda^(du_i - du_D)` where
///   `du_i` is the `u`-degree of `p_i`; for the conic (`d = 2`) the bidegree
///   table is `(8 - 2i, 10 - i)`, and for transversal forms in general
///   `du_i = 2(D - i)`;
/// - under `Q -> mu Q` (conic only) the ratio scales by `mu^(4 - i)`.
pub fn coefficient_scaling_check(
    d: u32,
    samples: usize,
    seed: u64,
) -> Result<ScalingReport, EdPolyError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let gedeg = (3 * d - 2) as usize;
    let mut done = 0usize;
    let mut violations = Vec::new();
    let mut guard = 0usize;
    while done < samples {
        guard += 1;
        if guard > samples * 30 {
            return Err(EdPolyError::NonGenericData);
        }
        let q = rnc::random_spd_exact(d as usize + 1, &mut rng);
        let u = random_rational_vector(d as usize + 1, &mut rng);
        let lambda = rat_int(rng.gen_range(2i64..=5));
        let mu = rat_int(rng.gen_range(2i64..=5));
        let e0 = match ed_polynomial_rnc(&u, &q, d) {
            Ok(p) => p,
            Err(EdPolyError::NonGenericData) => continue,
            Err(e) => return Err(e),
        };
        // only full-degree (transversal) samples carry the tabulated bidegrees
        if e0.degree != gedeg {
            continue;
        }
        let u_scaled: Vec<BigRational> = u.iter().map(|v| v * &lambda).collect();
        let e1 = match ed_polynomial_rnc(&u_scaled, &q, d) {
            Ok(p) => p,
            Err(EdPolyError::NonGenericData) => continue,
            Err(e) => return Err(e),
        };
        let q_scaled = q.scale_exact(&mu)?;
        let e2 = match ed_polynomial_rnc(&u, &q_scaled, d) {
            Ok(p) => p,
            Err(EdPolyError::NonGenericData) => continue,
            Err(e) => return Err(e),
        };
        if e1.degree != gedeg || e2.degree != gedeg {
            continue;
        }
        let top = gedeg;
        let ratio = |p: &EdPolynomial, i: usize| -> Option<BigRational> {
            let t = p.poly.coeff(top);
            if t.is_zero() {
                return None;
            }
            Some(p.poly.coeff(i) / t)
        };
        for i in 0..top {
            let (Some(r0), Some(r1), Some(r2)) =
                (ratio(&e0, i), ratio(&e1, i), ratio(&e2, i))
            else {
                continue;
            };
            // u-degree gap: 8-2i at d = 2, and 2(D - i) in general (these
            // agree at d = 2 since D = 4)
            let du_gap = (2 * (top - i)) as i64;
            let mut expect = r0.clone();
            for _ in 0..du_gap {
                expect = expect * &lambda;
            }
            if expect != r1 {
                violations.push(ScalingViolation {
                    sample: done,
                    coefficient: i,
                    law: format!("u-scaling exponent {du_gap}"),
                });
            }
            if d == 2 {
                // Q-degree gap: (10 - i) - 6 = 4 - i
                let dq_gap = (4 - i) as i64;
                let mut expect = r0.clone();
                for _ in 0..dq_gap {
                    expect = expect * &mu;
                }
                if expect != r2 {
                    violations.push(ScalingViolation {
                        sample: done,
                        coefficient: i,
                        law: format!("Q-scaling exponent {dq_gap}"),
                    });
                }
            }
        }
        done += 1;
    }
    Ok(ScalingReport {
        d,
        samples_checked: done,
        violations,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct P0Report {
    pub cone_samples: usize,
    pub singular_form_samples: usize,
    pub generic_samples: usize,
    pub failures: Vec<String>,
}

/// Structure of the constant coefficient of the conic's ED polynomial:
/// it vanishes to order two across the rank-one cone `u0 u2 = u1^2`,
/// vanishes whenever the form is singular, and is nonzero generically.
pub fn conic_p0_structure_check(samples: usize, seed: u64) -> Result<P0Report, EdPolyError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut cone_done = 0usize;
    let mut guard = 0usize;
    while cone_done < samples && guard < samples * 40 {
        guard += 1;
        let q = rnc::random_spd_exact(3, &mut rng);
        let t0 = rat_int(rng.gen_range(-4i64..=4));
        let c = rat_int(rng.gen_range(1i64..=5));
        let u_cone: Vec<BigRational> =
            vec![c.clone(), &c * &t0, &c * &t0 * &t0];
        let w = random_rational_vector(3, &mut rng);
        // r(s) = constant coefficient of the raw chart resultant along the
        // pencil u_cone + s w, interpolated exactly; it must vanish to
        // order >= 2 at s = 0.
        let nodes: Vec<BigRational> = (0..=13).map(rat_int).collect();
        let mut pts = Vec::new();
        let mut bad = false;
        for s in &nodes {
            let us: Vec<BigRational> = u_cone
                .iter()
                .zip(&w)
                .map(|(a, b)| a + &(b * s))
                .collect();
            match eliminate_raw_p0(&us, &q, 2) {
                Some(p0) => pts.push((s.clone(), p0)),
                None => {
                    bad = true;
                    break;
                }
            }
        }
        if bad {
            continue;
        }
        let r = UniPoly::interpolate(&pts);
        if !r.coeff(0).is_zero() || !r.coeff(1).is_zero() {
            failures.push(format!(
                "double vanishing on the cone failed at sample {cone_done}"
            ));
        }
        cone_done += 1;
    }

    // singular forms: p0 must vanish
    let mut singular_done = 0usize;
    guard = 0;
    while singular_done < samples && guard < samples * 40 {
        guard += 1;
        let a: Vec<i64> = (0..3).map(|_| rng.gen_range(-4i64..=4)).collect();
        let b: Vec<i64> = (0..3).map(|_| rng.gen_range(-4i64..=4)).collect();
        let mut m = SymMat::zeros_exact(3);
        for i in 0..3 {
            for j in i..3 {
                m.set_exact(i, j, rat_int(a[i] * a[j] + b[i] * b[j]));
            }
        }
        if !m.det_exact()?.is_zero() {
            continue; // want a genuinely singular form
        }
        let u = random_rational_vector(3, &mut rng);
        match eliminate(&u, &m, 2) {
            Ok(p) => {
                if !p.poly.coeff(0).is_zero() {
                    failures.push(format!(
                        "p0 nonzero for singular form at sample {singular_done}"
                    ));
                }
                singular_done += 1;
            }
            Err(EdPolyError::NonGenericData | EdPolyError::CurveContained) => continue,
            Err(e) => return Err(e),
        }
    }

    // generic samples: p0 nonzero
    let mut generic_done = 0usize;
    guard = 0;
    while generic_done < samples && guard < samples * 40 {
        guard += 1;
        let q = rnc::random_spd_exact(3, &mut rng);
        let u = random_rational_vector(3, &mut rng);
        match ed_polynomial_rnc(&u, &q, 2) {
            Ok(p) => {
                if p.poly.coeff(0).is_zero() {
                    failures.push(format!("p0 zero on generic sample {generic_done}"));
                }
                generic_done += 1;
            }
            Err(EdPolyError::NonGenericData) => continue,
            Err(e) => return Err(e),
        }
    }

    Ok(P0Report {
        cone_samples: cone_done,
        singular_form_samples: singular_done,
        generic_samples: generic_done,
        failures,
    })
}

/// Constant-in-`e` coefficient of the raw chart resultant (no content
/// normalization, no infinity factor); `None` when the sample is degenerate
/// or an infinity critical point would interfere.
fn eliminate_raw_p0(u: &[BigRational], m_q: &SymMat, d: u32) -> Option<BigRational> {
    let chart = chart_data(u, m_q, d, false).ok()?;
    if chart.qv.is_zero() {
        return None;
    }
    let g = critical_equation(&chart);
    if g.is_zero() {
        return None;
    }
    let inf = chart_data(u, m_q, d, true).ok()?;
    let g_inf = critical_equation(&inf);
    if g_inf.is_zero() || g_inf.coeff(0).is_zero() {
        return None;
    }
    let r = chart_resultant(&g, &chart).ok()?;
    if r.is_zero() {
        return None;
    }
    Some(r.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::rnc::{make_frobenius_rnc, make_special_qd, random_spd_exact};

    fn uvec(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn conic_frobenius_degree_two() {
        let q = make_frobenius_rnc(2);
        let p = ed_polynomial_rnc(&uvec(&[3, 1, -2]), &q, 2).unwrap();
        assert_eq!(p.degree, 2);
    }

    #[test]
    fn conic_generic_degree_four() {
        let mut rng = StdRng::seed_from_u64(3);
        let q = random_spd_exact(3, &mut rng);
        let p = ed_polynomial_rnc(&uvec(&[3, 1, -2]), &q, 2).unwrap();
        assert_eq!(p.degree, 4);
    }

    #[test]
    fn twisted_cubic_degrees() {
        let frob = make_frobenius_rnc(3);
        let p = ed_polynomial_rnc(&uvec(&[2, -1, 3, 1]), &frob, 3).unwrap();
        assert_eq!(p.degree, 3);
        let mut rng = StdRng::seed_from_u64(9);
        let q = random_spd_exact(4, &mut rng);
        let p = ed_polynomial_rnc(&uvec(&[2, -1, 3, 1]), &q, 3).unwrap();
        assert_eq!(p.degree, 7);
    }

    #[test]
    fn zero_is_root_on_the_cone() {
        // u on the real cone over the curve: distance zero is critical
        let q = make_frobenius_rnc(2);
        let u = uvec(&[4, 8, 16]); // 4 * (1, t, t^2) at t = 2
        let p = ed_polynomial_rnc(&u, &q, 2).unwrap();
        assert!(p.poly.coeff(0).is_zero());
    }

    #[test]
    fn smallest_root_matches_grid_minimum() {
        // dense parameter scan vs the polynomial's smallest nonnegative root
        let q = make_frobenius_rnc(2);
        let u = uvec(&[3, 1, -2]);
        let p = ed_polynomial_rnc(&u, &q, 2).unwrap();
        let roots = p.poly.real_roots_f64(1e-10).unwrap();
        let min_root = roots
            .iter()
            .copied()
            .filter(|r| *r > -1e-9)
            .fold(f64::INFINITY, f64::min);
        // psi(t) = q(u) - Qu(t)^2 / qv(t) on a fine grid
        let uf: Vec<f64> = vec![3.0, 1.0, -2.0];
        let qdiag = [1.0, 2.0, 1.0];
        let mut best = f64::INFINITY;
        let mut t = -60.0;
        while t <= 60.0 {
            let v = [1.0, t, t * t];
            let qu: f64 = (0..3).map(|i| qdiag[i] * uf[i] * v[i]).sum();
            let qv: f64 = (0..3).map(|i| qdiag[i] * v[i] * v[i]).sum();
            let qu_u: f64 = (0..3).map(|i| qdiag[i] * uf[i] * uf[i]).sum();
            best = best.min(qu_u - qu * qu / qv);
            t += 0.001;
        }
        assert!(
            (min_root - best).abs() < 1e-3,
            "polynomial root {min_root} vs grid minimum {best}"
        );
    }

    #[test]
    fn special_quadric_probe() {
        // defect 2d-1 leaves degree d-1
        assert_eq!(degree_drop_probe(&make_special_qd(3), 3, 4, 7).unwrap(), 2);
        assert_eq!(degree_drop_probe(&make_frobenius_rnc(4), 4, 4, 7).unwrap(), 4);
    }

    #[test]
    fn tangency_of_reference_forms() {
        assert!(conic_tangency_test(&make_frobenius_rnc(2)).unwrap());
        assert!(!conic_tangency_test(&SymMat::identity_exact(3)).unwrap());
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let t = random_tangent_conic(&mut rng);
            assert!(conic_tangency_test(&t).unwrap());
        }
    }

    #[test]
    fn sextic_vanishes_exactly_on_tangent_forms() {
        assert!(conic_sextic_fixture_eval(&make_frobenius_rnc(2))
            .unwrap()
            .is_zero());
        assert!(!conic_sextic_fixture_eval(&SymMat::identity_exact(3))
            .unwrap()
            .is_zero());
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..30 {
            let t = random_tangent_conic(&mut rng);
            assert!(conic_sextic_fixture_eval(&t).unwrap().is_zero());
        }
    }

    #[test]
    fn sextic_is_homogeneous_of_degree_six() {
        let mut rng = StdRng::seed_from_u64(29);
        let q = random_spd_exact(3, &mut rng);
        let v = conic_sextic_fixture_eval(&q).unwrap();
        let c = rat(7, 3);
        let scaled = conic_sextic_fixture_eval(&q.scale_exact(&c).unwrap()).unwrap();
        let mut c6 = BigRational::one();
        for _ in 0..6 {
            c6 = c6 * &c;
        }
        assert_eq!(scaled, v * c6);
    }

    #[test]
    fn gram_from_quartic_round_trip() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let coeffs: Vec<BigRational> = (0..5).map(|_| rat_int(rng.gen_range(-6i64..=6))).collect();
            let b = UniPoly::new(coeffs.clone());
            if b.is_zero() {
                continue;
            }
            let m = gram_from_quartic(&b, rat_int(rng.gen_range(-3i64..=3)));
            // restrict back: c_m = sum_{i+j=m} M[i][j]
            for mdeg in 0..=4usize {
                let mut s = BigRational::zero();
                for i in 0..3usize {
                    for j in 0..3usize {
                        if i + j == mdeg {
                            s = s + m.get_exact(i, j).unwrap();
                        }
                    }
                }
                assert_eq!(s, b.coeff(mdeg), "coefficient {mdeg}");
            }
        }
    }

    #[test]
    fn scaling_laws_hold_on_conic() {
        let r = coefficient_scaling_check(2, 6, 41).unwrap();
        assert_eq!(r.samples_checked, 6);
        assert!(r.violations.is_empty(), "violations: {:?}", r.violations);
    }

    #[test]
    fn p0_structure() {
        let r = conic_p0_structure_check(4, 43).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.cone_samples, 4);
        assert!(r.singular_form_samples >= 1);
    }

    #[test]
    fn degenerate_form_rejected() {
        let m = SymMat::diag_exact(&[rat_int(1), rat_int(0), rat_int(1)]);
        assert!(matches!(
            ed_polynomial_rnc(&uvec(&[1, 2, 3]), &m, 2),
            Err(EdPolyError::DegenerateForm)
        ));
    }
}
