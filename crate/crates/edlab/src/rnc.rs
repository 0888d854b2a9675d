//! ED defect and ED degree of rational normal curves under arbitrary
//! symmetric bilinear forms.
//!
//! The curve of degree `d` meets a quadric `V(Q)` in `2d` points counted
//! with multiplicity; those points are the projective roots of the binary
//! form `b(x0, x1) = v M_Q v^T` with `v = (x0^d, x0^{d-1} x1, ..., x1^d)`.
//! Each intersection point of multiplicity `m` lowers the ED degree by
//! `m - 1`, so everything reduces to exact multiplicity bookkeeping on `b`.
//! Floating point is banned here: multiplicity structure is discontinuous.

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::exactmath::{rat_int, BigRational, ExactError, SymMat, UniPoly};
use crate::workers;

#[derive(Debug, Error)]
pub enum RncError {
    #[error("the curve lies inside the quadric: restricted form is identically zero")]
    CurveContained,
    #[error("exact entries required: {0}")]
    Exact(#[from] ExactError),
    #[error("Gram matrix must be (d+1) x (d+1): got {0} for d = {1}")]
    WrongDimension(usize, u32),
    #[error("probe failed: {0}")]
    Probe(String),
}

/// One intersection point of the curve with the quadric.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PointClass {
    pub multiplicity: u32,
    /// Real point of the complex curve (conjugate-pair members are `false`).
    pub real: bool,
    /// The point at `[0:1]`, seen only by the chart at infinity.
    pub at_infinity: bool,
}

/// Square-free data of the restricted binary form.
#[derive(Clone, Debug)]
pub struct BinaryFormFactorization {
    /// Total degree `2d` of the homogeneous form.
    pub degree: u32,
    pub content: BigRational,
    /// Square-free monic factors of the dehomogenized form with their
    /// multiplicities and exact real-root counts.
    pub factors: Vec<(UniPoly, u32, usize)>,
    /// Intersection points over the complex numbers (conjugate pairs listed
    /// individually), including the point at infinity when present.
    pub points: Vec<PointClass>,
    pub infinity_multiplicity: u32,
}

impl BinaryFormFactorization {
    /// Total ED defect: `sum (m - 1)` over all intersection points.
    pub fn defect(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity - 1).sum()
    }
}

/// Restricts the quadric with Gram matrix `m_q` to the degree-`d` rational
/// normal curve and factors the resulting binary form exactly.
pub fn restrict_to_curve(m_q: &SymMat, d: u32) -> Result<BinaryFormFactorization, RncError> {
    let dim = d as usize + 1;
    if m_q.dim() != dim {
        return Err(RncError::WrongDimension(m_q.dim(), d));
    }
    // b(x0,x1) = sum_{i,j} M[i][j] x0^{2d-i-j} x1^{i+j}; coefficient of x1^m
    let mut coeffs = vec![BigRational::zero(); 2 * d as usize + 1];
    for i in 0..dim {
        for j in 0..dim {
            let m = i + j;
            coeffs[m] = &coeffs[m] + m_q.get_exact(i, j)?;
        }
    }
    // Dehomogenize at x0 = 1 (b as a polynomial in t = x1/x0). The
    // multiplicity of the root at [0:1] is the x0-adic valuation, i.e. the
    // degree drop from 2d.
    let b = UniPoly::new(coeffs);
    if b.is_zero() {
        return Err(RncError::CurveContained);
    }
    let infinity_multiplicity = 2 * d - b.degree().unwrap() as u32;
    let sf = b.squarefree_decompose().map_err(RncError::Exact)?;
    let mut factors = Vec::new();
    let mut points = Vec::new();
    for (f, mult) in &sf.factors {
        let real_count = f.count_real_roots().map_err(RncError::Exact)?;
        let deg = f.degree().unwrap();
        factors.push((f.clone(), *mult, real_count));
        for _ in 0..real_count {
            points.push(PointClass {
                multiplicity: *mult,
                real: true,
                at_infinity: false,
            });
        }
        debug_assert!((deg - real_count) % 2 == 0);
        for _ in 0..(deg - real_count) {
            points.push(PointClass {
                multiplicity: *mult,
                real: false,
                at_infinity: false,
            });
        }
    }
    if infinity_multiplicity > 0 {
        points.push(PointClass {
            multiplicity: infinity_multiplicity,
            real: true,
            at_infinity: true,
        });
    }
    let fact = BinaryFormFactorization {
        degree: 2 * d,
        content: sf.content,
        factors,
        points,
        infinity_multiplicity,
    };
    debug_assert_eq!(
        fact.points.iter().map(|p| p.multiplicity).sum::<u32>(),
        2 * d,
        "intersection multiplicities must sum to 2d"
    );
    Ok(fact)
}

/// ED defect of the curve with respect to `m_q`, with the per-point
/// breakdown.
pub fn rnc_ed_defect(m_q: &SymMat, d: u32) -> Result<(u32, Vec<PointClass>), RncError> {
    let f = restrict_to_curve(m_q, d)?;
    Ok((f.defect(), f.points))
}

/// ED degree report for a rational normal curve.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RncDegree {
    pub d: u32,
    pub generic_ed_degree: u32,
    #[serde(rename = "defect")]
    pub ed_defect: u32,
    pub ed_degree: u32,
    /// Set when the curve lies inside the quadric (ED degree 0).
    pub curve_contained: bool,
    pub points: Vec<PointClass>,
}

/// `EDdeg = 3d - 2 - defect`; the contained case reports zero with a flag.
pub fn rnc_ed_degree(m_q: &SymMat, d: u32) -> Result<RncDegree, RncError> {
    let generic = 3 * d - 2;
    match restrict_to_curve(m_q, d) {
        Ok(f) => {
            let defect = f.defect();
            Ok(RncDegree {
                d,
                generic_ed_degree: generic,
                ed_defect: defect,
                ed_degree: generic - defect,
                curve_contained: false,
                points: f.points,
            })
        }
        Err(RncError::CurveContained) => Ok(RncDegree {
            d,
            generic_ed_degree: generic,
            ed_defect: generic,
            ed_degree: 0,
            curve_contained: true,
            points: vec![],
        }),
        Err(e) => Err(e),
    }
}

/// Gram matrix of the Frobenius quadric restricted to the curve's ambient
/// space: `diag(C(d,0), ..., C(d,d))`.
pub fn make_frobenius_rnc(d: u32) -> SymMat {
    let mut diag = Vec::with_capacity(d as usize + 1);
    let mut c: i64 = 1;
    for i in 0..=d as i64 {
        diag.push(rat_int(c));
        c = c * (d as i64 - i) / (i + 1);
    }
    SymMat::diag_exact(&diag)
}

/// Gram matrix of the special quadric whose restriction to the curve is
/// `x0^{2d}`: `z0^2 - sum_{i=1..floor((d-1)/2)} z_i z_{d+1-i}
/// + floor((d-1)/2) z_{floor((d+1)/2)} z_{ceil((d+1)/2)}`.
/// Its ED defect against the curve is `2d - 1`. Not positive definite for
/// `d >= 2`; degenerate for `d <= 2` (the antidiagonal block collapses).
pub fn make_special_qd(d: u32) -> SymMat {
    let dim = d as usize + 1;
    let mut m = SymMat::zeros_exact(dim);
    m.set_exact(0, 0, BigRational::one());
    let half = ((d as i64) - 1).div_euclid(2);
    for i in 1..=half {
        let j = (d as i64 + 1 - i) as usize;
        m.set_exact(i as usize, j, BigRational::new((-1).into(), 2.into()));
    }
    let lo = ((d as i64) + 1).div_euclid(2) as usize;
    let hi = (d as usize) + 1 - lo;
    if half > 0 {
        if lo == hi {
            m.set_exact(lo, lo, rat_int(half));
        } else {
            let prev = m.get_exact(lo, hi).unwrap().clone();
            m.set_exact(lo, hi, prev + BigRational::new(half.into(), 2.into()));
        }
    }
    m
}

/// Positive definite witnesses realizing every value of the ED degree map
/// of the degree-`d` curve over inner products: the ladder
/// `{d, d+2, ..., 3d-2}`. The witness for `d + 2(t-1)` restricts to
/// `(x0^2 + x1^2)^(d-t+1) * prod_{i=2..t} (x0^2 + (i+1) x1^2)`, which has
/// `t` distinct conjugate root pairs; a product of quadratics in `x0^2`,
/// `x1^2` with positive coefficients has positive even coefficients only,
/// so the diagonal Gram matrix of those coefficients is positive definite
/// and restricts to it exactly.
pub fn ed_degree_ladder_witnesses(d: u32) -> Vec<(u32, SymMat)> {
    let mut out = Vec::new();
    for t in 1..=d {
        // b as a univariate polynomial in s = x1^2 / x0^2, degree d
        let mut b = UniPoly::one();
        let base = UniPoly::from_i64(&[1, 1]); // x0^2 + x1^2
        for _ in 0..(d - t + 1) {
            b = &b * &base;
        }
        for i in 2..=t {
            b = &b * &UniPoly::from_i64(&[1, (i + 1) as i64]);
        }
        let diag: Vec<BigRational> = (0..=d as usize).map(|k| b.coeff(k)).collect();
        out.push((d + 2 * (t - 1), SymMat::diag_exact(&diag)));
    }
    out
}

/// Exact random SPD sample `A^T A + I` with small integer entries.
pub fn random_spd_exact(dim: usize, rng: &mut StdRng) -> SymMat {
    let a: Vec<Vec<i64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    let mut m = SymMat::zeros_exact(dim);
    for i in 0..dim {
        for j in i..dim {
            let mut s: i64 = if i == j { 1 } else { 0 };
            for a_row in &a {
                s += a_row[i] * a_row[j];
            }
            m.set_exact(i, j, rat_int(s));
        }
    }
    m
}

/// Report of the local-minimality probe around the Frobenius form.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ProbeReport {
    pub d: u32,
    pub samples: usize,
    pub rejected: usize,
    pub min_ed_degree: u32,
    pub histogram: BTreeMap<u32, u32>,
}

/// Samples symmetric rational perturbations `E` with entries bounded by
/// `radius` and reports the ED degree distribution of `Q_F + E` over the
/// positive definite cone. A perturbation leaving the cone is rejected and
/// resampled. The minimum should never drop below `d`.
pub fn semicontinuity_probe(
    d: u32,
    radius: &BigRational,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport, RncError> {
    let dim = d as usize + 1;
    let base = make_frobenius_rnc(d);
    let degrees: Vec<Result<(u32, usize), String>> = workers::parallel_map(samples, |s| {
        let mut rng = StdRng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(s as u64 + 1)));
        let mut rejected = 0usize;
        loop {
            let mut e = SymMat::zeros_exact(dim);
            for i in 0..dim {
                for j in i..dim {
                    let num = rng.gen_range(-1000i64..=1000);
                    let v = BigRational::new(num.into(), 1000.into()) * radius;
                    e.set_exact(i, j, v);
                }
            }
            let q = base.add_exact(&e).map_err(|er| er.to_string())?;
            if !q.is_positive_definite() {
                rejected += 1;
                if rejected > 1000 {
                    return Err("perturbation radius leaves the positive definite cone".into());
                }
                continue;
            }
            let deg = rnc_ed_degree(&q, d).map_err(|er| er.to_string())?;
            return Ok((deg.ed_degree, rejected));
        }
    });
    let mut histogram = BTreeMap::new();
    let mut rejected = 0usize;
    let mut min_deg = u32::MAX;
    for r in degrees {
        let (deg, rej) = r.map_err(RncError::Probe)?;
        *histogram.entry(deg).or_insert(0) += 1;
        rejected += rej;
        min_deg = min_deg.min(deg);
    }
    Ok(ProbeReport {
        d,
        samples,
        rejected,
        min_ed_degree: min_deg,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn frobenius_restriction_is_conjugate_power_pair() {
        // b = (x0^2 + x1^2)^d: one conjugate pair of multiplicity d
        for d in 1..=6u32 {
            let f = restrict_to_curve(&make_frobenius_rnc(d), d).unwrap();
            assert_eq!(f.infinity_multiplicity, 0);
            assert_eq!(f.factors.len(), 1);
            let (factor, mult, real_roots) = &f.factors[0];
            assert_eq!(factor, &UniPoly::from_i64(&[1, 0, 1]));
            assert_eq!(*mult, d);
            assert_eq!(*real_roots, 0);
            assert_eq!(f.defect(), 2 * (d - 1));
        }
    }

    #[test]
    fn special_quadric_restricts_to_pure_power() {
        // b = x0^{2d}: a single point at infinity of multiplicity 2d
        for d in 1..=8u32 {
            let f = restrict_to_curve(&make_special_qd(d), d).unwrap();
            assert_eq!(f.infinity_multiplicity, 2 * d);
            assert!(f.factors.is_empty());
            assert_eq!(f.defect(), 2 * d - 1);
        }
    }

    #[test]
    fn special_quadric_spectrum_markers() {
        for d in 3..=8u32 {
            let m = make_special_qd(d);
            assert!(!m.is_positive_definite());
            // 1 is an eigenvalue (e0), and -1/2 is an eigenvalue coming from
            // the antidiagonal +-1/2 pair
            let cp = m.charpoly_exact().unwrap();
            assert!(cp.eval(&rat_int(1)).is_zero(), "1 must be an eigenvalue at d={d}");
            assert!(
                cp.eval(&rat(-1, 2)).is_zero(),
                "-1/2 must be an eigenvalue at d={d}"
            );
            // nondegenerate for d >= 3
            assert!(!m.det_exact().unwrap().is_zero());
        }
    }

    #[test]
    fn identity_on_the_conic() {
        // d=2, M = I: b = x0^4 + x0^2 x1^2 + x1^4, two conjugate pairs
        let f = restrict_to_curve(&SymMat::identity_exact(3), 2).unwrap();
        assert_eq!(f.infinity_multiplicity, 0);
        assert_eq!(f.points.len(), 4);
        assert!(f.points.iter().all(|p| !p.real && p.multiplicity == 1));
        assert_eq!(f.defect(), 0);
    }

    #[test]
    fn frobenius_degrees() {
        for d in 1..=8u32 {
            let r = rnc_ed_degree(&make_frobenius_rnc(d), d).unwrap();
            assert_eq!(r.ed_defect, 2 * (d - 1));
            assert_eq!(r.ed_degree, d);
        }
    }

    #[test]
    fn special_quadric_degrees() {
        for d in 1..=8u32 {
            let r = rnc_ed_degree(&make_special_qd(d), d).unwrap();
            assert_eq!(r.ed_defect, 2 * d - 1);
            assert_eq!(r.ed_degree, d.saturating_sub(1));
        }
    }

    #[test]
    fn random_spd_defects_are_even_and_capped() {
        let mut rng = StdRng::seed_from_u64(42);
        for d in 1..=6u32 {
            for _ in 0..60 {
                let q = random_spd_exact(d as usize + 1, &mut rng);
                assert!(q.is_positive_definite());
                let r = rnc_ed_degree(&q, d).unwrap();
                assert!(!r.curve_contained);
                assert_eq!(r.ed_defect % 2, 0, "defect must be even for PD forms");
                assert!(r.ed_defect <= 2 * d - 2);
                assert!(r.ed_degree >= d);
                // PD forms have no real intersection points
                assert!(r.points.iter().all(|p| !p.real));
            }
        }
    }

    #[test]
    fn contained_curve_flagged() {
        // whole curve inside the quadric: take the zero matrix... that is
        // degenerate; instead use the quadric z0 z2 - z1^2 vanishing on the
        // conic (d = 2)
        let mut m = SymMat::zeros_exact(3);
        m.set_exact(0, 2, rat(1, 2));
        m.set_exact(1, 1, rat_int(-1));
        let r = rnc_ed_degree(&m, 2).unwrap();
        assert!(r.curve_contained);
        assert_eq!(r.ed_degree, 0);
    }

    #[test]
    fn scaling_equivariance() {
        let mut rng = StdRng::seed_from_u64(5);
        let d = 4u32;
        let q = random_spd_exact(d as usize + 1, &mut rng);
        let f1 = restrict_to_curve(&q, d).unwrap();
        let f2 = restrict_to_curve(&q.scale_exact(&rat(7, 2)).unwrap(), d).unwrap();
        assert_eq!(f1.points, f2.points);
        assert_eq!(&f1.content * &rat(7, 2), f2.content);
    }

    #[test]
    fn ladder_witnesses_cover_the_whole_image() {
        for d in 1..=8u32 {
            let witnesses = ed_degree_ladder_witnesses(d);
            let got: Vec<u32> = witnesses.iter().map(|(v, _)| *v).collect();
            let want: Vec<u32> = (0..d).map(|t| d + 2 * t).collect();
            assert_eq!(got, want, "ladder values at d={d}");
            for (value, q) in witnesses {
                assert!(q.is_positive_definite(), "witness for {value} at d={d} not PD");
                let r = rnc_ed_degree(&q, d).unwrap();
                assert_eq!(r.ed_degree, value, "witness round-trip at d={d}");
            }
        }
    }

    #[test]
    fn agrees_with_pencil_analysis_on_the_conic() {
        // the degree-2 curve is the plane conic, so the multiplicity route
        // and the pencil eigenvalue route must give the same ED degree
        let conic = crate::pencils::veronese_conic_gram();
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..100 {
            let q = random_spd_exact(3, &mut rng);
            let via_curve = rnc_ed_degree(&q, 2).unwrap().ed_degree;
            let via_pencil = crate::pencils::quadric_ed_degree(&conic, &q)
                .unwrap()
                .ed_degree;
            assert_eq!(via_curve, via_pencil);
        }
    }

    #[test]
    fn probe_with_zero_radius_is_constant() {
        let r = semicontinuity_probe(3, &BigRational::zero(), 8, 1).unwrap();
        assert_eq!(r.min_ed_degree, 3);
        assert_eq!(r.histogram.len(), 1);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let q = SymMat::identity_exact(4);
        assert!(matches!(
            restrict_to_curve(&q, 2),
            Err(RncError::WrongDimension(4, 2))
        ));
    }
}
