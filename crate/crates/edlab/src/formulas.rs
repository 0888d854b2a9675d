//! Closed-form degree formulas for Segre-Veronese varieties: generic ED
//! degrees, Frobenius ED degrees by two independent coefficient-extraction
//! routes, Chern and polar degrees, dual-variety degrees, and the
//! polar-to-Chern-Mather conversion. All arithmetic is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactmath::{BigRational, ChowCoeff, TruncPolyOf};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("degree and dimension tuples must be nonempty and equally long")]
    BadFormat,
    #[error("degrees d_i must be positive")]
    NonPositiveDegree,
    #[error("tuple lengths do not match: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("re-embedding degree must be at least 2 (the dual need not be a hypersurface below that)")]
    ReembeddingDegreeTooSmall,
}

/// The pair `(d, n)` specifying the Segre-Veronese variety `V_{d,n}`: the
/// image of `P^{n_1} x ... x P^{n_k}` under the multidegree-`d` embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFormat {
    d: Vec<u32>,
    n: Vec<u32>,
}

impl TensorFormat {
    pub fn new(d: Vec<u32>, n: Vec<u32>) -> Result<Self, FormulaError> {
        if d.is_empty() || d.len() != n.len() {
            return Err(FormulaError::BadFormat);
        }
        if d.iter().any(|&di| di == 0) {
            return Err(FormulaError::NonPositiveDegree);
        }
        Ok(TensorFormat { d, n })
    }

    /// Binary Segre format `d = n = (1, ..., 1)` with `k` factors.
    pub fn segre_binary(k: usize) -> Self {
        TensorFormat {
            d: vec![1; k],
            n: vec![1; k],
        }
    }

    /// Matrix format: rank-one `(n1+1) x (n2+1)` matrices.
    pub fn matrices(n1: u32, n2: u32) -> Self {
        TensorFormat {
            d: vec![1, 1],
            n: vec![n1, n2],
        }
    }

    /// Veronese format `V_{d,n}`.
    pub fn veronese(d: u32, n: u32) -> Self {
        TensorFormat {
            d: vec![d],
            n: vec![n],
        }
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn factors(&self) -> usize {
        self.d.len()
    }

    /// `|n|`, the dimension of the variety.
    pub fn dim(&self) -> u32 {
        self.n.iter().sum()
    }

    /// Dimension `N` of the ambient projective space,
    /// `prod C(n_i + d_i, d_i) - 1`.
    pub fn ambient_dim(&self) -> BigInt {
        let mut p = BigInt::one();
        for (&di, &ni) in self.d.iter().zip(&self.n) {
            p *= binomial((ni + di) as u64, di as u64);
        }
        p - 1
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn factorial(n: u64) -> BigInt {
    let mut p = BigInt::one();
    for i in 2..=n {
        p *= BigInt::from(i);
    }
    p
}

/// `gamma_alpha = prod_i C(n_i + 1, alpha_i) / (n_i - alpha_i)!` when
/// `alpha_i <= n_i` for all `i`, zero otherwise.
pub fn gamma_alpha(n: &[u32], alpha: &[u32]) -> Result<BigRational, FormulaError> {
    if n.len() != alpha.len() {
        return Err(FormulaError::LengthMismatch(n.len(), alpha.len()));
    }
    if n.iter().zip(alpha).any(|(ni, ai)| ai > ni) {
        return Ok(BigRational::zero());
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (&ni, &ai) in n.iter().zip(alpha) {
        num *= binomial(ni as u64 + 1, ai as u64);
        den *= factorial((ni - ai) as u64);
    }
    Ok(BigRational::new(num, den))
}

/// Enumerates all tuples `alpha` with `|alpha| = total` and `alpha_i <= n_i`.
fn bounded_compositions(n: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(n: &[u32], total: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n.len() == 1 {
            if total <= n[0] {
                acc.push(total);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for a in 0..=total.min(n[0]) {
            acc.push(a);
            rec(&n[1..], total - a, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, &mut Vec::new(), &mut out);
    out
}

/// The integers `S_i = (|n| - i)! sum_{|alpha| = i} gamma_alpha d^{n-alpha}`,
/// for `i = 0..=|n|`. `S_i` is the degree of the `i`-th Chern class of the
/// tangent bundle.
fn chern_kernel(fmt: &TensorFormat) -> Vec<BigInt> {
    let dim = fmt.dim();
    let mut out = Vec::with_capacity(dim as usize + 1);
    for i in 0..=dim {
        let mut acc = BigRational::zero();
        for alpha in bounded_compositions(&fmt.n, i) {
            let g = gamma_alpha(&fmt.n, &alpha).unwrap();
            if g.is_zero() {
                continue;
            }
            let mut dpow = BigInt::one();
            for ((&di, &ni), &ai) in fmt.d.iter().zip(&fmt.n).zip(&alpha) {
                dpow *= BigInt::from(di as u64).pow(ni - ai);
            }
            acc += g * BigRational::from_integer(dpow);
        }
        let v = acc * BigRational::from_integer(factorial((dim - i) as u64));
        debug_assert!(v.denom().is_one(), "Chern degree must be an integer");
        debug_assert!(!v.numer().is_negative(), "Chern degree must be nonnegative");
        out.push(v.to_integer());
    }
    out
}

/// Degrees of the Chern classes of the tangent bundle, `i = 0..=|n|`.
pub fn chern_degrees(fmt: &TensorFormat) -> Vec<BigInt> {
    chern_kernel(fmt)
}

/// Generic ED degree:
/// `sum_i (-1)^i (2^{|n|+1-i} - 1) S_i`.
pub fn generic_ed_degree(fmt: &TensorFormat) -> BigInt {
    let s = chern_kernel(fmt);
    let dim = fmt.dim() as usize;
    let mut acc = BigInt::ZERO;
    for (i, si) in s.iter().enumerate() {
        let weight = (BigInt::one() << (dim + 1 - i)) - 1;
        let term = weight * si;
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Polar degrees `delta_j`, `j = 0..=|n|`; their sum is the generic ED
/// degree, and `delta_0` is the dual-variety degree when the dual is a
/// hypersurface.
pub fn polar_degrees(fmt: &TensorFormat) -> Vec<BigInt> {
    let s = chern_kernel(fmt);
    let dim = fmt.dim() as usize;
    let mut out = Vec::with_capacity(dim + 1);
    for j in 0..=dim {
        let mut acc = BigInt::ZERO;
        for (i, si) in s.iter().enumerate().take(dim - j + 1) {
            let c = binomial((dim + 1 - i) as u64, (j + 1) as u64);
            let term = c * si;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        out.push(acc);
    }
    out
}

/// Degree of the locus of degree-`e` hypersurfaces meeting `V_{d,n}`
/// non-transversally (the dual variety of the `e`-th re-embedding):
/// `sum_i (-1)^i e^{|n|-i} (|n|+1-i)! sum gamma_alpha d^{n-alpha}`.
pub fn dual_degree_veronese_re_embedding(
    fmt: &TensorFormat,
    e: u32,
) -> Result<BigInt, FormulaError> {
    if e < 2 {
        return Err(FormulaError::ReembeddingDegreeTooSmall);
    }
    let s = chern_kernel(fmt);
    let dim = fmt.dim() as usize;
    let mut acc = BigInt::ZERO;
    for (i, si) in s.iter().enumerate() {
        let term = BigInt::from(e as u64).pow((dim - i) as u32) * BigInt::from((dim + 1 - i) as u64) * si;
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Converts polar degrees `(delta_0, ..., delta_n)` of an `n`-dimensional
/// variety to Chern-Mather degrees:
/// `c^M_i = sum_j (-1)^j C(n+1-j, i-j) delta_{n-j}`.
pub fn chern_mather_from_polar(
    polar: &[BigInt],
    n: usize,
) -> Result<Vec<BigInt>, FormulaError> {
    if polar.len() != n + 1 {
        return Err(FormulaError::LengthMismatch(polar.len(), n + 1));
    }
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = BigInt::ZERO;
        for j in 0..=i {
            let c = binomial((n + 1 - j) as u64, (i - j) as u64);
            let term = c * &polar[n - j];
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Dual-variety degree of the `e`-th re-embedding from Chern-Mather degrees:
/// `sum_j (-1)^j (n+1-j) cm_j e^{n-j}`.
pub fn dual_degree_from_chern_mather(cm: &[BigInt], e: u32, n: usize) -> BigInt {
    let mut acc = BigInt::ZERO;
    for (j, c) in cm.iter().enumerate().take(n + 1) {
        let term = BigInt::from((n + 1 - j) as u64) * c * BigInt::from(e as u64).pow((n - j) as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Generic ED degree of the binary Segre variety (`d = n = 1^k`) in the
/// closed derangement form `k! sum_i (-1)^i / i! (2^{k+1} - 2^i)`.
pub fn segre_binary_ged(k: u32) -> BigInt {
    let mut acc = BigInt::ZERO;
    let kfac = factorial(k as u64);
    for i in 0..=k {
        // k!/i! is an integer
        let kfac_over_ifac = &kfac / factorial(i as u64);
        let term = kfac_over_ifac * ((BigInt::one() << (k + 1)) - (BigInt::one() << i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Frobenius ED degree: two independent coefficient extractions.
//
// Both are computed in the Chow ring Z[h_1..h_k]/(h_i^{n_i+1}); the dense
// engine below stores coefficients in a flat mixed-radix array. Coefficients
// stay far below i128 range for every format exercised here and the
// arithmetic is checked, so an overflow would abort rather than wrap.
// ---------------------------------------------------------------------------

struct ChowDense {
    caps: Vec<u32>,
    strides: Vec<usize>,
    /// exps[v][idx] = exponent of variable v encoded in flat index idx
    exps: Vec<Vec<u32>>,
    size: usize,
}

impl ChowDense {
    fn new(caps: &[u32]) -> Self {
        let k = caps.len();
        let mut strides = vec![0usize; k];
        let mut size = 1usize;
        for (i, &c) in caps.iter().enumerate() {
            strides[i] = size;
            size *= (c + 1) as usize;
        }
        let mut exps = vec![vec![0u32; size]; k];
        for idx in 0..size {
            let mut rem = idx;
            for i in 0..k {
                let radix = (caps[i] + 1) as usize;
                exps[i][idx] = (rem % radix) as u32;
                rem /= radix;
            }
        }
        ChowDense {
            caps: caps.to_vec(),
            strides,
            exps,
            size,
        }
    }

    fn zero(&self) -> Vec<i128> {
        vec![0; self.size]
    }

    fn one(&self) -> Vec<i128> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn var_index(&self, i: usize) -> usize {
        self.strides[i]
    }

    fn mul(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let mut out = self.zero();
        for (ia, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            'next: for (ib, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                for v in 0..self.caps.len() {
                    if self.exps[v][ia] + self.exps[v][ib] > self.caps[v] {
                        continue 'next;
                    }
                }
                let idx = ia + ib;
                out[idx] = out[idx]
                    .checked_add(ca.checked_mul(cb).expect("overflow in Chow product"))
                    .expect("overflow in Chow product");
            }
        }
        out
    }

    fn top_index(&self) -> usize {
        self.size - 1
    }
}

/// Frobenius ED degree by the coefficient-of-the-top-monomial formula
/// `prod_i (hhat_i^{n_i+1} - h_i^{n_i+1}) / (hhat_i - h_i)` with
/// `hhat_i = (sum_j d_j h_j) - h_i`, the quotient expanded as the finite
/// geometric sum.
pub fn frobenius_ed_degree_fo(fmt: &TensorFormat) -> BigInt {
    let ring = ChowDense::new(&fmt.n);
    let k = fmt.factors();
    // linear form sum_j d_j h_j
    let mut dh = ring.zero();
    for j in 0..k {
        if fmt.n[j] >= 1 {
            dh[ring.var_index(j)] += fmt.d[j] as i128;
        }
    }
    let mut product = ring.one();
    for i in 0..k {
        // hhat_i = dh - h_i
        let mut hhat = dh.clone();
        if fmt.n[i] >= 1 {
            hhat[ring.var_index(i)] -= 1;
        }
        let mut hi = ring.zero();
        if fmt.n[i] >= 1 {
            hi[ring.var_index(i)] = 1;
        } else {
            // n_i = 0: the factor is hhat^0 h^0 = 1
        }
        // sum_{a+b=n_i} hhat^a h_i^b
        let ni = fmt.n[i];
        let mut factor = ring.zero();
        let mut hhat_pows = Vec::with_capacity(ni as usize + 1);
        let mut acc = ring.one();
        for _ in 0..=ni {
            hhat_pows.push(acc.clone());
            acc = ring.mul(&acc, &hhat);
        }
        let mut hi_pow = ring.one();
        for b in 0..=ni {
            let a = (ni - b) as usize;
            let term = ring.mul(&hhat_pows[a], &hi_pow);
            for (o, t) in factor.iter_mut().zip(&term) {
                *o = o.checked_add(*t).expect("overflow in Chow sum");
            }
            if b < ni {
                hi_pow = ring.mul(&hi_pow, &hi);
            }
        }
        product = ring.mul(&product, &factor);
    }
    BigInt::from(product[ring.top_index()])
}

/// Frobenius ED degree by the Euler-characteristic generating function: the
/// coefficient of the top monomial in
/// `1/(1 - sum_j d_j h_j) * prod_i (1 - h_i)^{n_i+1} / (1 - 2 h_i)`,
/// every inverse expanded as a geometric series truncated at the caps.
pub fn frobenius_ed_degree_ah(fmt: &TensorFormat) -> BigInt {
    let ring = ChowDense::new(&fmt.n);
    let k = fmt.factors();
    let dim = fmt.dim();
    let mut dh = ring.zero();
    for j in 0..k {
        if fmt.n[j] >= 1 {
            dh[ring.var_index(j)] += fmt.d[j] as i128;
        }
    }
    // 1/(1 - dh) = sum_{m=0..|n|} dh^m (higher powers die under the caps)
    let mut inv_lin = ring.zero();
    let mut p = ring.one();
    for m in 0..=dim {
        for (o, t) in inv_lin.iter_mut().zip(&p) {
            *o = o.checked_add(*t).expect("overflow in Chow sum");
        }
        if m < dim {
            p = ring.mul(&p, &dh);
        }
    }
    let mut product = inv_lin;
    for i in 0..k {
        let ni = fmt.n[i];
        // (1 - h_i)^{n_i + 1}
        let mut one_minus_h = ring.one();
        if ni >= 1 {
            one_minus_h[ring.var_index(i)] = -1;
        }
        let mut pw = ring.one();
        for _ in 0..=ni {
            pw = ring.mul(&pw, &one_minus_h);
        }
        // 1/(1 - 2 h_i) = sum_{m=0..n_i} (2 h_i)^m
        let mut inv = ring.zero();
        let mut acc = ring.one();
        for m in 0..=ni {
            for (o, t) in inv.iter_mut().zip(&acc) {
                *o = o.checked_add(*t).expect("overflow in Chow sum");
            }
            if m < ni {
                let mut two_h = ring.zero();
                two_h[ring.var_index(i)] = 2;
                acc = ring.mul(&acc, &two_h);
            }
        }
        product = ring.mul(&product, &pw);
        product = ring.mul(&product, &inv);
    }
    BigInt::from(product[ring.top_index()])
}

/// Builds the coefficient-extraction product of [`frobenius_ed_degree_fo`]
/// as an explicit truncated polynomial over any coefficient ring. Exposed so
/// the generating-function expansion itself can be inspected and
/// cross-checked against the dense engine.
pub fn fo_chow_product<C: ChowCoeff>(fmt: &TensorFormat) -> TruncPolyOf<C> {
    let caps = fmt.n.clone();
    let k = fmt.factors();
    let dcoef: Vec<i64> = fmt.d.iter().map(|&x| x as i64).collect();
    let dh = TruncPolyOf::<C>::linear(&caps, &dcoef);
    let mut product = TruncPolyOf::<C>::one(&caps);
    for i in 0..k {
        let mut minus_hi = vec![0i64; k];
        minus_hi[i] = -1;
        let hhat = dh.add(&TruncPolyOf::<C>::linear(&caps, &minus_hi)).unwrap();
        let hi = TruncPolyOf::<C>::var(&caps, i);
        let ni = fmt.n[i];
        let mut factor = TruncPolyOf::<C>::zero(&caps);
        for b in 0..=ni {
            let a = ni - b;
            let term = hhat.pow(a).unwrap().mul(&hi.pow(b).unwrap()).unwrap();
            factor = factor.add(&term).unwrap();
        }
        product = product.mul(&factor).unwrap();
    }
    product
}

/// Everything the formula family knows about one format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub format: TensorFormat,
    pub generic_ed_degree: BigInt,
    pub frobenius_ed_degree: BigInt,
    pub chern_degrees: Vec<BigInt>,
    pub polar_degrees: Vec<BigInt>,
    /// Dual-variety degree when the dual is a hypersurface
    /// (`delta_0 > 0`), otherwise `None`.
    pub dual_degree: Option<BigInt>,
}

pub fn degree_report(fmt: &TensorFormat) -> DegreeReport {
    let polar = polar_degrees(fmt);
    let dual = if polar[0].is_positive() {
        Some(polar[0].clone())
    } else {
        None
    };
    DegreeReport {
        format: fmt.clone(),
        generic_ed_degree: generic_ed_degree(fmt),
        frobenius_ed_degree: frobenius_ed_degree_fo(fmt),
        chern_degrees: chern_degrees(fmt),
        polar_degrees: polar,
        dual_degree: dual,
    }
}

// ---------------------------------------------------------------------------
// Table emission
// ---------------------------------------------------------------------------

/// A small rectangular table with row/column labels, rendered as CSV or
/// markdown with deterministic byte-for-byte output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.header.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("### {}\n\n", self.title);
        s.push_str(&format!("| {} |\n", self.header.join(" | ")));
        s.push_str(&format!("|{}\n", "---|".repeat(self.header.len())));
        for row in &self.rows {
            s.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        s
    }
}

/// Generic vs Frobenius ED degree of the binary Segre varieties,
/// `k = 1..=10`.
pub fn emit_table_segre_binary() -> Table {
    let mut rows = vec![
        vec!["gEDeg".to_string()],
        vec!["EDeg_frobenius".to_string()],
    ];
    let mut header = vec!["k".to_string()];
    for k in 1..=10u32 {
        header.push(k.to_string());
        let fmt = TensorFormat::segre_binary(k as usize);
        rows[0].push(generic_ed_degree(&fmt).to_string());
        rows[1].push(frobenius_ed_degree_fo(&fmt).to_string());
    }
    Table {
        title: "ED degrees of binary Segre varieties".to_string(),
        header,
        rows,
    }
}

/// Both reference tables at once.
pub fn emit_tables() -> (Table, Table) {
    (emit_table_segre_binary(), emit_table_segre_matrices())
}

/// Generic ED degrees of the rank-one matrix varieties for
/// `1 <= n1 <= n2 <= 10` (upper-triangular layout).
pub fn emit_table_segre_matrices() -> Table {
    let mut header = vec!["n1\\n2".to_string()];
    for n2 in 1..=10u32 {
        header.push(n2.to_string());
    }
    let mut rows = Vec::new();
    for n1 in 1..=10u32 {
        let mut row = vec![n1.to_string()];
        for n2 in 1..=10u32 {
            if n2 < n1 {
                row.push(String::new());
            } else {
                row.push(generic_ed_degree(&TensorFormat::matrices(n1, n2)).to_string());
            }
        }
        rows.push(row);
    }
    Table {
        title: "Generic ED degrees of rank-one matrix varieties".to_string(),
        header,
        rows,
    }
}

/// Convenience accessor used by the verification suite: entry `(n1, n2)` of
/// the matrix table.
pub fn matrix_table_entry(n1: u32, n2: u32) -> BigInt {
    generic_ed_degree(&TensorFormat::matrices(n1, n2))
}

/// `u64` view of a nonnegative `BigInt` (test convenience; panics on
/// overflow).
pub fn to_u64(v: &BigInt) -> u64 {
    v.to_u64().expect("value exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gamma_alpha_reference_values() {
        // two factors with n = (1,1)
        let n = [1, 1];
        assert_eq!(gamma_alpha(&n, &[0, 0]).unwrap(), BigRational::from_integer(big(1).into()));
        assert_eq!(gamma_alpha(&n, &[1, 0]).unwrap(), BigRational::from_integer(big(2).into()));
        assert_eq!(gamma_alpha(&n, &[1, 1]).unwrap(), BigRational::from_integer(big(4).into()));
        // one factor with n = (1)
        assert_eq!(gamma_alpha(&[1], &[0]).unwrap(), BigRational::from_integer(big(1).into()));
        assert_eq!(gamma_alpha(&[1], &[1]).unwrap(), BigRational::from_integer(big(2).into()));
        // alpha exceeding n vanishes
        assert!(gamma_alpha(&[1], &[2]).unwrap().is_zero());
    }

    #[test]
    fn generic_ed_degree_reference_values() {
        assert_eq!(generic_ed_degree(&TensorFormat::matrices(1, 1)), big(6));
        assert_eq!(generic_ed_degree(&TensorFormat::segre_binary(3)), big(34));
        assert_eq!(generic_ed_degree(&TensorFormat::veronese(2, 2)), big(13));
        assert_eq!(generic_ed_degree(&TensorFormat::matrices(2, 3)), big(83));
    }

    #[test]
    fn frobenius_fo_reference_values() {
        assert_eq!(frobenius_ed_degree_fo(&TensorFormat::segre_binary(3)), big(6));
        assert_eq!(frobenius_ed_degree_fo(&TensorFormat::matrices(2, 3)), big(3));
        assert_eq!(frobenius_ed_degree_fo(&TensorFormat::veronese(2, 4)), big(5));
    }

    #[test]
    fn frobenius_ah_reference_values() {
        assert_eq!(frobenius_ed_degree_ah(&TensorFormat::segre_binary(4)), big(24));
        assert_eq!(frobenius_ed_degree_ah(&TensorFormat::veronese(3, 1)), big(3));
        assert_eq!(frobenius_ed_degree_ah(&TensorFormat::veronese(2, 4)), big(5));
    }

    #[test]
    fn truncpoly_route_matches_dense_engine() {
        // the explicit truncated-polynomial expansion agrees with the dense
        // fast path, including the reference coefficient 2 at caps (1,1)
        let fmt = TensorFormat::matrices(1, 1);
        let p = fo_chow_product::<BigInt>(&fmt);
        assert_eq!(p.coefficient_of(&[1, 1]).unwrap(), big(2));
        for (d, n) in [
            (vec![1, 1], vec![2, 3]),
            (vec![2], vec![3]),
            (vec![3, 2], vec![1, 2]),
            (vec![1, 1, 1], vec![1, 2, 1]),
            (vec![2, 2], vec![2, 2]),
        ] {
            let fmt = TensorFormat::new(d, n).unwrap();
            let dim: Vec<u32> = fmt.n().to_vec();
            let via_trunc = fo_chow_product::<BigInt>(&fmt).coefficient_of(&dim).unwrap();
            assert_eq!(via_trunc, frobenius_ed_degree_fo(&fmt));
        }
    }

    #[test]
    fn chern_degree_top_is_variety_degree() {
        // S_0 = deg V_{d,n}; a conic has degree 2
        let s = chern_degrees(&TensorFormat::veronese(2, 1));
        assert_eq!(s[0], big(2));
    }

    #[test]
    fn chern_alternating_sum_is_generic_degree() {
        for fmt in [
            TensorFormat::matrices(1, 1),
            TensorFormat::matrices(2, 3),
            TensorFormat::veronese(3, 2),
        ] {
            let s = chern_degrees(&fmt);
            let dim = fmt.dim() as usize;
            let mut acc = BigInt::ZERO;
            for (i, si) in s.iter().enumerate() {
                let w = (BigInt::from(1) << (dim + 1 - i)) - 1;
                if i % 2 == 0 {
                    acc += w * si;
                } else {
                    acc -= w * si;
                }
            }
            assert_eq!(acc, generic_ed_degree(&fmt));
        }
    }

    #[test]
    fn polar_degrees_of_rational_normal_curves() {
        for d in 1..=20u32 {
            let fmt = TensorFormat::veronese(d, 1);
            let p = polar_degrees(&fmt);
            assert_eq!(p[1], big(d as u64));
            assert_eq!(p[0], big(2 * (d as u64) - 2));
            let sum: BigInt = p.iter().sum();
            assert_eq!(sum, big(3 * d as u64 - 2));
            assert_eq!(sum, generic_ed_degree(&fmt));
        }
    }

    #[test]
    fn quartic_surface_chern_mather_fixture() {
        let polar = vec![big(0), big(3), big(4)];
        let cm = chern_mather_from_polar(&polar, 2).unwrap();
        assert_eq!(cm, vec![big(4), big(9), big(6)]);
        assert_eq!(dual_degree_from_chern_mather(&cm, 2, 2), big(18));
    }

    #[test]
    fn chern_mather_zero_maps_to_zero() {
        let zeros = vec![BigInt::ZERO; 4];
        let cm = chern_mather_from_polar(&zeros, 3).unwrap();
        assert!(cm.iter().all(|v| v.is_zero()));
        assert_eq!(dual_degree_from_chern_mather(&cm, 5, 3), BigInt::ZERO);
    }

    #[test]
    fn chern_mather_round_trip_on_smooth_formats() {
        for fmt in [
            TensorFormat::matrices(1, 2),
            TensorFormat::veronese(2, 2),
            TensorFormat::new(vec![2, 1], vec![1, 2]).unwrap(),
        ] {
            let n = fmt.dim() as usize;
            let cm = chern_mather_from_polar(&polar_degrees(&fmt), n).unwrap();
            assert_eq!(cm, chern_degrees(&fmt));
        }
    }

    #[test]
    fn dual_degree_reference_values() {
        // rational normal curves: 2(ed - 1)
        let fmt = TensorFormat::veronese(3, 1);
        assert_eq!(dual_degree_veronese_re_embedding(&fmt, 2).unwrap(), big(10));
        // binary Segre surface: 6e^2 - 8e + 4
        let fmt = TensorFormat::matrices(1, 1);
        assert_eq!(dual_degree_veronese_re_embedding(&fmt, 2).unwrap(), big(12));
        // conic re-embedded by e = 2: degree-6 hypersurface
        let fmt = TensorFormat::veronese(2, 1);
        assert_eq!(dual_degree_veronese_re_embedding(&fmt, 2).unwrap(), big(6));
        assert_eq!(
            dual_degree_veronese_re_embedding(&fmt, 1).unwrap_err(),
            FormulaError::ReembeddingDegreeTooSmall
        );
    }

    #[test]
    fn re_embedding_degree_one_matches_dual_degree_on_smooth_formats() {
        // with e = 1 the Chern-Mather route reproduces delta_0
        for fmt in [
            TensorFormat::veronese(3, 1),
            TensorFormat::matrices(2, 2),
            TensorFormat::veronese(2, 2),
        ] {
            let n = fmt.dim() as usize;
            let polar = polar_degrees(&fmt);
            let cm = chern_mather_from_polar(&polar, n).unwrap();
            assert_eq!(dual_degree_from_chern_mather(&cm, 1, n), polar[0]);
        }
    }

    #[test]
    fn segre_binary_closed_form() {
        assert_eq!(segre_binary_ged(1), big(1));
        assert_eq!(segre_binary_ged(2), big(6));
        assert_eq!(segre_binary_ged(5), big(2808));
        for k in 1..=10 {
            assert_eq!(
                segre_binary_ged(k),
                generic_ed_degree(&TensorFormat::segre_binary(k as usize))
            );
        }
    }

    #[test]
    fn ambient_dimension() {
        assert_eq!(TensorFormat::matrices(1, 1).ambient_dim(), big(3));
        assert_eq!(TensorFormat::veronese(2, 2).ambient_dim(), big(5));
        assert_eq!(TensorFormat::veronese(3, 1).ambient_dim(), big(3));
    }

    #[test]
    fn veronese_surface_reference_constants() {
        // documented reference values for the quadratic and cubic Veronese
        // surfaces: generic 13 with Frobenius defect 10, and Frobenius
        // degree 7 for the cubic
        let v22 = TensorFormat::veronese(2, 2);
        assert_eq!(generic_ed_degree(&v22), big(13));
        assert_eq!(frobenius_ed_degree_fo(&v22), big(3)); // defect 10
        let v32 = TensorFormat::veronese(3, 2);
        assert_eq!(frobenius_ed_degree_fo(&v32), big(7));
        assert_eq!(generic_ed_degree(&v32), big(39));
    }

    #[test]
    fn matrix_specialization_of_frobenius_degree() {
        // rank-one matrices: the Frobenius ED degree is min(n1, n2) + 1
        for n1 in 1..=10u32 {
            for n2 in n1..=10u32 {
                assert_eq!(
                    frobenius_ed_degree_fo(&TensorFormat::matrices(n1, n2)),
                    BigInt::from(n1.min(n2) + 1)
                );
            }
        }
    }

    #[test]
    fn table_golden_corner_entries() {
        let t = emit_table_segre_binary();
        assert_eq!(t.rows[0][10], "2733508864");
        assert_eq!(t.rows[1][10], "3628800");
        let m = emit_table_segre_matrices();
        assert_eq!(m.rows[3][4], "2205");
        assert_eq!(m.rows[9][10], "740526303");
        assert_eq!(m.rows[1][3], "83");
    }
}
