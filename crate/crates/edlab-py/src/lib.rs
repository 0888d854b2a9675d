//! Python bindings: the main degree formulas, the quadric pencil analysis,
//! the rational-normal-curve defect machinery, the critical-point engine,
//! and the ED polynomial, importable as `edlab_py`.
//!
//! Exact rationals cross the boundary as strings (`"p/q"`); matrices are
//! lists of rows. Entries of exact matrices may be Python ints or strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use edlab::critpoints::{
    critical_matrices, critical_symmetric, verify_morse_inequalities, CritConfig,
};
use edlab::edpoly;
use edlab::exactmath::{format_rat, parse_rat, rat_int, BigRational, SymMat};
use edlab::formulas::{self, TensorFormat};
use edlab::pencils;
use edlab::rnc;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

enum ExactCell {
    Int(i64),
    Str(String),
}

impl<'a, 'py> FromPyObject<'a, 'py> for ExactCell {
    type Error = PyErr;

    fn extract(ob: pyo3::Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
        if let Ok(v) = ob.extract::<i64>() {
            return Ok(ExactCell::Int(v));
        }
        if let Ok(s) = ob.extract::<String>() {
            return Ok(ExactCell::Str(s));
        }
        Err(PyValueError::new_err(
            "exact entries must be ints or \"p/q\" strings",
        ))
    }
}

impl ExactCell {
    fn to_rat(&self) -> PyResult<BigRational> {
        match self {
            ExactCell::Int(v) => Ok(rat_int(*v)),
            ExactCell::Str(s) => parse_rat(s).map_err(err),
        }
    }
}

fn exact_symmat(rows: Vec<Vec<ExactCell>>) -> PyResult<SymMat> {
    let parsed: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.to_rat()).collect::<PyResult<_>>())
        .collect::<PyResult<_>>()?;
    SymMat::from_rows_exact(&parsed).map_err(err)
}

fn numeric_symmat(rows: Vec<Vec<f64>>) -> PyResult<SymMat> {
    SymMat::from_rows_numeric(&rows).map_err(err)
}

/// Degree report for the Segre-Veronese format `(d, n)`; big integers come
/// back as decimal strings.
#[pyfunction]
fn gedeg(py: Python<'_>, d: Vec<u32>, n: Vec<u32>) -> PyResult<Py<PyDict>> {
    let fmt = TensorFormat::new(d, n).map_err(err)?;
    let rep = formulas::degree_report(&fmt);
    let out = PyDict::new(py);
    out.set_item("generic_ed_degree", rep.generic_ed_degree.to_string())?;
    out.set_item("frobenius_ed_degree", rep.frobenius_ed_degree.to_string())?;
    out.set_item(
        "chern_degrees",
        rep.chern_degrees.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    )?;
    out.set_item(
        "polar_degrees",
        rep.polar_degrees.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    )?;
    out.set_item("dual_degree", rep.dual_degree.map(|v| v.to_string()))?;
    out.set_item("ambient_dim", fmt.ambient_dim().to_string())?;
    Ok(out.into())
}

/// Generic ED degree of the binary Segre variety with `k` factors, in the
/// closed derangement form.
#[pyfunction]
fn segre_binary_ged(k: u32) -> String {
    formulas::segre_binary_ged(k).to_string()
}

/// Degree of the locus of degree-`e` hypersurfaces non-transversal to the
/// format's variety.
#[pyfunction]
fn dual_degree_veronese(d: Vec<u32>, n: Vec<u32>, e: u32) -> PyResult<String> {
    let fmt = TensorFormat::new(d, n).map_err(err)?;
    Ok(formulas::dual_degree_veronese_re_embedding(&fmt, e)
        .map_err(err)?
        .to_string())
}

/// ED degree and defect of the smooth quadric `f` under the inner product
/// `q` (numeric matrices).
#[pyfunction]
fn quadric_ed_degree(py: Python<'_>, f: Vec<Vec<f64>>, q: Vec<Vec<f64>>) -> PyResult<Py<PyDict>> {
    let fm = numeric_symmat(f)?;
    let qm = numeric_symmat(q)?;
    let a = pencils::quadric_ed_degree(&fm, &qm).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("ed_degree", a.ed_degree)?;
    out.set_item("ed_defect", a.ed_defect)?;
    out.set_item("segre_symbol", a.segre_symbol.to_string())?;
    out.set_item("eigenvalues", a.eigenvalues)?;
    out.set_item("distinct_eigenvalues", a.distinct_eigenvalues)?;
    Ok(out.into())
}

/// ED defect and degree of the degree-`d` rational normal curve under an
/// exact symmetric form.
#[pyfunction]
fn rnc_ed_degree(py: Python<'_>, q: Vec<Vec<ExactCell>>, d: u32) -> PyResult<Py<PyDict>> {
    let qm = exact_symmat(q)?;
    let r = rnc::rnc_ed_degree(&qm, d).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("ed_degree", r.ed_degree)?;
    out.set_item("ed_defect", r.ed_defect)?;
    out.set_item("generic_ed_degree", r.generic_ed_degree)?;
    out.set_item("curve_contained", r.curve_contained)?;
    let pts = PyList::empty(py);
    for p in &r.points {
        let e = PyDict::new(py);
        e.set_item("multiplicity", p.multiplicity)?;
        e.set_item("real", p.real)?;
        e.set_item("at_infinity", p.at_infinity)?;
        pts.append(e)?;
    }
    out.set_item("points", pts)?;
    Ok(out.into())
}

/// Gram matrix of the binomial-weight inner product on the curve's ambient
/// space, entries as strings.
#[pyfunction]
fn frobenius_rnc_gram(py: Python<'_>, d: u32) -> PyResult<Py<PyList>> {
    let m = rnc::make_frobenius_rnc(d);
    let rows = PyList::empty(py);
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|j| format_rat(m.get_exact(i, j).unwrap()))
            .collect();
        rows.append(row)?;
    }
    Ok(rows.into())
}

fn point_set_to_py(
    py: Python<'_>,
    set: &edlab::critpoints::CriticalPointSet,
    census: &edlab::critpoints::MorseCensus,
    matrix_dims: Option<(usize, usize)>,
) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    let pts = PyList::empty(py);
    for p in &set.points {
        let e = PyDict::new(py);
        e.set_item("x", p.x.clone())?;
        if !p.y.is_empty() {
            e.set_item("y", p.y.clone())?;
        }
        e.set_item("lambda", p.lambda)?;
        e.set_item("eps_sq", p.eps_sq)?;
        e.set_item("morse_index", p.morse_index)?;
        e.set_item("residual", p.residual)?;
        e.set_item("basin_count", p.basin_count)?;
        pts.append(e)?;
    }
    out.set_item("points", pts)?;
    out.set_item("non_generic", set.non_generic)?;
    out.set_item("census", census.m.clone())?;
    out.set_item("betti", census.betti.clone())?;
    let report = verify_morse_inequalities(census, matrix_dims);
    out.set_item("morse_checks_passed", report.passed)?;
    Ok(out.into())
}

/// Real critical rank-one approximations of a matrix `u` under the inner
/// product with Gram matrix `q` on the tensor space (lexicographic basis).
#[pyfunction]
#[pyo3(signature = (u, q, seed = 0, starts = 0))]
fn critical_points_matrix(
    py: Python<'_>,
    u: Vec<Vec<f64>>,
    q: Vec<Vec<f64>>,
    seed: u64,
    starts: usize,
) -> PyResult<Py<PyDict>> {
    let gram = numeric_symmat(q)?;
    let cfg = CritConfig {
        seed,
        starts,
        ..CritConfig::default()
    };
    if u.is_empty() || u[0].is_empty() {
        return Err(PyValueError::new_err("data matrix must be nonempty"));
    }
    let dims = (u.len() - 1, u[0].len() - 1);
    let (set, census) = critical_matrices(&u, &gram, &cfg).map_err(err)?;
    point_set_to_py(py, &set, &census, Some(dims))
}

/// Real critical rank-one approximations of a symmetric matrix `u`; the
/// Gram matrix lives on the symmetric square in the monomial basis.
#[pyfunction]
#[pyo3(signature = (u, q, seed = 0, starts = 0))]
fn critical_points_symmetric(
    py: Python<'_>,
    u: Vec<Vec<f64>>,
    q: Vec<Vec<f64>>,
    seed: u64,
    starts: usize,
) -> PyResult<Py<PyDict>> {
    let gram = numeric_symmat(q)?;
    let cfg = CritConfig {
        seed,
        starts,
        ..CritConfig::default()
    };
    let (set, census) = critical_symmetric(&u, &gram, &cfg).map_err(err)?;
    point_set_to_py(py, &set, &census, None)
}

/// Frobenius Gram matrix on the symmetric square (monomial basis), as
/// nested lists of floats.
#[pyfunction]
fn frobenius_gram_symmetric(n_plus_1: usize) -> Vec<Vec<f64>> {
    edlab::critpoints::frobenius_gram_symmetric(n_plus_1).to_dense_f64()
}

/// ED polynomial of the degree-`d` curve at exact data; coefficients come
/// back as `"p/q"` strings, constant term first.
#[pyfunction]
fn ed_polynomial_rnc(
    py: Python<'_>,
    u: Vec<ExactCell>,
    q: Vec<Vec<ExactCell>>,
    d: u32,
) -> PyResult<Py<PyDict>> {
    let uu: Vec<BigRational> = u.iter().map(|c| c.to_rat()).collect::<PyResult<_>>()?;
    let qm = exact_symmat(q)?;
    let p = edpoly::ed_polynomial_rnc(&uu, &qm, d).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("degree", p.degree)?;
    out.set_item("coefficients", p.coefficient_strings())?;
    Ok(out.into())
}

/// Is the exact 3x3 form tangent to the plane conic?
#[pyfunction]
fn conic_tangency(q: Vec<Vec<ExactCell>>) -> PyResult<bool> {
    edpoly::conic_tangency_test(&exact_symmat(q)?).map_err(err)
}

/// Evaluates the stored dual-sextic of the plane conic at an exact form;
/// returns the value as a `"p/q"` string (zero exactly on tangent forms).
#[pyfunction]
fn conic_dual_sextic(q: Vec<Vec<ExactCell>>) -> PyResult<String> {
    Ok(format_rat(
        &edpoly::conic_sextic_fixture_eval(&exact_symmat(q)?).map_err(err)?,
    ))
}

#[pymodule]
fn edlab_py(m: &Bound<PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gedeg, m)?)?;
    m.add_function(wrap_pyfunction!(segre_binary_ged, m)?)?;
    m.add_function(wrap_pyfunction!(dual_degree_veronese, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_ed_degree, m)?)?;
    m.add_function(wrap_pyfunction!(rnc_ed_degree, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_rnc_gram, m)?)?;
    m.add_function(wrap_pyfunction!(critical_points_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(critical_points_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_gram_symmetric, m)?)?;
    m.add_function(wrap_pyfunction!(ed_polynomial_rnc, m)?)?;
    m.add_function(wrap_pyfunction!(conic_tangency, m)?)?;
    m.add_function(wrap_pyfunction!(conic_dual_sextic, m)?)?;
    Ok(())
}
