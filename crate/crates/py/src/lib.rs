//! Python module `qortho`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qortho_core::climit::{
    classical_eigenfunction as classical_xi, limit_polynomial_check, LimitSweep,
};
use qortho_core::operators::{build_a, eig_tridiagonal, spectrum_points as points};
use qortho_core::orthogonality::{
    index_grid, Identity, Precision, VerificationReport, VerifyOptions,
};
use qortho_core::{polynomials, QParams, Truncation};

fn value_error(e: qortho_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(q: f64, a: f64, b: f64) -> PyResult<QParams> {
    QParams::new(q, a, b).map_err(value_error)
}

/// One verification outcome.
#[pyclass(frozen, get_all, module = "qortho")]
pub struct Report {
    identity_id: String,
    i: i64,
    j: i64,
    lhs: f64,
    rhs: f64,
    residual: f64,
    terms_used: usize,
    tail_estimate: f64,
    tolerance: f64,
    status: String,
    passed: bool,
    precision: String,
    note: Option<String>,
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!(
            "Report({}, ({}, {}), residual={:e}, status={})",
            self.identity_id, self.i, self.j, self.residual, self.status
        )
    }
}

impl From<VerificationReport> for Report {
    fn from(r: VerificationReport) -> Self {
        let status = format!("{:?}", r.status).to_lowercase();
        Report {
            identity_id: r.identity_id,
            i: r.indices.0,
            j: r.indices.1,
            lhs: r.lhs,
            rhs: r.rhs,
            residual: r.residual,
            terms_used: r.terms_used,
            tail_estimate: r.tail_estimate,
            tolerance: r.tolerance,
            status,
            passed: r.passed,
            precision: match r.precision {
                Precision::Double => "double".into(),
                Precision::Extended => "extended".into(),
            },
            note: r.note,
        }
    }
}

/// `P_n(x; a, b; q)`.
#[pyfunction]
fn big_q_laguerre(n: usize, x: f64, q: f64, a: f64, b: f64) -> PyResult<f64> {
    Ok(polynomials::big_q_laguerre(n, x, &params(q, a, b)?))
}

/// `P_0(x), ..., P_n(x)` by the three-term recurrence.
#[pyfunction]
fn big_q_laguerre_recurrence(n: usize, x: f64, q: f64, a: f64, b: f64) -> PyResult<Vec<f64>> {
    Ok(polynomials::big_q_laguerre_recurrence(
        n,
        x,
        &params(q, a, b)?,
    ))
}

/// `M_n(q^-m; b, c; q)`.
#[pyfunction]
fn q_meixner(n: usize, m: usize, b: f64, c: f64, q: f64) -> PyResult<f64> {
    polynomials::q_meixner(n, m, &b, &c, &q).map_err(value_error)
}

/// The first `count` points `aq^{k+1}` and `bq^{k+1}` of the spectrum of `A`.
#[pyfunction]
fn spectrum_points(q: f64, a: f64, b: f64, count: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let s = points(&params(q, a, b)?, count);
    Ok((s.upper, s.lower))
}

/// Eigenvalues of the `dim x dim` truncation of `A`, ascending.
#[pyfunction]
fn eigenvalues(q: f64, a: f64, b: f64, dim: usize) -> PyResult<Vec<f64>> {
    let m = build_a(&params(q, a, b)?, dim).map_err(value_error)?;
    eig_tridiagonal(&m).map_err(value_error)
}

/// Runs one identity family (`"all"` for every family) over indices `0..=index_max`.
#[pyfunction]
#[pyo3(signature = (identity, q, a, b, index_max = 8, tol = 1e-8))]
fn verify(
    identity: &str,
    q: f64,
    a: f64,
    b: f64,
    index_max: usize,
    tol: f64,
) -> PyResult<Vec<Report>> {
    let p = params(q, a, b)?;
    let ids = if identity == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![Identity::from_name(identity)
            .ok_or_else(|| PyValueError::new_err(format!("unknown identity {identity:?}")))?]
    };
    let opts = VerifyOptions {
        tolerance: tol,
        ..VerifyOptions::default()
    };
    let mut out = Vec::new();
    for id in ids {
        for check in index_grid(id, index_max) {
            out.push(check.run(&p, &opts).map_err(value_error)?.into());
        }
    }
    Ok(out)
}

/// `(1-x)^{-2l} exp((lambda-1) x / (1-x))`.
#[pyfunction]
fn classical_eigenfunction(lambda: f64, x: f64, l: f64) -> PyResult<f64> {
    classical_xi(lambda, x, l).map_err(value_error)
}

/// Errors of `P_n` against its classical limit along `q = 1 - 2^-k`,
/// `k = 2..=k_max`, with the fitted order: `(errors, rate, constant)`.
#[pyfunction]
#[pyo3(signature = (n, x, alpha, beta, k_max = 10))]
fn limit_errors(
    n: usize,
    x: f64,
    alpha: f64,
    beta: f64,
    k_max: u32,
) -> PyResult<(Vec<f64>, f64, f64)> {
    let sweep = LimitSweep::dyadic(alpha, beta, 0.0, x, k_max).map_err(value_error)?;
    let c = limit_polynomial_check(n, x, &sweep, &Truncation::default()).map_err(value_error)?;
    Ok((c.errors(), c.fit.rate, c.fit.constant))
}

#[pymodule]
fn qortho(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(big_q_laguerre, m)?)?;
    m.add_function(wrap_pyfunction!(big_q_laguerre_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(q_meixner, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_points, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(classical_eigenfunction, m)?)?;
    m.add_function(wrap_pyfunction!(limit_errors, m)?)?;
    Ok(())
}
