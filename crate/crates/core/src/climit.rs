//! The `q -> 1` limit: big q-Laguerre polynomials tend to classical Laguerre
//! polynomials, the operator `A` tends to the first-order differential
//! operator `A^cl = (1-x)^2 d/dx + 2l(x-1) + 1`, and its eigenfunctions tend to
//! `(1-x)^{-2l} exp((lambda-1)x/(1-x))`.
//!
//! Along a sweep the parameters are `a = q^alpha` and `b = q^beta / (q-1)`,
//! so `l = (alpha+1)/2` and `b -> -infinity`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{a_offdiagonal, eigen_monomial_coefficients, monomial_constant};
use crate::orthogonality::{classify_with, Evaluation, Precision, Status, VerificationReport};
use crate::polynomials::{big_q_laguerre_in, classical_laguerre, recurrence_diagonal};
use crate::qseries::{QParams, Truncation};
use crate::real::{Extended, Real};

/// Sweeps with `1 - q` below this switch to extended precision.
pub const EXTENDED_THRESHOLD: f64 = 1.0 / 1024.0;
/// Rates are fitted and monotonicity checked on `q >= 1 - 2^-4`.
pub const FIT_START_Q: f64 = 1.0 - 1.0 / 16.0;
/// Number of trailing sweep points used for the rate fit.
pub const FIT_POINTS: usize = 3;
/// Smallest fitted order for a check to pass.
pub const MIN_RATE: f64 = 0.9;
/// Errors at or below this are treated as exact and left out of the fit.
pub const ROUNDING_FLOOR: f64 = 1e-13;
/// Relative tolerance of the finite-difference operator check.
pub const FD_TOLERANCE: f64 = 1e-8;

/// Parameters of a `q -> 1` sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSweep {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub x: f64,
    /// Strictly increasing values in `(0, 1)`.
    pub q_sequence: Vec<f64>,
}

impl LimitSweep {
    pub fn new(alpha: f64, beta: f64, lambda: f64, x: f64, q_sequence: Vec<f64>) -> Result<Self> {
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!("alpha must exceed -1 (got {alpha})")));
        }
        for (name, v) in [("beta", beta), ("lambda", lambda), ("x", x)] {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite (got {v})")));
            }
        }
        if q_sequence.is_empty() {
            return Err(Error::Domain("q sequence is empty".into()));
        }
        if let Some(q) = q_sequence.iter().find(|q| !(**q > 0.0 && **q < 1.0)) {
            return Err(Error::InvalidQ(*q));
        }
        if q_sequence.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain(
                "q sequence must be strictly increasing".into(),
            ));
        }
        Ok(LimitSweep {
            alpha,
            beta,
            lambda,
            x,
            q_sequence,
        })
    }

    /// The sweep `q = 1 - 2^-k`, `k = 2..=k_max`.
    pub fn dyadic(alpha: f64, beta: f64, lambda: f64, x: f64, k_max: u32) -> Result<Self> {
        if !(2..=52).contains(&k_max) {
            return Err(Error::Domain(format!(
                "k_max must lie in 2..=52 (got {k_max})"
            )));
        }
        let qs = (2..=k_max).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect();
        Self::new(alpha, beta, lambda, x, qs)
    }

    /// Lowest weight `l = (alpha + 1) / 2`.
    pub fn l(&self) -> f64 {
        0.5 * (self.alpha + 1.0)
    }

    pub fn b_at(&self, q: f64) -> f64 {
        q.powf(self.beta) / (q - 1.0)
    }

    /// `(q, q^alpha, q^beta / (q-1))`.
    pub fn params_at(&self, q: f64) -> Result<QParams> {
        QParams::from_weight(q, self.l(), self.b_at(q))
    }
}

/// Least-squares order of `err ~ C (1-q)^rate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    /// Slope of `ln err` against `ln(1-q)`; infinite when fewer than two
    /// errors lie above the rounding floor.
    pub rate: f64,
    /// Smallest `C` with `err <= C (1-q)` on the fitted points.
    pub constant: f64,
    pub points_used: usize,
}

/// A sweep of one limit relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitCheck {
    pub id: String,
    pub reports: Vec<VerificationReport>,
    pub fit: RateFit,
    /// Values of `q` (in the fitted range) where the error grew.
    pub non_monotone: Vec<f64>,
    pub status: Status,
}

impl LimitCheck {
    pub fn errors(&self) -> Vec<f64> {
        self.reports.iter().map(|r| r.residual).collect()
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }
}

/// Fits the asymptotic order of convergence on the last `FIT_POINTS` points
/// with `q >= FIT_START_Q` (all points if fewer than two qualify). The
/// constant covers the whole range `q >= FIT_START_Q`.
pub fn fit_rate(qs: &[f64], errors: &[f64]) -> RateFit {
    let window: Vec<usize> = (0..qs.len()).filter(|&i| qs[i] >= FIT_START_Q).collect();
    let window = if window.len() >= 2 {
        window
    } else {
        (0..qs.len()).collect()
    };
    let tail = &window[window.len().saturating_sub(FIT_POINTS)..];
    let pts: Vec<(f64, f64)> = tail
        .iter()
        .filter(|&&i| errors[i] > ROUNDING_FLOOR)
        .map(|&i| ((1.0 - qs[i]).ln(), errors[i].ln()))
        .collect();
    let constant = window
        .iter()
        .map(|&i| errors[i] / (1.0 - qs[i]))
        .fold(0.0, f64::max);
    if pts.len() < 2 {
        return RateFit {
            rate: f64::INFINITY,
            constant,
            points_used: pts.len(),
        };
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    RateFit {
        rate: sxy / sxx,
        constant,
        points_used: pts.len(),
    }
}

/// Values of `q` in the fitted range where the error increased over the
/// previous point.
pub fn non_monotone_steps(qs: &[f64], errors: &[f64]) -> Vec<f64> {
    (1..qs.len())
        .filter(|&i| qs[i - 1] >= FIT_START_Q)
        .filter(|&i| errors[i] > errors[i - 1] && errors[i] > ROUNDING_FLOOR)
        .map(|i| qs[i])
        .collect()
}

struct Point {
    params: QParams,
    lhs: f64,
    rhs: f64,
    residual: f64,
    precision: Precision,
    details: BTreeMap<String, f64>,
}

fn assemble(id: &str, n: usize, sweep: &LimitSweep, points: Vec<Point>) -> Result<LimitCheck> {
    let errors: Vec<f64> = points.iter().map(|p| p.residual).collect();
    if let Some(e) = errors.iter().find(|e| !e.is_finite()) {
        return Err(Error::Domain(format!("{id}: non-finite error {e}")));
    }
    let fit = fit_rate(&sweep.q_sequence, &errors);
    let non_monotone = non_monotone_steps(&sweep.q_sequence, &errors);
    let status = if fit.rate >= MIN_RATE && non_monotone.len() <= 1 {
        Status::Passed
    } else {
        Status::Failed
    };
    let note = match non_monotone.as_slice() {
        [] => None,
        qs => Some(format!("error increased at q = {qs:?}")),
    };
    let reports = points
        .into_iter()
        .enumerate()
        .map(|(k, pt)| {
            let q = sweep.q_sequence[k];
            let mut details = pt.details;
            details.insert("q".into(), q);
            details.insert("one_minus_q".into(), 1.0 - q);
            details.insert("rate".into(), fit.rate);
            details.insert("constant".into(), fit.constant);
            VerificationReport {
                identity_id: id.to_string(),
                params: Some(pt.params),
                indices: (n as i64, k as i64),
                lhs: pt.lhs,
                rhs: pt.rhs,
                residual: pt.residual,
                terms_used: n + 1,
                tail_estimate: 0.0,
                tolerance: fit.constant * (1.0 - q),
                scale: 1.0,
                status,
                passed: status == Status::Passed,
                precision: pt.precision,
                details,
                note: note.clone(),
            }
        })
        .collect();
    Ok(LimitCheck {
        id: id.to_string(),
        reports,
        fit,
        non_monotone,
        status,
    })
}

fn laguerre_at<R: Real>(n: usize, x: f64, p: &QParams) -> f64 {
    let r = |v: f64| R::from_f64(v);
    big_q_laguerre_in(n, &r(x), &r(p.a), &r(p.b), &r(p.q)).to_f64()
}

/// `P_n(x; q^alpha, q^beta/(q-1); q)` against `L_n^(alpha)(1-x) / L_n^(alpha)(0)`
/// at every `q` of the sweep.
///
/// Points with `1 - q < EXTENDED_THRESHOLD` are evaluated in extended
/// precision, and so is every point with `x < 0`: there the evaluator divides
/// by `(aq; q)_n ~ (1-q)^n` and the sum cancels to the same order.
pub fn limit_polynomial_check(
    n: usize,
    x: f64,
    sweep: &LimitSweep,
    t: &Truncation,
) -> Result<LimitCheck> {
    t.validate()?;
    let norm = classical_laguerre(n, sweep.alpha, 0.0);
    if norm == 0.0 {
        return Err(Error::Domain(format!(
            "L_{n}^({})(0) vanishes",
            sweep.alpha
        )));
    }
    let rhs = classical_laguerre(n, sweep.alpha, 1.0 - x) / norm;
    let points = sweep
        .q_sequence
        .iter()
        .map(|&q| {
            let params = sweep.params_at(q)?;
            let (lhs, precision) = if 1.0 - q < EXTENDED_THRESHOLD || x < 0.0 {
                (laguerre_at::<Extended>(n, x, &params), Precision::Extended)
            } else {
                (laguerre_at::<f64>(n, x, &params), Precision::Double)
            };
            Ok(Point {
                params,
                lhs,
                rhs,
                residual: (lhs - rhs).abs(),
                precision,
                details: BTreeMap::from([("x".to_string(), x)]),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble("limit-laguerre", n, sweep, points)
}

/// Coefficients of `A^cl x^k`: `(x^{k-1}, x^k, x^{k+1}) -> (k, 1-2l-2k, k+2l)`.
pub fn classical_operator_entries(k: usize, l: f64) -> [f64; 3] {
    let kf = k as f64;
    [kf, 1.0 - 2.0 * l - 2.0 * kf, kf + 2.0 * l]
}

/// Coefficients of `A x^k` on `(x^{k-1}, x^k, x^{k+1})`, converted from the
/// orthonormal basis `f^l_k = c^l_k x^k`.
pub fn monomial_operator_entries(k: usize, p: &QParams) -> [f64; 3] {
    let c = |j: usize| monomial_constant(j, p.l, p.q);
    let sub = if k == 0 {
        0.0
    } else {
        a_offdiagonal(k - 1, p) * c(k - 1) / c(k)
    };
    let diag = recurrence_diagonal(k, &p.a, &p.b, &p.q);
    let sup = a_offdiagonal(k, p) * c(k + 1) / c(k);
    [sub, diag, sup]
}

/// Rows `0..=n` of `A` in the monomial basis against the matrix of `A^cl`.
/// The reported error at each `q` is the largest entry deviation.
pub fn limit_operator_entries_check(n: usize, sweep: &LimitSweep) -> Result<LimitCheck> {
    let l = sweep.l();
    let points = sweep
        .q_sequence
        .iter()
        .map(|&q| {
            let params = sweep.params_at(q)?;
            let mut worst = (0.0, 0.0, -1.0);
            let mut details = BTreeMap::new();
            for k in 0..=n {
                let got = monomial_operator_entries(k, &params);
                let want = classical_operator_entries(k, l);
                for (j, name) in ["sub", "diag", "sup"].iter().enumerate() {
                    details.insert(format!("{name}_{k}"), got[j]);
                    let err = (got[j] - want[j]).abs();
                    if err > worst.2 {
                        worst = (got[j], want[j], err);
                    }
                }
            }
            Ok(Point {
                params,
                lhs: worst.0,
                rhs: worst.1,
                residual: worst.2,
                precision: Precision::Double,
                details,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble("limit-operator", n, sweep, points)
}

/// Monomial coefficients `0..=n` of the eigenfunction of `A` with eigenvalue
/// `sweep.lambda` against `L_m^(2l-1)(1 - lambda)`.
pub fn limit_eigen_coefficients_check(n: usize, sweep: &LimitSweep) -> Result<LimitCheck> {
    let alpha = 2.0 * sweep.l() - 1.0;
    let target: Vec<f64> = (0..=n)
        .map(|m| classical_laguerre(m, alpha, 1.0 - sweep.lambda))
        .collect();
    let points = sweep
        .q_sequence
        .iter()
        .map(|&q| {
            let params = sweep.params_at(q)?;
            let got = eigen_monomial_coefficients(sweep.lambda, &params, n)?.coeffs();
            let (m, err) = got
                .iter()
                .zip(&target)
                .map(|(g, t)| (g - t).abs())
                .enumerate()
                .fold(
                    (0, -1.0),
                    |acc, (m, e)| if e > acc.1 { (m, e) } else { acc },
                );
            let details = got
                .iter()
                .enumerate()
                .map(|(j, g)| (format!("coeff_{j}"), *g))
                .collect();
            Ok(Point {
                params,
                lhs: got[m],
                rhs: target[m],
                residual: err,
                precision: Precision::Double,
                details,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    assemble("limit-eigen-coefficients", n, sweep, points)
}

fn check_disc(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::Domain(format!("|x| must be below 1 (got x = {x})")));
    }
    Ok(())
}

/// `(1-x)^{-2l} exp((lambda-1) x / (1-x))`.
pub fn classical_eigenfunction(lambda: f64, x: f64, l: f64) -> Result<f64> {
    check_disc(x)?;
    Ok((1.0 - x).powf(-2.0 * l) * ((lambda - 1.0) * x / (1.0 - x)).exp())
}

/// Partial sum `sum_{n < terms} L_n^(2l-1)(1-lambda) x^n`.
pub fn classical_eigenfunction_series(lambda: f64, x: f64, l: f64, terms: usize) -> Result<f64> {
    check_disc(x)?;
    let (alpha, y) = (2.0 * l - 1.0, 1.0 - lambda);
    let mut sum = crate::sum::CompensatedSum::new();
    let (mut prev, mut cur, mut xn) = (0.0, 1.0, 1.0);
    for k in 0..terms {
        sum.add(cur * xn);
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - y) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        xn *= x;
    }
    Ok(sum.value())
}

/// `A^cl xi = lambda xi` at `x`, with `xi'` from the five-point central
/// difference of step `h`. Passes when the residual is below
/// `FD_TOLERANCE * (1 + |lambda|) |xi|`.
pub fn classical_operator_check(lambda: f64, x: f64, l: f64, h: f64) -> Result<VerificationReport> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!(
            "step must be positive (got h = {h})"
        )));
    }
    if x.is_nan() || x.abs() >= 1.0 - 2.0 * h {
        return Err(Error::Domain(format!(
            "need |x| < 1 - 2h (got x = {x}, h = {h})"
        )));
    }
    let xi = |y: f64| classical_eigenfunction(lambda, y, l);
    let d =
        (xi(x - 2.0 * h)? - 8.0 * xi(x - h)? + 8.0 * xi(x + h)? - xi(x + 2.0 * h)?) / (12.0 * h);
    let v = xi(x)?;
    let lhs = (1.0 - x).powi(2) * d + (2.0 * l * (x - 1.0) + 1.0) * v;
    let e = Evaluation::new(lhs, lambda * v, v.abs(), &[])
        .detail("x", x)
        .detail("h", h)
        .detail("l", l)
        .detail("lambda", lambda)
        .detail("xi", v)
        .detail("derivative", d);
    Ok(classify_with(
        "classical-operator",
        (0, 0),
        None,
        FD_TOLERANCE,
        Precision::Double,
        e,
    ))
}
