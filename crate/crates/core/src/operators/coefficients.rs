//! Eigencoefficients of `A`, `A_1`, `A_2`, normalization constants and the
//! action of `q^{-J_0}` on the eigenbasis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomials::big_q_laguerre_scaled;
use crate::qseries::{
    q_number, q_pochhammer, q_pochhammer_inf_multi, terminating_degree, QParams, Truncation,
};
use crate::real::Real;
use crate::sum::LogScaled;

/// Coefficients of a vector in the basis `f^l_m`, stored as sign and log-magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub lambda: f64,
    pub log_coeffs: Vec<LogScaled>,
    /// False when `lambda` is not a spectral point, so the coefficients are
    /// not square-summable.
    pub normalizable: bool,
}

impl CoefficientVector {
    pub fn len(&self) -> usize {
        self.log_coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_coeffs.is_empty()
    }

    /// Coefficients as doubles; may overflow for large indices off the spectrum.
    pub fn coeffs(&self) -> Vec<f64> {
        self.log_coeffs.iter().map(LogScaled::value).collect()
    }

    /// `sum_{m > cut} c_m^2 / sum_m c_m^2`.
    pub fn tail_fraction(&self, cut: usize) -> f64 {
        let sq: Vec<f64> = self.coeffs().iter().map(|c| c * c).collect();
        let total: f64 = sq.iter().sum();
        if total == 0.0 {
            return 0.0;
        }
        sq.iter().skip(cut + 1).sum::<f64>() / total
    }
}

fn is_spectral(lambda: f64, p: &QParams) -> bool {
    if lambda > 0.0 {
        terminating_degree(p.a * p.q / lambda, p.q).is_some()
    } else if lambda < 0.0 {
        terminating_degree(p.b * p.q / lambda, p.q).is_some()
    } else {
        false
    }
}

/// `ln (x; q)_m` for `m = 0..=m_max`, requiring every factor to be positive.
fn ln_pochhammer_table(x: f64, q: f64, m_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(0.0);
    for j in 0..m_max {
        out.push(out[j] + (-x * q.powi(j as i32)).ln_1p());
    }
    out
}

/// Builds `prefactor_m * P_m(lambda)` from a log-prefactor closure.
fn with_polynomial(
    lambda: f64,
    p: &QParams,
    m_max: usize,
    ln_pref: impl Fn(usize) -> f64,
) -> Result<CoefficientVector> {
    let log_coeffs: Vec<LogScaled> = (0..=m_max)
        .map(|m| {
            let mut c = big_q_laguerre_scaled(m, lambda, p);
            c.ln_abs += ln_pref(m);
            c
        })
        .collect();
    if log_coeffs
        .iter()
        .any(|c| c.ln_abs.is_nan() || c.ln_abs == f64::INFINITY)
    {
        return Err(Error::Overflow("eigencoefficients"));
    }
    Ok(CoefficientVector {
        lambda,
        log_coeffs,
        normalizable: is_spectral(lambda, p),
    })
}

struct LnTables {
    aq: Vec<f64>,
    bq: Vec<f64>,
    qq: Vec<f64>,
    ln_q: f64,
}

impl LnTables {
    fn new(p: &QParams, m_max: usize) -> Self {
        LnTables {
            aq: ln_pochhammer_table(p.a * p.q, p.q, m_max),
            bq: ln_pochhammer_table(p.b * p.q, p.q, m_max),
            qq: ln_pochhammer_table(p.q, p.q, m_max),
            ln_q: p.q.ln(),
        }
    }
}

/// Coefficients `a_m(lambda)` of the eigenfunction of `A` in the basis `f^l_m`:
///
/// ```text
/// a_m(lambda) = (-ab)^{-m/2} q^{-m(m+3)/4} ((aq, bq; q)_m / (q; q)_m)^{1/2} P_m(lambda; a, b; q)
/// ```
pub fn eigen_coefficients(lambda: f64, p: &QParams, m_max: usize) -> Result<CoefficientVector> {
    let t = LnTables::new(p, m_max);
    let ln_mab = (-p.a * p.b).ln();
    with_polynomial(lambda, p, m_max, |m| {
        let mf = m as f64;
        -0.5 * mf * ln_mab - mf * (mf + 3.0) / 4.0 * t.ln_q + 0.5 * (t.aq[m] + t.bq[m] - t.qq[m])
    })
}

/// Coefficients of the same eigenfunction in the monomials `x^m`:
///
/// ```text
/// (-b)^{-m/2} a^{-3m/4} q^{-m(m+3)/4} (aq; q)_m / (q; q)_m (bq; q)_m^{1/2} P_m(lambda)
/// ```
pub fn eigen_monomial_coefficients(
    lambda: f64,
    p: &QParams,
    m_max: usize,
) -> Result<CoefficientVector> {
    let t = LnTables::new(p, m_max);
    let (ln_mb, ln_a) = ((-p.b).ln(), p.a.ln());
    with_polynomial(lambda, p, m_max, |m| {
        let mf = m as f64;
        -0.5 * mf * ln_mb - 0.75 * mf * ln_a - mf * (mf + 3.0) / 4.0 * t.ln_q + t.aq[m] - t.qq[m]
            + 0.5 * t.bq[m]
    })
}

/// Coefficients of `psi_lambda` and `phi_lambda`:
///
/// ```text
/// psi_m = (-ab)^{-m/2} q^{-m} ((aq; q)_m / (q; q)_m)^{1/2} P_m(lambda)
/// phi_m = (-ab)^{-m/2} q^{-m(m+1)/2} ((aq; q)_m (bq; q)_m^2 / (q; q)_m)^{1/2} P_m(lambda)
/// ```
///
/// `psi` is an eigenvector of `A_2` and `phi` one of `A_1`, with the matrices
/// of [`super::build_a1_a2`]; `psi_m phi_m = a_m^2`.
pub fn psi_phi_coefficients(
    lambda: f64,
    p: &QParams,
    m_max: usize,
) -> Result<(CoefficientVector, CoefficientVector)> {
    let t = LnTables::new(p, m_max);
    let ln_mab = (-p.a * p.b).ln();
    let psi = with_polynomial(lambda, p, m_max, |m| {
        let mf = m as f64;
        -0.5 * mf * ln_mab - mf * t.ln_q + 0.5 * (t.aq[m] - t.qq[m])
    })?;
    let phi = with_polynomial(lambda, p, m_max, |m| {
        let mf = m as f64;
        -0.5 * mf * ln_mab - mf * (mf + 1.0) / 2.0 * t.ln_q + t.bq[m] + 0.5 * (t.aq[m] - t.qq[m])
    })?;
    Ok((psi, phi))
}

/// `c^l_n = q^{(1-2l)n/4} ((q^{2l}; q)_n / (q; q)_n)^{1/2}`.
pub fn monomial_constant(n: usize, l: f64, q: f64) -> f64 {
    let ratio = q_pochhammer(&q.powf(2.0 * l), &q, n) / q_pochhammer(&q, &q, n);
    q.powf((1.0 - 2.0 * l) * n as f64 / 4.0) * ratio.sqrt()
}

/// `c^l_n = prod_{k=1}^n ([2l+k-1]_q / [k]_q)^{1/2}` with symmetric q-numbers.
pub fn monomial_constant_product(n: usize, l: f64, q: f64) -> f64 {
    (1..=n)
        .map(|k| (q_number(2.0 * l + k as f64 - 1.0, q) / q_number(k as f64, q)).sqrt())
        .product()
}

fn checked_sqrt<R: Real>(radicand: R, context: &'static str) -> Result<R> {
    let v = radicand.to_f64();
    if v.is_nan() || radicand <= R::zero() {
        return Err(Error::NegativeRadicand { value: v, context });
    }
    Ok(radicand.sqrt())
}

/// `c_n = ((aq; q)_n (bq; q)_inf q^n / ((aq/b, q; q)_n (b/a; q)_inf))^{1/2}`.
pub fn normalization_c_in<R: Real>(n: usize, a: &R, b: &R, q: &R, t: &Truncation) -> Result<R> {
    let num = q_pochhammer(&(a.clone() * q.clone()), q, n)
        * q_pochhammer_inf_multi(&[b.clone() * q.clone()], q, t)?
        * q.powi(n as i64);
    let den = q_pochhammer(&(a.clone() * q.clone() / b.clone()), q, n)
        * q_pochhammer(q, q, n)
        * q_pochhammer_inf_multi(&[b.clone() / a.clone()], q, t)?;
    checked_sqrt(num / den, "normalization c_n")
}

/// Infinite-product form
/// `c_n = ((q^{n+1}, aq^{n+1}/b, aq, bq; q)_inf q^n / (aq^{n+1}, q, b/a, aq/b; q)_inf)^{1/2}`.
pub fn normalization_c_product(n: usize, p: &QParams, t: &Truncation) -> Result<f64> {
    let (a, b, q) = (p.a, p.b, p.q);
    let qn1 = q.powi(n as i32 + 1);
    let num = q_pochhammer_inf_multi(&[qn1, a * qn1 / b, a * q, b * q], &q, t)? * q.powi(n as i32);
    let den = q_pochhammer_inf_multi(&[a * qn1, q, b / a, a * q / b], &q, t)?;
    checked_sqrt(num / den, "normalization c_n")
}

pub fn normalization_c(n: usize, p: &QParams, t: &Truncation) -> Result<f64> {
    normalization_c_in(n, &p.a, &p.b, &p.q, t)
}

/// `c'_n = ((-b/a) q^n (bq; q)_n (aq; q)_inf / ((q; q)_n (aq/b; q)_inf (b/a; q)_{n+1}))^{1/2}`.
pub fn normalization_cprime_in<R: Real>(
    n: usize,
    a: &R,
    b: &R,
    q: &R,
    t: &Truncation,
) -> Result<R> {
    let num = -(b.clone() / a.clone())
        * q.powi(n as i64)
        * q_pochhammer(&(b.clone() * q.clone()), q, n)
        * q_pochhammer_inf_multi(&[a.clone() * q.clone()], q, t)?;
    let den = q_pochhammer(q, q, n)
        * q_pochhammer_inf_multi(&[a.clone() * q.clone() / b.clone()], q, t)?
        * q_pochhammer(&(b.clone() / a.clone()), q, n + 1);
    checked_sqrt(num / den, "normalization c'_n")
}

/// Infinite-product form
/// `c'_n = ((-b/a) q^n (bq^{n+1}/a, q^{n+1}, aq, bq; q)_inf / (bq^{n+1}, q, b/a, aq/b; q)_inf)^{1/2}`.
pub fn normalization_cprime_product(n: usize, p: &QParams, t: &Truncation) -> Result<f64> {
    let (a, b, q) = (p.a, p.b, p.q);
    let qn1 = q.powi(n as i32 + 1);
    let num = -b / a
        * q.powi(n as i32)
        * q_pochhammer_inf_multi(&[b * qn1 / a, qn1, a * q, b * q], &q, t)?;
    let den = q_pochhammer_inf_multi(&[b * qn1, q, b / a, a * q / b], &q, t)?;
    checked_sqrt(num / den, "normalization c'_n")
}

pub fn normalization_cprime(n: usize, p: &QParams, t: &Truncation) -> Result<f64> {
    normalization_cprime_in(n, &p.a, &p.b, &p.q, t)
}

/// Normalization over the integer labels: `c_n` for `n >= 0`, `c'_{-n-1}` for `n < 0`.
pub fn normalization_signed(n: i64, p: &QParams, t: &Truncation) -> Result<f64> {
    if n >= 0 {
        normalization_c(n as usize, p, t)
    } else {
        normalization_cprime((-n - 1) as usize, p, t)
    }
}

/// Which eigenbasis of `A` the operator `q^{-J_0}` acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum XiBasis {
    /// `Xi_n`, eigenvalue `a q^{n+1}`.
    XiUpper,
    /// `Xi'_n`, eigenvalue `b q^{n+1}`.
    XiLower,
}

/// Unnormalized eigenfunctions or their orthonormal multiples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normalization {
    Plain,
    Orthonormal,
}

/// `q^{-J_0} X_n = sub X_{n-1} + diag X_n + sup X_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeTermAction {
    pub sub: f64,
    pub diag: f64,
    pub sup: f64,
}

pub fn qj0_inverse_action(
    basis: XiBasis,
    n: usize,
    p: &QParams,
    norm: Normalization,
) -> ThreeTermAction {
    let (a, b, q) = (p.a, p.b, p.q);
    let nf = n as f64;
    let qn = q.powi(n as i32);
    let qn1 = qn * q;
    let s = a * b + a + b;
    let q_2n = q.powf(-2.0 * nf);
    match basis {
        XiBasis::XiUpper => {
            let pre = a.powf(-1.5);
            let diag = -pre * q_2n * q.powf(-1.5) * (b * (1.0 + q) - qn1 * s);
            match norm {
                Normalization::Plain => ThreeTermAction {
                    sup: pre * b * q_2n * q.powf(-1.5) * (1.0 - a * qn1),
                    diag,
                    sub: pre * b * q_2n * q.powf(-0.5) * (1.0 - qn) * (1.0 - a * qn / b),
                },
                Normalization::Orthonormal => ThreeTermAction {
                    sup: pre * b * q_2n / (q * q)
                        * ((1.0 - a * qn1) * (1.0 - qn1) * (1.0 - a * qn1 / b)).sqrt(),
                    diag,
                    sub: pre * b * q_2n * ((1.0 - a * qn) * (1.0 - qn) * (1.0 - a * qn / b)).sqrt(),
                },
            }
        }
        XiBasis::XiLower => {
            let pre = a.sqrt() / b;
            let diag = -pre * q_2n * q.powf(-1.5) * (1.0 + q - qn1 * s / a);
            match norm {
                Normalization::Plain => ThreeTermAction {
                    sup: pre * q_2n * q.powf(-1.5) * (1.0 - b * qn1),
                    diag,
                    sub: pre * q_2n * q.powf(-0.5) * (1.0 - qn) * (1.0 - b * qn / a),
                },
                Normalization::Orthonormal => ThreeTermAction {
                    sup: pre * q_2n / (q * q)
                        * ((1.0 - b * qn1) * (1.0 - qn1) * (1.0 - b * qn1 / a)).sqrt(),
                    diag,
                    sub: pre * q_2n * ((1.0 - b * qn) * (1.0 - qn) * (1.0 - b * qn / a)).sqrt(),
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_a, build_a1_a2};
    use super::*;
    use crate::polynomials::SpectralPoint;

    fn p1() -> QParams {
        QParams::new(0.5, 0.5, -0.7).unwrap()
    }

    fn tr() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn a0_is_one() {
        for lam in [0.25, -0.35, 0.1, 0.0] {
            let c = eigen_coefficients(lam, &p1(), 5).unwrap();
            assert!((c.coeffs()[0] - 1.0).abs() < 1e-15);
            let (psi, phi) = psi_phi_coefficients(lam, &p1(), 3).unwrap();
            assert!((psi.coeffs()[0] - 1.0).abs() < 1e-15);
            assert!((phi.coeffs()[0] - 1.0).abs() < 1e-15);
        }
        assert!(eigen_coefficients(0.25, &p1(), 2).unwrap().normalizable);
        assert!(!eigen_coefficients(0.1, &p1(), 2).unwrap().normalizable);
    }

    /// `e_{m-1} a_{m-1} + d_m a_m + e_m a_{m+1} - lambda a_m` relative to the
    /// row scale, evaluated with the coefficients rescaled by `|a_m|`.
    fn row_residuals(lambda: f64, p: &QParams, m_max: usize) -> Vec<f64> {
        let c = eigen_coefficients(lambda, p, m_max).unwrap().log_coeffs;
        let a = build_a(p, m_max + 1).unwrap();
        (1..m_max)
            .map(|m| {
                if c[m].sign == 0.0 {
                    return 0.0;
                }
                let rel = |k: usize| {
                    (c[k]
                        / LogScaled {
                            sign: 1.0,
                            ln_abs: c[m].ln_abs,
                        })
                    .value()
                };
                let terms = [
                    a.lower()[m - 1] * rel(m - 1),
                    (a.diag()[m] - lambda) * rel(m),
                    a.upper()[m] * rel(m + 1),
                ];
                let scale = terms.iter().map(|x| x.abs()).fold(lambda.abs(), f64::max);
                terms.iter().sum::<f64>().abs() / scale
            })
            .collect()
    }

    #[test]
    fn eigenvector_residuals_on_extreme_points() {
        for p in [p1(), QParams::new(0.7, 0.9, -0.4).unwrap()] {
            let exact = super::super::spectrum_points(&p, 10).extreme(10);
            for lam in exact {
                let r = row_residuals(lam, &p, 80);
                let worst = r.iter().fold(0.0f64, |m, &x| m.max(x));
                assert!(worst <= 1e-10, "lambda {lam}: {worst:e}");
            }
        }
    }

    #[test]
    fn row_norm_normalization() {
        let p = p1();
        let t = tr();
        for n in 0..6 {
            let c = eigen_coefficients(p.a * p.q.powi(n + 1), &p, 150).unwrap();
            assert!(c.tail_fraction(120) < 1e-16);
            let s: f64 = c.coeffs().iter().map(|x| x * x).sum();
            let cn = normalization_c(n as usize, &p, &t).unwrap();
            assert!((cn * cn * s - 1.0).abs() < 1e-8, "n={n}: {}", cn * cn * s);
            let c = eigen_coefficients(p.b * p.q.powi(n + 1), &p, 150).unwrap();
            let s: f64 = c.coeffs().iter().map(|x| x * x).sum();
            let cp = normalization_cprime(n as usize, &p, &t).unwrap();
            assert!((cp * cp * s - 1.0).abs() < 1e-8, "n={n}: {}", cp * cp * s);
        }
    }

    #[test]
    fn normalization_forms_agree() {
        let t = tr();
        for p in [
            p1(),
            QParams::new(0.7, 0.9, -0.4).unwrap(),
            QParams::new(0.3, 2.0, -5.0).unwrap(),
        ] {
            for n in 0..15 {
                let (x, y) = (
                    normalization_c(n, &p, &t).unwrap(),
                    normalization_c_product(n, &p, &t).unwrap(),
                );
                assert!(x > 0.0 && (x - y).abs() <= 1e-12 * x, "c_{n}: {x} {y}");
                let (x, y) = (
                    normalization_cprime(n, &p, &t).unwrap(),
                    normalization_cprime_product(n, &p, &t).unwrap(),
                );
                assert!(x > 0.0 && (x - y).abs() <= 1e-12 * x, "c'_{n}: {x} {y}");
            }
        }
        let p = p1();
        assert_eq!(
            normalization_signed(-1, &p, &t).unwrap(),
            normalization_cprime(0, &p, &t).unwrap()
        );
        assert_eq!(
            normalization_signed(2, &p, &t).unwrap(),
            normalization_c(2, &p, &t).unwrap()
        );
    }

    #[test]
    fn monomial_constants() {
        for (l, q) in [(1.0, 0.5), (0.3, 0.9), (2.5, 0.2)] {
            assert_eq!(monomial_constant(0, l, q), 1.0);
            for n in 1..25 {
                let (x, y) = (
                    monomial_constant(n, l, q),
                    monomial_constant_product(n, l, q),
                );
                assert!((x - y).abs() < 1e-12 * x, "{l} {q} {n}");
            }
        }
    }

    #[test]
    fn monomial_consistency() {
        let p = p1();
        for lam in [0.25, -0.35, 0.0625, 0.1] {
            let ortho = eigen_coefficients(lam, &p, 40).unwrap();
            let mono = eigen_monomial_coefficients(lam, &p, 40).unwrap();
            for m in 0..=40 {
                let lhs = ortho.log_coeffs[m].mul_f64(monomial_constant(m, p.l, p.q));
                let rhs = mono.log_coeffs[m];
                if rhs.sign == 0.0 {
                    assert_eq!(lhs.sign, 0.0);
                    continue;
                }
                assert_eq!(lhs.sign, rhs.sign);
                assert!((lhs.ln_abs - rhs.ln_abs).abs() < 1e-11, "{lam} {m}");
            }
        }
    }

    #[test]
    fn large_index_stays_finite_in_log_form() {
        let c = eigen_coefficients(0.1, &p1(), 200).unwrap();
        assert!(c
            .log_coeffs
            .iter()
            .all(|x| x.ln_abs.is_finite() || x.sign == 0.0));
        assert!(c.log_coeffs[200].ln_abs > 709.0);
    }

    fn interior_residual(m: &super::super::Tridiagonal, v: &[f64], lambda: f64) -> f64 {
        let r = m.apply(v);
        (0..v.len() - 1)
            .map(|i| (r[i] - lambda * v[i]).abs() / (1.0 + v[i].abs()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn psi_phi_eigen_relations() {
        let p = p1();
        let lam = p.a * p.q;
        let dim = 60;
        let (a1, a2) = build_a1_a2(&p, dim).unwrap();
        let (psi, phi) = psi_phi_coefficients(lam, &p, dim - 1).unwrap();
        assert!(interior_residual(&a2, &psi.coeffs(), lam) <= 1e-9);
        assert!(interior_residual(&a1, &phi.coeffs(), lam) <= 1e-9);
        let t = tr();
        let c0 = normalization_c(0, &p, &t).unwrap();
        let dot: f64 = psi
            .coeffs()
            .iter()
            .zip(phi.coeffs())
            .map(|(x, y)| x * y)
            .sum();
        assert!((dot * c0 * c0 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn qj0_boundary_coefficients() {
        let p = p1();
        for basis in [XiBasis::XiUpper, XiBasis::XiLower] {
            for norm in [Normalization::Plain, Normalization::Orthonormal] {
                assert_eq!(qj0_inverse_action(basis, 0, &p, norm).sub, 0.0);
            }
        }
    }

    #[test]
    fn qj0_diagonal_action() {
        for p in [p1(), QParams::new(0.7, 0.9, -0.4).unwrap()] {
            let m_max = 30;
            for (basis, point) in [
                (
                    XiBasis::XiUpper,
                    SpectralPoint::upper as fn(usize) -> SpectralPoint,
                ),
                (XiBasis::XiLower, SpectralPoint::lower),
            ] {
                for n in 0..5usize {
                    let coeff = |k: usize| {
                        eigen_coefficients(point(k).value(&p), &p, m_max)
                            .unwrap()
                            .coeffs()
                    };
                    let act = qj0_inverse_action(basis, n, &p, Normalization::Plain);
                    let (cur, up) = (coeff(n), coeff(n + 1));
                    let down = if n > 0 {
                        coeff(n - 1)
                    } else {
                        vec![0.0; m_max + 1]
                    };
                    for m in 0..=m_max {
                        let lhs = p.q.powf(-p.l - m as f64) * cur[m];
                        let rhs = act.sub * down[m] + act.diag * cur[m] + act.sup * up[m];
                        let scale = lhs
                            .abs()
                            .max((act.sup * up[m]).abs())
                            .max((act.diag * cur[m]).abs());
                        assert!(
                            (lhs - rhs).abs() <= 1e-9 * scale.max(1e-300),
                            "{basis:?} n={n} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orthonormal_action_matches_normalization_ratios() {
        let p = p1();
        let t = tr();
        for n in 0..8usize {
            let plain = qj0_inverse_action(XiBasis::XiUpper, n, &p, Normalization::Plain);
            let ortho = qj0_inverse_action(XiBasis::XiUpper, n, &p, Normalization::Orthonormal);
            let c = |k: usize| normalization_c(k, &p, &t).unwrap();
            assert!((ortho.sup - plain.sup * c(n) / c(n + 1)).abs() < 1e-10 * ortho.sup.abs());
            if n > 0 {
                assert!((ortho.sub - plain.sub * c(n) / c(n - 1)).abs() < 1e-10 * ortho.sub.abs());
            }
            let plain = qj0_inverse_action(XiBasis::XiLower, n, &p, Normalization::Plain);
            let ortho = qj0_inverse_action(XiBasis::XiLower, n, &p, Normalization::Orthonormal);
            let c = |k: usize| normalization_cprime(k, &p, &t).unwrap();
            assert!((ortho.sup - plain.sup * c(n) / c(n + 1)).abs() < 1e-10 * ortho.sup.abs());
            if n > 0 {
                assert!((ortho.sub - plain.sub * c(n) / c(n - 1)).abs() < 1e-10 * ortho.sub.abs());
            }
        }
    }
}
