//! Numerical verification of the orthogonality, unitarity, duality and
//! biorthogonality relations.
//!
//! Every verifier evaluates an identity `lhs = rhs` by certified summation
//! (see [`certified_sum`]) and classifies it into a [`VerificationReport`].
//! With [`Precision::Double`] a check that does not pass is recomputed in
//! 512-bit arithmetic before it is reported.
//!
//! Spectral points are labelled by integers: `n >= 0` is `a q^{n+1}` with
//! normalization `c_n`, and `n < 0` is `b q^{-n}` with `c'_{-n-1}`.

mod report;

pub use report::{
    certified_sum, CertifiedSum, Precision, Status, VerificationReport, VerifyOptions,
};

use report::classify;
pub(crate) use report::{classify_with, Evaluation};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{normalization_c_in, normalization_cprime_in};
use crate::polynomials::{q_meixner, spectral_laguerre, SpectralPoint};
use crate::qseries::{
    jackson_e_q, phi_2_1, q_pochhammer, q_pochhammer_inf_multi, QParams, Truncation,
};
use crate::real::{Extended, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RowsOrColumns {
    /// `sum_{n in Z} u_{mn} u_{m'n}`.
    Rows,
    /// `sum_{m >= 0} u_{mn} u_{mn'}`.
    Columns,
}

/// Pairing of dual functions: `f_n(q^-m) = P_m(a q^{n+1})`, `g_n(q^-m) = P_m(b q^{n+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DualPair {
    FF,
    GG,
    FG,
}

/// Weighted sequence spaces on the points `q^{-m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightedSpace {
    /// Weight `(aq, bq; q)_m / ((q; q)_m (-abq^2)^m) q^{-m(m-1)/2}` of the dual functions.
    Dual,
    /// Weight `(aq; q)_m (-b/a)^m q^{m(m-1)/2} / (bq, q; q)_m` of `M_n(q^-m; a, -b/a)`.
    Meixner,
    /// Weight `(bq; q)_m (-a/b)^m q^{m(m-1)/2} / (aq, q; q)_m` of `M_n(q^-m; b, -a/b)`.
    MeixnerNegative,
}

impl WeightedSpace {
    pub fn weight<R: Real>(&self, m: usize, a: &R, b: &R, q: &R) -> R {
        let k = m as i64;
        let aq = q_pochhammer(&(a.clone() * q.clone()), q, m);
        let bq = q_pochhammer(&(b.clone() * q.clone()), q, m);
        let qq = q_pochhammer(q, q, m);
        let tri = q.powi(k * (k - 1) / 2);
        match self {
            WeightedSpace::Dual => {
                aq * bq / (qq * (-(a.clone() * b.clone()) * q.clone() * q.clone()).powi(k) * tri)
            }
            WeightedSpace::Meixner => aq * (-(b.clone() / a.clone())).powi(k) * tri / (bq * qq),
            WeightedSpace::MeixnerNegative => {
                bq * (-(a.clone() / b.clone())).powi(k) * tri / (aq * qq)
            }
        }
    }

    /// Truncated scalar product `sum_m w_m F_1(q^-m) F_2(q^-m)`.
    pub fn scalar_product(
        &self,
        p: &QParams,
        t: &Truncation,
        f1: impl Fn(usize) -> Result<f64>,
        f2: impl Fn(usize) -> Result<f64>,
    ) -> Result<CertifiedSum<f64>> {
        certified_sum(t, |m| {
            let w = positive_weight(self.weight(m, &p.a, &p.b, &p.q), m as i64, "scalar product")?;
            Ok(w * f1(m)? * f2(m)?)
        })
    }
}

fn positive_weight<R: Real>(w: R, index: i64, context: &'static str) -> Result<R> {
    if w > R::zero() {
        Ok(w)
    } else {
        Err(Error::NonPositiveWeight {
            index,
            value: w.to_f64(),
            context,
        })
    }
}

fn params<R: Real>(p: &QParams) -> (R, R, R) {
    (R::from_f64(p.a), R::from_f64(p.b), R::from_f64(p.q))
}

fn kronecker(i: i64, j: i64) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// `c_n` over the integer labels.
fn norm_signed<R: Real>(n: i64, a: &R, b: &R, q: &R, t: &Truncation) -> Result<R> {
    if n >= 0 {
        normalization_c_in(n as usize, a, b, q, t)
    } else {
        normalization_cprime_in((-n - 1) as usize, a, b, q, t)
    }
}

/// `a_m(lambda)` at a spectral point.
fn eigen_coefficient<R: Real>(m: usize, point: SpectralPoint, a: &R, b: &R, q: &R) -> R {
    let k = m as i64;
    let poch = q_pochhammer(&(a.clone() * q.clone()), q, m)
        * q_pochhammer(&(b.clone() * q.clone()), q, m)
        / q_pochhammer(q, q, m);
    (-(a.clone() * b.clone())).powi(-k).sqrt()
        * q.powi(-(k * (k + 3) / 2)).sqrt()
        * poch.sqrt()
        * spectral_laguerre(m, point, a, b, q)
}

fn checked<R: Real>(x: R, what: &'static str) -> Result<R> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow(what))
    }
}

/// Runs `eval` at the requested precision, retrying a non-passing double
/// precision result in extended precision.
fn run<F>(
    id: &str,
    indices: (i64, i64),
    p: &QParams,
    opts: &VerifyOptions,
    eval: F,
) -> Result<VerificationReport>
where
    F: Fn(Precision) -> Result<Evaluation>,
{
    opts.truncation.validate()?;
    if opts.precision == Precision::Extended {
        return Ok(classify(
            id,
            indices,
            p,
            opts,
            Precision::Extended,
            eval(Precision::Extended)?,
        ));
    }
    let first = classify(
        id,
        indices,
        p,
        opts,
        Precision::Double,
        eval(Precision::Double)?,
    );
    if first.passed {
        return Ok(first);
    }
    let mut retry = classify(
        id,
        indices,
        p,
        opts,
        Precision::Extended,
        eval(Precision::Extended)?,
    );
    let prior = format!(
        "double precision gave residual {:e} with tail {:e}; recomputed in extended precision",
        first.residual, first.tail_estimate
    );
    retry.note = Some(match retry.note.take() {
        Some(n) => format!("{n}; {prior}"),
        None => prior,
    });
    Ok(retry)
}

macro_rules! at_precision {
    ($prec:expr, $f:ident ( $($arg:expr),* )) => {
        match $prec {
            Precision::Double => $f::<f64>($($arg),*),
            Precision::Extended => $f::<Extended>($($arg),*),
        }
    };
}

/// The two weighted sums over `a q^{n+1}` and `b q^{n+1}` of `P_m P_m'`.
fn branch_sums<R: Real>(
    m: usize,
    m2: usize,
    p: &QParams,
    t: &Truncation,
) -> Result<(CertifiedSum<R>, CertifiedSum<R>)> {
    let (a, b, q) = params::<R>(p);
    let one = R::one();
    let branch = |x: &R, y: &R, lower: bool| -> Result<CertifiedSum<R>> {
        // weight (q^{n+1}, x q^{n+1}/y; q)_inf / (x q^{n+1}; q)_inf q^n, built up from n = 0
        let mut w = q_pochhammer_inf_multi(&[q.clone(), x.clone() * q.clone() / y.clone()], &q, t)?
            / q_pochhammer_inf_multi(&[x.clone() * q.clone()], &q, t)?;
        if lower {
            w = -(b.clone() / a.clone()) * w;
        }
        certified_sum(t, |n| {
            if n > 0 {
                let qn = q.powi(n as i64);
                w = w.clone() * (one.clone() - x.clone() * qn.clone()) * q.clone()
                    / ((one.clone() - qn.clone()) * (one.clone() - x.clone() * qn / y.clone()));
            }
            let wn = positive_weight(w.clone(), n as i64, "big q-Laguerre weight")?;
            let point = if lower {
                SpectralPoint::lower(n)
            } else {
                SpectralPoint::upper(n)
            };
            let pm = spectral_laguerre(m, point, &a, &b, &q);
            let pm2 = if m2 == m {
                pm.clone()
            } else {
                spectral_laguerre(m2, point, &a, &b, &q)
            };
            checked(wn * pm * pm2, "big q-Laguerre orthogonality term")
        })
    };
    Ok((branch(&a, &b, false)?, branch(&b, &a, true)?))
}

/// `(q, b/a, aq/b; q)_inf / (aq, bq; q)_inf`.
fn total_mass<R: Real>(a: &R, b: &R, q: &R, t: &Truncation) -> Result<R> {
    Ok(q_pochhammer_inf_multi(
        &[
            q.clone(),
            b.clone() / a.clone(),
            a.clone() * q.clone() / b.clone(),
        ],
        q,
        t,
    )? / q_pochhammer_inf_multi(&[a.clone() * q.clone(), b.clone() * q.clone()], q, t)?)
}

/// Squared norm `h_m` of `P_m`.
fn laguerre_norm<R: Real>(m: usize, a: &R, b: &R, q: &R, t: &Truncation) -> Result<R> {
    let k = m as i64;
    Ok(total_mass(a, b, q, t)? * q_pochhammer(q, q, m)
        / (q_pochhammer(&(a.clone() * q.clone()), q, m)
            * q_pochhammer(&(b.clone() * q.clone()), q, m))
        * (-(a.clone() * b.clone())).powi(k)
        * q.powi(k * (k + 3) / 2))
}

fn eval_big_laguerre<R: Real>(
    m: usize,
    m2: usize,
    p: &QParams,
    t: &Truncation,
) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (up, low) = branch_sums::<R>(m, m2, p, t)?;
    let lhs = (up.value.clone() + low.value.clone()).to_f64();
    let h = laguerre_norm(m, &a, &b, &q, t)?.to_f64();
    let h2 = laguerre_norm(m2, &a, &b, &q, t)?.to_f64();
    let rhs = if m == m2 { h } else { 0.0 };
    Ok(
        Evaluation::new(lhs, rhs, (h * h2).sqrt(), &[&up.total(), &low.total()])
            .detail("upper_sum", up.value.to_f64())
            .detail("lower_sum", low.value.to_f64()),
    )
}

/// Orthogonality of `P_m` and `P_m'` over the two geometric sequences,
/// reported relative to `sqrt(h_m h_m')`.
pub fn verify_big_laguerre_orthogonality(
    m: usize,
    m2: usize,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("big-laguerre", (m as i64, m2 as i64), p, opts, |prec| {
        at_precision!(prec, eval_big_laguerre(m, m2, p, &t))
    })
}

fn eval_sears<R: Real>(p: &QParams, t: &Truncation) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (up, low) = branch_sums::<R>(0, 0, p, t)?;
    let lhs = (up.value.clone() + low.value.clone()).to_f64();
    let rhs = total_mass(&a, &b, &q, t)?.to_f64();
    let zero = R::zero();
    let phi_up = q_pochhammer_inf_multi(&[a.clone() * q.clone() / b.clone(), q.clone()], &q, t)?
        / q_pochhammer_inf_multi(&[a.clone() * q.clone()], &q, t)?
        * phi_2_1(
            &(a.clone() * q.clone()),
            &zero,
            &(a.clone() * q.clone() / b.clone()),
            &q,
            &q,
            t,
        )?;
    let phi_low = q_pochhammer_inf_multi(&[b.clone() * q.clone() / a.clone(), q.clone()], &q, t)?
        / q_pochhammer_inf_multi(&[b.clone() * q.clone()], &q, t)?
        * phi_2_1(
            &(b.clone() * q.clone()),
            &zero,
            &(b.clone() * q.clone() / a.clone()),
            &q,
            &q,
            t,
        )?;
    let phi_form = (phi_up - (b.clone() / a.clone()) * phi_low).to_f64();
    let mut e = Evaluation::new(lhs, rhs, 1.0, &[&up.total(), &low.total()])
        .detail("upper_sum", up.value.to_f64())
        .detail("lower_sum", low.value.to_f64())
        .detail("phi_form", phi_form)
        .detail("phi_form_residual", (phi_form - lhs).abs());
    e.extra_residual = (phi_form - lhs).abs();
    Ok(e)
}

/// The lowest orthogonality relation as a sum identity, cross-checked
/// against its `2phi1` form.
pub fn verify_sears_identity(p: &QParams, opts: &VerifyOptions) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("sears", (0, 0), p, opts, |prec| {
        at_precision!(prec, eval_sears(p, &t))
    })
}

fn eval_unitarity<R: Real>(
    rc: RowsOrColumns,
    i: i64,
    j: i64,
    p: &QParams,
    t: &Truncation,
) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    match rc {
        RowsOrColumns::Rows => {
            if i < 0 || j < 0 {
                return Err(Error::Domain("row indices must be non-negative".into()));
            }
            let (m, m2) = (i as usize, j as usize);
            let branch = |lower: bool| {
                certified_sum(t, |n| {
                    let (point, c) = if lower {
                        (
                            SpectralPoint::lower(n),
                            normalization_cprime_in(n, &a, &b, &q, t)?,
                        )
                    } else {
                        (
                            SpectralPoint::upper(n),
                            normalization_c_in(n, &a, &b, &q, t)?,
                        )
                    };
                    let u = c.clone() * eigen_coefficient(m, point, &a, &b, &q);
                    let u2 = c * eigen_coefficient(m2, point, &a, &b, &q);
                    checked(u * u2, "unitarity term")
                })
            };
            let (up, low) = (branch(false)?, branch(true)?);
            let lhs = (up.value.clone() + low.value.clone()).to_f64();
            Ok(Evaluation::new(
                lhs,
                kronecker(i, j),
                1.0,
                &[&up.total(), &low.total()],
            ))
        }
        RowsOrColumns::Columns => {
            let (pi, pj) = (SpectralPoint::from_signed(i), SpectralPoint::from_signed(j));
            let ci = norm_signed(i, &a, &b, &q, t)?;
            let cj = norm_signed(j, &a, &b, &q, t)?;
            let s = certified_sum(t, |m| {
                let u = ci.clone() * eigen_coefficient(m, pi, &a, &b, &q);
                let u2 = cj.clone() * eigen_coefficient(m, pj, &a, &b, &q);
                checked(u * u2, "unitarity term")
            })?;
            Ok(Evaluation::new(
                s.value.to_f64(),
                kronecker(i, j),
                1.0,
                &[&s.total()],
            ))
        }
    }
}

/// Orthonormality of the rows or columns of `u_{mn} = c_n a_m(lambda_n)`.
pub fn verify_unitarity(
    rc: RowsOrColumns,
    i: i64,
    j: i64,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    let id = match rc {
        RowsOrColumns::Rows => "unitarity-rows",
        RowsOrColumns::Columns => "unitarity-columns",
    };
    run(id, (i, j), p, opts, |prec| {
        at_precision!(prec, eval_unitarity(rc, i, j, p, &t))
    })
}

fn eval_dual<R: Real>(
    which: DualPair,
    n: usize,
    n2: usize,
    p: &QParams,
    t: &Truncation,
) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (pt1, pt2) = match which {
        DualPair::FF => (SpectralPoint::upper(n), SpectralPoint::upper(n2)),
        DualPair::GG => (SpectralPoint::lower(n), SpectralPoint::lower(n2)),
        DualPair::FG => (SpectralPoint::upper(n), SpectralPoint::lower(n2)),
    };
    let s = certified_sum(t, |m| {
        let w = positive_weight(
            WeightedSpace::Dual.weight(m, &a, &b, &q),
            m as i64,
            "dual weight",
        )?;
        let x = spectral_laguerre(m, pt1, &a, &b, &q);
        let y = spectral_laguerre(m, pt2, &a, &b, &q);
        checked(w * x * y, "dual orthogonality term")
    })?;
    let c1 = norm_signed(pt1.signed(), &a, &b, &q, t)?.to_f64();
    let c2 = norm_signed(pt2.signed(), &a, &b, &q, t)?.to_f64();
    let rhs = if which != DualPair::FG && n == n2 {
        1.0 / (c1 * c1)
    } else {
        0.0
    };
    Ok(Evaluation::new(
        s.value.to_f64(),
        rhs,
        1.0 / (c1 * c2),
        &[&s.total()],
    ))
}

/// Orthogonality of the dual functions `f_n`, `g_n` in the weighted space
/// [`WeightedSpace::Dual`], reported relative to `1 / (c c')`.
pub fn verify_dual_orthogonality(
    which: DualPair,
    n: usize,
    n2: usize,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    let id = match which {
        DualPair::FF => "dual-ff",
        DualPair::GG => "dual-gg",
        DualPair::FG => "dual-fg",
    };
    run(id, (n as i64, n2 as i64), p, opts, |prec| {
        at_precision!(prec, eval_dual(which, n, n2, p, &t))
    })
}

/// Weighted sum `sum_m w_m M_n(q^-m; x, -y/x) M_n'(q^-m; x, -y/x)` with
/// `w_m = (xq; q)_m (-y/x)^m q^{m(m-1)/2} / (yq, q; q)_m`, together with the
/// squared norms `(y/x; q)_inf / (yq; q)_inf (xq/y, q; q)_n / (xq; q)_n q^-n`.
pub fn meixner_orthogonality_sum<R: Real>(
    n: usize,
    n2: usize,
    x: &R,
    y: &R,
    q: &R,
    t: &Truncation,
) -> Result<(CertifiedSum<R>, R, R)> {
    let c = -(y.clone() / x.clone());
    let s = certified_sum(t, |m| {
        let w = positive_weight(
            WeightedSpace::Meixner.weight(m, x, y, q),
            m as i64,
            "q-Meixner weight",
        )?;
        let mx = q_meixner(n, m, x, &c, q)?;
        let mx2 = if n2 == n {
            mx.clone()
        } else {
            q_meixner(n2, m, x, &c, q)?
        };
        checked(w * mx * mx2, "q-Meixner orthogonality term")
    })?;
    let base = q_pochhammer_inf_multi(&[y.clone() / x.clone()], q, t)?
        / q_pochhammer_inf_multi(&[y.clone() * q.clone()], q, t)?;
    let norm = |k: usize| {
        base.clone()
            * q_pochhammer(&(x.clone() * q.clone() / y.clone()), q, k)
            * q_pochhammer(q, q, k)
            / q_pochhammer(&(x.clone() * q.clone()), q, k)
            * q.powi(-(k as i64))
    };
    Ok((s, norm(n), norm(n2)))
}

fn eval_meixner<R: Real>(
    n: usize,
    n2: usize,
    negative: bool,
    p: &QParams,
    t: &Truncation,
) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (s, h, h2) = if negative {
        meixner_orthogonality_sum(n, n2, &b, &a, &q, t)?
    } else {
        meixner_orthogonality_sum(n, n2, &a, &b, &q, t)?
    };
    let (h, h2) = (h.to_f64(), h2.to_f64());
    for (k, v) in [(n, h), (n2, h2)] {
        positive_weight(v, k as i64, "q-Meixner norm")?;
    }
    let rhs = if n == n2 { h } else { 0.0 };
    Ok(Evaluation::new(
        s.value.to_f64(),
        rhs,
        (h * h2).sqrt(),
        &[&s.total()],
    ))
}

/// Orthogonality of `M_n(q^-m; a, -b/a; q)`.
pub fn verify_meixner_orthogonality(
    n: usize,
    n2: usize,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("meixner", (n as i64, n2 as i64), p, opts, |prec| {
        at_precision!(prec, eval_meixner(n, n2, false, p, &t))
    })
}

/// Orthogonality of `M_n(q^-m; b, -a/b; q)`, whose first parameter is negative.
pub fn verify_negative_b_meixner_orthogonality(
    n: usize,
    n2: usize,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("meixner-negb", (n as i64, n2 as i64), p, opts, |prec| {
        at_precision!(prec, eval_meixner(n, n2, true, p, &t))
    })
}

const EQ_ZERO_NOTE: &str =
    "expanding M_n(q^-m; a, -b/a) M_n'(q^-m; b, -a/b) in powers of q^-m turns \
the sum into a combination of E_q(-q^-j) = (q^-j; q)_inf = 0, j = 0..n+n'";

fn eval_eq_zero<R: Real>(n: usize, n2: usize, p: &QParams, t: &Truncation) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (ca, cb) = (-(b.clone() / a.clone()), -(a.clone() / b.clone()));
    let s = certified_sum(t, |m| {
        let k = m as i64;
        let sign = if m % 2 == 0 { R::one() } else { -R::one() };
        let w = sign * q.powi(k * (k - 1) / 2) / q_pochhammer(&q, &q, m);
        let x = q_meixner(n, m, &a, &ca, &q)?;
        let y = q_meixner(n2, m, &b, &cb, &q)?;
        checked(w * x * y, "E_q identity term")
    })?;
    let scale = 1.0
        / (normalization_c_in(n, &a, &b, &q, t)? * normalization_cprime_in(n2, &a, &b, &q, t)?)
            .to_f64();
    let mut worst = 0.0f64;
    for j in 0..=(n + n2) {
        let z = -q.powi(-(j as i64));
        worst = worst.max(jackson_e_q(&z, &q, t)?.abs().to_f64());
    }
    let mut e = Evaluation::new(s.value.to_f64(), 0.0, scale, &[&s.total()])
        .detail("max_abs_e_q_at_zeros", worst);
    e.note = Some(EQ_ZERO_NOTE.to_string());
    Ok(e)
}

/// `sum_m (-1)^m q^{m(m-1)/2} / (q; q)_m M_n(q^-m; a, -b/a) M_n'(q^-m; b, -a/b) = 0`,
/// reported relative to `1 / (c_n c'_n')`.
pub fn verify_eq_zero_identity(
    n: usize,
    n2: usize,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("eq-zero", (n as i64, n2 as i64), p, opts, |prec| {
        at_precision!(prec, eval_eq_zero(n, n2, p, &t))
    })
}

fn eval_biorthogonality<R: Real>(
    m: i64,
    n: i64,
    p: &QParams,
    t: &Truncation,
) -> Result<Evaluation> {
    let (a, b, q) = params::<R>(p);
    let (pm, pn) = (SpectralPoint::from_signed(m), SpectralPoint::from_signed(n));
    let cm = norm_signed(m, &a, &b, &q, t)?;
    let cn = norm_signed(n, &a, &b, &q, t)?;
    let s = certified_sum(t, |k| {
        let kk = k as i64;
        let ratio = q_pochhammer(&(a.clone() * q.clone()), &q, k) / q_pochhammer(&q, &q, k);
        let mab = (-(a.clone() * b.clone())).powi(-kk).sqrt();
        let psi = mab.clone() * q.powi(-kk) * ratio.sqrt() * spectral_laguerre(k, pm, &a, &b, &q);
        let phi = mab
            * q.powi(-kk * (kk + 1) / 2)
            * ratio.sqrt()
            * q_pochhammer(&(b.clone() * q.clone()), &q, k)
            * spectral_laguerre(k, pn, &a, &b, &q);
        checked(cm.clone() * psi * cn.clone() * phi, "biorthogonality term")
    })?;
    Ok(Evaluation::new(
        s.value.to_f64(),
        kronecker(m, n),
        1.0,
        &[&s.total()],
    ))
}

/// `<Psi_m, Phi_n> = delta_{mn}` for the normalized eigenvectors of `A_2` and `A_1`.
pub fn verify_biorthogonality(
    m: i64,
    n: i64,
    p: &QParams,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let t = opts.truncation;
    run("biortho", (m, n), p, opts, |prec| {
        at_precision!(prec, eval_biorthogonality(m, n, p, &t))
    })
}

/// Identity families addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Identity {
    BigLaguerre,
    Sears,
    Unitarity,
    Dual,
    Meixner,
    MeixnerNegB,
    EqZero,
    Biortho,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::BigLaguerre,
        Identity::Sears,
        Identity::Unitarity,
        Identity::Dual,
        Identity::Meixner,
        Identity::MeixnerNegB,
        Identity::EqZero,
        Identity::Biortho,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::BigLaguerre => "big-laguerre",
            Identity::Sears => "sears",
            Identity::Unitarity => "unitarity",
            Identity::Dual => "dual",
            Identity::Meixner => "meixner",
            Identity::MeixnerNegB => "meixner-negb",
            Identity::EqZero => "eq-zero",
            Identity::Biortho => "biortho",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL.iter().copied().find(|i| i.name() == s)
    }
}

/// One check of an identity family at a pair of indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    BigLaguerre(usize, usize),
    Sears,
    Unitarity(RowsOrColumns, i64, i64),
    Dual(DualPair, usize, usize),
    Meixner(usize, usize),
    MeixnerNegB(usize, usize),
    EqZero(usize, usize),
    Biortho(i64, i64),
}

impl Check {
    pub fn run(&self, p: &QParams, opts: &VerifyOptions) -> Result<VerificationReport> {
        match *self {
            Check::BigLaguerre(m, m2) => verify_big_laguerre_orthogonality(m, m2, p, opts),
            Check::Sears => verify_sears_identity(p, opts),
            Check::Unitarity(rc, i, j) => verify_unitarity(rc, i, j, p, opts),
            Check::Dual(which, n, n2) => verify_dual_orthogonality(which, n, n2, p, opts),
            Check::Meixner(n, n2) => verify_meixner_orthogonality(n, n2, p, opts),
            Check::MeixnerNegB(n, n2) => verify_negative_b_meixner_orthogonality(n, n2, p, opts),
            Check::EqZero(n, n2) => verify_eq_zero_identity(n, n2, p, opts),
            Check::Biortho(m, n) => verify_biorthogonality(m, n, p, opts),
        }
    }
}

/// Checks of one family over indices `0..=index_max` (and `-index_max-1..=index_max`
/// for the integer-labelled families). Symmetric relations are checked for `i <= j` only.
pub fn index_grid(identity: Identity, index_max: usize) -> Vec<Check> {
    let nonneg: Vec<(usize, usize)> = (0..=index_max)
        .flat_map(|i| (i..=index_max).map(move |j| (i, j)))
        .collect();
    let k = index_max as i64;
    let signed: Vec<(i64, i64)> = (-k - 1..=k)
        .flat_map(|i| (i..=k).map(move |j| (i, j)))
        .collect();
    match identity {
        Identity::BigLaguerre => nonneg
            .iter()
            .map(|&(i, j)| Check::BigLaguerre(i, j))
            .collect(),
        Identity::Sears => vec![Check::Sears],
        Identity::Unitarity => nonneg
            .iter()
            .map(|&(i, j)| Check::Unitarity(RowsOrColumns::Rows, i as i64, j as i64))
            .chain(
                signed
                    .iter()
                    .map(|&(i, j)| Check::Unitarity(RowsOrColumns::Columns, i, j)),
            )
            .collect(),
        Identity::Dual => nonneg
            .iter()
            .flat_map(|&(i, j)| {
                [
                    Check::Dual(DualPair::FF, i, j),
                    Check::Dual(DualPair::GG, i, j),
                ]
            })
            .chain(
                (0..=index_max)
                    .flat_map(|i| (0..=index_max).map(move |j| Check::Dual(DualPair::FG, i, j))),
            )
            .collect(),
        Identity::Meixner => nonneg.iter().map(|&(i, j)| Check::Meixner(i, j)).collect(),
        Identity::MeixnerNegB => nonneg
            .iter()
            .map(|&(i, j)| Check::MeixnerNegB(i, j))
            .collect(),
        Identity::EqZero => (0..=index_max)
            .flat_map(|i| (0..=index_max).map(move |j| Check::EqZero(i, j)))
            .collect(),
        Identity::Biortho => (-k - 1..=k)
            .flat_map(|i| (-k - 1..=k).map(move |j| Check::Biortho(i, j)))
            .collect(),
    }
}

#[cfg(test)]
mod tests;
