//! q-Pochhammer symbols, q-numbers and basic hypergeometric series.
//!
//! Conventions:
//!
//! * `(a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})`, with `(a;q)_0 = 1`.
//! * `(a;q)_inf` is truncated once every further factor equals one to working
//!   precision.
//! * `r phi s (a_1..a_r; b_1..b_s; q, z)` carries the usual
//!   `((-1)^k q^{k(k-1)/2})^{1+s-r}` balancing factor.
//! * A numerator parameter within relative distance `1e-10` of `q^{-n}` makes the
//!   series terminate after the `q^n` term.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Extended, Real};
use crate::sum::CompensatedSum;

/// Relative tolerance used to recognise `q^{-n}` parameters.
pub const TERMINATION_TOL: f64 = 1e-10;

/// Representation parameters `(q, a, b)` with `a = q^{2l-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QParams {
    pub q: f64,
    pub a: f64,
    pub b: f64,
    /// Lowest weight, `l = (1 + log_q a) / 2`.
    pub l: f64,
}

impl QParams {
    /// Validates `0 < q < 1`, `0 < a < 1/q` and `b < 0`.
    pub fn new(q: f64, a: f64, b: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidQ(q));
        }
        if !(a > 0.0 && a * q < 1.0) {
            return Err(Error::InvalidA { a, q });
        }
        if !(b < 0.0 && b.is_finite()) {
            return Err(Error::InvalidB(b));
        }
        let l = 0.5 * (1.0 + a.ln() / q.ln());
        Ok(QParams { q, a, b, l })
    }

    /// Parameters from the lowest weight: `a = q^{2l-1}`.
    pub fn from_weight(q: f64, l: f64, b: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidL(l));
        }
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidQ(q));
        }
        let mut p = QParams::new(q, q.powf(2.0 * l - 1.0), b)?;
        p.l = l;
        Ok(p)
    }

    /// `alpha = (-b)^{1/2} q^l (1-q)`.
    pub fn alpha(&self) -> f64 {
        (-self.b).sqrt() * self.q.powf(self.l) * (1.0 - self.q)
    }

    /// `beta_1 = b(1+q)`.
    pub fn beta1(&self) -> f64 {
        self.b * (1.0 + self.q)
    }

    /// `beta_2 = bq + q^{2l}(b+1)`.
    pub fn beta2(&self) -> f64 {
        self.b * self.q + self.q.powf(2.0 * self.l) * (self.b + 1.0)
    }
}

/// Stopping policy for infinite sums and products.
///
/// A sum stops once `small_run` consecutive terms satisfy
/// `|t_k| <= rel_tol * scale + abs_tol`, where `scale` is the larger of the
/// running sum and the biggest term seen so far.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub small_run: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            rel_tol: 1e-12,
            abs_tol: 0.0,
            max_terms: 10_000,
            small_run: 10,
        }
    }
}

impl Truncation {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize, small_run: usize) -> Result<Self> {
        let t = Truncation {
            rel_tol,
            abs_tol,
            max_terms,
            small_run,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidTruncation(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidTruncation(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.small_run == 0 || self.max_terms < self.small_run {
            return Err(Error::InvalidTruncation(format!(
                "need 1 <= small_run <= max_terms, got small_run = {}, max_terms = {}",
                self.small_run, self.max_terms
            )));
        }
        Ok(())
    }

    /// Threshold below which a product factor `1 - a q^k` is treated as one.
    pub fn product_threshold<R: Real>(&self) -> f64 {
        R::epsilon().max(self.rel_tol * f64::EPSILON)
    }

    fn is_small(&self, term: f64, scale: f64) -> bool {
        term <= self.rel_tol * scale + self.abs_tol
    }
}

/// Finite q-Pochhammer symbol `(a;q)_n`.
pub fn q_pochhammer<R: Real>(a: &R, q: &R, n: usize) -> R {
    let mut prod = R::one();
    let mut aq = a.clone();
    for _ in 0..n {
        prod = prod * (R::one() - aq.clone());
        aq = aq * q.clone();
    }
    prod
}

/// Product of several finite symbols `(a_1, ..., a_r; q)_n`.
pub fn q_pochhammer_multi<R: Real>(args: &[R], q: &R, n: usize) -> R {
    args.iter()
        .fold(R::one(), |acc, a| acc * q_pochhammer(a, q, n))
}

/// Infinite q-Pochhammer symbol `(a;q)_inf` for `0 < q < 1`.
pub fn q_pochhammer_inf<R: Real>(a: &R, q: &R, t: &Truncation) -> Result<R> {
    let qf = q.to_f64();
    if !(qf > 0.0 && qf < 1.0) {
        return Err(Error::InvalidQ(qf));
    }
    if let Some(j) = terminating_degree(a.to_f64(), qf) {
        if j < t.max_terms {
            return Ok(R::zero());
        }
    }
    let threshold = t.product_threshold::<R>();
    let mut prod = R::one();
    let mut aq = a.clone();
    let mut run = 0;
    for _ in 0..t.max_terms {
        prod = prod * (R::one() - aq.clone());
        if prod.is_zero() {
            return Ok(prod);
        }
        if aq.abs().to_f64() < threshold {
            run += 1;
            if run >= t.small_run {
                return Ok(prod);
            }
        } else {
            run = 0;
        }
        aq = aq * q.clone();
    }
    Err(Error::NonConvergence {
        max_terms: t.max_terms,
    })
}

/// Product of several infinite symbols `(a_1, ..., a_r; q)_inf`.
pub fn q_pochhammer_inf_multi<R: Real>(args: &[R], q: &R, t: &Truncation) -> Result<R> {
    let mut prod = R::one();
    for a in args {
        prod = prod * q_pochhammer_inf(a, q, t)?;
    }
    Ok(prod)
}

/// Symmetric q-number `[a]_q = (q^{a/2} - q^{-a/2}) / (q^{1/2} - q^{-1/2})`.
pub fn q_number(a: f64, q: f64) -> f64 {
    let h = 0.5 * q.ln();
    (a * h).sinh() / h.sinh()
}

/// Gaussian binomial coefficient `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial<R: Real>(n: usize, k: usize, q: &R) -> R {
    if k > n {
        return R::zero();
    }
    let k = k.min(n - k);
    let mut num = R::one();
    let mut den = R::one();
    let mut qn = q.powi((n - k + 1) as i64);
    let mut qj = q.clone();
    for _ in 0..k {
        num = num * (R::one() - qn.clone());
        den = den * (R::one() - qj.clone());
        qn = qn * q.clone();
        qj = qj * q.clone();
    }
    num / den
}

/// Returns `n` when `a` equals `q^{-n}` to relative accuracy [`TERMINATION_TOL`].
pub fn terminating_degree(a: f64, q: f64) -> Option<usize> {
    if a.is_nan() || a <= 0.0 {
        return None;
    }
    let n = (-a.ln() / q.ln()).round();
    if !(0.0..=1e7).contains(&n) {
        return None;
    }
    let n = n as usize;
    let rel = (a * q.powi(n as i32) - 1.0).abs();
    (rel <= TERMINATION_TOL).then_some(n)
}

/// Value of a summed series together with its truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue<R> {
    pub value: R,
    pub terms_used: usize,
    /// Largest term magnitude encountered.
    pub largest_term: f64,
    /// Bound on the neglected tail; zero for terminating series.
    pub tail_estimate: f64,
    pub terminated: bool,
}

/// Generic `r phi s` series.
pub fn basic_hypergeometric<R: Real>(
    numer: &[R],
    denom: &[R],
    q: &R,
    z: &R,
    t: &Truncation,
) -> Result<SeriesValue<R>> {
    let qf = q.to_f64();
    if !(qf > 0.0 && qf < 1.0) {
        return Err(Error::InvalidQ(qf));
    }
    let degree = numer
        .iter()
        .filter_map(|a| terminating_degree(a.to_f64(), qf))
        .min();
    for b in denom {
        if let Some(j) = terminating_degree(b.to_f64(), qf) {
            if degree.is_none_or(|n| j < n) {
                return Err(Error::DenominatorZero { index: j + 1 });
            }
        }
    }
    let balance = 1 + denom.len() as i64 - numer.len() as i64;
    if degree.is_none() && balance == 0 && z.abs().to_f64() >= 1.0 {
        return Err(Error::Divergent {
            z: z.abs().to_f64(),
        });
    }
    if balance < 0 && degree.is_none() {
        return Err(Error::Domain(
            "non-terminating series with more than s+1 numerator parameters".into(),
        ));
    }

    let mut sum = CompensatedSum::new();
    let mut term = R::one();
    let mut qk = R::one();
    let mut run = 0;
    let limit = degree.map_or(t.max_terms, |n| n + 1);
    if degree.is_none() && limit == 0 {
        return Err(Error::NonConvergence { max_terms: 0 });
    }
    for k in 0..limit {
        sum.add(term.clone());
        if degree.is_none() {
            let scale = sum.value().abs().to_f64().max(sum.largest_term());
            if t.is_small(term.abs().to_f64(), scale) {
                run += 1;
                if run >= t.small_run {
                    return Ok(SeriesValue {
                        value: sum.value(),
                        terms_used: k + 1,
                        largest_term: sum.largest_term(),
                        tail_estimate: term.abs().to_f64(),
                        terminated: false,
                    });
                }
            } else {
                run = 0;
            }
        }
        let mut ratio = z.clone() / (R::one() - qk.clone() * q.clone());
        for a in numer {
            ratio = ratio * (R::one() - a.clone() * qk.clone());
        }
        for b in denom {
            ratio = ratio / (R::one() - b.clone() * qk.clone());
        }
        if balance != 0 {
            let f = -qk.clone();
            ratio = ratio * f.powi(balance);
        }
        term = term * ratio;
        qk = qk * q.clone();
        if !term.is_finite() {
            return Err(Error::Overflow("basic hypergeometric series"));
        }
    }
    match degree {
        Some(n) => Ok(SeriesValue {
            value: sum.value(),
            terms_used: n + 1,
            largest_term: sum.largest_term(),
            tail_estimate: 0.0,
            terminated: true,
        }),
        None => Err(Error::NonConvergence {
            max_terms: t.max_terms,
        }),
    }
}

/// `2 phi 1 (a, b; c; q, z)`.
pub fn phi_2_1<R: Real>(a: &R, b: &R, c: &R, q: &R, z: &R, t: &Truncation) -> Result<R> {
    basic_hypergeometric(&[a.clone(), b.clone()], std::slice::from_ref(c), q, z, t).map(|s| s.value)
}

/// `3 phi 2 (a_1, a_2, a_3; b_1, b_2; q, z)`.
pub fn phi_3_2<R: Real>(a: &[R; 3], b: &[R; 2], q: &R, z: &R, t: &Truncation) -> Result<R> {
    basic_hypergeometric(a, b, q, z, t).map(|s| s.value)
}

/// Jackson's exponential `E_q(z) = sum_k q^{k(k-1)/2} z^k / (q;q)_k`.
///
/// For negative `z` the series alternates and its terms can exceed the result
/// by many orders of magnitude. When the rounding error carried by the largest
/// term would exceed `rel_tol` of the result, the series is re-summed in
/// [`Extended`] precision.
pub fn jackson_e_q<R: Real>(z: &R, q: &R, t: &Truncation) -> Result<R> {
    let s = basic_hypergeometric(&[], &[], q, &(-z.clone()), t)?;
    if R::epsilon() >= Extended::epsilon() * 2.0
        && s.largest_term * R::epsilon() * 64.0 > t.rel_tol * (1.0 + s.value.abs().to_f64())
    {
        let ze = Extended::from_f64(z.to_f64());
        let qe = Extended::from_f64(q.to_f64());
        let se = basic_hypergeometric(&[], &[], &qe, &(-ze), t)?;
        return Ok(R::from_f64(se.value.to_f64()));
    }
    Ok(s.value)
}

/// Product form `E_q(z) = (-z;q)_inf`.
pub fn jackson_e_q_product<R: Real>(z: &R, q: &R, t: &Truncation) -> Result<R> {
    q_pochhammer_inf(&(-z.clone()), q, t)
}
