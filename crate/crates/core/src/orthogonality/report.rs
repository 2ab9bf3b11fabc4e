use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qseries::{QParams, Truncation};
use crate::real::Real;
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

/// Settings shared by every verifier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub truncation: Truncation,
    pub tolerance: f64,
    /// `Double` retries a non-passing check in extended precision;
    /// `Extended` evaluates there directly.
    pub precision: Precision,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            truncation: Truncation::default(),
            tolerance: 1e-8,
            precision: Precision::Double,
        }
    }
}

/// Outcome of one numerical check of an identity `lhs = rhs`.
///
/// `lhs`, `rhs`, `residual` and `tail_estimate` are divided by `scale`, the
/// natural norm of the relation (for orthogonality relations the geometric
/// mean of the two squared norms); the undivided sums are kept in `details`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    /// `None` for checks of classical (q = 1) objects.
    pub params: Option<QParams>,
    pub indices: (i64, i64),
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub tolerance: f64,
    pub scale: f64,
    pub status: Status,
    pub passed: bool,
    pub precision: Precision,
    pub details: BTreeMap<String, f64>,
    pub note: Option<String>,
}

impl VerificationReport {
    /// Sort key used to order report collections.
    pub fn key(&self) -> (&str, i64, i64) {
        (&self.identity_id, self.indices.0, self.indices.1)
    }
}

/// Raw result of an identity evaluation before classification.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Evaluation {
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
    /// Extra discrepancy folded into the residual (already divided by `scale`).
    pub extra_residual: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub details: BTreeMap<String, f64>,
    pub note: Option<String>,
}

impl Evaluation {
    pub fn new(lhs: f64, rhs: f64, scale: f64, sums: &[&SeriesTotal]) -> Self {
        Evaluation {
            lhs,
            rhs,
            scale,
            extra_residual: 0.0,
            terms_used: sums.iter().map(|s| s.terms_used).sum(),
            tail_estimate: sums.iter().map(|s| s.tail_estimate).sum(),
            details: BTreeMap::new(),
            note: None,
        }
    }

    pub fn detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }
}

pub(crate) fn classify(
    id: &str,
    indices: (i64, i64),
    p: &QParams,
    opts: &VerifyOptions,
    precision: Precision,
    e: Evaluation,
) -> VerificationReport {
    classify_with(id, indices, Some(*p), opts.tolerance, precision, e)
}

pub(crate) fn classify_with(
    id: &str,
    indices: (i64, i64),
    params: Option<QParams>,
    tolerance: f64,
    precision: Precision,
    e: Evaluation,
) -> VerificationReport {
    let lhs = e.lhs / e.scale;
    let rhs = e.rhs / e.scale;
    let residual = ((lhs - rhs).abs()).max(e.extra_residual);
    let tail = e.tail_estimate / e.scale;
    let bound = tolerance * (1.0 + lhs.abs().max(rhs.abs()));
    let status = if tail.is_nan() || bound.is_nan() || tail >= bound {
        Status::Inconclusive
    } else if residual <= bound {
        Status::Passed
    } else {
        Status::Failed
    };
    let mut details = e.details;
    details.insert("raw_lhs".into(), e.lhs);
    details.insert("raw_rhs".into(), e.rhs);
    VerificationReport {
        identity_id: id.to_string(),
        params,
        indices,
        lhs,
        rhs,
        residual,
        terms_used: e.terms_used,
        tail_estimate: tail,
        tolerance,
        scale: e.scale,
        status,
        passed: status == Status::Passed,
        precision,
        details,
        note: e.note,
    }
}

/// Sum of an infinite series with an empirical bound on its tail.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedSum<R> {
    pub value: R,
    pub terms_used: usize,
    /// `|t_last| r / (1 - r)` with `r` the largest ratio `|t_k / t_{k-1}|` over
    /// the final run of small terms; infinite when `r >= 1` or the term budget
    /// ran out.
    pub tail_estimate: f64,
    pub certified: bool,
}

/// Projection of a [`CertifiedSum`] to doubles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SeriesTotal {
    pub value: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
}

impl<R: Real> CertifiedSum<R> {
    pub(crate) fn total(&self) -> SeriesTotal {
        SeriesTotal {
            value: self.value.to_f64(),
            terms_used: self.terms_used,
            tail_estimate: self.tail_estimate,
        }
    }
}

/// Sums `term(0) + term(1) + ...` until `small_run` consecutive terms satisfy
/// `|t_k| <= rel_tol |S_k| + abs_tol`.
pub fn certified_sum<R: Real>(
    t: &Truncation,
    mut term: impl FnMut(usize) -> Result<R>,
) -> Result<CertifiedSum<R>> {
    let mut sum = CompensatedSum::new();
    let mut mags: Vec<f64> = Vec::new();
    let mut run = 0;
    for k in 0..t.max_terms {
        let x = term(k)?;
        let mag = x.abs().to_f64();
        sum.add(x);
        mags.push(mag);
        if mag <= t.rel_tol * sum.value().abs().to_f64() + t.abs_tol {
            run += 1;
        } else {
            run = 0;
        }
        if run >= t.small_run && k >= 1 {
            let start = mags.len() - t.small_run.min(mags.len() - 1);
            let ratio = mags[start..]
                .iter()
                .zip(&mags[start - 1..])
                .map(|(&cur, &prev)| match (cur == 0.0, prev == 0.0) {
                    (true, _) => 0.0,
                    (false, true) => f64::INFINITY,
                    (false, false) => cur / prev,
                })
                .fold(0.0, f64::max);
            let (tail, certified) = if ratio < 1.0 {
                (mag * ratio / (1.0 - ratio), true)
            } else {
                (f64::INFINITY, false)
            };
            return Ok(CertifiedSum {
                value: sum.value(),
                terms_used: k + 1,
                tail_estimate: tail,
                certified,
            });
        }
    }
    Ok(CertifiedSum {
        value: sum.value(),
        terms_used: t.max_terms,
        tail_estimate: f64::INFINITY,
        certified: false,
    })
}
