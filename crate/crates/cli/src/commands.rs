use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use qortho_core::climit::{
    classical_eigenfunction, classical_eigenfunction_series, classical_operator_check,
    limit_eigen_coefficients_check, limit_operator_entries_check, limit_polynomial_check,
    LimitCheck, LimitSweep,
};
use qortho_core::operators::{
    build_a, compare_spectrum, eig_tridiagonal, normalization_c, normalization_c_product,
    normalization_cprime, normalization_cprime_product, spectrum_points,
};
use qortho_core::orthogonality::{index_grid, Check, Precision, Status, VerificationReport};
use qortho_core::polynomials::{
    big_q_laguerre, big_q_laguerre_generating, big_q_laguerre_recurrence, dual_f,
    dual_f_via_meixner, dual_g, dual_g_via_meixner, SpectralPoint,
};
use qortho_core::{QParams, Result, Truncation};

use crate::{CommandName, Document, RunConfig};

/// Agreement required between the evaluation routes of the table.
pub const TABLE_TOLERANCE: f64 = 1e-10;
/// Extreme spectral points compared by `spectrum`.
pub const SPECTRUM_POINTS: usize = 10;
/// Largest polynomial degree and coefficient index of the limit sweeps.
pub const LIMIT_DEGREE_MAX: usize = 6;
/// Rows of `A` compared with the classical operator.
pub const LIMIT_OPERATOR_ROWS: usize = 5;
/// Step of the finite-difference check in `limit`.
pub const FD_STEP: f64 = 1e-3;
/// Terms of the classical eigenfunction series in `limit`.
pub const SERIES_TERMS: usize = 200;

/// One value of the `table` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub n: usize,
    pub m_or_x: Option<f64>,
    pub value: f64,
    pub method: String,
}

struct Section {
    records: Vec<VerificationReport>,
    data: Value,
    table: Option<Vec<TableRow>>,
}

/// Runs the configured command on a pool of `config.jobs` threads.
pub fn execute(config: &RunConfig) -> Result<Document> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool
        .build()
        .map_err(|e| qortho_core::Error::Domain(format!("cannot start worker threads: {e}")))?;
    let (mut records, data, table) = pool.install(|| -> Result<_> {
        Ok(match config.command {
            CommandName::Verify => {
                let s = verify(config)?;
                (s.records, s.data, None)
            }
            CommandName::Spectrum => {
                let s = spectrum(config)?;
                (s.records, s.data, None)
            }
            CommandName::Table => {
                let s = table(config)?;
                (s.records, s.data, s.table)
            }
            CommandName::Limit => {
                let s = limit(config)?;
                (s.records, s.data, None)
            }
            CommandName::ReportAll => {
                let parts = [
                    verify(config)?,
                    spectrum(config)?,
                    limit(config)?,
                    table(config)?,
                ];
                let names = ["verify", "spectrum", "limit", "table"];
                let mut records = Vec::new();
                let mut data = serde_json::Map::new();
                for (name, s) in names.into_iter().zip(parts) {
                    records.extend(s.records);
                    data.insert(name.to_string(), s.data);
                }
                (records, Value::Object(data), None)
            }
        })
    })?;
    records.sort_by(|x, y| x.key().cmp(&y.key()));
    let generated_at = config.timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(Document {
        config: config.clone(),
        records,
        data,
        table,
        generated_at,
    })
}

fn verify(config: &RunConfig) -> Result<Section> {
    let p = config.params;
    let opts = config.verify_options();
    let checks: Vec<Check> = config
        .identity
        .identities()
        .into_iter()
        .flat_map(|id| index_grid(id, config.index_max))
        .collect();
    let records = checks
        .par_iter()
        .map(|c| c.run(&p, &opts))
        .collect::<Result<Vec<_>>>()?;
    let retried = records
        .iter()
        .filter(|r| r.precision == Precision::Extended)
        .count();
    Ok(Section {
        data: json!({ "checks": records.len(), "extended_precision": retried }),
        records,
        table: None,
    })
}

/// A report for a direct comparison, passed when
/// `residual <= tolerance (1 + max(|lhs|, |rhs|))`.
#[allow(clippy::too_many_arguments)]
fn comparison(
    id: &str,
    indices: (i64, i64),
    p: Option<QParams>,
    lhs: f64,
    rhs: f64,
    residual: f64,
    tolerance: f64,
    details: BTreeMap<String, f64>,
) -> VerificationReport {
    let bound = tolerance * (1.0 + lhs.abs().max(rhs.abs()));
    let status = if residual <= bound {
        Status::Passed
    } else {
        Status::Failed
    };
    VerificationReport {
        identity_id: id.to_string(),
        params: p,
        indices,
        lhs,
        rhs,
        residual,
        terms_used: 0,
        tail_estimate: 0.0,
        tolerance,
        scale: 1.0,
        status,
        passed: status == Status::Passed,
        precision: Precision::Double,
        details,
        note: None,
    }
}

fn spectrum(config: &RunConfig) -> Result<Section> {
    let p = config.params;
    let k = SPECTRUM_POINTS.min(config.dim);
    let points = spectrum_points(&p, k);
    let label = |x: f64| -> i64 {
        match points.upper.iter().position(|&u| u == x) {
            Some(i) => i as i64,
            None => -(points.lower.iter().position(|&v| v == x).unwrap_or(0) as i64) - 1,
        }
    };
    let dims = [config.dim, 2 * config.dim];
    let comparisons = dims
        .par_iter()
        .map(|&d| compare_spectrum(&p, d, k))
        .collect::<Result<Vec<_>>>()?;
    let eigenvalues = dims
        .par_iter()
        .map(|&d| eig_tridiagonal(&build_a(&p, d)?))
        .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::new();
    for c in &comparisons {
        for i in 0..c.exact.len() {
            let (exact, got) = (c.exact[i], c.computed[i]);
            let mut r = comparison(
                "spectrum",
                (label(exact), c.dim as i64),
                Some(p),
                got,
                exact,
                c.abs_errors[i],
                config.tolerance,
                BTreeMap::from([
                    ("dim".to_string(), c.dim as f64),
                    ("tail_mass".to_string(), c.tail_masses[i]),
                ]),
            );
            r.tail_estimate = c.tail_masses[i];
            if c.tail_masses[i].is_nan() || c.tail_masses[i] >= config.tolerance {
                r.status = Status::Inconclusive;
                r.passed = false;
                r.note = Some("eigenvector not resolved within the truncation".into());
            }
            records.push(r);
        }
    }
    let non_increasing = comparisons[0]
        .abs_errors
        .iter()
        .zip(&comparisons[1].abs_errors)
        .all(|(e1, e2)| *e2 <= *e1 + 32.0 * f64::EPSILON * (1.0 + e1.abs().max(p.b.abs())));
    let data = json!({
        "upper": points.upper,
        "lower": points.lower,
        "dims": dims,
        "eigenvalues": eigenvalues,
        "comparisons": comparisons,
        "error_non_increasing": non_increasing,
    });
    Ok(Section {
        records,
        data,
        table: None,
    })
}

fn table(config: &RunConfig) -> Result<Section> {
    let p = config.params;
    let nmax = config.index_max;
    let t = Truncation::default();
    let tol = TABLE_TOLERANCE;
    let row = |family: &str, n: usize, arg: Option<f64>, value: f64, method: &str| TableRow {
        family: family.into(),
        n,
        m_or_x: arg,
        value,
        method: method.into(),
    };
    let mut rows = Vec::new();
    let mut records = Vec::new();

    let signed: Vec<i64> = (-(nmax as i64) - 1..=nmax as i64).collect();
    let per_point = signed
        .par_iter()
        .map(|&s| {
            let x = SpectralPoint::from_signed(s).value(&p);
            let rec = big_q_laguerre_recurrence(nmax, x, &p);
            (0..=nmax)
                .map(|n| {
                    let v = [
                        big_q_laguerre(n, x, &p),
                        rec[n],
                        big_q_laguerre_generating(n, &x, &p.a, &p.b, &p.q),
                    ];
                    (s, x, n, v)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let mut laguerre: Vec<_> = per_point.into_iter().flatten().collect();
    laguerre.sort_by_key(|a| (a.2, a.0));
    for (s, x, n, v) in laguerre {
        for (value, method) in v.iter().zip(["series", "recurrence", "generating"]) {
            rows.push(row("big-q-laguerre", n, Some(x), *value, method));
        }
        let spread = (v[0] - v[1])
            .abs()
            .max((v[0] - v[2]).abs())
            .max((v[1] - v[2]).abs());
        let details = BTreeMap::from([("x".to_string(), x), ("generating".to_string(), v[2])]);
        records.push(comparison(
            "table-big-q-laguerre",
            (n as i64, s),
            Some(p),
            v[0],
            v[1],
            spread,
            tol,
            details,
        ));
    }

    for (family, direct, via) in [
        (
            "dual-f",
            dual_f as fn(usize, usize, &QParams) -> f64,
            dual_f_via_meixner::<f64> as fn(usize, usize, &f64, &f64, &f64) -> Result<f64>,
        ),
        ("dual-g", dual_g, dual_g_via_meixner::<f64>),
    ] {
        for n in 0..=nmax {
            for m in 0..=nmax {
                let d = direct(n, m, &p);
                let v = via(n, m, &p.a, &p.b, &p.q)?;
                rows.push(row(family, n, Some(m as f64), d, "polynomial"));
                rows.push(row(family, n, Some(m as f64), v, "meixner"));
                let id = format!("table-{family}");
                records.push(comparison(
                    &id,
                    (n as i64, m as i64),
                    Some(p),
                    d,
                    v,
                    (d - v).abs(),
                    tol,
                    BTreeMap::new(),
                ));
            }
        }
    }

    let mut c_values = Vec::new();
    for (family, finite, product) in [
        (
            "c",
            normalization_c as fn(usize, &QParams, &Truncation) -> Result<f64>,
            normalization_c_product as fn(usize, &QParams, &Truncation) -> Result<f64>,
        ),
        (
            "c-prime",
            normalization_cprime,
            normalization_cprime_product,
        ),
    ] {
        for n in 0..=nmax {
            let (f, g) = (finite(n, &p, &t)?, product(n, &p, &t)?);
            if family == "c" {
                c_values.push(f);
            }
            rows.push(row(family, n, None, f, "finite"));
            rows.push(row(family, n, None, g, "product"));
            let id = format!("table-{family}");
            records.push(comparison(
                &id,
                (n as i64, 0),
                Some(p),
                f,
                g,
                (f - g).abs(),
                tol,
                BTreeMap::new(),
            ));
        }
    }
    let c_decreasing =
        c_values.iter().all(|&c| c > 0.0) && c_values.windows(2).all(|w| w[1] < w[0]);
    let data = json!({ "tolerance": tol, "rows": rows, "c_positive_decreasing": c_decreasing });
    Ok(Section {
        records,
        data,
        table: Some(rows),
    })
}

#[derive(Serialize)]
struct FitRow<'a> {
    id: &'a str,
    n: usize,
    rate: f64,
    constant: f64,
    points_used: usize,
    non_monotone: &'a [f64],
    status: Status,
}

fn limit(config: &RunConfig) -> Result<Section> {
    let lc = &config.limit;
    let sweep = LimitSweep::dyadic(lc.alpha, lc.beta, lc.lambda, lc.x, lc.k_max)?;
    let t = Truncation::default();
    let nmax = config.index_max.min(LIMIT_DEGREE_MAX);
    let mut checks: Vec<(usize, LimitCheck)> = (0..=nmax)
        .into_par_iter()
        .map(|n| limit_polynomial_check(n, lc.x, &sweep, &t).map(|c| (n, c)))
        .collect::<Result<Vec<_>>>()?;
    let rows = config.index_max.min(LIMIT_OPERATOR_ROWS);
    checks.push((rows, limit_operator_entries_check(rows, &sweep)?));
    checks.push((nmax, limit_eigen_coefficients_check(nmax, &sweep)?));

    let fits: Vec<FitRow> = checks
        .iter()
        .map(|(n, c)| FitRow {
            id: &c.id,
            n: *n,
            rate: c.fit.rate,
            constant: c.fit.constant,
            points_used: c.fit.points_used,
            non_monotone: &c.non_monotone,
            status: c.status,
        })
        .collect();
    let fits = serde_json::to_value(fits).map_err(|e| qortho_core::Error::Domain(e.to_string()))?;
    let mut records: Vec<VerificationReport> =
        checks.iter().flat_map(|(_, c)| c.reports.clone()).collect();

    let l = sweep.l();
    if lc.x.abs() < 1.0 - 2.0 * FD_STEP {
        records.push(classical_operator_check(lc.lambda, lc.x, l, FD_STEP)?);
    }
    if lc.x.abs() <= 0.5 {
        let closed = classical_eigenfunction(lc.lambda, lc.x, l)?;
        let series = classical_eigenfunction_series(lc.lambda, lc.x, l, SERIES_TERMS)?;
        let details = BTreeMap::from([
            ("x".to_string(), lc.x),
            ("lambda".to_string(), lc.lambda),
            ("l".to_string(), l),
            ("terms".to_string(), SERIES_TERMS as f64),
        ]);
        records.push(comparison(
            "classical-eigenfunction-series",
            (0, 0),
            None,
            closed,
            series,
            (closed - series).abs(),
            TABLE_TOLERANCE,
            details,
        ));
    }
    let data = json!({ "q": sweep.q_sequence, "sweep": sweep, "fits": fits });
    Ok(Section {
        records,
        data,
        table: None,
    })
}
