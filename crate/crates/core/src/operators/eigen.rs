//! Sturm-sequence bisection and inverse iteration for tridiagonal matrices.

use serde::Serialize;

use super::{build_a, spectrum_points, Tridiagonal};
use crate::error::{Error, Result};
use crate::qseries::QParams;

/// Symmetric off-diagonal with the same spectrum: `sign(l_i) sqrt(l_i u_i)`.
fn symmetrised_off(t: &Tridiagonal) -> Result<Vec<f64>> {
    if t.is_symmetric() {
        return Ok(t.lower().to_vec());
    }
    t.lower()
        .iter()
        .zip(t.upper())
        .enumerate()
        .map(|(i, (&l, &u))| {
            let prod = l * u;
            if prod > 0.0 {
                Ok(l.signum() * prod.sqrt())
            } else if l == 0.0 && u == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::Eigen(format!(
                    "off-diagonal pair {i} has l*u = {prod:e} <= 0; matrix is not symmetrisable"
                )))
            }
        })
        .collect()
}

/// Number of eigenvalues strictly below `x`.
fn sturm_count(diag: &[f64], off2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - x;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        d = diag[i] - x - off2[i - 1] / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues in ascending order.
///
/// Non-symmetric input is accepted when every `lower[i] * upper[i] > 0`.
pub fn eig_tridiagonal(t: &Tridiagonal) -> Result<Vec<f64>> {
    let off = symmetrised_off(t)?;
    let diag = t.diag();
    let n = diag.len();
    if n == 1 {
        return Ok(diag.to_vec());
    }
    let off2: Vec<f64> = off.iter().map(|e| e * e).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE * off2.iter().fold(1.0f64, |m, &x| m.max(x));
    lo -= 2.0 * f64::EPSILON * scale;
    hi += 2.0 * f64::EPSILON * scale;

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..4000 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || b - a <= f64::EPSILON * (a.abs() + b.abs()) {
                break;
            }
            if sturm_count(diag, &off2, mid, pivmin) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Unit eigenvector of the symmetrised matrix for an eigenvalue estimate
/// `lambda`, by inverse iteration with a pivoted LU factorisation.
pub fn eigenvector(t: &Tridiagonal, lambda: f64) -> Result<Vec<f64>> {
    let off = symmetrised_off(t)?;
    let n = t.dim();
    let diag: Vec<f64> = t.diag().iter().map(|d| d - lambda).collect();
    let tiny = f64::EPSILON * t.norm_inf().max(f64::MIN_POSITIVE);

    // LU of the shifted matrix with row interchanges; U has two superdiagonals.
    let mut d = diag;
    let mut du = off.clone();
    du.push(0.0);
    let mut du2 = vec![0.0; n];
    let mut dl = off.clone();
    let mut swap = vec![false; n];
    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            dl[i] = f;
            d[i + 1] -= f * du[i];
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = f;
            let tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - f * d[i + 1];
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] *= -f;
            }
            swap[i] = true;
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    for x in d.iter_mut() {
        if x.abs() < tiny {
            *x = tiny.copysign(*x);
        }
    }

    let solve = |rhs: &mut Vec<f64>| {
        for i in 0..n - 1 {
            if swap[i] {
                rhs.swap(i, i + 1);
            }
            rhs[i + 1] -= dl[i] * rhs[i];
        }
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= du[i] * rhs[i + 1];
            }
            if i + 2 < n {
                s -= du2[i] * rhs[i + 2];
            }
            rhs[i] = s / d[i];
        }
    };

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..4 {
        if n > 1 {
            solve(&mut v);
        } else {
            v[0] = 1.0;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Eigen(format!(
                "inverse iteration failed at lambda = {lambda:e}"
            )));
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(v)
}

/// Squared mass of a unit vector on its last `rows` entries.
pub fn tail_mass(v: &[f64], rows: usize) -> f64 {
    v[v.len().saturating_sub(rows)..]
        .iter()
        .map(|x| x * x)
        .sum()
}

/// Truncated eigenvalues of `A` against the exact spectral points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub dim: usize,
    /// Exact points, in decreasing order of modulus.
    pub exact: Vec<f64>,
    /// Matched eigenvalues of the truncated matrix.
    pub computed: Vec<f64>,
    pub abs_errors: Vec<f64>,
    /// Eigenvector mass on the last ten rows for each matched eigenvalue.
    pub tail_masses: Vec<f64>,
    pub max_abs_error: f64,
}

impl SpectrumComparison {
    /// True when every matched eigenvector is negligible on the last ten rows.
    pub fn resolved(&self, tail_tol: f64) -> bool {
        self.tail_masses.iter().all(|&m| m < tail_tol)
    }
}

/// Matches the `k` exact points of largest modulus with the extreme
/// eigenvalues of `build_a(p, dim)`: positive points against the largest
/// eigenvalues, negative points against the smallest.
pub fn compare_spectrum(p: &QParams, dim: usize, k: usize) -> Result<SpectrumComparison> {
    let a = build_a(p, dim)?;
    let eig = eig_tridiagonal(&a)?;
    let exact = spectrum_points(p, k).extreme(k);
    let (mut up, mut low) = (0usize, 0usize);
    let mut computed = Vec::with_capacity(k);
    for &x in &exact {
        let e = if x > 0.0 {
            up += 1;
            eig.len().checked_sub(up).map(|i| eig[i])
        } else {
            low += 1;
            eig.get(low - 1).copied()
        };
        computed
            .push(e.ok_or_else(|| Error::Eigen(format!("dim {dim} too small for {k} points")))?);
    }
    let abs_errors: Vec<f64> = exact
        .iter()
        .zip(&computed)
        .map(|(x, y)| (x - y).abs())
        .collect();
    let tail_masses = computed
        .iter()
        .map(|&l| eigenvector(&a, l).map(|v| tail_mass(&v, 10)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumComparison {
        dim,
        max_abs_error: abs_errors.iter().fold(0.0, |m: f64, &x| m.max(x)),
        exact,
        computed,
        abs_errors,
        tail_masses,
    })
}
