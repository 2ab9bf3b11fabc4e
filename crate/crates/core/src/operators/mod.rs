//! Matrix realisations of the representation operators in the orthonormal
//! monomial basis `f^l_n = c^l_n x^n`.
//!
//! Column `n` of every matrix holds the image of `f^l_n`: entry `(n+1, n)` is
//! the coefficient of `f^l_{n+1}` and entry `(n-1, n)` that of `f^l_{n-1}`.
//! Truncating to `dim` rows drops the coupling of row `dim - 1` to `f^l_dim`,
//! so the last row of any truncated matrix is not exact.

mod coefficients;
mod eigen;

pub use coefficients::{
    eigen_coefficients, eigen_monomial_coefficients, monomial_constant, monomial_constant_product,
    normalization_c, normalization_c_in, normalization_c_product, normalization_cprime,
    normalization_cprime_in, normalization_cprime_product, normalization_signed,
    psi_phi_coefficients, qj0_inverse_action, CoefficientVector, Normalization, ThreeTermAction,
    XiBasis,
};
pub use eigen::{compare_spectrum, eig_tridiagonal, eigenvector, tail_mass, SpectrumComparison};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomials::recurrence_diagonal;
use crate::qseries::QParams;

/// Off-diagonal storage of a [`Tridiagonal`].
#[derive(Debug, Clone, PartialEq)]
enum OffDiagonal {
    Symmetric(Vec<f64>),
    General { lower: Vec<f64>, upper: Vec<f64> },
}

/// Tridiagonal matrix; `lower[i] = T[i+1][i]`, `upper[i] = T[i][i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    off: OffDiagonal,
}

impl Tridiagonal {
    pub fn symmetric(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        Self::check(&diag, &off, &off)?;
        Ok(Tridiagonal {
            diag,
            off: OffDiagonal::Symmetric(off),
        })
    }

    pub fn general(diag: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Self::check(&diag, &lower, &upper)?;
        Ok(Tridiagonal {
            diag,
            off: OffDiagonal::General { lower, upper },
        })
    }

    fn check(diag: &[f64], lower: &[f64], upper: &[f64]) -> Result<()> {
        if diag.is_empty() {
            return Err(Error::Domain("a tridiagonal matrix needs dim >= 1".into()));
        }
        if lower.len() + 1 != diag.len() || upper.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "off-diagonals of a {}x{} matrix need length {}",
                diag.len(),
                diag.len(),
                diag.len() - 1
            )));
        }
        if diag
            .iter()
            .chain(lower)
            .chain(upper)
            .any(|x| !x.is_finite())
        {
            return Err(Error::Overflow("tridiagonal matrix entries"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn lower(&self) -> &[f64] {
        match &self.off {
            OffDiagonal::Symmetric(e) => e,
            OffDiagonal::General { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> &[f64] {
        match &self.off {
            OffDiagonal::Symmetric(e) => e,
            OffDiagonal::General { upper, .. } => upper,
        }
    }

    /// True for the shared-storage symmetric variant.
    pub fn is_symmetric(&self) -> bool {
        matches!(self.off, OffDiagonal::Symmetric(_))
    }

    pub fn transpose(&self) -> Tridiagonal {
        match &self.off {
            OffDiagonal::Symmetric(_) => self.clone(),
            OffDiagonal::General { lower, upper } => Tridiagonal {
                diag: self.diag.clone(),
                off: OffDiagonal::General {
                    lower: upper.clone(),
                    upper: lower.clone(),
                },
            },
        }
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.lower()[j]
        } else if j == i + 1 {
            self.upper()[i]
        } else {
            0.0
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            v.len(),
            self.dim(),
            "vector length must equal the dimension"
        );
        let (lo, up) = (self.lower(), self.upper());
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += lo[i - 1] * v[i - 1];
                }
                if i + 1 < self.dim() {
                    s += up[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Infinity norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.lower()[i - 1].abs();
                }
                if i + 1 < self.dim() {
                    s += self.upper()[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }
}

/// Generators `J_+`, `J_-`, `J_0` truncated to `dim` basis vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorMatrices {
    /// `J_+ f_n = jplus[n] f_{n+1}`.
    pub jplus: Vec<f64>,
    /// `J_- f_{n+1} = jminus[n] f_n`.
    pub jminus: Vec<f64>,
    /// `J_0 f_n = (l + n) f_n`.
    pub j0: Vec<f64>,
    /// `q^{J_0} f_n = q^{l+n} f_n`.
    pub q_j0: Vec<f64>,
}

/// `J_+` coefficient: `q^{-(n+l-1/2)/2} / (1-q) sqrt((1-q^{n+1})(1-q^{2l+n}))`.
pub fn j_plus_coefficient(n: usize, l: f64, q: f64) -> f64 {
    let nf = n as f64;
    q.powf(-(nf + l - 0.5) / 2.0) / (1.0 - q)
        * ((1.0 - q.powi(n as i32 + 1)) * (1.0 - q.powf(2.0 * l + nf))).sqrt()
}

/// `J_-` coefficient of `f_{n-1}` in `J_- f_n`; equal to the `J_+` coefficient
/// from `f_{n-1}`, and zero for `n = 0`.
pub fn j_minus_coefficient(n: usize, l: f64, q: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        j_plus_coefficient(n - 1, l, q)
    }
}

pub fn build_generator_matrices(p: &QParams, dim: usize) -> Result<GeneratorMatrices> {
    if dim < 2 {
        return Err(Error::Domain("generator matrices need dim >= 2".into()));
    }
    let (l, q) = (p.l, p.q);
    Ok(GeneratorMatrices {
        jplus: (0..dim - 1).map(|n| j_plus_coefficient(n, l, q)).collect(),
        jminus: (0..dim - 1)
            .map(|n| j_minus_coefficient(n + 1, l, q))
            .collect(),
        j0: (0..dim).map(|n| l + n as f64).collect(),
        q_j0: (0..dim).map(|n| q.powf(l + n as f64)).collect(),
    })
}

/// Off-diagonal entry of `A`:
/// `(-ab)^{1/2} q^{(n+2)/2} sqrt((1-q^{n+1})(1-aq^{n+1})(1-bq^{n+1}))`.
pub fn a_offdiagonal(n: usize, p: &QParams) -> f64 {
    let qn1 = p.q.powi(n as i32 + 1);
    (-p.a * p.b).sqrt()
        * p.q.powf((n as f64 + 2.0) / 2.0)
        * ((1.0 - qn1) * (1.0 - p.a * qn1) * (1.0 - p.b * qn1)).sqrt()
}

/// The symmetric Jacobi matrix of `A` with the closed-form entries.
pub fn build_a(p: &QParams, dim: usize) -> Result<Tridiagonal> {
    let diag = (0..dim)
        .map(|n| recurrence_diagonal(n, &p.a, &p.b, &p.q))
        .collect();
    let off = (0..dim.saturating_sub(1))
        .map(|n| a_offdiagonal(n, p))
        .collect();
    Tridiagonal::symmetric(diag, off)
}

/// Diagonal part `-beta_1 q^{2J_0} + beta_2 q^{J_0 - l}` shared by `A`, `A_1`, `A_2`.
fn diagonal_part(p: &QParams, g: &GeneratorMatrices) -> Vec<f64> {
    let (b1, b2) = (p.beta1(), p.beta2());
    g.q_j0
        .iter()
        .enumerate()
        .map(|(n, qj)| -b1 * qj * qj + b2 * p.q.powi(n as i32))
        .collect()
}

/// `A` composed from the generators:
/// `alpha q^{J_0/4} (S J_+ q^{(J_0-l)/2} + q^{(J_0-l)/2} J_- S) q^{J_0/4} + diagonal part`,
/// with `S = diag sqrt(1 - b q^n)`.
pub fn compose_a(p: &QParams, dim: usize) -> Result<Tridiagonal> {
    let g = build_generator_matrices(p, dim)?;
    let alpha = p.alpha();
    let q4: Vec<f64> = g.q_j0.iter().map(|x| x.powf(0.25)).collect();
    let s: Vec<f64> = (0..dim)
        .map(|n| (1.0 - p.b * p.q.powi(n as i32)).sqrt())
        .collect();
    let h: Vec<f64> = (0..dim).map(|n| p.q.powf(n as f64 / 2.0)).collect();
    let lower = (0..dim - 1)
        .map(|n| alpha * q4[n + 1] * s[n + 1] * g.jplus[n] * h[n] * q4[n])
        .collect();
    let upper = (0..dim - 1)
        .map(|n| alpha * q4[n] * h[n] * g.jminus[n] * s[n + 1] * q4[n + 1])
        .collect();
    Tridiagonal::general(diagonal_part(p, &g), lower, upper)
}

/// The non-selfadjoint pair
///
/// ```text
/// A_1 = alpha q^{J_0/4} [(1 - b q^{J_0-l}) J_+ + q^{J_0-l} J_-] q^{J_0/4} + diagonal part,
/// A_2 = alpha q^{J_0/4} [J_+ q^{J_0-l} + J_- (1 - b q^{J_0-l})] q^{J_0/4} + diagonal part.
/// ```
///
/// Each coupling between `f_n` and `f_{n+1}` is `alpha q^{(l+n)/4} q^{(l+n+1)/4} J w`
/// with a weight `w` of `q^n` or `1 - bq^{n+1}`; both matrices use one routine
/// for it, so `A_2` is the exact transpose of `A_1`.
pub fn build_a1_a2(p: &QParams, dim: usize) -> Result<(Tridiagonal, Tridiagonal)> {
    let g = build_generator_matrices(p, dim)?;
    let alpha = p.alpha();
    let q4: Vec<f64> = g.q_j0.iter().map(|x| x.powf(0.25)).collect();
    let coupling = |n: usize, j: f64, w: f64| alpha * q4[n] * q4[n + 1] * j * w;
    let raised: Vec<f64> = (0..dim - 1)
        .map(|n| coupling(n, g.jplus[n], 1.0 - p.b * p.q.powi(n as i32 + 1)))
        .collect();
    let plain: Vec<f64> = (0..dim - 1)
        .map(|n| coupling(n, g.jminus[n], p.q.powi(n as i32)))
        .collect();
    let diag = diagonal_part(p, &g);
    let a1 = Tridiagonal::general(diag.clone(), raised.clone(), plain.clone())?;
    let a2 = Tridiagonal::general(diag, plain, raised)?;
    Ok((a1, a2))
}

/// Both halves of the spectrum, `a q^{n+1}` and `b q^{n+1}` for `n < count`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralPoints {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl SpectralPoints {
    /// The `k` points of largest modulus, in decreasing order of modulus.
    pub fn extreme(&self, k: usize) -> Vec<f64> {
        let mut all: Vec<f64> = self.upper.iter().chain(&self.lower).copied().collect();
        all.sort_by(|x, y| y.abs().total_cmp(&x.abs()).then(y.total_cmp(x)));
        all.truncate(k);
        all
    }
}

pub fn spectrum_points(p: &QParams, count: usize) -> SpectralPoints {
    let pts = |base: f64| (0..count).map(|n| base * p.q.powi(n as i32 + 1)).collect();
    SpectralPoints {
        upper: pts(p.a),
        lower: pts(p.b),
    }
}
