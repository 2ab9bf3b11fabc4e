//! Compensated (Neumaier) summation.

use std::ops::{Div, Mul};

use crate::real::Real;

/// Running sum with a Neumaier correction term.
///
/// Also tracks the largest term magnitude seen, which the series drivers use
/// as the scale for relative stopping rules.
#[derive(Debug, Clone)]
pub struct CompensatedSum<R: Real> {
    sum: R,
    correction: R,
    largest: f64,
    count: usize,
}

impl<R: Real> Default for CompensatedSum<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> CompensatedSum<R> {
    pub fn new() -> Self {
        CompensatedSum {
            sum: R::zero(),
            correction: R::zero(),
            largest: 0.0,
            count: 0,
        }
    }

    pub fn add(&mut self, x: R) {
        let mag = x.abs().to_f64();
        if mag > self.largest {
            self.largest = mag;
        }
        let t = self.sum.clone() + x.clone();
        if self.sum.abs() >= x.abs() {
            self.correction = self.correction.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.correction = self.correction.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
        self.count += 1;
    }

    pub fn value(&self) -> R {
        self.sum.clone() + self.correction.clone()
    }

    /// Largest |term| added so far.
    pub fn largest_term(&self) -> f64 {
        self.largest
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

impl<R: Real> Extend<R> for CompensatedSum<R> {
    fn extend<I: IntoIterator<Item = R>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<R: Real> FromIterator<R> for CompensatedSum<R> {
    fn from_iter<I: IntoIterator<Item = R>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

/// Compensated sum of an iterator of doubles.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum<f64>>().value()
}

/// Signed number stored as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    /// `-1`, `0` or `1`.
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        sign: 0.0,
        ln_abs: f64::NEG_INFINITY,
    };
    pub const ONE: LogScaled = LogScaled {
        sign: 1.0,
        ln_abs: 0.0,
    };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogScaled {
                sign: x.signum(),
                ln_abs: x.abs().ln(),
            }
        }
    }

    /// Value as a double; may overflow to infinity or underflow to zero.
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn mul_f64(self, x: f64) -> LogScaled {
        self * LogScaled::from_f64(x)
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;

    fn mul(self, other: LogScaled) -> LogScaled {
        if self.sign == 0.0 || other.sign == 0.0 {
            return Self::ZERO;
        }
        LogScaled {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs + other.ln_abs,
        }
    }
}

impl Div for LogScaled {
    type Output = LogScaled;

    fn div(self, other: LogScaled) -> LogScaled {
        assert!(other.sign != 0.0, "division by a zero log-scaled number");
        if self.sign == 0.0 {
            return Self::ZERO;
        }
        LogScaled {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs - other.ln_abs,
        }
    }
}

/// Sum of signed log-magnitude terms, evaluated by shifting out the largest
/// magnitude and adding the rescaled terms with compensation.
pub fn log_sum(terms: &[LogScaled]) -> LogScaled {
    let shift = terms
        .iter()
        .filter(|t| t.sign != 0.0)
        .map(|t| t.ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return LogScaled::ZERO;
    }
    let mantissa = compensated_sum(
        terms
            .iter()
            .filter(|t| t.sign != 0.0)
            .map(|t| t.sign * (t.ln_abs - shift).exp()),
    );
    let mut out = LogScaled::from_f64(mantissa);
    out.ln_abs += shift;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let s = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(s, 2.0);
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn log_sum_survives_overflowing_terms() {
        let big = LogScaled {
            sign: 1.0,
            ln_abs: 1000.0,
        };
        let neg = LogScaled {
            sign: -1.0,
            ln_abs: 1000.0 + (0.25f64).ln(),
        };
        let s = log_sum(&[big, neg]);
        assert_eq!(s.sign, 1.0);
        assert!((s.ln_abs - (1000.0 + 0.75f64.ln())).abs() < 1e-13);
        assert_eq!(log_sum(&[LogScaled::ZERO]), LogScaled::ZERO);
        assert!((LogScaled::from_f64(-2.5).mul_f64(-2.0).value() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn tracks_largest_term() {
        let mut s = CompensatedSum::<f64>::new();
        s.extend([0.5, -3.0, 2.0]);
        assert_eq!(s.largest_term(), 3.0);
        assert_eq!(s.len(), 3);
        assert_eq!(s.value(), -0.5);
    }
}
