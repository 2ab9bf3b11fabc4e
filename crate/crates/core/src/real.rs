//! Scalar abstraction shared by the double and extended precision paths.
//!
//! Every evaluator that may need more than 53 bits is written against
//! [`Real`], and is instantiated with either `f64` or [`Extended`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

/// Working precision of [`Extended`] in bits.
pub const EXTENDED_BITS: usize = 512;

/// Arithmetic needed by the series, products and recurrences in this crate.
pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact conversion from a double.
    fn from_f64(x: f64) -> Self;
    /// Nearest double.
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    /// Integer power; negative exponents divide.
    fn powi(&self, n: i64) -> Self;
    /// Unit roundoff of the representation.
    fn epsilon() -> f64;
    fn is_finite(&self) -> bool;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }
    fn is_zero(&self) -> bool {
        self.to_f64() == 0.0 && *self == Self::zero()
    }
    fn max_abs(&self, other: &Self) -> Self {
        let (x, y) = (self.abs(), other.abs());
        if x > y {
            x
        } else {
            y
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn powi(&self, n: i64) -> Self {
        match i32::try_from(n) {
            Ok(k) => f64::powi(*self, k),
            Err(_) => f64::powf(*self, n as f64),
        }
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

type Big = FBig<HalfEven, 2>;

/// Binary floating point number carrying [`EXTENDED_BITS`] bits of mantissa.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Extended(Big);

impl From<Big> for Extended {
    fn from(x: Big) -> Self {
        Extended::wrap(x)
    }
}

impl Extended {
    fn wrap(x: Big) -> Self {
        Extended(x.with_precision(EXTENDED_BITS).value())
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extended({:e})", self.to_f64())
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! extended_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Extended {
            type Output = Extended;
            fn $method(self, rhs: Extended) -> Extended {
                Extended(self.0.$method(rhs.0))
            }
        }
    };
}

extended_binop!(Add, add);
extended_binop!(Sub, sub);
extended_binop!(Mul, mul);
extended_binop!(Div, div);

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended(-self.0)
    }
}

impl Real for Extended {
    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x} as an extended float");
        Extended::wrap(Big::try_from(x).expect("finite doubles convert exactly"))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn abs(&self) -> Self {
        if self.0 < Big::ZERO {
            Extended(-self.0.clone())
        } else {
            self.clone()
        }
    }
    fn sqrt(&self) -> Self {
        assert!(
            self.0 >= Big::ZERO,
            "square root of a negative extended float"
        );
        Extended::wrap(self.0.clone()).0.sqrt().into()
    }
    fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            Extended::wrap(self.0.powi(n.into()))
        } else {
            Self::one() / Extended::wrap(self.0.powi((-n).into()))
        }
    }
    fn epsilon() -> f64 {
        2f64.powi(1 - EXTENDED_BITS as i32)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn is_zero(&self) -> bool {
        self.0 == Big::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeroth_power_keeps_working_precision() {
        let x = Extended::from_f64(0.3).powi(0);
        assert_eq!(x.sqrt().to_f64(), 1.0);
        assert_eq!(Extended::from_f64(4.0).powi(-1).sqrt().to_f64(), 0.5);
    }

    #[test]
    fn extended_round_trips_doubles() {
        for x in [0.0, 1.0, -0.7, 0.1, 1e-300, 3.5e200] {
            assert_eq!(Extended::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn extended_resolves_what_doubles_cannot() {
        let one = Extended::one();
        let tiny = Extended::from_f64(1e-40);
        let back = (one.clone() + tiny.clone()) - one;
        assert_eq!(back.to_f64(), 1e-40);
        assert_eq!((1.0 + 1e-40) - 1.0, 0.0);
    }

    #[test]
    fn extended_sqrt_and_powers() {
        let two = Extended::from_f64(2.0);
        let r = two.sqrt();
        let err = (r.clone() * r - two.clone()).abs().to_f64();
        assert!(err < 1e-150);
        assert_eq!(two.powi(-3).to_f64(), 0.125);
        assert_eq!(two.powi(10).to_f64(), 1024.0);
        assert!(Extended::from_f64(-3.0).abs() == Extended::from_f64(3.0));
    }

    #[test]
    fn f64_powi_handles_huge_exponents() {
        assert_eq!(Real::powi(&0.5f64, 3), 0.125);
        assert_eq!(Real::powi(&0.5f64, 5_000_000_000), 0.0);
    }
}
