//! Coefficient fields: float64 complex and exact rational complex.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Complex, One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::Neg;

pub type C64 = Complex<f64>;
pub type Rat = BigRational;
pub type CQ = Complex<BigRational>;

/// Coefficient type of a filter. `EXACT` types compare against zero exactly;
/// float types use a tolerance.
pub trait Scalar:
    num::Num + Clone + Neg<Output = Self> + Debug + PartialEq + Send + Sync + 'static
{
    const EXACT: bool;

    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// e^{-2πi r/q}; `None` when the value is not representable.
    fn root_of_unity(r: i64, q: i64) -> Option<Self>;
    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= tol
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn root_of_unity(r: i64, q: i64) -> Option<Self> {
        let r = r.rem_euclid(q);
        if 4 * r % q == 0 {
            return Some(match 4 * r / q {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, -1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, 1.0),
            });
        }
        let t = -2.0 * std::f64::consts::PI * r as f64 / q as f64;
        Some(C64::new(t.cos(), t.sin()))
    }
}

impl Scalar for CQ {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(Rat::from_integer(BigInt::from(v)), Rat::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(Rat::new(BigInt::from(num), BigInt::from(den)), Rat::zero())
    }
    fn root_of_unity(r: i64, q: i64) -> Option<Self> {
        let r = r.rem_euclid(q);
        if 4 * r % q != 0 {
            return None;
        }
        let (re, im) = match 4 * r / q {
            0 => (1, 0),
            1 => (0, -1),
            2 => (-1, 0),
            _ => (0, 1),
        };
        Some(Complex::new(
            Rat::from_integer(BigInt::from(re)),
            Rat::from_integer(BigInt::from(im)),
        ))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // very large numerators/denominators: scale by powers of two
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let shift = n - d;
    let scaled = if shift > 0 {
        r / Rat::from_integer(BigInt::one() << shift as usize)
    } else {
        r * Rat::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Exact rational complex from an integer fraction.
pub fn q(num: i64, den: i64) -> CQ {
    CQ::from_ratio(num, den)
}

/// Real rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// True when every coefficient has a zero imaginary part (within `tol` for floats).
pub fn is_real<T: Scalar>(v: &T, tol: f64) -> bool {
    let z = v.to_c64();
    if T::EXACT {
        z.im == 0.0
    } else {
        z.im.abs() <= tol
    }
}
