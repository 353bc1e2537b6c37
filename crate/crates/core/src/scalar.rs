//! The ground field: rationals extended by `w` with `w^2 = -2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element `re + im*w` of the quadratic extension, `w^2 = -2`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The generator `w` (a square root of -2).
    pub fn omega() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Exact rational `p/q`. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self {
            re: r,
            im: BigRational::zero(),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.re
    }

    pub fn omega_part(&self) -> &BigRational {
        &self.im
    }

    /// Multiplicative inverse; `None` for zero. Uses the conjugate over the
    /// norm `re^2 + 2*im^2`, which vanishes only at zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + BigRational::from_integer(BigInt::from(2)) * &self.im * &self.im;
        Some(Scalar {
            re: &self.re / &norm,
            im: -(&self.im) / &norm,
        })
    }

    pub fn pow(&self, mut n: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// True when both components are `<= 0` and the value is nonzero; used
    /// for folding leading minus signs in printed output.
    pub fn is_displayed_negative(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        !self.re.is_positive() && !self.im.is_positive()
    }

    /// True when printing needs parentheses inside a product (two components).
    pub fn is_composite(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + bw)(c + dw) = (ac - 2bd) + (ad + bc)w
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar {
            re: &self.re * &rhs.re - &two * &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -(&self.re),
            im: -(&self.im),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p/q`, `p/q*w`, or `(p/q+r/s*w)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let omega_text = if self.im.is_one() {
            "w".to_string()
        } else if (-(&self.im)).is_one() {
            "-w".to_string()
        } else {
            format!("{}*w", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{omega_text}")
        } else if omega_text.starts_with('-') {
            write!(f, "({}{})", fmt_rational(&self.re), omega_text)
        } else {
            write!(f, "({}+{})", fmt_rational(&self.re), omega_text)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squares_to_minus_two() {
        let w = Scalar::omega();
        assert_eq!(&w * &w, Scalar::from_int(-2));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = &Scalar::from_ratio(3, 7) + &Scalar::omega();
        let inv = x.inv().unwrap();
        assert!( (&x * &inv).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::omega().to_string(), "w");
        assert_eq!((&Scalar::from_int(1) + &Scalar::omega()).to_string(), "(1+w)");
        assert_eq!((&Scalar::from_int(2) * &Scalar::omega()).to_string(), "2*w");
    }
}
