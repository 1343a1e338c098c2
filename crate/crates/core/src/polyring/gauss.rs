//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussRat::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        GaussRat::real(r)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: if self.im.is_zero() && rhs.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im + &rhs.im
            },
        }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: if self.im.is_zero() && rhs.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im - &rhs.im
            },
        }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRat::real(&self.re * &rhs.re),
            (true, false) => GaussRat {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GaussRat {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GaussRat {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero, like the rational division it wraps.
    fn div(self, rhs: &GaussRat) -> GaussRat {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> Neg for &'a GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussRat {
    /// True when the printed form starts with a minus sign.
    pub(crate) fn is_negative_display(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && self.im.is_zero()
        }
    }
}

impl fmt::Display for GaussRat {
    /// Reals print as `a` or `a/b`; pure imaginaries as `bi`; mixed values as `(a+bi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{im}");
        }
        if self.im.is_negative() {
            write!(f, "({}{})", fmt_rat(&self.re), im)
        } else {
            write!(f, "({}+{})", fmt_rat(&self.re), im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_gaussian() {
        let z = GaussRat::new(BigRational::from_integer(1.into()), BigRational::from_integer(2.into()));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(w.to_string(), "(1/5-2/5i)");
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!((-GaussRat::i()).to_string(), "-i");
        assert_eq!((GaussRat::i() * GaussRat::from_int(3)).to_string(), "3i");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = GaussRat::new(BigRational::from_integer(1.into()), BigRational::from_integer(1.into()));
        // (1+i)^4 = -4
        assert_eq!(z.pow(4), GaussRat::from_int(-4));
        assert!(z.pow(0).is_one());
    }
}
