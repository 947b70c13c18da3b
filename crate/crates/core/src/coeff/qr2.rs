//! Elements of the quadratic field Q(√2), stored as `a + b·√2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Qr2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl Qr2 {
    pub fn zero() -> Self {
        Qr2 { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Qr2 { a: BigRational::one(), b: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Qr2 { a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero() }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Qr2 {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Qr2 { a, b: BigRational::zero() }
    }

    pub fn sqrt2() -> Self {
        Qr2 { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b·√2`.
    pub fn conj(&self) -> Self {
        Qr2 { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² - 2b²`, nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Qr2 { a: self.a.recip(), b: BigRational::zero() });
        }
        let n = self.norm();
        Some(Qr2 { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Qr2 { a: &self.a * r, b: &self.b * r }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + std::f64::consts::SQRT_2 * self.b.to_f64().unwrap_or(f64::NAN)
    }

    /// True when the rendered form needs parentheses to act as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero()
    }

    /// Sign of the leading nonzero component, used only for pretty-printing.
    pub(crate) fn is_negative_display(&self) -> bool {
        if !self.a.is_zero() {
            if self.b.is_zero() {
                self.a.is_negative()
            } else {
                false
            }
        } else {
            self.b.is_negative()
        }
    }
}

impl Add for &Qr2 {
    type Output = Qr2;
    fn add(self, o: &Qr2) -> Qr2 {
        Qr2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Qr2 {
    type Output = Qr2;
    fn sub(self, o: &Qr2) -> Qr2 {
        Qr2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &Qr2 {
    type Output = Qr2;
    fn mul(self, o: &Qr2) -> Qr2 {
        if self.b.is_zero() && o.b.is_zero() {
            return Qr2 { a: &self.a * &o.a, b: BigRational::zero() };
        }
        let two = BigRational::from_integer(BigInt::from(2));
        Qr2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &Qr2 {
    type Output = Qr2;
    fn neg(self) -> Qr2 {
        Qr2 { a: -self.a.clone(), b: -self.b.clone() }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Qr2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => fmt_rational(&self.a, f),
            (true, false) => {
                if self.b.is_one() {
                    write!(f, "r2")
                } else if (-self.b.clone()).is_one() {
                    write!(f, "-r2")
                } else {
                    fmt_rational(&self.b, f)?;
                    write!(f, "*r2")
                }
            }
            (false, false) => {
                fmt_rational(&self.a, f)?;
                if self.b.is_negative() {
                    write!(f, " - ")?;
                    let nb = -self.b.clone();
                    if !nb.is_one() {
                        fmt_rational(&nb, f)?;
                        write!(f, "*")?;
                    }
                } else {
                    write!(f, " + ")?;
                    if !self.b.is_one() {
                        fmt_rational(&self.b, f)?;
                        write!(f, "*")?;
                    }
                }
                write!(f, "r2")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Qr2::sqrt2();
        assert_eq!(&s * &s, Qr2::int(2));
    }

    #[test]
    fn inverse_of_quadratic_element() {
        let x = &Qr2::int(3) + &Qr2::sqrt2();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Qr2::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Qr2::rational(-3, 2).to_string(), "-3/2");
        assert_eq!(Qr2::sqrt2().to_string(), "r2");
        let x = &Qr2::rational(1, 2) - &Qr2::sqrt2();
        assert_eq!(x.to_string(), "1/2 - r2");
    }
}
