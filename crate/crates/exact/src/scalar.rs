//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` wraps `num::BigRational`, which keeps values in lowest terms
//! with a positive denominator. `GaussianRational` is the field Q(i) built
//! from two rationals; every computation in this workspace bottoms out here,
//! so identities either hold exactly or fail loudly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::ExactError;

/// Arbitrary-precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(n.trim())
            .map_err(|_| ExactError::Parse(format!("bad numerator in {s:?}")))?;
        let denom = BigInt::from_str(d.trim())
            .map_err(|_| ExactError::Parse(format!("bad denominator in {s:?}")))?;
        if denom.is_zero() {
            return Err(ExactError::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Element of Q(i): `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Shorthand used throughout the workspace.
pub type Scalar = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: Rational::from_int(n),
            im: Rational::zero(),
        }
    }

    /// `num/den` as a real Gaussian rational.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: Rational::new(num, den),
            im: Rational::zero(),
        }
    }

    /// `(a + b*i)/den`.
    pub fn complex(a: i64, b: i64, den: i64) -> Self {
        GaussianRational {
            re: Rational::new(a, den),
            im: Rational::new(b, den),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate a - b*i.
    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// |z|^2 = z * conj(z), a nonnegative rational.
    pub fn norm_sq(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm_sq();
        GaussianRational {
            re: &self.re * &n.recip(),
            im: -&(&self.im * &n.recip()),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self * &Self::from_int(n)
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical textual form `a/b+c/di`, e.g. `1/2-3/4i`; pure reals drop
    /// the imaginary part and pure imaginaries drop the real part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}{}i", self.re, self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ExactError::Parse("empty scalar".into()));
        }
        // Split into real and imaginary summands at a +/- that is not leading.
        if let Some(stripped) = s.strip_suffix('i') {
            // Find the split point: last '+' or '-' not at position 0.
            let bytes = stripped.as_bytes();
            let mut split = None;
            for (k, &b) in bytes.iter().enumerate().rev() {
                if (b == b'+' || b == b'-') && k > 0 && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            match split {
                Some(k) => {
                    let re = Rational::from_str(&stripped[..k])?;
                    let im_str = &stripped[k..];
                    let im = if im_str == "+" {
                        Rational::one()
                    } else if im_str == "-" {
                        -Rational::one()
                    } else {
                        Rational::from_str(im_str)?
                    };
                    Ok(GaussianRational { re, im })
                }
                None => {
                    let im = match stripped {
                        "" | "+" => Rational::one(),
                        "-" => -Rational::one(),
                        _ => Rational::from_str(stripped)?,
                    };
                    Ok(GaussianRational {
                        re: Rational::zero(),
                        im,
                    })
                }
            }
        } else {
            Ok(GaussianRational {
                re: Rational::from_str(&s)?,
                im: Rational::zero(),
            })
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re = &self.re + &rhs.re;
        self.im = &self.im + &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re = &self.re - &rhs.re;
        self.im = &self.im - &rhs.im;
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = (&*self).mul(rhs);
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        (&self).mul(&rhs.recip())
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        self.mul(&rhs.recip())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<'a> Neg for &'a GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::complex(1, 2, 3);
        let w = GaussianRational::complex(-2, 5, 7);
        let prod = &z * &w;
        assert_eq!(&prod / &w, z);
        assert_eq!(&(&z + &w) - &w, z);
        assert!((&z * &z.recip()) == GaussianRational::one());
    }

    #[test]
    fn conjugation_involution_and_norm() {
        let z = GaussianRational::complex(3, -4, 5);
        assert_eq!(z.conj().conj(), z);
        let n = &z * &z.conj();
        assert!(n.is_real());
        assert_eq!(n.re, z.norm_sq());
    }

    #[test]
    fn display_round_trip() {
        for s in ["1/2-3/4i", "1/2", "-3i", "i", "-i", "0", "2+i", "-1/3+2/5i"] {
            let z: GaussianRational = s.parse().unwrap();
            let back: GaussianRational = z.to_string().parse().unwrap();
            assert_eq!(z, back, "round trip failed for {s}");
        }
        let z: GaussianRational = "1/2-3/4i".parse().unwrap();
        assert_eq!(z, GaussianRational::new(Rational::new(1, 2), Rational::new(-3, 4)));
    }
}
