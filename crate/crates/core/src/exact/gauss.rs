use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::new() }
    }

    pub fn i() -> Self {
        Self { re: Rational::new(), im: Rational::from(1) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { re: Rational::from(&self.re * c), im: Rational::from(&self.im * c) }
    }

    /// `i^m`.
    pub fn i_pow(m: u32) -> Self {
        match m % 4 {
            0 => Self::real(Rational::from(1)),
            1 => Self::i(),
            2 => Self::real(Rational::from(-1)),
            _ => -&Self::i(),
        }
    }

    /// `self / i^m`, exact.
    pub fn div_i_pow(&self, m: u32) -> Self {
        self * &Self::i_pow((4 - m % 4) % 4)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re + &rhs.re),
            im: Rational::from(&self.im + &rhs.im),
        }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re - &rhs.re),
            im: Rational::from(&self.im - &rhs.im),
        }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im),
            im: Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re),
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: Rational::from(-&self.re), im: Rational::from(-&self.im) }
    }
}
