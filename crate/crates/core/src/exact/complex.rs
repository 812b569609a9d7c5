use rug::float::Constant;
use rug::{Complex, Float, Rational};

use super::poly::RatPoly;
use crate::{Error, Result};

/// Complex number with binary-precision real and imaginary parts.
///
/// Every constructor in this crate builds both parts at the same precision.
pub type BigComplex = Complex;

/// Working binary precision; never below 53 bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 53;

    pub const DEFAULT: Precision = Precision(256);

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::PrecisionTooLow(bits));
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Decimal digits carried by the mantissa, rounded down.
    pub fn decimal_digits(self) -> u32 {
        (self.0 as f64 * std::f64::consts::LOG10_2).floor() as u32
    }

    /// Unit roundoff `2^(1-bits)`.
    pub fn epsilon(self) -> Float {
        Float::with_val(self.0, Float::i_exp(1, 1 - self.0 as i32))
    }

    pub fn with_guard(self, extra: u32) -> Precision {
        Precision(self.0 + extra)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub fn pi(prec: Precision) -> Float {
    Float::with_val(prec.bits(), Constant::Pi)
}

pub fn complex_from_rational(r: &Rational, prec: Precision) -> Complex {
    Complex::with_val(prec.bits(), (r, 0))
}

/// Parses decimal strings for the two parts into the working precision.
pub fn parse_complex(re: &str, im: &str, prec: Precision) -> Result<Complex> {
    let parse = |s: &str| {
        Float::parse(s.trim())
            .map(|v| Float::with_val(prec.bits(), v))
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    };
    Ok(Complex::with_val(prec.bits(), (parse(re)?, parse(im)?)))
}

/// Scientific-notation decimal strings with `digits` significant digits.
pub fn complex_to_strings(z: &Complex, digits: usize) -> (String, String) {
    (float_to_string(z.real(), digits), float_to_string(z.imag(), digits))
}

pub(crate) fn float_to_string(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Dense polynomial with configurable-precision complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex>,
    prec: Precision,
}

impl ComplexPoly {
    /// Rounds the exact coefficients once to the working precision.
    pub fn from_ratpoly(p: &RatPoly, prec: Precision) -> Self {
        Self {
            coeffs: p.coeffs().iter().map(|c| complex_from_rational(c, prec)).collect(),
            prec,
        }
    }

    pub fn from_coeffs(coeffs: Vec<Complex>, prec: Precision) -> Self {
        let mut coeffs: Vec<Complex> =
            coeffs.into_iter().map(|c| Complex::with_val(prec.bits(), c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, prec }
    }

    /// Applies the eigenvalue scaling law to an `a = 1` polynomial of degree `k`:
    /// coefficient `i` becomes `a^{k-i}` times the exact coefficient, rounded once.
    pub fn scaled_by(p: &RatPoly, a: &Complex, prec: Precision) -> Self {
        let Some(k) = p.degree() else {
            return Self { coeffs: Vec::new(), prec };
        };
        let work = prec.bits() + 64;
        let aw = Complex::with_val(work, a);
        let mut power = Complex::with_val(work, (1, 0));
        let mut coeffs = vec![Complex::new(prec.bits()); k + 1];
        for i in (0..=k).rev() {
            let c = Complex::with_val(work, &power * p.coeff(i));
            coeffs[i] = Complex::with_val(prec.bits(), c);
            power *= &aw;
        }
        Self { coeffs, prec }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::new(self.prec.bits());
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let mut p = Complex::new(self.prec.bits());
        let mut dp = Complex::new(self.prec.bits());
        for c in self.coeffs.iter().rev() {
            dp *= z;
            dp += &p;
            p *= z;
            p += c;
        }
        (p, dp)
    }

    /// `sum_i |c_i| r^i`, the natural scale for rounding errors of Horner at `|z| = r`.
    pub fn abs_eval(&self, r: &Float) -> Float {
        let mut acc = Float::new(self.prec.bits());
        for c in self.coeffs.iter().rev() {
            acc *= r;
            acc += Float::with_val(self.prec.bits(), c.abs_ref());
        }
        acc
    }

    pub fn abs_coeff_sum(&self) -> Float {
        self.coeffs.iter().fold(Float::new(self.prec.bits()), |acc, c| {
            acc + Float::with_val(self.prec.bits(), c.abs_ref())
        })
    }

    /// Maximum coefficientwise distance `max_i |c_i - d_i|`.
    pub fn coeff_distance(&self, other: &ComplexPoly) -> Float {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex::new(self.prec.bits());
        let mut worst = Float::new(self.prec.bits());
        for i in 0..len {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            let d = Float::with_val(self.prec.bits(), Complex::with_val(self.prec.bits(), a - b).abs_ref());
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}
