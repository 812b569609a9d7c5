use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Rational};

use super::comb::binomial;

/// Dense univariate polynomial over the rationals; `coeffs[i]` multiplies `z^i`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient vector and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::from(1), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::new(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// `(z - a)^n` expanded with binomial coefficients.
    pub fn linear_power(a: &Rational, n: u32) -> Self {
        let minus_a = Rational::from(-a);
        let mut power = Rational::from(1);
        let mut coeffs = vec![Rational::new(); n as usize + 1];
        for j in 0..=n as usize {
            // coefficient of z^{n-j} is binomial(n, j) (-a)^j
            coeffs[n as usize - j] = Rational::from(&power * binomial(n as i64, j as i64));
            power *= &minus_a;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::new(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| Rational::from(x * c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u32))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { Rational::from(-c) } else { c.clone() })
                .collect(),
        )
    }

    /// `p(c z)`.
    pub fn dilate(&self, c: &Rational) -> Self {
        let mut power = Rational::from(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(Rational::from(x * &power));
            power *= c;
        }
        Self::from_coeffs(out)
    }

    /// `p(q(z))` by Horner's scheme over polynomials.
    pub fn compose(&self, q: &RatPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    /// Horner evaluation at a complex point with guard bits; the result is
    /// rounded once to the precision of `z`.
    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let prec = z.prec().0.max(z.prec().1);
        let work = prec + 64 + 2 * (usize::BITS - self.coeffs.len().leading_zeros());
        let zw = Complex::with_val(work, z);
        let mut acc = Complex::new(work);
        for c in self.coeffs.iter().rev() {
            acc *= &zw;
            acc += c;
        }
        Complex::with_val(prec, acc)
    }

    /// `p^{(j)}(at) / j!`, the `j`-th Taylor coefficient at `at`.
    pub fn taylor_coeff(&self, at: &Rational, j: usize) -> Rational {
        // sum_i binomial(i, j) c_i at^{i-j}
        let mut acc = Rational::new();
        let mut power = Rational::from(1);
        for (i, c) in self.coeffs.iter().enumerate().skip(j) {
            acc += Rational::from(c * &power) * binomial(i as i64, j as i64);
            power *= at;
        }
        acc
    }

    /// Even part `(p(z) + p(-z)) / 2` and odd part `(p(z) - p(-z)) / 2`.
    pub fn even_odd(&self) -> (Self, Self) {
        let mut even = Vec::with_capacity(self.coeffs.len());
        let mut odd = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
                odd.push(Rational::new());
            } else {
                even.push(Rational::new());
                odd.push(c.clone());
            }
        }
        (Self::from_coeffs(even), Self::from_coeffs(odd))
    }

    /// Largest absolute coefficient difference, the sup-norm distance of coefficient vectors.
    pub fn coeff_distance(&self, other: &RatPoly) -> Rational {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| (self.coeff(i) - other.coeff(i)).abs())
            .max()
            .unwrap_or_default()
    }
}

fn zip_with(p: &RatPoly, q: &RatPoly, f: impl Fn(&Rational, &Rational) -> Rational) -> RatPoly {
    let zero = Rational::new();
    let len = p.coeffs.len().max(q.coeffs.len());
    RatPoly::from_coeffs(
        (0..len)
            .map(|i| f(p.coeffs.get(i).unwrap_or(&zero), q.coeffs.get(i).unwrap_or(&zero)))
            .collect(),
    )
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        zip_with(self, rhs, |a, b| Rational::from(a + b))
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        zip_with(self, rhs, |a, b| Rational::from(a - b))
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    /// Descending powers, e.g. `z^2 - 2z + 1`; rationals print as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == 1;
            match i {
                0 => write!(f, "{mag}")?,
                _ if unit => {}
                _ if *mag.denom() == 1 => write!(f, "{mag}")?,
                _ => write!(f, "({mag})")?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}
