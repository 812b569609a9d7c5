//! Exact arithmetic substrate: rationals, dense rational polynomials,
//! combinatorial kernels, terminating hypergeometric sums, Gaussian
//! rationals, small dense matrices, and configurable-precision complex
//! numbers.

mod comb;
mod complex;
mod gauss;
mod hypergeom;
mod matrix;
mod poly;

pub use comb::{binomial, double_factorial, factorial, pochhammer, pochhammer_int};
pub use complex::{
    complex_from_rational, complex_to_strings, parse_complex, pi, BigComplex, ComplexPoly,
    Precision,
};
pub use gauss::GaussRational;
pub use hypergeom::{hyp2f1_terminating, hyp2f1_terminating_poly};
pub use matrix::RatMatrix;
pub use poly::RatPoly;

pub use rug::{Float, Integer, Rational};

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(crate::Error::Parse(format!("malformed decimal {s:?}")));
        }
        let digits = format!("{int}{frac}");
        let num = Integer::from_str_radix(&digits, 10)
            .map_err(|e| crate::Error::Parse(format!("{s:?}: {e}")))?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Ok(Rational::from((num, den)));
    }
    Rational::from_str_radix(s, 10).map_err(|e| crate::Error::Parse(format!("{s:?}: {e}")))
}

/// Integer power of a rational (negative exponents allowed for nonzero base).
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    use rug::ops::Pow;
    let mut r = Rational::from(base.pow(exp.unsigned_abs() as u32));
    if exp < 0 {
        r.recip_mut();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-2/7").unwrap(), Rational::from((-2, 7)));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("5").unwrap(), Rational::from(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rational_powers() {
        let half = Rational::from((1, 2));
        assert_eq!(rational_pow(&half, 3), Rational::from((1, 8)));
        assert_eq!(rational_pow(&half, -2), Rational::from(4));
        assert_eq!(rational_pow(&half, 0), Rational::from(1));
    }
}
