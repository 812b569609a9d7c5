//! Terminating Gauss hypergeometric sums `2F1(-k, b; c; x)`.

use rug::Rational;

use super::poly::RatPoly;
use crate::{Error, Result};

fn check_parameters(neg_k: i32, c: &Rational) -> Result<u32> {
    if neg_k > 0 {
        return Err(Error::InvalidArgument(format!(
            "first 2F1 parameter must be a nonpositive integer, got {neg_k}"
        )));
    }
    let k = neg_k.unsigned_abs();
    // (c)_j for j <= k involves c, c+1, ..., c+k-1
    for pole in 0..k {
        if Rational::from(c + pole) == 0 {
            return Err(Error::HypergeometricPole { pole });
        }
    }
    Ok(k)
}

/// Exact `sum_{j=0}^{k} (-k)_j (b)_j / ((c)_j j!) x^j` with `neg_k = -k`.
///
/// Terms are accumulated left to right with the exact term ratio
/// `(j - k)(b + j) / ((c + j)(j + 1)) * x`.
pub fn hyp2f1_terminating(neg_k: i32, b: &Rational, c: &Rational, x: &Rational) -> Result<Rational> {
    let k = check_parameters(neg_k, c)?;
    let mut sum = Rational::from(1);
    let mut term = Rational::from(1);
    for j in 0..k {
        let num = Rational::from(b + j) * (j as i64 - k as i64);
        let den = Rational::from(c + j) * (j + 1);
        term *= num / den;
        term *= x;
        sum += &term;
    }
    Ok(sum)
}

/// Same sum with a polynomial argument, returning the composed polynomial.
pub fn hyp2f1_terminating_poly(neg_k: i32, b: &Rational, c: &Rational, x: &RatPoly) -> Result<RatPoly> {
    let k = check_parameters(neg_k, c)?;
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut term = Rational::from(1);
    coeffs.push(term.clone());
    for j in 0..k {
        let num = Rational::from(b + j) * (j as i64 - k as i64);
        let den = Rational::from(c + j) * (j + 1);
        term *= num / den;
        coeffs.push(term.clone());
    }
    Ok(RatPoly::from_coeffs(coeffs).compose(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn empty_sum_is_one() {
        assert_eq!(hyp2f1_terminating(0, &r(5, 3), &r(-7, 2), &r(9, 1)).unwrap(), 1);
    }

    #[test]
    fn documented_values() {
        // 2F1(-1, 2; n+1; (1+z)/2) at n = 3, z = 0
        assert_eq!(hyp2f1_terminating(-1, &r(2, 1), &r(4, 1), &r(1, 2)).unwrap(), r(3, 4));
        // 2F1(-2, 1-n; 2; 2) at n = 3
        assert_eq!(hyp2f1_terminating(-2, &r(-2, 1), &r(2, 1), &r(2, 1)).unwrap(), r(19, 3));
    }

    #[test]
    fn pole_is_rejected() {
        // c = -1 is hit by (c)_2 when k = 3
        let err = hyp2f1_terminating(-3, &r(1, 1), &r(-1, 1), &r(1, 2)).unwrap_err();
        assert!(matches!(err, Error::HypergeometricPole { pole: 1 }));
        // c = -3 lies outside the range for k = 3
        assert!(hyp2f1_terminating(-3, &r(1, 1), &r(-3, 1), &r(1, 2)).is_ok());
        assert!(hyp2f1_terminating(1, &r(1, 1), &r(2, 1), &r(1, 2)).is_err());
    }

    #[test]
    fn matches_brute_force_pochhammer_sum() {
        use crate::exact::{factorial, pochhammer};
        let b = r(-4, 3);
        let c = r(7, 2);
        let x = r(-5, 7);
        for k in 0..9u32 {
            let mut brute = Rational::new();
            for j in 0..=k {
                let t = pochhammer(&Rational::from(-(k as i64)), j) * pochhammer(&b, j)
                    / (pochhammer(&c, j) * factorial(j))
                    * crate::exact::rational_pow(&x, j as i64);
                brute += t;
            }
            assert_eq!(hyp2f1_terminating(-(k as i32), &b, &c, &x).unwrap(), brute);
            let poly = hyp2f1_terminating_poly(-(k as i32), &b, &c, &RatPoly::z()).unwrap();
            assert_eq!(poly.eval(&x), brute);
        }
    }
}
