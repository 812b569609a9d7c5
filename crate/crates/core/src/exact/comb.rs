use rug::{Integer, Rational};

/// Binomial coefficient with the convention `binomial(n, k) = 0` for `k < 0` or `k > n`.
///
/// `n` must be nonnegative whenever `0 <= k <= n` could hold; negative `n`
/// always yields zero under the convention above.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `n!!` with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Integer {
    if n <= 0 {
        return Integer::from(1);
    }
    Integer::from(Integer::factorial_2(n as u32))
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += 1;
    }
    acc
}

pub fn pochhammer_int(x: i64, k: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..k as i64 {
        acc *= x + i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(double_factorial(6), 48);
        assert_eq!(double_factorial(5), 15);
        assert_eq!(double_factorial(-1), 1);
        assert_eq!(double_factorial(0), 1);
        let ratio = Rational::from((double_factorial(6), double_factorial(5)));
        assert_eq!(ratio, Rational::from((48, 15)));
        assert_eq!(pochhammer_int(3, 2), 12);
        assert_eq!(pochhammer(&Rational::from(3), 2), 12);
        assert_eq!(pochhammer(&Rational::from((1, 2)), 0), 1);
        assert_eq!(pochhammer(&Rational::from((1, 2)), 3), Rational::from((15, 8)));
        assert_eq!(pochhammer_int(-2, 3), 0);
    }

    #[test]
    fn symmetry_and_pascal() {
        for n in 1..40i64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
                let pascal = binomial(n - 1, k) + binomial(n - 1, k - 1);
                assert_eq!(binomial(n, k), pascal, "n={n} k={k}");
            }
        }
    }
}
