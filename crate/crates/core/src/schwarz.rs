//! The Schwarz matrix `J_n` whose only eigenvalue is a prescribed nonzero `a`.
//!
//! `J_n` is tridiagonal with `-b_0` in the top-left corner, ones on the
//! superdiagonal and `-b_1, ..., -b_{n-1}` on the subdiagonal. The unique
//! choice making `det(zI - J_n) = (z - a)^n` is
//! `b_0 = -a n`, `b_m = a^2 (n^2 - m^2) / (4 m^2 - 1)`.
//!
//! The matrix is kept as its coefficient vector; [`SchwarzSpec::to_dense`]
//! materializes it for small-order checks only.

use rug::{Complex, Rational};

use crate::exact::{binomial, rational_pow, ComplexPoly, Precision, RatMatrix, RatPoly};
use crate::{Error, Result};

/// Subdiagonal coefficient `b_m` for `1 <= m`, and `b_0 = -a n` for `m = 0`.
pub fn subdiagonal_coefficient(n: u32, a: &Rational, m: u32) -> Rational {
    if m == 0 {
        return -Rational::from(a * n);
    }
    let n2 = n as i64 * n as i64;
    let m2 = m as i64 * m as i64;
    Rational::from(a * a) * Rational::from((n2 - m2, 4 * m2 - 1))
}

/// `(n, a)` together with the recurrence coefficients `b_0, ..., b_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzSpec {
    n: u32,
    a: Rational,
    b: Vec<Rational>,
}

impl SchwarzSpec {
    pub fn new(n: u32, a: Rational) -> Result<Self> {
        validate(n, a == 0)?;
        let b = (0..n).map(|m| subdiagonal_coefficient(n, &a, m)).collect();
        Ok(Self { n, a, b })
    }

    /// Builds a spec from explicit coefficients without checking them against
    /// the closed form. Used to feed deliberately wrong data to the verifiers.
    pub fn with_coefficients(n: u32, a: Rational, b: Vec<Rational>) -> Result<Self> {
        validate(n, a == 0)?;
        if b.len() != n as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {n} recurrence coefficients, got {}",
                b.len()
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Dense `J_n`.
    pub fn to_dense(&self) -> RatMatrix {
        self.leading_block(self.n as usize)
    }

    /// Leading principal `k x k` block `J_k`.
    pub fn leading_block(&self, k: usize) -> RatMatrix {
        assert!(k <= self.n as usize);
        let mut m = RatMatrix::zeros(k, k);
        if k == 0 {
            return m;
        }
        m[(0, 0)] = Rational::from(-&self.b[0]);
        for i in 1..k {
            m[(i - 1, i)] = Rational::from(1);
            m[(i, i - 1)] = Rational::from(-&self.b[i]);
        }
        m
    }

    /// `P_0, ..., P_n` from `P_0 = 1`, `P_1 = z + b_0`, `P_{k+1} = z P_k + b_k P_{k-1}`.
    pub fn charpoly_sequence(&self) -> PolySequence {
        PolySequence { n: self.n, a: self.a.clone(), entries: self.charpoly_upto(self.n as usize) }
    }

    /// `P_0, ..., P_k` only; cheap when `k` is much smaller than `n`.
    pub fn charpoly_upto(&self, k: usize) -> Vec<RatPoly> {
        assert!(k <= self.n as usize, "degree {k} exceeds n = {}", self.n);
        let mut entries = Vec::with_capacity(k + 1);
        entries.push(RatPoly::one());
        if k == 0 {
            return entries;
        }
        entries.push(RatPoly::from_coeffs(vec![self.b[0].clone(), Rational::from(1)]));
        for j in 1..k {
            let next = &entries[j].shift(1) + &entries[j - 1].scale(&self.b[j]);
            entries.push(next);
        }
        entries
    }

    /// `P_k`.
    pub fn charpoly(&self, k: usize) -> RatPoly {
        self.charpoly_upto(k).pop().expect("nonempty")
    }

    /// Checks `P_n(z) == (z - a)^n` coefficient by coefficient.
    pub fn verify_apotent(&self) -> ApotencyReport {
        let seq = self.charpoly_sequence();
        let found = seq.last();
        let expected = RatPoly::linear_power(&self.a, self.n);
        let witness = (0..=self.n as usize).find_map(|i| {
            let (f, e) = (found.coeff(i), expected.coeff(i));
            (f != e).then_some(CoefficientMismatch { index: i, found: f, expected: e })
        });
        ApotencyReport { n: self.n, a: self.a.clone(), witness }
    }

    /// Eigenvector `u_0 = u(a)` and generalized eigenvectors `u_k = u^{(k)}(a)`
    /// for `u(z) = (P_0(z), ..., P_{n-1}(z))`, with exact residuals of
    /// `J u(z) = z u(z) - P_n(z) e_n`, `(J - aI) u_0 = 0` and
    /// `(J - aI) u_k = k u_{k-1}`.
    pub fn eigvector_chain(&self) -> EigenChainReport {
        let n = self.n as usize;
        let seq = self.charpoly_sequence();
        let polys = &seq.entries;

        let mut identity_holds = true;
        for i in 0..n {
            let mut lhs = if i == 0 { polys[0].scale(&Rational::from(-&self.b[0])) } else { polys[i - 1].scale(&Rational::from(-&self.b[i])) };
            if i + 1 < n {
                lhs = &lhs + &polys[i + 1];
            }
            let mut rhs = polys[i].shift(1);
            if i + 1 == n {
                rhs = &rhs - &polys[n];
            }
            if lhs != rhs {
                identity_holds = false;
            }
        }

        let mut derivs: Vec<RatPoly> = polys[..n].to_vec();
        let mut vectors = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                derivs = derivs.iter().map(RatPoly::derivative).collect();
            }
            vectors.push(derivs.iter().map(|p| p.eval(&self.a)).collect::<Vec<_>>());
        }

        let residuals = (0..n)
            .map(|k| {
                let lhs = self.shifted_matvec(&vectors[k]);
                lhs.iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let rhs = if k == 0 { Rational::new() } else { Rational::from(&vectors[k - 1][i] * k as u32) };
                        (v - rhs).abs()
                    })
                    .max()
                    .unwrap_or_default()
            })
            .collect();

        EigenChainReport { vectors, identity_holds, residuals }
    }

    /// `(J_n - aI) v` using the tridiagonal data.
    fn shifted_matvec(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.n as usize;
        (0..n)
            .map(|i| {
                let mut acc = -Rational::from(&self.a * &v[i]);
                if i == 0 {
                    acc -= Rational::from(&self.b[0] * &v[0]);
                } else {
                    acc -= Rational::from(&self.b[i] * &v[i - 1]);
                }
                if i + 1 < n {
                    acc += &v[i + 1];
                }
                acc
            })
            .collect()
    }
}

fn validate(n: u32, a_is_zero: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if a_is_zero {
        return Err(Error::ZeroEigenvalue);
    }
    Ok(())
}

pub fn build_schwarz(n: u32, a: &Rational) -> Result<SchwarzSpec> {
    SchwarzSpec::new(n, a.clone())
}

/// The similar matrix `a * T` with `T[0][0] = n`, superdiagonal
/// `(n-k)/(2k-1)` and subdiagonal `-(n+k)/(2k+1)` for `k = 1..n-1`.
pub fn build_scaled(n: u32, a: &Rational) -> Result<RatMatrix> {
    validate(n, *a == 0)?;
    let n_us = n as usize;
    let mut m = RatMatrix::zeros(n_us, n_us);
    m[(0, 0)] = Rational::from(a * n);
    for k in 1..n_us {
        let (ni, ki) = (n as i64, k as i64);
        m[(k - 1, k)] = a * Rational::from((ni - ki, 2 * ki - 1));
        m[(k, k - 1)] = a * Rational::from((-(ni + ki), 2 * ki + 1));
    }
    Ok(m)
}

/// Monic polynomials `P_0, ..., P_n` for a given `(n, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySequence {
    n: u32,
    a: Rational,
    entries: Vec<RatPoly>,
}

impl PolySequence {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn get(&self, k: usize) -> &RatPoly {
        &self.entries[k]
    }

    /// `P_n`, the characteristic polynomial of the full matrix.
    pub fn last(&self) -> &RatPoly {
        self.entries.last().expect("sequence always holds P_0")
    }

    pub fn entries(&self) -> &[RatPoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub index: usize,
    pub found: Rational,
    pub expected: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApotencyReport {
    pub n: u32,
    pub a: Rational,
    /// Lowest-degree coefficient where `P_n` and `(z-a)^n` differ.
    pub witness: Option<CoefficientMismatch>,
}

impl ApotencyReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenChainReport {
    /// `vectors[k]` is `u_k`.
    pub vectors: Vec<Vec<Rational>>,
    /// `J u(z) = z u(z) - P_n(z) e_n` as an identity of polynomial vectors.
    pub identity_holds: bool,
    /// `residuals[k]` is the max-norm of `(J - aI) u_k - k u_{k-1}`.
    pub residuals: Vec<Rational>,
}

impl EigenChainReport {
    pub fn holds(&self) -> bool {
        self.identity_holds && self.residuals.iter().all(|r| *r == 0)
    }
}

/// Splits `p` of degree `n` into `Q = p - q` and `q = (p(z) - (-1)^n p(-z)) / 2`.
pub fn parity_split(p: &RatPoly, n: u32) -> (RatPoly, RatPoly) {
    let (even, odd) = p.even_odd();
    // q is the odd part for even n and the even part for odd n
    let q = if n.is_multiple_of(2) { odd } else { even };
    let big_q = p - &q;
    (big_q, q)
}

/// `-sum_j binomial(n, 2j+1) a^{2j+1} z^{n-2j-1}`, the closed form of `q` for `p = (z-a)^n`.
pub fn q_closed_form(n: u32, a: &Rational) -> RatPoly {
    let mut coeffs = vec![Rational::new(); n as usize];
    let mut j = 0u32;
    while 2 * j < n {
        let c = rational_pow(a, (2 * j + 1) as i64) * binomial(n as i64, (2 * j + 1) as i64);
        coeffs[(n - 2 * j - 1) as usize] = -c;
        j += 1;
    }
    RatPoly::from_coeffs(coeffs)
}

/// Complex-eigenvalue counterpart of [`SchwarzSpec`], evaluated at a fixed precision.
#[derive(Clone, Debug)]
pub struct ComplexSchwarzSpec {
    n: u32,
    a: Complex,
    b: Vec<Complex>,
    prec: Precision,
}

impl ComplexSchwarzSpec {
    pub fn new(n: u32, a: Complex, prec: Precision) -> Result<Self> {
        validate(n, a.is_zero())?;
        let a = Complex::with_val(prec.bits(), a);
        let a2 = Complex::with_val(prec.bits(), a.square_ref());
        let b = (0..n)
            .map(|m| {
                if m == 0 {
                    -Complex::with_val(prec.bits(), &a * n)
                } else {
                    let (n2, m2) = (n as i64 * n as i64, m as i64 * m as i64);
                    Complex::with_val(prec.bits(), &a2 * Rational::from((n2 - m2, 4 * m2 - 1)))
                }
            })
            .collect();
        Ok(Self { n, a, b, prec })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Complex {
        &self.a
    }

    pub fn b(&self) -> &[Complex] {
        &self.b
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// `P_k` from the exact `a = 1` polynomial via `coeff_i(P_k; a) = a^{k-i} coeff_i(P_k; 1)`.
    pub fn charpoly_scaled(&self, k: usize) -> ComplexPoly {
        let unit = SchwarzSpec::new(self.n, Rational::from(1)).expect("n >= 1 checked");
        ComplexPoly::scaled_by(&unit.charpoly(k), &self.a, self.prec)
    }

    /// `P_0, ..., P_n` by running the recurrence in floating complex arithmetic.
    pub fn charpoly_sequence_direct(&self) -> Vec<ComplexPoly> {
        let bits = self.prec.bits();
        let one = Complex::with_val(bits, (1, 0));
        let mut seq: Vec<Vec<Complex>> = vec![vec![one.clone()], vec![self.b[0].clone(), one]];
        for k in 1..self.n as usize {
            let mut next: Vec<Complex> = std::iter::once(Complex::new(bits)).chain(seq[k].iter().cloned()).collect();
            for (i, c) in seq[k - 1].iter().enumerate() {
                next[i] += Complex::with_val(bits, c * &self.b[k]);
            }
            seq.push(next);
        }
        seq.into_iter().map(|c| ComplexPoly::from_coeffs(c, self.prec)).collect()
    }

    /// Largest coefficient deviation of the directly recurred `P_n` from `(z-a)^n`,
    /// and whether it lies within `tol` times the coefficient scale.
    pub fn verify_apotent(&self, tol: f64) -> (bool, rug::Float) {
        let bits = self.prec.bits();
        let direct = self.charpoly_sequence_direct().pop().expect("nonempty");
        let n = self.n as usize;
        let minus_a = Complex::with_val(bits + 64, -&self.a);
        let mut power = Complex::with_val(bits + 64, (1, 0));
        let mut expected = vec![Complex::new(bits); n + 1];
        for j in 0..=n {
            expected[n - j] = Complex::with_val(bits, &power * binomial(n as i64, j as i64));
            power *= &minus_a;
        }
        let expected = ComplexPoly::from_coeffs(expected, self.prec);
        let scale = expected.abs_coeff_sum();
        let dev = direct.coeff_distance(&expected);
        let ok = dev <= Rational::from_f64(tol).expect("finite tolerance") * scale;
        (ok, dev)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn coefficients_for_small_orders() {
        assert_eq!(SchwarzSpec::new(2, r(1, 1)).unwrap().b(), &[r(-2, 1), r(1, 1)]);
        assert_eq!(SchwarzSpec::new(3, r(1, 1)).unwrap().b(), &[r(-3, 1), r(8, 3), r(1, 3)]);
        let m = SchwarzSpec::new(4, r(-1, 1)).unwrap().to_dense();
        assert_eq!(m[(0, 0)], -4);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(SchwarzSpec::new(0, r(1, 1)), Err(Error::ZeroOrder)));
        assert!(matches!(SchwarzSpec::new(3, r(0, 1)), Err(Error::ZeroEigenvalue)));
        assert!(build_scaled(2, &r(0, 1)).is_err());
        assert!(SchwarzSpec::with_coefficients(2, r(1, 1), vec![r(1, 1)]).is_err());
    }

    #[test]
    fn scaled_matrix_entries() {
        let m = build_scaled(2, &r(1, 1)).unwrap();
        assert_eq!(m[(0, 1)], 1);
        assert_eq!(m[(1, 0)], -1);
        assert_eq!(build_scaled(1, &r(5, 1)).unwrap()[(0, 0)], 5);
        for n in 1..=7 {
            for a in [r(1, 1), r(-2, 7), r(3, 2)] {
                let m = build_scaled(n, &a).unwrap();
                assert_eq!(m.charpoly(), RatPoly::linear_power(&a, n), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn dense_charpoly_agrees_with_recurrence() {
        for n in 1..=6 {
            let spec = SchwarzSpec::new(n, r(-2, 7)).unwrap();
            let seq = spec.charpoly_sequence();
            for k in 0..=n as usize {
                assert_eq!(spec.leading_block(k).charpoly(), *seq.get(k));
            }
        }
    }

    #[test]
    fn sequence_examples() {
        let s2 = SchwarzSpec::new(2, r(1, 1)).unwrap().charpoly_sequence();
        assert_eq!(*s2.get(2), RatPoly::from_ints(&[1, -2, 1]));
        let s3 = SchwarzSpec::new(3, r(1, 1)).unwrap().charpoly_sequence();
        assert_eq!(*s3.get(3), RatPoly::from_ints(&[-1, 3, -3, 1]));
        let a = r(7, 5);
        let s1 = SchwarzSpec::new(1, a.clone()).unwrap().charpoly_sequence();
        assert_eq!(*s1.get(1), RatPoly::from_coeffs(vec![-a, r(1, 1)]));
        for (k, p) in s3.entries().iter().enumerate() {
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(k));
        }
    }

    #[test]
    fn apotency_and_tamper_detection() {
        assert!(SchwarzSpec::new(3, r(1, 1)).unwrap().verify_apotent().holds());
        let spec = SchwarzSpec::new(2, r(-1, 1)).unwrap();
        assert_eq!(spec.b(), &[r(2, 1), r(1, 1)]);
        assert!(spec.verify_apotent().holds());

        let good = SchwarzSpec::new(2, r(1, 1)).unwrap();
        let mut b = good.b().to_vec();
        b[1] += 1;
        let bad = SchwarzSpec::with_coefficients(2, r(1, 1), b).unwrap();
        let report = bad.verify_apotent();
        assert!(!report.holds());
        let w = report.witness.unwrap();
        assert_eq!(w.index, 0);
        assert_eq!(w.found, 2);
        assert_eq!(w.expected, 1);
    }

    #[test]
    fn scaling_law() {
        let n = 9;
        let unit = SchwarzSpec::new(n, r(1, 1)).unwrap().charpoly_sequence();
        for a in [r(-1, 1), r(5, 3), r(-2, 7)] {
            let seq = SchwarzSpec::new(n, a.clone()).unwrap().charpoly_sequence();
            for k in 0..=n as usize {
                for i in 0..=k {
                    let scaled = rational_pow(&a, (k - i) as i64) * unit.get(k).coeff(i);
                    assert_eq!(seq.get(k).coeff(i), scaled);
                }
            }
        }
    }

    #[test]
    fn parity_split_examples() {
        let (big_q, q) = parity_split(&RatPoly::from_ints(&[1, -2, 1]), 2);
        assert_eq!(q, RatPoly::from_ints(&[0, -2]));
        assert_eq!(big_q, RatPoly::from_ints(&[1, 0, 1]));
        let (_, q) = parity_split(&RatPoly::from_ints(&[-1, 3, -3, 1]), 3);
        assert_eq!(q, RatPoly::from_ints(&[-1, 0, -3]));
        let a = r(4, 9);
        let (_, q) = parity_split(&RatPoly::linear_power(&a, 1), 1);
        assert_eq!(q, RatPoly::constant(-a));
        for n in 1..=12 {
            for a in [r(1, 1), r(-2, 7)] {
                let p = RatPoly::linear_power(&a, n);
                let (big_q, q) = parity_split(&p, n);
                assert_eq!(q, q_closed_form(n, &a));
                assert_eq!(&big_q + &q, p);
                // q has the parity opposite to n
                assert_eq!(q.reflect(), if n % 2 == 1 { q.clone() } else { -&q });
                // q / b_0 is the characteristic polynomial of J_n with its first row and column removed
                let spec = SchwarzSpec::new(n, a.clone()).unwrap();
                let tail = spec.to_dense().minor(0, 0).charpoly();
                assert_eq!(q, tail.scale(&spec.b()[0]));
            }
        }
    }

    #[test]
    fn eigenvector_chain_examples() {
        let spec = SchwarzSpec::new(2, r(1, 1)).unwrap();
        let rep = spec.eigvector_chain();
        assert_eq!(rep.vectors[0], vec![r(1, 1), r(-1, 1)]);
        assert_eq!(rep.vectors[1], vec![r(0, 1), r(1, 1)]);
        assert!(rep.holds());
        let j = spec.to_dense();
        assert_eq!(j.mul_vec(&rep.vectors[0]), rep.vectors[0]);
        for n in 1..=10 {
            let rep = SchwarzSpec::new(n, r(-2, 7)).unwrap().eigvector_chain();
            assert!(rep.holds(), "n={n}");
            assert_eq!(rep.vectors[0][0], 1);
        }
    }

    #[test]
    fn tampered_chain_fails() {
        let good = SchwarzSpec::new(4, r(1, 1)).unwrap();
        let mut b = good.b().to_vec();
        b[2] += r(1, 5);
        let rep = SchwarzSpec::with_coefficients(4, r(1, 1), b).unwrap().eigvector_chain();
        assert!(!rep.holds());
    }

    #[test]
    fn complex_paths_agree() {
        let prec = Precision::new(192).unwrap();
        let a = Complex::with_val(192, (0.6, -0.8));
        let spec = ComplexSchwarzSpec::new(12, a, prec).unwrap();
        let direct = spec.charpoly_sequence_direct();
        for k in 0..=12 {
            let d = direct[k].coeff_distance(&spec.charpoly_scaled(k));
            assert!(d < 1e-45, "k={k} d={d}");
        }
        let (ok, dev) = spec.verify_apotent(1e-40);
        assert!(ok, "dev={dev}");
        assert!(ComplexSchwarzSpec::new(3, Complex::new(64), Precision::new(64).unwrap()).is_err());
    }
}
