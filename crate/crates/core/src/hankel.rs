//! Hankel determinants of the moment sequence and what they determine.
//!
//! `D_m = det[s_{i+j}]_{i,j<m}` is evaluated three ways (moments, residues
//! `alpha_k`, closed form). The shifted determinant `D'_m` and the ratios of
//! consecutive `D_m` give back the recurrence coefficients of the Schwarz
//! matrix.

use rug::Rational;

use crate::exact::{binomial, factorial, pochhammer_int, rational_pow, RatMatrix};
use crate::moments::{alpha_vector, moments_upto, AlphaVector};
use crate::schwarz::subdiagonal_coefficient;
use crate::{Error, Result};

fn check_order(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::OutOfRange { index: 0, reason: "Hankel order starts at 1".into() });
    }
    Ok(())
}

/// `[s_{i+j}]_{i,j=0}^{m-1}`.
pub fn moment_hankel_matrix(n: u32, a: &Rational, m: u32) -> Result<RatMatrix> {
    check_order(m)?;
    let s = moments_upto(n, a, 2 * m - 2)?;
    Ok(RatMatrix::from_fn(m as usize, m as usize, |i, j| s.get(i + j).clone()))
}

/// `[alpha_{i+j+1}]_{i,j=0}^{m-1}` with `alpha_j = 0` past `n`.
pub fn alpha_hankel_matrix(alphas: &AlphaVector, m: u32) -> RatMatrix {
    RatMatrix::from_fn(m as usize, m as usize, |i, j| alphas.get(i + j + 1))
}

pub fn hankel_det_moments(n: u32, a: &Rational, m: u32) -> Result<Rational> {
    Ok(moment_hankel_matrix(n, a, m)?.det_bareiss())
}

pub fn hankel_det_alphas(n: u32, a: &Rational, m: u32) -> Result<Rational> {
    check_order(m)?;
    Ok(alpha_hankel_matrix(&alpha_vector(n, a)?, m).det_bareiss())
}

/// `(-1)^{m(m+1)/2} a^{m^2} 2^{m(m-1)} binomial(n,m) prod_{k<m} binomial(n+k,n-k)/binomial(m+k,m-k)`.
pub fn hankel_closed_form(n: u32, a: &Rational, m: u32) -> Result<Rational> {
    check_order(m)?;
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let (n, m) = (n as i64, m as i64);
    let bnm = binomial(n, m);
    if bnm == 0 {
        return Ok(Rational::new());
    }
    let mut v = rational_pow(a, m * m) * (bnm << (m * (m - 1)) as u32);
    for k in 0..m {
        v *= Rational::from((binomial(n + k, n - k), binomial(m + k, m - k)));
    }
    if (m * (m + 1) / 2) % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

/// `[1/(i+j-1)!]_{i,j=1}^m`.
pub fn invfactorial_matrix(m: u32) -> RatMatrix {
    RatMatrix::from_fn(m as usize, m as usize, |i, j| Rational::from((1, factorial((i + j + 1) as u32))))
}

/// `(-1)^{m(m-1)/2} / (m! prod_{k=1}^{m-1} (2k)! binomial(m+k, m-k))`.
pub fn invfactorial_det(m: u32) -> Result<Rational> {
    check_order(m)?;
    let mut den = factorial(m);
    for k in 1..m {
        den *= factorial(2 * k) * binomial((m + k) as i64, (m - k) as i64);
    }
    let v = Rational::from((1, den));
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -v } else { v })
}

/// The shifted determinant and the pieces of its residue decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedHankel {
    pub m: u32,
    /// `D'_m`: last column of the moment matrix replaced by `s_m, ..., s_{2m-1}`.
    pub value: Rational,
    /// `a n D_m`.
    pub expected: Rational,
    /// Residue Hankel determinant, equal to `D_m`.
    pub alpha_det: Rational,
    /// Residue Hankel determinant with last row `alpha_{m+1}, ..., alpha_{2m}`.
    pub alpha_shifted: Rational,
    pub a: Rational,
}

impl ShiftedHankel {
    /// `D'_m = alpha_shifted + a m alpha_det`.
    pub fn decomposition_holds(&self) -> bool {
        let rhs = Rational::from(&self.a * &self.alpha_det) * self.m + &self.alpha_shifted;
        self.value == rhs
    }

    /// `alpha_shifted = a (n - m) alpha_det`, with `n` read from `expected`.
    pub fn shifted_identity_holds(&self, n: u32) -> bool {
        let rhs = Rational::from(&self.a * &self.alpha_det) * (n as i64 - self.m as i64);
        self.alpha_shifted == rhs
    }

    pub fn holds(&self, n: u32) -> bool {
        self.value == self.expected && self.decomposition_holds() && self.shifted_identity_holds(n)
    }
}

pub fn shifted_hankel(n: u32, a: &Rational, m: u32) -> Result<ShiftedHankel> {
    check_order(m)?;
    if m > n {
        return Err(Error::OutOfRange { index: m as usize, reason: format!("shifted determinant needs m <= n = {n}") });
    }
    let s = moments_upto(n, a, 2 * m - 1)?;
    let mu = m as usize;
    let shifted = RatMatrix::from_fn(mu, mu, |i, j| {
        let idx = if j + 1 == mu { i + j + 1 } else { i + j };
        s.get(idx).clone()
    });
    let alphas = alpha_vector(n, a)?;
    let alpha_mat = alpha_hankel_matrix(&alphas, m);
    let alpha_shifted_mat = RatMatrix::from_fn(mu, mu, |i, j| {
        let idx = if i + 1 == mu { i + j + 2 } else { i + j + 1 };
        alphas.get(idx)
    });
    let d = RatMatrix::from_fn(mu, mu, |i, j| s.get(i + j).clone()).det_bareiss();
    Ok(ShiftedHankel {
        m,
        value: shifted.det_bareiss(),
        expected: Rational::from(a * n) * d,
        alpha_det: alpha_mat.det_bareiss(),
        alpha_shifted: alpha_shifted_mat.det_bareiss(),
        a: a.clone(),
    })
}

/// Moment matrix after the column operations
/// `C'_k = sum_{j<=k} (-a)^{k-j} binomial(k-1, j-1) C_j`.
pub fn lemma_column_transform(n: u32, a: &Rational, m: u32) -> Result<RatMatrix> {
    let h = moment_hankel_matrix(n, a, m)?;
    let mu = m as usize;
    let minus_a = Rational::from(-a);
    Ok(RatMatrix::from_fn(mu, mu, |l, k| {
        (0..=k).fold(Rational::new(), |acc, j| {
            let c = rational_pow(&minus_a, (k - j) as i64) * binomial(k as i64, j as i64);
            acc + c * &h[(l, j)]
        })
    }))
}

/// `v_{lk} = sum_{i<=l} a^{l-i} binomial(l-1, i-1) alpha_{i+k-1}` (1-based),
/// the matrix reached by the column operations.
pub fn lemma_intermediate_matrix(n: u32, a: &Rational, m: u32) -> Result<RatMatrix> {
    check_order(m)?;
    let alphas = alpha_vector(n, a)?;
    let mu = m as usize;
    Ok(RatMatrix::from_fn(mu, mu, |l, k| {
        (0..=l).fold(Rational::new(), |acc, i| {
            let c = rational_pow(a, (l - i) as i64) * binomial(l as i64, i as i64);
            acc + c * alphas.get(i + k + 1)
        })
    }))
}

/// `b_1..b_{m_max-1}` and `c_1..c_{m_max}` recovered from determinants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredCoefficients {
    /// `b[m-1]` is `b_m = -D_{m-1} D_{m+1} / D_m^2`.
    pub b: Vec<Rational>,
    /// `c[m-1]` is `c_m`, from `A_{1m} = -D'_m / D_m` with `c_1 = -A_11` and
    /// `c_{m+1} = A_{1m} - A_{1,m+1}`.
    pub c: Vec<Rational>,
}

/// Recovers the recurrence coefficients for `m_max <= n`.
///
/// `b_n` is not produced: `D_{n+1} = 0` would force it to zero, which says
/// nothing about the matrix since `b_n` does not occur in it.
pub fn recover_recurrence_coeffs(n: u32, a: &Rational, m_max: u32) -> Result<RecoveredCoefficients> {
    check_order(m_max)?;
    if m_max > n {
        return Err(Error::OutOfRange { index: m_max as usize, reason: format!("recovery needs m_max <= n = {n}") });
    }
    let mut d = vec![Rational::from(1)];
    for m in 1..=m_max {
        let v = hankel_det_moments(n, a, m)?;
        if v == 0 {
            return Err(Error::DegenerateHankel { m: m as usize });
        }
        d.push(v);
    }
    let b = (1..m_max as usize)
        .map(|m| -Rational::from(&d[m - 1] * &d[m + 1]) / Rational::from(d[m].square_ref()))
        .collect();
    let mut a1 = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let sh = shifted_hankel(n, a, m)?;
        a1.push(-sh.value / &d[m as usize]);
    }
    // Q_1 = z - c_1 = z + A_11
    let mut c = vec![Rational::from(-&a1[0])];
    for m in 1..m_max as usize {
        c.push(Rational::from(&a1[m - 1] - &a1[m]));
    }
    Ok(RecoveredCoefficients { b, c })
}

/// True when the sequence is neither all positive (positive-definite
/// functional) nor of the sign pattern `(-1)^m D_m > 0` (negative-definite).
pub fn is_indefinite_sign_pattern(dets: &[Rational]) -> bool {
    let all_positive = dets.iter().all(|d| *d > 0);
    let negative_definite = dets.iter().enumerate().all(|(i, d)| if i % 2 == 0 { *d < 0 } else { *d > 0 });
    !all_positive && !negative_definite
}

/// All Hankel data for one `(n, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelReport {
    pub n: u32,
    pub a: Rational,
    pub m_max: u32,
    /// `D_1..D_{m_max}` by elimination on the moment matrix.
    pub determinants: Vec<Rational>,
    /// `D_1..D_{m_max}` from the residue Hankel matrix.
    pub alpha_determinants: Vec<Rational>,
    /// `D_1..D_{m_max}` from the closed form.
    pub closed_form: Vec<Rational>,
    /// `D'_1..D'_{min(m_max, n)}`.
    pub shifted: Vec<ShiftedHankel>,
    pub recovered: RecoveredCoefficients,
}

impl HankelReport {
    pub fn build(n: u32, a: &Rational, m_max: u32) -> Result<Self> {
        check_order(m_max)?;
        let mut determinants = Vec::new();
        let mut alpha_determinants = Vec::new();
        let mut closed_form = Vec::new();
        for m in 1..=m_max {
            determinants.push(hankel_det_moments(n, a, m)?);
            alpha_determinants.push(hankel_det_alphas(n, a, m)?);
            closed_form.push(hankel_closed_form(n, a, m)?);
        }
        let top = m_max.min(n);
        let shifted = (1..=top).map(|m| shifted_hankel(n, a, m)).collect::<Result<_>>()?;
        let recovered = recover_recurrence_coeffs(n, a, top)?;
        Ok(Self { n, a: a.clone(), m_max, determinants, alpha_determinants, closed_form, shifted, recovered })
    }

    pub fn triple_agreement(&self) -> bool {
        self.determinants == self.alpha_determinants && self.determinants == self.closed_form
    }

    /// `D_m != 0` up to `n` and `D_m = 0` beyond.
    pub fn support_pattern_holds(&self) -> bool {
        self.determinants.iter().enumerate().all(|(i, d)| ((i as u32) < self.n) == (*d != 0))
    }

    pub fn shifted_hold(&self) -> bool {
        self.shifted.iter().all(|s| s.holds(self.n))
    }

    /// Recovered `b_m` match `a^2 (n^2 - m^2)/(4m^2 - 1)`, `c_1 = an`, other `c_m` vanish.
    pub fn recovery_holds(&self) -> bool {
        let b_ok = self
            .recovered
            .b
            .iter()
            .enumerate()
            .all(|(i, b)| *b == subdiagonal_coefficient(self.n, &self.a, i as u32 + 1));
        let c_ok = self.recovered.c.iter().enumerate().all(|(i, c)| {
            if i == 0 {
                *c == Rational::from(&self.a * self.n)
            } else {
                *c == 0
            }
        });
        b_ok && c_ok
    }

    pub fn holds(&self) -> bool {
        self.triple_agreement() && self.support_pattern_holds() && self.shifted_hold() && self.recovery_holds()
    }
}

/// Outcome of the three matrix identities behind the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PascalCheck {
    /// `[binomial(n, i+j-1)] = diag[(n-j)_{j+1}] [1/(i+j-1)!] diag[(n+1)_j] Pascal^{-1}`.
    pub forward: bool,
    /// `[1/(i+j-1)!] = diag[1/(m-j)_{j+1}] [binomial(m, i+j-1)] Pascal diag[1/(m+1)_j]`.
    pub reverse: bool,
    /// `[binomial(m, i+j-1)] = antidiag(1) * bidiag(1, 1)^m`.
    pub bidiagonal: bool,
    /// Pascal times its signed inverse is the identity.
    pub inverse: bool,
}

impl PascalCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.reverse && self.bidiagonal && self.inverse
    }
}

/// Upper-triangular Pascal matrix `[binomial(j, i)]_{i,j<m}`.
pub fn pascal_upper(m: usize) -> RatMatrix {
    RatMatrix::from_fn(m, m, |i, j| Rational::from(binomial(j as i64, i as i64)))
}

/// `[(-1)^{i+j} binomial(j, i)]_{i,j<m}`.
pub fn pascal_upper_inverse(m: usize) -> RatMatrix {
    RatMatrix::from_fn(m, m, |i, j| {
        let v = Rational::from(binomial(j as i64, i as i64));
        if (i + j) % 2 == 1 {
            -v
        } else {
            v
        }
    })
}

fn binomial_hankel(n: u32, m: usize) -> RatMatrix {
    RatMatrix::from_fn(m, m, |i, j| Rational::from(binomial(n as i64, (i + j + 1) as i64)))
}

/// `[binomial(n, i+j-1)]` against the product with a chosen right diagonal
/// `diag[(start)_j]`; the identity holds for `start = n + 1`.
pub fn pascal_forward_product(n: u32, m: usize, start: i64) -> (RatMatrix, RatMatrix) {
    let left = RatMatrix::diagonal((0..m).map(|j| Rational::from(pochhammer_int(n as i64 - j as i64, j as u32 + 1))).collect());
    let right = RatMatrix::diagonal((0..m).map(|j| Rational::from(pochhammer_int(start, j as u32))).collect());
    let prod = &(&(&left * &invfactorial_matrix(m as u32)) * &right) * &pascal_upper_inverse(m);
    (binomial_hankel(n, m), prod)
}

pub fn pascal_factorization_check(n: u32, m: u32) -> Result<PascalCheck> {
    check_order(m)?;
    if m > n {
        return Err(Error::OutOfRange { index: m as usize, reason: format!("factorization needs m <= n = {n}") });
    }
    let mu = m as usize;
    let (lhs, rhs) = pascal_forward_product(n, mu, n as i64 + 1);
    let forward = lhs == rhs;

    let e1 = RatMatrix::diagonal((0..mu).map(|j| Rational::from((1, pochhammer_int(m as i64 - j as i64, j as u32 + 1)))).collect());
    let e2 = RatMatrix::diagonal((0..mu).map(|j| Rational::from((1, pochhammer_int(m as i64 + 1, j as u32)))).collect());
    let lm = binomial_hankel(m, mu);
    let reverse = invfactorial_matrix(m) == &(&(&e1 * &lm) * &pascal_upper(mu)) * &e2;

    let anti = RatMatrix::from_fn(mu, mu, |i, j| Rational::from((i + j + 1 == mu) as i32));
    let bidiag = RatMatrix::from_fn(mu, mu, |i, j| Rational::from((i == j || i == j + 1) as i32));
    let bidiagonal = lm == &anti * &bidiag.pow(m);

    let inverse = &pascal_upper(mu) * &pascal_upper_inverse(mu) == RatMatrix::identity(mu);
    Ok(PascalCheck { forward, reverse, bidiagonal, inverse })
}
