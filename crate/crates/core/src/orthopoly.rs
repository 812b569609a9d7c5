//! `P_0, ..., P_{n-1}` as orthogonal polynomials.
//!
//! The functional is `L(f) = (1/(n-1)!) d^{n-1}[f q]/dx^{n-1}` at `x = a`, with
//! `q` the parity part of `(z-a)^n`. Everything on the exact path is polynomial
//! algebra over the rationals; floating point only enters through the contour
//! quadrature and the inverse Fourier transform.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::exact::{
    binomial, double_factorial, factorial, hyp2f1_terminating, hyp2f1_terminating_poly, pochhammer_int,
    rational_pow, ComplexPoly, Precision, RatMatrix, RatPoly,
};
use crate::hankel::moment_hankel_matrix;
use crate::moments::{alpha_vector, moment_kernel, AlphaVector};
use crate::schwarz::{parity_split, PolySequence, SchwarzSpec};
use crate::{Error, Result};

/// `P_0, ..., P_n` from `P_{k+1} = z P_k + a^2 (n^2-k^2)/((2k-1)(2k+1)) P_{k-1}`, `P_1 = z - an`.
pub fn p_sequence(n: u32, a: &Rational) -> Result<PolySequence> {
    Ok(SchwarzSpec::new(n, a.clone())?.charpoly_sequence())
}

fn check_degree(n: u32, k: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if k > n {
        return Err(Error::OutOfRange { index: k as usize, reason: format!("degree must not exceed n = {n}") });
    }
    Ok(())
}

/// `(-2)^k (n+1)_k / (k+1)_k`.
fn hyp_prefactor(n: u32, k: u32) -> Rational {
    let v = Rational::from((pochhammer_int(n as i64 + 1, k), pochhammer_int(k as i64 + 1, k))) << k;
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `P_k(z)` at `a = 1` as `(-2)^k (n+1)_k/(k+1)_k 2F1(-k, k+1; n+1; (1+z)/2)`.
pub fn p_explicit_2f1(n: u32, k: u32, z: &Rational) -> Result<Rational> {
    check_degree(n, k)?;
    let x = Rational::from(z + 1u32) / 2u32;
    let f = hyp2f1_terminating(-(k as i32), &Rational::from(k + 1), &Rational::from(n + 1), &x)?;
    Ok(hyp_prefactor(n, k) * f)
}

/// The same representation as a polynomial, moved to general `a` with
/// `P_k(z; a) = a^k P_k(z/a; 1)`.
pub fn p_explicit_2f1_poly(n: u32, k: u32, a: &Rational) -> Result<RatPoly> {
    check_degree(n, k)?;
    if *a == 0 {
        return Err(Error::ZeroEigenvalue);
    }
    let half = Rational::from((1, 2));
    let x = RatPoly::from_coeffs(vec![half.clone(), half]);
    let unit = hyp2f1_terminating_poly(-(k as i32), &Rational::from(k + 1), &Rational::from(n + 1), &x)?
        .scale(&hyp_prefactor(n, k));
    Ok(unit.dilate(&Rational::from(a.recip_ref())).scale(&rational_pow(a, k as i64)))
}

/// Exact division by `(z + 1)^e`; `None` if a remainder is left.
fn divide_by_one_plus_z(p: &RatPoly, e: u32) -> Option<RatPoly> {
    let mut coeffs = p.coeffs().to_vec();
    for _ in 0..e {
        if coeffs.is_empty() {
            return Some(RatPoly::zero());
        }
        // synthetic division by (z - (-1))
        let mut quot = vec![Rational::new(); coeffs.len() - 1];
        let mut carry = Rational::new();
        for i in (0..coeffs.len()).rev() {
            let v = Rational::from(&coeffs[i] - &carry);
            if i == 0 {
                if v != 0 {
                    return None;
                }
            } else {
                quot[i - 1] = v.clone();
                carry = v;
            }
        }
        coeffs = quot;
    }
    Some(RatPoly::from_coeffs(coeffs))
}

/// Classical Jacobi Rodrigues form with parameters `(-n, n)` at `a = 1`:
/// `(-1)^k/(k+1)_k ((1-z)/(1+z))^n d^k/dz^k [(1-z)^{k-n} (1+z)^{n+k}]`.
///
/// The derivative of `N/(1-z)^e` is `(N'(1-z) + eN)/(1-z)^{e+1}`, so after `k`
/// steps the `(1-z)` powers cancel and the result is `N_k / (1+z)^n`.
pub fn rodrigues_classical(n: u32, k: u32) -> Result<RatPoly> {
    check_degree(n, k)?;
    let one_minus_z = RatPoly::from_ints(&[1, -1]);
    let mut num = RatPoly::linear_power(&Rational::from(-1), n + k);
    let mut e = n - k;
    for _ in 0..k {
        num = &(&num.derivative() * &one_minus_z) + &num.scale(&Rational::from(e));
        e += 1;
    }
    let quot = divide_by_one_plus_z(&num, n)
        .ok_or_else(|| Error::InvalidArgument(format!("Rodrigues numerator not divisible by (1+z)^{n}")))?;
    let c = Rational::from((1, pochhammer_int(k as i64 + 1, k)));
    Ok(quot.scale(&if k % 2 == 1 { -c } else { c }))
}

/// The variant with exponent `n - k` on `(1 - z)`, evaluated at a point:
/// `(-1)^k/(k+1)_k ((1-z)/(1+z))^n d^k/dz^k [(1-z)^{n-k} (1+z)^{n+k}]`.
/// Kept to document that it does not reproduce `P_k` (already at `k = 1, n = 2`).
pub fn rodrigues_variant_value(n: u32, k: u32, z: &Rational) -> Result<Rational> {
    check_degree(n, k)?;
    if *z == -1 {
        return Err(Error::InvalidArgument("z = -1 is a pole".into()));
    }
    let base = &RatPoly::from_ints(&[1, -1]).pow(n - k) * &RatPoly::linear_power(&Rational::from(-1), n + k);
    let d = base.nth_derivative(k as usize).eval(z);
    let ratio = (1 - z.clone()) / (1 + z.clone());
    let c = Rational::from((1, pochhammer_int(k as i64 + 1, k)));
    let v = rational_pow(&ratio, n as i64) * d * c;
    Ok(if k % 2 == 1 { -v } else { v })
}

/// `(1-z^2) P_k'' + 2(n-z) P_k' + k(k+1) P_k` for `a = 1`; the zero polynomial.
pub fn ode_residual(n: u32, k: u32) -> Result<RatPoly> {
    check_degree(n, k)?;
    let seq = p_sequence(n, &Rational::from(1))?;
    let p = seq.get(k as usize);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let one_minus_z2 = RatPoly::from_ints(&[1, 0, -1]);
    let two_n_minus_z = RatPoly::from_coeffs(vec![Rational::from(2 * n), Rational::from(-2)]);
    let sum = &(&(&one_minus_z2 * &d2) + &(&two_n_minus_z * &d1)) + &p.scale(&Rational::from(k * (k + 1)));
    Ok(sum)
}

/// Auxiliary families at `a = 1` with `P_k = f_k - n g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgFamilies {
    pub n: u32,
    /// `f_0, ..., f_n`.
    pub f: Vec<RatPoly>,
    /// `g_0, ..., g_n`.
    pub g: Vec<RatPoly>,
}

/// `f_{k+1} = z f_k + (n^2-k^2)/(4k^2-1) f_{k-1}` from `f_0 = 1`, `f_1 = z`,
/// and the same recurrence for `g` from `g_0 = 0`, `g_1 = 1`.
pub fn fg_families(n: u32) -> Result<FgFamilies> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let run = |p0: RatPoly, p1: RatPoly| {
        let mut out = vec![p0, p1];
        for k in 1..n as usize {
            let (n2, k2) = (n as i64 * n as i64, k as i64 * k as i64);
            let c = Rational::from((n2 - k2, 4 * k2 - 1));
            let next = &out[k].shift(1) + &out[k - 1].scale(&c);
            out.push(next);
        }
        out
    };
    Ok(FgFamilies { n, f: run(RatPoly::one(), RatPoly::z()), g: run(RatPoly::zero(), RatPoly::one()) })
}

/// Which of the family identities hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FgCheck {
    pub decomposition: bool,
    pub parity_forms: bool,
    pub endpoint: bool,
}

impl FgCheck {
    pub fn holds(&self) -> bool {
        self.decomposition && self.parity_forms && self.endpoint
    }
}

impl FgFamilies {
    /// `P_k = f_k - n g_k`, the closed parity forms, and `f_n = Q`, `-n g_n = q`.
    pub fn check(&self) -> FgCheck {
        let n = self.n;
        let seq = p_sequence(n, &Rational::from(1)).expect("n >= 1");
        let nr = Rational::from(n);
        let mut decomposition = true;
        let mut parity_forms = true;
        for k in 0..=n as usize {
            let p = seq.get(k);
            if *p != &self.f[k] - &self.g[k].scale(&nr) {
                decomposition = false;
            }
            let signed_reflect = if k % 2 == 0 { p.reflect() } else { -&p.reflect() };
            let f = (&signed_reflect + p).scale(&Rational::from((1, 2)));
            let g = (&signed_reflect - p).scale(&Rational::from((1, 2 * n as i64)));
            if f != self.f[k] || g != self.g[k] {
                parity_forms = false;
            }
        }
        let (big_q, q) = parity_split(seq.last(), n);
        let endpoint = self.f[n as usize] == big_q && self.g[n as usize].scale(&-nr) == q;
        FgCheck { decomposition, parity_forms, endpoint }
    }
}

/// The functional `L_n^a` for rational `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalSpec {
    n: u32,
    a: Rational,
    q: RatPoly,
    alphas: AlphaVector,
}

impl FunctionalSpec {
    pub fn new(n: u32, a: &Rational) -> Result<Self> {
        let alphas = alpha_vector(n, a)?;
        let (_, q) = parity_split(&RatPoly::linear_power(a, n), n);
        Ok(Self { n, a: a.clone(), q, alphas })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn q(&self) -> &RatPoly {
        &self.q
    }

    /// `(1/(n-1)!) d^{n-1}[f q]/dx^{n-1}` at `a`.
    pub fn eval(&self, f: &RatPoly) -> Rational {
        let prod = f * &self.q;
        prod.nth_derivative(self.n as usize - 1).eval(&self.a) / factorial(self.n - 1)
    }

    /// `sum_k f^{(k-1)}(a) alpha_k / (k-1)!`.
    pub fn eval_residues(&self, f: &RatPoly) -> Rational {
        (1..=self.n as usize).fold(Rational::new(), |acc, k| acc + f.taylor_coeff(&self.a, k - 1) * self.alphas.get(k))
    }

    /// Contour form of the functional; see [`functional_contour`].
    pub fn contour(&self, f: &RatPoly, nodes: usize, prec: Precision) -> Result<Complex> {
        Ok(self.contour_rule(nodes, prec)?.apply(&ComplexPoly::from_ratpoly(f, prec)))
    }

    pub fn contour_rule(&self, nodes: usize, prec: Precision) -> Result<ContourRule> {
        ContourRule::new(self.n, &Complex::with_val(prec.bits(), (&self.a, 0)), nodes, prec)
    }
}

/// `(i/4pi) \oint_{|z-a| = 2|a|} f(z) ((z+a)/(z-a))^n dz` by the trapezoidal
/// rule with `nodes` equally spaced points, at the precision of `f`.
///
/// On this circle the integrand is a trigonometric polynomial of degree
/// `deg f + n + 1`, so the rule is exact up to rounding once `nodes` exceeds it.
pub fn functional_contour(n: u32, a: &Complex, f: &ComplexPoly, nodes: usize) -> Result<Complex> {
    Ok(ContourRule::new(n, a, nodes, f.precision())?.apply(f))
}

/// Nodes and weights of the trapezoidal rule behind [`functional_contour`],
/// reusable across many integrands with the same `(n, a)`.
#[derive(Clone, Debug)]
pub struct ContourRule {
    prec: Precision,
    nodes: Vec<Complex>,
    /// `-(r / 2N) ((z+a)/(z-a))^n e^{i theta}` at each node.
    weights: Vec<Complex>,
}

impl ContourRule {
    pub fn new(n: u32, a: &Complex, nodes: usize, prec: Precision) -> Result<Self> {
        if nodes < 64 {
            return Err(Error::InvalidArgument(format!("contour quadrature needs at least 64 nodes, got {nodes}")));
        }
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if a.is_zero() {
            return Err(Error::ZeroEigenvalue);
        }
        let bits = prec.bits() + 32;
        let a = Complex::with_val(bits, a);
        let radius = Float::with_val(bits, a.abs_ref()) * 2u32;
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let scale = -Float::with_val(bits, &radius / (2 * nodes as u64));
        let mut zs = Vec::with_capacity(nodes);
        let mut weights = Vec::with_capacity(nodes);
        for j in 0..nodes {
            let theta = Float::with_val(bits, &two_pi * j as u64) / nodes as u64;
            let (sin, cos) = theta.sin_cos(Float::new(bits));
            let unit = Complex::with_val(bits, (cos, sin));
            let z = Complex::with_val(bits, &a + Complex::with_val(bits, &unit * &radius));
            let w = Complex::with_val(bits, &z + &a) / Complex::with_val(bits, &z - &a);
            weights.push(w.pow(n) * unit * &scale);
            zs.push(z);
        }
        Ok(Self { prec, nodes: zs, weights })
    }

    pub fn apply(&self, f: &ComplexPoly) -> Complex {
        let bits = self.prec.bits() + 32;
        let mut sum = Complex::new(bits);
        for (z, w) in self.nodes.iter().zip(&self.weights) {
            sum += f.eval(z) * w;
        }
        Complex::with_val(self.prec.bits(), sum)
    }
}

/// `G[i][j] = L(P_i P_j)` for `0 <= i, j <= n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: u32,
    pub a: Rational,
    pub entries: RatMatrix,
}

impl GramMatrix {
    pub fn is_diagonal(&self) -> bool {
        let k = self.entries.rows();
        (0..k).all(|i| (0..k).all(|j| i == j || self.entries[(i, j)] == 0))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.entries.rows()).map(|i| self.entries[(i, i)].clone()).collect()
    }
}

pub fn gram_matrix(n: u32, a: &Rational) -> Result<GramMatrix> {
    let spec = FunctionalSpec::new(n, a)?;
    let seq = p_sequence(n, a)?;
    let k = n as usize;
    let mut entries = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = spec.eval(&(seq.get(i) * seq.get(j)));
            entries[(j, i)] = v.clone();
            entries[(i, j)] = v;
        }
    }
    Ok(GramMatrix { n, a: a.clone(), entries })
}

/// Four closed forms of `C_m = L(P_m^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormForms {
    /// `b_0 prod_{k=1}^{m} (-b_k)`.
    pub product: Rational,
    /// `(-1)^{m+1} a^{2m+1} n prod_{k=1}^{m} (n^2-k^2)/(4k^2-1)`.
    pub expanded: Rational,
    /// `(-1)^{m+1} a^{2m+1} binomial(n+m, 2m+1) (2m)!!/(2m-1)!!`.
    pub binomial: Rational,
    /// `(-1)^{m+1} a^{2m+1} sqrt(pi) binomial(n+m, 2m+1) Gamma(m+1)/Gamma(m+1/2)`
    /// with `sqrt(pi) Gamma(m+1)/Gamma(m+1/2) = 2^m m!/(2m-1)!!`.
    pub gamma: Rational,
}

impl NormForms {
    pub fn agree(&self) -> bool {
        self.product == self.expanded && self.product == self.binomial && self.product == self.gamma
    }
}

pub fn c_norm(n: u32, a: &Rational, m: u32) -> Result<NormForms> {
    if m >= n {
        return Err(Error::OutOfRange { index: m as usize, reason: format!("norm index must be below n = {n}") });
    }
    let spec = SchwarzSpec::new(n, a.clone())?;
    let product = spec.b()[1..=m as usize].iter().fold(spec.b()[0].clone(), |acc, b| acc * Rational::from(-b));

    let sign_pow = rational_pow(a, 2 * m as i64 + 1);
    let signed = if m % 2 == 1 { sign_pow } else { -sign_pow };
    let (ni, mi) = (n as i64, m as i64);
    let expanded = (1..=mi).fold(Rational::from(&signed * n), |acc, k| acc * Rational::from((ni * ni - k * k, 4 * k * k - 1)));
    let bin = binomial(ni + mi, 2 * mi + 1);
    let binomial_form = Rational::from(&signed * &bin) * Rational::from((double_factorial(2 * mi), double_factorial(2 * mi - 1)));
    let gamma = Rational::from(&signed * bin) * Rational::from((factorial(m) << m, double_factorial(2 * mi - 1)));
    Ok(NormForms { product, expanded, binomial: binomial_form, gamma })
}

/// `C_{n-1} / ((-1)^n a^{2n-1} sqrt(pi n))`, which tends to 1 as `n` grows.
pub fn c_norm_asymptotic_ratio(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let c = c_norm(n, &Rational::from(1), n - 1)?.binomial;
    let signed = if n.is_multiple_of(2) { c } else { -c };
    Ok(signed.to_f64() / (std::f64::consts::PI * n as f64).sqrt())
}

/// `Q_m(z) = det[s_{i+j} | row 1, z, ..., z^m] / D_m`, expanded along the monomial row.
pub fn q_oracle(n: u32, a: &Rational, m: u32) -> Result<RatPoly> {
    if m == 0 || m > n {
        return Err(Error::OutOfRange { index: m as usize, reason: format!("determinant polynomial needs 1 <= m <= n = {n}") });
    }
    let mu = m as usize;
    let big = moment_hankel_matrix(n, a, m + 1)?;
    // first m rows of the (m+1)x(m+1) moment matrix, monomials in the last row
    let d = RatMatrix::from_fn(mu, mu, |i, j| big[(i, j)].clone()).det_bareiss();
    if d == 0 {
        return Err(Error::DegenerateHankel { m: mu });
    }
    let coeffs = (0..=mu)
        .map(|j| {
            let minor = RatMatrix::from_fn(mu, mu, |i, c| big[(i, if c < j { c } else { c + 1 })].clone());
            let cof = minor.det_bareiss();
            if (mu + j) % 2 == 1 {
                -cof
            } else {
                cof
            }
        })
        .collect();
    Ok(RatPoly::from_coeffs(coeffs).scale(&Rational::from(d.recip_ref())))
}

/// `L^{(1)}_d(x) = sum_{k=0}^{d} binomial(d+1, d-k) (-x)^k / k!`.
pub fn laguerre1(degree: u32) -> RatPoly {
    let d = degree as i64;
    RatPoly::from_coeffs(
        (0..=d)
            .map(|k| {
                let v = Rational::from((binomial(d + 1, d - k), factorial(k as u32)));
                if k % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect(),
    )
}

/// `(-a e^{-iat} / 2pi) L^{(1)}_{n-1}(2iat)`.
pub fn weight_ift(n: u32, a: &Complex, t: &Complex, prec: Precision) -> Result<Complex> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let bits = prec.bits() + 64;
    let i = Complex::with_val(bits, (0, 1));
    let iat = Complex::with_val(bits, &i * a) * t;
    let lag = laguerre1(n - 1).eval_complex(&Complex::with_val(bits, &iat * 2u32));
    let e = Complex::with_val(bits, -iat).exp();
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let v = -(Complex::with_val(bits, a) * e * lag) / two_pi;
    Ok(Complex::with_val(prec.bits(), v))
}

/// `(1/2pi) sum_{m < terms} s_m (-it)^m / m!`.
pub fn weight_ift_series(n: u32, a: &Complex, t: &Complex, terms: u32, prec: Precision) -> Result<Complex> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let bits = prec.bits() + 64;
    let minus_it = Complex::with_val(bits, t * Complex::with_val(bits, (0, -1)));
    let a = Complex::with_val(bits, a);
    // running value of a^{m+1} (-it)^m / m!
    let mut pow = a.clone();
    let mut sum = Complex::new(bits);
    for m in 0..terms {
        sum -= Complex::with_val(bits, &pow * moment_kernel(n, m));
        pow *= &a;
        pow *= &minus_it;
        pow /= m + 1;
    }
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    Ok(Complex::with_val(prec.bits(), sum / two_pi))
}
