//! Monic Bessel polynomials as the `a = -1/n`, `n -> infinity` limit of `P_k`.

use rug::float::Constant;
use rug::{Complex, Float, Rational};

use crate::exact::{Precision, RatPoly};
use crate::orthopoly::weight_ift_series;
use crate::schwarz::SchwarzSpec;
use crate::{Error, Result};

/// `B_0, ..., B_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BesselSequence {
    entries: Vec<RatPoly>,
}

impl BesselSequence {
    pub fn get(&self, k: usize) -> &RatPoly {
        &self.entries[k]
    }

    pub fn entries(&self) -> &[RatPoly] {
        &self.entries
    }

    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }
}

/// The recurrence coefficient `1/(4k^2 - 1)` of the Bessel family.
pub fn bessel_coefficient(k: u32) -> Rational {
    let k2 = k as i64 * k as i64;
    Rational::from((1, 4 * k2 - 1))
}

/// `B_0 = 1`, `B_1 = z + 1`, `B_{k+1} = z B_k + B_{k-1} / (4k^2 - 1)`.
pub fn bessel_sequence(max_k: u32) -> BesselSequence {
    let mut entries = vec![RatPoly::one()];
    if max_k >= 1 {
        entries.push(RatPoly::from_ints(&[1, 1]));
    }
    for k in 1..max_k as usize {
        let next = &entries[k].shift(1) + &entries[k - 1].scale(&bessel_coefficient(k as u32));
        entries.push(next);
    }
    BesselSequence { entries }
}

/// `P_k` at `a = -1/n`.
pub fn p_at_reciprocal(k: u32, n: u32) -> Result<RatPoly> {
    if k > n {
        return Err(Error::OutOfRange { index: k as usize, reason: format!("degree must not exceed n = {n}") });
    }
    let spec = SchwarzSpec::new(n, Rational::from((-1, n as i64)))?;
    Ok(spec.charpoly(k as usize))
}

/// `max_i |coeff_i(P_k; a = -1/n) - coeff_i(B_k)|`.
pub fn compare_to_bessel(k: u32, n: u32) -> Result<Rational> {
    let p = p_at_reciprocal(k, n)?;
    let b = bessel_sequence(k);
    Ok(p.coeff_distance(b.get(k as usize)))
}

/// `-(1/2pi) sum_{j < terms} 2^{j+1} (it)^j / (j! (j+1)!)`.
pub fn bessel_weight_series(t: &Complex, terms: u32, prec: Precision) -> Result<Complex> {
    if terms == 0 {
        return Err(Error::InvalidArgument("series needs at least one term".into()));
    }
    let bits = prec.bits() + 64;
    let it = Complex::with_val(bits, t * Complex::with_val(bits, (0, 1)));
    // running value of 2^{j+1} (it)^j / (j! (j+1)!)
    let mut term = Complex::with_val(bits, (2, 0));
    let mut sum = Complex::new(bits);
    for j in 0..terms {
        sum += &term;
        term *= &it;
        term *= 2u32;
        term /= (j + 1) * (j + 2);
    }
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    Ok(Complex::with_val(prec.bits(), -sum / two_pi))
}

/// Moment series of the weight at `a = -1/n` against the Bessel weight series.
#[derive(Clone, Debug)]
pub struct LimitGap {
    pub n: u32,
    pub t: Complex,
    /// `(1/2pi) sum s_m (-it)^m / m!` at `a = -1/n`.
    pub moment_series: Complex,
    pub bessel_series: Complex,
    /// `moment_series / bessel_series`; tends to `-1/2` rather than 1.
    pub ratio: Complex,
}

/// Evaluates both series with `terms` terms. The two do not coincide in the
/// limit; the gap is reported, never asserted.
pub fn limit_gap(n: u32, t: &Complex, terms: u32, prec: Precision) -> Result<LimitGap> {
    let a = Complex::with_val(prec.bits(), (Rational::from((-1, n as i64)), 0));
    let moment_series = weight_ift_series(n, &a, t, terms, prec)?;
    let bessel_series = bessel_weight_series(t, terms, prec)?;
    let ratio = Complex::with_val(prec.bits(), &moment_series / &bessel_series);
    Ok(LimitGap { n, t: t.clone(), moment_series, bessel_series, ratio })
}
