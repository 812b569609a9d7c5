use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

use super::{aberth_roots, AberthOptions};
use crate::exact::{ComplexPoly, Precision, RatPoly};
use crate::orthopoly::fg_families;
use crate::{Error, Result};

/// Remainder of `a` by `b` (`b` nonzero).
fn poly_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.degree().expect("nonzero divisor");
    let lead = b.leading().expect("nonzero divisor").clone();
    let mut r: Vec<Rational> = a.coeffs().to_vec();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let f = Rational::from(&r[top] / &lead);
        if f != 0 {
            for (i, c) in b.coeffs().iter().enumerate() {
                r[top - db + i] -= Rational::from(&f * c);
            }
        }
        r.pop();
        while r.last().is_some_and(|c| *c == 0) {
            r.pop();
        }
    }
    RatPoly::from_coeffs(r)
}

fn gcd_degree(a: &RatPoly, b: &RatPoly) -> usize {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    x.degree().unwrap_or(0)
}

/// Positive multiple of `p` with coprime integer coefficients.
fn primitive(p: &RatPoly) -> Vec<Integer> {
    let mut den = Integer::from(1);
    for c in p.coeffs() {
        den.lcm_mut(c.denom());
    }
    let ints: Vec<Integer> = p.coeffs().iter().map(|c| c.numer() * Integer::from(&den / c.denom()) ).collect();
    let mut g = Integer::new();
    for c in &ints {
        g.gcd_mut(c);
    }
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|c| c.div_exact(&g)).collect()
}

fn to_ratpoly(c: &[Integer]) -> RatPoly {
    RatPoly::from_coeffs(c.iter().map(Rational::from).collect())
}

/// Sign of `p(x)` using only integer arithmetic: `D^d p(N/D) = sum c_j N^j D^{d-j}`.
fn sign_at(c: &[Integer], x: &Rational) -> Ordering {
    let Some((lead, rest)) = c.split_last() else {
        return Ordering::Equal;
    };
    let (num, den) = (x.numer(), x.denom());
    let mut acc = lead.clone();
    let mut dpow = Integer::from(1);
    for cj in rest.iter().rev() {
        dpow *= den;
        acc *= num;
        acc += Integer::from(cj * &dpow);
    }
    acc.cmp0()
}

struct Sturm {
    chain: Vec<Vec<Integer>>,
}

impl Sturm {
    fn new(p: &RatPoly) -> Self {
        let mut chain = vec![primitive(p), primitive(&p.derivative())];
        while chain.last().expect("nonempty").len() > 1 {
            let n = chain.len();
            let r = -poly_rem(&to_ratpoly(&chain[n - 2]), &to_ratpoly(&chain[n - 1]));
            if r.is_zero() {
                break;
            }
            chain.push(primitive(&r));
        }
        chain.retain(|q| !q.is_empty());
        Sturm { chain }
    }

    fn changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at(&self, x: &Rational) -> usize {
        Self::changes(self.chain.iter().map(|q| sign_at(q, x)))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        Self::changes(self.chain.iter().map(|q| {
            let s = q.last().expect("nonzero").cmp0();
            if !positive && q.len() % 2 == 0 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct roots in `(lo, hi]`.
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.at(lo) - self.at(hi)
    }

    fn distinct_real(&self) -> usize {
        self.at_infinity(false) - self.at_infinity(true)
    }
}

/// Isolating intervals `(lo, hi]` for the distinct real roots of `p`, in
/// increasing order, each containing exactly one root.
pub fn real_roots_isolated(p: &RatPoly) -> Result<Vec<(Rational, Rational)>> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        Some(_) => return Ok(Vec::new()),
        None => return Err(Error::InvalidArgument("the zero polynomial has no isolated roots".into())),
    };
    let sturm = Sturm::new(p);
    let lead = p.leading().expect("nonzero").clone();
    let bound = p.coeffs()[..d]
        .iter()
        .map(|c| Rational::from(c / &lead).abs())
        .max()
        .unwrap_or_default()
        + 1u32;
    let mut out = Vec::new();
    let mut pow2 = Rational::from(1);
    while pow2 < bound {
        pow2 *= 2u32;
    }
    let mut stack = vec![(Rational::from(-&pow2), pow2)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = Rational::from(&lo + &hi) / 2u32;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Shrinks `(lo, hi]` around its single, simple root to width at most `width`.
fn refine(sturm: &Sturm, iv: &mut (Rational, Rational), width: &Rational) {
    let p = &sturm.chain[0];
    let mut s_hi = sign_at(p, &iv.1);
    if s_hi == Ordering::Equal {
        iv.0 = iv.1.clone();
        return;
    }
    // the left end may be a neighbouring root; step off it with Sturm counts
    while sign_at(p, &iv.0) == Ordering::Equal && Rational::from(&iv.1 - &iv.0) > *width {
        let mid = Rational::from(&iv.0 + &iv.1) / 2u32;
        if sturm.count(&iv.0, &mid) == 1 {
            iv.1 = mid;
            s_hi = sign_at(p, &iv.1);
            if s_hi == Ordering::Equal {
                iv.0 = iv.1.clone();
                return;
            }
        } else {
            iv.0 = mid;
        }
    }
    while Rational::from(&iv.1 - &iv.0) > *width {
        let mid = Rational::from(&iv.0 + &iv.1) / 2u32;
        let s = sign_at(p, &mid);
        if s == Ordering::Equal {
            iv.0 = mid.clone();
            iv.1 = mid;
            return;
        }
        if s == s_hi {
            iv.1 = mid;
        } else {
            iv.0 = mid;
        }
    }
}

/// Real polynomial `F` with `p(iy) = i^m F(y)` for `p` of parity `m`.
fn imaginary_axis_form(p: &RatPoly, m: usize) -> RatPoly {
    RatPoly::from_coeffs(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j % 2 != m % 2 {
                    debug_assert!(*c == 0);
                    return Rational::new();
                }
                let e = (m as i64 - j as i64) / 2;
                if e.rem_euclid(2) == 0 {
                    c.clone()
                } else {
                    Rational::from(-c)
                }
            })
            .collect(),
    )
}

/// Zeros of `f_k` and `g_k` at `a = 1`, as imaginary parts, and the verdicts on them.
#[derive(Clone, Debug)]
pub struct InterlacingReport {
    pub n: u32,
    pub k: u32,
    /// Imaginary parts of the zeros of `f_k`, increasing.
    pub f_roots: Vec<Float>,
    /// Imaginary parts of the zeros of `g_k`, increasing.
    pub g_roots: Vec<Float>,
    /// Every zero is on the imaginary axis and simple.
    pub f_real_simple: bool,
    pub g_real_simple: bool,
    /// `f_k` and `g_k` share no zero.
    pub coprime: bool,
    /// `f_1 < g_1 < f_2 < ... < g_{k-1} < f_k` along the axis.
    pub interlaced: bool,
    /// Largest `|Re z|` among zeros computed independently in the complex plane.
    pub max_real_part: Float,
    pub real_part_tolerance: Float,
}

impl InterlacingReport {
    pub fn holds(&self) -> bool {
        self.f_real_simple
            && self.g_real_simple
            && self.coprime
            && self.interlaced
            && self.max_real_part < self.real_part_tolerance
    }
}

/// Decides, exactly, whether the zeros of `f_k` and `g_k` are imaginary, simple
/// and interlacing, via Sturm sequences of the real forms on `z = iy`.
pub fn interlacing_verdict(n: u32, k: u32, prec: Precision) -> Result<InterlacingReport> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange { index: k as usize, reason: format!("k must lie in 1..={}", n.saturating_sub(1)) });
    }
    let fam = fg_families(n)?;
    let f = &fam.f[k as usize];
    let g = &fam.g[k as usize];
    let ff = imaginary_axis_form(f, k as usize);
    let gg = imaginary_axis_form(g, k as usize - 1);

    let bits = prec.bits();
    let width = Float::with_val(bits, Float::i_exp(1, -(bits as i32))).to_rational().expect("finite");
    let (sf, sg) = (Sturm::new(&ff), Sturm::new(&gg));
    let f_real_simple = sf.distinct_real() == k as usize;
    let g_real_simple = gg.degree() == Some(k as usize - 1) && sg.distinct_real() == k as usize - 1;
    let coprime = gcd_degree(&ff, &gg) == 0;

    let mut fi = real_roots_isolated(&ff)?;
    let mut gi = if gg.degree().unwrap_or(0) == 0 { Vec::new() } else { real_roots_isolated(&gg)? };

    // shrink until no f interval meets a g interval; terminates when coprime
    let mut interlaced = f_real_simple && g_real_simple && coprime;
    if interlaced {
        let mut w = Rational::from(1);
        loop {
            let overlap = fi.iter().any(|a| gi.iter().any(|b| a.0 <= b.1 && b.0 <= a.1));
            if !overlap || w < width {
                break;
            }
            w /= 2u32;
            for iv in &mut fi {
                refine(&sf, iv, &w);
            }
            for iv in &mut gi {
                refine(&sg, iv, &w);
            }
        }
        let mut merged: Vec<(bool, &Rational)> =
            fi.iter().map(|iv| (true, &iv.1)).chain(gi.iter().map(|iv| (false, &iv.1))).collect();
        merged.sort_by(|a, b| a.1.cmp(b.1));
        interlaced = merged.iter().enumerate().all(|(i, (is_f, _))| *is_f == (i % 2 == 0))
            && fi.iter().all(|a| gi.iter().all(|b| a.1 < b.0 || b.1 < a.0));
    }
    for iv in fi.iter_mut() {
        refine(&sf, iv, &width);
    }
    for iv in gi.iter_mut() {
        refine(&sg, iv, &width);
    }
    let mid = |iv: &(Rational, Rational)| Float::with_val(bits, Rational::from(&iv.0 + &iv.1) / 2u32);

    let digits = prec.decimal_digits() as i32;
    let real_part_tolerance = Float::with_val(bits, Float::u_pow_u(10, (digits - 10).max(1) as u32)).recip();
    let mut max_real_part = Float::new(bits);
    for p in [f, g] {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let rs = aberth_roots(&ComplexPoly::from_ratpoly(p, prec), &AberthOptions::default())?;
        for r in &rs.roots {
            let re = Float::with_val(bits, r.real().abs_ref());
            if re > max_real_part {
                max_real_part = re;
            }
        }
    }

    Ok(InterlacingReport {
        n,
        k,
        f_roots: fi.iter().map(mid).collect(),
        g_roots: gi.iter().map(mid).collect(),
        f_real_simple,
        g_real_simple,
        coprime,
        interlaced,
        max_real_part,
        real_part_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_isolation_of_known_roots() {
        // (y - 1)(y + 2)(y - 1/2)
        let p = &(&RatPoly::from_ints(&[-1, 1]) * &RatPoly::from_ints(&[2, 1])) * &RatPoly::from_coeffs(vec![Rational::from((-1, 2)), Rational::from(1)]);
        let iv = real_roots_isolated(&p).unwrap();
        assert_eq!(iv.len(), 3);
        for ((lo, hi), root) in iv.iter().zip([Rational::from(-2), Rational::from((1, 2)), Rational::from(1)]) {
            assert!(*lo < root && root <= *hi);
        }
        let no_real = RatPoly::from_ints(&[1, 0, 1]);
        assert!(real_roots_isolated(&no_real).unwrap().is_empty());
        assert_eq!(Sturm::new(&(&p * &p)).distinct_real(), 3);
    }

    #[test]
    fn small_cases() {
        let prec = Precision::new(256).unwrap();
        let r = interlacing_verdict(5, 1, prec).unwrap();
        assert!(r.holds());
        assert_eq!(r.f_roots.len(), 1);
        assert!(r.f_roots[0].is_zero());
        assert!(r.g_roots.is_empty());

        let r = interlacing_verdict(3, 2, prec).unwrap();
        assert!(r.holds(), "{r:?}");
        let s = Float::with_val(256, Rational::from((8, 3))).sqrt();
        assert!(Float::with_val(256, &r.f_roots[1] - &s).abs() < 1e-70);
        assert!(Float::with_val(256, &r.f_roots[0] + &s).abs() < 1e-70);
        assert!(r.g_roots[0].is_zero());

        assert!(interlacing_verdict(5, 3, prec).unwrap().holds());
        assert!(interlacing_verdict(5, 5, prec).is_err());
        assert!(interlacing_verdict(5, 0, prec).is_err());
    }

    #[test]
    fn axis_form_signs() {
        // z^2 + 8/3 at z = iy is -(y^2 - 8/3) = i^2 (y^2 - 8/3)
        let p = RatPoly::from_coeffs(vec![Rational::from((8, 3)), Rational::new(), Rational::from(1)]);
        let f = imaginary_axis_form(&p, 2);
        assert_eq!(f, RatPoly::from_coeffs(vec![Rational::from((-8, 3)), Rational::new(), Rational::from(1)]));
    }
}
