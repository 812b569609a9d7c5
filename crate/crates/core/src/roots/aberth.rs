use rug::float::Constant;
use rug::{Complex, Float};

use super::{finish_rootset, RootSet, Solver};
use crate::exact::{complex_to_strings, ComplexPoly};
use crate::{Error, Result};

/// Stopping rules for [`aberth_roots`]. `None` picks a default tied to the precision.
#[derive(Clone, Debug, Default)]
pub struct AberthOptions {
    /// Relative correction below which a root is frozen; default `2^{-(bits-20)}`.
    pub tol: Option<Float>,
    /// Default `200 + 20 d`.
    pub max_iters: Option<usize>,
}

/// Coefficients of `p(w + c)` by repeated synthetic division.
fn taylor_shift(coeffs: &[Complex], c: &Complex, bits: u32) -> Vec<Complex> {
    let mut out: Vec<Complex> = coeffs.iter().map(|x| Complex::with_val(bits, x)).collect();
    let d = out.len() - 1;
    for i in 0..d {
        for j in (i..d).rev() {
            let t = Complex::with_val(bits, &out[j + 1] * c);
            out[j] += t;
        }
    }
    out
}

/// `2 max_j |q_{d-j}/q_d|^{1/j}` with the constant term halved.
fn fujiwara_bound(q: &[Complex], bits: u32) -> Float {
    let d = q.len() - 1;
    let lead = Float::with_val(bits, q[d].abs_ref());
    let mut best = Float::new(bits);
    for j in 1..=d {
        let mut v = Float::with_val(bits, q[d - j].abs_ref()) / &lead;
        if j == d {
            v /= 2u32;
        }
        if v.is_zero() {
            continue;
        }
        let r = v.root(j as u32);
        if r > best {
            best = r;
        }
    }
    best * 2u32
}

/// All roots of `p`, with multiplicity, by simultaneous Aberth–Ehrlich iteration.
///
/// The iteration runs on `p` recentred at the mean of its roots, starting from a
/// deterministically rotated circle. A root is frozen once `p` is at the rounding
/// level there or its correction drops below `tol`. Clusters are then merged.
pub fn aberth_roots(p: &ComplexPoly, opts: &AberthOptions) -> Result<RootSet> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument("polynomial must have degree at least 1".into())),
    };
    let prec = p.precision();
    let bits = prec.bits();
    let eps = prec.epsilon();
    let tol = opts
        .tol
        .clone()
        .unwrap_or_else(|| Float::with_val(bits, Float::i_exp(1, -(bits as i32 - 20))));
    let max_iters = opts.max_iters.unwrap_or(200 + 20 * d);

    let lead = p.coeffs()[d].clone();
    let monic: Vec<Complex> = p.coeffs().iter().map(|c| Complex::with_val(bits, c / &lead)).collect();
    let centre = -Complex::with_val(bits, &monic[d - 1] / d as u32);
    let q = taylor_shift(&monic, &centre, bits);
    let qpoly = ComplexPoly::from_coeffs(q.clone(), prec);

    if q[..d].iter().all(|c| c.is_zero()) {
        return Ok(finish_rootset(p, vec![centre; d], Solver::Aberth, 0));
    }

    let radius = fujiwara_bound(&q, bits);
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let mut z: Vec<Complex> = (0..d)
        .map(|j| {
            let theta = (Float::with_val(bits, &two_pi * j as u32) + 0.7f64) / d as u32;
            let (s, c) = theta.sin_cos(Float::new(bits));
            Complex::with_val(bits, (c * &radius, s * &radius))
        })
        .collect();

    let mut frozen = vec![false; d];
    let mut iterations = 0;
    let mut max_correction = Float::new(bits);
    while frozen.iter().any(|f| !f) {
        if iterations == max_iters {
            let best: Vec<Complex> = z.iter().map(|w| Complex::with_val(bits, w + &centre)).collect();
            return Err(Error::NoConvergence {
                iterations,
                max_correction: max_correction.to_string_radix(10, Some(6)),
                best: best.iter().map(|w| complex_to_strings(w, 20)).collect(),
                residuals: best
                    .iter()
                    .map(|w| super::scaled_residual(p, w).to_string_radix(10, Some(6)))
                    .collect(),
            });
        }
        iterations += 1;
        max_correction = Float::new(bits);
        for i in 0..d {
            if frozen[i] {
                continue;
            }
            let (val, der) = qpoly.eval_with_derivative(&z[i]);
            let absz = Float::with_val(bits, z[i].abs_ref());
            let floor = Float::with_val(bits, qpoly.abs_eval(&absz) * &eps) * (4 * d as u32);
            if Float::with_val(bits, val.abs_ref()) <= floor {
                frozen[i] = true;
                continue;
            }
            let mut s = Complex::new(bits);
            let mut coincident = false;
            for (j, w) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = Complex::with_val(bits, &z[i] - w);
                if diff.is_zero() {
                    coincident = true;
                    break;
                }
                s += diff.recip();
            }
            if coincident {
                // nudge off a neighbour; the next sweep handles it
                let nudge = Float::with_val(bits, &absz + 1u32) * Float::with_val(bits, eps.sqrt_ref());
                z[i] += Complex::with_val(bits, (Float::new(bits), nudge));
                continue;
            }
            let w = if der.is_zero() {
                // p' vanishes: fall back to the pure repulsion step
                Complex::with_val(bits, s.recip_ref())
            } else {
                let newton = Complex::with_val(bits, &val / &der);
                let den = Complex::with_val(bits, 1 - Complex::with_val(bits, &newton * &s));
                if den.is_zero() {
                    newton
                } else {
                    newton / den
                }
            };
            let step = Float::with_val(bits, w.abs_ref());
            z[i] -= &w;
            let scale = Float::with_val(bits, z[i].abs_ref()).max(&Float::with_val(bits, 1));
            let rel = step / scale;
            if rel < tol {
                frozen[i] = true;
            }
            if rel > max_correction {
                max_correction = rel;
            }
        }
    }
    let roots = z.into_iter().map(|w| w + &centre).collect();
    Ok(finish_rootset(p, roots, Solver::Aberth, iterations))
}
