use rug::{Complex, Float};

use super::{finish_rootset, RootSet, Solver};
use crate::exact::{ComplexPoly, Precision};
use crate::schwarz::{ComplexSchwarzSpec, SchwarzSpec};
use crate::{Error, Result};

// a defective eigenvalue (the k = n block) needs on the order of 150 sweeps
// before the first deflation, because rounding keeps reshaping the cluster
const PER_EIGENVALUE_ITERS: usize = 500;

fn abs(z: &Complex, bits: u32) -> Float {
    Float::with_val(bits, z.abs_ref())
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: &Complex, b: &Complex, c: &Complex, d: &Complex, bits: u32) -> Complex {
    let half_tr = Complex::with_val(bits, a + d) / 2u32;
    let det = Complex::with_val(bits, a * d) - Complex::with_val(bits, b * c);
    let disc = (Complex::with_val(bits, half_tr.square_ref()) - det).sqrt();
    let l1 = Complex::with_val(bits, &half_tr + &disc);
    let l2 = Complex::with_val(bits, &half_tr - &disc);
    if abs(&Complex::with_val(bits, &l1 - d), bits) <= abs(&Complex::with_val(bits, &l2 - d), bits) {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of the tridiagonal matrix with `diag[0] = d0`, zero diagonal
/// elsewhere, and off-diagonal products `h_{i-1,i} h_{i,i-1} = -b_i`.
///
/// The off-diagonals are balanced to `sqrt(b_i)` and `-sqrt(b_i)`, then reduced
/// by single-shift complex QR with Wilkinson shifts on the active block.
pub fn tridiagonal_qr(d0: &Complex, b: &[Complex], prec: Precision) -> Result<(Vec<Complex>, usize)> {
    let bits = prec.bits();
    let k = b.len() + 1;
    let mut h = vec![vec![Complex::new(bits); k]; k];
    h[0][0] = Complex::with_val(bits, d0);
    for i in 1..k {
        let s = Complex::with_val(bits, b[i - 1].sqrt_ref());
        h[i][i - 1] = Complex::with_val(bits, -&s);
        h[i - 1][i] = s;
    }
    let eps = prec.epsilon();
    let mut eigen = Vec::with_capacity(k);
    let mut total = 0;
    let mut its = 0;
    let mut hi = k - 1;
    loop {
        if hi == 0 {
            eigen.push(h[0][0].clone());
            break;
        }
        let mut lo = 0;
        for l in (1..=hi).rev() {
            let scale = abs(&h[l][l], bits) + abs(&h[l - 1][l - 1], bits);
            let sub = abs(&h[l][l - 1], bits);
            if sub <= Float::with_val(bits, &scale * &eps) || sub.is_zero() {
                h[l][l - 1] = Complex::new(bits);
                lo = l;
                break;
            }
        }
        if lo == hi {
            eigen.push(h[hi][hi].clone());
            hi -= 1;
            its = 0;
            continue;
        }
        if its == PER_EIGENVALUE_ITERS {
            return Err(Error::QrNoConvergence {
                lo,
                hi,
                iterations: total,
                subdiagonal: (lo + 1..=hi).map(|i| abs(&h[i][i - 1], bits).to_string_radix(10, Some(6))).collect(),
            });
        }
        its += 1;
        total += 1;

        let mut mu = wilkinson_shift(&h[hi - 1][hi - 1], &h[hi - 1][hi], &h[hi][hi - 1], &h[hi][hi], bits);
        if its % 10 == 0 {
            // exceptional shift to break cycles
            let mut kick = abs(&h[hi][hi - 1], bits);
            if hi >= lo + 2 {
                kick += abs(&h[hi - 1][hi - 2], bits);
            }
            mu += Complex::with_val(bits, (Float::with_val(bits, &kick * 0.75f64), Float::with_val(bits, &kick * 0.4375f64)));
        }
        for i in lo..=hi {
            h[i][i] -= &mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let a = h[i][i].clone();
            let bb = h[i + 1][i].clone();
            let r = (Float::with_val(bits, a.norm_ref()) + Float::with_val(bits, bb.norm_ref())).sqrt();
            let (c, s) = if r.is_zero() {
                (Complex::with_val(bits, (1, 0)), Complex::new(bits))
            } else {
                (Complex::with_val(bits, &a / &r), Complex::with_val(bits, &bb / &r))
            };
            let cc = Complex::with_val(bits, c.conj_ref());
            let sc = Complex::with_val(bits, s.conj_ref());
            for j in i..=hi {
                let x = h[i][j].clone();
                let y = h[i + 1][j].clone();
                h[i][j] = Complex::with_val(bits, &cc * &x) + Complex::with_val(bits, &sc * &y);
                h[i + 1][j] = Complex::with_val(bits, &c * &y) - Complex::with_val(bits, &s * &x);
            }
            rotations.push((c, s, cc, sc));
        }
        for (off, (c, s, cc, sc)) in rotations.iter().enumerate() {
            let i = lo + off;
            for row in h.iter_mut().take((i + 2).min(hi) + 1).skip(lo) {
                let x = row[i].clone();
                let y = row[i + 1].clone();
                row[i] = Complex::with_val(bits, c * &x) + Complex::with_val(bits, s * &y);
                row[i + 1] = Complex::with_val(bits, cc * &y) - Complex::with_val(bits, sc * &x);
            }
        }
        for i in lo..=hi {
            h[i][i] += &mu;
        }
    }
    eigen.reverse();
    Ok((eigen, total))
}

/// Eigenvalues of the leading `k x k` block of an exact Schwarz matrix, i.e. the roots of `P_k`.
pub fn hessenberg_qr_roots(spec: &SchwarzSpec, k: usize, prec: Precision) -> Result<RootSet> {
    if k == 0 || k > spec.n() as usize {
        return Err(Error::OutOfRange { index: k, reason: format!("block size must lie in 1..={}", spec.n()) });
    }
    let bits = prec.bits();
    let b: Vec<Complex> = spec.b()[1..k].iter().map(|x| Complex::with_val(bits, (x, 0))).collect();
    let d0 = Complex::with_val(bits, (-spec.b()[0].clone(), 0));
    let (eigen, iterations) = tridiagonal_qr(&d0, &b, prec)?;
    let p = ComplexPoly::from_ratpoly(&spec.charpoly(k), prec);
    Ok(finish_rootset(&p, eigen, Solver::HessenbergQr, iterations))
}

/// Complex-eigenvalue counterpart of [`hessenberg_qr_roots`].
pub fn hessenberg_qr_roots_complex(spec: &ComplexSchwarzSpec, k: usize) -> Result<RootSet> {
    if k == 0 || k > spec.n() as usize {
        return Err(Error::OutOfRange { index: k, reason: format!("block size must lie in 1..={}", spec.n()) });
    }
    let prec = spec.precision();
    let d0 = Complex::with_val(prec.bits(), -&spec.b()[0]);
    let (eigen, iterations) = tridiagonal_qr(&d0, &spec.b()[1..k], prec)?;
    let p = spec.charpoly_scaled(k);
    Ok(finish_rootset(&p, eigen, Solver::HessenbergQr, iterations))
}
