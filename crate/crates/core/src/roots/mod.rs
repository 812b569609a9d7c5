//! Zeros of the polynomial families in multiprecision complex arithmetic.
//!
//! Two independent solvers: simultaneous Aberth–Ehrlich iteration on the
//! coefficients, and shifted QR on the leading block of the Schwarz matrix.

mod aberth;
mod interlace;
mod qr;

use std::cmp::Ordering;

use rug::{Complex, Float, Integer};

use crate::exact::{ComplexPoly, Precision};

pub use aberth::{aberth_roots, AberthOptions};
pub use interlace::{interlacing_verdict, real_roots_isolated, InterlacingReport};
pub use qr::{hessenberg_qr_roots, hessenberg_qr_roots_complex, tridiagonal_qr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solver {
    Aberth,
    HessenbergQr,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Aberth => "aberth",
            Solver::HessenbergQr => "hessenberg_qr",
        }
    }
}

/// A group of computed roots judged to approximate one multiple root.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub centroid: Complex,
    pub multiplicity: usize,
    /// Largest distance of a member approximation from the centroid.
    pub radius: Float,
}

/// Roots of one polynomial, with multiplicity, in canonical order.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// `|p(r)| / sum_i |c_i| max(1, |r|)^i` for each root.
    pub residuals: Vec<Float>,
    pub clusters: Vec<Cluster>,
    pub solver: Solver,
    pub precision: Precision,
    /// Iterations spent by the solver.
    pub iterations: usize,
    pub params: Option<RootParams>,
}

/// The `(n, k, a)` a root set was computed for, when it came from the Schwarz family.
#[derive(Clone, Debug)]
pub struct RootParams {
    pub n: u32,
    pub k: u32,
    pub a: Complex,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn with_params(mut self, n: u32, k: u32, a: Complex) -> Self {
        self.params = Some(RootParams { n, k, a });
        self
    }

    pub fn max_residual(&self) -> Float {
        self.residuals.iter().fold(Float::new(self.precision.bits()), |acc, r| if *r > acc { r.clone() } else { acc })
    }

    /// Largest elementwise distance between two canonically ordered sets.
    pub fn distance(&self, other: &RootSet) -> Option<Float> {
        if self.len() != other.len() {
            return None;
        }
        let bits = self.precision.bits();
        Some(self.roots.iter().zip(&other.roots).fold(Float::new(bits), |acc, (x, y)| {
            let d = Float::with_val(bits, Complex::with_val(bits, x - y).abs_ref());
            if d > acc {
                d
            } else {
                acc
            }
        }))
    }

    /// Multiplies every root by `c` and re-sorts, for the scaling law.
    pub fn scaled(&self, c: &Complex) -> RootSet {
        let bits = self.precision.bits();
        let mut out = self.clone();
        for r in &mut out.roots {
            *r = Complex::with_val(bits, &*r * c);
        }
        sort_canonical(&mut out.roots, self.precision);
        out
    }
}

/// `|p(z)| / sum_i |c_i| max(1, |z|)^i`.
pub fn scaled_residual(p: &ComplexPoly, z: &Complex) -> Float {
    let bits = p.precision().bits();
    let v = Float::with_val(bits, p.eval(z).abs_ref());
    let r = Float::with_val(bits, z.abs_ref()).max(&Float::with_val(bits, 1));
    let scale = p.abs_eval(&r);
    if scale.is_zero() {
        return v;
    }
    v / scale
}

fn quantized_real(z: &Complex, prec: Precision) -> Integer {
    let scaled = Float::with_val(prec.bits() + 8, z.real() * Float::with_val(32, Float::i_exp(1, (prec.bits() / 2) as i32)));
    scaled.round().to_integer().unwrap_or_default()
}

/// Orders by real part rounded to `2^{-prec/2}`, then by imaginary part, so
/// conjugate pairs and cross-solver results line up.
pub fn sort_canonical(roots: &mut [Complex], prec: Precision) {
    roots.sort_by(|x, y| {
        quantized_real(x, prec)
            .cmp(&quantized_real(y, prec))
            .then_with(|| x.imag().partial_cmp(y.imag()).unwrap_or(Ordering::Equal))
    });
}

/// Result of testing `Re(z / a) > 0` for every root.
#[derive(Clone, Debug)]
pub struct HalfPlaneVerdict {
    pub holds: bool,
    /// `min Re(z / a)` over the roots.
    pub margin: Float,
}

pub fn halfplane_verdict(rs: &RootSet, a: &Complex) -> HalfPlaneVerdict {
    let bits = rs.precision.bits();
    let mut margin: Option<Float> = None;
    for r in &rs.roots {
        let q = Complex::with_val(bits, r / a);
        let re = q.real().clone();
        margin = Some(match margin {
            Some(m) if m <= re => m,
            _ => re,
        });
    }
    let margin = margin.unwrap_or_else(|| Float::with_val(bits, 0));
    HalfPlaneVerdict { holds: !rs.roots.is_empty() && margin > 0, margin }
}

/// Groups approximations whose inclusion discs overlap.
///
/// The disc around `z_i` has radius `d (|p(z_i)| + e_i) / |prod_{j != i} (z_i - z_j)|`,
/// where `e_i` bounds the rounding error of evaluating `p`. A component of `m`
/// overlapping discs contains `m` roots; for a multiple root whose copies were
/// split by rounding, the discs are about as wide as the split and merge.
pub(crate) fn detect_clusters(p: &ComplexPoly, roots: &[Complex]) -> Vec<Vec<usize>> {
    let d = roots.len();
    let bits = p.precision().bits();
    let eps = p.precision().epsilon();
    let radii: Vec<Float> = (0..d)
        .map(|i| {
            let z = &roots[i];
            let absz = Float::with_val(bits, z.abs_ref());
            let err = Float::with_val(bits, &eps * p.abs_eval(&absz)) * (8 * d as u32);
            let val = Float::with_val(bits, p.eval(z).abs_ref()) + err;
            let mut den = Float::with_val(bits, 1);
            for (j, w) in roots.iter().enumerate() {
                if j != i {
                    den *= Float::with_val(bits, Complex::with_val(bits, z - w).abs_ref());
                }
            }
            if den.is_zero() {
                Float::with_val(bits, rug::float::Special::Infinity)
            } else {
                val * d as u32 / den
            }
        })
        .collect();

    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist = Float::with_val(bits, Complex::with_val(bits, &roots[i] - &roots[j]).abs_ref());
            if dist <= Float::with_val(bits, &radii[i] + &radii[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[r]].push(i);
    }
    groups
}

/// Replaces every multi-member group by its centroid, repeated, and builds the set.
pub(crate) fn finish_rootset(p: &ComplexPoly, mut roots: Vec<Complex>, solver: Solver, iterations: usize) -> RootSet {
    let prec = p.precision();
    let bits = prec.bits();
    let mut clusters = Vec::new();
    for group in detect_clusters(p, &roots) {
        if group.len() < 2 {
            continue;
        }
        let mut centroid = Complex::new(bits);
        for &i in &group {
            centroid += &roots[i];
        }
        centroid /= group.len() as u32;
        let radius = group.iter().fold(Float::new(bits), |acc, &i| {
            let d = Float::with_val(bits, Complex::with_val(bits, &roots[i] - &centroid).abs_ref());
            if d > acc {
                d
            } else {
                acc
            }
        });
        for &i in &group {
            roots[i] = centroid.clone();
        }
        clusters.push(Cluster { centroid, multiplicity: group.len(), radius });
    }
    sort_canonical(&mut roots, prec);
    let residuals = roots.iter().map(|z| scaled_residual(p, z)).collect();
    clusters.sort_by(|a, b| {
        quantized_real(&a.centroid, prec)
            .cmp(&quantized_real(&b.centroid, prec))
            .then_with(|| a.centroid.imag().partial_cmp(b.centroid.imag()).unwrap_or(Ordering::Equal))
    });
    RootSet { roots, residuals, clusters, solver, precision: prec, iterations, params: None }
}
