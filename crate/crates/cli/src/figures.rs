//! Parameter grids behind the twelve figures.

use std::ops::RangeInclusive;

use apotent::exact::Precision;
use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::CliError;

/// The eigenvalue of one job.
#[derive(Clone, Debug)]
pub enum JobA {
    Rational(Rational),
    Complex(Complex),
}

/// Zeros of `P_k` for `(n, a)`, or of the Bessel polynomial `B_k` when `n == 0`.
#[derive(Clone, Debug)]
pub struct Job {
    pub k: u32,
    pub n: u32,
    pub a: JobA,
}

impl Job {
    pub fn bessel(k: u32) -> Self {
        Job { k, n: 0, a: JobA::Rational(Rational::new()) }
    }

    pub fn is_bessel(&self) -> bool {
        self.n == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scale {
    MinusOne,
    MinusInverseN,
    MinusKOverN,
}

impl Scale {
    fn a(self, k: u32, n: u32) -> Rational {
        match self {
            Scale::MinusOne => Rational::from(-1),
            Scale::MinusInverseN => Rational::from((-1, n)),
            Scale::MinusKOverN => Rational::from((-(k as i64), n as i64)),
        }
    }
}

/// `floor(k^{5/4})`, exactly: the largest `n` with `n^4 <= k^5`.
pub fn floor_k_five_quarters(k: u32) -> u32 {
    Integer::from(Integer::u_pow_u(k, 5)).root(4).to_u32().expect("fits for k <= 2^25")
}

/// The swept variable and its default range, as stated in each caption.
pub fn default_range(number: u8) -> RangeInclusive<u32> {
    match number {
        1 => 50..=150,
        2 => 75..=175,
        3 => 5..=19,
        4 => 20..=24,
        6 => 17..=50,
        7 => 10..=60,
        8 => 50..=150,
        9..=12 => 9..=144,
        _ => 0..=u32::MAX,
    }
}

/// Jobs for figure `number`.
///
/// `range` overrides the swept variable (`n` for figures 1 and 2, the angle
/// index `0..=steps` for figure 5, `k` otherwise) and `step` thins it.
pub fn figure_jobs(
    number: u8,
    range: Option<RangeInclusive<u32>>,
    step: u32,
    steps: u32,
    prec: Precision,
) -> Result<Vec<Job>, CliError> {
    if step == 0 {
        return Err(CliError::Usage("--step must be positive".into()));
    }
    if number == 5 {
        return figure5(range.unwrap_or(0..=steps), step, steps, prec);
    }
    let full = default_range(number);
    let sweep = range.unwrap_or_else(|| full.clone());
    let values: Vec<u32> = sweep.step_by(step as usize).collect();
    let rational = |k: u32, n: u32, s: Scale| Job { k, n, a: JobA::Rational(s.a(k, n)) };
    let mut jobs = Vec::new();
    match number {
        1 | 2 => {
            let k = *full.start();
            jobs.push(Job::bessel(k));
            jobs.extend(values.iter().map(|&n| rational(k, n, Scale::MinusInverseN)));
        }
        3 | 4 => {
            for &k in &values {
                jobs.push(Job::bessel(k));
                jobs.push(rational(k, k * k, Scale::MinusInverseN));
            }
        }
        6 => jobs.extend(values.iter().map(|&k| rational(k, 50, Scale::MinusOne))),
        7 => jobs.extend(values.iter().map(|&k| rational(k, 10 * k, Scale::MinusOne))),
        8 => jobs.extend(values.iter().map(|&k| rational(k, k + 1, Scale::MinusOne))),
        9 => jobs.extend(values.iter().map(|&k| rational(k, k * k, Scale::MinusOne))),
        10 => jobs.extend(values.iter().map(|&k| rational(k, floor_k_five_quarters(k), Scale::MinusOne))),
        11 => jobs.extend(values.iter().map(|&k| rational(k, k * k, Scale::MinusKOverN))),
        12 => jobs.extend(values.iter().map(|&k| rational(k, floor_k_five_quarters(k), Scale::MinusKOverN))),
        _ => return Err(CliError::Usage(format!("there is no figure {number}"))),
    }
    for job in &jobs {
        if job.k == 0 || (!job.is_bessel() && job.k > job.n) {
            return Err(CliError::Usage(format!("figure {number}: k = {} with n = {} is outside 1 <= k <= n", job.k, job.n)));
        }
    }
    Ok(jobs)
}

/// `k = 70`, `n = 71`, `a = e^{i phi}` for `phi = -pi + j (pi/2) / steps`.
fn figure5(indices: RangeInclusive<u32>, step: u32, steps: u32, prec: Precision) -> Result<Vec<Job>, CliError> {
    if steps == 0 || *indices.end() > steps {
        return Err(CliError::Usage(format!("figure 5 angle indices must lie in 0..={steps} with steps >= 1")));
    }
    let bits = prec.bits() + 32;
    let pi = Float::with_val(bits, Constant::Pi);
    Ok(indices
        .step_by(step as usize)
        .map(|j| {
            let phi = -pi.clone() + Float::with_val(bits, &pi * j) / (2 * steps);
            let (s, c) = phi.sin_cos(Float::new(bits));
            Job { k: 70, n: 71, a: JobA::Complex(Complex::with_val(prec.bits(), (c, s))) }
        })
        .collect())
}
