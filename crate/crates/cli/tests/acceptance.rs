//! The fifteen acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every criterion reports even when an
//! earlier one fails; the process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use apotent::bessel::{bessel_weight_series, compare_to_bessel};
use apotent::exact::{factorial, rational_pow, ComplexPoly, Precision, RatPoly};
use apotent::hankel::HankelReport;
use apotent::moments::{cf_phi, meixner_pollaczek_check, moment, moments_upto, pm_value, quad_phi, verify_moment_recurrence};
use apotent::orthopoly::{
    c_norm, fg_families, gram_matrix, ode_residual, p_explicit_2f1_poly, p_sequence, q_oracle, weight_ift,
    weight_ift_series, FunctionalSpec,
};
use apotent::roots::{aberth_roots, halfplane_verdict, hessenberg_qr_roots, interlacing_verdict, AberthOptions, RootSet};
use apotent::schwarz::SchwarzSpec;
use apotent_cli::figures::figure_jobs;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(v: apotent::Result<T>) -> Result<T, String> {
    v.map_err(|e| e.to_string())
}

fn a_potency() -> Outcome {
    for a in [r(1, 1), r(-1, 1), r(3, 2), r(-2, 7)] {
        for n in 1..=128u32 {
            let rep = core(SchwarzSpec::new(n, a.clone()))?.verify_apotent();
            check(rep.holds(), || format!("n={n} a={a}: first mismatch {:?}", rep.witness.map(|w| w.index)))?;
            let p = core(SchwarzSpec::new(n, a.clone()))?.charpoly(n as usize);
            check(p == RatPoly::linear_power(&a, n), || format!("n={n} a={a}: P_n differs from (z-a)^n"))?;
        }
    }
    Ok(())
}

fn hankel_triple() -> Outcome {
    for a in [r(1, 1), r(-2, 7)] {
        for n in 1..=20u32 {
            let rep = core(HankelReport::build(n, &a, n + 2))?;
            check(rep.triple_agreement(), || format!("n={n} a={a}: determinants disagree"))?;
            check(rep.support_pattern_holds(), || format!("n={n} a={a}: D_m support is wrong"))?;
            check(rep.determinants[n as usize] == 0 && rep.determinants[n as usize + 1] == 0, || {
                format!("n={n} a={a}: D_(n+1) or D_(n+2) nonzero")
            })?;
        }
    }
    Ok(())
}

fn recovery() -> Outcome {
    for a in [r(1, 1), r(-2, 7), r(3, 2)] {
        for n in 1..=20u32 {
            let rep = core(HankelReport::build(n, &a, n))?;
            check(rep.recovered.b.len() == n as usize - 1, || format!("n={n}: expected b_1..b_(n-1)"))?;
            check(rep.shifted_hold(), || format!("n={n} a={a}: D'_m != a n D_m"))?;
            check(rep.recovery_holds(), || format!("n={n} a={a}: recovered coefficients differ"))?;
        }
    }
    Ok(())
}

fn orthogonality() -> Outcome {
    for a in [r(1, 1), r(-2, 7)] {
        for n in 1..=16u32 {
            let g = core(gram_matrix(n, &a))?;
            check(g.is_diagonal(), || format!("n={n} a={a}: Gram matrix not diagonal"))?;
            for (m, d) in g.diagonal().iter().enumerate() {
                let f = core(c_norm(n, &a, m as u32))?;
                check(*d == f.product && f.agree(), || format!("n={n} a={a} m={m}: norm forms disagree"))?;
            }
        }
    }
    Ok(())
}

fn oracle_triangle() -> Outcome {
    for a in [r(1, 1), r(-1, 1), r(3, 2), r(-2, 7)] {
        for n in 1..=12u32 {
            let seq = core(p_sequence(n, &a))?;
            for m in 1..=n {
                let p = seq.get(m as usize);
                check(*p == core(q_oracle(n, &a, m))?, || format!("n={n} m={m} a={a}: determinant form"))?;
                check(*p == core(p_explicit_2f1_poly(n, m, &a))?, || format!("n={n} m={m} a={a}: 2F1 form"))?;
            }
        }
    }
    Ok(())
}

fn ode_and_parity() -> Outcome {
    for n in 1..=32u32 {
        for k in 0..=n {
            check(core(ode_residual(n, k))?.is_zero(), || format!("n={n} k={k}: nonzero ODE residual"))?;
        }
        let c = core(fg_families(n))?.check();
        check(c.holds(), || format!("n={n}: {c:?}"))?;
    }
    Ok(())
}

fn functional_consistency() -> Outcome {
    const BITS: u32 = 192;
    let prec = core(Precision::new(BITS))?;
    for a in [r(1, 1), r(-2, 7)] {
        for n in 1..=10u32 {
            let spec = core(FunctionalSpec::new(n, &a))?;
            let rule = core(spec.contour_rule(4096, prec))?;
            let seq = core(p_sequence(n, &a))?;
            let mut inputs: Vec<RatPoly> = (0..=2 * n as usize).map(|j| RatPoly::monomial(Rational::from(1), j)).collect();
            for i in 0..n as usize {
                inputs.push(seq.get(i) * seq.get(n as usize - 1 - i));
                inputs.push(seq.get(i) * seq.get(i));
            }
            inputs.push(seq.get(n as usize) * seq.get(n as usize));
            for f in &inputs {
                let exact = spec.eval(f);
                let contour = rule.apply(&ComplexPoly::from_ratpoly(f, prec));
                let diff = Float::with_val(BITS, Complex::with_val(BITS, &contour - Complex::with_val(BITS, (&exact, 0))).abs_ref());
                let scale = Float::with_val(BITS, exact.clone().abs()).max(&Float::with_val(BITS, 1));
                check(diff.clone() / scale < 1e-10, || format!("n={n} a={a} deg={:?}: |error| = {diff}", f.degree()))?;
            }
        }
    }
    Ok(())
}

fn eigenvector_chain() -> Outcome {
    for a in [r(1, 1), r(-1, 1), r(3, 2), r(-2, 7)] {
        for n in 1..=32u32 {
            let rep = core(SchwarzSpec::new(n, a.clone()))?.eigvector_chain();
            check(rep.holds(), || format!("n={n} a={a}: chain identity fails"))?;
        }
    }
    Ok(())
}

fn moments() -> Outcome {
    for a in [r(1, 1), r(-1, 1), r(3, 2), r(-2, 7)] {
        for n in 1..=32u32 {
            let seq = core(moments_upto(n, &a, 64))?;
            check(verify_moment_recurrence(&seq), || format!("n={n} a={a}: moment recurrence"))?;
        }
        for n in 1..=16u32 {
            for m in 0..=24u32 {
                let lhs = core(moment(n, &a, m))? * factorial(m + 1);
                let rhs = -(rational_pow(&a, m as i64 + 1) * n) * core(pm_value(m, n))?;
                check(lhs == rhs, || format!("n={n} m={m} a={a}: p_m does not reconcile with s_m"))?;
            }
        }
    }
    for n in 1..=12u32 {
        for m in 0..=20u32 {
            check(core(meixner_pollaczek_check(m, n))?.holds(), || format!("m={m} n={n}: Meixner-Pollaczek identity"))?;
        }
    }
    Ok(())
}

fn residual_bound_holds(p: &ComplexPoly, rs: &RootSet, tol: &Float) -> bool {
    let bits = p.precision().bits();
    let k = p.degree().unwrap_or(0) as u32;
    let coeff_sum = p.abs_coeff_sum();
    rs.roots.iter().all(|z| {
        let value = Float::with_val(bits, p.eval(z).abs_ref());
        let m = Float::with_val(bits, z.abs_ref()).max(&Float::with_val(bits, 1));
        let bound = Float::with_val(bits, tol * &coeff_sum) * Float::with_val(bits, m.pow(k));
        value <= bound
    })
}

fn roots_figure_one() -> Outcome {
    const BITS: u32 = 256;
    let prec = core(Precision::new(BITS))?;
    let tol = Float::with_val(BITS, Float::i_exp(1, -(BITS as i32 - 20)));
    let k = 50usize;
    for n in [50u32, 75, 100, 125, 150] {
        let a = r(-1, n as i64);
        let spec = core(SchwarzSpec::new(n, a.clone()))?;
        let p = ComplexPoly::from_ratpoly(&spec.charpoly(k), prec);
        let ab = core(aberth_roots(&p, &AberthOptions::default()))?;
        let qr = core(hessenberg_qr_roots(&spec, k, prec))?;
        let d = ab.distance(&qr).ok_or("root counts differ")?;
        check(d < 1e-15, || format!("n={n}: solver distance {d}"))?;
        let az = Complex::with_val(BITS, (&a, 0));
        for rs in [&ab, &qr] {
            check(rs.len() == k, || format!("n={n}: {} returned {} roots", rs.solver.name(), rs.len()))?;
            let v = halfplane_verdict(rs, &az);
            check(v.holds, || format!("n={n}: {} half-plane margin {}", rs.solver.name(), v.margin))?;
            check(residual_bound_holds(&p, rs, &tol), || format!("n={n}: {} residual bound", rs.solver.name()))?;
        }
    }
    Ok(())
}

fn bessel_limit() -> Outcome {
    for n in [2u32, 3, 10, 100, 200, 400, 1000] {
        let d = core(compare_to_bessel(2, n))?;
        check(d == r(1, 3 * n as i64 * n as i64), || format!("k=2 n={n}: distance {d}"))?;
    }
    for k in 3..=6u32 {
        for n in [100u32, 200, 400] {
            let ratio = (core(compare_to_bessel(k, n))? / core(compare_to_bessel(k, 2 * n))?).to_f64();
            check((3.6..=4.4).contains(&ratio), || format!("k={k} n={n}: ratio {ratio}"))?;
        }
    }
    Ok(())
}

fn laguerre_ift() -> Outcome {
    const BITS: u32 = 256;
    let prec = core(Precision::new(BITS))?;
    let a = Complex::with_val(BITS, (-1, 0));
    for t in [-5i32, -2, 0, 2, 5] {
        let t = Complex::with_val(BITS, (t, 0));
        let closed = core(weight_ift(10, &a, &t, prec))?;
        let series = core(weight_ift_series(10, &a, &t, 200, prec))?;
        let diff = Float::with_val(BITS, Complex::with_val(BITS, &closed - &series).abs_ref());
        check(diff < 1e-25, || format!("t={}: |closed - series| = {diff}", t.real()))?;
    }
    let b0 = core(bessel_weight_series(&Complex::new(BITS), 200, prec))?;
    let target = -Float::with_val(BITS, Constant::Pi).recip();
    let diff = Float::with_val(BITS, Complex::with_val(BITS, &b0 - Complex::with_val(BITS, (&target, 0))).abs_ref());
    check(diff <= prec.epsilon(), || format!("Bessel weight at t=0 differs from -1/pi by {diff}"))
}

fn interlacing() -> Outcome {
    let prec = core(Precision::new(256))?;
    for k in 1..=40u32 {
        let rep = core(interlacing_verdict(50, k, prec))?;
        check(rep.holds(), || {
            format!(
                "k={k}: real_simple={}/{} coprime={} interlaced={} max|Re|={}",
                rep.f_real_simple, rep.g_real_simple, rep.coprime, rep.interlaced, rep.max_real_part
            )
        })?;
    }
    Ok(())
}

fn continued_fraction() -> Outcome {
    let mut failures = Vec::new();
    for x in [1u32, 2, 5] {
        let x = Float::with_val(128, x);
        let cf = core(cf_phi(&x, 40))?;
        let quad = core(quad_phi(&x, 1e-14))?;
        let diff = Float::with_val(128, &cf - &quad).abs();
        if diff >= 1e-8 {
            failures.push(format!("x={}: |cf - quad| = {:.3e}", x.to_f64(), diff.to_f64()));
        }
    }
    check(failures.is_empty(), || failures.join("; "))
}

/// Reduced ranges for the smoke runs; (figure, extra arguments).
const SMOKE: [(u8, &[&str]); 12] = [
    (1, &["--range", "100..100"]),
    (2, &["--range", "175..175"]),
    (3, &["--range", "5..6"]),
    (4, &["--range", "20..20"]),
    (5, &["--range", "4..4"]),
    (6, &["--range", "17..18"]),
    (7, &["--range", "10..11"]),
    (8, &["--range", "50..50"]),
    (9, &["--range", "9..10"]),
    (10, &["--range", "9..10"]),
    (11, &["--range", "9..10"]),
    (12, &["--range", "9..10"]),
];

/// Job count and swept values at the full caption ranges.
fn full_grid(number: u8) -> Result<(usize, usize), String> {
    let jobs = figure_jobs(number, None, 1, 8, Precision::default()).map_err(|e| e.to_string())?;
    let rows = jobs.iter().map(|j| j.k as usize).sum();
    Ok((jobs.len(), rows))
}

fn run_figure(number: u8, extra: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_apotent"))
        .arg("figure")
        .arg(number.to_string())
        .args(extra)
        .args(["--precision", "256", "--digits", "30"])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || format!("figure {number}: {}", String::from_utf8_lossy(&out.stderr).trim()))?;
    Ok(out.stdout)
}

fn figure_reproduction() -> Outcome {
    // jobs and rows at the caption ranges
    let expected = [
        (1u8, 102usize, 102 * 50),
        (2, 102, 102 * 75),
        (3, 30, 2 * (5..=19).sum::<usize>()),
        (4, 10, 2 * (20..=24).sum::<usize>()),
        (5, 9, 9 * 70),
        (6, 34, (17..=50).sum()),
        (7, 51, (10..=60).sum()),
        (8, 101, (50..=150).sum()),
        (9, 136, (9..=144).sum()),
        (10, 136, (9..=144).sum()),
        (11, 136, (9..=144).sum()),
        (12, 136, (9..=144).sum()),
    ];
    for (number, jobs, rows) in expected {
        let got = full_grid(number)?;
        check(got == (jobs, rows), || format!("figure {number}: full grid has {got:?}, expected {:?}", (jobs, rows)))?;
    }
    for (number, extra) in SMOKE {
        let first = run_figure(number, extra)?;
        let second = run_figure(number, extra)?;
        check(first == second, || format!("figure {number}: output differs between runs"))?;
        let text = String::from_utf8(first).map_err(|e| e.to_string())?;
        let mut lines = text.split("\r\n").filter(|l| !l.is_empty());
        check(lines.next() == Some("k,n,a_re,a_im,root_re,root_im,residual"), || format!("figure {number}: header"))?;
        let body: Vec<&str> = lines.collect();
        let range = extra[1];
        let (lo, hi) = range.split_once("..").unwrap();
        let jobs = figure_jobs(number, Some(lo.parse().unwrap()..=hi.parse().unwrap()), 1, 8, Precision::default())
            .map_err(|e| e.to_string())?;
        let rows: usize = jobs.iter().map(|j| j.k as usize).sum();
        check(body.len() == rows, || format!("figure {number}: {} rows, expected {rows}", body.len()))?;
        check(body.iter().all(|l| l.split(',').count() == 7), || format!("figure {number}: malformed row"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("a-potency of P_n, n <= 128", a_potency),
        ("Hankel triple agreement, n <= 20", hankel_triple),
        ("recurrence recovery from determinants", recovery),
        ("orthogonality and norm closed forms", orthogonality),
        ("oracle triangle, n <= 12", oracle_triangle),
        ("ODE and parity families, n <= 32", ode_and_parity),
        ("functional by contour quadrature", functional_consistency),
        ("eigenvector chain, n <= 32", eigenvector_chain),
        ("moments, p_m and Meixner-Pollaczek", moments),
        ("roots on the figure 1 grid", roots_figure_one),
        ("Bessel limit", bessel_limit),
        ("Laguerre transform and Bessel weight", laguerre_ift),
        ("interlacing, n = 50, k <= 40", interlacing),
        ("continued fraction vs quadrature", continued_fraction),
        ("figure datasets", figure_reproduction),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
