use std::io::Write;

use apotent::bessel::{bessel_coefficient, bessel_sequence, compare_to_bessel};
use apotent::exact::{ComplexPoly, Precision};
use apotent::hankel::{is_indefinite_sign_pattern, HankelReport};
use apotent::moments::{first_recurrence_failure, moments_upto};
use apotent::orthopoly::{c_norm, gram_matrix};
use apotent::roots::{aberth_roots, hessenberg_qr_roots, hessenberg_qr_roots_complex, interlacing_verdict, AberthOptions, RootSet};
use apotent::schwarz::{ComplexSchwarzSpec, SchwarzSpec};
use rug::{Complex, Float, Rational};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig, ScalarA, SolverChoice};
use crate::figures::{figure_jobs, Job, JobA};
use crate::output::{open_sink, root_rows, write_records, write_root_header, write_root_rows, RootRow};
use crate::CliError;

/// Default agreement tolerance between the two solvers.
pub const SOLVER_AGREEMENT: f64 = 1e-15;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let prec = Precision::new(cfg.precision)?;
    let mut out = open_sink(cfg.output.as_deref())?;
    let result = dispatch(cfg, prec, &mut *out);
    out.flush()?;
    result
}

fn fmt(cfg: &RunConfig, default: Format) -> Format {
    cfg.format.unwrap_or(default)
}

fn dispatch(cfg: &RunConfig, prec: Precision, out: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.command {
        Command::Matrix { n, a, dense } => matrix(cfg, out, *n, &ScalarA::parse(a)?, *dense),
        Command::Charpoly { n, a } => charpoly(cfg, prec, out, *n, &ScalarA::parse(a)?),
        Command::Moments { n, a, max_m } => moments(cfg, out, *n, &ScalarA::parse(a)?, *max_m),
        Command::Hankel { n, a, m_max } => hankel(cfg, out, *n, &ScalarA::parse(a)?, m_max.unwrap_or(n + 2)),
        Command::Ortho { n, a } => ortho(cfg, out, *n, &ScalarA::parse(a)?),
        Command::Roots { n, k, a, solver } => {
            let job = match ScalarA::parse(a)? {
                ScalarA::Rational(r) => Job { k: *k, n: *n, a: JobA::Rational(r) },
                c => Job { k: *k, n: *n, a: JobA::Complex(c.to_complex(prec)?) },
            };
            emit_roots(cfg, prec, out, &[job], *solver)
        }
        Command::Bessel { k_max, n } => bessel(cfg, out, *k_max, n),
        Command::Interlace { n, k } => interlace(cfg, prec, out, *n, *k),
        Command::Figure { number, range, step, steps, solver } => {
            let jobs = figure_jobs(*number, range.clone(), *step, *steps, prec)?;
            emit_roots(cfg, prec, out, &jobs, *solver)
        }
    }
}

#[derive(Serialize)]
struct MatrixRow {
    m: u32,
    b: String,
}

fn matrix(cfg: &RunConfig, out: &mut dyn Write, n: u32, a: &ScalarA, dense: bool) -> Result<(), CliError> {
    let spec = SchwarzSpec::new(n, a.require_rational("matrix")?.clone())?;
    if dense {
        let m = spec.to_dense();
        let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
        match fmt(cfg, Format::Csv) {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)?;
            }
            _ => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut *out);
                for r in &rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        return Ok(());
    }
    let rows: Vec<MatrixRow> = spec.b().iter().enumerate().map(|(m, b)| MatrixRow { m: m as u32, b: b.to_string() }).collect();
    write_records(out, fmt(cfg, Format::Csv), &rows)
}

fn power_label(n: u32, a: &str) -> String {
    match a.strip_prefix('-') {
        Some(abs) => format!("P_{n} = (z+{abs})^{n}"),
        None => format!("P_{n} = (z-{a})^{n}"),
    }
}

#[derive(Serialize)]
struct CharpolyReport {
    n: u32,
    a: String,
    holds: bool,
    /// First coefficient index that disagrees, if any.
    mismatch: Option<usize>,
    /// Largest coefficient deviation, for complex `a`.
    deviation: Option<String>,
}

fn charpoly(cfg: &RunConfig, prec: Precision, out: &mut dyn Write, n: u32, a: &ScalarA) -> Result<(), CliError> {
    let report = match a {
        ScalarA::Rational(r) => {
            let rep = SchwarzSpec::new(n, r.clone())?.verify_apotent();
            CharpolyReport { n, a: r.to_string(), holds: rep.holds(), mismatch: rep.witness.map(|w| w.index), deviation: None }
        }
        ScalarA::Complex(re, im) => {
            let z = a.to_complex(prec)?;
            let tol = cfg.tol.unwrap_or(1e-30);
            let (holds, dev) = ComplexSchwarzSpec::new(n, z, prec)?.verify_apotent(tol);
            CharpolyReport { n, a: format!("{re},{im}"), holds, mismatch: None, deviation: Some(dev.to_string_radix(10, Some(6))) }
        }
    };
    match fmt(cfg, Format::Text) {
        Format::Text => {
            let label = match a {
                ScalarA::Rational(_) => power_label(n, &report.a),
                ScalarA::Complex(re, im) => format!("P_{n} = (z-({re}{}{im}i))^{n}", if im.starts_with('-') { "" } else { "+" }),
            };
            match (report.holds, &report.deviation, report.mismatch) {
                (true, None, _) => writeln!(out, "{label} exact")?,
                (true, Some(d), _) => writeln!(out, "{label} within {d}")?,
                (false, _, Some(i)) => writeln!(out, "{label} FAILS at coefficient {i}")?,
                (false, d, None) => writeln!(out, "{label} FAILS (deviation {})", d.as_deref().unwrap_or("?"))?,
            }
        }
        f => write_records(out, f, &[&report])?,
    }
    if report.holds {
        Ok(())
    } else {
        Err(CliError::Verification(format!("P_{n} differs from (z - a)^{n}")))
    }
}

#[derive(Serialize)]
struct MomentRow {
    m: u32,
    s: String,
}

fn moments(cfg: &RunConfig, out: &mut dyn Write, n: u32, a: &ScalarA, max_m: u32) -> Result<(), CliError> {
    let seq = moments_upto(n, a.require_rational("moments")?, max_m)?;
    let rows: Vec<MomentRow> = seq.entries().iter().enumerate().map(|(m, s)| MomentRow { m: m as u32, s: s.to_string() }).collect();
    write_records(out, fmt(cfg, Format::Csv), &rows)?;
    match first_recurrence_failure(&seq) {
        None => Ok(()),
        Some(m) => Err(CliError::Verification(format!("moment recurrence fails at m = {m}"))),
    }
}

#[derive(Serialize)]
struct HankelRow {
    m: u32,
    moments: String,
    alphas: String,
    closed_form: String,
    equal: bool,
}

#[derive(Serialize)]
struct HankelJson {
    n: u32,
    a: String,
    m_max: u32,
    rows: Vec<HankelRow>,
    all_equal: bool,
    support_pattern: bool,
    indefinite: bool,
    shifted_identity: bool,
    recovered_b: Vec<String>,
    recovered_c: Vec<String>,
    recovery_holds: bool,
}

fn hankel(cfg: &RunConfig, out: &mut dyn Write, n: u32, a: &ScalarA, m_max: u32) -> Result<(), CliError> {
    let a = a.require_rational("hankel")?;
    let rep = HankelReport::build(n, a, m_max)?;
    let rows: Vec<HankelRow> = (0..m_max as usize)
        .map(|i| HankelRow {
            m: i as u32 + 1,
            moments: rep.determinants[i].to_string(),
            alphas: rep.alpha_determinants[i].to_string(),
            closed_form: rep.closed_form[i].to_string(),
            equal: rep.determinants[i] == rep.alpha_determinants[i] && rep.determinants[i] == rep.closed_form[i],
        })
        .collect();
    let nonzero = &rep.determinants[..(n.min(m_max) as usize)];
    let json = HankelJson {
        n,
        a: a.to_string(),
        m_max,
        all_equal: rep.triple_agreement(),
        support_pattern: rep.support_pattern_holds(),
        indefinite: n < 2 || is_indefinite_sign_pattern(nonzero),
        shifted_identity: rep.shifted_hold(),
        recovered_b: rep.recovered.b.iter().map(|x| x.to_string()).collect(),
        recovered_c: rep.recovered.c.iter().map(|x| x.to_string()).collect(),
        recovery_holds: rep.recovery_holds(),
        rows,
    };
    match fmt(cfg, Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
        f => write_records(out, f, &json.rows)?,
    }
    if rep.holds() {
        Ok(())
    } else {
        Err(CliError::Verification("Hankel determinant identities fail".into()))
    }
}

#[derive(Serialize)]
struct NormRow {
    m: u32,
    gram: String,
    product: String,
    expanded: String,
    binomial: String,
    gamma: String,
    agree: bool,
}

#[derive(Serialize)]
struct OrthoJson {
    n: u32,
    a: String,
    gram_diagonal: bool,
    rows: Vec<NormRow>,
    all_agree: bool,
}

fn ortho(cfg: &RunConfig, out: &mut dyn Write, n: u32, a: &ScalarA) -> Result<(), CliError> {
    let a = a.require_rational("ortho")?;
    let g = gram_matrix(n, a)?;
    let mut rows = Vec::new();
    for (m, d) in g.diagonal().iter().enumerate() {
        let f = c_norm(n, a, m as u32)?;
        rows.push(NormRow {
            m: m as u32,
            gram: d.to_string(),
            agree: f.agree() && *d == f.product,
            product: f.product.to_string(),
            expanded: f.expanded.to_string(),
            binomial: f.binomial.to_string(),
            gamma: f.gamma.to_string(),
        });
    }
    let json = OrthoJson { n, a: a.to_string(), gram_diagonal: g.is_diagonal(), all_agree: rows.iter().all(|r| r.agree), rows };
    match fmt(cfg, Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
        f => write_records(out, f, &json.rows)?,
    }
    if json.gram_diagonal && json.all_agree {
        Ok(())
    } else {
        Err(CliError::Verification("Gram matrix or norm forms disagree".into()))
    }
}

#[derive(Serialize)]
struct BesselRow {
    k: u32,
    n: u32,
    distance: String,
    distance_times_n2: String,
    /// `distance(n) / distance(2n)` when `2n` is also in the table.
    ratio_to_double: String,
}

fn bessel(cfg: &RunConfig, out: &mut dyn Write, k_max: u32, ns: &[u32]) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        for &n in ns {
            let d = compare_to_bessel(k, n)?;
            let ratio = if ns.contains(&(2 * n)) && d != 0 {
                let d2 = compare_to_bessel(k, 2 * n)?;
                format!("{:.6}", Rational::from(&d / &d2).to_f64())
            } else {
                String::new()
            };
            let scaled = Rational::from(&d * (n as u64 * n as u64));
            rows.push(BesselRow { k, n, distance: d.to_string(), distance_times_n2: format!("{:.9}", scaled.to_f64()), ratio_to_double: ratio });
        }
    }
    write_records(out, fmt(cfg, Format::Csv), &rows)
}

#[derive(Serialize)]
struct InterlaceJson {
    n: u32,
    k: u32,
    holds: bool,
    f_roots_im: Vec<String>,
    g_roots_im: Vec<String>,
    f_real_simple: bool,
    g_real_simple: bool,
    coprime: bool,
    interlaced: bool,
    max_real_part: String,
}

fn interlace(cfg: &RunConfig, prec: Precision, out: &mut dyn Write, n: u32, k: u32) -> Result<(), CliError> {
    let r = interlacing_verdict(n, k, prec)?;
    let show = |v: &Vec<Float>| v.iter().map(|x| x.to_string_radix(10, Some(cfg.digits))).collect::<Vec<_>>();
    let json = InterlaceJson {
        n,
        k,
        holds: r.holds(),
        f_roots_im: show(&r.f_roots),
        g_roots_im: show(&r.g_roots),
        f_real_simple: r.f_real_simple,
        g_real_simple: r.g_real_simple,
        coprime: r.coprime,
        interlaced: r.interlaced,
        max_real_part: r.max_real_part.to_string_radix(10, Some(6)),
    };
    match fmt(cfg, Format::Text) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
        _ => {
            writeln!(out, "f_{k}, g_{k} for n = {n}: {}", if json.holds { "interlacing on the imaginary axis" } else { "NOT interlacing" })?;
            writeln!(out, "zeros of f_{k} (imaginary parts): {}", json.f_roots_im.join(" "))?;
            writeln!(out, "zeros of g_{k} (imaginary parts): {}", json.g_roots_im.join(" "))?;
            writeln!(out, "max |Re| of computed zeros: {}", json.max_real_part)?;
        }
    }
    if json.holds {
        Ok(())
    } else {
        Err(CliError::Verification(format!("zeros of f_{k} and g_{k} do not interlace for n = {n}")))
    }
}

type Solve = Box<dyn Fn() -> apotent::Result<RootSet>>;

/// Zeros for one job by the selected solver(s); `Both` returns the Aberth set
/// after checking agreement.
pub fn solve_job(job: &Job, prec: Precision, solver: SolverChoice, tol: f64) -> Result<(Complex, RootSet), CliError> {
    let bits = prec.bits();
    let (a, aberth, qr): (Complex, Solve, Solve) = match &job.a {
        _ if job.is_bessel() => {
            let k = job.k;
            let b = bessel_sequence(k).get(k as usize).clone();
            (
                Complex::new(bits),
                Box::new(move || aberth_roots(&ComplexPoly::from_ratpoly(&b, prec), &AberthOptions::default())),
                Box::new(move || {
                    let coeffs = std::iter::once(Rational::from(1)).chain((1..k).map(bessel_coefficient)).collect();
                    let spec = SchwarzSpec::with_coefficients(k, Rational::from(1), coeffs)?;
                    hessenberg_qr_roots(&spec, k as usize, prec)
                }),
            )
        }
        JobA::Rational(r) => {
            let spec = SchwarzSpec::new(job.n, r.clone())?;
            let k = job.k as usize;
            let p = spec.charpoly(k);
            (
                Complex::with_val(bits, (r, 0)),
                Box::new(move || aberth_roots(&ComplexPoly::from_ratpoly(&p, prec), &AberthOptions::default())),
                Box::new(move || hessenberg_qr_roots(&spec, k, prec)),
            )
        }
        JobA::Complex(z) => {
            let spec = ComplexSchwarzSpec::new(job.n, z.clone(), prec)?;
            let k = job.k as usize;
            let spec2 = spec.clone();
            (
                z.clone(),
                Box::new(move || aberth_roots(&spec.charpoly_scaled(k), &AberthOptions::default())),
                Box::new(move || hessenberg_qr_roots_complex(&spec2, k)),
            )
        }
    };
    let rs = match solver {
        SolverChoice::Aberth => aberth()?,
        SolverChoice::Qr => qr()?,
        SolverChoice::Both => {
            let (x, y) = (aberth()?, qr()?);
            let d = x.distance(&y).expect("same degree");
            if d > tol {
                return Err(CliError::Verification(format!(
                    "solvers disagree by {} for k = {}, n = {}",
                    d.to_string_radix(10, Some(6)),
                    job.k,
                    job.n
                )));
            }
            x
        }
    };
    Ok((a, rs.with_params(job.n, job.k, Complex::new(bits))))
}

fn emit_roots(cfg: &RunConfig, prec: Precision, out: &mut dyn Write, jobs: &[Job], solver: SolverChoice) -> Result<(), CliError> {
    let tol = cfg.tol.unwrap_or(SOLVER_AGREEMENT);
    let format = fmt(cfg, Format::Csv);
    let mut all: Vec<RootRow> = Vec::new();
    if format != Format::Json {
        write_root_header(out)?;
    }
    for job in jobs {
        let (a, rs) = solve_job(job, prec, solver, tol)?;
        let rows = root_rows(job.k, job.n, &a, &rs, cfg.digits);
        if format == Format::Json {
            all.extend(rows);
        } else {
            write_root_rows(out, &rows)?;
        }
    }
    if format == Format::Json {
        write_records(out, format, &all)?;
    }
    Ok(())
}
