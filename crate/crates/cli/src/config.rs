use std::ops::RangeInclusive;
use std::path::PathBuf;

use apotent::exact::{parse_complex, parse_rational, Precision};
use clap::{Parser, Subcommand, ValueEnum};
use rug::{Complex, Rational};

use crate::CliError;

/// Exact and multiprecision companion to a-potent Schwarz matrices.
#[derive(Debug, Parser)]
#[command(name = "apotent", version, about)]
pub struct RunConfig {
    /// Working precision in bits for floating computations (at least 53).
    #[arg(long, global = true, env = "APOTENT_PRECISION", default_value_t = 256, value_parser = parse_precision)]
    pub precision: u32,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Significant decimal digits for floating values in the output.
    #[arg(long, global = true, default_value_t = 40)]
    pub digits: usize,

    /// Overrides the tolerance of numerical checks (solver agreement, complex a-potency).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    Aberth,
    Qr,
    /// Run both and fail when they disagree beyond the tolerance.
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the b-vector, or the dense matrix J_n.
    Matrix {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        dense: bool,
    },
    /// Verify that P_n = (z - a)^n.
    Charpoly {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Moments s_0..s_M and the three-term moment recurrence.
    Moments {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 16)]
        max_m: u32,
    },
    /// Hankel determinants three ways, and the recovered recurrence coefficients.
    Hankel {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Largest order; defaults to n + 2.
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Gram matrix of P_0..P_{n-1} and the norm closed forms.
    Ortho {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Zeros of P_k for one (n, a).
    Roots {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value_t = SolverChoice::Aberth)]
        solver: SolverChoice,
    },
    /// Distance of P_k at a = -1/n from the Bessel polynomial B_k.
    Bessel {
        #[arg(long, default_value_t = 6)]
        k_max: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [100u32, 200, 400])]
        n: Vec<u32>,
    },
    /// Zeros of f_k and g_k on the imaginary axis and whether they interlace.
    Interlace {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Emit the dataset behind one of the twelve figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=12))]
        number: u8,
        /// Restrict the swept parameter to LO..HI (inclusive).
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<u32>>,
        /// Stride of the swept parameter.
        #[arg(long, default_value_t = 1)]
        step: u32,
        /// Number of angle increments for figure 5.
        #[arg(long, default_value_t = 8)]
        steps: u32,
        #[arg(long, value_enum, default_value_t = SolverChoice::Aberth)]
        solver: SolverChoice,
    },
}

fn parse_precision(s: &str) -> Result<u32, String> {
    let bits: u32 = s.parse().map_err(|e| format!("{e}"))?;
    Precision::new(bits).map(|p| p.bits()).map_err(|e| e.to_string())
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// The eigenvalue as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarA {
    Rational(Rational),
    /// Decimal strings, parsed at the working precision when used.
    Complex(String, String),
}

impl ScalarA {
    /// `"p/q"`, an integer or a finite decimal, or `"re,im"`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.split_once(',') {
            Some((re, im)) => {
                parse_complex(re, im, Precision::DEFAULT)?;
                Ok(ScalarA::Complex(re.trim().to_string(), im.trim().to_string()))
            }
            None => Ok(ScalarA::Rational(parse_rational(s)?)),
        }
    }

    pub fn to_complex(&self, prec: Precision) -> Result<Complex, CliError> {
        Ok(match self {
            ScalarA::Rational(r) => Complex::with_val(prec.bits(), (r, 0)),
            ScalarA::Complex(re, im) => parse_complex(re, im, prec)?,
        })
    }

    pub fn rational(&self) -> Option<&Rational> {
        match self {
            ScalarA::Rational(r) => Some(r),
            ScalarA::Complex(..) => None,
        }
    }

    /// The rational value, or a usage error naming the command that needs it.
    pub fn require_rational(&self, command: &str) -> Result<&Rational, CliError> {
        self.rational()
            .ok_or_else(|| CliError::Usage(format!("`{command}` works in exact arithmetic and needs a rational a")))
    }
}
