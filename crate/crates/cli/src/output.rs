use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use apotent::exact::complex_to_strings;
use apotent::roots::RootSet;
use rug::Complex;
use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// One zero in a figure or `roots` dataset.
///
/// Floating values are decimal strings so no precision is lost; Bessel rows
/// carry `n = 0` and `a = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootRow {
    pub k: u32,
    pub n: u32,
    pub a_re: String,
    pub a_im: String,
    pub root_re: String,
    pub root_im: String,
    pub residual: String,
}

pub const ROOT_HEADER: &str = "k,n,a_re,a_im,root_re,root_im,residual";

pub fn root_rows(k: u32, n: u32, a: &Complex, rs: &RootSet, digits: usize) -> Vec<RootRow> {
    let (a_re, a_im) = complex_to_strings(a, digits);
    rs.roots
        .iter()
        .zip(&rs.residuals)
        .map(|(r, res)| {
            let (root_re, root_im) = complex_to_strings(r, digits);
            RootRow {
                k,
                n,
                a_re: a_re.clone(),
                a_im: a_im.clone(),
                root_re,
                root_im,
                residual: if res.is_zero() { "0".into() } else { res.to_string_radix(10, Some(6)) },
            }
        })
        .collect()
}

pub fn open_sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes serializable records as CSV (header from field names) or a JSON array.
pub fn write_records<T: Serialize>(out: &mut dyn Write, format: Format, records: &[T]) -> Result<(), CliError> {
    match format {
        Format::Csv | Format::Text => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Writes the CSV header once, before the first batch, even if no rows follow.
pub fn write_root_header(out: &mut dyn Write) -> Result<(), CliError> {
    write!(out, "{ROOT_HEADER}\r\n")?;
    Ok(())
}

/// Appends rows without a header.
pub fn write_root_rows(out: &mut dyn Write, rows: &[RootRow]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).terminator(csv::Terminator::CRLF).from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
