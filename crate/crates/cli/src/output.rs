use std::io::Write;

use minrep::algebra::Polynomial;
use serde::Serialize;

use crate::CliError;

/// 17 significant digits, which round-trips every `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    format!("{v:.16e}")
}

pub fn csv_writer() -> csv::Writer<std::io::Stdout> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(std::io::stdout())
}

pub fn csv_file_writer(path: &std::path::Path) -> Result<csv::Writer<std::fs::File>, CliError> {
    let file = std::fs::File::create(path).map_err(|e| CliError::usage(format!("cannot create {}: {e}", path.display())))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

#[derive(Serialize)]
pub struct CoefficientRow {
    pub k: i32,
    pub num: String,
    pub den: String,
}

#[derive(Serialize)]
pub struct CoefficientTable {
    pub coefficients: Vec<CoefficientRow>,
}

/// Rows `(k, numerator, denominator)` of a univariate polynomial with
/// rational coefficients, in increasing `k`.
pub fn coefficient_rows(poly: &Polynomial) -> Result<Vec<CoefficientRow>, CliError> {
    poly.univariate_terms()
        .into_iter()
        .map(|(k, c)| {
            let r = c
                .as_rational()
                .ok_or_else(|| CliError::failure(format!("coefficient of x^{k} is not rational: {c}")))?;
            Ok(CoefficientRow {
                k,
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn write_coefficients(poly: &Polynomial, format: Format) -> Result<(), CliError> {
    let rows = coefficient_rows(poly)?;
    match format {
        Format::Csv => {
            let mut w = csv_writer();
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => print_json(&CoefficientTable { coefficients: rows })?,
    }
    Ok(())
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::failure(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f64(-2.5), "-2.5000000000000000e0");
        assert_eq!(fmt_f64(0.0), "0");
    }
}
