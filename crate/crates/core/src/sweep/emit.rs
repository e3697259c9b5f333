//! CSV and JSON writers for sweep rows.
//!
//! Numbers are printed in positional decimal notation rounded to 12
//! significant digits, so identical rows always produce identical bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::{OutputFormat, OutputRow, SweepError};

pub const CSV_HEADER: &str = "variant,delta,re_s_plus,im_s_plus,re_s_minus,im_s_minus,t_y,t_x,theta_rad,engine";

const SIG_DIGITS: i32 = 12;

/// `x` rounded to 12 significant digits, without exponent notation.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let render = |exp: i32| {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    };
    let mut s = render(exponent);
    // rounding can carry into a new leading digit (9.99…→10.0…) and
    // log10 can be off by one near powers of ten
    let digits = s.bytes().filter(u8::is_ascii_digit).skip_while(|&b| b == b'0').count() as i32;
    if digits > SIG_DIGITS {
        s = render(exponent + 1);
    }
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_owned();
    }
    if s == "-0" {
        s = "0".to_owned();
    }
    s
}

fn record(row: &OutputRow) -> [String; 10] {
    [
        row.variant.clone(),
        format_sig12(row.delta),
        format_sig12(row.re_s_plus),
        format_sig12(row.im_s_plus),
        format_sig12(row.re_s_minus),
        format_sig12(row.im_s_minus),
        format_sig12(row.t_y),
        format_sig12(row.t_x),
        format_sig12(row.theta_rad),
        row.engine.to_owned(),
    ]
}

fn csv_to_io(err: csv::Error) -> std::io::Error {
    match err.into_kind() {
        csv::ErrorKind::Io(e) => e,
        kind => std::io::Error::other(format!("{kind:?}")),
    }
}

fn write_csv<W: Write>(rows: &[OutputRow], out: W) -> std::io::Result<()> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    writer.write_record(CSV_HEADER.split(',')).map_err(csv_to_io)?;
    for row in rows {
        writer.write_record(record(row)).map_err(csv_to_io)?;
    }
    writer.flush()
}

#[derive(Serialize)]
struct JsonRow<'a> {
    variant: &'a str,
    delta: f64,
    re_s_plus: f64,
    im_s_plus: f64,
    re_s_minus: f64,
    im_s_minus: f64,
    t_y: f64,
    t_x: f64,
    theta_rad: f64,
    engine: &'a str,
}

fn rounded(x: f64) -> f64 {
    format_sig12(x).parse().unwrap_or(x)
}

fn write_json<W: Write>(rows: &[OutputRow], mut out: W) -> std::io::Result<()> {
    let rows: Vec<JsonRow<'_>> = rows
        .iter()
        .map(|r| JsonRow {
            variant: &r.variant,
            delta: rounded(r.delta),
            re_s_plus: rounded(r.re_s_plus),
            im_s_plus: rounded(r.im_s_plus),
            re_s_minus: rounded(r.re_s_minus),
            im_s_minus: rounded(r.im_s_minus),
            t_y: rounded(r.t_y),
            t_x: rounded(r.t_x),
            theta_rad: rounded(r.theta_rad),
            engine: r.engine,
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    out.write_all(b"\n")?;
    out.flush()
}

/// Writes `rows` to `out`; `destination` only labels errors.
pub fn emit<W: Write>(rows: &[OutputRow], format: OutputFormat, out: W, destination: &str) -> Result<(), SweepError> {
    if rows.is_empty() {
        return Err(SweepError::EmptyRows);
    }
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
    .map_err(|source| SweepError::Io { destination: destination.to_owned(), source })
}

pub fn emit_to_path(rows: &[OutputRow], format: OutputFormat, path: &Path) -> Result<(), SweepError> {
    let destination = path.display().to_string();
    if rows.is_empty() {
        return Err(SweepError::EmptyRows);
    }
    let file = File::create(path).map_err(|source| SweepError::Io { destination: destination.clone(), source })?;
    emit(rows, format, BufWriter::new(file), &destination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SusceptibilityPair;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn sample_row(variant: &str) -> OutputRow {
        let s =
            SusceptibilityPair::new(Complex64::new(5.0 / 26.0, 1.0 / 26.0), Complex64::new(-5.0 / 26.0, 1.0 / 26.0));
        OutputRow::new(variant, 0.0, &s, 30.0, "analytic")
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(-150.0), "-150");
        assert_eq!(format_sig12(0.1), "0.1");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(2.0 / 3.0 * 1e5), "66666.6666667");
        assert_eq!(format_sig12(9.99999999999951), "10");
        assert_eq!(format_sig12(1e-14), "0.00000000000001");
        assert_eq!(format_sig12(123456789012345.0), "123456789012345");
        assert_eq!(format_sig12(1e3), "1000");
    }

    #[test]
    fn one_row_two_lines() {
        let mut buf = Vec::new();
        emit(&[sample_row("G1=0")], OutputFormat::Csv, &mut buf, "memory").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("G1=0,0,0.192307692308,0.0384615384615,-0.192307692308,"));
        assert!(lines[1].ends_with(",analytic"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn variant_with_comma_is_quoted() {
        let mut buf = Vec::new();
        emit(&[sample_row("a,b")], OutputFormat::Csv, &mut buf, "memory").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("\"a,b\","));
    }

    #[test]
    fn json_keys_match_header() {
        let mut buf = Vec::new();
        emit(&[sample_row("x"), sample_row("y")], OutputFormat::Json, &mut buf, "memory").unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let arr = value.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        let keys: Vec<&str> = arr[0].as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected: Vec<&str> = CSV_HEADER.split(',').collect();
        let mut got = keys.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(arr[1]["variant"], "y");
    }

    #[test]
    fn empty_rows_rejected() {
        assert!(matches!(emit(&[], OutputFormat::Csv, Vec::new(), "memory"), Err(SweepError::EmptyRows)));
    }

    #[test]
    fn unwritable_destination_is_named() {
        let path = Path::new("/nonexistent-dir/out.csv");
        match emit_to_path(&[sample_row("x")], OutputFormat::Csv, path) {
            Err(SweepError::Io { destination, .. }) => assert_eq!(destination, "/nonexistent-dir/out.csv"),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn sig12_round_trip(mantissa in -1.0..1.0f64, exp in -20i32..20) {
            let x = mantissa * 10f64.powi(exp);
            let s = format_sig12(x);
            prop_assert!(!s.contains('e'));
            let back: f64 = s.parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }
}
